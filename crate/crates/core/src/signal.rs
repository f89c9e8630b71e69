//! Target signal propagation, sensor noise and local 1-bit decisions.

use libm::erfc;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bits::BitWord;
use crate::error::{Error, Result};
use crate::geometry::{Partition, Position, SensorField};

/// Isotropic power attenuation: `a^2 = P0 (d0 / d)^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationModel {
    pub p0: f64,
    pub d0: f64,
    pub exponent: f64,
}

impl Default for PropagationModel {
    fn default() -> Self {
        PropagationModel {
            p0: 200.0,
            d0: 1.0,
            exponent: 2.0,
        }
    }
}

impl PropagationModel {
    pub fn new(p0: f64, d0: f64, exponent: f64) -> Result<Self> {
        for (name, v) in [("p0", p0), ("d0", d0), ("path_loss_exponent", exponent)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::config(name, format!("must be positive, got {v}")));
            }
        }
        Ok(PropagationModel { p0, d0, exponent })
    }

    /// Amplitude at distance `d > 0`.
    pub fn amplitude_at(&self, d: f64) -> f64 {
        self.p0.sqrt() * (self.d0 / d).powf(0.5 * self.exponent)
    }
}

/// Signal amplitude received at `sensor` from a target at `target`.
pub fn amplitude(model: &PropagationModel, target: &Position, sensor: &Position) -> Result<f64> {
    let d = target.distance(sensor);
    if d == 0.0 {
        return Err(Error::ZeroDistance);
    }
    Ok(model.amplitude_at(d))
}

/// Amplitude with the `d = 0` singularity mapped to `+inf`. Used where a
/// sampled target position may land on a sensor (analysis grids, MLE search).
pub(crate) fn amplitude_or_inf(model: &PropagationModel, target: &Position, sensor: &Position) -> f64 {
    let d = target.distance(sensor);
    if d == 0.0 {
        f64::INFINITY
    } else {
        model.amplitude_at(d)
    }
}

/// Additive sensor noise, characterised by its complementary CDF.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseModel {
    Gaussian { sigma: f64 },
}

impl NoiseModel {
    pub fn gaussian(sigma: f64) -> Result<Self> {
        if !(sigma.is_finite() && sigma >= 0.0) {
            return Err(Error::config("sigma", format!("must be finite and >= 0, got {sigma}")));
        }
        Ok(NoiseModel::Gaussian { sigma })
    }

    pub fn sigma(&self) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => sigma,
        }
    }

    /// `P(n > x)`. With `sigma = 0` this is the step 1 / 0.5 / 0.
    pub fn comp_cdf(&self, x: f64) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => {
                if sigma == 0.0 || x.is_infinite() {
                    if x < 0.0 {
                        1.0
                    } else if x > 0.0 {
                        0.0
                    } else {
                        0.5
                    }
                } else {
                    0.5 * erfc(x / (sigma * std::f64::consts::SQRT_2))
                }
            }
        }
    }

    /// `P(n <= x)`, computed from the opposite tail so both ends stay accurate.
    pub fn cdf(&self, x: f64) -> f64 {
        self.comp_cdf(-x)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            NoiseModel::Gaussian { sigma } => {
                let z: f64 = rng.sample(StandardNormal);
                sigma * z
            }
        }
    }
}

/// Probability that a sensor with threshold `eta` reports 1 when its noiseless
/// amplitude is `a`.
pub fn firing_probability(noise: &NoiseModel, eta: f64, a: f64) -> f64 {
    if a == f64::INFINITY {
        return 1.0;
    }
    if eta == f64::INFINITY {
        return 0.0;
    }
    noise.comp_cdf(eta - a)
}

/// Per-sensor quantization thresholds, aligned with the partition's active set.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdVector(Vec<f64>);

impl ThresholdVector {
    pub fn new(eta: Vec<f64>) -> Result<Self> {
        if eta.iter().any(|&e| e.is_nan() || e <= 0.0) {
            return Err(Error::Geometry("thresholds must be positive".into()));
        }
        Ok(ThresholdVector(eta))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// What to do when a sensor sits exactly at its own region's center, where the
/// amplitude threshold `sqrt(P0) / d` is undefined. This happens on cell-
/// centered grids once a region holds a single sensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoincidentRule {
    /// Fail with [`Error::ZeroDistance`].
    Reject,
    /// Use the distance from the center to the nearest region edge.
    #[default]
    Inscribed,
    /// Infinite threshold: the sensor never reports 1.
    NeverFire,
}

/// `eta_i = amplitude seen at sensor i from a target at its own region's center`.
pub fn thresholds_for(partition: &Partition, model: &PropagationModel, field: &SensorField) -> Result<ThresholdVector> {
    thresholds_with_rule(partition, model, field, CoincidentRule::Reject)
}

pub fn thresholds_with_rule(
    partition: &Partition,
    model: &PropagationModel,
    field: &SensorField,
    rule: CoincidentRule,
) -> Result<ThresholdVector> {
    let mut eta = Vec::with_capacity(partition.active().len());
    for (&s, &j) in partition.active().iter().zip(partition.membership()) {
        let center = partition.centers()[j];
        let d = field.position(s).distance(&center);
        let value = if d > 0.0 {
            model.amplitude_at(d)
        } else {
            match rule {
                CoincidentRule::Reject => return Err(Error::ZeroDistance),
                CoincidentRule::Inscribed => {
                    let r = partition.region(j);
                    model.amplitude_at(0.5 * r.width().min(r.height()))
                }
                CoincidentRule::NeverFire => f64::INFINITY,
            }
        };
        eta.push(value);
    }
    Ok(ThresholdVector(eta))
}

/// Local decisions `D_i = 1` iff `a_i + n_i > eta_i`, one noise draw per active
/// sensor in ascending sensor order.
pub fn sense_and_quantize<R: Rng + ?Sized>(
    model: &PropagationModel,
    noise: &NoiseModel,
    target: &Position,
    field: &SensorField,
    active: &[usize],
    thresholds: &ThresholdVector,
    rng: &mut R,
) -> Result<BitWord> {
    if thresholds.len() != active.len() {
        return Err(Error::LengthMismatch {
            expected: active.len(),
            actual: thresholds.len(),
        });
    }
    let mut d = BitWord::zeros(active.len());
    for (c, (&s, &eta)) in active.iter().zip(thresholds.as_slice()).enumerate() {
        let a = amplitude(model, target, &field.position(s))?;
        let observed = a + noise.sample(rng);
        if observed > eta {
            d.set(c, true);
        }
    }
    Ok(d)
}
