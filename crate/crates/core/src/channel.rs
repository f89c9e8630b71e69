//! Byzantine data falsification and the sensor-to-fusion-center channel.
//!
//! Under Rayleigh fading the fusion center receives
//! `v = h (-1)^u sqrt(E_b) + n` with `h ~ Rayleigh(s)`, `s^2 = E[h^2] / 2`, and
//! `n ~ N(0, sigma_f^2)`. Marginalising `h` gives the density
//!
//! ```text
//! p(v | u = 0) = exp(-v^2 / (2 sigma_f^2)) * H(x) / (A s^2 sigma_f sqrt(2 pi))
//! A = 1 / s^2 + E_b / sigma_f^2,   x = sqrt(E_b) v / (sigma_f^2 sqrt(A))
//! H(x) = 1 + x Phi(x) / phi(x)
//! ```
//!
//! and `p(v | u = 1) = p(-v | u = 0)`, so the log-likelihood ratio collapses to
//! `ln H(x) - ln H(-x)`.

use libm::erfc;
use rand::seq::index::sample;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::bits::BitWord;
use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Byzantine attack parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackModel {
    pub alpha: f64,
    pub flip_prob: f64,
}

impl Default for AttackModel {
    fn default() -> Self {
        AttackModel {
            alpha: 0.0,
            flip_prob: 1.0,
        }
    }
}

impl AttackModel {
    pub fn new(alpha: f64, flip_prob: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::config("alpha", format!("must lie in [0, 1), got {alpha}")));
        }
        if !(0.0..=1.0).contains(&flip_prob) {
            return Err(Error::config(
                "flip_prob",
                format!("must lie in [0, 1], got {flip_prob}"),
            ));
        }
        Ok(AttackModel { alpha, flip_prob })
    }

    /// `round(alpha * n)`, ties to even.
    pub fn byzantine_count(&self, n: usize) -> usize {
        (self.alpha * n as f64).round_ties_even() as usize
    }

    /// Draws the Byzantine set for one trial, uniformly without replacement.
    pub fn sample_set<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Byzantines {
        let count = self.byzantine_count(n).min(n);
        let mut members = vec![false; n];
        if count > 0 {
            for s in sample(rng, n, count) {
                members[s] = true;
            }
        }
        Byzantines {
            members,
            flip_prob: self.flip_prob,
        }
    }
}

/// Realised Byzantine set for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Byzantines {
    members: Vec<bool>,
    flip_prob: f64,
}

impl Byzantines {
    pub fn none(n: usize) -> Self {
        Byzantines {
            members: vec![false; n],
            flip_prob: 1.0,
        }
    }

    pub fn from_members(n: usize, sensors: &[usize], flip_prob: f64) -> Self {
        let mut members = vec![false; n];
        for &s in sensors {
            members[s] = true;
        }
        Byzantines { members, flip_prob }
    }

    pub fn is_byzantine(&self, sensor: usize) -> bool {
        self.members[sensor]
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|&&b| b).count()
    }

    pub fn flip_prob(&self) -> f64 {
        self.flip_prob
    }
}

/// Honest sensors forward their decision; Byzantine sensors send its
/// complement with probability `flip_prob`. `active[c]` is the global sensor
/// index of column `c`. Randomness is drawn only when `0 < flip_prob < 1`.
pub fn apply_byzantine<R: Rng + ?Sized>(
    d: &BitWord,
    active: &[usize],
    byz: &Byzantines,
    rng: &mut R,
) -> Result<BitWord> {
    if d.len() != active.len() {
        return Err(Error::LengthMismatch {
            expected: active.len(),
            actual: d.len(),
        });
    }
    let mut u = d.clone();
    let eps = byz.flip_prob;
    if eps == 0.0 {
        return Ok(u);
    }
    for (c, &s) in active.iter().enumerate() {
        if byz.is_byzantine(s) && (eps >= 1.0 || rng.random::<f64>() < eps) {
            u.flip(c);
        }
    }
    Ok(u)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    #[default]
    Ideal,
    Rayleigh,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingChannel {
    pub kind: ChannelKind,
    pub e_b: f64,
    pub sigma_f: f64,
    pub mean_h2: f64,
}

impl Default for FadingChannel {
    fn default() -> Self {
        FadingChannel::ideal()
    }
}

impl FadingChannel {
    pub fn ideal() -> Self {
        FadingChannel {
            kind: ChannelKind::Ideal,
            e_b: 1.0,
            sigma_f: 3.0,
            mean_h2: 1.0,
        }
    }

    pub fn rayleigh(e_b: f64, sigma_f: f64, mean_h2: f64) -> Result<Self> {
        let ch = FadingChannel {
            kind: ChannelKind::Rayleigh,
            e_b,
            sigma_f,
            mean_h2,
        };
        ch.validate()?;
        Ok(ch)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.e_b.is_finite() && self.e_b > 0.0) {
            return Err(Error::config("e_b", "must be positive"));
        }
        if !(self.sigma_f.is_finite() && self.sigma_f >= 0.0) {
            return Err(Error::config("sigma_f", "must be finite and >= 0"));
        }
        if !(self.mean_h2.is_finite() && self.mean_h2 > 0.0) {
            return Err(Error::config("mean_h2", "must be positive"));
        }
        Ok(())
    }

    /// Rayleigh scale `s = sqrt(E[h^2] / 2)`.
    pub fn rayleigh_scale(&self) -> f64 {
        (0.5 * self.mean_h2).sqrt()
    }

    /// `E[h^4] = 2 E[h^2]^2` for Rayleigh fading.
    pub fn fourth_moment(&self) -> f64 {
        2.0 * self.mean_h2 * self.mean_h2
    }

    pub fn sample_gain<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        self.rayleigh_scale() * (-2.0 * (1.0 - u).ln()).sqrt()
    }

    fn require_noise(&self) -> Result<()> {
        if self.sigma_f > 0.0 {
            Ok(())
        } else {
            Err(Error::config("sigma_f", "likelihoods need sigma_f > 0"))
        }
    }

    /// `(A, x per unit v)` of the closed-form density.
    fn density_terms(&self) -> (f64, f64) {
        let s2 = 0.5 * self.mean_h2;
        let var = self.sigma_f * self.sigma_f;
        let a = 1.0 / s2 + self.e_b / var;
        (a, self.e_b.sqrt() / (var * a.sqrt()))
    }

    /// `ln p(v | u)`.
    pub fn ln_likelihood(&self, v: f64, bit: bool) -> Result<f64> {
        self.require_noise()?;
        let (a, slope) = self.density_terms();
        let x = if bit { -slope * v } else { slope * v };
        let s2 = 0.5 * self.mean_h2;
        let var = self.sigma_f * self.sigma_f;
        Ok(-v * v / (2.0 * var) + ln_h(x) - (a * s2).ln() - self.sigma_f.ln() - LN_SQRT_2PI)
    }

    /// Log-likelihood ratio `ln p(v | 0) / p(v | 1)`.
    pub fn llr(&self, v: f64) -> Result<f64> {
        self.require_noise()?;
        let (_, slope) = self.density_terms();
        let x = slope * v;
        Ok(ln_h(x) - ln_h(-x))
    }
}

/// `ln(1 + x Phi(x) / phi(x))`, accurate in both tails.
fn ln_h(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else if x > 0.0 {
        // x Phi / phi = exp(r)
        let ln_phi_cdf = (-0.5 * erfc(x / std::f64::consts::SQRT_2)).ln_1p();
        let r = x.ln() + LN_SQRT_2PI + 0.5 * x * x + ln_phi_cdf;
        if r > 0.0 {
            r + (-r).exp().ln_1p()
        } else {
            r.exp().ln_1p()
        }
    } else {
        let t = -x;
        if t < 4.0 {
            // 1 - t R(t), R the Mills ratio
            let mills = 0.5 * erfc(t / std::f64::consts::SQRT_2) * (0.5 * t * t + LN_SQRT_2PI).exp();
            (-t * mills).ln_1p()
        } else {
            // R(t) = 1 / (t + K), K = 1 / (t + 2 / (t + 3 / (t + ...))),
            // so 1 - t R(t) = K / (t + K) without cancellation.
            let mut tail = t;
            for n in (2..=200).rev() {
                tail = t + n as f64 / tail;
            }
            let k = 1.0 / tail;
            k.ln() - (t + k).ln()
        }
    }
}

/// Received channel values at the fusion center.
pub fn transmit<R: Rng + ?Sized>(u: &BitWord, channel: &FadingChannel, rng: &mut R) -> Vec<f64> {
    let amp = channel.e_b.sqrt();
    u.iter()
        .map(|bit| {
            let h = channel.sample_gain(rng);
            let z: f64 = rng.sample(StandardNormal);
            let sign = if bit { -1.0 } else { 1.0 };
            h * sign * amp + channel.sigma_f * z
        })
        .collect()
}

/// Density of `v` given the transmitted bit, with the fading gain marginalised.
pub fn bit_likelihood(channel: &FadingChannel, v: f64, bit: bool) -> Result<f64> {
    channel.ln_likelihood(v, bit).map(f64::exp)
}

/// Per-bit log-likelihood ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct ReliabilityVector(pub Vec<f64>);

impl ReliabilityVector {
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

pub fn reliability(channel: &FadingChannel, v: &[f64]) -> Result<ReliabilityVector> {
    channel.require_noise()?;
    v.iter()
        .map(|&x| channel.llr(x))
        .collect::<Result<Vec<_>>>()
        .map(ReliabilityVector)
}

/// Sign detector used by the hard-decision baseline: bit 1 iff `v < 0`.
pub fn hard_demodulate(v: &[f64]) -> BitWord {
    v.iter().map(|&x| x < 0.0).collect()
}

/// Variance bound on the centred reliability, `(8 / sigma^4)(E[h^4] + E[h^2] sigma_f^2)`,
/// with `sigma` the local sensor noise standard deviation.
pub fn reliability_variance_bound(channel: &FadingChannel, sensor_sigma: f64) -> f64 {
    8.0 / sensor_sigma.powi(4) * (channel.fourth_moment() + channel.mean_h2 * channel.sigma_f * channel.sigma_f)
}

/// Monte-Carlo variance of the reliability of one bit that is 1 with
/// probability `p_one`, i.e. the second moment of `psi - E[psi]` given the target.
pub fn reliability_variance<R: Rng + ?Sized>(
    channel: &FadingChannel,
    p_one: f64,
    samples: usize,
    rng: &mut R,
) -> Result<f64> {
    channel.require_noise()?;
    if !(0.0..=1.0).contains(&p_one) || samples < 2 {
        return Err(Error::config("p_one", "needs a probability and at least two samples"));
    }
    let bits: BitWord = (0..samples).map(|_| rng.random::<f64>() < p_one).collect();
    let psi = reliability(channel, &transmit(&bits, channel, rng))?;
    let mean = psi.0.iter().sum::<f64>() / samples as f64;
    Ok(psi.0.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64)
}
