//! Iterative localization pipelines, final estimators and the maximum
//! likelihood baseline.

use rand::Rng;

use crate::bits::BitWord;
use crate::channel::{
    apply_byzantine, hard_demodulate, reliability, transmit, AttackModel, ChannelKind, FadingChannel, ReliabilityVector,
};
use crate::coding::{build_code_matrix, CodeMatrix};
use crate::decoding::{exclusion_decode, hamming_decode, soft_decode, Decision, DecodeOutcome};
use crate::error::{Error, Result};
use crate::geometry::{split_region, Partition, Position, Rect, RegionOfInterest, SensorField};
use crate::signal::{
    amplitude_or_inf, sense_and_quantize, thresholds_with_rule, CoincidentRule, NoiseModel, PropagationModel,
    ThresholdVector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    #[default]
    Basic,
    Exclusion,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decoding {
    #[default]
    Hard,
    Soft,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub m: usize,
    pub k_stop: usize,
    pub decoding: Decoding,
    pub channel: FadingChannel,
    pub attack: AttackModel,
    pub propagation: PropagationModel,
    pub noise: NoiseModel,
    pub coincident: CoincidentRule,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            scheme: Scheme::Basic,
            m: 4,
            k_stop: 2,
            decoding: Decoding::Hard,
            channel: FadingChannel::ideal(),
            attack: AttackModel::default(),
            propagation: PropagationModel::default(),
            noise: NoiseModel::Gaussian { sigma: 3.0 },
            coincident: CoincidentRule::default(),
        }
    }
}

impl SchemeConfig {
    /// Number of active sensors at iteration `k` for a field of `n` sensors;
    /// `k = k_stop` gives the size of the final set.
    pub fn active_count(&self, n: usize, k: usize) -> usize {
        let mut count = n;
        for _ in 0..k {
            count = match self.scheme {
                Scheme::Basic => count / self.m,
                Scheme::Exclusion => 2 * count / self.m,
            };
        }
        count
    }

    /// Checks the stopping rule and that every iteration splits evenly.
    pub fn validate(&self, n: usize) -> Result<()> {
        if self.m < 2 {
            return Err(Error::config("m", "need at least two regions"));
        }
        if self.scheme == Scheme::Exclusion && (self.m < 4 || !self.m.is_multiple_of(2)) {
            return Err(Error::config("m", "the exclusion scheme needs an even m >= 4"));
        }
        self.channel.validate()?;
        if self.decoding == Decoding::Soft && self.channel.kind == ChannelKind::Rayleigh && self.channel.sigma_f <= 0.0
        {
            return Err(Error::config("sigma_f", "soft decoding under fading needs sigma_f > 0"));
        }
        let shrink = match self.scheme {
            Scheme::Basic => self.m as f64,
            Scheme::Exclusion => self.m as f64 / 2.0,
        };
        if shrink.powi(self.k_stop as i32) >= n as f64 {
            return Err(Error::config(
                "k_stop",
                format!("k_stop = {} too large for {n} sensors and m = {}", self.k_stop, self.m),
            ));
        }
        if self.k_stop == 0 {
            return Err(Error::config("k_stop", "need at least one iteration"));
        }
        let mut count = n;
        for k in 0..self.k_stop {
            if count == 0 || !count.is_multiple_of(self.m) {
                return Err(Error::config(
                    "k_stop",
                    format!(
                        "{count} active sensors at iteration {k} do not split over {} regions",
                        self.m
                    ),
                ));
            }
            count = match self.scheme {
                Scheme::Basic => count / self.m,
                Scheme::Exclusion => 2 * count / self.m,
            };
        }
        Ok(())
    }
}

/// Everything the fusion center fixes before sensing at one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub roi: RegionOfInterest,
    pub partition: Partition,
    pub code: CodeMatrix,
    pub thresholds: ThresholdVector,
}

pub fn build_stage(
    roi: RegionOfInterest,
    active: &[usize],
    field: &SensorField,
    config: &SchemeConfig,
) -> Result<Stage> {
    let partition = split_region(&roi, config.m, field, active)?;
    let code = build_code_matrix(&partition)?;
    let thresholds = thresholds_with_rule(&partition, &config.propagation, field, config.coincident)?;
    Ok(Stage {
        roi,
        partition,
        code,
        thresholds,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub k: usize,
    pub active_count: usize,
    pub decision: Decision,
    pub tie_count: usize,
    /// Region of this iteration's partition that holds the target, if any.
    pub true_region: Option<usize>,
    /// The decision kept the target's region.
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub theta_hat: Position,
    pub region_trace: Vec<Decision>,
    pub correct_region: bool,
    pub trace: Vec<IterationRecord>,
    /// Hard word received at the first iteration; input of the likelihood baseline.
    pub initial_word: BitWord,
}

/// Runs the `k_stop` iterations `k = 0, ..., k_stop - 1` for one target and
/// forms the final estimate from the sensors left in the final ROI.
pub fn run_trial<R: Rng + ?Sized>(
    field: &SensorField,
    config: &SchemeConfig,
    target: Position,
    rng: &mut R,
) -> Result<Estimate> {
    config.validate(field.len())?;
    let outer = field.roi();
    if !outer.contains(&target) {
        return Err(Error::Geometry("target outside the region of interest".into()));
    }
    let byz = config.attack.sample_set(field.len(), rng);

    let mut roi = RegionOfInterest::Single(outer);
    let mut active = field.all_sensors();
    let mut trace = Vec::with_capacity(config.k_stop);
    let mut initial_word = None;
    let mut last_word = BitWord::zeros(0);
    let mut last_stage = None;

    for k in 0..config.k_stop {
        let stage = build_stage(roi, &active, field, config)?;
        let part = &stage.partition;
        let d = sense_and_quantize(
            &config.propagation,
            &config.noise,
            &target,
            field,
            part.active(),
            &stage.thresholds,
            rng,
        )?;
        let u = apply_byzantine(&d, part.active(), &byz, rng)?;
        let (hard, outcome) = decode_iteration(&u, &stage.code, config, rng)?;

        let true_region = part.region_containing(&target, &outer);
        let correct = true_region.is_some_and(|j| outcome.chosen.contains(j));
        trace.push(IterationRecord {
            k,
            active_count: part.active().len(),
            decision: outcome.chosen,
            tie_count: outcome.tie_count,
            true_region,
            correct,
        });
        if initial_word.is_none() {
            initial_word = Some(hard.clone());
        }

        let (next_roi, next_active) = match outcome.chosen {
            Decision::Single(j) => (RegionOfInterest::Single(part.region(j)), part.members(j)),
            Decision::Pair(a, b) => {
                let mut members = part.members(a);
                members.extend(part.members(b));
                members.sort_unstable();
                (RegionOfInterest::Pair(part.region(a), part.region(b)), members)
            }
        };
        roi = next_roi;
        active = next_active;
        last_word = hard;
        last_stage = Some(stage);
    }

    let stage = last_stage.expect("at least one iteration");
    let theta_hat = match config.scheme {
        Scheme::Basic => estimate_centroid(field, &active)?,
        Scheme::Exclusion => {
            let columns: Vec<usize> = active
                .iter()
                .map(|s| {
                    stage
                        .partition
                        .active()
                        .binary_search(s)
                        .expect("final sensors are active")
                })
                .collect();
            estimate_weighted(field, &active, &last_word.select(&columns))?
        }
    };
    Ok(Estimate {
        theta_hat,
        region_trace: trace.iter().map(|r| r.decision).collect(),
        correct_region: trace.iter().all(|r| r.correct),
        trace,
        initial_word: initial_word.expect("at least one iteration"),
    })
}

/// Decodes iteration `k` of the basic scheme after `k` error-free iterations.
///
/// The ROI follows the regions that contain `target` without sensing, so the
/// Byzantine set is drawn for the whole network and its share in the iteration
/// `k` active set is not conditioned on earlier decisions. This is the
/// per-iteration detection event that the closed-form analysis describes; in
/// [`run_trial`] the same event is conditioned on earlier successes, which
/// skews the Byzantine share of the surviving sensors when `alpha` is large.
pub fn run_true_path_iteration<R: Rng + ?Sized>(
    field: &SensorField,
    config: &SchemeConfig,
    target: Position,
    k: usize,
    rng: &mut R,
) -> Result<IterationRecord> {
    config.validate(field.len())?;
    if config.scheme != Scheme::Basic {
        return Err(Error::config(
            "scheme",
            "true-path iterations are defined for the basic scheme",
        ));
    }
    if k >= config.k_stop {
        return Err(Error::config(
            "k_stop",
            format!("iteration {k} is past k_stop = {}", config.k_stop),
        ));
    }
    let outer = field.roi();
    if !outer.contains(&target) {
        return Err(Error::Geometry("target outside the region of interest".into()));
    }
    let byz = config.attack.sample_set(field.len(), rng);
    let mut roi = RegionOfInterest::Single(outer);
    let mut active = field.all_sensors();
    for _ in 0..k {
        let part = split_region(&roi, config.m, field, &active)?;
        let j = part
            .region_containing(&target, &outer)
            .ok_or_else(|| Error::Geometry("target left the true path".into()))?;
        roi = RegionOfInterest::Single(part.region(j));
        active = part.members(j);
    }
    let stage = build_stage(roi, &active, field, config)?;
    let part = &stage.partition;
    let d = sense_and_quantize(
        &config.propagation,
        &config.noise,
        &target,
        field,
        part.active(),
        &stage.thresholds,
        rng,
    )?;
    let u = apply_byzantine(&d, part.active(), &byz, rng)?;
    let (_, outcome) = decode_iteration(&u, &stage.code, config, rng)?;
    let true_region = part.region_containing(&target, &outer);
    Ok(IterationRecord {
        k,
        active_count: part.active().len(),
        decision: outcome.chosen,
        tie_count: outcome.tie_count,
        true_region,
        correct: true_region.is_some_and(|j| outcome.chosen.contains(j)),
    })
}

/// Channel plus decoder for one iteration. Returns the hard word the fusion
/// center holds afterwards (the sign-demodulated word under fading) and the
/// decoder outcome.
fn decode_iteration<R: Rng + ?Sized>(
    u: &BitWord,
    code: &CodeMatrix,
    config: &SchemeConfig,
    rng: &mut R,
) -> Result<(BitWord, DecodeOutcome)> {
    let exclusion = config.scheme == Scheme::Exclusion;
    let (hard, psi) = match config.channel.kind {
        ChannelKind::Ideal => {
            let psi = match config.decoding {
                Decoding::Soft => Some(ReliabilityVector(u.antipodal())),
                Decoding::Hard => None,
            };
            (u.clone(), psi)
        }
        ChannelKind::Rayleigh => {
            let v = transmit(u, &config.channel, rng);
            let psi = match config.decoding {
                Decoding::Soft => Some(reliability(&config.channel, &v)?),
                Decoding::Hard => None,
            };
            (hard_demodulate(&v), psi)
        }
    };
    let outcome = match psi {
        Some(psi) => soft_decode(&psi, code, rng, exclusion)?,
        None if exclusion => exclusion_decode(&hard, code, rng)?,
        None => hamming_decode(&hard, code, rng)?,
    };
    Ok((hard, outcome))
}

/// Unweighted mean of the sensor positions.
pub fn estimate_centroid(field: &SensorField, final_active: &[usize]) -> Result<Position> {
    if final_active.is_empty() {
        return Err(Error::EmptySensorSet);
    }
    let n = final_active.len() as f64;
    let (sx, sy) = final_active.iter().fold((0.0, 0.0), |(x, y), &s| {
        let p = field.position(s);
        (x + p.x, y + p.y)
    });
    Ok(Position::new(sx / n, sy / n))
}

/// Mean of the positions of sensors that reported 1; the plain centroid when
/// none did.
pub fn estimate_weighted(field: &SensorField, final_active: &[usize], u_final: &BitWord) -> Result<Position> {
    if u_final.len() != final_active.len() {
        return Err(Error::LengthMismatch {
            expected: final_active.len(),
            actual: u_final.len(),
        });
    }
    let firing: Vec<usize> = final_active
        .iter()
        .zip(u_final.iter())
        .filter(|(_, b)| *b)
        .map(|(&s, _)| s)
        .collect();
    if firing.is_empty() {
        estimate_centroid(field, final_active)
    } else {
        estimate_centroid(field, &firing)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MleOptions {
    /// Lattice points per side of the coarse search.
    pub grid: usize,
    /// Best lattice points refined by coordinate descent.
    pub starts: usize,
    /// Final step of the coordinate descent.
    pub tolerance: f64,
    pub refine: bool,
}

impl Default for MleOptions {
    fn default() -> Self {
        MleOptions {
            grid: 64,
            starts: 4,
            tolerance: 1e-4,
            refine: true,
        }
    }
}

/// Floor applied to per-sensor probabilities so the log-likelihood stays finite.
const PROB_FLOOR: f64 = 1e-300;

/// `sum_i u_i ln F(eta_i - a_i) + (1 - u_i) ln(1 - F(eta_i - a_i))` with both
/// probabilities floored at `1e-300`.
pub fn log_likelihood(
    theta: &Position,
    u: &BitWord,
    field: &SensorField,
    sensors: &[usize],
    thresholds: &[f64],
    propagation: &PropagationModel,
    noise: &NoiseModel,
) -> f64 {
    sensors
        .iter()
        .zip(thresholds)
        .zip(u.iter())
        .map(|((&s, &eta), bit)| {
            let a = amplitude_or_inf(propagation, theta, &field.position(s));
            let (p1, p0) = if a == f64::INFINITY {
                (1.0, 0.0)
            } else if eta == f64::INFINITY {
                (0.0, 1.0)
            } else {
                (noise.comp_cdf(eta - a), noise.cdf(eta - a))
            };
            let (q, other) = if bit { (p1, p0) } else { (p0, p1) };
            // Near one, use the small complementary tail to keep resolution.
            if q > 0.5 {
                (-other).ln_1p()
            } else {
                q.max(PROB_FLOOR).ln()
            }
        })
        .sum()
}

/// Maximum likelihood target position given the quantized word `u` of the
/// sensors `sensors` (aligned with `thresholds`), searched over `roi`.
#[allow(clippy::too_many_arguments)]
pub fn mle_estimate(
    u: &BitWord,
    field: &SensorField,
    sensors: &[usize],
    thresholds: &ThresholdVector,
    propagation: &PropagationModel,
    noise: &NoiseModel,
    roi: &Rect,
    options: &MleOptions,
) -> Result<Position> {
    if noise.sigma() <= 0.0 {
        return Err(Error::config("sigma", "likelihood search needs sigma > 0"));
    }
    if u.len() != sensors.len() || thresholds.len() != sensors.len() {
        return Err(Error::LengthMismatch {
            expected: sensors.len(),
            actual: u.len().min(thresholds.len()),
        });
    }
    if options.grid == 0 {
        return Err(Error::config("grid", "must be positive"));
    }
    let eta = thresholds.as_slice();
    let score = |p: &Position| log_likelihood(p, u, field, sensors, eta, propagation, noise);

    let lattice = lattice_points(roi, options.grid);
    let mut scored: Vec<(f64, Position)> = lattice.iter().map(|p| (score(p), *p)).collect();
    // Stable sort keeps lattice order among equal scores.
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    if !options.refine {
        return Ok(scored[0].1);
    }

    let step0 = (roi.width() / options.grid as f64).max(roi.height() / options.grid as f64);
    let mut best = scored[0];
    for &(s0, p0) in scored.iter().take(options.starts.max(1)) {
        let (s, p) = coordinate_descent(p0, s0, step0, options.tolerance, roi, &score);
        if s > best.0 {
            best = (s, p);
        }
    }
    Ok(best.1)
}

/// Cell centers of a `grid x grid` lattice over `roi`, row-major from the
/// lower-left corner.
pub fn lattice_points(roi: &Rect, grid: usize) -> Vec<Position> {
    let dx = roi.width() / grid as f64;
    let dy = roi.height() / grid as f64;
    let mut out = Vec::with_capacity(grid * grid);
    for r in 0..grid {
        for c in 0..grid {
            out.push(Position::new(
                roi.x_min + (c as f64 + 0.5) * dx,
                roi.y_min + (r as f64 + 0.5) * dy,
            ));
        }
    }
    out
}

fn coordinate_descent(
    start: Position,
    start_score: f64,
    initial_step: f64,
    tolerance: f64,
    roi: &Rect,
    score: &impl Fn(&Position) -> f64,
) -> (f64, Position) {
    let mut p = start;
    let mut s = start_score;
    let mut step = initial_step;
    while step >= tolerance {
        let mut improved = false;
        for (dx, dy) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
            let q = Position::new(
                (p.x + dx * step).clamp(roi.x_min, roi.x_max),
                (p.y + dy * step).clamp(roi.y_min, roi.y_max),
            );
            let sq = score(&q);
            if sq > s {
                p = q;
                s = sq;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (s, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::deploy_grid;
    use crate::rng::seeded;

    fn field16() -> SensorField {
        deploy_grid(4, 4, Rect::square(8.0).unwrap()).unwrap()
    }

    fn noiseless(scheme: Scheme, k_stop: usize) -> SchemeConfig {
        SchemeConfig {
            scheme,
            k_stop,
            noise: NoiseModel::gaussian(1e-9).unwrap(),
            ..SchemeConfig::default()
        }
    }

    #[test]
    fn validation_follows_stopping_rules() {
        let basic = SchemeConfig::default();
        assert!(basic.validate(512).is_ok());
        assert!(SchemeConfig {
            k_stop: 4,
            ..basic.clone()
        }
        .validate(512)
        .is_ok());
        assert!(SchemeConfig {
            k_stop: 5,
            ..basic.clone()
        }
        .validate(512)
        .is_err());
        assert!(SchemeConfig {
            k_stop: 0,
            ..basic.clone()
        }
        .validate(512)
        .is_err());
        assert!(SchemeConfig {
            k_stop: 1,
            ..basic.clone()
        }
        .validate(16)
        .is_ok());
        assert!(SchemeConfig {
            k_stop: 2,
            ..basic.clone()
        }
        .validate(16)
        .is_err());
        let excl = SchemeConfig {
            scheme: Scheme::Exclusion,
            k_stop: 4,
            ..basic.clone()
        };
        assert!(excl.validate(512).is_ok());
        assert!(excl.validate(64).is_ok());
        assert!(SchemeConfig {
            k_stop: 6,
            ..excl.clone()
        }
        .validate(64)
        .is_err());
        assert!(SchemeConfig { m: 3, ..excl }.validate(81).is_err());
    }

    #[test]
    fn active_counts() {
        let basic = SchemeConfig::default();
        assert_eq!(basic.active_count(512, 2), 32);
        let excl = SchemeConfig {
            scheme: Scheme::Exclusion,
            ..basic
        };
        assert_eq!(excl.active_count(512, 4), 32);
    }

    #[test]
    fn noiseless_quadrant_trial() {
        let field = field16();
        let cfg = noiseless(Scheme::Basic, 1);
        let target = Position::new(1.3, 2.6);
        let est = run_trial(&field, &cfg, target, &mut seeded(1)).unwrap();
        assert_eq!(est.region_trace[0], Decision::Single(0));
        assert!(est.correct_region);
        assert_eq!(est.trace.len(), 1);
        assert_eq!(est.trace[0].active_count, 16);
        let quadrant = estimate_centroid(&field, &[0, 1, 4, 5]).unwrap();
        assert_eq!(est.theta_hat, quadrant);
    }

    #[test]
    fn true_path_first_iteration_matches_pipeline() {
        let field = deploy_grid(16, 32, Rect::square(8.0).unwrap()).unwrap();
        let config = SchemeConfig {
            attack: AttackModel::new(0.25, 1.0).unwrap(),
            ..SchemeConfig::default()
        };
        for t in 0..50 {
            let target = Position::new(0.1 + 0.15 * t as f64, 7.9 - 0.13 * t as f64);
            let full = run_trial(&field, &config, target, &mut seeded(t)).unwrap();
            let first = run_true_path_iteration(&field, &config, target, 0, &mut seeded(t)).unwrap();
            assert_eq!(full.trace[0], first);
            let second = run_true_path_iteration(&field, &config, target, 1, &mut seeded(t)).unwrap();
            assert_eq!(second.active_count, 128);
            assert!(second.true_region.is_some());
        }
        let excl = SchemeConfig {
            scheme: Scheme::Exclusion,
            ..config.clone()
        };
        assert!(run_true_path_iteration(&field, &excl, Position::new(1.0, 1.0), 0, &mut seeded(0)).is_err());
        assert!(run_true_path_iteration(&field, &config, Position::new(1.0, 1.0), 2, &mut seeded(0)).is_err());
    }

    #[test]
    fn trace_and_flag_agree() {
        let field = deploy_grid(16, 32, Rect::square(8.0).unwrap()).unwrap();
        let cfg = SchemeConfig {
            noise: NoiseModel::gaussian(4.0).unwrap(),
            ..SchemeConfig::default()
        };
        let mut rng = seeded(2);
        for _ in 0..50 {
            let t = Position::new(rng.random::<f64>() * 8.0, rng.random::<f64>() * 8.0);
            let est = run_trial(&field, &cfg, t, &mut rng).unwrap();
            assert_eq!(est.correct_region, est.trace.iter().all(|r| r.correct));
            let last = est.trace.last().unwrap();
            assert_eq!(last.active_count, 128);
        }
    }

    #[test]
    fn exclusion_active_counts() {
        let field = deploy_grid(16, 32, Rect::square(8.0).unwrap()).unwrap();
        let cfg = SchemeConfig {
            scheme: Scheme::Exclusion,
            k_stop: 4,
            ..SchemeConfig::default()
        };
        let est = run_trial(&field, &cfg, Position::new(3.3, 5.1), &mut seeded(3)).unwrap();
        let counts: Vec<usize> = est.trace.iter().map(|r| r.active_count).collect();
        assert_eq!(counts, vec![512, 256, 128, 64]);
        assert!(est.region_trace.iter().all(|d| matches!(d, Decision::Pair(..))));
    }

    #[test]
    fn centroid_examples() {
        let f = SensorField::from_positions(
            vec![Position::new(2.0, 2.0), Position::new(6.0, 6.0)],
            Rect::square(8.0).unwrap(),
            1,
            2,
        )
        .unwrap();
        assert_eq!(estimate_centroid(&f, &[0, 1]).unwrap(), Position::new(4.0, 4.0));
        assert_eq!(estimate_centroid(&f, &[1]).unwrap(), Position::new(6.0, 6.0));
        assert!(estimate_centroid(&f, &[]).is_err());
        let quadrant = [0, 1, 4, 5];
        let c = estimate_centroid(&field16(), &quadrant).unwrap();
        assert!((c.x - 2.0).abs() < 1e-12 && (c.y - 2.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_examples() {
        let f = field16();
        let set = [0, 1, 4, 5];
        let centroid = estimate_centroid(&f, &set).unwrap();
        assert_eq!(estimate_weighted(&f, &set, &BitWord::ones(4)).unwrap(), centroid);
        assert_eq!(estimate_weighted(&f, &set, &BitWord::zeros(4)).unwrap(), centroid);
        assert_eq!(
            estimate_weighted(&f, &set, &BitWord::parse("0010").unwrap()).unwrap(),
            f.position(4)
        );
        assert!(estimate_weighted(&f, &set, &BitWord::ones(3)).is_err());
    }

    #[test]
    fn mle_single_firing_sensor() {
        let roi = Rect::square(8.0).unwrap();
        let f = SensorField::from_positions(vec![Position::new(3.0, 5.0)], roi, 1, 1).unwrap();
        let eta = ThresholdVector::new(vec![2.0]).unwrap();
        let noise = NoiseModel::gaussian(3.0).unwrap();
        let p = mle_estimate(
            &BitWord::ones(1),
            &f,
            &[0],
            &eta,
            &PropagationModel::default(),
            &noise,
            &roi,
            &MleOptions::default(),
        )
        .unwrap();
        assert!(p.distance(&Position::new(3.0, 5.0)) < 0.2, "{p:?}");
    }

    #[test]
    fn mle_coarse_grid_matches_exhaustive_scan() {
        let f = field16();
        let roi = f.roi();
        let sensors = f.all_sensors();
        let eta = ThresholdVector::new(vec![6.0; 16]).unwrap();
        let noise = NoiseModel::gaussian(2.0).unwrap();
        let prop = PropagationModel::default();
        let u = BitWord::parse("1100110000000000").unwrap();
        let opts = MleOptions {
            grid: 4,
            refine: false,
            ..MleOptions::default()
        };
        let got = mle_estimate(&u, &f, &sensors, &eta, &prop, &noise, &roi, &opts).unwrap();
        let mut best = (f64::NEG_INFINITY, Position::new(0.0, 0.0));
        for r in 0..4 {
            for c in 0..4 {
                let p = Position::new(1.0 + 2.0 * c as f64, 1.0 + 2.0 * r as f64);
                let s = log_likelihood(&p, &u, &f, &sensors, eta.as_slice(), &prop, &noise);
                if s > best.0 {
                    best = (s, p);
                }
            }
        }
        assert_eq!(got, best.1);
    }
}
