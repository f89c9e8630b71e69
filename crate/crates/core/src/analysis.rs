//! Per-iteration performance analysis: mismatch probabilities, exact detection
//! probability by enumeration, the lower bound built from `lambda_max`, and the
//! Byzantine fault-tolerance fraction.

use rayon::prelude::*;

use crate::coding::CodeMatrix;
use crate::error::{Error, Result};
use crate::geometry::{Partition, Position, SensorField};
use crate::signal::{amplitude_or_inf, firing_probability, NoiseModel, PropagationModel, ThresholdVector};

/// Largest code length accepted by [`exact_pd`].
pub const ENUMERATION_LIMIT: usize = 22;

/// One iteration of the fusion problem as seen by the analysis.
#[derive(Debug, Clone, Copy)]
pub struct IterationModel<'a> {
    pub field: &'a SensorField,
    pub partition: &'a Partition,
    pub code: &'a CodeMatrix,
    pub thresholds: &'a ThresholdVector,
    pub propagation: &'a PropagationModel,
    pub noise: &'a NoiseModel,
    pub alpha: f64,
}

impl IterationModel<'_> {
    fn validate(&self) -> Result<()> {
        let n_k = self.code.n_k();
        if self.partition.active().len() != n_k || self.thresholds.len() != n_k {
            return Err(Error::LengthMismatch {
                expected: n_k,
                actual: self.thresholds.len(),
            });
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return Err(Error::config("alpha", "must lie in [0, 1)"));
        }
        Ok(())
    }

    /// Probability that column `i` arrives as 1 for a target at `theta`.
    pub fn one_probability(&self, theta: &Position, i: usize) -> f64 {
        let s = self.partition.active()[i];
        let a = amplitude_or_inf(self.propagation, theta, &self.field.position(s));
        let tail = firing_probability(self.noise, self.thresholds.as_slice()[i], a);
        self.alpha + (1.0 - 2.0 * self.alpha) * tail
    }
}

/// Mismatch probability from the firing probability `tail = P(a + n > eta)`.
pub fn q_from_tail(in_region: bool, tail: f64, alpha: f64) -> f64 {
    if in_region {
        (1.0 - alpha) - (1.0 - 2.0 * alpha) * tail
    } else {
        alpha + (1.0 - 2.0 * alpha) * tail
    }
}

/// Probability that column `i` disagrees with row `j` for a target at `theta`.
pub fn q_value(model: &IterationModel<'_>, theta: &Position, i: usize, j: usize) -> f64 {
    let p1 = model.one_probability(theta, i);
    if model.code.get(j, i) {
        1.0 - p1
    } else {
        p1
    }
}

/// `q[i][j]` for every column and hypothesis at one target position.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    q: Vec<f64>,
    m: usize,
    pub alpha: f64,
}

impl QMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.q[i * self.m + j]
    }

    pub fn n_k(&self) -> usize {
        self.q.len() / self.m
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

pub fn q_matrix(model: &IterationModel<'_>, theta: &Position) -> QMatrix {
    let m = model.code.m();
    let n_k = model.code.n_k();
    let mut q = Vec::with_capacity(n_k * m);
    for i in 0..n_k {
        let p1 = model.one_probability(theta, i);
        for j in 0..m {
            q.push(if model.code.get(j, i) { 1.0 - p1 } else { p1 });
        }
    }
    QMatrix {
        q,
        m,
        alpha: model.alpha,
    }
}

/// Per-competitor sums `sum_{i in S_j u S_l} q[i][j]`, `None` at `l = j`.
fn pair_sums(j: usize, code: &CodeMatrix, q: &QMatrix) -> Vec<Option<f64>> {
    let m = code.m();
    let mut per_region = vec![0.0; m];
    for i in 0..code.n_k() {
        let r = (0..m).find(|&r| code.get(r, i)).expect("every column has one region");
        per_region[r] += q.get(i, j);
    }
    (0..m)
        .map(|l| (l != j).then(|| per_region[j] + per_region[l]))
        .collect()
}

/// True iff `sum_{i in S_j u S_l} q[i][j] < N_k / M` for every `l != j`.
pub fn condition_check(j: usize, code: &CodeMatrix, q: &QMatrix) -> bool {
    let limit = code.n_k() as f64 / code.m() as f64;
    pair_sums(j, code, q).into_iter().flatten().all(|s| s < limit)
}

/// `max_{l != j} (1 / d_m) sum_{i in S_j u S_l} (2 q[i][j] - 1)`.
pub fn lambda_j(j: usize, code: &CodeMatrix, q: &QMatrix) -> f64 {
    let d_m = 2.0 * code.n_k() as f64 / code.m() as f64;
    pair_sums(j, code, q)
        .into_iter()
        .flatten()
        .map(|s| (2.0 * s - d_m) / d_m)
        .fold(f64::NEG_INFINITY, f64::max)
}

/// `1 - (M - 1)(1 - lambda^2)^(d_m / 2)`.
pub fn pd_lower_bound(m: usize, d_m: usize, lambda: f64) -> f64 {
    1.0 - (m as f64 - 1.0) * (1.0 - lambda * lambda).powf(d_m as f64 / 2.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lambda_j_max: Vec<f64>,
    pub lambda_max: f64,
    /// Omitted when the condition fails at some sampled position.
    pub pd_lower: Option<f64>,
    pub d_m: usize,
    pub condition_ok: bool,
}

/// Maximises `lambda_j(theta)` over a midpoint lattice of spacing at most
/// `resolution` inside every region, then over regions.
pub fn lambda_max(model: &IterationModel<'_>, resolution: f64) -> Result<BoundReport> {
    model.validate()?;
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::config("resolution", "must be positive"));
    }
    let code = model.code;
    let m = code.m();
    let d_m = 2 * code.n_k() / m;
    let mut lambda_j_max = vec![f64::NEG_INFINITY; m];
    let mut condition_ok = true;
    for (j, slot) in lambda_j_max.iter_mut().enumerate() {
        let r = model.partition.region(j);
        let nx = (r.width() / resolution).ceil().max(1.0) as usize;
        let ny = (r.height() / resolution).ceil().max(1.0) as usize;
        for a in 0..ny {
            for b in 0..nx {
                let theta = Position::new(
                    r.x_min + (b as f64 + 0.5) * r.width() / nx as f64,
                    r.y_min + (a as f64 + 0.5) * r.height() / ny as f64,
                );
                let q = q_matrix(model, &theta);
                condition_ok &= condition_check(j, code, &q);
                *slot = slot.max(lambda_j(j, code, &q));
            }
        }
    }
    let lambda_max = lambda_j_max.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(BoundReport {
        lambda_j_max,
        lambda_max,
        pd_lower: condition_ok.then(|| pd_lower_bound(m, d_m, lambda_max)),
        d_m,
        condition_ok,
    })
}

/// Default lattice spacing: a sixteenth of the shorter region side.
pub fn default_resolution(partition: &Partition) -> f64 {
    let r = partition.region(0);
    r.width().min(r.height()) / 16.0
}

#[derive(Debug, Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Products `prod_i P(u_i | H_j)` for every assignment of `bits` consecutive
/// columns starting at `offset`.
fn half_products(p1: &[f64], offset: usize, bits: usize) -> Vec<f64> {
    (0..(1usize << bits))
        .map(|w| {
            (0..bits)
                .map(|b| {
                    let p = p1[offset + b];
                    if (w >> b) & 1 == 1 {
                        p
                    } else {
                        1.0 - p
                    }
                })
                .product()
        })
        .collect()
}

/// Exact detection probability of one basic-scheme iteration under a uniform
/// prior, with every target placed at its region's center and random
/// tie-breaking rewarded `1 / q_u`. Enumerates all `2^N_k` received words.
pub fn exact_pd(model: &IterationModel<'_>) -> Result<f64> {
    model.validate()?;
    let code = model.code;
    let n_k = code.n_k();
    if n_k > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            n_k,
            limit: ENUMERATION_LIMIT,
        });
    }
    let m = code.m();
    let rows: Vec<u64> = code
        .rows()
        .iter()
        .map(|r| r.iter().enumerate().fold(0u64, |acc, (i, b)| acc | ((b as u64) << i)))
        .collect();

    let lo_bits = n_k / 2;
    let hi_bits = n_k - lo_bits;
    let mut lo = Vec::with_capacity(m);
    let mut hi = Vec::with_capacity(m);
    for j in 0..m {
        let center = model.partition.centers()[j];
        let p1: Vec<f64> = (0..n_k).map(|i| model.one_probability(&center, i)).collect();
        lo.push(half_products(&p1, 0, lo_bits));
        hi.push(half_products(&p1, lo_bits, hi_bits));
    }

    let partials: Vec<f64> = (0..(1u64 << hi_bits))
        .into_par_iter()
        .map(|h| {
            let mut acc = Kahan::default();
            let mut dist = vec![0u32; m];
            for l in 0..(1u64 << lo_bits) {
                let u = (h << lo_bits) | l;
                for (d, r) in dist.iter_mut().zip(&rows) {
                    *d = (u ^ r).count_ones();
                }
                let min = *dist.iter().min().expect("m >= 2");
                let ties = dist.iter().filter(|&&d| d == min).count() as f64;
                for j in (0..m).filter(|&j| dist[j] == min) {
                    acc.add(lo[j][l as usize] * hi[j][h as usize] / ties);
                }
            }
            acc.sum
        })
        .collect();

    let mut total = Kahan::default();
    for p in partials {
        total.add(p);
    }
    Ok(total.sum / m as f64)
}

/// Product of per-iteration detection probabilities.
pub fn overall_pd(per_iteration: &[f64]) -> f64 {
    per_iteration.iter().product()
}

/// Largest Byzantine fraction the iteration-`k` code is guaranteed to absorb,
/// `2 / M - M^k / (2^k N)`.
pub fn fault_tolerance_fraction(m: usize, n: usize, k: u32) -> f64 {
    let m = m as f64;
    2.0 / m - m.powi(k as i32) / (2f64.powi(k as i32) * n as f64)
}
