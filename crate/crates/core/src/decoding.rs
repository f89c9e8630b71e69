//! Fusion-center decoders.
//!
//! All decoders reduce to a vector of per-region distances followed by a
//! selection rule. Ties are resolved uniformly at random; the random stream is
//! touched only when a tie actually occurs, so tie-free decodes are
//! deterministic and consume nothing.

use rand::seq::index::sample;
use rand::Rng;

use crate::bits::BitWord;
use crate::channel::ReliabilityVector;
use crate::coding::CodeMatrix;
use crate::error::{Error, Result};

/// Region(s) selected by a decoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decision {
    Single(usize),
    /// Two kept regions, ascending.
    Pair(usize, usize),
}

impl Decision {
    pub fn contains(&self, j: usize) -> bool {
        match *self {
            Decision::Single(a) => a == j,
            Decision::Pair(a, b) => a == j || b == j,
        }
    }

    pub fn regions(&self) -> Vec<usize> {
        match *self {
            Decision::Single(a) => vec![a],
            Decision::Pair(a, b) => vec![a, b],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeOutcome {
    pub chosen: Decision,
    /// Size of the tied set the random choice was made from. For a single
    /// decision this is the number of co-minimal regions. For a pair it is the
    /// number of regions tied at the minimum when at least two are, otherwise
    /// the number tied at the second-smallest distance.
    pub tie_count: usize,
    pub distances: Vec<f64>,
}

fn argmin_set(distances: &[f64]) -> Vec<usize> {
    let min = distances.iter().copied().fold(f64::INFINITY, f64::min);
    (0..distances.len()).filter(|&j| distances[j] == min).collect()
}

fn pick_one<R: Rng + ?Sized>(set: &[usize], rng: &mut R) -> usize {
    if set.len() == 1 {
        set[0]
    } else {
        set[rng.random_range(0..set.len())]
    }
}

/// Single-region selection: uniform over the argmin set.
pub fn select_single<R: Rng + ?Sized>(distances: Vec<f64>, rng: &mut R) -> DecodeOutcome {
    let best = argmin_set(&distances);
    DecodeOutcome {
        chosen: Decision::Single(pick_one(&best, rng)),
        tie_count: best.len(),
        distances,
    }
}

/// Two-region selection. With two or more co-minimal regions a uniform pair is
/// drawn from them; otherwise the unique best is kept together with a uniform
/// choice among the regions tied at the second-smallest distance.
pub fn select_pair<R: Rng + ?Sized>(distances: Vec<f64>, rng: &mut R) -> DecodeOutcome {
    let best = argmin_set(&distances);
    let (a, b, tie_count) = if best.len() >= 2 {
        let (a, b) = if best.len() == 2 {
            (best[0], best[1])
        } else {
            let idx = sample(rng, best.len(), 2);
            (best[idx.index(0)], best[idx.index(1)])
        };
        (a, b, best.len())
    } else {
        let first = best[0];
        let rest: Vec<f64> = distances
            .iter()
            .enumerate()
            .map(|(j, &d)| if j == first { f64::INFINITY } else { d })
            .collect();
        let second = argmin_set(&rest);
        (first, pick_one(&second, rng), second.len())
    };
    DecodeOutcome {
        chosen: Decision::Pair(a.min(b), a.max(b)),
        tie_count,
        distances,
    }
}

fn hamming_distances(u: &BitWord, code: &CodeMatrix) -> Result<Vec<f64>> {
    if u.len() != code.n_k() {
        return Err(Error::LengthMismatch {
            expected: code.n_k(),
            actual: u.len(),
        });
    }
    Ok(code.rows().iter().map(|r| u.hamming(r) as f64).collect())
}

/// Minimum-Hamming-distance decoding.
pub fn hamming_decode<R: Rng + ?Sized>(u: &BitWord, code: &CodeMatrix, rng: &mut R) -> Result<DecodeOutcome> {
    Ok(select_single(hamming_distances(u, code)?, rng))
}

/// Keeps the two regions closest to `u` in Hamming distance.
pub fn exclusion_decode<R: Rng + ?Sized>(u: &BitWord, code: &CodeMatrix, rng: &mut R) -> Result<DecodeOutcome> {
    if code.m() < 2 {
        return Err(Error::Code("exclusion decoding needs at least two rows".into()));
    }
    Ok(select_pair(hamming_distances(u, code)?, rng))
}

/// `sum_i (psi_i - (-1)^{c_i})^2`.
pub fn f_distance(psi: &ReliabilityVector, row: &BitWord) -> Result<f64> {
    if psi.len() != row.len() {
        return Err(Error::LengthMismatch {
            expected: row.len(),
            actual: psi.len(),
        });
    }
    Ok(psi
        .as_slice()
        .iter()
        .zip(row.iter())
        .map(|(&p, bit)| {
            let e = if bit { p + 1.0 } else { p - 1.0 };
            e * e
        })
        .sum())
}

/// Soft-decision decoding by F-distance; keeps two regions when `exclusion`.
pub fn soft_decode<R: Rng + ?Sized>(
    psi: &ReliabilityVector,
    code: &CodeMatrix,
    rng: &mut R,
    exclusion: bool,
) -> Result<DecodeOutcome> {
    let distances = code
        .rows()
        .iter()
        .map(|r| f_distance(psi, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(if exclusion {
        select_pair(distances, rng)
    } else {
        select_single(distances, rng)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;
    use proptest::prelude::*;
    use rand::Rng;

    fn quad_code() -> CodeMatrix {
        CodeMatrix::from_membership(4, &[0, 0, 1, 1, 2, 2, 3, 3]).unwrap()
    }

    #[test]
    fn exact_codeword_decodes_to_its_row() {
        let c = quad_code();
        let mut rng = seeded(1);
        for j in 0..4 {
            let out = hamming_decode(c.row(j), &c, &mut rng).unwrap();
            assert_eq!(out.chosen, Decision::Single(j));
            assert_eq!(out.tie_count, 1);
            assert_eq!(out.distances[j], 0.0);
            assert!(exclusion_decode(c.row(j), &c, &mut rng).unwrap().chosen.contains(j));
        }
    }

    #[test]
    fn two_way_tie_is_fair() {
        let c = CodeMatrix::from_rows(vec![BitWord::parse("1100").unwrap(), BitWord::parse("0011").unwrap()]).unwrap();
        let u = BitWord::parse("1010").unwrap();
        let mut rng = seeded(2);
        let trials = 10_000;
        let mut zero = 0;
        for _ in 0..trials {
            let out = hamming_decode(&u, &c, &mut rng).unwrap();
            assert_eq!(out.distances, vec![2.0, 2.0]);
            assert_eq!(out.tie_count, 2);
            if out.chosen == Decision::Single(0) {
                zero += 1;
            }
        }
        assert!((zero as f64 / trials as f64 - 0.5).abs() < 0.02);
    }

    #[test]
    fn pair_selection_rules() {
        let mut rng = seeded(3);
        let out = select_pair(vec![0.0, 1.0, 5.0, 5.0], &mut rng);
        assert_eq!(out.chosen, Decision::Pair(0, 1));
        assert_eq!(out.tie_count, 1);

        let trials = 10_000;
        let mut with_one = 0;
        for _ in 0..trials {
            let out = select_pair(vec![0.0, 3.0, 3.0, 5.0], &mut rng);
            assert_eq!(out.tie_count, 2);
            match out.chosen {
                Decision::Pair(0, 1) => with_one += 1,
                Decision::Pair(0, 2) => {}
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!((with_one as f64 / trials as f64 - 0.5).abs() < 0.02);

        let out = select_pair(vec![2.0, 2.0, 2.0, 2.0], &mut rng);
        assert_eq!(out.tie_count, 4);
    }

    #[test]
    fn untied_decode_consumes_no_randomness() {
        let c = quad_code();
        let mut a = seeded(4);
        let b = a.clone();
        hamming_decode(c.row(2), &c, &mut a).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn f_distance_examples() {
        let row = BitWord::parse("01").unwrap();
        assert_eq!(f_distance(&ReliabilityVector(vec![2.0, 0.0]), &row).unwrap(), 2.0);
        assert_eq!(f_distance(&ReliabilityVector(vec![1.0, -1.0]), &row).unwrap(), 0.0);
        let c = quad_code();
        for r in c.rows() {
            assert_eq!(f_distance(&ReliabilityVector(vec![0.0; 8]), r).unwrap(), 8.0);
        }
        assert!(f_distance(&ReliabilityVector(vec![0.0; 3]), &row).is_err());
    }

    #[test]
    fn soft_decode_of_row_pattern() {
        let c = quad_code();
        let mut rng = seeded(5);
        for j in 0..4 {
            let psi = ReliabilityVector(c.row(j).antipodal());
            assert_eq!(
                soft_decode(&psi, &c, &mut rng, false).unwrap().chosen,
                Decision::Single(j)
            );
        }
    }

    #[test]
    fn length_mismatch_rejected() {
        let c = quad_code();
        let mut rng = seeded(6);
        assert!(hamming_decode(&BitWord::zeros(7), &c, &mut rng).is_err());
        assert!(soft_decode(&ReliabilityVector(vec![0.0; 9]), &c, &mut rng, true).is_err());
    }

    proptest! {
        #[test]
        fn correctable_errors_are_corrected(per in 1usize..8, j in 0usize..4, seed in any::<u64>()) {
            let membership: Vec<usize> = (0..4 * per).map(|i| i / per).collect();
            let c = CodeMatrix::from_membership(4, &membership).unwrap();
            let mut u = c.row(j).clone();
            let mut rng = seeded(seed);
            // d_min = 2 per, so up to per - 1 flips are always corrected.
            let flips = if per > 1 { rng.random_range(0..per) } else { 0 };
            for p in sample(&mut rng, 4 * per, flips) {
                u.flip(p);
            }
            let out = hamming_decode(&u, &c, &mut rng).unwrap();
            prop_assert_eq!(out.chosen, Decision::Single(j));
            prop_assert_eq!(out.tie_count, 1);
        }

        #[test]
        fn correlation_and_distance_agree(psi in proptest::collection::vec(-5.0f64..5.0, 8)) {
            let c = quad_code();
            let r = ReliabilityVector(psi.clone());
            let d: Vec<f64> = c.rows().iter().map(|row| f_distance(&r, row).unwrap()).collect();
            let corr: Vec<f64> = c
                .rows()
                .iter()
                .map(|row| row.antipodal().iter().zip(&psi).map(|(s, p)| s * p).sum())
                .collect();
            let by_d = d.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            let by_corr = corr.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
            prop_assert_eq!(by_d, by_corr);
        }
    }
}
