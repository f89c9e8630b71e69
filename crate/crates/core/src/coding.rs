//! Code matrix construction.
//!
//! Row `j` of the iteration code matrix has a 1 exactly in the columns of the
//! sensors lying in region `j`. Each column therefore carries a single 1, each
//! row `N_k / M` ones, and any two rows differ in `2 N_k / M` positions.

use std::fmt;

use crate::bits::BitWord;
use crate::error::{Error, Result};
use crate::geometry::Partition;

#[derive(Debug, Clone, PartialEq)]
pub struct CodeMatrix {
    rows: Vec<BitWord>,
    n_k: usize,
    /// Region of every column; empty for codes not built from a partition.
    column_region: Vec<usize>,
    /// Global sensor index of every column; empty for free-form codes.
    column_sensor: Vec<usize>,
}

impl CodeMatrix {
    /// Structured code from a per-column region assignment. Columns map to
    /// sensors `0..n`.
    pub fn from_membership(m: usize, column_region: &[usize]) -> Result<Self> {
        let sensors: Vec<usize> = (0..column_region.len()).collect();
        Self::structured(m, column_region, &sensors)
    }

    fn structured(m: usize, column_region: &[usize], column_sensor: &[usize]) -> Result<Self> {
        let n_k = column_region.len();
        if m < 2 {
            return Err(Error::Code(format!("need at least two rows, got {m}")));
        }
        if n_k == 0 || !n_k.is_multiple_of(m) {
            return Err(Error::Code(format!("{n_k} columns cannot be split over {m} rows")));
        }
        let mut rows = vec![BitWord::zeros(n_k); m];
        let mut weights = vec![0usize; m];
        for (i, &j) in column_region.iter().enumerate() {
            if j >= m {
                return Err(Error::Code(format!("column {i} assigned to region {j} >= {m}")));
            }
            rows[j].set(i, true);
            weights[j] += 1;
        }
        if weights.iter().any(|&w| w != n_k / m) {
            return Err(Error::Code(format!("unequal region sizes {weights:?}")));
        }
        Ok(CodeMatrix {
            rows,
            n_k,
            column_region: column_region.to_vec(),
            column_sensor: column_sensor.to_vec(),
        })
    }

    /// Arbitrary code given by its rows.
    pub fn from_rows(rows: Vec<BitWord>) -> Result<Self> {
        let n_k = rows.first().map(BitWord::len).unwrap_or(0);
        if rows.iter().any(|r| r.len() != n_k) {
            return Err(Error::Code("rows of unequal length".into()));
        }
        Ok(CodeMatrix {
            rows,
            n_k,
            column_region: Vec::new(),
            column_sensor: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.rows.len()
    }

    pub fn n_k(&self) -> usize {
        self.n_k
    }

    pub fn rows(&self) -> &[BitWord] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> &BitWord {
        &self.rows[j]
    }

    pub fn column_region(&self) -> &[usize] {
        &self.column_region
    }

    pub fn column_sensor(&self) -> &[usize] {
        &self.column_sensor
    }

    pub fn get(&self, j: usize, i: usize) -> bool {
        self.rows[j].get(i)
    }
}

/// Builds the iteration code matrix; columns follow the partition's active
/// sensors in ascending global index.
pub fn build_code_matrix(partition: &Partition) -> Result<CodeMatrix> {
    CodeMatrix::structured(partition.m(), partition.membership(), partition.active())
}

/// Exact minimum Hamming distance over all row pairs (0 for fewer than two rows).
pub fn min_hamming_distance(code: &CodeMatrix) -> usize {
    let rows = code.rows();
    let mut best = None;
    for a in 0..rows.len() {
        for b in a + 1..rows.len() {
            let d = rows[a].hamming(&rows[b]);
            best = Some(best.map_or(d, |x: usize| x.min(d)));
        }
    }
    best.unwrap_or(0)
}

/// Guaranteed correctable errors, `ceil(d_min / 2) - 1`.
pub fn fault_tolerance_bits(code: &CodeMatrix) -> usize {
    min_hamming_distance(code).div_ceil(2).saturating_sub(1)
}

impl fmt::Display for CodeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}
