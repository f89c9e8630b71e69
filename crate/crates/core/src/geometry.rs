//! Sensor deployment and region bookkeeping.
//!
//! Sensors sit at the cell centers of a regular `rows x cols` lattice over the
//! region of interest. Every iteration splits the current ROI (one rectangle,
//! or two rectangles under the exclusion method) into `M` equal-population
//! regions. Region membership uses half-open rectangles `[x_min, x_max) x
//! [y_min, y_max)`, closed only on the outer ROI's max edges, so every point of
//! the deployment area belongs to exactly one region at every level.

use std::collections::HashMap;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

impl Position {
    pub const fn new(x: f64, y: f64) -> Self {
        Position { x, y }
    }

    pub fn distance(&self, other: &Position) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Rect {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64) -> Result<Self> {
        let finite = [x_min, x_max, y_min, y_max].iter().all(|v| v.is_finite());
        if !finite || x_min >= x_max || y_min >= y_max {
            return Err(Error::Geometry(format!(
                "degenerate rectangle [{x_min}, {x_max}] x [{y_min}, {y_max}]"
            )));
        }
        Ok(Rect {
            x_min,
            x_max,
            y_min,
            y_max,
        })
    }

    /// Square `[0, side] x [0, side]`.
    pub fn square(side: f64) -> Result<Self> {
        Rect::new(0.0, side, 0.0, side)
    }

    pub fn width(&self) -> f64 {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> f64 {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    pub fn center(&self) -> Position {
        Position::new(0.5 * (self.x_min + self.x_max), 0.5 * (self.y_min + self.y_max))
    }

    /// Closed containment.
    pub fn contains(&self, p: &Position) -> bool {
        p.x >= self.x_min && p.x <= self.x_max && p.y >= self.y_min && p.y <= self.y_max
    }

    /// Half-open containment, closed only where this rectangle touches the
    /// max edges of `outer`.
    pub fn owns(&self, p: &Position, outer: &Rect) -> bool {
        let x_hi = if self.x_max >= outer.x_max {
            p.x <= self.x_max
        } else {
            p.x < self.x_max
        };
        let y_hi = if self.y_max >= outer.y_max {
            p.y <= self.y_max
        } else {
            p.y < self.y_max
        };
        p.x >= self.x_min && p.y >= self.y_min && x_hi && y_hi
    }

    /// Splits into `nx` columns by `ny` rows of equal sub-rectangles, listed
    /// row-major from the `(x_min, y_min)` corner.
    pub fn grid_split(&self, nx: usize, ny: usize) -> Vec<Rect> {
        let xs: Vec<f64> = (0..=nx)
            .map(|i| self.x_min + self.width() * i as f64 / nx as f64)
            .collect();
        let ys: Vec<f64> = (0..=ny)
            .map(|i| self.y_min + self.height() * i as f64 / ny as f64)
            .collect();
        let mut out = Vec::with_capacity(nx * ny);
        for iy in 0..ny {
            for ix in 0..nx {
                out.push(Rect {
                    x_min: xs[ix],
                    x_max: if ix + 1 == nx { self.x_max } else { xs[ix + 1] },
                    y_min: ys[iy],
                    y_max: if iy + 1 == ny { self.y_max } else { ys[iy + 1] },
                });
            }
        }
        out
    }

    /// Splits into `count` equal pieces. `count = a * b` with `a <= b` as close
    /// as possible; the `b` divisions run along the longer side (x on ties).
    pub fn balanced_split(&self, count: usize) -> Vec<Rect> {
        let (a, b) = balanced_factors(count);
        if self.width() >= self.height() {
            self.grid_split(b, a)
        } else {
            self.grid_split(a, b)
        }
    }
}

/// `count = a * b` with `a <= b` and `b - a` minimal.
pub fn balanced_factors(count: usize) -> (usize, usize) {
    let mut a = (count as f64).sqrt().floor() as usize;
    while a > 1 && !count.is_multiple_of(a) {
        a -= 1;
    }
    let a = a.max(1);
    (a, count / a)
}

/// Current region of interest: one rectangle (basic scheme) or the two
/// regions kept by the exclusion method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegionOfInterest {
    Single(Rect),
    Pair(Rect, Rect),
}

impl RegionOfInterest {
    pub fn rects(&self) -> Vec<Rect> {
        match *self {
            RegionOfInterest::Single(r) => vec![r],
            RegionOfInterest::Pair(a, b) => vec![a, b],
        }
    }

    pub fn area(&self) -> f64 {
        self.rects().iter().map(Rect::area).sum()
    }

    /// Membership under the half-open convention relative to `outer`.
    pub fn owns(&self, p: &Position, outer: &Rect) -> bool {
        self.rects().iter().any(|r| r.owns(p, outer))
    }
}

/// Sensor positions on a regular lattice inside the ROI.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorField {
    positions: Vec<Position>,
    roi: Rect,
    rows: usize,
    cols: usize,
}

/// Places `rows * cols` sensors at the cell centers of a uniform lattice
/// over `roi`. Sensors are indexed row-major from the `(x_min, y_min)` corner.
pub fn deploy_grid(rows: usize, cols: usize, roi: Rect) -> Result<SensorField> {
    if rows == 0 || cols == 0 {
        return Err(Error::Geometry(format!(
            "grid dimensions must be positive, got {rows} x {cols}"
        )));
    }
    let dx = roi.width() / cols as f64;
    let dy = roi.height() / rows as f64;
    let mut positions = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            positions.push(Position::new(
                roi.x_min + (c as f64 + 0.5) * dx,
                roi.y_min + (r as f64 + 0.5) * dy,
            ));
        }
    }
    Ok(SensorField {
        positions,
        roi,
        rows,
        cols,
    })
}

/// Grid shape used for a given sensor count: `rows` is the largest divisor of
/// `n` not exceeding `sqrt(n)`. Powers of two give `2^a x 2^b` with `b - a <= 1`
/// (512 -> 16 x 32).
pub fn grid_shape(n: usize) -> (usize, usize) {
    let (a, b) = balanced_factors(n.max(1));
    (a, b)
}

impl SensorField {
    /// Grid with `n` sensors in the shape chosen by [`grid_shape`].
    pub fn with_sensor_count(n: usize, roi: Rect) -> Result<Self> {
        let (rows, cols) = grid_shape(n);
        deploy_grid(rows, cols, roi)
    }

    /// Builds a field from explicit positions, e.g. a relabelled grid.
    pub fn from_positions(positions: Vec<Position>, roi: Rect, rows: usize, cols: usize) -> Result<Self> {
        if positions.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                actual: positions.len(),
            });
        }
        if let Some(p) = positions.iter().find(|p| !p.is_finite() || !roi.contains(p)) {
            return Err(Error::Geometry(format!("sensor ({}, {}) outside ROI", p.x, p.y)));
        }
        let mut seen = HashMap::with_capacity(positions.len());
        for p in &positions {
            if seen.insert(lattice_key(p), ()).is_some() {
                return Err(Error::Geometry(format!("duplicate sensor at ({}, {})", p.x, p.y)));
            }
        }
        Ok(SensorField {
            positions,
            roi,
            rows,
            cols,
        })
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn position(&self, sensor: usize) -> Position {
        self.positions[sensor]
    }

    pub fn roi(&self) -> Rect {
        self.roi
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn all_sensors(&self) -> Vec<usize> {
        (0..self.len()).collect()
    }

    /// Index of the sensor located exactly at `p`, if any.
    pub fn sensor_at(&self, p: &Position) -> Option<usize> {
        self.positions.iter().position(|q| q == p)
    }
}

fn lattice_key(p: &Position) -> (i64, i64) {
    ((p.x * 1e6).round() as i64, (p.y * 1e6).round() as i64)
}

/// Split of the current ROI into `M` regions with their member sensors.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    regions: Vec<Rect>,
    centers: Vec<Position>,
    /// Active sensors, ascending by global index.
    active: Vec<usize>,
    /// `region_of[c]` is the region of `active[c]`.
    region_of: Vec<usize>,
}

impl Partition {
    /// Assigns every active sensor to the region that owns it. Region sizes are
    /// not required to match; see [`split_region`] for the equal-split variant.
    pub fn from_regions(regions: Vec<Rect>, field: &SensorField, active: &[usize]) -> Result<Self> {
        let outer = field.roi();
        let mut sorted = active.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != active.len() {
            return Err(Error::Geometry("duplicate sensor in active set".into()));
        }
        let mut region_of = Vec::with_capacity(sorted.len());
        for &s in &sorted {
            if s >= field.len() {
                return Err(Error::Geometry(format!("unknown sensor index {s}")));
            }
            let p = field.position(s);
            let j = regions
                .iter()
                .position(|r| r.owns(&p, &outer))
                .ok_or_else(|| Error::Geometry(format!("sensor {s} lies outside every region")))?;
            region_of.push(j);
        }
        let centers = regions.iter().map(Rect::center).collect();
        Ok(Partition {
            regions,
            centers,
            active: sorted,
            region_of,
        })
    }

    pub fn m(&self) -> usize {
        self.regions.len()
    }

    pub fn regions(&self) -> &[Rect] {
        &self.regions
    }

    pub fn region(&self, j: usize) -> Rect {
        self.regions[j]
    }

    pub fn centers(&self) -> &[Position] {
        &self.centers
    }

    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Region index per active sensor, aligned with [`Partition::active`].
    pub fn membership(&self) -> &[usize] {
        &self.region_of
    }

    pub fn region_of_sensor(&self, sensor: usize) -> Option<usize> {
        self.active.binary_search(&sensor).ok().map(|c| self.region_of[c])
    }

    /// Global indices of the sensors in region `j`.
    pub fn members(&self, j: usize) -> Vec<usize> {
        self.active
            .iter()
            .zip(&self.region_of)
            .filter(|(_, &r)| r == j)
            .map(|(&s, _)| s)
            .collect()
    }

    /// Column positions (into [`Partition::active`]) of region `j`'s sensors.
    pub fn member_columns(&self, j: usize) -> Vec<usize> {
        self.region_of
            .iter()
            .enumerate()
            .filter(|(_, &r)| r == j)
            .map(|(c, _)| c)
            .collect()
    }

    /// Region owning point `p`, under the half-open convention of `outer`.
    pub fn region_containing(&self, p: &Position, outer: &Rect) -> Option<usize> {
        self.regions.iter().position(|r| r.owns(p, outer))
    }

    /// Same partition with one sensor removed from the active set.
    pub fn excluding(&self, sensor: usize) -> Partition {
        let mut out = self.clone();
        if let Ok(c) = out.active.binary_search(&sensor) {
            out.active.remove(c);
            out.region_of.remove(c);
        }
        out
    }
}

/// Splits `parent` into `m` regions holding equally many active sensors.
///
/// A single parent is cut into an `a x b` grid with `a * b = m`. A pair of
/// parents (exclusion method) needs an even `m`; each parent is cut into
/// `m / 2` pieces and the first parent's regions come first.
pub fn split_region(parent: &RegionOfInterest, m: usize, field: &SensorField, active: &[usize]) -> Result<Partition> {
    if m < 2 {
        return Err(Error::Geometry(format!("need at least 2 regions, got {m}")));
    }
    let regions = match parent {
        RegionOfInterest::Single(r) => r.balanced_split(m),
        RegionOfInterest::Pair(a, b) => {
            if !m.is_multiple_of(2) {
                return Err(Error::Geometry(format!(
                    "a pair of parent regions needs an even region count, got {m}"
                )));
            }
            let mut v = a.balanced_split(m / 2);
            v.extend(b.balanced_split(m / 2));
            v
        }
    };
    if active.is_empty() || !active.len().is_multiple_of(m) {
        return Err(Error::Indivisible {
            count: active.len(),
            regions: m,
        });
    }
    let partition = Partition::from_regions(regions, field, active)?;
    let per_region = active.len() / m;
    let mut counts = vec![0usize; m];
    for &j in partition.membership() {
        counts[j] += 1;
    }
    if counts.iter().any(|&c| c != per_region) {
        return Err(Error::Indivisible {
            count: active.len(),
            regions: m,
        });
    }
    Ok(partition)
}

fn reflect(p: &Position, a: &Position, b: &Position) -> Position {
    // Mirror across the perpendicular bisector of segment a-b.
    let (nx, ny) = (b.x - a.x, b.y - a.y);
    let norm2 = nx * nx + ny * ny;
    let (mx, my) = (0.5 * (a.x + b.x), 0.5 * (a.y + b.y));
    let dot = (p.x - mx) * nx + (p.y - my) * ny;
    Position::new(p.x - 2.0 * dot * nx / norm2, p.y - 2.0 * dot * ny / norm2)
}

/// Checks the symmetric-pairing condition: for every ordered pair of regions
/// `(j, l)`, mirroring region `j`'s sensors across the perpendicular bisector of
/// the two region centers lands exactly on region `l`'s sensors, with equal
/// thresholds. `thresholds` is aligned with [`Partition::active`].
pub fn verify_pairing(partition: &Partition, field: &SensorField, thresholds: &[f64]) -> bool {
    if thresholds.len() != partition.active().len() {
        return false;
    }
    let m = partition.m();
    if m < 2 {
        return true;
    }
    let eta: HashMap<usize, f64> = partition
        .active()
        .iter()
        .copied()
        .zip(thresholds.iter().copied())
        .collect();
    let members: Vec<Vec<usize>> = (0..m).map(|j| partition.members(j)).collect();
    let lookup: Vec<HashMap<(i64, i64), usize>> = members
        .iter()
        .map(|ms| ms.iter().map(|&s| (lattice_key(&field.position(s)), s)).collect())
        .collect();

    for j in 0..m {
        for l in 0..m {
            if j == l {
                continue;
            }
            if members[j].len() != members[l].len() {
                return false;
            }
            let (cj, cl) = (partition.centers()[j], partition.centers()[l]);
            for &s in &members[j] {
                let image = reflect(&field.position(s), &cj, &cl);
                let Some(&t) = lookup[l].get(&lattice_key(&image)) else {
                    return false;
                };
                let (a, b) = (eta[&s], eta[&t]);
                if (a - b).abs() > 1e-9 * a.abs().max(b.abs()).max(1.0) {
                    return false;
                }
            }
        }
    }
    true
}
