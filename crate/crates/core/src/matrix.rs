//! Pairwise cost matrices and the Sakoe-Chiba band.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::series::TimeSeries;

/// Squared difference, the local cost used by every measure in this crate.
#[inline]
pub(crate) fn squared_cost(a: f64, b: f64) -> f64 {
    let d = a - b;
    d * d
}

/// Minimum of two non-NaN values; compiles to a single `minsd`.
#[inline(always)]
pub(crate) fn min2(a: f64, b: f64) -> f64 {
    if a < b {
        a
    } else {
        b
    }
}

/// Sakoe-Chiba band of radius `r` over an `m × m` grid: cell `(i, j)` is
/// admissible iff `|i - j| <= r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandMask {
    radius: usize,
    length: usize,
}

impl BandMask {
    /// Fails unless `radius < length`.
    pub fn new(radius: usize, length: usize) -> Result<Self> {
        if length == 0 {
            return Err(domain("band length must be at least 1"));
        }
        if radius >= length {
            return Err(domain(format!(
                "band radius {radius} must be smaller than the series length {length}"
            )));
        }
        Ok(Self { radius, length })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn length(&self) -> usize {
        self.length
    }

    #[inline]
    pub fn admits(&self, i: usize, j: usize) -> bool {
        i < self.length && j < self.length && i.abs_diff(j) <= self.radius
    }

    /// Inclusive column range admitted on row `i`.
    #[inline]
    pub fn columns(&self, i: usize) -> (usize, usize) {
        (
            i.saturating_sub(self.radius),
            (i + self.radius).min(self.length - 1),
        )
    }

    /// Number of admissible cells.
    pub fn cell_count(&self) -> usize {
        (0..self.length)
            .map(|i| {
                let (lo, hi) = self.columns(i);
                hi - lo + 1
            })
            .sum()
    }
}

/// Dense row-major matrix of costs.
///
/// Cells that were never computed hold `+inf`; `visited_count` is the number of
/// cells that were assigned a finite value.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<f64>,
    visited_count: usize,
}

impl CostMatrix {
    pub(crate) fn from_cells(rows: usize, cols: usize, cells: Vec<f64>) -> Self {
        debug_assert_eq!(cells.len(), rows * cols);
        let visited_count = cells.iter().filter(|c| c.is_finite()).count();
        Self {
            rows,
            cols,
            cells,
            visited_count,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn visited_count(&self) -> usize {
        self.visited_count
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.cells[i * self.cols + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.cells[i * self.cols..(i + 1) * self.cols]
    }

    #[must_use]
    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            cells.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            cells,
            visited_count: self.visited_count,
        }
    }
}

/// `M[i, j] = (t_i - s_j)^2`.
pub fn pairwise_cost_matrix(t: &TimeSeries, s: &TimeSeries) -> CostMatrix {
    let (tv, sv) = (t.values(), s.values());
    let mut cells = Vec::with_capacity(tv.len() * sv.len());
    for &a in tv {
        cells.extend(sv.iter().map(|&b| squared_cost(a, b)));
    }
    CostMatrix {
        rows: tv.len(),
        cols: sv.len(),
        cells,
        visited_count: tv.len() * sv.len(),
    }
}

/// Stacks a copy of `m` under itself: rows `i` and `i + rows` are identical.
pub fn double_rows(m: &CostMatrix) -> CostMatrix {
    let mut cells = Vec::with_capacity(2 * m.cells.len());
    cells.extend_from_slice(&m.cells);
    cells.extend_from_slice(&m.cells);
    CostMatrix {
        rows: 2 * m.rows,
        cols: m.cols,
        cells,
        visited_count: 2 * m.visited_count,
    }
}
