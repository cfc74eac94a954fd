use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::matrix::{min2, squared_cost, BandMask, CostMatrix};
use crate::series::TimeSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DtwResult {
    /// Square root of the accumulated cost at the terminal cell.
    pub distance: f64,
    /// Optimal warping path from `(0, 0)` to `(m - 1, n - 1)`, when requested.
    pub path: Option<Vec<(usize, usize)>>,
    /// Number of cumulative cells computed.
    pub visited_cells: usize,
}

/// Cumulative costs stored row by row, keeping only each row's admissible
/// column span.
struct Accumulated {
    cols: usize,
    width: usize,
    spans: Vec<(usize, usize)>,
    cells: Vec<f64>,
    visited: usize,
}

impl Accumulated {
    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = self.spans[i];
        if j < lo || j > hi {
            f64::INFINITY
        } else {
            self.cells[i * self.width + (j - lo)]
        }
    }

    fn terminal(&self) -> f64 {
        self.get(self.spans.len() - 1, self.cols - 1)
    }

    fn backtrack(&self) -> Vec<(usize, usize)> {
        let (mut i, mut j) = (self.spans.len() - 1, self.cols - 1);
        let mut path = vec![(i, j)];
        while i > 0 || j > 0 {
            if i == 0 {
                j -= 1;
            } else if j == 0 {
                i -= 1;
            } else {
                let diag = self.get(i - 1, j - 1);
                let up = self.get(i - 1, j);
                let left = self.get(i, j - 1);
                if diag <= up && diag <= left {
                    i -= 1;
                    j -= 1;
                } else if up <= left {
                    i -= 1;
                } else {
                    j -= 1;
                }
            }
            path.push((i, j));
        }
        path.reverse();
        path
    }
}

/// Cumulative recursion `C[i,j] = cost(i,j) + min(C[i-1,j], C[i,j-1], C[i-1,j-1])`
/// restricted to the per-row column spans; everything outside a span reads as `+inf`.
fn accumulate(
    rows: usize,
    cols: usize,
    span: impl Fn(usize) -> (usize, usize),
    cost: impl Fn(usize, usize) -> f64,
) -> Accumulated {
    let spans: Vec<_> = (0..rows).map(span).collect();
    let width = spans.iter().map(|&(lo, hi)| hi - lo + 1).max().unwrap_or(0);
    let mut acc = Accumulated {
        cols,
        width,
        spans,
        cells: vec![f64::INFINITY; rows * width],
        visited: 0,
    };
    for i in 0..rows {
        let (lo, hi) = acc.spans[i];
        let (done, rest) = acc.cells.split_at_mut(i * width);
        let cur = &mut rest[..=hi - lo];
        // an empty span (1, 0) on the first row reads every predecessor as +inf
        let (plo, phi) = if i > 0 { acc.spans[i - 1] } else { (1, 0) };
        let prev = if i > 0 { &done[(i - 1) * width..] } else { &done[..0] };
        let mut left = f64::INFINITY;
        for j in lo..=hi {
            let c = cost(i, j);
            let value = if i == 0 && j == 0 {
                c
            } else {
                let up = if j >= plo && j <= phi {
                    prev[j - plo]
                } else {
                    f64::INFINITY
                };
                let diag = if j > plo && j <= phi + 1 {
                    prev[j - 1 - plo]
                } else {
                    f64::INFINITY
                };
                c + min2(min2(up, diag), left)
            };
            cur[j - lo] = value;
            left = value;
        }
        acc.visited += hi - lo + 1;
    }
    acc
}

fn run(t: &TimeSeries, s: &TimeSeries, band: Option<&BandMask>) -> Result<Accumulated> {
    let (tv, sv) = (t.values(), s.values());
    let (m, n) = (tv.len(), sv.len());
    let cost = |i: usize, j: usize| squared_cost(tv[i], sv[j]);
    match band {
        None => Ok(accumulate(m, n, |_| (0, n - 1), cost)),
        Some(band) => {
            if m != n {
                return Err(domain(format!(
                    "banded DTW needs equal lengths, got {m} and {n}"
                )));
            }
            if band.length() != m {
                return Err(domain(format!(
                    "band built for length {} applied to series of length {m}",
                    band.length()
                )));
            }
            Ok(accumulate(m, n, |i| band.columns(i), cost))
        }
    }
}

/// DTW distance, optionally restricted to a Sakoe-Chiba band.
pub fn dtw(t: &TimeSeries, s: &TimeSeries, band: Option<&BandMask>) -> Result<DtwResult> {
    let acc = run(t, s, band)?;
    Ok(DtwResult {
        distance: acc.terminal().sqrt(),
        path: None,
        visited_cells: acc.visited,
    })
}

/// Like [`dtw`], also backtracking the optimal warping path.
///
/// Ties between predecessors prefer the diagonal, then the vertical step.
pub fn dtw_with_path(
    t: &TimeSeries,
    s: &TimeSeries,
    band: Option<&BandMask>,
) -> Result<DtwResult> {
    let acc = run(t, s, band)?;
    Ok(DtwResult {
        distance: acc.terminal().sqrt(),
        path: Some(acc.backtrack()),
        visited_cells: acc.visited,
    })
}

/// The full cumulative-cost matrix, with `+inf` outside the band.
pub fn dtw_cumulative_matrix(
    t: &TimeSeries,
    s: &TimeSeries,
    band: Option<&BandMask>,
) -> Result<CostMatrix> {
    let acc = run(t, s, band)?;
    let rows = acc.spans.len();
    let mut cells = Vec::with_capacity(rows * acc.cols);
    for i in 0..rows {
        cells.extend((0..acc.cols).map(|j| acc.get(i, j)));
    }
    Ok(CostMatrix::from_cells(rows, acc.cols, cells))
}
