use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::matrix::{min2, double_rows, pairwise_cost_matrix, CostMatrix};
use crate::series::TimeSeries;

/// Outcome of a shift-enumerating comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftDistanceResult {
    pub distance: f64,
    /// Rotation of the first series (`rotate(t, shift)`) that produced `distance`.
    pub shift: usize,
    pub visited_cells: usize,
    /// Every tested `(offset, distance)` pair in ascending offset order,
    /// kept only by the diagnostic entry points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_offset_distances: Option<Vec<(usize, f64)>>,
}

fn check(t: &TimeSeries, s: &TimeSeries, radius: usize) -> Result<usize> {
    let m = t.len();
    if s.len() != m {
        return Err(domain(format!(
            "shift DTW needs equal lengths, got {m} and {}",
            s.len()
        )));
    }
    if radius >= m {
        return Err(domain(format!(
            "band radius {radius} must be smaller than the series length {m}"
        )));
    }
    Ok(m)
}

/// Banded cumulative recursion over rows `offset..offset + m` of the doubled
/// matrix, the band following that window's own diagonal.
///
/// Two rolling rows hold the `2r + 1` admissible cells; `prev[k]` and `cur[k]`
/// are column `a - r + k` of window rows `a - 1` and `a`.
fn window_terminal(
    doubled: &CostMatrix,
    offset: usize,
    radius: usize,
    prev: &mut Vec<f64>,
    cur: &mut Vec<f64>,
) -> (f64, usize) {
    let m = doubled.cols();
    let mut visited = 0;
    prev.fill(f64::INFINITY);
    for a in 0..m {
        cur.fill(f64::INFINITY);
        let row = doubled.row(offset + a);
        let lo = a.saturating_sub(radius);
        let hi = (a + radius).min(m - 1);
        for (j, &c) in row.iter().enumerate().take(hi + 1).skip(lo) {
            let k = j + radius - a;
            cur[k] = if a == 0 && j == 0 {
                c
            } else {
                // up: (a-1, j) sits at k+1 in prev; diag: (a-1, j-1) at k
                let up = if a > 0 && k + 1 < prev.len() {
                    prev[k + 1]
                } else {
                    f64::INFINITY
                };
                let diag = if a > 0 && j > 0 { prev[k] } else { f64::INFINITY };
                let left = if j > lo { cur[k - 1] } else { f64::INFINITY };
                c + min2(min2(up, diag), left)
            };
            visited += 1;
        }
        std::mem::swap(prev, cur);
    }
    // terminal cell (m-1, m-1) sits at k = r
    (prev[radius], visited)
}

fn shift_dtw_impl(
    t: &TimeSeries,
    s: &TimeSeries,
    radius: usize,
    keep_offsets: bool,
) -> Result<ShiftDistanceResult> {
    let m = check(t, s, radius)?;
    let doubled = double_rows(&pairwise_cost_matrix(t, s));
    let width = 2 * radius + 1;
    let mut prev = vec![f64::INFINITY; width];
    let mut cur = vec![f64::INFINITY; width];

    let mut best = f64::INFINITY;
    let mut shift = 0;
    let mut visited_cells = 0;
    let mut per_offset = keep_offsets.then(Vec::new);
    for offset in (0..m).step_by(width) {
        let (terminal, visited) = window_terminal(&doubled, offset, radius, &mut prev, &mut cur);
        visited_cells += visited;
        let dist = terminal.sqrt();
        if let Some(list) = per_offset.as_mut() {
            list.push((offset, dist));
        }
        if dist < best {
            best = dist;
            shift = offset;
        }
    }
    Ok(ShiftDistanceResult {
        distance: best,
        shift,
        visited_cells,
        per_offset_distances: per_offset,
    })
}

/// Banded DTW between `rotate(t, d)` and `s` for each tested offset
/// `d ∈ {0, 2r+1, 2(2r+1), …} ∩ [0, m)`, returning the smallest distance and
/// its offset. Ties keep the smallest offset.
///
/// The row-doubled cost matrix is built once; each window recomputes its
/// cumulative costs from scratch.
pub fn shift_dtw(t: &TimeSeries, s: &TimeSeries, radius: usize) -> Result<ShiftDistanceResult> {
    shift_dtw_impl(t, s, radius, false)
}

/// [`shift_dtw`] keeping the per-offset distances.
pub fn shift_dtw_diagnostic(
    t: &TimeSeries,
    s: &TimeSeries,
    radius: usize,
) -> Result<ShiftDistanceResult> {
    shift_dtw_impl(t, s, radius, true)
}
