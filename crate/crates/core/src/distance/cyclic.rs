//! Exhaustive cyclic comparisons used as oracles for [`shift_dtw`](super::shift_dtw).

use serde::{Deserialize, Serialize};

use super::dtw::dtw;
use super::shift::ShiftDistanceResult;
use crate::error::{domain, Error, Result};
use crate::matrix::BandMask;
use crate::series::TimeSeries;

/// Default cap on cumulative cells computed by [`cdtw_bruteforce`].
pub const DEFAULT_CDTW_BUDGET: usize = 1 << 24;

/// Banded DTW between `rotate(t, k)` and `s` for every `k` in `[0, m)`.
///
/// Ties keep the smallest `k`.
pub fn naive_cyclic_banded_dtw(
    t: &TimeSeries,
    s: &TimeSeries,
    radius: usize,
) -> Result<ShiftDistanceResult> {
    let m = t.len();
    if s.len() != m {
        return Err(domain(format!(
            "cyclic banded DTW needs equal lengths, got {m} and {}",
            s.len()
        )));
    }
    let band = BandMask::new(radius, m)?;
    let mut best = f64::INFINITY;
    let mut shift = 0;
    let mut visited_cells = 0;
    for k in 0..m {
        let res = dtw(&t.rotate(k)?, s, Some(&band))?;
        visited_cells += res.visited_cells;
        if res.distance < best {
            best = res.distance;
            shift = k;
        }
    }
    Ok(ShiftDistanceResult {
        distance: best,
        shift,
        visited_cells,
        per_offset_distances: None,
    })
}

/// Exact cyclic DTW by enumeration of both rotations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdtwResult {
    pub distance: f64,
    /// Winning rotation of the first series.
    pub shift: usize,
    /// Winning rotation of the second series.
    pub shift_other: usize,
    pub visited_cells: usize,
}

/// `min_{k,l} dtw(rotate(t, k), rotate(s, l))`, unbanded, with the default budget.
pub fn cdtw_bruteforce(t: &TimeSeries, s: &TimeSeries) -> Result<CdtwResult> {
    cdtw_bruteforce_with_budget(t, s, DEFAULT_CDTW_BUDGET)
}

/// [`cdtw_bruteforce`] refusing inputs whose `m·n` DTW runs of `m·n` cells
/// each would exceed `budget` cells.
pub fn cdtw_bruteforce_with_budget(
    t: &TimeSeries,
    s: &TimeSeries,
    budget: usize,
) -> Result<CdtwResult> {
    let (m, n) = (t.len(), s.len());
    let work = (m * n).saturating_mul(m * n);
    if work > budget {
        return Err(Error::Resource(format!(
            "brute-force cyclic DTW on {m}×{n} needs {work} cells, budget is {budget}"
        )));
    }
    let rotated_s = (0..n).map(|l| s.rotate(l)).collect::<Result<Vec<_>>>()?;
    let mut out = CdtwResult {
        distance: f64::INFINITY,
        shift: 0,
        shift_other: 0,
        visited_cells: 0,
    };
    for k in 0..m {
        let tk = t.rotate(k)?;
        for (l, sl) in rotated_s.iter().enumerate() {
            let res = dtw(&tk, sl, None)?;
            out.visited_cells += res.visited_cells;
            if res.distance < out.distance {
                out.distance = res.distance;
                out.shift = k;
                out.shift_other = l;
            }
        }
    }
    Ok(out)
}

/// Single-rotation reduction of cyclic DTW:
/// `min_k min(dtw(σ^k t, s), dtw(σ^k t · t_k, s))`, where `σ^k t · t_k` is the
/// rotation with its first element repeated at the end.
///
/// Rotating only one series is not enough on its own; the appended element
/// accounts for warping paths that wrap around the torus mid-row.
pub fn cdtw_reduced(t: &TimeSeries, s: &TimeSeries) -> Result<ShiftDistanceResult> {
    let m = t.len();
    let mut best = f64::INFINITY;
    let mut shift = 0;
    let mut visited_cells = 0;
    for k in 0..m {
        let tk = t.rotate(k)?;
        let mut closed = tk.values().to_vec();
        closed.push(t.values()[k]);
        let closed = TimeSeries::new(closed)?;
        for candidate in [&tk, &closed] {
            let res = dtw(candidate, s, None)?;
            visited_cells += res.visited_cells;
            if res.distance < best {
                best = res.distance;
                shift = k;
            }
        }
    }
    Ok(ShiftDistanceResult {
        distance: best,
        shift,
        visited_cells,
        per_offset_distances: None,
    })
}
