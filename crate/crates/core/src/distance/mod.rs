//! The DTW family: plain and banded DTW, ShiftDTW, and exhaustive cyclic oracles.

mod cyclic;
mod dtw;
mod shift;

pub use cyclic::{
    cdtw_bruteforce, cdtw_bruteforce_with_budget, cdtw_reduced, naive_cyclic_banded_dtw,
    CdtwResult, DEFAULT_CDTW_BUDGET,
};
pub use dtw::{dtw, dtw_cumulative_matrix, dtw_with_path, DtwResult};
pub use shift::{shift_dtw, shift_dtw_diagnostic, ShiftDistanceResult};

use crate::error::{domain, Result};
use crate::matrix::squared_cost;
use crate::series::TimeSeries;

/// Lock-step L2 distance, `sqrt(sum_i (t_i - s_i)^2)`.
pub fn euclidean(t: &TimeSeries, s: &TimeSeries) -> Result<f64> {
    if t.len() != s.len() {
        return Err(domain(format!(
            "euclidean distance needs equal lengths, got {} and {}",
            t.len(),
            s.len()
        )));
    }
    let mut acc = 0.0;
    for (&a, &b) in t.values().iter().zip(s.values()) {
        acc += squared_cost(a, b);
    }
    Ok(acc.sqrt())
}
