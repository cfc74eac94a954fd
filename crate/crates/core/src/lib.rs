//! Cyclic time-series comparison with a shift-enumerating, Sakoe-Chiba banded
//! DTW, and a K-Means that keeps track of per-series shifts.
//!
//! [`distance::shift_dtw`] evaluates banded DTW between every rotation of the
//! first series whose offset is a multiple of `2r + 1` and the second series,
//! reading each window out of a single row-doubled cost matrix. The total number
//! of cumulative cells visited stays within `m² + m(2r + 1)`.

pub mod bench;
pub mod distance;
pub mod error;
pub mod eval;
pub mod io;
pub mod kmeans;
pub mod matrix;
pub mod measure;
pub mod series;

pub use distance::{
    cdtw_bruteforce, cdtw_reduced, dtw, dtw_with_path, euclidean, naive_cyclic_banded_dtw,
    shift_dtw, shift_dtw_diagnostic, DtwResult, ShiftDistanceResult,
};
pub use error::{Error, Result};
pub use kmeans::{kmeans, kmeans_runs, ClusteringResult, KMeansConfig};
pub use matrix::{double_rows, pairwise_cost_matrix, BandMask, CostMatrix};
pub use measure::{MeasureKind, MeasureSpec};
pub use series::{rotate, Dataset, TimeSeries};
