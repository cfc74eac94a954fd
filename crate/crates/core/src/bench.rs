//! Visited-cell and wall-time measurements across series lengths and radii.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::distance::{dtw, naive_cyclic_banded_dtw, shift_dtw};
use crate::error::{domain, Result};
use crate::matrix::BandMask;
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMethod {
    DtwFull,
    DtwBanded,
    #[serde(rename = "shiftdtw")]
    ShiftDtw,
    NaiveCyclic,
}

impl BenchMethod {
    pub const ALL: [Self; 4] = [Self::DtwFull, Self::DtwBanded, Self::ShiftDtw, Self::NaiveCyclic];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::DtwFull => "dtw_full",
            Self::DtwBanded => "dtw_banded",
            Self::ShiftDtw => "shiftdtw",
            Self::NaiveCyclic => "naive_cyclic",
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub method: BenchMethod,
    pub m: usize,
    pub r: usize,
    pub visited_cells: usize,
    /// Median over repetitions; 0 when timing is disabled.
    pub wall_time_ns: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub lengths: Vec<usize>,
    pub radii: Vec<usize>,
    pub repetitions: usize,
    pub seed: u64,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            lengths: vec![64, 128, 256, 512],
            radii: vec![2, 4, 8],
            repetitions: 3,
            seed: 0,
            timing: true,
        }
    }
}

fn random_series(rng: &mut ChaCha8Rng, m: usize) -> Result<TimeSeries> {
    TimeSeries::new((0..m).map(|_| rng.random_range(-1.0..1.0)).collect())
}

fn measure(method: BenchMethod, t: &TimeSeries, s: &TimeSeries, r: usize) -> Result<usize> {
    Ok(match method {
        BenchMethod::DtwFull => dtw(t, s, None)?.visited_cells,
        BenchMethod::DtwBanded => dtw(t, s, Some(&BandMask::new(r, t.len())?))?.visited_cells,
        BenchMethod::ShiftDtw => shift_dtw(t, s, r)?.visited_cells,
        BenchMethod::NaiveCyclic => naive_cyclic_banded_dtw(t, s, r)?.visited_cells,
    })
}

/// One row per `(m, r, method)`, in that nesting order. Grid points with
/// `r >= m` are skipped. Each `m` draws a fresh uniform random pair.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.repetitions == 0 {
        return Err(domain("repetitions must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    for &m in &config.lengths {
        if m == 0 {
            return Err(domain("series length must be at least 1"));
        }
        let t = random_series(&mut rng, m)?;
        let s = random_series(&mut rng, m)?;
        for &r in config.radii.iter().filter(|&&r| r < m) {
            for method in BenchMethod::ALL {
                let mut times = Vec::with_capacity(config.repetitions);
                let mut visited_cells = 0;
                for _ in 0..config.repetitions {
                    let start = Instant::now();
                    visited_cells = measure(method, &t, &s, r)?;
                    times.push(start.elapsed().as_nanos());
                }
                times.sort_unstable();
                let wall_time_ns = if config.timing {
                    u64::try_from(times[times.len() / 2]).unwrap_or(u64::MAX)
                } else {
                    0
                };
                rows.push(BenchRow {
                    method,
                    m,
                    r,
                    visited_cells,
                    wall_time_ns,
                });
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid() {
        let config = BenchConfig {
            lengths: vec![4, 16],
            radii: vec![1, 5],
            repetitions: 1,
            seed: 2,
            timing: false,
        };
        let rows = run_bench(&config).unwrap();
        // r = 5 is skipped for m = 4
        assert_eq!(rows.len(), 4 * 3);
        assert!(rows.iter().all(|r| r.wall_time_ns == 0));
        let full = rows.iter().find(|r| r.method == BenchMethod::DtwFull && r.m == 16).unwrap();
        assert_eq!(full.visited_cells, 256);
    }
}
