//! Clustering accuracy and synthetic cyclic datasets.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::hash::Hash;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::series::{Dataset, TimeSeries};

/// Largest matching size solved by exhaustive permutation search.
pub const EXHAUSTIVE_LIMIT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Accuracy {
    pub value: f64,
    /// True when the greedy matching was used instead of the exhaustive one.
    pub approximate: bool,
}

/// Fraction of series whose cluster maps to their label under the best
/// one-to-one mapping between cluster indices and labels.
pub fn clustering_accuracy<L: Eq + Hash>(
    assignments: &[usize],
    labels: &[L],
    k: usize,
) -> Result<Accuracy> {
    if assignments.len() != labels.len() {
        return Err(domain(format!(
            "{} assignments but {} labels",
            assignments.len(),
            labels.len()
        )));
    }
    if assignments.is_empty() {
        return Err(domain("accuracy of an empty assignment is undefined"));
    }
    let mut label_index: HashMap<&L, usize> = HashMap::new();
    for l in labels {
        let next = label_index.len();
        label_index.entry(l).or_insert(next);
    }
    let clusters = assignments.iter().max().map_or(0, |&c| c + 1).max(k);
    let size = clusters.max(label_index.len());
    let mut table = vec![vec![0usize; size]; size];
    for (c, l) in assignments.iter().zip(labels) {
        table[*c][label_index[l]] += 1;
    }

    let (matched, approximate) = if size <= EXHAUSTIVE_LIMIT {
        let best = (0..size)
            .permutations(size)
            .map(|perm| perm.iter().enumerate().map(|(c, &l)| table[c][l]).sum::<usize>())
            .max()
            .unwrap_or(0);
        (best, false)
    } else {
        (greedy_matching(&table), true)
    };
    Ok(Accuracy {
        value: matched as f64 / assignments.len() as f64,
        approximate,
    })
}

fn greedy_matching(table: &[Vec<usize>]) -> usize {
    let size = table.len();
    let mut cells: Vec<(usize, usize, usize)> = (0..size)
        .flat_map(|c| (0..size).map(move |l| (c, l)))
        .map(|(c, l)| (table[c][l], c, l))
        .collect();
    cells.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut used_c = vec![false; size];
    let mut used_l = vec![false; size];
    let mut total = 0;
    for (count, c, l) in cells {
        if !used_c[c] && !used_l[l] {
            used_c[c] = true;
            used_l[l] = true;
            total += count;
        }
    }
    total
}

/// Base shape of one synthetic cluster, sampled over one full period of `m` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum BaseShape {
    /// `sin(2π · cycles · i / m)`.
    Sinusoid { cycles: usize },
    /// 1 on the first `width` points, 0 elsewhere.
    SquarePulse { width: usize },
    /// `teeth` linear ramps from -1 to 1.
    Sawtooth { teeth: usize },
}

impl BaseShape {
    pub fn sample(&self, m: usize) -> Vec<f64> {
        (0..m)
            .map(|i| {
                let x = i as f64 / m as f64;
                match *self {
                    Self::Sinusoid { cycles } => (TAU * cycles as f64 * x).sin(),
                    Self::SquarePulse { width } => f64::from(u8::from(i < width)),
                    Self::Sawtooth { teeth } => {
                        let phase = (x * teeth as f64).fract();
                        2.0 * phase - 1.0
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    /// One base shape per cluster.
    pub shapes: Vec<BaseShape>,
    pub per_cluster: usize,
    pub length: usize,
    /// Each series is rotated by a uniform draw from `0..=shift_range`.
    pub shift_range: usize,
    /// Cluster `c`'s base shape is rotated by `c · phase_step` before anything else.
    pub phase_step: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl SyntheticSpec {
    pub fn n_clusters(&self) -> usize {
        self.shapes.len()
    }

    /// Base series of cluster `c`, including its phase step.
    pub fn base(&self, c: usize) -> Result<TimeSeries> {
        let base = TimeSeries::new(self.shapes[c].sample(self.length))?;
        base.rotate((c * self.phase_step) % self.length)
    }

    fn validate(&self) -> Result<()> {
        if self.shapes.is_empty() {
            return Err(domain("at least one cluster shape is required"));
        }
        if self.per_cluster == 0 {
            return Err(domain("per_cluster must be at least 1"));
        }
        if self.length == 0 {
            return Err(domain("length must be at least 1"));
        }
        if self.shift_range >= self.length {
            return Err(domain(format!(
                "shift_range {} must be smaller than the length {}",
                self.shift_range, self.length
            )));
        }
        if !(self.noise_sigma >= 0.0 && self.noise_sigma.is_finite()) {
            return Err(domain("noise_sigma must be a finite non-negative number"));
        }
        Ok(())
    }
}

/// Labelled dataset: for each cluster, `per_cluster` randomly rotated and
/// noise-perturbed copies of its base shape. Labels are the cluster indices.
pub fn generate_shifted_dataset(spec: &SyntheticSpec) -> Result<Dataset> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let noise = Normal::new(0.0, spec.noise_sigma).map_err(|e| domain(e.to_string()))?;
    let mut series = Vec::with_capacity(spec.n_clusters() * spec.per_cluster);
    for c in 0..spec.n_clusters() {
        let base = spec.base(c)?;
        for i in 0..spec.per_cluster {
            let shift = rng.random_range(0..=spec.shift_range);
            let mut values = base.rotate(shift)?.values().to_vec();
            if spec.noise_sigma > 0.0 {
                for v in &mut values {
                    *v += noise.sample(&mut rng);
                }
            }
            series.push(
                TimeSeries::new(values)?
                    .with_id(format!("c{c}-{i}"))
                    .with_label(c.to_string()),
            );
        }
    }
    Dataset::new(series)
}
