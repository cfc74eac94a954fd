//! K-Means with K-Means++ seeding over any [`MeasureSpec`].
//!
//! Under the cyclic measure each series carries the rotation that aligned it
//! with its barycenter, and barycenters average the rotated members so that
//! every cluster stays in a single phase frame.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::measure::MeasureSpec;
use crate::series::{Dataset, TimeSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct KMeansConfig {
    pub k: usize,
    pub n_init: usize,
    pub max_iter: usize,
    pub seed: u64,
    pub measure: MeasureSpec,
}

impl KMeansConfig {
    pub const DEFAULT_N_INIT: usize = 10;
    pub const DEFAULT_MAX_ITER: usize = 50;

    pub fn new(k: usize, measure: MeasureSpec) -> Self {
        Self {
            k,
            n_init: Self::DEFAULT_N_INIT,
            max_iter: Self::DEFAULT_MAX_ITER,
            seed: 0,
            measure,
        }
    }

    #[must_use]
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    #[must_use]
    pub fn with_n_init(mut self, n_init: usize) -> Self {
        self.n_init = n_init;
        self
    }

    #[must_use]
    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self, data: &Dataset) -> Result<()> {
        if self.k == 0 {
            return Err(domain("k must be at least 1"));
        }
        if self.k > data.len() {
            return Err(domain(format!(
                "k = {} exceeds the dataset size {}",
                self.k,
                data.len()
            )));
        }
        if self.n_init == 0 {
            return Err(domain("n_init must be at least 1"));
        }
        self.measure.check_length(data.length())
    }
}

/// Nearest-barycenter mapping of every series.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub clusters: Vec<usize>,
    /// `rotate(series, shifts[s])` is the alignment that faced the barycenter.
    pub shifts: Vec<usize>,
    pub distances: Vec<f64>,
    /// Sum of squared distances.
    pub inertia: f64,
}

impl Assignment {
    fn same_partition(&self, other: &Self) -> bool {
        self.clusters == other.clusters && self.shifts == other.shifts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    pub assignments: Vec<usize>,
    pub shifts: Vec<usize>,
    pub barycenters: Vec<TimeSeries>,
    pub inertia: f64,
    pub iterations_run: usize,
    /// Index of the restart that produced this result.
    pub restart: usize,
}

/// K-Means++ seeding: the first center uniformly, each further one with
/// probability proportional to its squared distance to the nearest chosen
/// center. When every remaining distance is zero the next center is drawn
/// uniformly among the unchosen series.
pub fn kmeanspp_init<R: Rng + ?Sized>(
    data: &Dataset,
    k: usize,
    measure: &MeasureSpec,
    rng: &mut R,
) -> Result<Vec<TimeSeries>> {
    let n = data.len();
    if k == 0 || k > n {
        return Err(domain(format!("cannot pick {k} centers from {n} series")));
    }
    measure.check_length(data.length())?;
    let series = data.series();
    let mut chosen = vec![rng.random_range(0..n)];
    let mut nearest = vec![f64::INFINITY; n];
    while chosen.len() < k {
        let last = &series[*chosen.last().expect("non-empty")];
        let dists = series
            .par_iter()
            .map(|s| measure.compare(s, last).map(|c| c.distance))
            .collect::<Result<Vec<_>>>()?;
        for (slot, d) in nearest.iter_mut().zip(dists) {
            *slot = slot.min(d * d);
        }
        for &c in &chosen {
            nearest[c] = 0.0;
        }
        let next = if nearest.iter().any(|&w| w > 0.0) {
            WeightedIndex::new(&nearest)
                .map_err(|e| domain(format!("K-Means++ weights: {e}")))?
                .sample(rng)
        } else {
            let unchosen: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
            unchosen[rng.random_range(0..unchosen.len())]
        };
        chosen.push(next);
    }
    chosen
        .into_iter()
        .map(|i| TimeSeries::new(series[i].values().to_vec()))
        .collect()
}

/// Maps each series to its closest barycenter, ties going to the lowest index.
pub fn assign(
    data: &Dataset,
    barycenters: &[TimeSeries],
    measure: &MeasureSpec,
) -> Result<Assignment> {
    if barycenters.is_empty() {
        return Err(domain("at least one barycenter is required"));
    }
    measure.check_length(data.length())?;
    let best = data
        .series()
        .par_iter()
        .map(|s| {
            let mut best: Option<(usize, usize, f64)> = None;
            for (c, b) in barycenters.iter().enumerate() {
                let cmp = measure.compare(s, b)?;
                if best.is_none_or(|(_, _, d)| cmp.distance < d) {
                    best = Some((c, cmp.shift, cmp.distance));
                }
            }
            Ok(best.expect("barycenters non-empty"))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = Assignment {
        clusters: Vec::with_capacity(best.len()),
        shifts: Vec::with_capacity(best.len()),
        distances: Vec::with_capacity(best.len()),
        inertia: 0.0,
    };
    for (c, shift, d) in best {
        out.clusters.push(c);
        out.shifts.push(shift);
        out.distances.push(d);
        out.inertia += d * d;
    }
    Ok(out)
}

/// Pointwise mean of `rotate(series, shift)` over each cluster's members.
///
/// An empty cluster takes over the series farthest from its barycenter among
/// clusters with more than one member; that series enters unrotated.
pub fn update_barycenters(
    data: &Dataset,
    assignment: &Assignment,
    k: usize,
) -> Result<Vec<TimeSeries>> {
    let n = data.len();
    if assignment.clusters.len() != n || assignment.shifts.len() != n {
        return Err(domain("assignment does not match the dataset size"));
    }
    if let Some(&c) = assignment.clusters.iter().find(|&&c| c >= k) {
        return Err(domain(format!("cluster index {c} out of range for k = {k}")));
    }
    let mut clusters = assignment.clusters.clone();
    let mut shifts = assignment.shifts.clone();
    let mut sizes = vec![0usize; k];
    for &c in &clusters {
        sizes[c] += 1;
    }
    let mut moved = vec![false; n];
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let donor = (0..n)
            .filter(|&s| !moved[s] && sizes[clusters[s]] > 1)
            .fold(None::<usize>, |best, s| match best {
                Some(b) if assignment.distances[b] >= assignment.distances[s] => Some(b),
                _ => Some(s),
            })
            .ok_or_else(|| domain("no series available to reseed an empty cluster"))?;
        sizes[clusters[donor]] -= 1;
        sizes[empty] = 1;
        clusters[donor] = empty;
        shifts[donor] = 0;
        moved[donor] = true;
    }

    let m = data.length();
    let mut sums = vec![vec![0.0; m]; k];
    for (idx, s) in data.series().iter().enumerate() {
        let sum = &mut sums[clusters[idx]];
        let shift = shifts[idx];
        let v = s.values();
        for (i, slot) in sum.iter_mut().enumerate() {
            *slot += v[(i + shift) % m];
        }
    }
    sums.into_iter()
        .zip(sizes)
        .map(|(sum, size)| {
            let count = size as f64;
            TimeSeries::new(sum.into_iter().map(|x| x / count).collect())
        })
        .collect()
}

fn single_run(data: &Dataset, config: &KMeansConfig, restart: usize) -> Result<ClusteringResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(restart as u64);
    let mut barycenters = kmeanspp_init(data, config.k, &config.measure, &mut rng)?;
    let mut current = assign(data, &barycenters, &config.measure)?;
    let mut iterations_run = 0;
    while iterations_run < config.max_iter {
        let next_barycenters = update_barycenters(data, &current, config.k)?;
        let next = assign(data, &next_barycenters, &config.measure)?;
        iterations_run += 1;
        let stable = next.same_partition(&current);
        barycenters = next_barycenters;
        current = next;
        if stable {
            break;
        }
    }
    Ok(ClusteringResult {
        assignments: current.clusters,
        shifts: current.shifts,
        barycenters,
        inertia: current.inertia,
        iterations_run,
        restart,
    })
}

/// Every restart of [`kmeans`], in restart order.
///
/// Restart `i` seeds its generator from `(config.seed, i)`. Each restart
/// alternates barycenter updates and reassignment until both the cluster
/// indices and the shifts stop changing, or `max_iter` updates have run.
/// Restarts run in parallel; the output does not depend on the thread count.
pub fn kmeans_runs(data: &Dataset, config: &KMeansConfig) -> Result<Vec<ClusteringResult>> {
    config.validate(data)?;
    (0..config.n_init)
        .into_par_iter()
        .map(|restart| single_run(data, config, restart))
        .collect()
}

/// Runs `n_init` seeded restarts and keeps the one with the lowest inertia
/// (earliest restart on ties).
pub fn kmeans(data: &Dataset, config: &KMeansConfig) -> Result<ClusteringResult> {
    let best = kmeans_runs(data, config)?
        .into_iter()
        .reduce(|best, run| if run.inertia < best.inertia { run } else { best })
        .expect("n_init >= 1");
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ts(v: &[f64]) -> TimeSeries {
        TimeSeries::new(v.to_vec()).unwrap()
    }

    fn data(rows: &[&[f64]]) -> Dataset {
        Dataset::new(rows.iter().map(|r| ts(r)).collect()).unwrap()
    }

    #[test]
    fn kmeanspp_single_center() {
        let d = data(&[&[0.0, 1.0], &[2.0, 3.0], &[4.0, 5.0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let centers = kmeanspp_init(&d, 1, &MeasureSpec::euclidean(), &mut rng).unwrap();
        assert_eq!(centers.len(), 1);
        assert!(d.series().iter().any(|s| s.values() == centers[0].values()));
    }

    #[test]
    fn kmeanspp_picks_the_only_positive_weight() {
        let d = data(&[&[0.0, 0.0], &[0.0, 0.0], &[10.0, 10.0]]);
        for seed in 0..50 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let centers = kmeanspp_init(&d, 2, &MeasureSpec::euclidean(), &mut rng).unwrap();
            if centers[0].values() == [0.0, 0.0] {
                assert_eq!(centers[1].values(), &[10.0, 10.0]);
            } else {
                assert_eq!(centers[1].values(), &[0.0, 0.0]);
            }
        }
    }

    #[test]
    fn kmeanspp_identical_series_fall_back_to_uniform() {
        let d = data(&[&[1.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]]);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let centers = kmeanspp_init(&d, 3, &MeasureSpec::shift_dtw(0), &mut rng).unwrap();
        assert_eq!(centers.len(), 3);
        assert!(kmeanspp_init(&d, 4, &MeasureSpec::euclidean(), &mut rng).is_err());
    }

    #[test]
    fn assign_single_barycenter() {
        let d = data(&[&[0.0, 1.0], &[3.0, 1.0]]);
        let b = ts(&[1.0, 1.0]);
        let a = assign(&d, &[b], &MeasureSpec::euclidean()).unwrap();
        assert_eq!(a.clusters, vec![0, 0]);
        assert_eq!(a.inertia, 1.0 + 4.0);
    }

    #[test]
    fn assign_records_shift() {
        // m = 2(2r+1), so rotating by 2r+1 twice is the identity
        let t = ts(&[0.0, 1.0, 5.0, 2.0, 8.0, 3.0]);
        let r = 1;
        let d = Dataset::new(vec![t.clone(), t.rotate(2 * r + 1).unwrap()]).unwrap();
        let a = assign(&d, &[t], &MeasureSpec::shift_dtw(r)).unwrap();
        assert_eq!(a.clusters, vec![0, 0]);
        assert_eq!(a.distances, vec![0.0, 0.0]);
        assert_eq!(a.shifts, vec![0, 2 * r + 1]);
    }

    #[test]
    fn assign_ties_go_to_lowest_index() {
        let d = data(&[&[1.0, 1.0]]);
        let a = assign(&d, &[ts(&[0.0, 1.0]), ts(&[2.0, 1.0])], &MeasureSpec::euclidean()).unwrap();
        assert_eq!(a.clusters, vec![0]);
    }

    #[test]
    fn update_uses_shifts() {
        let d = data(&[&[0.0, 2.0], &[2.0, 0.0]]);
        let a = Assignment {
            clusters: vec![0, 0],
            shifts: vec![0, 1],
            distances: vec![0.0, 0.0],
            inertia: 0.0,
        };
        let b = update_barycenters(&d, &a, 1).unwrap();
        assert_eq!(b[0].values(), &[0.0, 2.0]);
    }

    #[test]
    fn update_singleton_and_plain_mean() {
        let d = data(&[&[1.0, 2.0], &[3.0, 6.0], &[5.0, 5.0]]);
        let a = Assignment {
            clusters: vec![0, 0, 1],
            shifts: vec![0, 0, 0],
            distances: vec![0.0; 3],
            inertia: 0.0,
        };
        let b = update_barycenters(&d, &a, 2).unwrap();
        assert_eq!(b[0].values(), &[2.0, 4.0]);
        assert_eq!(b[1].values(), &[5.0, 5.0]);
    }

    #[test]
    fn empty_cluster_takes_farthest_series() {
        let d = data(&[&[0.0], &[1.0], &[9.0]]);
        let a = Assignment {
            clusters: vec![0, 0, 0],
            shifts: vec![0, 0, 0],
            distances: vec![3.0, 2.0, 6.0],
            inertia: 0.0,
        };
        let b = update_barycenters(&d, &a, 2).unwrap();
        assert_eq!(b[0].values(), &[0.5]);
        assert_eq!(b[1].values(), &[9.0]);
    }

    #[test]
    fn separates_constant_groups() {
        let mut rows = Vec::new();
        for i in 0..6 {
            let level = if i % 2 == 0 { 0.0 } else { 100.0 };
            rows.push(ts(&[level; 8]));
        }
        let d = Dataset::new(rows).unwrap();
        for measure in [
            MeasureSpec::euclidean(),
            MeasureSpec::dtw(),
            MeasureSpec::dtw_banded(2),
            MeasureSpec::shift_dtw(2),
        ] {
            let res = kmeans(&d, &KMeansConfig::new(2, measure).with_seed(1)).unwrap();
            assert_eq!(res.inertia, 0.0, "{measure}");
            assert_ne!(res.assignments[0], res.assignments[1]);
            for i in 2..6 {
                assert_eq!(res.assignments[i], res.assignments[i % 2]);
            }
        }
    }

    #[test]
    fn config_validation() {
        let d = data(&[&[0.0, 1.0], &[2.0, 3.0]]);
        assert!(KMeansConfig::new(0, MeasureSpec::euclidean()).validate(&d).is_err());
        assert!(KMeansConfig::new(3, MeasureSpec::euclidean()).validate(&d).is_err());
        assert!(KMeansConfig::new(1, MeasureSpec::shift_dtw(2)).validate(&d).is_err());
        assert!(KMeansConfig::new(1, MeasureSpec::euclidean())
            .with_n_init(0)
            .validate(&d)
            .is_err());
    }
}
