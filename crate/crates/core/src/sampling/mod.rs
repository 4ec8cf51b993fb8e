//! Randomized retrieval biased toward heavy triangles.
//!
//! Every sampler draws one subgraph per iteration with probability built
//! from `w^p`, so a triangle is hit with probability proportional to
//! `w_ab^p + w_ac^p + w_bc^p`. Iterations are split across workers that each
//! own a ChaCha stream derived from `(seed, worker)`; results are identical
//! for identical seed, thread count and configuration.

mod cliques;
mod edge;
mod path;
mod wedge;

use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::par;
use crate::topk::{Ranked, TopKCollector, TopKResult};
use crate::weighting::{PMean, Triangle};

pub use cliques::edge_sample_cliques;
pub use edge::{edge_sample_topk, EdgeSamplingIndex};
pub use path::{path_sample_topk, PathSamplingIndex};
pub use wedge::{wedge_sample_topk, WedgeSamplingIndex};

/// Iterations checked between looks at the clock in time-budget mode.
const CLOCK_STRIDE: u64 = 1024;

/// How long a sampler runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Total iterations, split across workers.
    Iterations(u64),
    /// Wall-clock budget in milliseconds.
    TimeMs(u64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SamplerConfig {
    pub p: f64,
    pub budget: Budget,
    pub seed: u64,
    pub threads: usize,
    pub k: usize,
}

impl SamplerConfig {
    pub fn new(p: f64, budget: Budget, k: usize) -> Self {
        SamplerConfig { p, budget, seed: 0, threads: 1, k }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.p.is_finite() {
            return Err(Error::param(format!("sampling needs a finite p, got {}", self.p)));
        }
        if self.k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        if self.threads == 0 {
            return Err(Error::param("threads must be at least 1"));
        }
        match self.budget {
            Budget::Iterations(0) => Err(Error::param("iterations must be at least 1")),
            Budget::TimeMs(0) => Err(Error::param("time budget must be at least 1 ms")),
            _ => Ok(()),
        }
    }

    pub(crate) fn mean(&self) -> PMean {
        PMean::Finite(self.p)
    }

    fn warn_if_non_positive(&self) {
        if self.p <= 0.0 {
            log::warn!(
                "p = {} <= 0: sampling by w^p favours triangles with a small p-mean, so heavy triangles are not preferentially found",
                self.p
            );
        }
    }
}

/// Minimum iterations so that an item hit with probability `q` per
/// iteration is found with probability at least `1 - delta`.
pub fn required_samples(q: f64, delta: f64) -> Result<u64> {
    if !(q > 0.0 && q <= 1.0) {
        return Err(Error::param(format!("q must lie in (0, 1], got {q}")));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::param(format!("delta must lie in (0, 1), got {delta}")));
    }
    Ok(((1.0 / delta).ln() / q).ceil().max(1.0) as u64)
}

/// One iteration of a randomized retrieval scheme.
pub trait Sampler: Sync {
    type Item: Ranked + Send;

    /// Appends whatever the iteration found to `out`.
    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Self::Item>);
}

/// RNG of `worker` for `seed`: one ChaCha stream per worker.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Runs `sampler` under `cfg` and keeps the `k` best distinct items.
pub fn run_sampler<S: Sampler>(sampler: &S, cfg: &SamplerConfig) -> Result<TopKResult<S::Item>> {
    cfg.validate()?;
    let workers = cfg.threads;
    let stop = AtomicBool::new(false);
    let deadline = match cfg.budget {
        Budget::TimeMs(ms) => Some(Instant::now() + Duration::from_millis(ms)),
        Budget::Iterations(_) => None,
    };
    let outputs = par::map_workers(cfg.threads, workers, |worker| {
        let quota = match cfg.budget {
            Budget::Iterations(t) => {
                let w = workers as u64;
                t / w + u64::from((worker as u64) < t % w)
            }
            Budget::TimeMs(_) => u64::MAX,
        };
        let mut rng = worker_rng(cfg.seed, worker);
        let mut top = TopKCollector::new(cfg.k);
        let mut buf = Vec::new();
        let mut done = 0u64;
        while done < quota {
            if let Some(deadline) = deadline {
                if done.is_multiple_of(CLOCK_STRIDE)
                    && (stop.load(AtomicOrdering::Relaxed) || Instant::now() >= deadline)
                {
                    stop.store(true, AtomicOrdering::Relaxed);
                    break;
                }
            }
            sampler.sample(&mut rng, &mut buf);
            for item in buf.drain(..) {
                top.offer(item);
            }
            done += 1;
        }
        (top, done)
    });
    let mut top = TopKCollector::new(cfg.k);
    let mut iterations = 0;
    for (part, done) in outputs {
        top.merge(part);
        iterations += done;
    }
    Ok(top.into_result(false, Some(iterations)))
}

/// Draws an index from prefix sums `cdf` (strictly positive total)
/// proportionally to the increments.
#[inline]
pub(crate) fn draw_cdf<R: Rng + ?Sized>(cdf: &[f64], rng: &mut R) -> usize {
    let total = *cdf.last().expect("non-empty distribution");
    let r = rng.random::<f64>() * total;
    cdf.partition_point(|&c| c <= r).min(cdf.len() - 1)
}

/// Like [`draw_cdf`] with entry `skip` removed; needs another entry with a
/// positive increment.
pub(crate) fn draw_cdf_excluding<R: Rng + ?Sized>(cdf: &[f64], skip: usize, rng: &mut R) -> usize {
    let lo = if skip == 0 { 0.0 } else { cdf[skip - 1] };
    let hi = cdf[skip];
    let total = cdf[cdf.len() - 1] - (hi - lo);
    let r = rng.random::<f64>() * total;
    // Map the reduced range onto the full one by jumping over `skip`.
    let target = if r < lo { r } else { r + (hi - lo) };
    let mut i = cdf.partition_point(|&c| c <= target).min(cdf.len() - 1);
    if i == skip {
        // Rounding landed on the gap; take the nearest neighbour with mass.
        let mass = |j: usize| cdf[j] - if j == 0 { 0.0 } else { cdf[j - 1] };
        i = (skip + 1..cdf.len())
            .chain((0..skip).rev())
            .find(|&j| mass(j) > 0.0)
            .expect("another entry with positive mass");
    }
    i
}

/// Uniform index in `0..n` other than `skip` (`n >= 2`).
#[inline]
pub(crate) fn uniform_excluding<R: Rng + ?Sized>(n: usize, skip: usize, rng: &mut R) -> usize {
    let i = rng.random_range(0..n - 1);
    if i >= skip {
        i + 1
    } else {
        i
    }
}

/// Inclusive prefix sums of `w^p` over every node's adjacency, aligned with
/// the graph's neighbour arrays.
pub(crate) fn neighbor_prefix_sums(g: &WeightedGraph, p: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(2 * g.edge_count());
    for u in 0..g.node_count() as NodeId {
        let mut acc = 0.0;
        for &w in g.neighbor_weights(u) {
            acc += crate::weighting::pow(w, p);
            out.push(acc);
        }
    }
    out
}

/// Position of `v` in `u`'s neighbour list.
#[inline]
pub(crate) fn neighbor_slot(g: &WeightedGraph, u: NodeId, v: NodeId) -> usize {
    g.neighbors(u).binary_search(&v).expect("adjacent nodes")
}

pub(crate) fn triangle(g: &WeightedGraph, a: NodeId, b: NodeId, c: NodeId, w_ab: f64, p: PMean) -> Option<Triangle> {
    let w_ac = g.weight(a, c)?;
    let w_bc = g.weight(b, c)?;
    Some(Triangle::new(a, b, c, w_ab, w_ac, w_bc, p))
}

pub(crate) fn check_exponent(index_p: f64, cfg: &SamplerConfig) -> Result<()> {
    if index_p.to_bits() == cfg.p.to_bits() {
        Ok(())
    } else {
        Err(Error::param(format!("index built for p = {index_p} but configured p = {}", cfg.p)))
    }
}

pub(crate) fn prepare(cfg: &SamplerConfig) -> Result<()> {
    cfg.validate()?;
    cfg.warn_if_non_positive();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_counts() {
        assert_eq!(required_samples(0.5, 0.01).unwrap(), 10);
        assert_eq!(required_samples(1.0, 0.5).unwrap(), 1);
        assert_eq!(required_samples(24.0 / 39.0, 0.001).unwrap(), 12);
        assert!(required_samples(0.0, 0.1).is_err());
        assert!(required_samples(-0.1, 0.1).is_err());
        assert!(required_samples(0.5, 1.0).is_err());
    }

    #[test]
    fn config_validation() {
        let ok = SamplerConfig::new(1.0, Budget::Iterations(5), 3);
        assert!(ok.validate().is_ok());
        assert!(SamplerConfig { k: 0, ..ok }.validate().is_err());
        assert!(SamplerConfig { threads: 0, ..ok }.validate().is_err());
        assert!(SamplerConfig { p: f64::INFINITY, ..ok }.validate().is_err());
        assert!(SamplerConfig { budget: Budget::Iterations(0), ..ok }.validate().is_err());
        assert!(SamplerConfig { budget: Budget::TimeMs(0), ..ok }.validate().is_err());
    }

    #[test]
    fn excluded_draws_skip_the_entry() {
        let cdf = [1.0, 11.0, 12.0, 12.0, 14.0];
        let mut rng = worker_rng(7, 0);
        let mut counts = [0usize; 5];
        for _ in 0..40_000 {
            counts[draw_cdf_excluding(&cdf, 1, &mut rng)] += 1;
        }
        assert_eq!(counts[1], 0);
        assert_eq!(counts[3], 0);
        // Masses 1 : 1 : 2 over the remaining entries.
        let f = |i: usize| counts[i] as f64 / 40_000.0;
        assert!((f(0) - 0.25).abs() < 0.02 && (f(2) - 0.25).abs() < 0.02 && (f(4) - 0.5).abs() < 0.02);
        for _ in 0..1000 {
            assert_ne!(uniform_excluding(4, 2, &mut rng), 2);
        }
    }

    #[test]
    fn worker_streams_differ() {
        let a: u64 = worker_rng(1, 0).random();
        let b: u64 = worker_rng(1, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, worker_rng(1, 0).random::<u64>());
    }
}
