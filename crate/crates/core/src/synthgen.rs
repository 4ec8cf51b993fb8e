//! Configuration-model graphs with power-law or uniform edge weights, and a
//! tail estimator for the weight exponent.
//!
//! Stubs are shuffled and paired; every pair draws its weight when it is
//! connected. Self-loops are dropped and of parallel edges only the first
//! drawn is kept, so surviving weights follow the weight law exactly.

use std::collections::HashSet;
use std::io::Write;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Aggregation, NodeId, SortedEdgeList, WeightedGraph};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DegreeDist {
    Constant(usize),
    /// `P(d) ∝ d^-gamma` on `d_min..=d_max`; `d_max` is capped at `n - 1`.
    PowerLaw { gamma: f64, d_min: usize, d_max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum WeightDist {
    /// `P(W >= w) = (w / w_min)^(1 - beta)`.
    PowerLaw { beta: f64, w_min: f64 },
    Uniform { lo: f64, hi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub n: usize,
    pub degree: DegreeDist,
    pub weight: WeightDist,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::param("a generated graph needs at least 2 nodes"));
        }
        let cap = self.n - 1;
        match self.degree {
            DegreeDist::Constant(d) if d > cap => {
                return Err(Error::param(format!("constant degree {d} exceeds n - 1 = {cap}")));
            }
            DegreeDist::PowerLaw { gamma, d_min, d_max } => {
                if !(gamma.is_finite() && gamma > 0.0) {
                    return Err(Error::param(format!("degree exponent must be positive, got {gamma}")));
                }
                if d_min == 0 || d_min > d_max || d_min > cap {
                    return Err(Error::param(format!(
                        "degree bounds [{d_min}, {d_max}] are impossible for {} nodes",
                        self.n
                    )));
                }
            }
            DegreeDist::Constant(_) => {}
        }
        match self.weight {
            WeightDist::PowerLaw { beta, w_min } => {
                if !(beta > 1.0 && beta.is_finite()) {
                    return Err(Error::param(format!("beta must exceed 1, got {beta}")));
                }
                if !(w_min > 0.0 && w_min.is_finite()) {
                    return Err(Error::param(format!("w_min must be positive, got {w_min}")));
                }
            }
            WeightDist::Uniform { lo, hi } => {
                if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
                    return Err(Error::param(format!("uniform weights need 0 < lo <= hi, got [{lo}, {hi}]")));
                }
            }
        }
        Ok(())
    }
}

impl WeightDist {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            WeightDist::PowerLaw { beta, w_min } => {
                // u in (0, 1] keeps the inverse CDF finite.
                let u = 1.0 - rng.random::<f64>();
                w_min * u.powf(1.0 / (1.0 - beta))
            }
            WeightDist::Uniform { lo, hi } if lo == hi => lo,
            WeightDist::Uniform { lo, hi } => rng.random_range(lo..hi),
        }
    }
}

fn degree_sequence(spec: &GenSpec, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = spec.n;
    match spec.degree {
        DegreeDist::Constant(d) => vec![d; n],
        DegreeDist::PowerLaw { gamma, d_min, d_max } => {
            let d_max = d_max.min(n - 1);
            let mut cdf = Vec::with_capacity(d_max - d_min + 1);
            let mut acc = 0.0;
            for d in d_min..=d_max {
                acc += (d as f64).powf(-gamma);
                cdf.push(acc);
            }
            (0..n)
                .map(|_| {
                    let r = rng.random::<f64>() * acc;
                    d_min + cdf.partition_point(|&c| c <= r).min(cdf.len() - 1)
                })
                .collect()
        }
    }
}

/// Stub-matching graph on nodes `0..n`.
pub fn generate(spec: &GenSpec) -> Result<WeightedGraph> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut degrees = degree_sequence(spec, &mut rng);
    if degrees.iter().sum::<usize>() % 2 == 1 {
        // Pick a node with spare capacity for the extra stub.
        let cap = spec.n - 1;
        let i = degrees.iter().position(|&d| d < cap).unwrap_or(0);
        degrees[i] += 1;
    }
    let mut stubs: Vec<NodeId> = degrees
        .iter()
        .enumerate()
        .flat_map(|(u, &d)| std::iter::repeat_n(u as NodeId, d))
        .collect();
    stubs.shuffle(&mut rng);

    let mut seen = HashSet::with_capacity(stubs.len() / 2);
    let mut edges = Vec::with_capacity(stubs.len() / 2);
    for pair in stubs.chunks_exact(2) {
        let w = spec.weight.draw(&mut rng);
        let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if u != v && seen.insert((u, v)) {
            edges.push((u, v, w));
        }
    }
    WeightedGraph::from_edges(spec.n, edges, Aggregation::First)
}

/// Nominal edge count before loops and duplicates are dropped.
pub fn nominal_edges(spec: &GenSpec) -> Result<usize> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    Ok(degree_sequence(spec, &mut rng).iter().sum::<usize>().div_ceil(2))
}

/// Minimum tail edges for [`fit_beta`].
pub const MIN_TAIL: usize = 100;

/// Continuous maximum-likelihood tail exponent
/// `1 + n_tail / Σ ln(w / w_tail_min)` over weights `>= w_tail_min`.
pub fn fit_beta(edges: &SortedEdgeList, w_tail_min: f64) -> Result<f64> {
    if !(w_tail_min > 0.0 && w_tail_min.is_finite()) {
        return Err(Error::param(format!("tail threshold must be positive, got {w_tail_min}")));
    }
    let tail: Vec<f64> = edges.edges().iter().map(|e| e.w).take_while(|&w| w >= w_tail_min).collect();
    if tail.len() < MIN_TAIL {
        return Err(Error::Domain(format!(
            "only {} edges weigh at least {w_tail_min}; need {MIN_TAIL}",
            tail.len()
        )));
    }
    let log_sum: f64 = tail.iter().map(|&w| (w / w_tail_min).ln()).sum();
    if !(log_sum > 0.0) {
        return Err(Error::Domain("tail weights are all equal to the threshold".into()));
    }
    Ok(1.0 + tail.len() as f64 / log_sum)
}

/// Writes `u v w` lines in canonical edge order using original node ids.
pub fn write_edge_list<W: Write>(g: &WeightedGraph, mut out: W) -> std::io::Result<()> {
    for e in g.edges() {
        writeln!(out, "{} {} {}", g.original_id(e.u), g.original_id(e.v), e.w)?;
    }
    out.flush()
}
