//! Wedge sampling: draw a centre `a`, then two of its neighbours `b` and
//! `c`, and keep the wedge if `(b, c)` closes it.
//!
//! The draws follow `Ŵ₁(a) = 2 d_a D(a)`, `Ŵ₂(b|a) = d_a w_ab^p + D(a)` and
//! `Ŵ₃(c|a,b) = w_ac^p + w_ab^p` with `D(a) = Σ_{b∈N(a)} w_ab^p`. The two
//! conditionals are mixtures of a `w^p`-proportional and a uniform
//! neighbour draw, so one prefix-sum table per node serves both.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_exponent, draw_cdf, neighbor_prefix_sums, prepare, run_sampler, triangle, Sampler, SamplerConfig};
use crate::error::Result;
use crate::graph::{NodeId, WeightedGraph};
use crate::topk::TopKResult;
use crate::weighting::{pow, PMean, Triangle};

pub struct WedgeSamplingIndex<'g> {
    g: &'g WeightedGraph,
    /// Per-node inclusive prefix sums of `w^p`, aligned with adjacency.
    prefix: Vec<f64>,
    node_cdf: Vec<f64>,
    p: f64,
}

impl<'g> WedgeSamplingIndex<'g> {
    pub fn new(g: &'g WeightedGraph, p: f64) -> Self {
        let prefix = neighbor_prefix_sums(g, p);
        let mut index = WedgeSamplingIndex { g, prefix, node_cdf: Vec::with_capacity(g.node_count()), p };
        let mut acc = 0.0;
        for a in 0..g.node_count() as NodeId {
            acc += index.w1(a);
            index.node_cdf.push(acc);
        }
        index
    }

    fn table(&self, a: NodeId) -> &[f64] {
        let start = self.g.adjacency_offset(a);
        &self.prefix[start..start + self.g.degree(a)]
    }

    /// `D(a) = Σ_{b∈N(a)} w_ab^p`.
    pub fn neighbor_weight(&self, a: NodeId) -> f64 {
        self.table(a).last().copied().unwrap_or(0.0)
    }

    /// `Z1 = 2 Σ_v d_v D(v)`.
    pub fn z1(&self) -> f64 {
        self.node_cdf.last().copied().unwrap_or(0.0)
    }

    /// `Ŵ₁(a) = 2 d_a D(a)`.
    pub fn w1(&self, a: NodeId) -> f64 {
        2.0 * self.g.degree(a) as f64 * self.neighbor_weight(a)
    }

    /// `Ŵ₂(b|a) = d_a w_ab^p + D(a)` for the neighbour in slot `b`.
    pub fn w2(&self, a: NodeId, b: usize) -> f64 {
        let w_ab = pow(self.g.neighbor_weights(a)[b], self.p);
        self.g.degree(a) as f64 * w_ab + self.neighbor_weight(a)
    }

    /// `Ŵ₃(c|a,b) = w_ac^p + w_ab^p` for neighbour slots `b` and `c`.
    pub fn w3(&self, a: NodeId, b: usize, c: usize) -> f64 {
        let w = self.g.neighbor_weights(a);
        pow(w[c], self.p) + pow(w[b], self.p)
    }

    fn draw_neighbor(&self, a: NodeId, weighted: bool, rng: &mut ChaCha8Rng) -> usize {
        if weighted {
            draw_cdf(self.table(a), rng)
        } else {
            rng.random_range(0..self.g.degree(a))
        }
    }

    /// One iteration; a repeated neighbour (`b = c`) is a miss.
    pub fn sample(&self, rng: &mut ChaCha8Rng, mean: PMean, out: &mut Vec<Triangle>) {
        if !(self.z1() > 0.0) {
            return;
        }
        let a = draw_cdf(&self.node_cdf, rng) as NodeId;
        let d = self.g.degree(a) as f64;
        let big_d = self.neighbor_weight(a);
        // Ŵ₂ splits evenly: Σ_b d_a w_ab^p = Σ_b D(a) = d_a D(a).
        let b = self.draw_neighbor(a, rng.random::<bool>(), rng);
        let w_ab = self.g.neighbor_weights(a)[b];
        // Ŵ₃ masses: Σ_c w_ac^p = D(a) against Σ_c w_ab^p = d_a w_ab^p.
        let weighted = rng.random::<f64>() * (big_d + d * pow(w_ab, self.p)) < big_d;
        let c = self.draw_neighbor(a, weighted, rng);
        if b == c {
            return;
        }
        let nbrs = self.g.neighbors(a);
        out.extend(triangle(self.g, a, nbrs[b], nbrs[c], w_ab, mean));
    }
}

struct WedgeSampler<'a, 'g> {
    index: &'a WedgeSamplingIndex<'g>,
    mean: PMean,
}

impl Sampler for WedgeSampler<'_, '_> {
    type Item = Triangle;

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Triangle>) {
        self.index.sample(rng, self.mean, out);
    }
}

impl WedgeSamplingIndex<'_> {
    /// Runs the sampler; `cfg.p` must match the index.
    pub fn topk(&self, cfg: &SamplerConfig) -> Result<TopKResult> {
        prepare(cfg)?;
        check_exponent(self.p, cfg)?;
        run_sampler(&WedgeSampler { index: self, mean: cfg.mean() }, cfg)
    }
}

pub fn wedge_sample_topk(g: &WeightedGraph, cfg: &SamplerConfig) -> Result<TopKResult> {
    prepare(cfg)?;
    WedgeSamplingIndex::new(g, cfg.p).topk(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, g1, star};
    use crate::sampling::{worker_rng, Budget};

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * a.abs().max(b.abs())
    }

    #[test]
    fn normalizer_identities() {
        for p in [0.5, 1.0, 2.5] {
            let g = complete(6, |u, v| 0.3 + f64::from((u * 5 + v * 3) % 7));
            let index = WedgeSamplingIndex::new(&g, p);
            let z1: f64 = (0..6).map(|v| 2.0 * g.degree(v) as f64 * index.neighbor_weight(v)).sum();
            assert!(close(index.z1(), z1));
            for a in 0..6 {
                let d = g.degree(a);
                assert!(close((0..d).map(|b| index.w2(a, b)).sum(), index.w1(a)));
                for b in 0..d {
                    assert!(close((0..d).map(|c| index.w3(a, b, c)).sum(), index.w2(a, b)));
                }
            }
        }
    }

    #[test]
    fn k3_hit_rate_is_one_half() {
        let g = complete(3, |_, _| 1.0);
        let index = WedgeSamplingIndex::new(&g, 1.0);
        let mut rng = worker_rng(3, 0);
        let mut buf = Vec::new();
        let trials = 100_000;
        for _ in 0..trials {
            index.sample(&mut rng, PMean::Finite(1.0), &mut buf);
        }
        assert!((buf.len() as f64 / trials as f64 - 0.5).abs() < 0.01);
    }

    #[test]
    fn star_never_hits() {
        let cfg = SamplerConfig::new(1.0, Budget::Iterations(500), 2);
        assert!(wedge_sample_topk(&star(4), &cfg).unwrap().is_empty());
    }

    #[test]
    fn deterministic_given_seed_and_threads() {
        let g = g1();
        let cfg = SamplerConfig::new(1.0, Budget::Iterations(50), 3).with_seed(9).with_threads(3);
        assert_eq!(wedge_sample_topk(&g, &cfg).unwrap(), wedge_sample_topk(&g, &cfg).unwrap());
    }
}
