//! Edge sampling: draw an edge with probability `w^p / Z` and list every
//! triangle through it.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{check_exponent, draw_cdf, prepare, run_sampler, Sampler, SamplerConfig};
use crate::error::Result;
use crate::graph::{sort_edges, EdgeId, NodeId, SortedEdgeList, WeightedGraph};
use crate::topk::TopKResult;
use crate::weighting::{pow, PMean, Triangle};

/// Two-stage edge draw: first a distinct weight with probability
/// `w^p · |bucket| / Z`, then a uniform edge of that weight.
pub struct EdgeSamplingIndex<'g> {
    g: &'g WeightedGraph,
    sorted: SortedEdgeList,
    /// First sorted position of each equal-weight bucket, plus `m`.
    bucket_start: Vec<usize>,
    bucket_cdf: Vec<f64>,
    p: f64,
}

impl<'g> EdgeSamplingIndex<'g> {
    pub fn new(g: &'g WeightedGraph, p: f64, threads: usize) -> Self {
        let sorted = sort_edges(g, threads);
        let mut bucket_start = Vec::new();
        let mut bucket_cdf = Vec::new();
        let mut acc = 0.0;
        let edges = sorted.edges();
        let mut i = 0;
        while i < edges.len() {
            let w = edges[i].w;
            let end = i + edges[i..].iter().position(|e| e.w != w).unwrap_or(edges.len() - i);
            bucket_start.push(i);
            acc += pow(w, p) * (end - i) as f64;
            bucket_cdf.push(acc);
            i = end;
        }
        bucket_start.push(edges.len());
        EdgeSamplingIndex { g, sorted, bucket_start, bucket_cdf, p }
    }

    pub fn graph(&self) -> &'g WeightedGraph {
        self.g
    }

    pub fn exponent(&self) -> f64 {
        self.p
    }

    /// `Σ_e w_e^p`.
    pub fn z(&self) -> f64 {
        self.bucket_cdf.last().copied().unwrap_or(0.0)
    }

    pub fn bucket_count(&self) -> usize {
        self.bucket_cdf.len()
    }

    /// Cumulative bucket masses; the last value is [`Self::z`].
    pub fn bucket_cdf(&self) -> &[f64] {
        &self.bucket_cdf
    }

    /// Sizes of the equal-weight buckets in decreasing weight order.
    pub fn bucket_sizes(&self) -> Vec<usize> {
        self.bucket_start.windows(2).map(|s| s[1] - s[0]).collect()
    }

    pub fn draw_edge(&self, rng: &mut ChaCha8Rng) -> EdgeId {
        let b = draw_cdf(&self.bucket_cdf, rng);
        let (lo, hi) = (self.bucket_start[b], self.bucket_start[b + 1]);
        self.sorted.ids()[rng.random_range(lo..hi)]
    }

    pub fn edge_probability(&self, id: EdgeId) -> f64 {
        pow(self.g.edge(id).w, self.p) / self.z()
    }
}

/// Every triangle containing edge `(u, v)`.
pub(crate) fn triangles_through(g: &WeightedGraph, u: NodeId, v: NodeId, w_uv: f64, p: PMean, out: &mut Vec<Triangle>) {
    let (nu, nv) = (g.neighbors(u), g.neighbors(v));
    let (wu, wv) = (g.neighbor_weights(u), g.neighbor_weights(v));
    let (mut a, mut b) = (0, 0);
    while a < nu.len() && b < nv.len() {
        match nu[a].cmp(&nv[b]) {
            std::cmp::Ordering::Less => a += 1,
            std::cmp::Ordering::Greater => b += 1,
            std::cmp::Ordering::Equal => {
                out.push(Triangle::new(u, v, nu[a], w_uv, wu[a], wv[b], p));
                a += 1;
                b += 1;
            }
        }
    }
}

struct EdgeSampler<'a, 'g> {
    index: &'a EdgeSamplingIndex<'g>,
    mean: PMean,
}

impl Sampler for EdgeSampler<'_, '_> {
    type Item = Triangle;

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Triangle>) {
        if self.index.bucket_cdf.is_empty() {
            return;
        }
        let e = self.index.g.edge(self.index.draw_edge(rng));
        triangles_through(self.index.g, e.u, e.v, e.w, self.mean, out);
    }
}

impl<'g> EdgeSamplingIndex<'g> {
    /// Triangles through one drawn edge.
    pub fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Triangle>) {
        EdgeSampler { index: self, mean: PMean::Finite(self.p) }.sample(rng, out)
    }

    /// Runs the sampler; `cfg.p` must match the index.
    pub fn topk(&self, cfg: &SamplerConfig) -> Result<TopKResult> {
        prepare(cfg)?;
        check_exponent(self.p, cfg)?;
        run_sampler(&EdgeSampler { index: self, mean: cfg.mean() }, cfg)
    }
}

pub fn edge_sample_topk(g: &WeightedGraph, cfg: &SamplerConfig) -> Result<TopKResult> {
    prepare(cfg)?;
    EdgeSamplingIndex::new(g, cfg.p, cfg.threads).topk(cfg)
}
