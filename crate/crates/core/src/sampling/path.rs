//! Path sampling: draw an edge `(a, b)`, then `c ∈ N(a) \ b` and
//! `c' ∈ N(b) \ a`; the length-three path closes into a triangle when
//! `c = c'`.
//!
//! With `d̃_v = d_v - 1` and `D̃_u(v) = D(v) - w_uv^p` the draws follow
//! `Ŵ₁(a,b) = d̃_a d̃_b w_ab^p + d̃_a D̃_a(b) + d̃_b D̃_b(a)`,
//! `Ŵ₂(c|a,b) = d̃_b (w_ac^p + w_ab^p) + D̃_a(b)` and
//! `Ŵ₃(c'|a,b,c) = w_ac^p + w_ab^p + w_bc'^p`, each realised as a mixture of
//! a `w^p`-proportional and a uniform neighbour draw.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    check_exponent, 
    draw_cdf, draw_cdf_excluding, neighbor_prefix_sums, neighbor_slot, prepare, run_sampler, uniform_excluding,
    Sampler, SamplerConfig,
};
use crate::error::Result;
use crate::graph::{EdgeId, NodeId, WeightedGraph};
use crate::topk::TopKResult;
use crate::weighting::{pow, PMean, Triangle};

pub struct PathSamplingIndex<'g> {
    g: &'g WeightedGraph,
    prefix: Vec<f64>,
    edge_cdf: Vec<f64>,
    p: f64,
}

impl<'g> PathSamplingIndex<'g> {
    pub fn new(g: &'g WeightedGraph, p: f64) -> Self {
        let prefix = neighbor_prefix_sums(g, p);
        let mut index = PathSamplingIndex { g, prefix, edge_cdf: Vec::with_capacity(g.edge_count()), p };
        let mut acc = 0.0;
        for id in 0..g.edge_count() as EdgeId {
            acc += index.w1(id);
            index.edge_cdf.push(acc);
        }
        index
    }

    fn table(&self, a: NodeId) -> &[f64] {
        let start = self.g.adjacency_offset(a);
        &self.prefix[start..start + self.g.degree(a)]
    }

    /// `D(v) = Σ_{x∈N(v)} w_vx^p`.
    pub fn neighbor_weight(&self, v: NodeId) -> f64 {
        self.table(v).last().copied().unwrap_or(0.0)
    }

    /// `D̃_u(v) = D(v) - w_uv^p`; exactly 0 when `u` is `v`'s only neighbour.
    pub fn reduced_weight(&self, u: NodeId, v: NodeId) -> f64 {
        if self.g.degree(v) < 2 {
            return 0.0;
        }
        let w = self.g.weight(u, v).expect("adjacent nodes");
        (self.neighbor_weight(v) - pow(w, self.p)).max(0.0)
    }

    /// `Z1 = Σ_e Ŵ₁(e)`.
    pub fn z1(&self) -> f64 {
        self.edge_cdf.last().copied().unwrap_or(0.0)
    }

    /// `Ŵ₁(a,b)` for edge `id` with `a < b`.
    pub fn w1(&self, id: EdgeId) -> f64 {
        let e = self.g.edge(id);
        let (da, db) = (self.g.degree(e.u), self.g.degree(e.v));
        if da < 2 || db < 2 {
            return 0.0;
        }
        let (da, db) = ((da - 1) as f64, (db - 1) as f64);
        da * db * pow(e.w, self.p) + da * self.reduced_weight(e.u, e.v) + db * self.reduced_weight(e.v, e.u)
    }

    /// `Ŵ₂(c|a,b)`.
    pub fn w2(&self, a: NodeId, b: NodeId, c: NodeId) -> f64 {
        let db = (self.g.degree(b) - 1) as f64;
        let w = |x, y| pow(self.g.weight(x, y).expect("adjacent nodes"), self.p);
        db * (w(a, c) + w(a, b)) + self.reduced_weight(a, b)
    }

    /// `Ŵ₃(c'|a,b,c)`.
    pub fn w3(&self, a: NodeId, b: NodeId, c: NodeId, c2: NodeId) -> f64 {
        let w = |x, y| pow(self.g.weight(x, y).expect("adjacent nodes"), self.p);
        w(a, c) + w(a, b) + w(b, c2)
    }

    /// One iteration with `(a, b)` the drawn edge's canonical endpoints.
    pub fn sample(&self, rng: &mut ChaCha8Rng, mean: PMean, out: &mut Vec<Triangle>) {
        let z1 = self.z1();
        if !(z1 > 0.0) {
            return;
        }
        let id = draw_cdf(&self.edge_cdf, rng) as EdgeId;
        let e = self.g.edge(id);
        let (a, b) = (e.u, e.v);
        let w1 = self.w1(id);
        let (da, db) = (self.g.degree(a), self.g.degree(b));
        let (slot_b, slot_a) = (neighbor_slot(self.g, a, b), neighbor_slot(self.g, b, a));
        let wp_ab = pow(e.w, self.p);

        // Ŵ₂ masses: d̃_b D̃_b(a) on the weighted part, the rest uniform.
        let weighted = rng.random::<f64>() * w1 < (db - 1) as f64 * self.reduced_weight(b, a);
        let c = if weighted {
            draw_cdf_excluding(self.table(a), slot_b, rng)
        } else {
            uniform_excluding(da, slot_b, rng)
        };
        let w_ac = self.g.neighbor_weights(a)[c];

        // Ŵ₃ masses: D̃_a(b) weighted against d̃_b (w_ac^p + w_ab^p) uniform.
        let tail = self.reduced_weight(a, b);
        let flat = (db - 1) as f64 * (pow(w_ac, self.p) + wp_ab);
        let weighted = rng.random::<f64>() * (tail + flat) < tail;
        let c2 = if weighted {
            draw_cdf_excluding(self.table(b), slot_a, rng)
        } else {
            uniform_excluding(db, slot_a, rng)
        };
        let x = self.g.neighbors(a)[c];
        if x == self.g.neighbors(b)[c2] {
            out.push(Triangle::new(a, b, x, e.w, w_ac, self.g.neighbor_weights(b)[c2], mean));
        }
    }
}

struct PathSampler<'a, 'g> {
    index: &'a PathSamplingIndex<'g>,
    mean: PMean,
}

impl Sampler for PathSampler<'_, '_> {
    type Item = Triangle;

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Triangle>) {
        self.index.sample(rng, self.mean, out);
    }
}

impl PathSamplingIndex<'_> {
    /// Runs the sampler; `cfg.p` must match the index.
    pub fn topk(&self, cfg: &SamplerConfig) -> Result<TopKResult> {
        prepare(cfg)?;
        check_exponent(self.p, cfg)?;
        run_sampler(&PathSampler { index: self, mean: cfg.mean() }, cfg)
    }
}

pub fn path_sample_topk(g: &WeightedGraph, cfg: &SamplerConfig) -> Result<TopKResult> {
    prepare(cfg)?;
    PathSamplingIndex::new(g, cfg.p).topk(cfg)
}
