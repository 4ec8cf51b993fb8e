//! Clique retrieval by edge sampling: draw an edge by `w^p` and list every
//! clique of the requested size that contains it.

use rand_chacha::ChaCha8Rng;

use super::{check_exponent, prepare, run_sampler, EdgeSamplingIndex, Sampler, SamplerConfig};
use crate::enumerate::{check_clique_size, clique_weight};
use crate::error::Result;
use crate::graph::{NodeId, WeightedGraph};
use crate::topk::{Clique, TopKResult};
use crate::weighting::PMean;

struct CliqueSampler<'a, 'g> {
    index: &'a EdgeSamplingIndex<'g>,
    size: usize,
    mean: PMean,
}

impl Sampler for CliqueSampler<'_, '_> {
    type Item = Clique;

    fn sample(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Clique>) {
        let g = self.index.graph();
        if g.edge_count() == 0 {
            return;
        }
        let e = g.edge(self.index.draw_edge(rng));
        let common = common_neighbors(g.neighbors(e.u), g.neighbors(e.v));
        let mut stack = vec![e.u, e.v];
        grow(g, &common, &mut stack, self.size, self.mean, out);
    }
}

fn common_neighbors(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Extends `stack` with increasing members of `candidates`, all pairwise
/// adjacent, until it holds `size` nodes.
fn grow(g: &WeightedGraph, candidates: &[NodeId], stack: &mut Vec<NodeId>, size: usize, p: PMean, out: &mut Vec<Clique>) {
    if stack.len() == size {
        let mut nodes = stack.clone();
        nodes.sort_unstable();
        let weight = clique_weight(g, &nodes, p).expect("members are pairwise adjacent");
        out.push(Clique { nodes, weight });
        return;
    }
    for (i, &x) in candidates.iter().enumerate() {
        if candidates.len() - i < size - stack.len() {
            break;
        }
        let rest: Vec<NodeId> = candidates[i + 1..].iter().copied().filter(|&y| g.edge_id(x, y).is_some()).collect();
        stack.push(x);
        grow(g, &rest, stack, size, p, out);
        stack.pop();
    }
}

/// Top-k cliques of `size` nodes found by edge sampling, weighted by the
/// p-mean of all their edges.
pub fn edge_sample_cliques(g: &WeightedGraph, cfg: &SamplerConfig, size: usize) -> Result<TopKResult<Clique>> {
    check_clique_size(size)?;
    prepare(cfg)?;
    EdgeSamplingIndex::new(g, cfg.p, cfg.threads).cliques(cfg, size)
}

impl EdgeSamplingIndex<'_> {
    /// Clique sampler over this index; `cfg.p` must match the index.
    pub fn cliques(&self, cfg: &SamplerConfig, size: usize) -> Result<TopKResult<Clique>> {
        check_clique_size(size)?;
        prepare(cfg)?;
        check_exponent(self.exponent(), cfg)?;
        run_sampler(&CliqueSampler { index: self, size, mean: cfg.mean() }, cfg)
    }
}
