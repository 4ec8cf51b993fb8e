//! Exact enumeration: the degree-ordered triangle lister used as the
//! accuracy oracle, and k-clique listing over a degeneracy orientation.

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};
use crate::topk::{Clique, TopKCollector, TopKResult};
use crate::weighting::{mean_of_sorted, triangle_mean, PMean, Triangle};

/// Supported clique sizes for exact listing and clique sampling.
pub const MIN_CLIQUE: usize = 3;
pub const MAX_CLIQUE: usize = 5;

/// Out-neighbors under an acyclic orientation, kept sorted by node id.
pub(crate) struct Oriented {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
}

impl Oriented {
    /// Keeps edge `u -> v` when `keep(u, v)`; `keep` must pick exactly one
    /// direction per edge.
    fn build(g: &WeightedGraph, keep: impl Fn(NodeId, NodeId) -> bool) -> Self {
        let n = g.node_count();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(g.edge_count());
        let mut weights = Vec::with_capacity(g.edge_count());
        offsets.push(0);
        for u in 0..n as NodeId {
            for (&v, &w) in g.neighbors(u).iter().zip(g.neighbor_weights(u)) {
                if keep(u, v) {
                    targets.push(v);
                    weights.push(w);
                }
            }
            offsets.push(targets.len());
        }
        Oriented { offsets, targets, weights }
    }

    #[inline]
    fn out(&self, u: NodeId) -> (&[NodeId], &[f64]) {
        let range = self.offsets[u as usize]..self.offsets[u as usize + 1];
        (&self.targets[range.clone()], &self.weights[range])
    }
}

/// Lists every triangle once, at its highest-ranked vertex, where rank is
/// degree with ties broken by node id, and keeps the `k` heaviest.
pub fn brute_force_topk(g: &WeightedGraph, p: PMean, k: usize) -> Result<TopKResult> {
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let rank = |u: NodeId| (g.degree(u), u);
    let dag = Oriented::build(g, |u, v| rank(v) < rank(u));

    // Visiting order only affects speed: hubs first is cache-friendly, and
    // skipping sinks keeps sparse subgraphs of large graphs cheap.
    let mut order: Vec<NodeId> = (0..g.node_count() as NodeId).filter(|&u| !dag.out(u).0.is_empty()).collect();
    order.sort_unstable_by_key(|&u| std::cmp::Reverse(rank(u)));

    let mut top = TopKCollector::new(k);
    for &u in &order {
        let (out_u, w_u) = dag.out(u);
        for (i, &v) in out_u.iter().enumerate() {
            let w_uv = w_u[i];
            let (out_v, w_v) = dag.out(v);
            // Merge-intersect two id-sorted lists.
            let (mut a, mut b) = (0, 0);
            while a < out_u.len() && b < out_v.len() {
                match out_u[a].cmp(&out_v[b]) {
                    std::cmp::Ordering::Less => a += 1,
                    std::cmp::Ordering::Greater => b += 1,
                    std::cmp::Ordering::Equal => {
                        let x = out_u[a];
                        let weight = triangle_mean([w_uv, w_u[a], w_v[b]], p);
                        let mut nodes = [u, v, x];
                        nodes.sort_unstable();
                        top.offer(Triangle { a: nodes[0], b: nodes[1], c: nodes[2], weight });
                        a += 1;
                        b += 1;
                    }
                }
            }
        }
    }
    Ok(top.into_result(true, None))
}

/// Vertex order from repeatedly removing a minimum-degree vertex; returns
/// the position of every node.
pub fn degeneracy_order(g: &WeightedGraph) -> Vec<usize> {
    let n = g.node_count();
    let max_deg = (0..n as NodeId).map(|u| g.degree(u)).max().unwrap_or(0);
    let mut degree: Vec<usize> = (0..n as NodeId).map(|u| g.degree(u)).collect();
    let mut buckets: Vec<Vec<NodeId>> = vec![Vec::new(); max_deg + 1];
    for u in 0..n as NodeId {
        buckets[degree[u as usize]].push(u);
    }
    let mut position = vec![usize::MAX; n];
    let mut cursor = 0;
    for next in 0..n {
        // Stale bucket entries are skipped lazily.
        let u = loop {
            while buckets[cursor].is_empty() {
                cursor += 1;
            }
            let u = buckets[cursor].pop().expect("non-empty");
            if position[u as usize] == usize::MAX && degree[u as usize] == cursor {
                break u;
            }
        };
        position[u as usize] = next;
        for &v in g.neighbors(u) {
            let v = v as usize;
            if position[v] == usize::MAX {
                degree[v] -= 1;
                buckets[degree[v]].push(v as NodeId);
                cursor = cursor.min(degree[v]);
            }
        }
    }
    position
}

/// p-mean over every edge among `nodes`, or `None` if one is missing.
pub(crate) fn clique_weight(g: &WeightedGraph, nodes: &[NodeId], p: PMean) -> Option<f64> {
    let mut buf = [0.0f64; MAX_CLIQUE * (MAX_CLIQUE - 1) / 2];
    let mut len = 0;
    for (i, &x) in nodes.iter().enumerate() {
        for &y in &nodes[i + 1..] {
            buf[len] = g.weight(x, y)?;
            len += 1;
        }
    }
    let weights = &mut buf[..len];
    weights.sort_unstable_by(f64::total_cmp);
    Some(mean_of_sorted(weights, p))
}

pub(crate) fn check_clique_size(size: usize) -> Result<()> {
    if (MIN_CLIQUE..=MAX_CLIQUE).contains(&size) {
        Ok(())
    } else {
        Err(Error::param(format!(
            "clique size must be between {MIN_CLIQUE} and {MAX_CLIQUE}, got {size}"
        )))
    }
}

/// Exact top-k cliques of `size` nodes, weighted by the p-mean of all their
/// edges. Each clique is reached once from its earliest vertex in the
/// degeneracy order, following out-edges towards later vertices.
pub fn enumerate_cliques(
    g: &WeightedGraph,
    size: usize,
    p: PMean,
    k: usize,
) -> Result<TopKResult<Clique>> {
    check_clique_size(size)?;
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let position = degeneracy_order(g);
    let dag = Oriented::build(g, |u, v| position[u as usize] < position[v as usize]);

    let mut top = TopKCollector::new(k);
    let mut stack = Vec::with_capacity(size);
    for u in 0..g.node_count() as NodeId {
        stack.push(u);
        extend(g, &dag, dag.out(u).0, &mut stack, size, p, &mut top);
        stack.pop();
    }
    Ok(top.into_result(true, None))
}

fn extend(
    g: &WeightedGraph,
    dag: &Oriented,
    candidates: &[NodeId],
    stack: &mut Vec<NodeId>,
    size: usize,
    p: PMean,
    top: &mut TopKCollector<Clique>,
) {
    if stack.len() == size {
        let mut nodes = stack.clone();
        nodes.sort_unstable();
        let weight = clique_weight(g, &nodes, p).expect("members are pairwise adjacent");
        top.offer(Clique { nodes, weight });
        return;
    }
    if candidates.len() < size - stack.len() {
        return;
    }
    for &v in candidates {
        let out = dag.out(v).0;
        let next: Vec<NodeId> = intersect(candidates, out);
        stack.push(v);
        extend(g, dag, &next, stack, size, p, top);
        stack.pop();
    }
}

fn intersect(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
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
