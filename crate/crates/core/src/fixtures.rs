//! Small hand-built graphs shared by tests, benches and examples.

use crate::graph::{Aggregation, NodeId, WeightedGraph};

/// Eight edges on original ids 1..=5 with four triangles:
/// {1,2,3} (10, 8, 6), {1,2,4} (10, 5, 1), {1,3,5} (8, 4, 2), {1,4,5} (5, 4, 3).
pub const G1_EDGE_LIST: &str = "\
1 2 10
1 3 8
2 3 6
1 4 5
2 4 1
1 5 4
4 5 3
3 5 2
";

pub fn g1() -> WeightedGraph {
    crate::graph::load_edge_list(G1_EDGE_LIST.as_bytes(), Aggregation::Sum).expect("valid fixture")
}

/// Complete graph on `n` nodes; `weight(u, v)` is called with `u < v`.
pub fn complete(n: NodeId, weight: impl Fn(NodeId, NodeId) -> f64) -> WeightedGraph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    let edges: Vec<_> = edges.map(|(u, v)| (u, v, weight(u, v))).collect();
    WeightedGraph::from_edges(n as usize, edges, Aggregation::Sum).expect("valid fixture")
}

/// Star with `leaves` unit-weight spokes around node 0.
pub fn star(leaves: NodeId) -> WeightedGraph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v, 1.0)).collect();
    WeightedGraph::from_edges(leaves as usize + 1, edges, Aggregation::Sum).expect("valid fixture")
}

/// Path 0 - 1 - ... - (n-1) with unit weights.
pub fn path(n: NodeId) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v, 1.0)).collect();
    WeightedGraph::from_edges(n as usize, edges, Aggregation::Sum).expect("valid fixture")
}

/// Erdős–Rényi graph `G(n, prob)` whose weights come from `weight`.
pub fn erdos_renyi(
    n: NodeId,
    prob: f64,
    seed: u64,
    mut weight: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> f64,
) -> WeightedGraph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < prob {
                edges.push((u, v, weight(&mut rng)));
            }
        }
    }
    WeightedGraph::from_edges(n as usize, edges, Aggregation::Sum).expect("valid fixture")
}

/// Independent reference computations: cubic triangle listing and exact
/// per-iteration outcome distributions of the samplers, obtained by
/// enumerating every branch of their defining formulas.
pub mod oracle {
    use std::collections::BTreeMap;

    use crate::graph::{NodeId, WeightedGraph};
    use crate::topk::rank_cmp;
    use crate::weighting::{PMean, Triangle};

    /// Every triangle by checking all node triples, best first.
    pub fn naive_triangles(g: &WeightedGraph, p: PMean) -> Vec<Triangle> {
        let n = g.node_count() as NodeId;
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let Some(w_ab) = g.weight(a, b) else { continue };
                for c in b + 1..n {
                    if let (Some(w_ac), Some(w_bc)) = (g.weight(a, c), g.weight(b, c)) {
                        out.push(Triangle::new(a, b, c, w_ab, w_ac, w_bc, p));
                    }
                }
            }
        }
        out.sort_by(rank_cmp);
        out
    }

    /// `Σ w^p` over the three edges of each triangle.
    pub fn triangle_masses(g: &WeightedGraph, p: f64) -> BTreeMap<[NodeId; 3], f64> {
        naive_triangles(g, PMean::Finite(1.0))
            .iter()
            .map(|t| {
                let [a, b, c] = t.nodes();
                let w = |x, y| g.weight(x, y).unwrap().powf(p);
                (t.nodes(), w(a, b) + w(a, c) + w(b, c))
            })
            .collect()
    }

    fn w(g: &WeightedGraph, a: NodeId, b: NodeId, p: f64) -> f64 {
        g.weight(a, b).expect("adjacent").powf(p)
    }

    fn big_d(g: &WeightedGraph, a: NodeId, p: f64) -> f64 {
        g.neighbors(a).iter().map(|&b| w(g, a, b, p)).sum()
    }

    /// Probability of drawing each edge (by id) in edge sampling.
    pub fn edge_draw_probabilities(g: &WeightedGraph, p: f64) -> Vec<f64> {
        let z: f64 = g.edges().iter().map(|e| e.w.powf(p)).sum();
        g.edges().iter().map(|e| e.w.powf(p) / z).collect()
    }

    /// Probability that one wedge-sampling iteration returns each triangle.
    pub fn wedge_outcomes(g: &WeightedGraph, p: f64) -> BTreeMap<[NodeId; 3], f64> {
        let n = g.node_count() as NodeId;
        let w1 = |a: NodeId| 2.0 * g.degree(a) as f64 * big_d(g, a, p);
        let z1: f64 = (0..n).map(w1).sum();
        let mut out = BTreeMap::new();
        for a in 0..n {
            let pa = w1(a) / z1;
            let nbrs = g.neighbors(a);
            let w2 = |b: NodeId| g.degree(a) as f64 * w(g, a, b, p) + big_d(g, a, p);
            let z2: f64 = nbrs.iter().map(|&b| w2(b)).sum();
            for &b in nbrs {
                let w3 = |c: NodeId| w(g, a, c, p) + w(g, a, b, p);
                let z3: f64 = nbrs.iter().map(|&c| w3(c)).sum();
                for &c in nbrs {
                    if c != b && g.weight(b, c).is_some() {
                        let mut key = [a, b, c];
                        key.sort_unstable();
                        *out.entry(key).or_insert(0.0) += pa * w2(b) / z2 * w3(c) / z3;
                    }
                }
            }
        }
        out
    }

    /// Probability that one path-sampling iteration returns each triangle,
    /// with every edge oriented as `(u, v)`, `u < v`.
    pub fn path_outcomes(g: &WeightedGraph, p: f64) -> BTreeMap<[NodeId; 3], f64> {
        let dt = |v: NodeId| g.degree(v) as f64 - 1.0;
        let red = |u: NodeId, v: NodeId| big_d(g, v, p) - w(g, u, v, p);
        let w1 = |a: NodeId, b: NodeId| dt(a) * dt(b) * w(g, a, b, p) + dt(a) * red(a, b) + dt(b) * red(b, a);
        let z1: f64 = g.edges().iter().map(|e| w1(e.u, e.v)).sum();
        let mut out = BTreeMap::new();
        for e in g.edges() {
            let (a, b) = (e.u, e.v);
            let pe = w1(a, b) / z1;
            if pe == 0.0 {
                continue;
            }
            let ca: Vec<NodeId> = g.neighbors(a).iter().copied().filter(|&x| x != b).collect();
            let cb: Vec<NodeId> = g.neighbors(b).iter().copied().filter(|&x| x != a).collect();
            let w2 = |c: NodeId| dt(b) * (w(g, a, c, p) + w(g, a, b, p)) + red(a, b);
            let z2: f64 = ca.iter().map(|&c| w2(c)).sum();
            for &c in &ca {
                let w3 = |c2: NodeId| w(g, a, c, p) + w(g, a, b, p) + w(g, b, c2, p);
                let z3: f64 = cb.iter().map(|&c2| w3(c2)).sum();
                if cb.contains(&c) {
                    let mut key = [a, b, c];
                    key.sort_unstable();
                    *out.entry(key).or_insert(0.0) += pe * w2(c) / z2 * w3(c) / z3;
                }
            }
        }
        out
    }
}
