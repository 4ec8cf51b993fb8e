//! Deterministic top-k retrieval by heavy-light edge partitioning.
//!
//! Edges are walked in decreasing weight order and split by two pointers
//! `h <= l` into super-heavy `S = e[0..=h]`, heavy `H = e[h+1..=l]` and light
//! `L = e[l+1..]`. After every step all triangles with an edge in `S` or two
//! edges in `H` have been enumerated, so no missing triangle can exceed the
//! threshold `tau = w_h^p + 2 w_l^p`. The run stops once `k` enumerated
//! triangles rank strictly above that bound, which makes the result the exact
//! top-k under the canonical tie-break.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::str::FromStr;

use crate::enumerate::brute_force_topk;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, SortedEdgeList, WeightedEdge, WeightedGraph};
use crate::topk::{select_top, TopKResult};
use crate::weighting::{mean_of_sorted, pow, triangle_mean, PMean, Triangle};

/// Pointer separation used when no power-law fit is available.
pub const DEFAULT_ALPHA: f64 = 1.25;

/// Smoothing factor of the derivative estimates in the oblivious variant.
pub const DEFAULT_SMOOTHING: f64 = 0.3;

/// How the next pointer to advance is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AlphaParam {
    /// Advance `l` while `w_{l+1} > w_{h+1}^alpha`.
    Fixed(f64),
    /// Estimate the threshold derivatives on the fly.
    Auto,
}

impl AlphaParam {
    pub fn fixed(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 1.0 {
            Ok(AlphaParam::Fixed(alpha))
        } else {
            Err(Error::param(format!("alpha must be a finite number above 1, got {alpha}")))
        }
    }
}

impl Default for AlphaParam {
    fn default() -> Self {
        AlphaParam::Fixed(DEFAULT_ALPHA)
    }
}

impl FromStr for AlphaParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            return Ok(AlphaParam::Auto);
        }
        let alpha = s.parse().map_err(|_| Error::param(format!("invalid alpha `{s}`")))?;
        AlphaParam::fixed(alpha)
    }
}

/// Pointer separation `2 - p / (p - 1 + beta)` for edge weights whose tail
/// follows `P(X >= x) ~ x^(1 - beta)`.
pub fn alpha_from_powerlaw(p: f64, beta: f64) -> Result<f64> {
    if !(beta > 1.0) {
        return Err(Error::param(format!("beta must exceed 1, got {beta}")));
    }
    let denom = p - 1.0 + beta;
    if denom == 0.0 || !denom.is_finite() {
        return Err(Error::Domain(format!("p - 1 + beta must be finite and non-zero, got {denom}")));
    }
    Ok(2.0 - p / denom)
}

/// Partition class of an edge for the current pointers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeClass {
    SuperHeavy,
    Heavy,
    Light,
}

/// Class of the edge at sorted position `rank` given pointers `h` and `l`
/// (`-1` meaning empty).
pub fn classify(rank: usize, h: isize, l: isize) -> EdgeClass {
    let r = rank as isize;
    if r <= h {
        EdgeClass::SuperHeavy
    } else if r <= l {
        EdgeClass::Heavy
    } else {
        EdgeClass::Light
    }
}

/// Triangles through edge `e`, keeping a completing pair `(u, x)`, `(v, x)`
/// only when `filter(id_ux, id_vx)` holds.
pub fn incident_triangles_partitioned(
    g: &WeightedGraph,
    e: WeightedEdge,
    p: PMean,
    filter: impl Fn(EdgeId, EdgeId) -> bool,
) -> Vec<Triangle> {
    let (nu, nv) = (g.neighbors(e.u), g.neighbors(e.v));
    let (iu, iv) = (g.neighbor_edge_ids(e.u), g.neighbor_edge_ids(e.v));
    let mut out = Vec::new();
    let (mut a, mut b) = (0, 0);
    while a < nu.len() && b < nv.len() {
        match nu[a].cmp(&nv[b]) {
            Ordering::Less => a += 1,
            Ordering::Greater => b += 1,
            Ordering::Equal => {
                if filter(iu[a], iv[b]) {
                    let (wux, wvx) = (g.edge(iu[a]).w, g.edge(iv[b]).w);
                    out.push(Triangle::new(e.u, e.v, nu[a], e.w, wux, wvx, p));
                }
                a += 1;
                b += 1;
            }
        }
    }
    out
}

/// Keeps the heaviest `ceil(heavy_fraction * m)` edges and enumerates the
/// triangles they induce. Approximate unless `heavy_fraction` is 1.
pub fn static_heavy_light(
    g: &WeightedGraph,
    edges: &SortedEdgeList,
    p: PMean,
    k: usize,
    heavy_fraction: f64,
) -> Result<TopKResult> {
    if !(heavy_fraction > 0.0 && heavy_fraction <= 1.0) {
        return Err(Error::param(format!("heavy fraction must lie in (0, 1], got {heavy_fraction}")));
    }
    if k == 0 {
        return Err(Error::param("k must be at least 1"));
    }
    let m = edges.len();
    let count = ((heavy_fraction * m as f64 - 1e-9).ceil().max(0.0) as usize).min(m);
    let heavy = g.edge_subgraph(&edges.ids()[..count]);
    let mut result = brute_force_topk(&heavy, p, k)?;
    result.exact = false;
    Ok(result)
}

/// Exact top-k with pointer separation `alpha`.
pub fn dynamic_heavy_light(
    g: &WeightedGraph,
    edges: &SortedEdgeList,
    p: PMean,
    k: usize,
    alpha: AlphaParam,
) -> Result<TopKResult> {
    let mut run = HeavyLight::new(g, edges, p, k, alpha)?;
    run.run();
    Ok(run.into_result())
}

/// Exact top-k choosing pointer moves from running derivative estimates.
pub fn auto_heavy_light(
    g: &WeightedGraph,
    edges: &SortedEdgeList,
    p: PMean,
    k: usize,
) -> Result<TopKResult> {
    dynamic_heavy_light(g, edges, p, k, AlphaParam::Auto)
}

/// Smoothed estimates of the weight decrease per unit of enumeration work
/// for advancing each pointer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivativeEstimate {
    pub dwh: f64,
    pub dwl: f64,
    pub smoothing: f64,
    primed: bool,
}

impl DerivativeEstimate {
    pub fn new(smoothing: f64) -> Self {
        assert!(smoothing > 0.0 && smoothing <= 1.0, "smoothing must lie in (0, 1]");
        DerivativeEstimate { dwh: 0.0, dwl: 0.0, smoothing, primed: false }
    }

    fn update(&mut self, raw_h: f64, raw_l: f64) {
        if self.primed {
            let s = self.smoothing;
            self.dwh = s * raw_h + (1.0 - s) * self.dwh;
            self.dwl = s * raw_l + (1.0 - s) * self.dwl;
        } else {
            self.dwh = raw_h;
            self.dwl = raw_l;
            self.primed = true;
        }
    }
}

/// Average weight drop per edge when a pointer leaves the equal-weight run
/// containing `rank`: `(w - w_next) / run_length`, where `w_next` is the next
/// smaller weight (0 past the last run).
pub fn run_weight_step(edges: &SortedEdgeList, rank: usize) -> f64 {
    let w = edges.weight(rank);
    let all = edges.edges();
    let start = all[..rank].iter().rposition(|e| e.w != w).map_or(0, |i| i + 1);
    let end = all[rank..].iter().position(|e| e.w != w).map_or(all.len(), |i| rank + i);
    let next = if end < all.len() { all[end].w } else { 0.0 };
    (w - next) / (end - start) as f64
}

/// Which pointer a step advanced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Promotion {
    /// `e_{l+1}` moved from L to H.
    LightToHeavy,
    /// `e_{h+1}` moved from H to S.
    HeavyToSuper,
}

/// Snapshot of the partition pointers and threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HeavyLightState {
    /// Last super-heavy position, `-1` when S is empty.
    pub h: isize,
    /// Last heavy position, `-1` when S and H are empty.
    pub l: isize,
    /// `w_h^p + 2 w_l^p`, infinite while `h = -1`.
    pub tau: f64,
    pub found: usize,
    pub certified: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct HeavyLightStats {
    pub light_to_heavy: u64,
    pub heavy_to_super: u64,
    /// Adjacency entries scanned while enumerating.
    pub scanned: u64,
}

#[derive(Clone, Copy)]
struct Pending {
    weight: f64,
}

impl PartialEq for Pending {
    fn eq(&self, other: &Self) -> bool {
        self.weight.total_cmp(&other.weight) == Ordering::Equal
    }
}

impl Eq for Pending {}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight.total_cmp(&other.weight)
    }
}

/// Step-wise heavy-light run; [`dynamic_heavy_light`] drives it to the end.
pub struct HeavyLight<'a> {
    g: &'a WeightedGraph,
    edges: &'a SortedEdgeList,
    p: f64,
    mean: PMean,
    k: usize,
    policy: AlphaParam,
    /// Sorted position of every graph edge.
    rank: Vec<u32>,
    /// Per node `(neighbor, rank)` sorted by rank; the first `in_heavy[u]`
    /// entries are the node's edges in S ∪ H.
    by_rank: Vec<(NodeId, u32)>,
    in_heavy: Vec<u32>,
    h: isize,
    l: isize,
    tau: f64,
    threshold_weight: f64,
    found: HashSet<[NodeId; 3]>,
    triangles: Vec<Triangle>,
    pending: BinaryHeap<Pending>,
    certified: usize,
    /// Multiplier bringing the smallest weight to at least 1, so powers in
    /// the branch test do not cross over.
    scale: f64,
    derivative: DerivativeEstimate,
    stats: HeavyLightStats,
}

impl<'a> HeavyLight<'a> {
    pub fn new(
        g: &'a WeightedGraph,
        edges: &'a SortedEdgeList,
        p: PMean,
        k: usize,
        policy: AlphaParam,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::param("k must be at least 1"));
        }
        let PMean::Finite(exp) = p else {
            return Err(Error::param("heavy-light retrieval needs a finite p > 0"));
        };
        if !(exp > 0.0) {
            return Err(Error::param("heavy-light retrieval needs a finite p > 0"));
        }
        if let AlphaParam::Fixed(alpha) = policy {
            AlphaParam::fixed(alpha)?;
        }
        if edges.len() != g.edge_count() {
            return Err(Error::param("sorted edge list does not belong to this graph"));
        }

        let rank = edges.ranks();
        let n = g.node_count();
        let mut by_rank = vec![(0, 0); 2 * edges.len()];
        let mut cursor: Vec<usize> = (0..n as NodeId).map(|u| g.adjacency_offset(u)).collect();
        for (r, e) in edges.edges().iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                by_rank[cursor[a as usize]] = (b, r as u32);
                cursor[a as usize] += 1;
            }
        }
        let min_w = g.min_weight().unwrap_or(1.0);
        let scale = if min_w < 1.0 { min_w.recip() } else { 1.0 };

        Ok(HeavyLight {
            g,
            edges,
            p: exp,
            mean: p,
            k,
            policy,
            rank,
            by_rank,
            in_heavy: vec![0; n],
            h: -1,
            l: -1,
            tau: f64::INFINITY,
            threshold_weight: f64::INFINITY,
            found: HashSet::new(),
            triangles: Vec::new(),
            pending: BinaryHeap::new(),
            certified: 0,
            scale,
            derivative: DerivativeEstimate::new(DEFAULT_SMOOTHING),
            stats: HeavyLightStats::default(),
        })
    }

    pub fn state(&self) -> HeavyLightState {
        HeavyLightState {
            h: self.h,
            l: self.l,
            tau: self.tau,
            found: self.triangles.len(),
            certified: self.certified,
        }
    }

    pub fn stats(&self) -> HeavyLightStats {
        self.stats
    }

    pub fn derivative(&self) -> DerivativeEstimate {
        self.derivative
    }

    pub fn found(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn contains(&self, nodes: [NodeId; 3]) -> bool {
        self.found.contains(&nodes)
    }

    /// Class of graph edge `id` under the current pointers.
    pub fn class_of(&self, id: EdgeId) -> EdgeClass {
        classify(self.rank[id as usize] as usize, self.h, self.l)
    }

    /// Every remaining triangle has fewer than two edges in S ∪ H, so an
    /// empty L means everything has been enumerated.
    pub fn is_done(&self) -> bool {
        self.certified >= self.k || self.l + 1 >= self.edges.len() as isize
    }

    pub fn run(&mut self) {
        while self.step().is_some() {}
    }

    /// Advances one pointer and enumerates the triangles it uncovers.
    pub fn step(&mut self) -> Option<Promotion> {
        if self.is_done() {
            return None;
        }
        let promote_light = self.h + 1 > self.l || self.prefer_light();
        let promotion = if promote_light {
            self.promote_light();
            Promotion::LightToHeavy
        } else {
            self.promote_heavy();
            Promotion::HeavyToSuper
        };
        self.update_threshold();
        Some(promotion)
    }

    fn endpoints_degree(&self, rank: usize, heavy_side: bool) -> f64 {
        let e = self.edges.edges()[rank];
        [e.u, e.v]
            .iter()
            .map(|&x| {
                let heavy = self.in_heavy[x as usize] as usize;
                if heavy_side {
                    heavy
                } else {
                    self.g.degree(x) - heavy
                }
            })
            .sum::<usize>() as f64
    }

    /// Both pointers can move here: `h + 1 <= l` and `l + 1 < m`.
    fn prefer_light(&mut self) -> bool {
        let next_h = (self.h + 1) as usize;
        let next_l = (self.l + 1) as usize;
        let wh = self.edges.weight(next_h);
        let wl = self.edges.weight(next_l);
        match self.policy {
            AlphaParam::Fixed(alpha) => wl * self.scale > (wh * self.scale).powf(alpha),
            AlphaParam::Auto => {
                // Cost of moving h is the L-degree of its endpoints, cost of
                // moving l the (S ∪ H)-degree; +1 keeps isolated cases finite.
                let raw_h = run_weight_step(self.edges, next_h) / (1.0 + self.endpoints_degree(next_h, false));
                let raw_l = run_weight_step(self.edges, next_l) / (1.0 + self.endpoints_degree(next_l, true));
                self.derivative.update(raw_h, raw_l);
                let gain_h = wh.powf(self.p - 1.0) * self.derivative.dwh;
                let gain_l = 2.0 * wl.powf(self.p - 1.0) * self.derivative.dwl;
                gain_l >= gain_h
            }
        }
    }

    #[inline]
    fn edge_rank(&self, a: NodeId, b: NodeId) -> Option<usize> {
        self.g.edge_id(a, b).map(|id| self.rank[id as usize] as usize)
    }

    fn record(&mut self, x: NodeId, y: NodeId, z: NodeId, ranks: [usize; 3]) {
        let mut nodes = [x, y, z];
        nodes.sort_unstable();
        if !self.found.insert(nodes) {
            return;
        }
        let w = ranks.map(|r| self.edges.weight(r));
        let weight = triangle_mean(w, self.mean);
        self.triangles.push(Triangle { a: nodes[0], b: nodes[1], c: nodes[2], weight });
        self.pending.push(Pending { weight });
    }

    fn heavy_prefix(&self, u: NodeId) -> &[(NodeId, u32)] {
        let start = self.g.adjacency_offset(u);
        &self.by_rank[start..start + self.in_heavy[u as usize] as usize]
    }

    fn light_suffix(&self, u: NodeId) -> &[(NodeId, u32)] {
        let start = self.g.adjacency_offset(u);
        let end = start + self.g.degree(u);
        &self.by_rank[start + self.in_heavy[u as usize] as usize..end]
    }

    /// Moves `e_{l+1}` into H and enumerates its triangles with at least one
    /// other edge in S ∪ H.
    fn promote_light(&mut self) {
        let r = (self.l + 1) as usize;
        let e = self.edges.edges()[r];
        let mut hits = Vec::new();
        for &(x, r_ux) in self.heavy_prefix(e.u) {
            if let Some(r_vx) = self.edge_rank(e.v, x) {
                hits.push((x, r_ux as usize, r_vx));
            }
        }
        for &(x, r_vx) in self.heavy_prefix(e.v) {
            // Pairs with both edges heavy were covered from u's side.
            if let Some(r_ux) = self.edge_rank(e.u, x).filter(|&q| q > r) {
                hits.push((x, r_ux, r_vx as usize));
            }
        }
        self.stats.scanned += (self.in_heavy[e.u as usize] + self.in_heavy[e.v as usize]) as u64;
        for (x, r_ux, r_vx) in hits {
            self.record(e.u, e.v, x, [r, r_ux, r_vx]);
        }
        for x in [e.u, e.v] {
            let start = self.g.adjacency_offset(x);
            debug_assert_eq!(self.by_rank[start + self.in_heavy[x as usize] as usize].1 as usize, r);
            self.in_heavy[x as usize] += 1;
        }
        self.l += 1;
        self.stats.light_to_heavy += 1;
    }

    /// Moves `e_{h+1}` into S and enumerates its triangles whose other two
    /// edges are both light.
    fn promote_heavy(&mut self) {
        let r = (self.h + 1) as usize;
        let e = self.edges.edges()[r];
        let light = |x: NodeId| self.g.degree(x) - self.in_heavy[x as usize] as usize;
        let (a, b) = if light(e.u) <= light(e.v) { (e.u, e.v) } else { (e.v, e.u) };
        let l = self.l as usize;
        let mut hits = Vec::new();
        for &(x, r_ax) in self.light_suffix(a) {
            if let Some(r_bx) = self.edge_rank(b, x).filter(|&q| q > l) {
                hits.push((x, r_ax as usize, r_bx));
            }
        }
        self.stats.scanned += light(a) as u64;
        for (x, r_ax, r_bx) in hits {
            self.record(a, b, x, [r, r_ax, r_bx]);
        }
        self.h += 1;
        self.stats.heavy_to_super += 1;
    }

    fn update_threshold(&mut self) {
        if self.h >= 0 {
            let wh = self.edges.weight(self.h as usize);
            let wl = self.edges.weight(self.l as usize);
            let sorted = [wl, wl, wh];
            self.tau = sorted.iter().map(|&w| pow(w, self.p)).sum();
            // Same evaluation path as triangle weights, so the comparison
            // below is monotone in each edge weight.
            self.threshold_weight = mean_of_sorted(&sorted, self.mean);
        }
        while let Some(top) = self.pending.peek() {
            if top.weight > self.threshold_weight {
                self.pending.pop();
                self.certified += 1;
            } else {
                break;
            }
        }
    }

    pub fn into_result(self) -> TopKResult {
        TopKResult {
            k: self.k,
            items: select_top(self.triangles, self.k),
            exact: true,
            iterations: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::brute_force_topk;
    use crate::fixtures::{complete, g1, path};
    use crate::graph::{sort_edges, Aggregation};

    const P1: PMean = PMean::Finite(1.0);

    fn keys(r: &TopKResult) -> Vec<[NodeId; 3]> {
        r.keys()
    }

    #[test]
    fn alpha_formula() {
        assert_eq!(alpha_from_powerlaw(1.0, 2.0).unwrap(), 1.5);
        assert!((alpha_from_powerlaw(1.0, 1e12).unwrap() - 2.0).abs() < 1e-11);
        assert!(alpha_from_powerlaw(-1.0, 2.0).is_err());
        assert!(alpha_from_powerlaw(1.0, 0.5).is_err());
        assert_eq!(AlphaParam::default(), AlphaParam::Fixed(1.25));
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!("auto".parse::<AlphaParam>().unwrap(), AlphaParam::Auto);
        assert_eq!("1.5".parse::<AlphaParam>().unwrap(), AlphaParam::Fixed(1.5));
        assert!("1".parse::<AlphaParam>().is_err());
        assert!("inf".parse::<AlphaParam>().is_err());
    }

    #[test]
    fn static_on_g1() {
        let g = g1();
        let s = sort_edges(&g, 1);
        let r = static_heavy_light(&g, &s, P1, 1, 3.0 / 8.0).unwrap();
        assert!(!r.exact);
        let t = r.items[0];
        assert_eq!(t.nodes().map(|x| g.original_id(x)), [1, 2, 3]);
        assert_eq!(t.weight, 8.0);
        assert!(static_heavy_light(&g, &s, P1, 5, 1.0 / 8.0).unwrap().is_empty());
        let full = static_heavy_light(&g, &s, P1, 5, 1.0).unwrap();
        assert_eq!(full.items, brute_force_topk(&g, P1, 5).unwrap().items);
        for bad in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(static_heavy_light(&g, &s, P1, 1, bad).is_err());
        }
    }

    #[test]
    fn dynamic_on_g1() {
        let g = g1();
        let s = sort_edges(&g, 1);
        let mut run = HeavyLight::new(&g, &s, P1, 1, AlphaParam::Fixed(1.25)).unwrap();
        run.run();
        assert!(run.state().tau <= 24.0);
        let r = run.into_result();
        assert!(r.exact);
        assert_eq!(r.items[0].nodes().map(|x| g.original_id(x)), [1, 2, 3]);
        assert_eq!(r.items[0].weight, 8.0);
    }

    #[test]
    fn more_k_than_triangles() {
        let g = g1();
        let s = sort_edges(&g, 1);
        for alpha in [AlphaParam::Fixed(1.25), AlphaParam::Auto] {
            let r = dynamic_heavy_light(&g, &s, P1, 50, alpha).unwrap();
            assert_eq!(keys(&r), keys(&brute_force_topk(&g, P1, 50).unwrap()));
        }
    }

    #[test]
    fn triangle_free_inputs_terminate() {
        let g = path(3);
        let s = sort_edges(&g, 1);
        let r = dynamic_heavy_light(&g, &s, P1, 1, AlphaParam::default()).unwrap();
        assert!(r.is_empty());
        let empty = WeightedGraph::from_edges(3, Vec::new(), Aggregation::Sum).unwrap();
        let s = sort_edges(&empty, 1);
        assert!(auto_heavy_light(&empty, &s, P1, 3).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = g1();
        let s = sort_edges(&g, 1);
        assert!(dynamic_heavy_light(&g, &s, P1, 0, AlphaParam::default()).is_err());
        assert!(dynamic_heavy_light(&g, &s, PMean::Finite(0.0), 1, AlphaParam::default()).is_err());
        assert!(dynamic_heavy_light(&g, &s, PMean::Finite(-1.0), 1, AlphaParam::default()).is_err());
        assert!(dynamic_heavy_light(&g, &s, PMean::PosInf, 1, AlphaParam::default()).is_err());
        assert!(dynamic_heavy_light(&g, &s, P1, 1, AlphaParam::Fixed(0.9)).is_err());
    }

    #[test]
    fn incident_triangles_with_filters() {
        let g = g1();
        let id = |x| g.node_by_original(x).unwrap();
        let e = g.edge(g.edge_id(id(2), id(3)).unwrap());
        let allowed = [g.edge_id(id(1), id(2)).unwrap(), g.edge_id(id(1), id(3)).unwrap()];
        let hits = incident_triangles_partitioned(&g, e, P1, |a, b| allowed.contains(&a) && allowed.contains(&b));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].nodes().map(|x| g.original_id(x)), [1, 2, 3]);
        assert!(incident_triangles_partitioned(&g, e, P1, |_, _| false).is_empty());

        let k4 = complete(4, |_, _| 1.0);
        for e in k4.edges() {
            assert_eq!(incident_triangles_partitioned(&k4, *e, P1, |_, _| true).len(), 2);
        }
    }

    #[test]
    fn raw_derivative_step() {
        let g = WeightedGraph::from_edges(
            5,
            [(0, 1, 10.0), (1, 2, 10.0), (2, 3, 8.0), (3, 4, 5.0)],
            Aggregation::Sum,
        )
        .unwrap();
        let s = sort_edges(&g, 1);
        assert_eq!(run_weight_step(&s, 0), 1.0);
        assert_eq!(run_weight_step(&s, 1), 1.0);
        assert_eq!(run_weight_step(&s, 2), 3.0);
        assert_eq!(run_weight_step(&s, 3), 5.0);
    }

    #[test]
    fn constant_weights_stay_exact() {
        let g = complete(7, |_, _| 2.0);
        let s = sort_edges(&g, 1);
        for k in [1, 3, 35, 100] {
            let want = keys(&brute_force_topk(&g, P1, k).unwrap());
            for alpha in [AlphaParam::Fixed(1.25), AlphaParam::Auto] {
                assert_eq!(keys(&dynamic_heavy_light(&g, &s, P1, k, alpha).unwrap()), want);
            }
        }
    }

    #[test]
    fn weights_below_one() {
        let g = complete(6, |u, v| 0.01 * f64::from(1 + u * 6 + v));
        let s = sort_edges(&g, 1);
        let want = keys(&brute_force_topk(&g, P1, 4).unwrap());
        assert_eq!(keys(&dynamic_heavy_light(&g, &s, P1, 4, AlphaParam::Fixed(1.5)).unwrap()), want);
    }
}
