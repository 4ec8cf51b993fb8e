//! Weighted undirected graphs in CSR form, edge-list IO, and the
//! weight-sorted edge order every retrieval algorithm starts from.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::par;

pub type NodeId = u32;
pub type EdgeId = u32;

/// An undirected edge stored canonically with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedEdge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: f64,
}

/// How parallel rows for the same node pair are merged at load time.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Aggregation {
    #[default]
    Sum,
    Max,
    First,
}

impl FromStr for Aggregation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum" => Ok(Aggregation::Sum),
            "max" => Ok(Aggregation::Max),
            "first" => Ok(Aggregation::First),
            other => Err(Error::param(format!("unknown aggregation `{other}`"))),
        }
    }
}

impl fmt::Display for Aggregation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Aggregation::Sum => "sum",
            Aggregation::Max => "max",
            Aggregation::First => "first",
        })
    }
}

/// Immutable simple weighted graph.
///
/// Each node's adjacency is sorted strictly ascending by neighbor id and
/// carries the neighbor's edge weight and the id of the shared edge. Edge
/// ids index [`WeightedGraph::edges`], which is sorted by `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGraph {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    weights: Vec<f64>,
    edge_ids: Vec<EdgeId>,
    edges: Vec<WeightedEdge>,
    original_ids: Vec<u64>,
}

impl WeightedGraph {
    /// Builds a graph on nodes `0..n`. Self-loops are dropped and parallel
    /// edges merged with `aggregation`, in iteration order for `First`.
    pub fn from_edges<I>(n: usize, edges: I, aggregation: Aggregation) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId, f64)>,
    {
        let mut raw = Vec::new();
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            for node in [u, v] {
                if node as usize >= n {
                    return Err(Error::NodeOutOfRange { node: node as usize, n });
                }
            }
            check_weight(w, i + 1)?;
            if u != v {
                raw.push((u.min(v), u.max(v), w));
            }
        }
        let original_ids = (0..n as u64).collect();
        Ok(Self::assemble(n, raw, aggregation, original_ids))
    }

    /// Raw edges must already be canonical (`u < v`) and self-loop free.
    fn assemble(
        n: usize,
        mut raw: Vec<(NodeId, NodeId, f64)>,
        aggregation: Aggregation,
        original_ids: Vec<u64>,
    ) -> Self {
        // Stable, so `First` keeps the earliest row.
        raw.sort_by_key(|&(u, v, _)| (u, v));
        let mut edges: Vec<WeightedEdge> = Vec::with_capacity(raw.len());
        for (u, v, w) in raw {
            match edges.last_mut() {
                Some(last) if last.u == u && last.v == v => match aggregation {
                    Aggregation::Sum => last.w += w,
                    Aggregation::Max => last.w = last.w.max(w),
                    Aggregation::First => {}
                },
                _ => edges.push(WeightedEdge { u, v, w }),
            }
        }
        assert!(edges.len() < EdgeId::MAX as usize, "too many edges for 32-bit edge ids");

        let mut offsets = vec![0usize; n + 1];
        for e in &edges {
            offsets[e.u as usize + 1] += 1;
            offsets[e.v as usize + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let slots = offsets[n];
        let mut targets = vec![0; slots];
        let mut weights = vec![0.0; slots];
        let mut edge_ids = vec![0; slots];
        let mut cursor = offsets[..n].to_vec();
        // Visiting edges in (u, v) order fills every list in ascending order:
        // a node's smaller neighbors arrive before its own row starts.
        for (id, e) in edges.iter().enumerate() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                let slot = cursor[a as usize];
                targets[slot] = b;
                weights[slot] = e.w;
                edge_ids[slot] = id as EdgeId;
                cursor[a as usize] += 1;
            }
        }

        WeightedGraph { offsets, targets, weights, edge_ids, edges, original_ids }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, u: NodeId) -> usize {
        let u = u as usize;
        self.offsets[u + 1] - self.offsets[u]
    }

    #[inline]
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        let u = u as usize;
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Edge weights aligned with [`neighbors`](Self::neighbors).
    #[inline]
    pub fn neighbor_weights(&self, u: NodeId) -> &[f64] {
        let u = u as usize;
        &self.weights[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Edge ids aligned with [`neighbors`](Self::neighbors).
    #[inline]
    pub fn neighbor_edge_ids(&self, u: NodeId) -> &[EdgeId] {
        let u = u as usize;
        &self.edge_ids[self.offsets[u]..self.offsets[u + 1]]
    }

    /// Start of `u`'s adjacency in the flat CSR arrays.
    #[inline]
    pub(crate) fn adjacency_offset(&self, u: NodeId) -> usize {
        self.offsets[u as usize]
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> WeightedEdge {
        self.edges[id as usize]
    }

    /// Id of edge `{u, v}`, searching the shorter adjacency list.
    #[inline]
    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        let slot = self.neighbors(a).binary_search(&b).ok()?;
        Some(self.neighbor_edge_ids(a)[slot])
    }

    /// Weight of edge `{u, v}` without range checks.
    #[inline]
    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        self.edge_id(u, v).map(|id| self.edges[id as usize].w)
    }

    /// Weight of edge `{u, v}`, or `None` when the nodes are not adjacent.
    pub fn edge_weight(&self, u: NodeId, v: NodeId) -> Result<Option<f64>> {
        let n = self.node_count();
        for node in [u, v] {
            if node as usize >= n {
                return Err(Error::NodeOutOfRange { node: node as usize, n });
            }
        }
        Ok(self.weight(u, v))
    }

    /// Id the node had in the loaded file.
    pub fn original_id(&self, u: NodeId) -> u64 {
        self.original_ids[u as usize]
    }

    pub fn original_ids(&self) -> &[u64] {
        &self.original_ids
    }

    /// Dense id of a node given its id in the source file.
    pub fn node_by_original(&self, id: u64) -> Option<NodeId> {
        self.original_ids.binary_search(&id).ok().map(|i| i as NodeId)
    }

    pub fn min_weight(&self) -> Option<f64> {
        self.edges.iter().map(|e| e.w).min_by(f64::total_cmp)
    }

    /// Graph on the same node set keeping only the listed edges.
    pub fn edge_subgraph(&self, ids: &[EdgeId]) -> WeightedGraph {
        let raw = ids
            .iter()
            .map(|&id| {
                let e = self.edges[id as usize];
                (e.u, e.v, e.w)
            })
            .collect();
        Self::assemble(self.node_count(), raw, Aggregation::First, self.original_ids.clone())
    }
}

fn check_weight(w: f64, line: usize) -> Result<()> {
    if w.is_nan() || w.is_infinite() {
        return Err(Error::Parse { line, message: format!("weight `{w}` is not a finite number") });
    }
    if w <= 0.0 {
        return Err(Error::NonPositiveWeight { line, weight: w });
    }
    Ok(())
}

/// Reads a whitespace-separated `u v w` edge list.
///
/// Lines starting with `#` or `%` and blank lines are skipped; columns after
/// the third are ignored. Node ids are compacted to `0..n` in ascending order
/// of their original value, so canonical `u < v` order is the same in both
/// id spaces.
pub fn load_edge_list<R: BufRead>(source: R, aggregation: Aggregation) -> Result<WeightedGraph> {
    let mut rows: Vec<(u64, u64, f64)> = Vec::new();
    let mut data_lines = 0usize;
    for (idx, line) in source.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        data_lines += 1;
        let mut fields = trimmed.split_whitespace();
        let mut next = |what: &str| {
            fields.next().ok_or_else(|| Error::Parse {
                line: lineno,
                message: format!("expected `u v w`, missing {what}"),
            })
        };
        let (u, v, w) = (next("u")?, next("v")?, next("w")?);
        let parse_id = |s: &str| {
            s.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("node id `{s}` is not a non-negative integer"),
            })
        };
        let u = parse_id(u)?;
        let v = parse_id(v)?;
        let w: f64 = w.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("weight `{w}` is not a number"),
        })?;
        check_weight(w, lineno)?;
        if u != v {
            rows.push((u.min(v), u.max(v), w));
        }
    }
    if data_lines == 0 {
        return Err(Error::EmptyInput);
    }

    let mut ids: Vec<u64> = rows.iter().flat_map(|&(u, v, _)| [u, v]).collect();
    ids.sort_unstable();
    ids.dedup();
    if ids.len() > NodeId::MAX as usize {
        return Err(Error::param("too many distinct nodes for 32-bit node ids"));
    }
    let compact = |id: u64| ids.binary_search(&id).expect("id collected above") as NodeId;
    let raw = rows.iter().map(|&(u, v, w)| (compact(u), compact(v), w)).collect();
    Ok(WeightedGraph::assemble(ids.len(), raw, aggregation, ids.clone()))
}

/// Edges ordered by decreasing weight, ties by ascending `(u, v)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SortedEdgeList {
    edges: Vec<WeightedEdge>,
    ids: Vec<EdgeId>,
}

impl SortedEdgeList {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[WeightedEdge] {
        &self.edges
    }

    /// Graph edge id at each sorted position.
    pub fn ids(&self) -> &[EdgeId] {
        &self.ids
    }

    #[inline]
    pub fn weight(&self, rank: usize) -> f64 {
        self.edges[rank].w
    }

    /// Inverse of [`ids`](Self::ids): sorted position of every graph edge.
    pub fn ranks(&self) -> Vec<u32> {
        let mut rank = vec![0u32; self.ids.len()];
        for (pos, &id) in self.ids.iter().enumerate() {
            rank[id as usize] = pos as u32;
        }
        rank
    }

    /// Writes `u v w` lines using original node ids, in sorted order.
    pub fn write_edge_list<W: Write>(&self, g: &WeightedGraph, mut out: W) -> std::io::Result<()> {
        for e in &self.edges {
            writeln!(out, "{} {} {}", g.original_id(e.u), g.original_id(e.v), e.w)?;
        }
        out.flush()
    }
}

/// Sorts the edges of `g` by decreasing weight.
///
/// Positive finite weights order the same as their IEEE bit patterns, and
/// graph edge ids are already `(u, v)` ordered, so the composite key is
/// unique and the result does not depend on `threads`.
pub fn sort_edges(g: &WeightedGraph, threads: usize) -> SortedEdgeList {
    let mut keys: Vec<(u64, EdgeId)> = g
        .edges()
        .iter()
        .enumerate()
        .map(|(id, e)| (!e.w.to_bits(), id as EdgeId))
        .collect();
    par::sort_unstable(&mut keys, threads);
    let ids: Vec<EdgeId> = keys.into_iter().map(|(_, id)| id).collect();
    let edges = ids.iter().map(|&id| g.edge(id)).collect();
    SortedEdgeList { edges, ids }
}
