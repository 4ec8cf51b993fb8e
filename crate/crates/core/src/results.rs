//! Result files: one tab-separated line per triangle or clique with its
//! original node ids ascending, the weights of all member edges in pair
//! order, and the p-mean weight.

use std::collections::HashSet;
use std::io::{BufRead, Write};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::topk::Ranked;

/// A parsed result line.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultRow {
    /// Original node ids, ascending.
    pub nodes: Vec<u64>,
    /// Member edge weights for pairs `(0,1), (0,2), …, (s-2,s-1)`.
    pub edge_weights: Vec<f64>,
    pub weight: f64,
}

fn header(size: usize) -> String {
    let nodes = ["u", "v", "x", "y", "z"];
    let mut cols: Vec<String> = nodes[..size].iter().map(|s| s.to_string()).collect();
    for i in 0..size {
        for j in i + 1..size {
            cols.push(format!("w_{}{}", nodes[i], nodes[j]));
        }
    }
    cols.push("pmean".into());
    format!("# {}", cols.join("\t"))
}

/// Renders `items` (best first) as result text.
pub fn render<T: Ranked>(g: &WeightedGraph, items: &[T], size: usize) -> String {
    let mut out = header(size);
    out.push('\n');
    for item in items {
        let nodes = item.members();
        let mut cols: Vec<String> = nodes.iter().map(|&u| g.original_id(u).to_string()).collect();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                cols.push(g.weight(a, b).expect("members are adjacent").to_string());
            }
        }
        cols.push(item.weight().to_string());
        out.push_str(&cols.join("\t"));
        out.push('\n');
    }
    out
}

pub fn write_results<T: Ranked, W: Write>(g: &WeightedGraph, items: &[T], size: usize, mut out: W) -> Result<()> {
    out.write_all(render(g, items, size).as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Hex SHA-256 of the rendered result text.
pub fn digest<T: Ranked>(g: &WeightedGraph, items: &[T], size: usize) -> String {
    digest_text(&render(g, items, size))
}

pub fn digest_text(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn clique_size(columns: usize) -> Option<usize> {
    (3..=5).find(|&s| s + s * (s - 1) / 2 + 1 == columns)
}

pub fn read_results<R: BufRead>(source: R) -> Result<Vec<ResultRow>> {
    let mut rows = Vec::new();
    for (i, line) in source.lines().enumerate() {
        let line = line?;
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let size = clique_size(fields.len()).ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("{} columns do not describe a 3-, 4- or 5-clique", fields.len()),
        })?;
        let bad = |what: &str, field: &str| Error::Parse { line: line_no, message: format!("invalid {what} `{field}`") };
        let nodes = fields[..size]
            .iter()
            .map(|f| f.parse::<u64>().map_err(|_| bad("node id", f)))
            .collect::<Result<Vec<_>>>()?;
        let numbers = fields[size..]
            .iter()
            .map(|f| f.parse::<f64>().map_err(|_| bad("weight", f)))
            .collect::<Result<Vec<_>>>()?;
        let (weight, edge_weights) = numbers.split_last().expect("at least one weight column");
        rows.push(ResultRow { nodes, edge_weights: edge_weights.to_vec(), weight: *weight });
    }
    Ok(rows)
}

/// Fraction of `truth` recovered by `found`; rows tied with the last truth
/// weight count as hits. Returns 1 for an empty `truth`.
pub fn row_accuracy(found: &[ResultRow], truth: &[ResultRow]) -> f64 {
    let Some(boundary) = truth.last().map(|r| r.weight) else {
        return 1.0;
    };
    let wanted: HashSet<&[u64]> = truth.iter().map(|r| r.nodes.as_slice()).collect();
    let hits = found
        .iter()
        .filter(|r| wanted.contains(r.nodes.as_slice()) || r.weight == boundary)
        .count();
    hits.min(truth.len()) as f64 / truth.len() as f64
}
