//! Bounded top-k retention under the canonical result order: weight
//! descending, then node tuple ascending.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};
use std::hash::Hash;

use crate::graph::NodeId;
use crate::weighting::Triangle;

/// A scored node set that can be ranked and deduplicated.
pub trait Ranked: Clone {
    type Key: Hash + Eq + Clone + Send;

    fn weight(&self) -> f64;
    /// Nodes in ascending order.
    fn members(&self) -> Vec<NodeId>;
    fn key(&self) -> Self::Key;
    /// Lexicographic comparison of the ascending node tuples.
    fn cmp_nodes(&self, other: &Self) -> Ordering;
}

impl Ranked for Triangle {
    type Key = [NodeId; 3];

    fn weight(&self) -> f64 {
        self.weight
    }

    fn members(&self) -> Vec<NodeId> {
        self.nodes().to_vec()
    }

    fn key(&self) -> [NodeId; 3] {
        self.nodes()
    }

    fn cmp_nodes(&self, other: &Self) -> Ordering {
        self.nodes().cmp(&other.nodes())
    }
}

/// A clique of 3 to 5 nodes with its p-mean weight over all member edges.
#[derive(Clone, Debug, PartialEq)]
pub struct Clique {
    pub nodes: Vec<NodeId>,
    pub weight: f64,
}

impl Ranked for Clique {
    type Key = Vec<NodeId>;

    fn weight(&self) -> f64 {
        self.weight
    }

    fn members(&self) -> Vec<NodeId> {
        self.nodes.clone()
    }

    fn key(&self) -> Vec<NodeId> {
        self.nodes.clone()
    }

    fn cmp_nodes(&self, other: &Self) -> Ordering {
        self.nodes.cmp(&other.nodes)
    }
}

/// `Less` means `a` ranks ahead of `b`.
#[inline]
pub fn rank_cmp<T: Ranked>(a: &T, b: &T) -> Ordering {
    b.weight().total_cmp(&a.weight()).then_with(|| a.cmp_nodes(b))
}

/// The k best items found by an algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct TopKResult<T = Triangle> {
    pub k: usize,
    /// Best first.
    pub items: Vec<T>,
    /// Produced by an algorithm that certifies the true top-k.
    pub exact: bool,
    /// Sampling iterations performed, for randomized algorithms.
    pub iterations: Option<u64>,
}

impl<T: Ranked> TopKResult<T> {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn keys(&self) -> Vec<T::Key> {
        self.items.iter().map(Ranked::key).collect()
    }

    /// Fraction of `oracle`'s items present here, where any item tied with
    /// the oracle's last weight also counts as a hit.
    pub fn accuracy_against(&self, oracle: &TopKResult<T>) -> f64 {
        accuracy(&self.items, &oracle.items)
    }
}

/// `|found ∩ truth| / |truth|`, treating members whose weight equals the
/// last `truth` weight as interchangeable. Returns 1 for an empty `truth`.
pub fn accuracy<T: Ranked>(found: &[T], truth: &[T]) -> f64 {
    let Some(boundary) = truth.last().map(Ranked::weight) else {
        return 1.0;
    };
    let wanted: HashSet<T::Key> = truth.iter().map(Ranked::key).collect();
    let hits = found
        .iter()
        .filter(|t| wanted.contains(&t.key()) || t.weight() == boundary)
        .count();
    hits.min(truth.len()) as f64 / truth.len() as f64
}

struct Worst<T>(T);

impl<T: Ranked> PartialEq for Worst<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Ranked> Eq for Worst<T> {}

impl<T: Ranked> PartialOrd for Worst<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Ranked> Ord for Worst<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        rank_cmp(&self.0, &other.0)
    }
}

/// Keeps the k best distinct items offered so far.
///
/// An item that was rejected or evicted ranks behind everything retained at
/// that moment, and the retained floor only rises, so re-offering it later is
/// rejected again. Deduplication therefore only needs the retained keys.
pub struct TopKCollector<T: Ranked> {
    k: usize,
    heap: BinaryHeap<Worst<T>>,
    members: HashSet<T::Key>,
}

impl<T: Ranked> TopKCollector<T> {
    pub fn new(k: usize) -> Self {
        TopKCollector {
            k,
            heap: BinaryHeap::with_capacity(k.min(1 << 16) + 1),
            members: HashSet::with_capacity(k.min(1 << 16) + 1),
        }
    }

    /// Returns whether the item was retained.
    #[inline]
    pub fn offer(&mut self, item: T) -> bool {
        if self.k == 0 {
            return false;
        }
        if self.heap.len() == self.k {
            let worst = &self.heap.peek().expect("k > 0").0;
            if rank_cmp(&item, worst) != Ordering::Less {
                return false;
            }
        }
        if !self.members.insert(item.key()) {
            return false;
        }
        self.heap.push(Worst(item));
        if self.heap.len() > self.k {
            let evicted = self.heap.pop().expect("non-empty");
            self.members.remove(&evicted.0.key());
        }
        true
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn merge(&mut self, other: TopKCollector<T>) {
        for Worst(item) in other.heap {
            self.offer(item);
        }
    }

    /// Best first.
    pub fn into_sorted(self) -> Vec<T> {
        let mut items: Vec<T> = self.heap.into_iter().map(|w| w.0).collect();
        items.sort_by(rank_cmp);
        items
    }

    pub fn into_result(self, exact: bool, iterations: Option<u64>) -> TopKResult<T> {
        let k = self.k;
        TopKResult { k, items: self.into_sorted(), exact, iterations }
    }
}

/// Sorts `items` into canonical order and keeps the first `k`.
pub fn select_top<T: Ranked>(mut items: Vec<T>, k: usize) -> Vec<T> {
    if items.len() > k {
        items.select_nth_unstable_by(k, rank_cmp);
        items.truncate(k);
    }
    items.sort_by(rank_cmp);
    items
}
