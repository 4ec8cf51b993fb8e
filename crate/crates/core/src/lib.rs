//! Retrieval of the top-k weighted triangles (and, by sampling, larger
//! cliques) of a weighted undirected graph, where a triangle's weight is the
//! generalized p-mean of its three edge weights.
//!
//! Two families are provided:
//!
//! * deterministic heavy-light retrieval ([`heavy_light`]), which walks the
//!   weight-sorted edge list and stops once the k heaviest triangles are
//!   certified, and
//! * weighted edge, wedge and path sampling ([`sampling`]), which draw
//!   triangles with probability proportional to `Σ w^p` over their edges.
//!
//! [`enumerate`] holds the exact enumerators used as oracles and
//! [`synthgen`] a configuration-model generator with power-law weights.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod enumerate;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod heavy_light;
pub mod par;
pub mod results;
pub mod sampling;
pub mod synthgen;
pub mod topk;
pub mod weighting;

pub use enumerate::{brute_force_topk, enumerate_cliques};
pub use error::{Error, Result};
pub use graph::{load_edge_list, sort_edges, Aggregation, NodeId, SortedEdgeList, WeightedEdge, WeightedGraph};
pub use heavy_light::{alpha_from_powerlaw, auto_heavy_light, dynamic_heavy_light, static_heavy_light, AlphaParam};
pub use sampling::{edge_sample_cliques, edge_sample_topk, path_sample_topk, required_samples, wedge_sample_topk, Budget, SamplerConfig};
pub use topk::{Clique, Ranked, TopKResult};
pub use weighting::{p_mean, unnorm_weight, PMean, Triangle};
