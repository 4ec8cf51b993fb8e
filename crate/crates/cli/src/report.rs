//! JSON run report printed by `topk`.

use serde::Serialize;

use crate::algo::{Algo, Outcome, Params};

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub algorithm: Algo,
    pub dataset: String,
    pub p: String,
    pub k: usize,
    pub clique_size: usize,
    pub threads: usize,
    /// Seed, reported for samplers only.
    pub seed: Option<u64>,
    pub preprocessing_ms: f64,
    pub main_ms: f64,
    /// Sampler iterations actually run.
    pub iterations: Option<u64>,
    pub exact: bool,
    pub found: usize,
    /// Fraction of the exact top-k recovered, when an oracle was computed.
    pub accuracy: Option<f64>,
    /// Hex SHA-256 of the result file.
    pub digest: String,
}

impl RunReport {
    pub fn new(algo: Algo, dataset: &str, params: &Params, outcome: &Outcome, digest: String) -> Self {
        RunReport {
            algorithm: algo,
            dataset: dataset.to_string(),
            p: params.p.to_string(),
            k: params.k,
            clique_size: params.clique_size,
            threads: params.threads,
            seed: algo.is_sampler().then_some(params.seed),
            preprocessing_ms: outcome.preprocessing_ms,
            main_ms: outcome.main_ms,
            iterations: outcome.found.iterations(),
            exact: outcome.found.exact(),
            found: outcome.found.len(),
            accuracy: None,
            digest,
        }
    }
}
