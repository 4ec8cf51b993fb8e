//! Algorithm selection, per-algorithm flag checks and timed execution.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, ensure, Result};
use serde::{Deserialize, Serialize};
use toptri::heavy_light::{dynamic_heavy_light, static_heavy_light, AlphaParam};
use toptri::results::{digest_text, render};
use toptri::sampling::{EdgeSamplingIndex, PathSamplingIndex, WedgeSamplingIndex};
use toptri::topk::accuracy;
use toptri::{
    brute_force_topk, enumerate_cliques, sort_edges, Budget, Clique, PMean, SamplerConfig, TopKResult, Triangle,
    WeightedGraph,
};

/// Default share of edges labelled heavy by the static variant.
pub const DEFAULT_HEAVY_FRACTION: f64 = 0.1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    /// Exhaustive enumeration.
    Bf,
    /// Static heavy-light.
    Shl,
    /// Dynamic heavy-light with a fixed alpha.
    Dhl,
    /// Dynamic heavy-light with estimated derivatives.
    Auto,
    /// Edge sampling.
    Es,
    /// Wedge sampling.
    Ws,
    /// Path sampling.
    Ps,
}

impl Algo {
    pub fn is_sampler(self) -> bool {
        matches!(self, Algo::Es | Algo::Ws | Algo::Ps)
    }

    pub fn is_exact(self) -> bool {
        matches!(self, Algo::Bf | Algo::Dhl | Algo::Auto)
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Algo::Bf => "bf",
            Algo::Shl => "shl",
            Algo::Dhl => "dhl",
            Algo::Auto => "auto",
            Algo::Es => "es",
            Algo::Ws => "ws",
            Algo::Ps => "ps",
        };
        f.write_str(name)
    }
}

impl FromStr for Algo {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        <Algo as clap::ValueEnum>::from_str(s, true).map_err(|_| anyhow::anyhow!("unknown algorithm `{s}`"))
    }
}

/// Flags shared by `topk` and bench cells; `None` means not given.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub p: PMean,
    pub k: usize,
    pub alpha: Option<AlphaParam>,
    pub heavy_fraction: Option<f64>,
    pub budget: Option<Budget>,
    pub seed: u64,
    pub threads: usize,
    pub clique_size: usize,
}

impl Params {
    /// Rejects flag combinations the algorithm cannot run with and warns
    /// about flags it ignores.
    pub fn check(&self, algo: Algo) -> Result<()> {
        ensure!(self.k >= 1, "--k must be at least 1");
        ensure!(self.threads >= 1, "--threads must be at least 1");
        ensure!(
            (3..=5).contains(&self.clique_size),
            "--clique-size must be 3, 4 or 5, got {}",
            self.clique_size
        );
        if self.clique_size != 3 && !matches!(algo, Algo::Bf | Algo::Es) {
            bail!("--clique-size {} is only supported by bf and es", self.clique_size);
        }
        if algo.is_sampler() {
            ensure!(self.budget.is_some(), "{algo} needs --iters or --budget-ms");
            ensure!(matches!(self.p, PMean::Finite(_)), "{algo} needs a finite --p");
        } else if self.budget.is_some() {
            log::warn!("--iters/--budget-ms are ignored by {algo}");
        }
        if matches!(algo, Algo::Dhl | Algo::Auto) {
            ensure!(self.p.is_positive_finite(), "{algo} needs a finite --p > 0");
        }
        if self.alpha.is_some() && algo != Algo::Dhl {
            log::warn!("--alpha is ignored by {algo}");
        }
        if self.heavy_fraction.is_some() && algo != Algo::Shl {
            log::warn!("--heavy-fraction is ignored by {algo}");
        }
        Ok(())
    }

    fn sampler_config(&self) -> SamplerConfig {
        SamplerConfig {
            p: self.p.value(),
            budget: self.budget.expect("checked"),
            seed: self.seed,
            threads: self.threads,
            k: self.k,
        }
    }
}

/// Triangles or larger cliques, best first.
#[derive(Clone, Debug, PartialEq)]
pub enum Found {
    Triangles(TopKResult<Triangle>),
    Cliques(TopKResult<Clique>, usize),
}

impl Found {
    pub fn len(&self) -> usize {
        match self {
            Found::Triangles(r) => r.len(),
            Found::Cliques(r, _) => r.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn exact(&self) -> bool {
        match self {
            Found::Triangles(r) => r.exact,
            Found::Cliques(r, _) => r.exact,
        }
    }

    pub fn iterations(&self) -> Option<u64> {
        match self {
            Found::Triangles(r) => r.iterations,
            Found::Cliques(r, _) => r.iterations,
        }
    }

    pub fn render(&self, g: &WeightedGraph) -> String {
        match self {
            Found::Triangles(r) => render(g, &r.items, 3),
            Found::Cliques(r, size) => render(g, &r.items, *size),
        }
    }

    pub fn digest(&self, g: &WeightedGraph) -> String {
        digest_text(&self.render(g))
    }

    /// Fraction of `oracle` recovered; `None` if the kinds differ.
    pub fn accuracy_against(&self, oracle: &Found) -> Option<f64> {
        match (self, oracle) {
            (Found::Triangles(a), Found::Triangles(b)) => Some(accuracy(&a.items, &b.items)),
            (Found::Cliques(a, _), Found::Cliques(b, _)) => Some(accuracy(&a.items, &b.items)),
            _ => None,
        }
    }
}

pub struct Outcome {
    pub found: Found,
    pub preprocessing_ms: f64,
    pub main_ms: f64,
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

/// Exact reference result for accuracy scoring.
pub fn oracle(g: &WeightedGraph, p: PMean, k: usize, clique_size: usize) -> Result<Found> {
    Ok(if clique_size == 3 {
        Found::Triangles(brute_force_topk(g, p, k)?)
    } else {
        Found::Cliques(enumerate_cliques(g, clique_size, p, k)?, clique_size)
    })
}

/// Runs `algo`, timing preprocessing (sorting, index builds) separately
/// from the main phase.
pub fn run(g: &WeightedGraph, algo: Algo, params: &Params) -> Result<Outcome> {
    params.check(algo)?;
    let (p, k) = (params.p, params.k);
    let start = Instant::now();
    let outcome = match algo {
        Algo::Bf => Outcome { found: oracle(g, p, k, params.clique_size)?, preprocessing_ms: 0.0, main_ms: ms(start) },
        Algo::Shl | Algo::Dhl | Algo::Auto => {
            let sorted = sort_edges(g, params.threads);
            let preprocessing_ms = ms(start);
            let main = Instant::now();
            let result = match algo {
                Algo::Shl => {
                    static_heavy_light(g, &sorted, p, k, params.heavy_fraction.unwrap_or(DEFAULT_HEAVY_FRACTION))?
                }
                Algo::Dhl => dynamic_heavy_light(g, &sorted, p, k, params.alpha.unwrap_or_default())?,
                _ => dynamic_heavy_light(g, &sorted, p, k, AlphaParam::Auto)?,
            };
            Outcome { found: Found::Triangles(result), preprocessing_ms, main_ms: ms(main) }
        }
        Algo::Es | Algo::Ws | Algo::Ps => {
            let cfg = params.sampler_config();
            let exponent = cfg.p;
            match algo {
                Algo::Es => {
                    let index = EdgeSamplingIndex::new(g, exponent, params.threads);
                    let preprocessing_ms = ms(start);
                    let main = Instant::now();
                    let found = if params.clique_size == 3 {
                        Found::Triangles(index.topk(&cfg)?)
                    } else {
                        Found::Cliques(index.cliques(&cfg, params.clique_size)?, params.clique_size)
                    };
                    Outcome { found, preprocessing_ms, main_ms: ms(main) }
                }
                Algo::Ws => {
                    let index = WedgeSamplingIndex::new(g, exponent);
                    let preprocessing_ms = ms(start);
                    let main = Instant::now();
                    Outcome { found: Found::Triangles(index.topk(&cfg)?), preprocessing_ms, main_ms: ms(main) }
                }
                _ => {
                    let index = PathSamplingIndex::new(g, exponent);
                    let preprocessing_ms = ms(start);
                    let main = Instant::now();
                    Outcome { found: Found::Triangles(index.topk(&cfg)?), preprocessing_ms, main_ms: ms(main) }
                }
            }
        }
    };
    Ok(outcome)
}
