//! `bench`: runs a TOML-described grid of algorithms and parameters over
//! one or more datasets and emits one JSON line per cell.
//!
//! ```toml
//! repetitions = 3
//! threads = 1
//!
//! [[datasets]]
//! name = "web"
//! path = "web.txt"          # relative to the config file
//!
//! [[runs]]
//! algo = "dhl"
//! p = [1.0, 2.0]
//! k = [100, 1000]
//! alpha = ["1.25", "auto"]
//!
//! [[runs]]
//! algo = "es"
//! iters = [100000]
//! budget_ms = [1000]
//!
//! [sweep]
//! heavy_fractions = [0.01, 0.1, 0.5]
//! k = 1000
//! ```

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{ensure, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::json;
use toptri::heavy_light::{static_heavy_light, AlphaParam};
use toptri::topk::accuracy;
use toptri::{load_edge_list, par, sort_edges, Aggregation, Budget, PMean, WeightedGraph};

use crate::algo::{self, Algo, Found, Params};

fn one() -> usize {
    1
}

fn default_p() -> Vec<f64> {
    vec![1.0]
}

fn default_k() -> Vec<usize> {
    vec![1000]
}

fn default_sweep_k() -> usize {
    1000
}

fn default_sweep_p() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "one")]
    pub repetitions: usize,
    pub threads: Option<usize>,
    /// Score every cell against the exact top-k.
    #[serde(default = "yes")]
    pub oracle: bool,
    #[serde(default)]
    pub aggregation: Option<String>,
    #[serde(default)]
    pub datasets: Vec<Dataset>,
    #[serde(default)]
    pub runs: Vec<RunGrid>,
    pub sweep: Option<Sweep>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Dataset {
    pub name: Option<String>,
    pub path: PathBuf,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunGrid {
    pub algo: Algo,
    #[serde(default = "default_p")]
    pub p: Vec<f64>,
    #[serde(default = "default_k")]
    pub k: Vec<usize>,
    #[serde(default)]
    pub alpha: Vec<String>,
    #[serde(default)]
    pub heavy_fraction: Vec<f64>,
    #[serde(default)]
    pub iters: Vec<u64>,
    #[serde(default)]
    pub budget_ms: Vec<u64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub clique_size: Option<usize>,
}

/// Static heavy-light fraction sweep.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub heavy_fractions: Vec<f64>,
    #[serde(default = "default_sweep_k")]
    pub k: usize,
    #[serde(default = "default_sweep_p")]
    pub p: f64,
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: BenchConfig = toml::from_str(text).context("parsing bench config")?;
        ensure!(!cfg.datasets.is_empty(), "bench config lists no datasets");
        ensure!(cfg.sweep.is_some() || !cfg.runs.is_empty(), "bench config lists no runs and no sweep");
        ensure!(cfg.repetitions >= 1, "repetitions must be at least 1");
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg = Self::parse(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for d in &mut cfg.datasets {
            if d.path.is_relative() {
                d.path = base.join(&d.path);
            }
        }
        Ok(cfg)
    }
}

/// One grid cell: an algorithm with every flag fixed.
#[derive(Clone, Debug)]
pub struct Cell {
    pub algo: Algo,
    pub params: Params,
}

#[derive(Serialize)]
struct CellParams {
    alpha: Option<String>,
    heavy_fraction: Option<f64>,
    iters: Option<u64>,
    budget_ms: Option<u64>,
    seed: Option<u64>,
    clique_size: usize,
}

fn optional<T: Clone>(values: &[T]) -> Vec<Option<T>> {
    if values.is_empty() {
        vec![None]
    } else {
        values.iter().cloned().map(Some).collect()
    }
}

impl RunGrid {
    /// Cartesian product of every listed value.
    pub fn cells(&self, threads: usize) -> Result<Vec<Cell>> {
        let alphas = self
            .alpha
            .iter()
            .map(|a| a.parse::<AlphaParam>().with_context(|| format!("alpha `{a}`")))
            .collect::<Result<Vec<_>>>()?;
        let budgets: Vec<Budget> = self
            .iters
            .iter()
            .map(|&i| Budget::Iterations(i))
            .chain(self.budget_ms.iter().map(|&t| Budget::TimeMs(t)))
            .collect();
        let mut cells = Vec::new();
        for &p in &self.p {
            let p = PMean::new(p)?;
            for &k in &self.k {
                for alpha in optional(&alphas) {
                    for heavy_fraction in optional(&self.heavy_fraction) {
                        for budget in optional(&budgets) {
                            let params = Params {
                                p,
                                k,
                                alpha,
                                heavy_fraction,
                                budget,
                                seed: self.seed,
                                threads,
                                clique_size: self.clique_size.unwrap_or(3),
                            };
                            cells.push(Cell { algo: self.algo, params });
                        }
                    }
                }
            }
        }
        Ok(cells)
    }
}

fn summary(values: &[f64]) -> (f64, f64, f64) {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (mean, min, max)
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

struct Oracles<'g> {
    g: &'g WeightedGraph,
    cache: HashMap<(u64, usize, usize), Found>,
}

impl Oracles<'_> {
    fn get(&mut self, p: PMean, k: usize, size: usize) -> Result<&Found> {
        let key = (p.value().to_bits(), k, size);
        if !self.cache.contains_key(&key) {
            self.cache.insert(key, algo::oracle(self.g, p, k, size)?);
        }
        Ok(&self.cache[&key])
    }
}

fn cell_params(cell: &Cell) -> CellParams {
    let p = &cell.params;
    CellParams {
        alpha: p.alpha.map(|a| match a {
            AlphaParam::Auto => "auto".to_string(),
            AlphaParam::Fixed(x) => x.to_string(),
        }),
        heavy_fraction: p.heavy_fraction,
        iters: match p.budget {
            Some(Budget::Iterations(i)) => Some(i),
            _ => None,
        },
        budget_ms: match p.budget {
            Some(Budget::TimeMs(t)) => Some(t),
            _ => None,
        },
        seed: cell.algo.is_sampler().then_some(p.seed),
        clique_size: p.clique_size,
    }
}

fn run_cell(
    g: &WeightedGraph,
    cell: &Cell,
    repetitions: usize,
    oracles: Option<&mut Oracles>,
) -> Result<serde_json::Value> {
    let mut total = Vec::with_capacity(repetitions);
    let mut main = Vec::with_capacity(repetitions);
    let mut pre = Vec::with_capacity(repetitions);
    let mut iterations = Vec::with_capacity(repetitions);
    let mut accuracies = Vec::new();
    let mut digest = None;
    let truth = match oracles {
        Some(o) => Some(o.get(cell.params.p, cell.params.k, cell.params.clique_size)?.clone()),
        None => None,
    };
    for _ in 0..repetitions {
        let out = algo::run(g, cell.algo, &cell.params)?;
        total.push(out.preprocessing_ms + out.main_ms);
        main.push(out.main_ms);
        pre.push(out.preprocessing_ms);
        iterations.extend(out.found.iterations());
        if let Some(truth) = &truth {
            accuracies.extend(out.found.accuracy_against(truth));
        }
        digest.get_or_insert_with(|| out.found.digest(g));
    }
    let (mean, min, max) = summary(&total);
    let accuracy = (!accuracies.is_empty()).then(|| accuracies.iter().sum::<f64>() / accuracies.len() as f64);
    Ok(json!({
        "timings_ms": total,
        "main_ms": main,
        "preprocessing_ms": pre,
        "mean_ms": mean,
        "min_ms": min,
        "max_ms": max,
        "iterations": if iterations.is_empty() { None } else { Some(iterations) },
        "accuracy": accuracy,
        "digest": digest,
    }))
}

fn load_graph(path: &Path, aggregation: Aggregation) -> Result<WeightedGraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    load_edge_list(BufReader::new(file), aggregation).with_context(|| format!("loading {}", path.display()))
}

fn merge(mut base: serde_json::Value, extra: serde_json::Value) -> serde_json::Value {
    if let (Some(b), serde_json::Value::Object(e)) = (base.as_object_mut(), extra) {
        b.extend(e);
    }
    base
}

/// Static heavy-light over each fraction. The edge sort is shared, and each
/// fraction gets one untimed warm-up run before the timed repetitions.
fn run_sweep(
    g: &WeightedGraph,
    name: &str,
    sweep: &Sweep,
    repetitions: usize,
    threads: usize,
    oracles: &mut Oracles,
    out: &mut impl Write,
) -> Result<()> {
    let p = PMean::new(sweep.p)?;
    let sorted = sort_edges(g, threads);
    let truth = match oracles.get(p, sweep.k, 3)? {
        Found::Triangles(t) => t.items.clone(),
        Found::Cliques(..) => unreachable!("size 3"),
    };
    for &f in &sweep.heavy_fractions {
        let head = json!({"kind": "sweep", "dataset": name, "heavy_fraction": f, "p": p.to_string(), "k": sweep.k});
        let timed = || -> Result<(f64, f64)> {
            let start = Instant::now();
            let found = static_heavy_light(g, &sorted, p, sweep.k, f)?;
            Ok((start.elapsed().as_secs_f64() * 1e3, accuracy(&found.items, &truth)))
        };
        let body = match timed().and_then(|_| (0..repetitions).map(|_| timed()).collect::<Result<Vec<_>>>()) {
            Ok(runs) => {
                let times: Vec<f64> = runs.iter().map(|r| r.0).collect();
                json!({"main_ms": median(&times), "timings_ms": times, "accuracy": runs[0].1, "error": null})
            }
            Err(e) => json!({"error": format!("{e:#}")}),
        };
        writeln!(out, "{}", merge(head, body))?;
    }
    Ok(())
}

/// Runs the whole grid, writing one JSON line per cell. A failing cell
/// reports its error and the run continues; a dataset that cannot be
/// loaded reports one error line.
pub fn run(cfg: &BenchConfig, mut out: impl Write) -> Result<()> {
    let threads = cfg.threads.unwrap_or_else(par::available_threads);
    let aggregation: Aggregation = cfg.aggregation.as_deref().unwrap_or("sum").parse()?;
    let grids = cfg.runs.iter().map(|r| r.cells(threads)).collect::<Result<Vec<_>>>()?;
    for dataset in &cfg.datasets {
        let name = dataset.name.clone().unwrap_or_else(|| dataset.path.display().to_string());
        let g = match load_graph(&dataset.path, aggregation) {
            Ok(g) => g,
            Err(e) => {
                writeln!(out, "{}", json!({"kind": "dataset", "dataset": name, "error": format!("{e:#}")}))?;
                continue;
            }
        };
        log::info!("{name}: {} nodes, {} edges", g.node_count(), g.edge_count());
        let mut oracles = Oracles { g: &g, cache: HashMap::new() };
        for cell in grids.iter().flatten() {
            let head = json!({
                "kind": "cell",
                "dataset": name,
                "algo": cell.algo,
                "p": cell.params.p.to_string(),
                "k": cell.params.k,
                "threads": cell.params.threads,
                "repetitions": cfg.repetitions,
                "params": cell_params(cell),
            });
            let body = match run_cell(&g, cell, cfg.repetitions, cfg.oracle.then_some(&mut oracles)) {
                Ok(body) => merge(body, json!({"error": null})),
                Err(e) => json!({"error": format!("{e:#}")}),
            };
            writeln!(out, "{}", merge(head, body))?;
        }
        if let Some(sweep) = &cfg.sweep {
            run_sweep(&g, &name, sweep, cfg.repetitions, threads, &mut oracles, &mut out)?;
        }
        out.flush()?;
    }
    Ok(())
}
