use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use toptri::heavy_light::AlphaParam;
use toptri::results::{read_results, row_accuracy};
use toptri::synthgen::GenSpec;
use toptri::{load_edge_list, par, Aggregation, Budget, PMean};
use toptri_cli::algo::{self, Algo, Params};
use toptri_cli::report::RunReport;
use toptri_cli::{bench, gen};

#[derive(Parser)]
#[command(name = "toptri", version, about = "Top-k weighted triangles under p-mean weighting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Retrieve the k heaviest triangles (or cliques) of an edge list.
    Topk(TopkArgs),
    /// Score a result file against an exact one.
    Accuracy(AccuracyArgs),
    /// Run a TOML-described benchmark grid, printing JSON lines.
    Bench(BenchArgs),
    /// Generate a configuration-model graph with random weights.
    Gen(GenArgs),
}

#[derive(Args)]
struct TopkArgs {
    /// Edge list: `u v w` per line.
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    algo: Algo,
    /// Mean exponent; `inf` and `-inf` select max and min.
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_p)]
    p: PMean,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    /// Pointer separation for dhl: a number > 1, or `auto` [default: 1.25].
    #[arg(long, value_parser = parse_alpha)]
    alpha: Option<AlphaParam>,
    /// Share of heaviest edges kept by shl [default: 0.1].
    #[arg(long)]
    heavy_fraction: Option<f64>,
    /// Sampler iterations.
    #[arg(long, conflicts_with = "budget_ms")]
    iters: Option<u64>,
    /// Sampler wall-clock budget.
    #[arg(long)]
    budget_ms: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads [default: all available].
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(3..=5))]
    clique_size: u64,
    /// How duplicate rows for a node pair merge: sum, max or first.
    #[arg(long, default_value = "sum", value_parser = parse_aggregation)]
    aggregation: Aggregation,
    /// Result file.
    #[arg(long)]
    out: PathBuf,
    /// Also compute the exact top-k and report accuracy.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct AccuracyArgs {
    /// Result file to score.
    result: PathBuf,
    /// Exact result file.
    oracle: PathBuf,
    /// Score against the first k oracle rows only.
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    config: PathBuf,
    /// Write JSON lines here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    /// `const:D` or `powerlaw:GAMMA:DMIN:DMAX`.
    #[arg(long, value_parser = parse_degree)]
    degree: toptri::synthgen::DegreeDist,
    /// `powerlaw:BETA:WMIN` or `uniform:LO:HI`.
    #[arg(long, value_parser = parse_weights)]
    weights: toptri::synthgen::WeightDist,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn parse_p(s: &str) -> Result<PMean, String> {
    s.parse().map_err(|e: toptri::Error| e.to_string())
}

fn parse_alpha(s: &str) -> Result<AlphaParam, String> {
    s.parse().map_err(|e: toptri::Error| e.to_string())
}

fn parse_aggregation(s: &str) -> Result<Aggregation, String> {
    s.parse().map_err(|e: toptri::Error| e.to_string())
}

fn parse_degree(s: &str) -> Result<toptri::synthgen::DegreeDist, String> {
    gen::parse_degree(s).map_err(|e| e.to_string())
}

fn parse_weights(s: &str) -> Result<toptri::synthgen::WeightDist, String> {
    gen::parse_weights(s).map_err(|e| e.to_string())
}

fn read_rows(path: &Path) -> Result<Vec<toptri::results::ResultRow>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_results(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn topk(args: TopkArgs) -> Result<()> {
    let params = Params {
        p: args.p,
        k: args.k as usize,
        alpha: args.alpha,
        heavy_fraction: args.heavy_fraction,
        budget: args.iters.map(Budget::Iterations).or(args.budget_ms.map(Budget::TimeMs)),
        seed: args.seed,
        threads: args.threads.unwrap_or_else(par::available_threads),
        clique_size: args.clique_size as usize,
    };
    params.check(args.algo)?;
    let file = File::open(&args.input).with_context(|| format!("opening {}", args.input.display()))?;
    let g = load_edge_list(BufReader::new(file), args.aggregation)
        .with_context(|| format!("loading {}", args.input.display()))?;
    log::info!("{} nodes, {} edges", g.node_count(), g.edge_count());
    let outcome = algo::run(&g, args.algo, &params)?;
    let text = outcome.found.render(&g);
    std::fs::write(&args.out, &text).with_context(|| format!("writing {}", args.out.display()))?;
    let mut report =
        RunReport::new(args.algo, &args.input.display().to_string(), &params, &outcome, toptri::results::digest_text(&text));
    if args.oracle {
        let truth = algo::oracle(&g, params.p, params.k, params.clique_size)?;
        report.accuracy = outcome.found.accuracy_against(&truth);
    }
    println!("{}", serde_json::to_string(&report)?);
    Ok(())
}

fn accuracy(args: AccuracyArgs) -> Result<()> {
    let found = read_rows(&args.result)?;
    let mut truth = read_rows(&args.oracle)?;
    if let Some(k) = args.k {
        truth.truncate(k);
    }
    println!("{}", row_accuracy(&found, &truth));
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let cfg = bench::BenchConfig::load(&args.config)?;
    match args.out {
        Some(path) => {
            let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
            bench::run(&cfg, BufWriter::new(file))
        }
        None => bench::run(&cfg, std::io::stdout().lock()),
    }
}

fn generate(args: GenArgs) -> Result<()> {
    let spec = GenSpec { n: args.n, degree: args.degree, weight: args.weights, seed: args.seed };
    let summary = gen::run(&spec, &args.out)?;
    let mut stdout = std::io::stdout().lock();
    writeln!(stdout, "{}", serde_json::to_string(&summary)?)?;
    Ok(())
}

fn main() -> Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Topk(args) => topk(args),
        Command::Accuracy(args) => accuracy(args),
        Command::Bench(args) => bench(args),
        Command::Gen(args) => generate(args),
    }
}
