//! `gen`: synthetic graphs from compact distribution specs.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use toptri::sort_edges;
use toptri::synthgen::{fit_beta, generate, write_edge_list, DegreeDist, GenSpec, WeightDist};

fn fields<const N: usize>(spec: &str, kind: &str, usage: &str) -> Result<[f64; N]> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != N + 1 || parts[0] != kind {
        bail!("expected `{usage}`, got `{spec}`");
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(&parts[1..]) {
        *slot = part.parse().with_context(|| format!("invalid number `{part}` in `{spec}`"))?;
    }
    Ok(out)
}

fn count(x: f64, spec: &str) -> Result<usize> {
    if x < 0.0 || x.fract() != 0.0 {
        bail!("`{x}` in `{spec}` is not a non-negative integer");
    }
    Ok(x as usize)
}

/// `const:D` or `powerlaw:GAMMA:DMIN:DMAX`.
pub fn parse_degree(spec: &str) -> Result<DegreeDist> {
    if spec.starts_with("const:") {
        let [d] = fields(spec, "const", "const:D")?;
        Ok(DegreeDist::Constant(count(d, spec)?))
    } else {
        let [gamma, d_min, d_max] = fields(spec, "powerlaw", "powerlaw:GAMMA:DMIN:DMAX")?;
        Ok(DegreeDist::PowerLaw { gamma, d_min: count(d_min, spec)?, d_max: count(d_max, spec)? })
    }
}

/// `powerlaw:BETA:WMIN` or `uniform:LO:HI`.
pub fn parse_weights(spec: &str) -> Result<WeightDist> {
    if spec.starts_with("uniform:") {
        let [lo, hi] = fields(spec, "uniform", "uniform:LO:HI")?;
        Ok(WeightDist::Uniform { lo, hi })
    } else {
        let [beta, w_min] = fields(spec, "powerlaw", "powerlaw:BETA:WMIN")?;
        Ok(WeightDist::PowerLaw { beta, w_min })
    }
}

#[derive(Debug, Serialize)]
pub struct GenSummary {
    pub n: usize,
    pub m: usize,
    /// Tail exponent fitted on the written weights, if the tail is large enough.
    pub beta_hat: Option<f64>,
    pub out: String,
}

pub fn run(spec: &GenSpec, out: &Path) -> Result<GenSummary> {
    let g = generate(spec)?;
    let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
    write_edge_list(&g, BufWriter::new(file)).with_context(|| format!("writing {}", out.display()))?;
    let tail_min = match spec.weight {
        WeightDist::PowerLaw { w_min, .. } => w_min,
        WeightDist::Uniform { lo, .. } => lo,
    };
    let beta_hat = match fit_beta(&sort_edges(&g, 1), tail_min) {
        Ok(b) => Some(b),
        Err(e) => {
            log::warn!("no tail fit: {e}");
            None
        }
    };
    Ok(GenSummary { n: g.node_count(), m: g.edge_count(), beta_hat, out: out.display().to_string() })
}
