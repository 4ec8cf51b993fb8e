//! Generalized p-means over edge weights.
//!
//! Every mean is computed from the weights sorted ascending, so the value of
//! a triangle or clique depends only on the multiset of its edge weights and
//! is bit-identical no matter which algorithm discovered it. For finite
//! `p > 0` the result is additionally a monotone function of each sorted
//! argument, which the heavy-light certification relies on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Exponent of the generalized mean.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PMean {
    Finite(f64),
    /// Maximum.
    PosInf,
    /// Minimum.
    NegInf,
}

impl PMean {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() {
            Err(Error::param("p must not be NaN"))
        } else if p == f64::INFINITY {
            Ok(PMean::PosInf)
        } else if p == f64::NEG_INFINITY {
            Ok(PMean::NegInf)
        } else {
            Ok(PMean::Finite(p))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            PMean::Finite(p) => p,
            PMean::PosInf => f64::INFINITY,
            PMean::NegInf => f64::NEG_INFINITY,
        }
    }

    /// Finite and strictly positive.
    pub fn is_positive_finite(self) -> bool {
        matches!(self, PMean::Finite(p) if p > 0.0)
    }
}

impl Default for PMean {
    fn default() -> Self {
        PMean::Finite(1.0)
    }
}

impl FromStr for PMean {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let p = match s.trim() {
            "inf" | "+inf" | "infinity" => f64::INFINITY,
            "-inf" | "-infinity" => f64::NEG_INFINITY,
            other => other.parse().map_err(|_| Error::param(format!("invalid p `{other}`")))?,
        };
        PMean::new(p)
    }
}

impl fmt::Display for PMean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[inline]
pub(crate) fn pow(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else {
        x.powf(p)
    }
}

/// p-mean of weights already sorted ascending. No validation.
pub(crate) fn mean_of_sorted(sorted: &[f64], p: PMean) -> f64 {
    debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
    let n = sorted.len() as f64;
    match p {
        PMean::PosInf => sorted[sorted.len() - 1],
        PMean::NegInf => sorted[0],
        PMean::Finite(0.0) => (sorted.iter().map(|w| w.ln()).sum::<f64>() / n).exp(),
        PMean::Finite(p) if p > 0.0 => {
            let s: f64 = sorted.iter().map(|&w| pow(w, p)).sum();
            if s.is_finite() && s >= f64::MIN_POSITIVE {
                if p == 1.0 {
                    s / n
                } else {
                    (s / n).powf(p.recip())
                }
            } else {
                log_domain_mean(sorted.iter().rev(), p, n)
            }
        }
        // Largest weights give the smallest terms for p < 0; feed the
        // log-sum-exp the dominant term first.
        PMean::Finite(p) => log_domain_mean(sorted.iter(), p, n),
    }
}

/// `exp((ln(Σ exp(p ln w)) - ln n) / p)` with the first item as pivot.
fn log_domain_mean<'a>(mut weights: impl Iterator<Item = &'a f64>, p: f64, n: f64) -> f64 {
    let first = weights.next().expect("non-empty");
    let pivot = p * first.ln();
    let tail: f64 = weights.map(|w| (p * w.ln() - pivot).exp()).sum();
    let lse = pivot + tail.ln_1p();
    ((lse - n.ln()) / p).exp()
}

fn validate(weights: &[f64]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::Domain("p-mean of an empty set".into()));
    }
    if let Some(w) = weights.iter().find(|w| !(**w > 0.0) || w.is_infinite()) {
        return Err(Error::Domain(format!("weights must be positive and finite, got {w}")));
    }
    Ok(())
}

/// Generalized p-mean `[(1/n) Σ w_i^p]^(1/p)`, with the geometric mean at
/// `p = 0` and min/max at the infinities.
pub fn p_mean(weights: &[f64], p: PMean) -> Result<f64> {
    validate(weights)?;
    let mut sorted = weights.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(mean_of_sorted(&sorted, p))
}

/// `Σ w_i^p`, the comparison form of the p-mean for finite `p`.
pub fn unnorm_weight(weights: &[f64], p: f64) -> Result<f64> {
    validate(weights)?;
    if !p.is_finite() {
        return Err(Error::Domain("unnormalized weight needs a finite p".into()));
    }
    let mut powered: Vec<f64> = weights.iter().map(|&w| pow(w, p)).collect();
    powered.sort_by(f64::total_cmp);
    Ok(powered.iter().sum())
}

/// Weight of a triangle from its three edge weights, in any order.
#[inline]
pub(crate) fn triangle_mean(mut w: [f64; 3], p: PMean) -> f64 {
    sort3(&mut w);
    mean_of_sorted(&w, p)
}

#[inline]
fn sort3(w: &mut [f64; 3]) {
    if w[0] > w[1] {
        w.swap(0, 1);
    }
    if w[1] > w[2] {
        w.swap(1, 2);
    }
    if w[0] > w[1] {
        w.swap(0, 1);
    }
}

/// A triangle `a < b < c` with its p-mean weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub a: NodeId,
    pub b: NodeId,
    pub c: NodeId,
    pub weight: f64,
}

impl Triangle {
    /// Canonicalizes the node order; `w_xy` is the weight of edge `{x, y}`.
    #[inline]
    pub fn new(x: NodeId, y: NodeId, z: NodeId, w_xy: f64, w_xz: f64, w_yz: f64, p: PMean) -> Self {
        let mut nodes = [x, y, z];
        nodes.sort_unstable();
        Triangle {
            a: nodes[0],
            b: nodes[1],
            c: nodes[2],
            weight: triangle_mean([w_xy, w_xz, w_yz], p),
        }
    }

    pub fn nodes(&self) -> [NodeId; 3] {
        [self.a, self.b, self.c]
    }
}
