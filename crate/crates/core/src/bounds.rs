//! Sufficient color counts for single-conflict colorings.
//!
//! All logarithms are natural.

use std::f64::consts::E;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// `2 sqrt(d (1 + ln((d+1) Δ)))`, simple `d`-degenerate graphs.
    Degenerate,
    /// `sqrt(e (2Δ - 1))`, any graph of maximum degree `Δ`.
    MaxDegree,
    /// `sqrt(d) 2^(μ/2+2) sqrt(μ) sqrt(1 + ln((d+1) Δ))`, edge-multiplicity `μ`.
    Multiplicity { mu: usize },
    /// Same shape with restrictiveness `r` in place of `μ`.
    Restrictiveness { r: usize },
    /// `13 (1 + d ln(d Δ))` graphs in a family of `d`-degenerate graphs of
    /// maximum degree `Δ` suffice for a cooperative coloring.
    Cooperative,
}

impl BoundMode {
    /// Parses a CLI mode name, pulling `μ` or `r` from the optional arguments.
    pub fn from_name(name: &str, mu: Option<usize>, r: Option<usize>) -> Result<Self> {
        match name {
            "degenerate" => Ok(BoundMode::Degenerate),
            "max-degree" => Ok(BoundMode::MaxDegree),
            "multiplicity" => mu
                .map(|mu| BoundMode::Multiplicity { mu })
                .ok_or_else(|| Error::Domain("multiplicity mode needs --mu".into())),
            "restrictiveness" => r
                .map(|r| BoundMode::Restrictiveness { r })
                .ok_or_else(|| Error::Domain("restrictiveness mode needs --r".into())),
            "cooperative" => Ok(BoundMode::Cooperative),
            other => Err(Error::Domain(format!("unknown bound mode `{other}`"))),
        }
    }
}

impl fmt::Display for BoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundMode::Degenerate => f.write_str("degenerate"),
            BoundMode::MaxDegree => f.write_str("max-degree"),
            BoundMode::Multiplicity { mu } => write!(f, "multiplicity(mu={mu})"),
            BoundMode::Restrictiveness { r } => write!(f, "restrictiveness(r={r})"),
            BoundMode::Cooperative => f.write_str("cooperative"),
        }
    }
}

fn restrictive_bound(d: f64, delta: f64, r: f64) -> f64 {
    d.sqrt() * 2f64.powf(r / 2.0 + 2.0) * r.sqrt() * (1.0 + ((d + 1.0) * delta).ln()).sqrt()
}

/// The real-valued bound before rounding up.
pub fn bound_value(d: usize, delta: usize, mode: BoundMode) -> Result<f64> {
    if d == 0 || delta == 0 {
        return Err(Error::Domain(format!(
            "bounds need d >= 1 and delta >= 1, got d={d}, delta={delta}"
        )));
    }
    let (df, delta_f) = (d as f64, delta as f64);
    Ok(match mode {
        BoundMode::Degenerate => 2.0 * (df * (1.0 + ((df + 1.0) * delta_f).ln())).sqrt(),
        BoundMode::MaxDegree => (E * (2.0 * delta_f - 1.0)).sqrt(),
        BoundMode::Multiplicity { mu: x } | BoundMode::Restrictiveness { r: x } => {
            if x == 0 {
                return Err(Error::Domain(format!("{mode} needs a parameter >= 1")));
            }
            restrictive_bound(df, delta_f, x as f64)
        }
        BoundMode::Cooperative => 13.0 * (1.0 + df * (df * delta_f).ln()),
    })
}

pub fn min_colors_bound(d: usize, delta: usize, mode: BoundMode) -> Result<usize> {
    Ok(bound_value(d, delta, mode)?.ceil() as usize)
}
