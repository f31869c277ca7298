//! Text format for density specifications.
//!
//! A spec is either a single line `builtin:<name>` (optionally
//! `builtin:<name>:alt` for a suite's alternative density), or a piecewise
//! definition:
//!
//! ```text
//! support 0 2
//! 0 1 0.25 0.25
//! 1 2 0.75
//! ```
//!
//! Each piece line is `lo hi c0 c1 ...`, the Chebyshev coefficients of the
//! density on `[lo, hi]`. Pieces must tile the support in order. Blank lines
//! and `#` comments are ignored.

use std::path::Path;

use crate::approx::{ChebPiece, Interval, PiecewiseFn};
use crate::density::Density;
use crate::error::{Error, Result};
use crate::suites;

#[derive(Debug, Clone, PartialEq)]
pub enum DensitySpec {
    Builtin { name: String, alternative: bool },
    Piecewise { support: Interval, pieces: Vec<ChebPiece> },
}

impl DensitySpec {
    pub fn parse(text: &str) -> Result<Self> {
        let mut support = None;
        let mut pieces = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: line_no, message };
            if let Some(rest) = line.strip_prefix("builtin:") {
                if support.is_some() || !pieces.is_empty() {
                    return Err(bad("builtin spec mixed with a piecewise definition".into()));
                }
                let (name, alternative) = match rest.strip_suffix(":alt") {
                    Some(n) => (n, true),
                    None => (rest, false),
                };
                return Ok(Self::Builtin {
                    name: name.trim().to_string(),
                    alternative,
                });
            }
            let fields = line
                .split_whitespace()
                .skip_while(|f| *f == "support")
                .map(|f| f.parse::<f64>().map_err(|_| bad(format!("not a number: {f:?}"))))
                .collect::<Result<Vec<f64>>>()?;
            if line.starts_with("support") {
                if fields.len() != 2 {
                    return Err(bad("expected `support lo hi`".into()));
                }
                let iv = Interval::new(fields[0], fields[1]).map_err(|e| bad(e.to_string()))?;
                support = Some(iv);
                continue;
            }
            if support.is_none() {
                return Err(bad("piece given before the `support lo hi` header".into()));
            }
            if fields.len() < 3 {
                return Err(bad("expected `lo hi c0 [c1 ...]`".into()));
            }
            let iv = Interval::new(fields[0], fields[1]).map_err(|e| bad(e.to_string()))?;
            if let Some(prev) = pieces.last().map(|p: &ChebPiece| p.interval().hi()) {
                if prev != iv.lo() {
                    return Err(bad(format!("piece starts at {} but the previous one ends at {prev}", iv.lo())));
                }
            } else if Some(iv.lo()) != support.map(|s| s.lo()) {
                return Err(bad("first piece must start at the support's lower end".into()));
            }
            pieces.push(ChebPiece::new(iv, fields[2..].to_vec()));
        }
        let support = support.ok_or(Error::Parse {
            line: 0,
            message: "missing `support lo hi` header".into(),
        })?;
        match pieces.last() {
            Some(p) if p.interval().hi() == support.hi() => Ok(Self::Piecewise { support, pieces }),
            _ => Err(Error::Parse {
                line: text.lines().count(),
                message: "pieces do not reach the support's upper end".into(),
            }),
        }
    }

    /// Builds and validates the density.
    pub fn to_density(&self, label: &str) -> Result<Density> {
        match self {
            Self::Builtin { name, alternative } => {
                let suite = suites::builtin(name)?;
                Ok(if *alternative { suite.q.clone() } else { suite.p.clone() })
            }
            Self::Piecewise { pieces, .. } => Density::validate(label, PiecewiseFn::from_pieces(pieces.clone())?),
        }
    }
}

/// Resolves a `--density` argument: an inline `builtin:` spec or a path to a
/// spec file.
pub fn load(arg: &str) -> Result<Density> {
    if arg.trim_start().starts_with("builtin:") {
        return DensitySpec::parse(arg)?.to_density(arg);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path)?;
    let label = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("density")
        .to_string();
    DensitySpec::parse(&text)?.to_density(&label)
}
