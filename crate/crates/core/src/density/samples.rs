use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

/// A set of draws with the provenance needed to replay it.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    draws: Vec<f64>,
    seed: Option<u64>,
    source: String,
    generator: Option<String>,
}

impl SampleSet {
    pub fn new(draws: Vec<f64>, source: impl Into<String>) -> Self {
        Self {
            draws,
            seed: None,
            source: source.into(),
            generator: None,
        }
    }

    pub fn with_provenance(mut self, seed: u64, generator: impl Into<String>) -> Self {
        self.seed = Some(seed);
        self.generator = Some(generator.into());
        self
    }

    pub fn n(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn draws(&self) -> &[f64] {
        &self.draws
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn generator(&self) -> Option<&str> {
        self.generator.as_deref()
    }

    /// Parses the samples file format: one real per line; `#` lines may carry
    /// `key=value` metadata (`seed`, `source`, `generator`).
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SampleSet::new(Vec::new(), "file");
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((key, value)) = comment.trim().split_once('=') {
                    let value = value.trim();
                    match key.trim() {
                        "seed" => {
                            out.seed = Some(value.parse().map_err(|_| Error::Parse {
                                line: i + 1,
                                message: format!("bad seed {value:?}"),
                            })?)
                        }
                        "source" => out.source = value.to_string(),
                        "generator" => out.generator = Some(value.to_string()),
                        _ => {}
                    }
                }
                continue;
            }
            let x: f64 = line.parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("expected a real number, found {line:?}"),
            })?;
            if !x.is_finite() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("non-finite draw {line:?}"),
                });
            }
            out.draws.push(x);
        }
        Ok(out)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Renders the samples file format; draws use the shortest exact repr.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "# seed={seed}");
        }
        let _ = writeln!(s, "# source={}", self.source);
        if let Some(g) = &self.generator {
            let _ = writeln!(s, "# generator={g}");
        }
        for x in &self.draws {
            let _ = writeln!(s, "{x:?}");
        }
        s
    }
}
