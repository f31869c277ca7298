//! Scoring a sample file against a density.

use std::path::Path;

use anyhow::{bail, Context};
use gof_core::density::spec;
use gof_core::stats::{kuiper_u, kuiper_v, w_statistic, w_tilde};
use gof_core::{Hypothesis, SampleSet, TestReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatKind {
    U,
    V,
    W,
    WTilde,
}

/// Parses a comma-separated list such as `u,v,w,wtilde`.
pub fn parse_stats(list: &str) -> anyhow::Result<Vec<StatKind>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let k = match item.to_ascii_lowercase().as_str() {
            "u" => StatKind::U,
            "v" => StatKind::V,
            "w" => StatKind::W,
            "wtilde" | "w~" => StatKind::WTilde,
            _ => bail!("unknown statistic {item:?}; expected u, v, w or wtilde"),
        };
        if !out.contains(&k) {
            out.push(k);
        }
    }
    if out.is_empty() {
        bail!("no statistics requested");
    }
    Ok(out)
}

/// Reads the samples and the density and computes the requested statistics.
///
/// Draws outside the support count as `p(X) = 0`; the report records how
/// many there were.
pub fn run_test(samples: &Path, density: &str, stats: &[StatKind]) -> anyhow::Result<TestReport> {
    let s = SampleSet::read(samples).with_context(|| format!("reading samples from {}", samples.display()))?;
    if s.is_empty() {
        bail!("{} contains no draws", samples.display());
    }
    let d = spec::load(density).with_context(|| format!("loading density {density}"))?;
    let h = Hypothesis::new(d)?;
    score(&s, &h, stats)
}

/// Statistics of an in-memory sample.
pub fn score(s: &SampleSet, h: &Hypothesis, stats: &[StatKind]) -> anyhow::Result<TestReport> {
    let support = h.density().support();
    let mut report = TestReport {
        density: h.density().name().to_string(),
        source: s.source().to_string(),
        seed: s.seed(),
        generator: s.generator().map(str::to_string),
        n: s.n(),
        outside_support: s.draws().iter().filter(|&&x| !support.contains(x)).count(),
        atoms: !h.rearranged().is_continuous(),
        ..Default::default()
    };
    for k in stats {
        match k {
            StatKind::U => report.u = Some(kuiper_u(s, h.cdf())?),
            StatKind::V => report.v = Some(kuiper_v(s, h)?),
            StatKind::W => report.w = Some(w_statistic(s, h)?),
            StatKind::WTilde => report.w_tilde = Some(w_tilde(s, h)?),
        }
    }
    Ok(report)
}
