//! Goodness-of-fit statistics: the Kuiper statistic `U` on `X`, its
//! counterpart `V` on `p(X)`, the minimum-tail statistic `W`, and averages
//! of `R(p(X_k))`.

mod report;

use std::f64::consts::LN_10;

use crate::density::{Cdf, Density, SampleSet};
use crate::error::{Error, Result};
use crate::rearranged::RearrangedDF;

pub use report::TestReport;

/// A null density with its CDF and rearranged distribution, built once.
#[derive(Debug, Clone)]
pub struct Hypothesis {
    density: Density,
    cdf: Cdf,
    rearranged: RearrangedDF,
}

impl Hypothesis {
    pub fn new(density: Density) -> Result<Self> {
        let cdf = density.cdf();
        let rearranged = RearrangedDF::build(&density)?;
        Ok(Self {
            density,
            cdf,
            rearranged,
        })
    }

    pub fn density(&self) -> &Density {
        &self.density
    }

    pub fn cdf(&self) -> &Cdf {
        &self.cdf
    }

    pub fn rearranged(&self) -> &RearrangedDF {
        &self.rearranged
    }

    /// `R(p(x))`. Points outside the support have `p = 0`.
    #[inline]
    pub fn tail(&self, x: f64) -> f64 {
        self.rearranged.value(self.density.pdf_at(x))
    }
}

/// A Kuiper statistic together with its one-sided parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KuiperResult {
    /// `√n (max(d_plus, 0) + max(d_minus, 0))`.
    pub statistic: f64,
    pub d_plus: f64,
    pub d_minus: f64,
    pub n: usize,
    pub log10_pvalue: f64,
}

impl KuiperResult {
    fn new(d_plus: f64, d_minus: f64, n: usize) -> Self {
        let statistic = (n as f64).sqrt() * (d_plus.max(0.0) + d_minus.max(0.0));
        Self {
            statistic,
            d_plus,
            d_minus,
            n,
            log10_pvalue: kuiper_log10_pvalue(statistic, n),
        }
    }
}

/// Kuiper deviations from sorted `(left limit, value)` pairs of the
/// hypothesized distribution at the order statistics.
fn kuiper_sorted(pairs: impl ExactSizeIterator<Item = (f64, f64)>) -> KuiperResult {
    let n = pairs.len();
    let nf = n as f64;
    let mut d_plus = f64::NEG_INFINITY;
    let mut d_minus = f64::NEG_INFINITY;
    for (k, (left, right)) in pairs.enumerate() {
        d_plus = d_plus.max(left - k as f64 / nf);
        d_minus = d_minus.max((k + 1) as f64 / nf - right);
    }
    KuiperResult::new(d_plus, d_minus, n)
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_unstable_by(f64::total_cmp);
    v
}

/// The classical Kuiper statistic `U` of the draws against `cdf`.
pub fn kuiper_u(s: &SampleSet, cdf: &Cdf) -> Result<KuiperResult> {
    if s.is_empty() {
        return Err(Error::EmptySample);
    }
    let u = sorted(s.draws().iter().map(|&x| cdf.eval(x)).collect());
    Ok(kuiper_sorted(u.iter().map(|&u| (u, u))))
}

/// Kuiper statistic of values in [0, 1] against the uniform distribution.
pub fn kuiper_uniform(values: &[f64]) -> Result<KuiperResult> {
    if values.is_empty() {
        return Err(Error::EmptySample);
    }
    let u = sorted(values.iter().map(|u| u.clamp(0.0, 1.0)).collect());
    Ok(kuiper_sorted(u.iter().map(|&u| (u, u))))
}

/// The Kuiper statistic `V` of `p(X_k)` against `R`.
///
/// Left limits of `R` enter the upper deviation, so atoms of `p(X)` are
/// handled exactly.
pub fn kuiper_v(s: &SampleSet, h: &Hypothesis) -> Result<KuiperResult> {
    if s.is_empty() {
        return Err(Error::EmptySample);
    }
    let r = h.rearranged();
    let t = sorted(s.draws().iter().map(|&x| h.density.pdf_at(x)).collect());
    Ok(kuiper_sorted(t.iter().map(|&t| (r.left_limit(t), r.value(t)))))
}

/// Asymptotic Kuiper tail probability, as a base-10 logarithm.
///
/// Uses `λ = stat (1 + 0.155/√n + 0.24/n)` and
/// `Q(λ) = 2 Σ (4j²λ² - 1) exp(-2j²λ²)`, summed relative to the leading term
/// for large `λ` so that levels far below `f64::MIN_POSITIVE` are reported.
pub fn kuiper_log10_pvalue(statistic: f64, n: usize) -> f64 {
    if statistic.is_nan() || statistic <= 0.0 || n == 0 {
        return 0.0;
    }
    let sn = (n as f64).sqrt();
    let lambda = statistic * (1.0 + 0.155 / sn + 0.24 / n as f64);
    if lambda < 0.4 {
        return 0.0;
    }
    let l2 = lambda * lambda;
    if lambda < 1.0 {
        let mut q = 0.0;
        for j in 1..=100 {
            let jj = (j * j) as f64;
            let term = (4.0 * jj * l2 - 1.0) * (-2.0 * jj * l2).exp();
            q += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        return (2.0 * q).clamp(f64::MIN_POSITIVE, 1.0).log10();
    }
    let lead = 4.0 * l2 - 1.0;
    let mut rest = 0.0;
    for j in 2..=100 {
        let jj = (j * j) as f64;
        let ratio = (4.0 * jj * l2 - 1.0) / lead * (-2.0 * (jj - 1.0) * l2).exp();
        rest += ratio;
        if ratio.abs() < 1e-18 {
            break;
        }
    }
    let ln_q = (2.0 * lead).ln() - 2.0 * l2 + rest.ln_1p();
    (ln_q / LN_10).min(0.0)
}

/// The minimum-tail statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WResult {
    /// `n min_k R(p(X_k))`.
    pub w: f64,
    pub n: usize,
    /// Index of the first draw attaining the minimum.
    pub min_index: usize,
    /// `1 - w` when `w <= 1`, else 0.
    pub confidence_lower_bound: f64,
}

pub fn w_statistic(s: &SampleSet, h: &Hypothesis) -> Result<WResult> {
    if s.is_empty() {
        return Err(Error::EmptySample);
    }
    let (min_index, min) = s
        .draws()
        .iter()
        .map(|&x| h.tail(x))
        .enumerate()
        .fold((0, f64::INFINITY), |best, (i, v)| if v < best.1 { (i, v) } else { best });
    let n = s.n();
    let w = n as f64 * min;
    Ok(WResult {
        w,
        n,
        min_index,
        confidence_lower_bound: if w <= 1.0 { (1.0 - w).max(0.0) } else { 0.0 },
    })
}

/// Upper bound `1 - (1 - x/n)^n` on the null probability of `W <= x`.
pub fn w_tail_bound(x: f64, n: usize) -> Result<f64> {
    let nf = n as f64;
    if n == 0 || !(0.0..=nf).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            expected: "a value in [0, n]",
        });
    }
    Ok((-(nf * (-x / nf).ln_1p()).exp_m1()).clamp(0.0, 1.0))
}

/// The largest `x` with `w_tail_bound(x, n) <= alpha`: `n - n (1 - alpha)^{1/n}`.
pub fn w_threshold(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            expected: "a value in (0, 1/2)",
        });
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if n == 1 {
        return Ok(alpha);
    }
    let nf = n as f64;
    Ok(-nf * ((-alpha).ln_1p() / nf).exp_m1())
}

/// The average of `R(p(X_k))`.
pub fn w_tilde(s: &SampleSet, h: &Hypothesis) -> Result<f64> {
    generalized_average(s, h, &Average::Arithmetic)
}

/// `f((1/n) Σ g(R(p(X_k))))` for a pair of maps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Average {
    /// `f = g = identity`.
    Arithmetic,
    /// `f = exp`, `g = ln`.
    Geometric,
    /// `f(x) = 1 - x^{1/q}`, `g(x) = (1 - x)^q`.
    Power(f64),
}

impl Average {
    pub fn outer(&self, x: f64) -> f64 {
        match *self {
            Average::Arithmetic => x,
            Average::Geometric => x.exp(),
            Average::Power(q) => 1.0 - x.powf(1.0 / q),
        }
    }

    pub fn inner(&self, x: f64) -> f64 {
        match *self {
            Average::Arithmetic => x,
            Average::Geometric => x.ln(),
            Average::Power(q) => (1.0 - x).powf(q),
        }
    }
}

/// Evaluates `avg` over the sample; a non-finite inner term is an error
/// naming the draw that produced it.
pub fn generalized_average(s: &SampleSet, h: &Hypothesis, avg: &Average) -> Result<f64> {
    average_of(s.draws(), |x| h.tail(x), |v| avg.inner(v), |m| avg.outer(m))
}

/// `f((1/n) Σ g(score(x_k)))` for arbitrary maps.
pub fn average_of(
    draws: &[f64],
    score: impl Fn(f64) -> f64,
    g: impl Fn(f64) -> f64,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    if draws.is_empty() {
        return Err(Error::EmptySample);
    }
    let mut sum = 0.0;
    for (index, &draw) in draws.iter().enumerate() {
        let value = g(score(draw));
        if !value.is_finite() {
            return Err(Error::NonFiniteTerm { index, draw, value });
        }
        sum += value;
    }
    Ok(f(sum / draws.len() as f64))
}
