//! The five example studies: a null density `p`, an alternative `q`, and
//! closed-form `P` and `R` for cross-checking the numerical constructions.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::approx::{build, Interval, DEFAULT_TOL};
use crate::density::{Density, Step};
use crate::error::{Error, Result};
use crate::stats::Hypothesis;

pub const NAMES: [&str; 5] = ["sawtooth", "step", "step2", "bimodal", "smooth"];

/// One example study.
#[derive(Debug)]
pub struct ExampleSuite {
    pub name: &'static str,
    /// Null density.
    pub p: Density,
    /// Alternative density.
    pub q: Density,
    /// Closed-form CDF of `p`.
    pub cdf_analytic: fn(f64) -> f64,
    /// Closed-form distribution of `p(X)`, where one exists.
    pub rearranged_analytic: Option<fn(f64) -> f64>,
    pub notes: &'static str,
    hypothesis: OnceLock<Hypothesis>,
}

impl ExampleSuite {
    /// CDF and rearranged distribution of `p`, built on first use.
    pub fn hypothesis(&self) -> Result<&Hypothesis> {
        if let Some(h) = self.hypothesis.get() {
            return Ok(h);
        }
        let h = Hypothesis::new(self.p.clone())?;
        Ok(self.hypothesis.get_or_init(|| h))
    }
}

/// Looks up a suite by name. Suites are built once and shared.
pub fn builtin(name: &str) -> Result<&'static ExampleSuite> {
    static CELLS: [OnceLock<ExampleSuite>; 5] = [const { OnceLock::new() }; 5];
    let Some(i) = NAMES.iter().position(|n| *n == name) else {
        return Err(Error::UnknownSuite {
            name: name.to_string(),
            available: NAMES.join(", "),
        });
    };
    if let Some(s) = CELLS[i].get() {
        return Ok(s);
    }
    let suite = match i {
        0 => sawtooth(),
        1 => step(),
        2 => step2(),
        3 => bimodal(),
        _ => smooth(),
    }?;
    Ok(CELLS[i].get_or_init(|| suite))
}

fn suite(
    name: &'static str,
    p: Density,
    q: Density,
    cdf_analytic: fn(f64) -> f64,
    rearranged_analytic: Option<fn(f64) -> f64>,
    notes: &'static str,
) -> ExampleSuite {
    ExampleSuite {
        name,
        p,
        q,
        cdf_analytic,
        rearranged_analytic,
        notes,
        hypothesis: OnceLock::new(),
    }
}

fn uniform(name: &str, lo: f64, hi: f64) -> Result<Density> {
    Density::from_steps(
        name,
        &[Step {
            lo,
            hi,
            value: 1.0 / (hi - lo),
        }],
    )
}

fn integer_breaks(lo: i32, hi: i32) -> Vec<f64> {
    (lo + 1..hi).map(f64::from).collect()
}

fn sawtooth() -> Result<ExampleSuite> {
    let dom = Interval::new(0.0, 1000.0)?;
    let pdf = build(|x| 2e-3 * (x - x.floor()), dom, &integer_breaks(0, 1000), DEFAULT_TOL)?;
    Ok(suite(
        "sawtooth",
        Density::validate("sawtooth", pdf)?,
        uniform("uniform(0,1000)", 0.0, 1000.0)?,
        |x| {
            if x <= 0.0 {
                0.0
            } else if x >= 1000.0 {
                1.0
            } else {
                let k = x.floor();
                1e-3 * (x - k).powi(2) + 1e-3 * k
            }
        },
        Some(|x| if x >= 2e-3 { 1.0 } else { 1e6 * x * x / 4.0 }),
        "U misses the uniform alternative; V and W flag it from n = 1e3",
    ))
}

fn step() -> Result<ExampleSuite> {
    let steps: Vec<Step> = (0..1999)
        .map(|j| Step {
            lo: f64::from(j),
            hi: f64::from(j + 1),
            value: if j % 2 == 0 { 1e-6 } else { 1e-3 },
        })
        .collect();
    Ok(suite(
        "step",
        Density::from_steps("step", &steps)?,
        uniform("uniform(0,1999)", 0.0, 1999.0)?,
        |x| {
            if x <= 0.0 {
                return 0.0;
            }
            if x >= 1999.0 {
                return 1.0;
            }
            let j = x.floor();
            if j % 2.0 == 0.0 {
                // x in [2k, 2k+1]
                let k = j / 2.0;
                1e-6 * (x - k) + 1e-3 * k
            } else {
                let k = (j + 1.0) / 2.0;
                1e-6 * k + 1e-3 * (x - k)
            }
        },
        Some(|x| {
            if x < 1e-6 {
                0.0
            } else if x < 1e-3 {
                1e-3
            } else {
                1.0
            }
        }),
        "V flags the uniform alternative from n = 1e2; W cannot, since n * 1e-3 is no small number",
    ))
}

fn step2() -> Result<ExampleSuite> {
    let steps: Vec<Step> = (0..19)
        .map(|j| Step {
            lo: f64::from(j),
            hi: f64::from(j + 1),
            value: if j % 2 == 0 { 0.1 } else { 0.0 },
        })
        .collect();
    Ok(suite(
        "step2",
        Density::from_steps("step2", &steps)?,
        uniform("uniform(0,19)", 0.0, 19.0)?,
        |x| {
            if x <= 0.0 {
                return 0.0;
            }
            if x >= 19.0 {
                return 1.0;
            }
            let j = x.floor();
            let k = (j / 2.0).floor();
            if j % 2.0 == 0.0 {
                (x - k) / 10.0
            } else {
                (k + 1.0) / 10.0
            }
        },
        Some(|x| if x < 0.1 { 0.0 } else { 1.0 }),
        "W is exactly 0 for the alternative: any draw in a gap has density 0",
    ))
}

fn bimodal() -> Result<ExampleSuite> {
    let dom = Interval::new(0.0, 202.0)?;
    let p = build(
        |x| {
            if x < 100.0 {
                x / 10100.0
            } else if x < 101.0 {
                (101.0 - x) / 101.0
            } else if x < 102.0 {
                (x - 101.0) / 101.0
            } else {
                (202.0 - x) / 10100.0
            }
        },
        dom,
        &[100.0, 101.0, 102.0],
        DEFAULT_TOL,
    )?;
    let q = build(
        |x| if x < 101.0 { x / 10201.0 } else { (202.0 - x) / 10201.0 },
        dom,
        &[101.0],
        DEFAULT_TOL,
    )?;
    Ok(suite(
        "bimodal",
        Density::validate("bimodal", p)?,
        Density::validate("unimodal", q)?,
        |x| {
            if x <= 0.0 {
                0.0
            } else if x <= 100.0 {
                x * x / 20200.0
            } else if x <= 101.0 {
                (-10100.0 + 202.0 * x - x * x) / 202.0
            } else if x <= 102.0 {
                (10302.0 - 202.0 * x + x * x) / 202.0
            } else if x < 202.0 {
                (-20604.0 + 404.0 * x - x * x) / 20200.0
            } else {
                1.0
            }
        },
        Some(|x| if x >= 1.0 / 101.0 { 1.0 } else { (101.0 * x).powi(2) }),
        "U catches the unimodal alternative at n = 1e5, W from n = 1e4, V lags behind",
    ))
}

fn smooth_integrand(x: f64) -> f64 {
    (-x.abs()).exp() * (2.0 + (13.0 * PI * x).cos() + (39.0 * PI * x).cos())
}

/// Normalizing constant of the smooth example, `1 / ∫ e^{-|x|}(2 + cos 13πx + cos 39πx)`
/// over [-1, 1].
pub fn smooth_constant() -> f64 {
    static C: OnceLock<f64> = OnceLock::new();
    *C.get_or_init(|| {
        let dom = Interval::new(-1.0, 1.0).expect("valid interval");
        let f = build(smooth_integrand, dom, &[0.0], DEFAULT_TOL).expect("smooth integrand converges");
        1.0 / f.definite_integral()
    })
}

/// `∫_0^x e^{-t} cos(ωt) dt`.
fn damped_cos_integral(omega: f64, x: f64) -> f64 {
    let e = (-x).exp();
    (e * (-(omega * x).cos() + omega * (omega * x).sin()) + 1.0) / (1.0 + omega * omega)
}

/// `∫_0^x` of the smooth integrand for `x` in [0, 1].
fn smooth_half_integral(x: f64) -> f64 {
    2.0 * (1.0 - (-x).exp()) + damped_cos_integral(13.0 * PI, x) + damped_cos_integral(39.0 * PI, x)
}

fn smooth() -> Result<ExampleSuite> {
    let c = smooth_constant();
    let dom = Interval::new(-1.0, 1.0)?;
    let p = build(|x| c * smooth_integrand(x), dom, &[0.0], DEFAULT_TOL)?;
    let norm = 2.0 - 2.0 * (-1.0f64).exp();
    let q = build(|x| (-x.abs()).exp() / norm, dom, &[0.0], DEFAULT_TOL)?;
    Ok(suite(
        "smooth",
        Density::validate("smooth", p)?,
        Density::validate("laplace", q)?,
        |x| {
            let c = smooth_constant();
            let half = smooth_half_integral(1.0);
            if x <= -1.0 {
                0.0
            } else if x >= 1.0 {
                1.0
            } else if x < 0.0 {
                c * (half - smooth_half_integral(-x))
            } else {
                c * (half + smooth_half_integral(x))
            }
        },
        None,
        "V flags the Laplace-shaped alternative from n = 1e2, U only from n = 1e4",
    ))
}
