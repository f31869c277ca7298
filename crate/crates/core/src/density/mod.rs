//! Validated densities on a bounded interval, their cumulative distribution
//! functions and inverse-CDF sampling.

mod samples;
pub mod spec;

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::approx::{solve_bracketed, ChebPiece, Interval, PiecewiseFn};
use crate::error::{Error, Result};

pub use samples::SampleSet;

/// Name of the uniform generator behind [`Density::sample`], recorded in
/// sample metadata and reports.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Largest accepted deviation of the total mass from 1.
pub const MASS_TOL: f64 = 1e-10;

/// Values in `[-NEGATIVE_TOL, 0)` are read as 0.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// A constant stretch of a piecewise-constant density.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// A density value together with the total length on which it is taken.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub value: f64,
    pub length: f64,
}

impl Level {
    pub fn mass(&self) -> f64 {
        self.value * self.length
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DensityKind {
    SmoothPiecewise,
    /// Carries the exact step and level tables.
    PiecewiseConstant { steps: Vec<Step>, levels: Vec<Level> },
}

/// A probability density, checked for nonnegativity and unit mass.
#[derive(Debug, Clone)]
pub struct Density {
    name: String,
    pdf: PiecewiseFn,
    support: Interval,
    kind: DensityKind,
    sup: f64,
    mass: f64,
}

impl Density {
    /// Certifies `pdf` as a density. The mass is checked, never renormalized.
    ///
    /// A representation whose pieces are all constant is treated as
    /// piecewise-constant and gets exact level tables.
    pub fn validate(name: impl Into<String>, pdf: PiecewiseFn) -> Result<Self> {
        if pdf.pieces().iter().all(|p| p.degree() == 0) {
            let steps: Vec<Step> = pdf
                .pieces()
                .iter()
                .map(|p| Step {
                    lo: p.interval().lo(),
                    hi: p.interval().hi(),
                    value: p.coeffs()[0],
                })
                .collect();
            return Self::from_steps(name, &steps);
        }
        let (x, min) = lowest_point(&pdf);
        if min < -NEGATIVE_TOL {
            return Err(Error::NegativeDensity { x, value: min });
        }
        let mass = pdf.definite_integral();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::MassMismatch { mass });
        }
        let sup = pdf.range().1.max(0.0);
        Ok(Self {
            name: name.into(),
            support: pdf.domain(),
            pdf,
            kind: DensityKind::SmoothPiecewise,
            sup,
            mass,
        })
    }

    /// A piecewise-constant density from consecutive steps.
    pub fn from_steps(name: impl Into<String>, steps: &[Step]) -> Result<Self> {
        let mut clean = Vec::with_capacity(steps.len());
        for s in steps {
            Interval::new(s.lo, s.hi)?;
            if s.value < -NEGATIVE_TOL || !s.value.is_finite() {
                return Err(Error::NegativeDensity {
                    x: 0.5 * (s.lo + s.hi),
                    value: s.value,
                });
            }
            clean.push(Step { value: s.value.max(0.0), ..*s });
        }
        let pieces = clean
            .iter()
            .map(|s| Ok(ChebPiece::new(Interval::new(s.lo, s.hi)?, vec![s.value])))
            .collect::<Result<Vec<_>>>()?;
        let pdf = PiecewiseFn::from_pieces(pieces)?;
        let levels = level_table(&clean);
        let mass: f64 = levels.iter().map(Level::mass).sum();
        if (mass - 1.0).abs() > MASS_TOL {
            return Err(Error::MassMismatch { mass });
        }
        let sup = levels.last().map_or(0.0, |l| l.value);
        Ok(Self {
            name: name.into(),
            support: pdf.domain(),
            pdf,
            kind: DensityKind::PiecewiseConstant { steps: clean, levels },
            sup,
            mass,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pdf(&self) -> &PiecewiseFn {
        &self.pdf
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn kind(&self) -> &DensityKind {
        &self.kind
    }

    /// Supremum of the density.
    pub fn sup(&self) -> f64 {
        self.sup
    }

    /// Total mass as computed at validation.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Sorted level table for piecewise-constant densities.
    pub fn levels(&self) -> Option<&[Level]> {
        match &self.kind {
            DensityKind::PiecewiseConstant { levels, .. } => Some(levels),
            DensityKind::SmoothPiecewise => None,
        }
    }

    /// Density value, 0 outside the support and tiny negative values clipped.
    #[inline]
    pub fn pdf_at(&self, x: f64) -> f64 {
        if !self.support.contains(x) {
            return 0.0;
        }
        self.pdf.eval(x).max(0.0)
    }

    pub fn cdf(&self) -> Cdf {
        Cdf::new(self)
    }

    /// Smallest `x` with `cdf(x) >= u`.
    pub fn quantile(&self, u: f64) -> f64 {
        self.cdf().quantile(u)
    }

    /// `n` inverse-CDF draws from a generator seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> SampleSet {
        self.cdf().sample(n, seed, &self.name)
    }
}

fn level_table(steps: &[Step]) -> Vec<Level> {
    let mut levels: Vec<Level> = steps
        .iter()
        .map(|s| Level {
            value: s.value,
            length: s.hi - s.lo,
        })
        .collect();
    levels.sort_by(|a, b| a.value.total_cmp(&b.value));
    let mut merged: Vec<Level> = Vec::new();
    for l in levels {
        match merged.last_mut() {
            Some(m) if m.value == l.value => m.length += l.length,
            _ => merged.push(l),
        }
    }
    merged
}

fn lowest_point(pdf: &PiecewiseFn) -> (f64, f64) {
    let mut best = (pdf.domain().lo(), f64::INFINITY);
    for p in pdf.pieces() {
        let iv = p.interval();
        let candidates = [iv.lo(), iv.hi()]
            .into_iter()
            .chain(p.stationary_points().into_iter().map(|(x, _)| x));
        for x in candidates {
            let v = p.eval(x);
            if v < best.1 {
                best = (x, v);
            }
        }
    }
    best
}

/// Cumulative distribution function of a [`Density`].
#[derive(Debug, Clone)]
pub struct Cdf {
    func: PiecewiseFn,
    pdf: PiecewiseFn,
    /// Value of the CDF at each piece boundary.
    edge_values: Vec<f64>,
    /// Step heights, for exact inversion of piecewise-constant densities.
    steps: Option<Vec<f64>>,
}

impl Cdf {
    fn new(d: &Density) -> Self {
        match &d.kind {
            DensityKind::PiecewiseConstant { steps, .. } => {
                let mut edge_values = Vec::with_capacity(steps.len() + 1);
                let mut acc = 0.0;
                edge_values.push(acc);
                let mut pieces = Vec::with_capacity(steps.len());
                for s in steps {
                    let next = acc + s.value * (s.hi - s.lo);
                    let iv = Interval::new(s.lo, s.hi).expect("validated step");
                    pieces.push(ChebPiece::new(iv, vec![0.5 * (acc + next), 0.5 * (next - acc)]));
                    edge_values.push(next);
                    acc = next;
                }
                Self {
                    func: PiecewiseFn::from_pieces(pieces).expect("steps tile the support"),
                    pdf: d.pdf.clone(),
                    edge_values,
                    steps: Some(steps.iter().map(|s| s.value).collect()),
                }
            }
            DensityKind::SmoothPiecewise => {
                let func = d
                    .pdf
                    .antiderivative(d.support.lo())
                    .expect("support start lies in the domain");
                let mut edge_values: Vec<f64> = func.pieces().iter().map(|p| p.eval(p.interval().lo())).collect();
                edge_values.push(func.eval(d.support.hi()));
                Self {
                    func,
                    pdf: d.pdf.clone(),
                    edge_values,
                    steps: None,
                }
            }
        }
    }

    pub fn function(&self) -> &PiecewiseFn {
        &self.func
    }

    pub fn domain(&self) -> Interval {
        self.func.domain()
    }

    /// `P(x)`, 0 left of the support, 1 right of it, clamped to [0, 1].
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        let d = self.func.domain();
        if x <= d.lo() {
            0.0
        } else if x >= d.hi() {
            1.0
        } else {
            self.func.eval(x).clamp(0.0, 1.0)
        }
    }

    /// Smallest `x` with `P(x) >= u`; `u` is clamped to [0, 1].
    pub fn quantile(&self, u: f64) -> f64 {
        let edges = self.func.breakpoints();
        if u.is_nan() || u <= 0.0 {
            return edges[0];
        }
        let u = u.min(1.0);
        let last = edges.len() - 2;
        let i = self.edge_values[1..].partition_point(|&c| c < u).min(last);
        if self.edge_values[i] >= u {
            return edges[i];
        }
        let (a, b) = (edges[i], edges[i + 1]);
        if let Some(values) = &self.steps {
            let x = a + (u - self.edge_values[i]) / values[i];
            return x.clamp(a, b);
        }
        let piece = &self.func.pieces()[i];
        let density = &self.pdf.pieces()[i];
        solve_bracketed(|y| piece.eval(y), |y| density.eval(y), a, b, u, 1.0).x
    }

    /// `n` draws by inversion of uniforms from a seeded [`RNG_NAME`] stream.
    pub fn sample(&self, n: usize, seed: u64, source: &str) -> SampleSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let draws = (0..n)
            .map(|_| self.quantile(rng.sample::<f64, _>(Open01)))
            .collect();
        SampleSet::new(draws, source).with_provenance(seed, RNG_NAME)
    }
}
