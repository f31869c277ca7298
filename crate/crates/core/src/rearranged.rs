//! The distribution function of `p(X)`: `R(x) = ∫_{p(y) <= x} p(y) dy`.
//!
//! For piecewise-smooth densities the support is cut at the local extrema of
//! `p` into monotone pieces. Each piece carries the indefinite integral of
//! `p` anchored at its low-density end, so the mass of `{p <= x}` inside the
//! piece is the absolute value of that integral at the point where `p`
//! crosses `x`. Summing over pieces gives `R(x)`.
//!
//! Repeated evaluation goes through a Chebyshev representation built on each
//! interval between consecutive piece extreme values, in the variable
//! `θ` with `x = a + (b - a) sin²(θ/2)`. Square-root behaviour of `R` at
//! smooth extrema of `p` becomes analytic in `θ`.
//!
//! Piecewise-constant densities skip all of this: `R` is a finite sum of
//! atoms read from the level table.

use crate::approx::{build, solve_bracketed, Interval, PiecewiseFn};
use crate::density::Density;
use crate::error::{Error, Result};

/// A piece is flat when `p` varies by at most this much over it.
pub const FLAT_TOL: f64 = 1e-12;
/// Flat pieces lighter than this are not reported as atoms.
pub const ATOM_MIN_MASS: f64 = 1e-12;
/// Arguments within this distance of an atom's level are read as the level.
pub const ATOM_SNAP: f64 = 1e-12;
/// Relative accuracy of the fast representation.
pub const REPR_TOL: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Nondecreasing,
    Nonincreasing,
}

/// A subinterval on which `p` is monotone.
#[derive(Debug, Clone)]
pub struct MonotonePiece {
    interval: Interval,
    direction: Direction,
    flat: bool,
    p_lo: f64,
    p_hi: f64,
    pdf: PiecewiseFn,
    slope: PiecewiseFn,
    antiderivative: PiecewiseFn,
    mass: f64,
}

impl MonotonePiece {
    fn new(pdf: PiecewiseFn) -> Result<Self> {
        let interval = pdf.domain();
        let first = pdf.pieces()[0].eval(interval.lo()).max(0.0);
        let last = pdf.pieces()[pdf.pieces().len() - 1].eval(interval.hi()).max(0.0);
        let (min, max) = pdf.range();
        let flat = max - min <= FLAT_TOL;
        let direction = if flat || last >= first {
            Direction::Nondecreasing
        } else {
            Direction::Nonincreasing
        };
        let slope = pdf.derivative();
        if !flat {
            check_monotone(&slope, direction)?;
        }
        let anchor = match direction {
            Direction::Nondecreasing => interval.lo(),
            Direction::Nonincreasing => interval.hi(),
        };
        let antiderivative = pdf.antiderivative(anchor)?;
        let far = match direction {
            Direction::Nondecreasing => interval.hi(),
            Direction::Nonincreasing => interval.lo(),
        };
        let mass = antiderivative.eval(far).abs();
        Ok(Self {
            interval,
            direction,
            flat,
            p_lo: first.min(last),
            p_hi: first.max(last),
            pdf,
            slope,
            antiderivative,
            mass,
        })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// True when `p` is constant on the piece (to [`FLAT_TOL`]).
    pub fn is_flat(&self) -> bool {
        self.flat
    }

    /// Density value at the low-density end.
    pub fn p_lo(&self) -> f64 {
        self.p_lo
    }

    /// Density value at the high-density end.
    pub fn p_hi(&self) -> f64 {
        self.p_hi
    }

    /// The density restricted to this piece.
    pub fn pdf(&self) -> &PiecewiseFn {
        &self.pdf
    }

    /// Indefinite integral of `p`, zero at the low-density end.
    pub fn antiderivative(&self) -> &PiecewiseFn {
        &self.antiderivative
    }

    /// Probability mass of the piece.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The point `y` of the piece with `p(y) = x`.
    ///
    /// Ten bisections, then up to five Newton steps, reverting to bisection
    /// when Newton leaves the bracket or misses machine accuracy.
    pub fn invert(&self, x: f64) -> Result<f64> {
        if !(x >= self.p_lo && x <= self.p_hi) {
            return Err(Error::LevelOutOfRange {
                level: x,
                min: self.p_lo,
                max: self.p_hi,
            });
        }
        Ok(self.solve(x))
    }

    fn solve(&self, x: f64) -> f64 {
        if self.flat {
            return self.interval.lo();
        }
        let (lo, hi) = (self.interval.lo(), self.interval.hi());
        solve_bracketed(|y| self.pdf.eval(y), |y| self.slope.eval(y), lo, hi, x, self.p_hi).x
    }

    /// Mass of `{p <= x}` within the piece.
    pub fn mass_at_or_below(&self, x: f64) -> f64 {
        if x >= self.p_hi {
            self.mass
        } else if x <= self.p_lo || self.flat {
            0.0
        } else {
            self.antiderivative.eval(self.solve(x)).abs().min(self.mass)
        }
    }

    /// Mass of `{p < x}` within the piece.
    pub fn mass_below(&self, x: f64) -> f64 {
        if x > self.p_hi {
            self.mass
        } else if x <= self.p_lo || self.flat {
            0.0
        } else {
            self.antiderivative.eval(self.solve(x)).abs().min(self.mass)
        }
    }
}

fn check_monotone(slope: &PiecewiseFn, direction: Direction) -> Result<()> {
    for p in slope.pieces() {
        let iv = p.interval();
        let n = (4 * p.coeffs().len()).max(16);
        let values: Vec<(f64, f64)> = (0..=n)
            .map(|j| {
                let x = iv.lo() + iv.width() * j as f64 / n as f64;
                (x, p.eval(x))
            })
            .collect();
        let scale = values.iter().fold(0.0f64, |m, (_, v)| m.max(v.abs()));
        let allowed = 1e-8 * scale;
        let wrong = values.iter().any(|&(_, v)| match direction {
            Direction::Nondecreasing => v < -allowed,
            Direction::Nonincreasing => v > allowed,
        });
        if wrong {
            return Err(Error::NotMonotone { lo: iv.lo(), hi: iv.hi() });
        }
    }
    Ok(())
}

/// Cuts the support at the local extrema of `p` into monotone pieces, each
/// with its integral anchored at the low-density end.
///
/// Adjacent segments are merged when they share a direction and `p` is
/// continuous across the junction.
pub fn monotone_partition(d: &Density) -> Result<Vec<MonotonePiece>> {
    let pdf = d.pdf();
    let scale = d.sup().max(f64::MIN_POSITIVE);
    // (lo, hi, value at lo, value at hi)
    let mut segments: Vec<(f64, f64, f64, f64)> = Vec::new();
    for p in pdf.pieces() {
        let iv = p.interval();
        let mut cuts = vec![iv.lo()];
        cuts.extend(p.stationary_points().into_iter().map(|(x, _)| x));
        cuts.push(iv.hi());
        for w in cuts.windows(2) {
            if w[1] > w[0] {
                segments.push((w[0], w[1], p.eval(w[0]), p.eval(w[1])));
            }
        }
    }
    let trend = |s: &(f64, f64, f64, f64)| {
        if (s.3 - s.2).abs() <= FLAT_TOL {
            0
        } else if s.3 > s.2 {
            1
        } else {
            -1
        }
    };
    let mut groups: Vec<(f64, f64, f64, i32, f64)> = Vec::new(); // lo, hi, end value, trend, start value
    for s in &segments {
        let t = trend(s);
        match groups.last_mut() {
            Some(g) if g.3 == t && (g.2 - s.2).abs() <= 1e-10 * scale && (t != 0 || (g.4 - s.2).abs() <= FLAT_TOL) => {
                g.1 = s.1;
                g.2 = s.3;
            }
            _ => groups.push((s.0, s.1, s.3, t, s.2)),
        }
    }
    groups
        .into_iter()
        .map(|(lo, hi, ..)| MonotonePiece::new(pdf.restrict(lo, hi)?))
        .collect()
}

/// A level carrying positive probability: `R` jumps by `mass` at `level`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub level: f64,
    pub mass: f64,
}

#[derive(Debug, Clone)]
struct LevelRepr {
    /// Sorted breakpoints in x.
    levels: Vec<f64>,
    /// One function of θ on [0, π] per interval between levels, if the fit
    /// converged there.
    fns: Vec<Option<PiecewiseFn>>,
    /// Exact values at the levels.
    at_levels: Vec<f64>,
}

#[derive(Debug, Clone)]
enum Kind {
    Smooth {
        pieces: Vec<MonotonePiece>,
        repr: Option<LevelRepr>,
    },
    /// Level values and the cumulative mass up to and including each.
    Exact { values: Vec<f64>, cumulative: Vec<f64> },
}

/// The distribution function of `p(X)` for `X` drawn from `p`.
///
/// Right-continuous; left limits are available through
/// [`RearrangedDF::left_limit`].
#[derive(Debug, Clone)]
pub struct RearrangedDF {
    kind: Kind,
    atoms: Vec<Atom>,
    max_p: f64,
}

impl RearrangedDF {
    pub fn build(d: &Density) -> Result<Self> {
        if let Some(levels) = d.levels() {
            let mut values = Vec::with_capacity(levels.len());
            let mut cumulative = Vec::with_capacity(levels.len());
            let mut acc = 0.0;
            for l in levels {
                acc += l.mass();
                values.push(l.value);
                cumulative.push(acc);
            }
            let atoms = levels
                .iter()
                .filter(|l| l.mass() > 0.0)
                .map(|l| Atom {
                    level: l.value,
                    mass: l.mass(),
                })
                .collect();
            return Ok(Self {
                kind: Kind::Exact { values, cumulative },
                atoms,
                max_p: d.sup(),
            });
        }

        let pieces = monotone_partition(d)?;
        let max_p = pieces.iter().fold(0.0f64, |m, p| m.max(p.p_hi));
        let mut flat: Vec<Atom> = pieces
            .iter()
            .filter(|p| p.flat)
            .map(|p| Atom {
                level: p.p_hi,
                mass: p.mass,
            })
            .collect();
        flat.sort_by(|a, b| a.level.total_cmp(&b.level));
        let mut atoms: Vec<Atom> = Vec::new();
        for a in flat {
            match atoms.last_mut() {
                Some(last) if (a.level - last.level).abs() <= ATOM_SNAP => last.mass += a.mass,
                _ => atoms.push(a),
            }
        }
        atoms.retain(|a| a.mass > ATOM_MIN_MASS);

        let mut out = Self {
            kind: Kind::Smooth { pieces, repr: None },
            atoms,
            max_p,
        };
        let repr = out.build_repr();
        if let Kind::Smooth { repr: slot, .. } = &mut out.kind {
            *slot = repr;
        }
        Ok(out)
    }

    fn build_repr(&self) -> Option<LevelRepr> {
        let Kind::Smooth { pieces, .. } = &self.kind else {
            return None;
        };
        let mut levels: Vec<f64> = pieces.iter().flat_map(|p| [p.p_lo, p.p_hi]).collect();
        levels.sort_by(f64::total_cmp);
        let merge = 1e-12 * self.max_p;
        levels.dedup_by(|b, a| *b - *a <= merge);
        let theta = Interval::new(0.0, std::f64::consts::PI).ok()?;
        let mut fns = Vec::with_capacity(levels.len().saturating_sub(1));
        for w in levels.windows(2) {
            let (a, b) = (w[0], w[1]);
            let g = |t: f64| {
                let s = (0.5 * t).sin();
                self.eval_exact(a + (b - a) * s * s)
            };
            fns.push(build(g, theta, &[], REPR_TOL).ok());
        }
        let at_levels = levels.iter().map(|&l| self.eval_exact(l)).collect();
        Some(LevelRepr {
            levels,
            fns,
            at_levels,
        })
    }

    /// Monotone pieces (empty for piecewise-constant densities).
    pub fn pieces(&self) -> &[MonotonePiece] {
        match &self.kind {
            Kind::Smooth { pieces, .. } => pieces,
            Kind::Exact { .. } => &[],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    /// Supremum of `p`; `R(x) = 1` from here on.
    pub fn max_p(&self) -> f64 {
        self.max_p
    }

    pub fn is_continuous(&self) -> bool {
        self.atoms.is_empty()
    }

    /// True when evaluation goes through the Chebyshev representation.
    pub fn has_representation(&self) -> bool {
        matches!(&self.kind, Kind::Smooth { repr: Some(_), .. })
    }

    /// `R(x)`; negative `x` is an error.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::NegativeArgument(x));
        }
        Ok(self.value(x))
    }

    /// `lim_{t↑x} R(t)`; negative `x` is an error.
    pub fn eval_left_limit(&self, x: f64) -> Result<f64> {
        if x < 0.0 || x.is_nan() {
            return Err(Error::NegativeArgument(x));
        }
        Ok(self.left_limit(x))
    }

    fn snap(&self, x: f64) -> (f64, f64) {
        let i = self.atoms.partition_point(|a| a.level < x - ATOM_SNAP);
        match self.atoms.get(i) {
            Some(a) if (a.level - x).abs() <= ATOM_SNAP => (a.level, a.mass),
            _ => (x, 0.0),
        }
    }

    /// `R(x)` without argument checks (0 for `x < 0`).
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        if x >= self.max_p {
            return 1.0;
        }
        let (x, _) = self.snap(x);
        match &self.kind {
            Kind::Exact { values, cumulative } => {
                let i = values.partition_point(|&v| v <= x);
                if i == 0 {
                    0.0
                } else {
                    cumulative[i - 1].clamp(0.0, 1.0)
                }
            }
            Kind::Smooth { repr: Some(r), .. } => r.eval(x).unwrap_or_else(|| self.eval_exact(x)),
            Kind::Smooth { repr: None, .. } => self.eval_exact(x),
        }
    }

    /// Left limit of `R` at `x`: `R(x)` minus any atom at `x`.
    #[inline]
    pub fn left_limit(&self, x: f64) -> f64 {
        if x > self.max_p {
            return 1.0;
        }
        let (x, atom) = self.snap(x);
        if let Kind::Exact { values, cumulative } = &self.kind {
            let i = values.partition_point(|&v| v < x);
            return if i == 0 { 0.0 } else { cumulative[i - 1].clamp(0.0, 1.0) };
        }
        if atom == 0.0 {
            return self.value(x);
        }
        let full = if x >= self.max_p { self.total_mass() } else { self.value(x) };
        (full - atom).clamp(0.0, 1.0)
    }

    fn total_mass(&self) -> f64 {
        self.pieces().iter().map(|p| p.mass).sum()
    }

    /// `R(x)` by direct summation over monotone pieces with one root solve
    /// per piece straddling `x`, bypassing the representation.
    pub fn eval_exact(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Exact { .. } => self.value(x),
            Kind::Smooth { pieces, .. } => {
                if x >= self.max_p {
                    return 1.0;
                }
                let (x, _) = self.snap(x);
                pieces.iter().map(|p| p.mass_at_or_below(x)).sum::<f64>().clamp(0.0, 1.0)
            }
        }
    }

    /// Left limit by direct summation.
    pub fn left_limit_exact(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Exact { .. } => self.left_limit(x),
            Kind::Smooth { pieces, .. } => {
                if x > self.max_p {
                    return 1.0;
                }
                let (x, _) = self.snap(x);
                pieces.iter().map(|p| p.mass_below(x)).sum::<f64>().clamp(0.0, 1.0)
            }
        }
    }
}

impl LevelRepr {
    /// `None` where the fit on the containing interval did not converge.
    #[inline]
    fn eval(&self, x: f64) -> Option<f64> {
        let levels = &self.levels;
        if x < levels[0] {
            return Some(0.0);
        }
        let j = levels[1..].partition_point(|&l| l <= x);
        if j >= self.fns.len() {
            // at or above the top level
            return Some(1.0);
        }
        let (a, b) = (levels[j], levels[j + 1]);
        if x == a {
            return Some(self.at_levels[j]);
        }
        let s = ((x - a) / (b - a)).clamp(0.0, 1.0);
        let theta = if s <= 0.5 {
            2.0 * s.sqrt().asin()
        } else {
            std::f64::consts::PI - 2.0 * (1.0 - s).sqrt().asin()
        };
        self.fns[j].as_ref().map(|f| f.eval(theta).clamp(0.0, 1.0))
    }
}
