//! Piecewise Chebyshev representation of functions on a bounded interval.
//!
//! A [`PiecewiseFn`] is a list of Chebyshev series on consecutive
//! subintervals. Construction samples the target at Chebyshev points of the
//! first kind (never at a piece's endpoints), doubles the sample count until
//! the coefficient tail drops below the tolerance, and bisects the
//! subinterval when that fails at the degree cap. Jumps and kinks are not
//! detected: callers declare them as breakpoints.

mod cheb;
pub mod roots;

use crate::error::{Error, Result};

pub use roots::{solve_bracketed, Root};

/// Default relative tolerance of [`build`].
pub const DEFAULT_TOL: f64 = 1e-13;

const MIN_POINTS: usize = 16;
const MAX_POINTS: usize = 256;
const MAX_DEPTH: usize = 40;

/// A closed, bounded interval with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(Error::InvalidInterval { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    fn reference_coord(&self, x: f64) -> f64 {
        ((2.0 * x - self.lo - self.hi) / (self.hi - self.lo)).clamp(-1.0, 1.0)
    }

    fn domain_coord(&self, t: f64) -> f64 {
        let x = self.lo + 0.5 * (t + 1.0) * (self.hi - self.lo);
        x.clamp(self.lo, self.hi)
    }
}

/// One Chebyshev series on its own interval.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPiece {
    interval: Interval,
    coeffs: Vec<f64>,
}

impl ChebPiece {
    pub fn new(interval: Interval, coeffs: Vec<f64>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![0.0] } else { coeffs };
        Self { interval, coeffs }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates the series; `x` is clamped into the piece's interval, so the
    /// endpoint values are this piece's one-sided limits.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        cheb::clenshaw(&self.coeffs, self.interval.reference_coord(x))
    }

    pub fn derivative(&self) -> ChebPiece {
        let scale = 2.0 / self.interval.width();
        let coeffs = cheb::derivative(&self.coeffs)
            .into_iter()
            .map(|c| c * scale)
            .collect();
        ChebPiece::new(self.interval, coeffs)
    }

    pub fn definite_integral(&self) -> f64 {
        0.5 * self.interval.width() * cheb::definite_integral(&self.coeffs)
    }

    /// Upper bound on `|f|` over the piece.
    fn magnitude_bound(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Interior points where the derivative changes sign, with the kind of
    /// extremum found there.
    pub fn stationary_points(&self) -> Vec<(f64, ExtremumKind)> {
        if self.coeffs.len() <= 2 {
            return Vec::new();
        }
        let d = self.derivative();
        let dd = d.derivative();
        let samples = (8 * self.coeffs.len()).max(64);
        let grid: Vec<(f64, f64)> = cheb::points(samples)
            .into_iter()
            .rev()
            .map(|t| {
                let x = self.interval.domain_coord(t);
                (x, d.eval(x))
            })
            .collect();
        let dscale = grid.iter().fold(0.0f64, |m, &(_, v)| m.max(v.abs()));
        if dscale == 0.0 {
            return Vec::new();
        }
        let noise = 1e-13 * dscale;
        let mut out = Vec::new();
        let mut last: Option<(f64, f64)> = None;
        for &(x, v) in &grid {
            if v.abs() <= noise {
                continue;
            }
            if let Some((xp, vp)) = last {
                if vp.signum() != v.signum() {
                    let root = solve_bracketed(|y| d.eval(y), |y| dd.eval(y), xp, x, 0.0, dscale);
                    let kind = if vp > 0.0 {
                        ExtremumKind::Max
                    } else {
                        ExtremumKind::Min
                    };
                    out.push((root.x, kind));
                }
            }
            last = Some((x, v));
        }
        out
    }

    /// Minimum and maximum of the piece, endpoints included.
    pub fn range(&self) -> (f64, f64) {
        let mut lo = self.eval(self.interval.lo).min(self.eval(self.interval.hi));
        let mut hi = self.eval(self.interval.lo).max(self.eval(self.interval.hi));
        for (x, _) in self.stationary_points() {
            let v = self.eval(x);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (lo, hi)
    }
}

/// Classification of a point returned by [`PiecewiseFn::local_extrema`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Min,
    Max,
    /// An end of the domain.
    Endpoint,
    /// An interior breakpoint that is neither a local minimum nor maximum.
    Breakpoint,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub location: f64,
    pub value: f64,
    pub kind: ExtremumKind,
}

/// Piecewise Chebyshev representation of a real function.
///
/// Right-continuous at interior breakpoints; the last piece owns the right
/// end of the domain. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseFn {
    pieces: Vec<ChebPiece>,
    edges: Vec<f64>,
}

impl PiecewiseFn {
    /// Assembles pieces that tile an interval, in order.
    pub fn from_pieces(pieces: Vec<ChebPiece>) -> Result<Self> {
        let first = pieces.first().ok_or(Error::InvalidInterval {
            lo: f64::NAN,
            hi: f64::NAN,
        })?;
        let mut edges = vec![first.interval.lo];
        for w in pieces.windows(2) {
            if w[0].interval.hi != w[1].interval.lo {
                return Err(Error::InvalidInterval {
                    lo: w[0].interval.hi,
                    hi: w[1].interval.lo,
                });
            }
        }
        edges.extend(pieces.iter().map(|p| p.interval.hi));
        Ok(Self { pieces, edges })
    }

    pub fn pieces(&self) -> &[ChebPiece] {
        &self.pieces
    }

    /// Piece boundaries, domain endpoints included.
    pub fn breakpoints(&self) -> &[f64] {
        &self.edges
    }

    pub fn domain(&self) -> Interval {
        Interval {
            lo: self.edges[0],
            hi: self.edges[self.edges.len() - 1],
        }
    }

    /// Index of the piece that owns `x` (clamped to the domain).
    pub fn piece_index(&self, x: f64) -> usize {
        let interior = &self.edges[1..self.edges.len() - 1];
        interior.partition_point(|&e| e <= x)
    }

    pub fn evaluate(&self, x: f64) -> Result<f64> {
        let d = self.domain();
        if !d.contains(x) {
            return Err(Error::OutOfDomain { x, lo: d.lo, hi: d.hi });
        }
        Ok(self.eval(x))
    }

    /// Evaluation without the domain check; `x` is clamped into the domain.
    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        self.pieces[self.piece_index(x)].eval(x)
    }

    pub fn derivative(&self) -> PiecewiseFn {
        Self {
            pieces: self.pieces.iter().map(ChebPiece::derivative).collect(),
            edges: self.edges.clone(),
        }
    }

    /// Indefinite integral, continuous across breakpoints and zero at `anchor`.
    pub fn antiderivative(&self, anchor: f64) -> Result<PiecewiseFn> {
        let d = self.domain();
        if !d.contains(anchor) {
            return Err(Error::OutOfDomain { x: anchor, lo: d.lo, hi: d.hi });
        }
        let mut offset = 0.0;
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let half = 0.5 * p.interval.width();
            let mut coeffs: Vec<f64> = cheb::integral(&p.coeffs).into_iter().map(|c| c * half).collect();
            coeffs[0] += offset;
            offset = cheb::clenshaw(&coeffs, 1.0);
            pieces.push(ChebPiece::new(p.interval, coeffs));
        }
        let mut out = Self {
            pieces,
            edges: self.edges.clone(),
        };
        let shift = out.eval(anchor);
        for p in &mut out.pieces {
            p.coeffs[0] -= shift;
        }
        Ok(out)
    }

    pub fn definite_integral(&self) -> f64 {
        self.pieces.iter().map(ChebPiece::definite_integral).sum()
    }

    /// Stationary points, breakpoints and domain endpoints, sorted by location.
    pub fn local_extrema(&self) -> Vec<Extremum> {
        let dom = self.domain();
        let mut out = vec![Extremum {
            location: dom.lo,
            value: self.eval(dom.lo),
            kind: ExtremumKind::Endpoint,
        }];
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                out.push(self.classify_breakpoint(i));
            }
            out.extend(p.stationary_points().into_iter().map(|(x, kind)| Extremum {
                location: x,
                value: p.eval(x),
                kind,
            }));
        }
        out.push(Extremum {
            location: dom.hi,
            value: self.eval(dom.hi),
            kind: ExtremumKind::Endpoint,
        });
        out
    }

    fn classify_breakpoint(&self, right: usize) -> Extremum {
        let (l, r) = (&self.pieces[right - 1], &self.pieces[right]);
        let b = r.interval.lo;
        let h = 1e-3 * l.interval.width().min(r.interval.width());
        let (vl, vr) = (l.eval(b), r.eval(b));
        let (before, after) = (l.eval(b - h), r.eval(b + h));
        let (top, bottom) = (vl.max(vr), vl.min(vr));
        let is_max = top >= before && top >= after;
        let is_min = bottom <= before && bottom <= after;
        let kind = match (is_max, is_min) {
            (true, false) => ExtremumKind::Max,
            (false, true) => ExtremumKind::Min,
            _ => ExtremumKind::Breakpoint,
        };
        Extremum { location: b, value: vr, kind }
    }

    /// All `y` with `f(y) = level`, sorted, with near-duplicates merged.
    pub fn roots_at_level(&self, level: f64) -> Vec<f64> {
        let mut roots = Vec::new();
        for p in &self.pieces {
            let d = p.derivative();
            let scale = p.magnitude_bound().max(level.abs());
            let mut cuts = vec![p.interval.lo];
            cuts.extend(p.stationary_points().into_iter().map(|(x, _)| x));
            cuts.push(p.interval.hi);
            for w in cuts.windows(2) {
                let (a, b) = (w[0], w[1]);
                let (fa, fb) = (p.eval(a), p.eval(b));
                if level < fa.min(fb) || level > fa.max(fb) {
                    continue;
                }
                let r = solve_bracketed(|y| p.eval(y), |y| d.eval(y), a, b, level, scale);
                roots.push(r.x);
            }
        }
        roots.sort_by(f64::total_cmp);
        let merge = 1e-12 * self.domain().width().max(1.0);
        roots.dedup_by(|b, a| (*b - *a).abs() <= merge);
        roots
    }

    /// Minimum and maximum over the domain, one-sided limits included.
    pub fn range(&self) -> (f64, f64) {
        self.pieces.iter().map(ChebPiece::range).fold(
            (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), (a, b)| (lo.min(a), hi.max(b)),
        )
    }

    /// Re-approximates the function on `[lo, hi]`, keeping each piece's own
    /// one-sided values at the cut points.
    pub fn restrict(&self, lo: f64, hi: f64) -> Result<PiecewiseFn> {
        let span = Interval::new(lo, hi)?;
        let dom = self.domain();
        if !dom.contains(lo) || !dom.contains(hi) {
            return Err(Error::OutOfDomain { x: lo, lo: dom.lo, hi: dom.hi });
        }
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let a = p.interval.lo.max(span.lo);
            let b = p.interval.hi.min(span.hi);
            if a >= b {
                continue;
            }
            let iv = Interval::new(a, b)?;
            fit(&|x| p.eval(x), iv, DEFAULT_TOL, p.magnitude_bound(), 0, &mut pieces)?;
        }
        Self::from_pieces(pieces)
    }
}

/// Builds an adaptive piecewise Chebyshev approximation of `f` on `domain`.
///
/// `breakpoints` are forced piece boundaries (known kinks or jumps); they
/// must lie strictly inside the domain. `f` is never evaluated at a piece
/// boundary.
pub fn build<F>(f: F, domain: Interval, breakpoints: &[f64], tol: f64) -> Result<PiecewiseFn>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::InvalidTolerance(tol));
    }
    let mut cuts = vec![domain.lo];
    let mut inner: Vec<f64> = breakpoints.to_vec();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    for &b in &inner {
        if !(b > domain.lo && b < domain.hi) {
            return Err(Error::InvalidBreakpoint(b));
        }
        cuts.push(b);
    }
    cuts.push(domain.hi);
    let mut pieces = Vec::new();
    for w in cuts.windows(2) {
        fit(&f, Interval::new(w[0], w[1])?, tol, 0.0, 0, &mut pieces)?;
    }
    PiecewiseFn::from_pieces(pieces)
}

fn fit<F>(f: &F, iv: Interval, tol: f64, scale: f64, depth: usize, out: &mut Vec<ChebPiece>) -> Result<()>
where
    F: Fn(f64) -> f64,
{
    let mut n = MIN_POINTS;
    let mut vscale = scale;
    loop {
        let mut values = Vec::with_capacity(n);
        for t in cheb::points(n) {
            let x = iv.domain_coord(t);
            let v = f(x);
            if !v.is_finite() {
                return Err(Error::NonFinite { x, value: v });
            }
            values.push(v);
        }
        vscale = values.iter().fold(vscale, |m, v| m.max(v.abs()));
        let coeffs = cheb::values_to_coeffs(&values);
        let threshold = tol * vscale;
        let tail = (n / 8).max(3);
        if coeffs[n - tail..].iter().all(|c| c.abs() <= threshold) {
            let len = cheb::trimmed_len(&coeffs, threshold);
            out.push(ChebPiece::new(iv, coeffs[..len].to_vec()));
            return Ok(());
        }
        if n >= MAX_POINTS {
            break;
        }
        n *= 2;
    }
    if depth >= MAX_DEPTH {
        return Err(Error::NoConvergence {
            lo: iv.lo,
            hi: iv.hi,
            depth,
        });
    }
    let mid = iv.midpoint();
    fit(f, Interval::new(iv.lo, mid)?, tol, vscale, depth + 1, out)?;
    fit(f, Interval::new(mid, iv.hi)?, tol, vscale, depth + 1, out)
}
