//! Safeguarded bisection/Newton solver for monotone brackets.

/// Bisection steps taken before Newton is tried.
pub const BISECTIONS_BEFORE_NEWTON: usize = 10;
/// Newton steps allowed before reverting to bisection.
pub const MAX_NEWTON_STEPS: usize = 5;

/// Outcome of a bracketed solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    /// True when the Newton phase met the accuracy target.
    pub newton_converged: bool,
}

/// Solves `f(x) = target` on `[lo, hi]`, where `f - target` changes sign.
///
/// Ten bisections shrink the bracket, then up to five Newton steps start
/// from its midpoint. A Newton iterate that leaves the bracket, or five
/// steps that do not reach a residual within ten ulps of `scale`, hand
/// control back to bisection, which runs until the bracket has shrunk to
/// `2^-51` of its initial width.
///
/// `scale` is the magnitude the residual is measured against, usually the
/// largest of `|f|` over the bracket. When the bracket does not straddle the
/// target the endpoint with the smaller residual is returned.
pub fn solve_bracketed<F, D>(f: F, df: D, lo: f64, hi: f64, target: f64, scale: f64) -> Root
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let g = |x: f64| f(x) - target;
    let (mut a, mut b) = (lo, hi);
    let (ga, gb) = (g(a), g(b));
    if ga == 0.0 {
        return Root { x: a, residual: 0.0, newton_converged: false };
    }
    if gb == 0.0 {
        return Root { x: b, residual: 0.0, newton_converged: false };
    }
    if ga.signum() == gb.signum() {
        let (x, r) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
        return Root { x, residual: r, newton_converged: false };
    }
    let rising = gb > 0.0;
    let accuracy = 10.0 * f64::EPSILON * scale.abs().max(target.abs()).max(f64::MIN_POSITIVE);
    let width0 = b - a;

    // Moves the bracket end on the same side of the root as x.
    let shrink = |a: &mut f64, b: &mut f64, x: f64, gx: f64| {
        if (gx > 0.0) == rising {
            *b = x;
        } else {
            *a = x;
        }
    };

    for _ in 0..BISECTIONS_BEFORE_NEWTON {
        let mid = 0.5 * (a + b);
        let gm = g(mid);
        if gm == 0.0 {
            return Root { x: mid, residual: 0.0, newton_converged: false };
        }
        shrink(&mut a, &mut b, mid, gm);
    }

    let mut x = 0.5 * (a + b);
    for _ in 0..MAX_NEWTON_STEPS {
        let gx = g(x);
        if gx.abs() <= accuracy {
            return Root { x, residual: gx, newton_converged: true };
        }
        shrink(&mut a, &mut b, x, gx);
        let slope = df(x);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - gx / slope;
        if !(next > a && next < b) {
            break;
        }
        x = next;
    }
    let gx = g(x);
    if gx.abs() <= accuracy {
        return Root { x, residual: gx, newton_converged: true };
    }
    if x > a && x < b {
        shrink(&mut a, &mut b, x, gx);
    }

    let floor = width0 * 2f64.powi(-51);
    loop {
        let mid = 0.5 * (a + b);
        if b - a <= floor || mid <= a || mid >= b {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Root { x: mid, residual: 0.0, newton_converged: false };
        }
        shrink(&mut a, &mut b, mid, gm);
    }
    let (ga, gb) = (g(a), g(b));
    let (x, residual) = if ga.abs() <= gb.abs() { (a, ga) } else { (b, gb) };
    Root { x, residual, newton_converged: false }
}
