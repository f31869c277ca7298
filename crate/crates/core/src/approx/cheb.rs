//! Coefficient-level Chebyshev routines on the reference interval [-1, 1].

use std::f64::consts::PI;

/// Chebyshev points of the first kind, ordered from 1 down to -1.
///
/// The grid never touches +-1, so a piece can be sampled from a formula that
/// jumps at the piece's own endpoints. The sine form keeps the grid exactly
/// symmetric.
pub(crate) fn points(n: usize) -> Vec<f64> {
    let m = n as f64;
    (0..n)
        .map(|j| (PI * (m - 1.0 - 2.0 * j as f64) / (2.0 * m)).sin())
        .collect()
}

/// Values at [`points`] to Chebyshev coefficients (a direct DCT-II).
pub(crate) fn values_to_coeffs(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let table: Vec<f64> = (0..4 * n).map(|i| (PI * i as f64 / (2 * n) as f64).cos()).collect();
    let mut coeffs = vec![0.0; n];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let sum: f64 = values
            .iter()
            .enumerate()
            .map(|(j, v)| v * table[(k * (2 * j + 1)) % (4 * n)])
            .sum();
        *c = 2.0 * sum / n as f64;
    }
    coeffs[0] *= 0.5;
    coeffs
}

/// Clenshaw recurrence for `sum c_k T_k(t)`.
#[inline]
pub(crate) fn clenshaw(coeffs: &[f64], t: f64) -> f64 {
    let mut b1 = 0.0;
    let mut b2 = 0.0;
    let two_t = 2.0 * t;
    for &c in coeffs[1..].iter().rev() {
        let b0 = c + two_t * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + t * b1 - b2
}

/// Coefficients of the derivative with respect to `t`.
pub(crate) fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    if n <= 1 {
        return vec![0.0];
    }
    let mut d = vec![0.0; n - 1];
    for k in (1..n).rev() {
        let next = if k + 1 < n - 1 { d[k + 1] } else { 0.0 };
        d[k - 1] = next + 2.0 * k as f64 * coeffs[k];
    }
    d[0] *= 0.5;
    d
}

/// Coefficients of the antiderivative with respect to `t`, vanishing at t = -1.
pub(crate) fn integral(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len();
    let c = |j: usize| coeffs.get(j).copied().unwrap_or(0.0);
    let mut b = vec![0.0; n + 1];
    b[1] = c(0) - 0.5 * c(2);
    for (k, bk) in b.iter_mut().enumerate().skip(2) {
        *bk = (c(k - 1) - c(k + 1)) / (2.0 * k as f64);
    }
    // T_k(-1) = (-1)^k
    let at_minus_one: f64 = b
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, v)| if k % 2 == 0 { *v } else { -*v })
        .sum();
    b[0] = -at_minus_one;
    b
}

/// Integral over [-1, 1].
pub(crate) fn definite_integral(coeffs: &[f64]) -> f64 {
    coeffs
        .iter()
        .enumerate()
        .step_by(2)
        .map(|(k, c)| 2.0 * c / (1.0 - (k * k) as f64))
        .sum()
}

/// Length after dropping trailing coefficients at or below `threshold` (at least 1).
pub(crate) fn trimmed_len(coeffs: &[f64], threshold: f64) -> usize {
    coeffs
        .iter()
        .rposition(|c| c.abs() > threshold)
        .map_or(1, |i| i + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interpolate(f: impl Fn(f64) -> f64, n: usize) -> Vec<f64> {
        let v: Vec<f64> = points(n).into_iter().map(f).collect();
        values_to_coeffs(&v)
    }

    #[test]
    fn reproduces_chebyshev_basis() {
        // T_3(t) = 4t^3 - 3t
        let c = interpolate(|t| 4.0 * t * t * t - 3.0 * t, 9);
        for (k, v) in c.iter().enumerate() {
            let expected = if k == 3 { 1.0 } else { 0.0 };
            assert!((v - expected).abs() < 1e-14, "c[{k}] = {v}");
        }
    }

    #[test]
    fn points_are_symmetric_and_interior() {
        let p = points(17);
        assert_eq!(p[8], 0.0);
        assert!(p[0] < 1.0 && p[16] > -1.0);
        for j in 0..17 {
            assert_eq!(p[j], -p[16 - j]);
        }
    }

    #[test]
    fn calculus_on_a_cubic() {
        let f = |t: f64| t * t * t - 2.0 * t + 0.5;
        let c = interpolate(f, 9);
        let d = derivative(&c);
        let i = integral(&c);
        for &t in &[-0.9, -0.1, 0.3, 0.77] {
            assert!((clenshaw(&d, t) - (3.0 * t * t - 2.0)).abs() < 1e-13);
            let exact = |t: f64| t.powi(4) / 4.0 - t * t + 0.5 * t;
            assert!((clenshaw(&i, t) - (exact(t) - exact(-1.0))).abs() < 1e-13);
        }
        assert!((definite_integral(&c) - 1.0).abs() < 1e-14);
        assert!(clenshaw(&i, -1.0).abs() < 1e-15);
    }
}
