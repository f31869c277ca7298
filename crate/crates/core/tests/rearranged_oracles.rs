use std::f64::consts::PI;

use gof_core::approx::DEFAULT_TOL;
use gof_core::rearranged::monotone_partition;
use gof_core::suites::{self, NAMES};
use gof_core::{build, Density, Error, Hypothesis, Interval, RearrangedDF};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape(x: f64) -> f64 {
    (-x.abs()).exp() * (2.0 + (13.0 * PI * x).cos() + (39.0 * PI * x).cos())
}

/// `∫_0^t shape` from the closed form of `∫ e^{-s} cos(ωs) ds`.
fn shape_integral(t: f64) -> f64 {
    let damped = |w: f64, x: f64| ((-x).exp() * (-(w * x).cos() + w * (w * x).sin()) + 1.0) / (1.0 + w * w);
    let a = t.abs();
    let v = 2.0 * (1.0 - (-a).exp()) + damped(13.0 * PI, a) + damped(39.0 * PI, a);
    v.copysign(t)
}

/// Mass of `{c · shape <= x}` on [-1, 1]: sign changes of `c · shape - x`
/// bracketed on a 10^6-point grid, refined by bisection, and the closed-form
/// integral summed over the sublevel segments.
fn smooth_oracle(c: f64, x: f64) -> f64 {
    let p = |y: f64| c * shape(y);
    let m = 1_000_000;
    let mut cuts = vec![-1.0];
    for i in 0..m {
        let a = -1.0 + 2.0 * i as f64 / m as f64;
        let b = -1.0 + 2.0 * (i + 1) as f64 / m as f64;
        if (p(a) > x) != (p(b) > x) {
            let (mut lo, mut hi) = (a, b);
            let s = p(lo) > x;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if (p(mid) > x) == s {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            cuts.push(0.5 * (lo + hi));
        }
    }
    cuts.push(1.0);
    cuts.windows(2)
        .filter(|w| p(0.5 * (w[0] + w[1])) <= x)
        .map(|w| c * (shape_integral(w[1]) - shape_integral(w[0])))
        .sum()
}

fn near_atom(r: &RearrangedDF, x: f64) -> bool {
    r.atoms().iter().any(|a| (a.level - x).abs() <= 1e-12)
}

#[test]
fn closed_form_agreement() {
    for name in ["sawtooth", "step", "step2", "bimodal"] {
        let s = suites::builtin(name).unwrap();
        let r = s.hypothesis().unwrap().rearranged();
        let exact = s.rearranged_analytic.unwrap();
        let top = 1.05 * r.max_p();
        let mut worst: f64 = 0.0;
        for i in 0..=10_000 {
            let x = top * i as f64 / 10_000.0;
            if near_atom(r, x) {
                continue;
            }
            worst = worst.max((r.eval(x).unwrap() - exact(x)).abs());
        }
        assert!(worst <= 1e-8, "{name}: {worst:e}");
    }
}

#[test]
fn step_atoms_are_exact() {
    let step = suites::builtin("step").unwrap().hypothesis().unwrap().rearranged();
    let atoms: Vec<(f64, f64)> = step.atoms().iter().map(|a| (a.level, a.mass)).collect();
    assert_eq!(atoms.len(), 2);
    assert_eq!(atoms[0].0, 1e-6);
    assert!((atoms[0].1 - 1e-3).abs() < 1e-15);
    assert_eq!(atoms[1].0, 1e-3);
    assert!((atoms[1].1 - 0.999).abs() < 1e-12);
    assert_eq!(step.eval(5e-7).unwrap(), 0.0);
    assert!((step.eval(1e-6).unwrap() - 1e-3).abs() < 1e-15);
    assert_eq!(step.eval(1e-3).unwrap(), 1.0);
    assert!((step.eval_left_limit(1e-3).unwrap() - 1e-3).abs() < 1e-15);

    let step2 = suites::builtin("step2").unwrap().hypothesis().unwrap().rearranged();
    assert_eq!(step2.atoms().len(), 1);
    assert_eq!(step2.atoms()[0].level, 0.1);
    assert!((step2.atoms()[0].mass - 1.0).abs() < 1e-15);
    assert_eq!(step2.eval_left_limit(0.1).unwrap(), 0.0);
    assert_eq!(step2.eval(0.1).unwrap(), 1.0);
}

#[test]
fn smooth_matches_level_set_oracle() {
    let s = suites::builtin("smooth").unwrap();
    let r = s.hypothesis().unwrap().rearranged();
    let c = suites::smooth_constant();
    for i in 0..20 {
        let x = r.max_p() * (i as f64 + 0.5) / 20.0;
        let oracle = smooth_oracle(c, x);
        let got = r.eval(x).unwrap();
        assert!((got - oracle).abs() <= 1e-6, "x = {x}: {got} vs {oracle}");
        assert!((r.eval_exact(x) - oracle).abs() <= 1e-6);
    }
}

#[test]
fn partition_shapes() {
    let saw = monotone_partition(&suites::builtin("sawtooth").unwrap().p).unwrap();
    assert_eq!(saw.len(), 1000);
    let bi = monotone_partition(&suites::builtin("bimodal").unwrap().p).unwrap();
    assert_eq!(bi.len(), 4);
    let smooth = monotone_partition(&suites::builtin("smooth").unwrap().p).unwrap();
    for w in smooth.windows(2) {
        assert_eq!(w[0].interval().hi(), w[1].interval().lo());
        assert_ne!(w[0].direction(), w[1].direction());
    }
    for piece in &smooth {
        let anchor = match piece.direction() {
            gof_core::Direction::Nondecreasing => piece.interval().lo(),
            gof_core::Direction::Nonincreasing => piece.interval().hi(),
        };
        assert!(piece.antiderivative().eval(anchor).abs() < 1e-15);
    }
}

#[test]
fn smooth_piece_inversion_residual() {
    let p = &suites::builtin("smooth").unwrap().p;
    let pieces = monotone_partition(p).unwrap();
    let piece = pieces.iter().find(|q| q.interval().contains(0.5)).unwrap();
    let level = if (piece.p_lo()..=piece.p_hi()).contains(&0.3) {
        0.3
    } else {
        0.5 * (piece.p_lo() + piece.p_hi())
    };
    let y = piece.invert(level).unwrap();
    assert!((p.pdf_at(y) - level).abs() <= 1e-12, "{}", p.pdf_at(y) - level);
    assert!(matches!(piece.invert(piece.p_hi() + 0.1), Err(Error::LevelOutOfRange { .. })));
}

#[test]
fn monotone_and_normalized() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in NAMES {
        let r = suites::builtin(name).unwrap().hypothesis().unwrap().rearranged();
        assert_eq!(r.eval(0.0).unwrap(), 0.0, "{name}");
        assert!((r.eval(r.max_p()).unwrap() - 1.0).abs() <= 1e-9, "{name}");
        for _ in 0..1000 {
            let a = 1.1 * r.max_p() * rng.random::<f64>();
            let b = 1.1 * r.max_p() * rng.random::<f64>();
            let (a, b) = (a.min(b), a.max(b));
            assert!(r.value(a) <= r.value(b), "{name}: {a} {b}");
            assert!(r.left_limit(a) <= r.value(a));
        }
        assert!(r.eval(-1.0).is_err());
    }
}

#[test]
fn continuous_left_limits_equal_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for name in ["sawtooth", "bimodal", "smooth"] {
        let r = suites::builtin(name).unwrap().hypothesis().unwrap().rearranged();
        assert!(r.is_continuous(), "{name}");
        for _ in 0..1000 {
            let x = 1.1 * r.max_p() * rng.random::<f64>();
            assert_eq!(r.left_limit(x), r.value(x));
        }
    }
}

#[test]
fn rearrangement_identity_for_increasing_density() {
    // p(x) = 2x on [0, 1]: R(p(x)) = P(x) = x^2
    let pdf = build(|x| 2.0 * x, Interval::new(0.0, 1.0).unwrap(), &[], DEFAULT_TOL).unwrap();
    let d = Density::validate("ramp", pdf).unwrap();
    let h = Hypothesis::new(d).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let x: f64 = rng.random();
        assert!((h.tail(x) - h.cdf().eval(x)).abs() <= 1e-9);
        assert!((h.tail(x) - x * x).abs() <= 1e-9);
    }
}

#[test]
fn null_draws_are_uniformized() {
    let n = 100_000;
    let band = 3.0 / (n as f64).sqrt();
    for (i, name) in NAMES.iter().enumerate() {
        let s = suites::builtin(name).unwrap();
        let h = s.hypothesis().unwrap();
        let draws = s.p.sample(n, 500 + i as u64);
        let mut u: Vec<f64> = draws.draws().iter().map(|&x| h.tail(x)).collect();
        u.sort_by(f64::total_cmp);
        let nf = n as f64;
        // ecdf(t) <= t + band everywhere
        let above = u
            .iter()
            .enumerate()
            .map(|(k, &t)| (k + 1) as f64 / nf - t)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(above <= band, "{name}: {above}");
        if h.rearranged().is_continuous() {
            let below = u
                .iter()
                .enumerate()
                .map(|(k, &t)| t - k as f64 / nf)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!(below <= band, "{name}: {below}");
        }
    }
}
