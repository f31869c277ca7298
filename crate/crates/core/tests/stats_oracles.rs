use gof_core::approx::DEFAULT_TOL;
use gof_core::stats::{
    generalized_average, kuiper_log10_pvalue, kuiper_u, kuiper_uniform, kuiper_v, w_statistic, w_tail_bound,
    w_threshold, w_tilde, Average,
};
use gof_core::suites::{self, NAMES};
use gof_core::{build, Density, Hypothesis, Interval, SampleSet};

fn median(mut v: Vec<f64>) -> f64 {
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

#[test]
fn v_equals_u_of_transformed_sample_when_continuous() {
    for name in ["sawtooth", "bimodal", "smooth"] {
        let s = suites::builtin(name).unwrap();
        let h = s.hypothesis().unwrap();
        for (seed, d) in [(1, &s.p), (2, &s.q)] {
            let draws = d.sample(2000, seed);
            let v = kuiper_v(&draws, h).unwrap();
            let t: Vec<f64> = draws.draws().iter().map(|&x| h.tail(x)).collect();
            let u = kuiper_uniform(&t).unwrap();
            assert_eq!(v.statistic, u.statistic, "{name}");
            assert_eq!((v.d_plus, v.d_minus), (u.d_plus, u.d_minus));
        }
    }
}

#[test]
fn statistics_ignore_sample_order() {
    for name in NAMES {
        let s = suites::builtin(name).unwrap();
        let h = s.hypothesis().unwrap();
        let draws = s.q.sample(500, 77);
        let mut shuffled = draws.draws().to_vec();
        shuffled.reverse();
        shuffled.rotate_left(123);
        let other = SampleSet::new(shuffled, "shuffled");
        assert_eq!(kuiper_u(&draws, h.cdf()).unwrap().statistic, kuiper_u(&other, h.cdf()).unwrap().statistic);
        assert_eq!(kuiper_v(&draws, h).unwrap().statistic, kuiper_v(&other, h).unwrap().statistic);
        assert_eq!(w_statistic(&draws, h).unwrap().w, w_statistic(&other, h).unwrap().w);
        let a = w_tilde(&draws, h).unwrap();
        let b = w_tilde(&other, h).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}

#[test]
fn null_u_rarely_exceeds_two() {
    let s = suites::builtin("sawtooth").unwrap();
    let h = s.hypothesis().unwrap();
    let over = (0..1000)
        .filter(|&i| kuiper_u(&s.p.sample(1000, 10_000 + i), h.cdf()).unwrap().statistic > 2.0)
        .count();
    assert!(over <= 20, "{over} of 1000");
}

#[test]
fn step_null_v_is_small() {
    let s = suites::builtin("step").unwrap();
    let h = s.hypothesis().unwrap();
    let v: Vec<f64> = (0..100).map(|i| kuiper_v(&s.p.sample(100, i), h).unwrap().statistic).collect();
    let m = median(v);
    assert!((0.005..=0.05).contains(&m), "{m}");
}

#[test]
fn step2_null_v_vanishes() {
    let s = suites::builtin("step2").unwrap();
    let h = s.hypothesis().unwrap();
    for seed in 0..20 {
        assert_eq!(kuiper_v(&s.p.sample(100, seed), h).unwrap().statistic, 0.0);
    }
}

#[test]
fn w_examples() {
    let bi = suites::builtin("bimodal").unwrap();
    let h = bi.hypothesis().unwrap();
    // (101 p(50))^2 = (101 * 50 / 10100)^2
    let w = w_statistic(&SampleSet::new(vec![50.0], "x"), h).unwrap();
    assert!((w.w - 0.25).abs() < 1e-12);
    assert!((w.confidence_lower_bound - 0.75).abs() < 1e-12);
    assert!((w_tilde(&SampleSet::new(vec![50.0], "x"), h).unwrap() - 0.25).abs() < 1e-12);

    let step = suites::builtin("step").unwrap();
    let h = step.hypothesis().unwrap();
    let draws = step.q.sample(1000, 8);
    let low = draws.draws().iter().filter(|&&x| (x.floor() as i64) % 2 == 0).count();
    assert!(low > 0);
    assert_eq!(w_statistic(&draws, h).unwrap().w, 1000.0 * 1e-3);
}

#[test]
fn sawtooth_average_tail_is_one_half() {
    // frac(X) has density 2v under the null, so R(p(X)) = frac(X)^2 is uniform
    let s = suites::builtin("sawtooth").unwrap();
    let h = s.hypothesis().unwrap();
    let t = w_tilde(&s.p.sample(100_000, 21), h).unwrap();
    assert!((t - 0.5).abs() < 0.01, "{t}");
    let same = generalized_average(&s.p.sample(100_000, 21), h, &Average::Arithmetic).unwrap();
    assert_eq!(t, same);
}

#[test]
fn geometric_average_rejects_zero_tail() {
    let s = suites::builtin("step2").unwrap();
    let h = s.hypothesis().unwrap();
    // 1.5 lies in a gap, so R(p(1.5)) = R(0) = 0
    let draws = SampleSet::new(vec![0.5, 1.5], "x");
    let err = generalized_average(&draws, h, &Average::Geometric).unwrap_err();
    assert!(err.to_string().contains("draw 1"), "{err}");
}

#[test]
fn tail_bound_matches_binomial_series() {
    // 1 - (1 - a)^n = Σ_{k>=1} (-1)^{k+1} C(n, k) a^k with a = 1e-6, n = 1e4
    let (a, n) = (1e-6f64, 10_000usize);
    let mut term = 1.0;
    let mut series = 0.0;
    for k in 1..=12 {
        term *= (n - k + 1) as f64 / k as f64 * a;
        series += if k % 2 == 1 { term } else { -term };
    }
    let got = w_tail_bound(0.01, n).unwrap();
    assert!((got - series).abs() < 1e-16, "{got} vs {series}");
    assert!((got - 0.009_950_17).abs() < 1e-8);
}

#[test]
fn threshold_is_bracketed() {
    for alpha in [0.001, 0.01, 0.1, 0.3] {
        assert_eq!(w_threshold(alpha, 1).unwrap(), alpha);
        for n in [1usize, 10, 1000, 1_000_000] {
            let x = w_threshold(alpha, n).unwrap();
            assert!(alpha <= x && x < alpha + alpha * alpha, "alpha {alpha}, n {n}: {x}");
            assert!(x < -(-alpha).ln_1p() || n == 1);
            // the threshold inverts the bound
            assert!((w_tail_bound(x, n).unwrap() - alpha).abs() < 1e-12);
        }
    }
    let x = w_threshold(0.01, 1_000_000).unwrap();
    assert!((x - 0.010_050_3).abs() < 1e-7);
}

#[test]
fn pvalue_is_nonincreasing() {
    for n in [1usize, 10, 100, 100_000] {
        let mut last = 0.0;
        for i in 0..2000 {
            let v = kuiper_log10_pvalue(i as f64 * 0.01, n);
            assert!(v <= last + 1e-12 && v <= 0.0, "n {n}, stat {}", i as f64 * 0.01);
            last = v;
        }
    }
}

#[test]
fn increasing_density_ranks_like_the_cdf() {
    // For p nondecreasing, R(p(x)) = P(x), so W orders samples as min P(X_k) does
    let pdf = build(|x| 2.0 * x, Interval::new(0.0, 1.0).unwrap(), &[], DEFAULT_TOL).unwrap();
    let h = Hypothesis::new(Density::validate("ramp", pdf).unwrap()).unwrap();
    let samples: Vec<SampleSet> = (0..30).map(|i| h.density().sample(7, 900 + i)).collect();
    let by_w: Vec<f64> = samples.iter().map(|s| w_statistic(s, &h).unwrap().w).collect();
    let by_cdf: Vec<f64> = samples
        .iter()
        .map(|s| s.draws().iter().map(|&x| h.cdf().eval(x)).fold(f64::INFINITY, f64::min))
        .collect();
    for i in 0..30 {
        for j in 0..30 {
            if (by_cdf[i] - by_cdf[j]).abs() > 1e-9 {
                assert_eq!(by_w[i] < by_w[j], by_cdf[i] < by_cdf[j]);
            }
        }
    }
}

#[test]
fn w_bound_holds_under_the_null() {
    let s = suites::builtin("sawtooth").unwrap();
    let h = s.hypothesis().unwrap();
    let n = 100;
    let trials = 10_000;
    let w: Vec<f64> = (0..trials).map(|i| w_statistic(&s.p.sample(n, 40_000 + i), h).unwrap().w).collect();
    for x in [0.01, 0.1, 1.0] {
        let freq = w.iter().filter(|&&v| v <= x).count() as f64 / trials as f64;
        let b = w_tail_bound(x, n).unwrap();
        let sigma = (b * (1.0 - b) / trials as f64).sqrt();
        assert!(freq <= b + 3.0 * sigma, "x {x}: {freq} vs {b}");
        assert!((freq - b).abs() <= 3.0 * sigma, "x {x}: {freq} vs {b}");
    }
}
