use std::f64::consts::PI;

use bgkit::algebra_un1::MultiIndex;
use bgkit::quadrature::{
    bg_moment, bg_moment_expected, integrate_radial, iwanami_check, un1_moment,
    un1_moment_expected, Envelope, QuadratureError, QuadratureSpec,
};
use bgkit::specfun::{bessel_k, gamma};
use proptest::prelude::*;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn exponential_half() {
    let e = integrate_radial(
        |r| (-2.0 * r).exp(),
        Envelope {
            decay: 2.0,
            power: 0.0,
        },
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert!((e.value - 0.5).abs() < 1e-14);
    assert!(e.err_bound >= (e.value - 0.5).abs());
}

#[test]
fn n0_moment_by_bessel_integrand() {
    // ∫ 4/Γ(2K) K_{2K−1}(2r) r^{2K} dr = 1 at K = 0.75
    let k = 0.75;
    let g = gamma(2.0 * k).unwrap();
    let e = integrate_radial(
        |r| 4.0 / g * bessel_k(2.0 * k - 1.0, 2.0 * r).unwrap() * r.powf(2.0 * k),
        Envelope::bessel_k2(2.0 * k),
        &QuadratureSpec::default(),
    )
    .unwrap();
    assert!((e.value - 1.0).abs() < 1e-11);
}

#[test]
fn bg_moments_match_contract() {
    for k in [0.25, 0.5, 0.75, 1.0, 2.5] {
        for n in 0..=8 {
            let e = bg_moment(k, n, &QuadratureSpec::default()).unwrap();
            let want = bg_moment_expected(k, n);
            assert!(
                rel(e.value, want) <= 1e-10,
                "K={k} n={n}: {} vs {want}",
                e.value
            );
            assert!(
                e.err_bound >= (e.value - want).abs(),
                "K={k} n={n}: bound {} < err {}",
                e.err_bound,
                (e.value - want).abs()
            );
        }
    }
}

#[test]
fn bg_moment_example_value() {
    assert_eq!(bg_moment_expected(0.75, 3), 78.75);
    let e = bg_moment(0.75, 3, &QuadratureSpec::default()).unwrap();
    assert!(rel(e.value, 78.75) < 1e-10);
}

#[test]
fn un1_moments_match_contract() {
    for k in [0.3, 1.0, 2.7] {
        for idx in MultiIndex::all(2, 4) {
            let e = un1_moment(k, &idx, &QuadratureSpec::default()).unwrap();
            let want = un1_moment_expected(k, &idx);
            assert!(
                rel(e.value, want) <= 1e-8,
                "K={k} n={idx:?}: {} vs {want}",
                e.value
            );
            assert!(e.err_bound >= (e.value - want).abs());
        }
    }
}

#[test]
fn un1_example_values() {
    let idx = MultiIndex::new(vec![1, 2]);
    let want = 2.0 * 2.7 * 3.7 * 4.7;
    assert!(rel(un1_moment_expected(2.7, &idx), want) < 1e-15);
    let e = un1_moment(2.7, &idx, &QuadratureSpec::default()).unwrap();
    assert!(rel(e.value, 93.906) < 1e-8);
    let e = un1_moment(1.0, &MultiIndex::zero(2), &QuadratureSpec::default()).unwrap();
    assert!((e.value - 1.0).abs() < 1e-10);
}

#[test]
fn un1_with_n1_reduces_to_bg() {
    for k_bg in [0.25, 0.8, 1.5] {
        for n in 0..5 {
            let a = un1_moment(
                2.0 * k_bg,
                &MultiIndex::new(vec![n]),
                &QuadratureSpec::default(),
            )
            .unwrap();
            let b = bg_moment(k_bg, n, &QuadratureSpec::default()).unwrap();
            assert!(rel(a.value, b.value) < 1e-10);
        }
    }
}

#[test]
fn integral_formula_lattice() {
    let spec = QuadratureSpec::default();
    for alpha in [0.25, 0.6, 1.1] {
        for beta in [0.1, 0.35, 0.9] {
            for s in [0.5, 1.0, 2.0] {
                let c = iwanami_check(alpha, beta, s, &spec).unwrap();
                assert!(c.rel_err <= 1e-10, "{alpha} {beta} {s}: {}", c.rel_err);
                assert!(c.err_bound >= (c.lhs - c.rhs).abs());
            }
        }
    }
}

#[test]
fn integral_formula_examples() {
    let spec = QuadratureSpec::default();
    let c = iwanami_check(0.5, 0.5, 1.0, &spec).unwrap();
    assert!((c.rhs - 1.0).abs() < 1e-15 && c.rel_err < 1e-10);
    assert!(iwanami_check(0.75, 0.25, 1.0, &spec).unwrap().rel_err < 1e-10);
    let c = iwanami_check(0.6, 0.35, 1.0, &spec).unwrap();
    let want = gamma(2.2).unwrap() * gamma(1.7).unwrap();
    assert!(rel(c.lhs, want) < 1e-10);
    let d = iwanami_check(0.35, 0.6, 1.0, &spec).unwrap();
    assert!(rel(c.lhs, d.lhs) < 1e-12 && c.rhs == d.rhs);
}

#[test]
fn divergent_integral_formula_rejected() {
    assert!(matches!(
        iwanami_check(-1.0, 0.5, 1.0, &QuadratureSpec::default()),
        Err(QuadratureError::InvalidSpec(_))
    ));
}

#[test]
fn off_diagonal_angular_moment_vanishes() {
    // ∫₀^{2π} e^{i(n−m)θ} dθ by the trapezoid rule the analytic inner product uses
    for (n, m) in [(1i32, 0i32), (3, 1), (2, 5)] {
        let pts = 16;
        let s: f64 = (0..pts)
            .map(|j| ((n - m) as f64 * 2.0 * PI * j as f64 / pts as f64).cos())
            .sum();
        assert!(s.abs() < 1e-13);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn gamma_integral_oracle(a in 0.3f64..4.0, decay in 0.5f64..3.0) {
        // ∫ r^{a−1} e^{−d r} dr = Γ(a)/d^a
        let spec = QuadratureSpec::default().for_origin_exponent(a - 1.0);
        let e = integrate_radial(|r| r.powf(a - 1.0) * (-decay * r).exp(), Envelope { decay, power: a - 1.0 }, &spec).unwrap();
        let want = gamma(a).unwrap() / decay.powf(a);
        prop_assert!(rel(e.value, want) < 1e-10);
        prop_assert!(e.err_bound >= (e.value - want).abs());
    }

    #[test]
    fn bg_moment_any_k(k in 0.2f64..3.0, n in 0u32..6) {
        let e = bg_moment(k, n, &QuadratureSpec::default()).unwrap();
        prop_assert!(rel(e.value, bg_moment_expected(k, n)) < 1e-10);
    }
}
