use bgkit::algebra_su11::{SU11Rep, DEFAULT_SEED};
use bgkit::algebra_un1::{MultiCoeff, MultiIndex, UN1Rep};
use bgkit::specfun::hyp0f1;
use num_complex::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn mono(n: &[u32]) -> MultiCoeff {
    MultiCoeff::monomial(MultiIndex::new(n.to_vec()))
}

#[test]
fn generator_examples() {
    let rep = UN1Rep::new(2, 1.7, 6).unwrap();
    let out = rep
        .apply_e(3, 3, &MultiCoeff::constant(2, c(1.0, 0.0)))
        .unwrap();
    assert_eq!(out.value.get(&MultiIndex::zero(2)), c(1.7, 0.0));
    let out = rep.apply_e(2, 1, &mono(&[1, 0])).unwrap().value;
    assert_eq!(out, mono(&[0, 1]));
    let rep1 = UN1Rep::new(1, 0.9, 6).unwrap();
    let out = rep1.apply_e(2, 1, &mono(&[1])).unwrap().value;
    assert_eq!(out.get(&MultiIndex::zero(1)), c(0.9, 0.0));
    assert_eq!(out.len(), 1);
}

#[test]
fn generator_coefficient_actions() {
    let rep = UN1Rep::new(2, 0.6, 8).unwrap();
    let v = mono(&[2, 3]);
    // z₁ ∂₂ z₁²z₂³ = 3 z₁³z₂²
    assert_eq!(
        rep.apply_e(1, 2, &v).unwrap().value,
        mono(&[3, 2]).scaled(c(3.0, 0.0))
    );
    // E_{3,1} z₁²z₂³ = 2(5 − 1 + K) z₁z₂³
    let out = rep.apply_e(3, 1, &v).unwrap().value;
    assert!((out.get(&MultiIndex::new(vec![1, 3])) - c(2.0 * 4.6, 0.0)).norm() < 1e-15);
    // E_{1,3} z^n = z^{n+e₁}
    assert_eq!(rep.apply_e(1, 3, &v).unwrap().value, mono(&[3, 3]));
}

#[test]
fn diagonal_pairs_commute_exactly() {
    let rep = UN1Rep::new(2, 1.5, 10).unwrap();
    let v = &rep.seeded_coeffs(DEFAULT_SEED, 1)[0];
    for a in 1..=3 {
        for b in 1..=3 {
            let ab = rep
                .apply_e(a, b, &rep.apply_e(a, b, v).unwrap().value)
                .unwrap()
                .value;
            let mut d = ab.clone();
            d.axpy(c(-1.0, 0.0), &ab);
            assert_eq!(d.max_norm_upto(10), 0.0);
        }
    }
}

#[test]
fn noncompact_sign_case() {
    let rep = UN1Rep::new(2, 1.5, 10).unwrap();
    for v in rep.seeded_coeffs(DEFAULT_SEED, 5) {
        assert!(rep.structure_check(1, 3, 3, 2, &v).unwrap() <= 1e-12);
    }
}

#[test]
fn wrong_metric_sign_is_detected() {
    // [E_{3,1}, E_{1,3}] with a +1 in the last slot of η would leave a defect.
    let rep = UN1Rep::new(1, 1.5, 10).unwrap();
    let v = mono(&[2]);
    let e31_e13 = rep
        .apply_e(2, 1, &rep.apply_e(1, 2, &v).unwrap().value)
        .unwrap()
        .value;
    let mut d = e31_e13;
    d.axpy(
        c(-1.0, 0.0),
        &rep.apply_e(1, 2, &rep.apply_e(2, 1, &v).unwrap().value)
            .unwrap()
            .value,
    );
    // η_{11} E_{22} − η_{22} E_{11} with η_{22} = −1
    let mut right = rep.apply_e(2, 2, &v).unwrap().value;
    right.axpy(c(1.0, 0.0), &rep.apply_e(1, 1, &v).unwrap().value);
    let mut wrong = rep.apply_e(2, 2, &v).unwrap().value;
    wrong.axpy(c(-1.0, 0.0), &rep.apply_e(1, 1, &v).unwrap().value);
    let mut ok = d.clone();
    ok.axpy(c(-1.0, 0.0), &right);
    let mut bad = d;
    bad.axpy(c(-1.0, 0.0), &wrong);
    assert_eq!(ok.max_norm_upto(8), 0.0);
    assert!(bad.max_norm_upto(8) > 1.0);
}

#[test]
fn exhaustive_structure_sweeps() {
    for n in 1..=3 {
        for k in [0.3, 1.5] {
            let rep = UN1Rep::new(n, k, 10).unwrap();
            for v in rep.seeded_coeffs(DEFAULT_SEED, 5) {
                let d = rep.structure_sweep(&v).unwrap();
                assert!(d <= 1e-12, "N={n} K={k}: {d}");
            }
        }
    }
}

#[test]
fn structure_on_low_degree_monomials() {
    let rep = UN1Rep::new(3, 2.2, 10).unwrap();
    for idx in MultiIndex::all(3, 4) {
        assert!(rep.structure_sweep(&MultiCoeff::monomial(idx)).unwrap() <= 1e-12);
    }
}

#[test]
fn subsidiary_condition() {
    let rep = UN1Rep::new(2, 0.8, 10).unwrap();
    assert_eq!(
        rep.subsidiary_residual(&MultiCoeff::constant(2, c(1.0, 0.0)))
            .unwrap(),
        0.0
    );
    for v in rep.seeded_coeffs(DEFAULT_SEED, 5) {
        assert_eq!(rep.subsidiary_residual(&v).unwrap(), 0.0);
    }
    let rep = UN1Rep::new(2, 2.5, 10).unwrap();
    assert_eq!(rep.subsidiary_residual(&mono(&[2, 1])).unwrap(), 0.0);
}

#[test]
fn extended_state_coefficients() {
    let rep = UN1Rep::new(2, 1.0, 6).unwrap();
    let phi = rep.extended_bg_state(&[c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
    assert_eq!(phi, MultiCoeff::constant(2, c(1.0, 0.0)));
    let phi = rep.extended_bg_state(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    assert_eq!(phi.get(&MultiIndex::new(vec![1, 1])), c(0.5, 0.0));
}

#[test]
fn extended_state_collapses_to_hyp0f1() {
    let rep = UN1Rep::new(2, 1.3, 40).unwrap();
    let lambda = [c(0.7, -0.2), c(1.1, 0.4)];
    let phi = rep.extended_bg_state(&lambda).unwrap();
    for z in [[c(1.0, 0.5), c(-0.3, 0.8)], [c(2.0, 0.0), c(1.0, -1.0)]] {
        let t: Complex64 = lambda.iter().zip(&z).map(|(a, b)| a * b).sum();
        assert!(t.norm() <= 4.0);
        let want = hyp0f1(1.3, t).unwrap();
        assert!((phi.eval(&z) - want).norm() <= 1e-12 * want.norm());
    }
}

#[test]
fn extended_eigen_residuals() {
    let rep = UN1Rep::new(2, 0.6, 30).unwrap();
    assert_eq!(
        rep.extended_eigen_residual(&[c(0.0, 0.0), c(0.0, 0.0)])
            .unwrap(),
        0.0
    );
    assert!(
        rep.extended_eigen_residual(&[c(1.2, 0.0), c(-0.7, 0.0)])
            .unwrap()
            <= 1e-12
    );
    let rep = UN1Rep::new(3, 2.2, 20).unwrap();
    assert!(
        rep.extended_eigen_residual(&[c(1.0, 0.0), c(0.0, 1.0), c(0.5, 0.0)])
            .unwrap()
            <= 1e-12
    );
}

#[test]
fn completeness_kernel_n() {
    let rep = UN1Rep::new(2, 0.9, 40).unwrap();
    let (t, closed) = rep
        .completeness_kernel_n(&[c(0.0, 0.0); 2], &[c(1.0, 2.0), c(3.0, 0.0)])
        .unwrap();
    assert_eq!((t, closed), (c(1.0, 0.0), c(1.0, 0.0)));
    let (t, closed) = rep
        .completeness_kernel_n(&[c(1.0, 0.0), c(0.5, 0.0)], &[c(1.0, 0.0), c(1.0, 0.0)])
        .unwrap();
    assert!((closed - hyp0f1(0.9, c(1.5, 0.0)).unwrap()).norm() == 0.0);
    assert!((t - closed).norm() <= 1e-12 * closed.norm());
}

#[test]
fn n1_kernel_matches_su11() {
    let un1 = UN1Rep::new(1, 1.4, 30).unwrap();
    let su11 = SU11Rep::new(0.7, 30).unwrap();
    let (zp, zb) = (c(0.8, 0.3), c(1.1, -0.6));
    let (t, _) = un1.completeness_kernel_n(&[zp], &[zb]).unwrap();
    let s = su11.completeness_kernel_truncated(zp, zb);
    assert!((t - s).norm() <= 1e-14 * s.norm());
}

#[test]
fn n1_reduction_to_su11() {
    // E_{2,1} ↔ K₋ and E_{1,2} ↔ K₊ with K = 2 K_BG
    let k_bg = 0.65;
    let su11 = SU11Rep::new(k_bg, 10).unwrap();
    let un1 = UN1Rep::new(1, 2.0 * k_bg, 10).unwrap();
    for n in 0..=10u32 {
        let v1 = su11.monomial(n as usize);
        let v2 = mono(&[n]);
        let lower = su11.apply_k_minus(&v1).unwrap();
        let e21 = un1.apply_e(2, 1, &v2).unwrap().value;
        let raise = su11.apply_k_plus(&v1).unwrap();
        let e12 = un1.apply_e(1, 2, &v2).unwrap();
        assert_eq!(raise.overflow, e12.overflow);
        for m in 0..=10u32 {
            let idx = MultiIndex::new(vec![m]);
            assert!((lower.coeffs[m as usize] - e21.get(&idx)).norm() < 1e-13);
            assert_eq!(raise.value.coeffs[m as usize], e12.value.get(&idx));
        }
        // K₃ = z d/dz + K_BG and (E₁₁ + E₂₂)/2 = z d/dz + K/2 coincide as well
        let k3 = su11.apply_k3(&v1).unwrap();
        let mut half = un1.apply_e(1, 1, &v2).unwrap().value;
        half.axpy(c(1.0, 0.0), &un1.apply_e(2, 2, &v2).unwrap().value);
        let half = half.scaled(c(0.5, 0.0));
        assert!((k3.coeffs[n as usize] - half.get(&MultiIndex::new(vec![n]))).norm() < 1e-14);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn structure_holds_for_any_k(k in 0.05f64..5.0, seed in any::<u64>(), n in 1usize..=2) {
        let rep = UN1Rep::new(n, k, 8).unwrap();
        let v = &rep.seeded_coeffs(seed, 1)[0];
        prop_assert!(rep.structure_sweep(v).unwrap() <= 1e-12);
        prop_assert_eq!(rep.subsidiary_residual(v).unwrap(), 0.0);
    }

    #[test]
    fn eigen_residual_any_lambda(k in 0.1f64..4.0, a in -2.0f64..2.0, b in -2.0f64..2.0, th in 0.0f64..6.3) {
        let rep = UN1Rep::new(2, k, 25).unwrap();
        let lambda = [Complex64::from_polar(a, th), c(b, 0.0)];
        prop_assert!(rep.extended_eigen_residual(&lambda).unwrap() <= 1e-12);
    }
}

#[test]
fn sweep_agrees_with_individual_checks() {
    let rep = UN1Rep::new(2, 0.7, 6).unwrap();
    let v = &rep.seeded_coeffs(7, 1)[0];
    let mut worst: f64 = 0.0;
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                for d in 1..=3 {
                    worst = worst.max(rep.structure_check(a, b, c, d, v).unwrap());
                }
            }
        }
    }
    assert_eq!(worst, rep.structure_sweep(v).unwrap());
}
