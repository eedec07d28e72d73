//! Truncated analytic representation of su(1,1) on polynomials of degree
//! ≤ T in one variable z.
//!
//! Generators act as K₊ = z, K₃ = z d/dz + K and K₋ = z d²/dz² + 2K d/dz.
//! The operator routines are generic over the scalar so that commutators can
//! be checked exactly over complex rationals.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::measures::{BgDensity, MeasureError};
use crate::quadrature::{self, Envelope, QuadratureError, QuadratureSpec};
use crate::specfun::{self, SpecfunError};

/// Seed for the random test vectors used throughout the toolkit.
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("coefficient vector has length {got}, expected {expected}")]
    Length { got: usize, expected: usize },
    #[error("point {re}{im:+}i lies outside the unit disc")]
    OutsideDisc { re: f64, im: f64 },
    #[error("generator index ({alpha}, {beta}) out of range 1..={max}")]
    Index {
        alpha: usize,
        beta: usize,
        max: usize,
    },
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

/// Result of applying a generator; `overflow` is set when a nonzero
/// coefficient was pushed above the truncation degree and dropped.
#[derive(Debug, Clone, PartialEq)]
pub struct Applied<V> {
    pub value: V,
    pub overflow: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SU11Rep {
    pub k: f64,
    pub trunc: usize,
}

impl SU11Rep {
    pub fn new(k: f64, trunc: usize) -> Result<Self> {
        if !(k > 0.0 && k.is_finite()) {
            return Err(AlgebraError::InvalidParameter {
                name: "K",
                value: k,
            });
        }
        if trunc == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "trunc",
                value: 0.0,
            });
        }
        Ok(Self { k, trunc })
    }

    fn k_c(&self) -> Complex64 {
        Complex64::new(self.k, 0.0)
    }

    fn check(&self, v: &CoeffVector) -> Result<()> {
        if v.len() != self.trunc + 1 {
            return Err(AlgebraError::Length {
                got: v.len(),
                expected: self.trunc + 1,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> CoeffVector {
        CoeffVector::zeros(self.trunc)
    }

    /// z^n as a coefficient vector.
    pub fn monomial(&self, n: usize) -> CoeffVector {
        let mut v = self.zero();
        v.coeffs[n] = Complex64::one();
        v
    }

    pub fn apply_k_plus(&self, v: &CoeffVector) -> Result<Applied<CoeffVector>> {
        self.check(v)?;
        Ok(k_plus(v))
    }

    pub fn apply_k3(&self, v: &CoeffVector) -> Result<CoeffVector> {
        self.check(v)?;
        Ok(k3(&self.k_c(), v))
    }

    pub fn apply_k_minus(&self, v: &CoeffVector) -> Result<CoeffVector> {
        self.check(v)?;
        Ok(k_minus(&self.k_c(), v))
    }

    /// n! (2K)_n, the squared norm of z^n.
    pub fn norm_sq(&self, n: usize) -> f64 {
        let fact: f64 = (1..=n).map(|j| j as f64).product();
        fact * specfun::pochhammer(2.0 * self.k, n as u32)
    }

    /// Coefficients λⁿ/(n!(2K)_n) of ₀F₁(2K; λz).
    pub fn bg_state(&self, lambda: Complex64) -> CoeffVector {
        let mut coeffs = Vec::with_capacity(self.trunc + 1);
        let mut c = Complex64::one();
        for n in 0..=self.trunc {
            coeffs.push(c);
            c = c * lambda / ((n as f64 + 1.0) * (n as f64 + 2.0 * self.k));
        }
        CoeffVector { coeffs }
    }

    /// max_{n ≤ T−2} |(K₋φ)[n] − λφ[n]| for φ = bg_state(λ).
    pub fn eigen_residual(&self, lambda: Complex64) -> Result<f64> {
        if self.trunc < 3 {
            return Err(AlgebraError::InvalidParameter {
                name: "trunc",
                value: self.trunc as f64,
            });
        }
        let phi = self.bg_state(lambda);
        let lowered = self.apply_k_minus(&phi)?;
        Ok((0..=self.trunc - 2)
            .map(|n| (lowered.coeffs[n] - lambda * phi.coeffs[n]).norm())
            .fold(0.0, f64::max))
    }

    /// ⟨z|z'⟩ = ₀F₁(2K; z̄ z').
    pub fn state_inner(&self, z: Complex64, zp: Complex64) -> Result<Complex64> {
        Ok(specfun::hyp0f1(2.0 * self.k, z.conj() * zp)?)
    }

    /// Σ u_n(z') u_n(z)* in closed form, ₀F₁(2K; z' z̄).
    pub fn completeness_kernel(&self, zp: Complex64, zbar: Complex64) -> Result<Complex64> {
        Ok(specfun::hyp0f1(2.0 * self.k, zp * zbar)?)
    }

    /// Σ_{n ≤ T} (z' z̄)ⁿ/(n!(2K)_n).
    pub fn completeness_kernel_truncated(&self, zp: Complex64, zbar: Complex64) -> Complex64 {
        self.bg_state(zp * zbar).coeffs.iter().sum()
    }

    /// |x|^{T+1}/((T+1)!(2K)_{T+1}) e^{|x|}, a bound on the neglected tail of
    /// the truncated kernel at x = z' z̄.
    pub fn kernel_tail_bound(&self, x: Complex64) -> f64 {
        let t = self.trunc + 1;
        let mut term = 1.0;
        for j in 0..t {
            term *= x.norm() / ((j as f64 + 1.0) * (j as f64 + 2.0 * self.k));
        }
        term * x.norm().exp()
    }

    /// Monomial coefficients → coefficients in the orthonormal basis
    /// u_n = zⁿ/√(n!(2K)_n).
    pub fn to_orthonormal(&self, v: &CoeffVector) -> Result<CoeffVector> {
        self.check(v)?;
        Ok(CoeffVector {
            coeffs: v
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c * self.norm_sq(n).sqrt())
                .collect(),
        })
    }

    pub fn from_orthonormal(&self, v: &CoeffVector) -> Result<CoeffVector> {
        self.check(v)?;
        Ok(CoeffVector {
            coeffs: v
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c / self.norm_sq(n).sqrt())
                .collect(),
        })
    }

    /// The orthonormal basis function u_n in monomial coefficients.
    pub fn basis_u(&self, n: usize) -> CoeffVector {
        let mut v = self.zero();
        v.coeffs[n] = Complex64::new(1.0 / self.norm_sq(n).sqrt(), 0.0);
        v
    }

    /// (A, B) = Σ ā_n b_n n!(2K)_n.
    pub fn analytic_inner_algebraic(&self, a: &CoeffVector, b: &CoeffVector) -> Result<Complex64> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.coeffs
            .iter()
            .zip(&b.coeffs)
            .enumerate()
            .map(|(n, (x, y))| x.conj() * y * self.norm_sq(n))
            .sum())
    }

    /// (A, B) = ∫ dμ_BG A(z)* B(z): trapezoid in the angle with 2T+2 nodes
    /// (exact for the trigonometric polynomial A*B), radial quadrature for
    /// each of the real and imaginary parts.
    pub fn analytic_inner_numeric(
        &self,
        a: &CoeffVector,
        b: &CoeffVector,
        spec: &QuadratureSpec,
    ) -> Result<(Complex64, f64)> {
        self.check(a)?;
        self.check(b)?;
        let density = BgDensity::new(self.k)?;
        let m = 2 * self.trunc + 2;
        let phases: Vec<Complex64> = (0..m)
            .map(|j| Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64))
            .collect();
        let angular = |r: f64| -> Complex64 {
            let s: Complex64 = phases
                .iter()
                .map(|&w| {
                    let z = w * r;
                    a.eval(z).conj() * b.eval(z)
                })
                .sum();
            s * (2.0 * PI / m as f64)
        };
        // Highest power of r in A*B is 2T; the area element adds one.
        let top = 2.0 * self.trunc as f64 + 1.0;
        let envelope = Envelope::bessel_k2(top + 2.0 * self.k - 1.0);
        let origin = 1.0 + (4.0 * self.k - 2.0).min(0.0);
        let spec = spec.for_origin_exponent(origin);
        // A part that vanishes identically cannot meet a relative tolerance;
        // such parts are held to rel_tol × (∫|A|² ∫|B|²)^{1/2} instead.
        let norm_sq = |v: &CoeffVector| -> Result<f64> {
            let e = quadrature::integrate_radial(
                |r| {
                    let s: f64 = phases.iter().map(|&w| v.eval(w * r).norm_sqr()).sum();
                    density.eval_unchecked(r) * r * s * (2.0 * PI / m as f64)
                },
                envelope,
                &spec,
            )?;
            Ok(e.value)
        };
        let scale = (norm_sq(a)? * norm_sq(b)?).sqrt();
        let part = |pick: fn(Complex64) -> f64| -> Result<quadrature::Estimate> {
            match quadrature::integrate_radial(
                |r| density.eval_unchecked(r) * r * pick(angular(r)),
                envelope,
                &spec,
            ) {
                Ok(e) => Ok(e),
                Err(QuadratureError::ToleranceNotMet { best, .. })
                    if best.err_bound <= spec.rel_tol * scale =>
                {
                    Ok(best)
                }
                Err(e) => Err(e.into()),
            }
        };
        let re = part(|c| c.re)?;
        let im = part(|c| c.im)?;
        Ok((
            Complex64::new(re.value, im.value),
            re.err_bound + im.err_bound,
        ))
    }

    /// Both paths of the analytic inner product.
    pub fn analytic_inner(
        &self,
        a: &CoeffVector,
        b: &CoeffVector,
        spec: &QuadratureSpec,
    ) -> Result<InnerProduct> {
        let algebraic = self.analytic_inner_algebraic(a, b)?;
        let (numeric, err_bound) = self.analytic_inner_numeric(a, b, spec)?;
        Ok(InnerProduct {
            algebraic,
            numeric,
            err_bound,
        })
    }

    /// Max-norms of ([K₃,K₊] − K₊)v and ([K₋,K₊] − 2K₃)v on degrees ≤ T−2.
    pub fn commutator_defects(&self, v: &CoeffVector) -> Result<(f64, f64)> {
        self.check(v)?;
        let (d1, d2) = commutator_defect_vectors(&self.k_c(), v);
        let interior = self.trunc.saturating_sub(2);
        let max = |d: &CoeffVector| {
            d.coeffs[..=interior]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max)
        };
        Ok((max(&d1), max(&d2)))
    }

    /// Random vector with entries uniform in [0,1) + i[0,1).
    pub fn random_vector<R: Rng>(&self, rng: &mut R) -> CoeffVector {
        CoeffVector {
            coeffs: (0..=self.trunc)
                .map(|_| Complex64::new(rng.gen(), rng.gen()))
                .collect(),
        }
    }

    /// `count` random vectors from a ChaCha stream seeded with `seed`.
    pub fn seeded_vectors(&self, seed: u64, count: usize) -> Vec<CoeffVector> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.random_vector(&mut rng)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InnerProduct {
    pub algebraic: Complex64,
    pub numeric: Complex64,
    pub err_bound: f64,
}

/// ⟨ξ|ξ'⟩ = (1 − ξ̄ξ')^{−2K} on the unit disc, principal branch.
pub fn perelomov_inner(k: f64, xi: Complex64, xip: Complex64) -> Result<Complex64> {
    if !(k > 0.0) {
        return Err(AlgebraError::InvalidParameter {
            name: "K",
            value: k,
        });
    }
    for p in [xi, xip] {
        if !(p.norm() < 1.0) {
            return Err(AlgebraError::OutsideDisc { re: p.re, im: p.im });
        }
    }
    Ok((Complex64::one() - xi.conj() * xip).powf(-2.0 * k))
}

/// Coefficients c₀..c_T of a polynomial in z.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoeffVector<S = Complex64> {
    pub coeffs: Vec<S>,
}

impl<S: Clone + Zero> CoeffVector<S> {
    pub fn zeros(trunc: usize) -> Self {
        Self {
            coeffs: vec![S::zero(); trunc + 1],
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl CoeffVector<Complex64> {
    /// Horner evaluation at z.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::zero(), |acc, &c| acc * z + c)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn from_count<S: Num + Clone>(n: usize) -> S {
    let mut s = S::zero();
    for _ in 0..n {
        s = s + S::one();
    }
    s
}

/// K₊: out[n+1] = v[n]; the top coefficient is dropped.
pub fn k_plus<S: Num + Clone>(v: &CoeffVector<S>) -> Applied<CoeffVector<S>> {
    let t = v.trunc();
    let mut out = CoeffVector::zeros(t);
    out.coeffs[1..].clone_from_slice(&v.coeffs[..t]);
    Applied {
        overflow: !v.coeffs[t].is_zero(),
        value: out,
    }
}

/// K₃: out[n] = (n + K) v[n].
pub fn k3<S: Num + Clone>(k: &S, v: &CoeffVector<S>) -> CoeffVector<S> {
    let mut n = S::zero();
    let coeffs = v
        .coeffs
        .iter()
        .map(|c| {
            let out = (n.clone() + k.clone()) * c.clone();
            n = n.clone() + S::one();
            out
        })
        .collect();
    CoeffVector { coeffs }
}

/// K₋: out[n] = (n+1)(n+2K) v[n+1], out[T] = 0.
pub fn k_minus<S: Num + Clone>(k: &S, v: &CoeffVector<S>) -> CoeffVector<S> {
    let t = v.trunc();
    let two_k = k.clone() + k.clone();
    let mut out = CoeffVector::zeros(t);
    for n in 0..t {
        let nn: S = from_count(n);
        out.coeffs[n] = (nn.clone() + S::one()) * (nn + two_k.clone()) * v.coeffs[n + 1].clone();
    }
    out
}

fn sub<S: Num + Clone>(a: &CoeffVector<S>, b: &CoeffVector<S>) -> CoeffVector<S> {
    CoeffVector {
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.clone() - y.clone())
            .collect(),
    }
}

/// ([K₃,K₊] − K₊)v and ([K₋,K₊] − 2K₃)v over any scalar field.
pub fn commutator_defect_vectors<S: Num + Clone>(
    k: &S,
    v: &CoeffVector<S>,
) -> (CoeffVector<S>, CoeffVector<S>) {
    let kp = k_plus(v).value;
    let k3_kp = k3(k, &kp);
    let kp_k3 = k_plus(&k3(k, v)).value;
    let d1 = sub(&sub(&k3_kp, &kp_k3), &kp);
    let km_kp = k_minus(k, &kp);
    let kp_km = k_plus(&k_minus(k, v)).value;
    let two_k3 = k3(k, v);
    let two_k3 = CoeffVector {
        coeffs: two_k3
            .coeffs
            .iter()
            .map(|c| c.clone() + c.clone())
            .collect(),
    };
    let d2 = sub(&sub(&km_kp, &kp_km), &two_k3);
    (d1, d2)
}

pub type ExactScalar = Complex<BigRational>;

/// Random complex-rational vector with entries a/den + i b/den,
/// a, b uniform in 0..den.
pub fn random_exact_vector<R: Rng>(
    trunc: usize,
    den: i64,
    rng: &mut R,
) -> CoeffVector<ExactScalar> {
    let q = |rng: &mut R| BigRational::new(BigInt::from(rng.gen_range(0..den)), BigInt::from(den));
    CoeffVector {
        coeffs: (0..=trunc).map(|_| Complex::new(q(rng), q(rng))).collect(),
    }
}

/// Runs both commutator identities in exact arithmetic for rational
/// K = k_num/k_den on `count` seeded random vectors; true when every
/// coefficient of degree ≤ T−2 vanishes exactly.
pub fn exact_commutators_hold(
    k_num: i64,
    k_den: i64,
    trunc: usize,
    seed: u64,
    count: usize,
) -> bool {
    exact_commutators_hold_for(
        &BigRational::new(BigInt::from(k_num), BigInt::from(k_den)),
        trunc,
        seed,
        count,
    )
}

/// The exact rational value of a finite binary64 number.
pub fn exact_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

/// As [`exact_commutators_hold`] for any rational K, e.g. the exact value
/// of a binary64 number.
pub fn exact_commutators_hold_for(k: &BigRational, trunc: usize, seed: u64, count: usize) -> bool {
    let k = Complex::new(k.clone(), BigRational::zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let interior = trunc.saturating_sub(2);
    (0..count).all(|_| {
        let v = random_exact_vector(trunc, 1000, &mut rng);
        let (d1, d2) = commutator_defect_vectors(&k, &v);
        d1.coeffs[..=interior].iter().all(Zero::is_zero)
            && d2.coeffs[..=interior].iter().all(Zero::is_zero)
    })
}
