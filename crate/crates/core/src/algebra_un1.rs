//! Truncated analytic representation of u(N,1) on polynomials in
//! z₁,…,z_N of total degree ≤ T.
//!
//! With 1-based indices α, β ≤ N and the extra index N+1:
//!
//! * E_{αβ} = z_α ∂_β
//! * E_{α,N+1} = z_α
//! * E_{N+1,α} = Σ_β z_β ∂_β ∂_α + K ∂_α
//! * E_{N+1,N+1} = Σ_β z_β ∂_β + K

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algebra_su11::{AlgebraError, Applied, Result};
use crate::specfun;

/// Exponents (n₁,…,n_N) of a monomial. Ordered by total degree, then
/// lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(n: Vec<u32>) -> Self {
        Self(n)
    }

    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// n₁!⋯n_N!
    pub fn factorial(&self) -> f64 {
        self.0
            .iter()
            .map(|&m| (1..=m).map(|j| j as f64).product::<f64>())
            .product()
    }

    /// z^n = ∏ z_α^{n_α}.
    pub fn monomial(&self, z: &[Complex64]) -> Complex64 {
        self.0.iter().zip(z).map(|(&m, zi)| zi.powu(m)).product()
    }

    // 0-based component shifts
    fn raised(&self, a: usize) -> Self {
        let mut n = self.0.clone();
        n[a] += 1;
        Self(n)
    }

    fn lowered(&self, a: usize) -> Option<Self> {
        let mut n = self.0.clone();
        n[a] = n[a].checked_sub(1)?;
        Some(Self(n))
    }

    /// All multi-indices of dimension `dim` with total degree ≤ `trunc`, in
    /// the MultiIndex order.
    pub fn all(dim: usize, trunc: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 0..=trunc {
            let mut cur = vec![0; dim];
            Self::with_degree(&mut cur, 0, d, &mut out);
        }
        out
    }

    fn with_degree(cur: &mut Vec<u32>, pos: usize, left: u32, out: &mut Vec<Self>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Self(cur.clone()));
            return;
        }
        for m in 0..=left {
            cur[pos] = m;
            Self::with_degree(cur, pos + 1, left - m, out);
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Sparse polynomial: monomial coefficients keyed by MultiIndex; absent
/// keys are zero.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MultiCoeff {
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl MultiCoeff {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(dim: usize, c: Complex64) -> Self {
        let mut v = Self::new();
        v.add(MultiIndex::zero(dim), c);
        v
    }

    pub fn monomial(n: MultiIndex) -> Self {
        let mut v = Self::new();
        v.add(n, Complex64::one());
        v
    }

    pub fn get(&self, n: &MultiIndex) -> Complex64 {
        self.terms.get(n).copied().unwrap_or_else(Complex64::zero)
    }

    pub fn add(&mut self, n: MultiIndex, c: Complex64) {
        if c.is_zero() {
            return;
        }
        *self.terms.entry(n).or_insert_with(Complex64::zero) += c;
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            terms: self.terms.iter().map(|(n, c)| (n.clone(), c * s)).collect(),
        }
    }

    pub fn axpy(&mut self, a: Complex64, other: &Self) {
        for (n, c) in &other.terms {
            self.add(n.clone(), a * c);
        }
    }

    /// Σ c_n z^n.
    pub fn eval(&self, z: &[Complex64]) -> Complex64 {
        self.terms.iter().map(|(n, c)| c * n.monomial(z)).sum()
    }

    /// max |c_n| over keys with |n| ≤ max_degree.
    pub fn max_norm_upto(&self, max_degree: u32) -> f64 {
        self.terms
            .iter()
            .filter(|(n, _)| n.degree() <= max_degree)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }
}

/// integer + k_multiple·K.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Weight {
    pub integer: i64,
    pub k_multiple: i64,
}

impl Weight {
    pub fn value(&self, k: f64) -> f64 {
        match self.k_multiple {
            0 => self.integer as f64,
            m => self.integer as f64 + m as f64 * k,
        }
    }
}

impl std::ops::Sub for Weight {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self {
            integer: self.integer - o.integer,
            k_multiple: self.k_multiple - o.k_multiple,
        }
    }
}

/// η = diag(+1,…,+1,−1) of size N+1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metric {
    diag: Vec<f64>,
}

impl Metric {
    pub fn new(n: usize) -> Self {
        let mut diag = vec![1.0; n + 1];
        diag[n] = -1.0;
        Self { diag }
    }

    /// η_{ab}, 1-based.
    pub fn eta(&self, a: usize, b: usize) -> f64 {
        if a == b {
            self.diag[a - 1]
        } else {
            0.0
        }
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UN1Rep {
    pub n: usize,
    pub k: f64,
    pub trunc: u32,
    pub metric: Metric,
}

impl UN1Rep {
    pub fn new(n: usize, k: f64, trunc: u32) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "N",
                value: 0.0,
            });
        }
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
        Ok(Self {
            n,
            k,
            trunc,
            metric: Metric::new(n),
        })
    }

    fn check_index(&self, alpha: usize, beta: usize) -> Result<()> {
        let max = self.n + 1;
        if alpha == 0 || beta == 0 || alpha > max || beta > max {
            return Err(AlgebraError::Index { alpha, beta, max });
        }
        Ok(())
    }

    /// E_{αβ} v with 1-based α, β ∈ 1..=N+1.
    pub fn apply_e(
        &self,
        alpha: usize,
        beta: usize,
        v: &MultiCoeff,
    ) -> Result<Applied<MultiCoeff>> {
        self.check_index(alpha, beta)?;
        let last = self.n + 1;
        let mut out = MultiCoeff::new();
        let mut overflow = false;
        for (idx, &c) in v.iter() {
            match (alpha == last, beta == last) {
                (false, false) => {
                    let (a, b) = (alpha - 1, beta - 1);
                    if a == b {
                        out.add(
                            idx.clone(),
                            c * self.diagonal_weight(alpha, idx).value(self.k),
                        );
                    } else if let Some(low) = idx.lowered(b) {
                        let factor = idx.0[b] as f64;
                        out.add(low.raised(a), c * factor);
                    }
                }
                (false, true) => {
                    if idx.degree() >= self.trunc {
                        overflow |= !c.is_zero();
                    } else {
                        out.add(idx.raised(alpha - 1), c);
                    }
                }
                (true, false) => {
                    let b = beta - 1;
                    if let Some(low) = idx.lowered(b) {
                        let factor = idx.0[b] as f64 * (idx.degree() as f64 - 1.0 + self.k);
                        out.add(low, c * factor);
                    }
                }
                (true, true) => out.add(
                    idx.clone(),
                    c * self.diagonal_weight(alpha, idx).value(self.k),
                ),
            }
        }
        Ok(Applied {
            value: out,
            overflow,
        })
    }

    fn e(&self, alpha: usize, beta: usize, v: &MultiCoeff) -> Result<MultiCoeff> {
        Ok(self.apply_e(alpha, beta, v)?.value)
    }

    /// Max-norm over degrees ≤ T−2 of
    /// ([E_{αβ},E_{γδ}] − η_{βγ}E_{αδ} + η_{δα}E_{γβ}) v.
    pub fn structure_check(
        &self,
        alpha: usize,
        beta: usize,
        gamma: usize,
        delta: usize,
        v: &MultiCoeff,
    ) -> Result<f64> {
        let mut d = self.e(alpha, beta, &self.e(gamma, delta, v)?)?;
        d.axpy(
            -Complex64::one(),
            &self.e(gamma, delta, &self.e(alpha, beta, v)?)?,
        );
        let eta_bg = self.metric.eta(beta, gamma);
        if eta_bg != 0.0 {
            d.axpy(Complex64::new(-eta_bg, 0.0), &self.e(alpha, delta, v)?);
        }
        let eta_da = self.metric.eta(delta, alpha);
        if eta_da != 0.0 {
            d.axpy(Complex64::new(eta_da, 0.0), &self.e(gamma, beta, v)?);
        }
        Ok(d.max_norm_upto(self.trunc.saturating_sub(2)))
    }

    /// Largest structure defect over all (α,β,γ,δ) ∈ {1..N+1}⁴. Single
    /// applications E_{γδ}v and products E_{αβ}E_{γδ}v are computed once.
    pub fn structure_sweep(&self, v: &MultiCoeff) -> Result<f64> {
        let m = self.n + 1;
        let slot = |a: usize, b: usize| (a - 1) * m + (b - 1);
        let mut single = Vec::with_capacity(m * m);
        for a in 1..=m {
            for b in 1..=m {
                single.push(self.e(a, b, v)?);
            }
        }
        let mut product = Vec::with_capacity(m.pow(4));
        for a in 1..=m {
            for b in 1..=m {
                for inner in &single {
                    product.push(self.e(a, b, inner)?);
                }
            }
        }
        let top = self.trunc.saturating_sub(2);
        let mut worst: f64 = 0.0;
        for a in 1..=m {
            for b in 1..=m {
                for c in 1..=m {
                    for d in 1..=m {
                        let mut acc = product[slot(a, b) * m * m + slot(c, d)].clone();
                        acc.axpy(-Complex64::one(), &product[slot(c, d) * m * m + slot(a, b)]);
                        let eta_bg = self.metric.eta(b, c);
                        if eta_bg != 0.0 {
                            acc.axpy(Complex64::new(-eta_bg, 0.0), &single[slot(a, d)]);
                        }
                        let eta_da = self.metric.eta(d, a);
                        if eta_da != 0.0 {
                            acc.axpy(Complex64::new(eta_da, 0.0), &single[slot(c, b)]);
                        }
                        worst = worst.max(acc.max_norm_upto(top));
                    }
                }
            }
        }
        Ok(worst)
    }

    /// Eigenvalue of the diagonal generator E_{αα} on z^n: n_α for α ≤ N,
    /// |n| + K for α = N+1.
    pub fn diagonal_weight(&self, alpha: usize, idx: &MultiIndex) -> Weight {
        if alpha == self.n + 1 {
            Weight {
                integer: idx.degree() as i64,
                k_multiple: 1,
            }
        } else {
            Weight {
                integer: idx.0[alpha - 1] as i64,
                k_multiple: 0,
            }
        }
    }

    /// Max-norm of (−Σ_α E_{αα} + E_{N+1,N+1} − K) v. The operator is
    /// diagonal; its weight on each monomial is accumulated in integer and
    /// K-multiple parts, so cancellation is exact.
    pub fn subsidiary_residual(&self, v: &MultiCoeff) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for (idx, c) in v.iter() {
            let mut w = self.diagonal_weight(self.n + 1, idx);
            for a in 1..=self.n {
                w = w - self.diagonal_weight(a, idx);
            }
            w.k_multiple -= 1;
            worst = worst.max((c * w.value(self.k)).norm());
        }
        Ok(worst)
    }

    /// Coefficients λ^n/(n₁!⋯n_N!(K)_{|n|}) of ₀F₁(K; λ·z).
    pub fn extended_bg_state(&self, lambda: &[Complex64]) -> Result<MultiCoeff> {
        self.check_vector(lambda)?;
        let mut v = MultiCoeff::new();
        for idx in MultiIndex::all(self.n, self.trunc) {
            let denom = idx.factorial() * specfun::pochhammer(self.k, idx.degree());
            v.add(idx.clone(), idx.monomial(lambda) / denom);
        }
        Ok(v)
    }

    /// max over α and |n| ≤ T−2 of |(E_{N+1,α}φ)[n] − λ_α φ[n]|.
    pub fn extended_eigen_residual(&self, lambda: &[Complex64]) -> Result<f64> {
        if self.trunc < 3 {
            return Err(AlgebraError::InvalidParameter {
                name: "trunc",
                value: self.trunc as f64,
            });
        }
        let phi = self.extended_bg_state(lambda)?;
        let mut worst: f64 = 0.0;
        for a in 1..=self.n {
            let mut d = self.e(self.n + 1, a, &phi)?;
            d.axpy(-lambda[a - 1], &phi);
            worst = worst.max(d.max_norm_upto(self.trunc - 2));
        }
        Ok(worst)
    }

    /// (Σ_{|n| ≤ T} z'^n z̄^n/(n!(K)_{|n|}), ₀F₁(K; z'·z̄)).
    pub fn completeness_kernel_n(
        &self,
        zp: &[Complex64],
        zbar: &[Complex64],
    ) -> Result<(Complex64, Complex64)> {
        self.check_vector(zp)?;
        self.check_vector(zbar)?;
        let mut truncated = Complex64::zero();
        for idx in MultiIndex::all(self.n, self.trunc) {
            let denom = idx.factorial() * specfun::pochhammer(self.k, idx.degree());
            truncated += idx.monomial(zp) * idx.monomial(zbar) / denom;
        }
        let x: Complex64 = zp.iter().zip(zbar).map(|(a, b)| a * b).sum();
        Ok((truncated, specfun::hyp0f1(self.k, x)?))
    }

    /// Random polynomial with every coefficient of degree ≤ T uniform in
    /// [0,1) + i[0,1).
    pub fn random_coeff<R: Rng>(&self, rng: &mut R) -> MultiCoeff {
        let mut v = MultiCoeff::new();
        for idx in MultiIndex::all(self.n, self.trunc) {
            v.add(idx, Complex64::new(rng.gen(), rng.gen()));
        }
        v
    }

    pub fn seeded_coeffs(&self, seed: u64, count: usize) -> Vec<MultiCoeff> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count).map(|_| self.random_coeff(&mut rng)).collect()
    }

    fn check_vector(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.n {
            return Err(AlgebraError::Length {
                got: z.len(),
                expected: self.n,
            });
        }
        Ok(())
    }
}
