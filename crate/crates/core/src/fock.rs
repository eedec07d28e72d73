//! Schwinger-boson realisation of u(N,1) at integer K on the truncated
//! sector |n₁,…,n_N, K−1+|n|⟩, |n| ≤ T.
//!
//! E_{αβ} = a†_α a_β, E_{α,N+1} = a†_α a†_{N+1}, E_{N+1,α} = a_{N+1} a_α and
//! E_{N+1,N+1} = a†_{N+1} a_{N+1} + 1. Each generator sends a basis state to a
//! multiple of a single basis state, so matrices are stored one entry per
//! column.

use std::collections::HashMap;

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra_su11::{AlgebraError, Result};
use crate::algebra_un1::{Metric, MultiIndex};
use crate::specfun;

#[derive(Debug, Clone)]
pub struct FockBasis {
    pub n: usize,
    pub k: u32,
    pub trunc: u32,
    states: Vec<MultiIndex>,
    position: HashMap<MultiIndex, usize>,
}

impl FockBasis {
    pub fn new(n: usize, k: u32, trunc: u32) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "N",
                value: 0.0,
            });
        }
        if k == 0 {
            return Err(AlgebraError::InvalidParameter {
                name: "K",
                value: 0.0,
            });
        }
        let states = MultiIndex::all(n, trunc);
        let position = states
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(Self {
            n,
            k,
            trunc,
            states,
            position,
        })
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[MultiIndex] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &MultiIndex {
        &self.states[i]
    }

    pub fn position(&self, n: &MultiIndex) -> Option<usize> {
        self.position.get(n).copied()
    }

    /// Occupation K−1+|n| of the last mode.
    pub fn last_occupation(&self, i: usize) -> u32 {
        self.k - 1 + self.states[i].degree()
    }

    /// Indices of states with |n| ≤ T−2.
    pub fn interior(&self) -> impl Iterator<Item = usize> + '_ {
        let top = self.trunc.saturating_sub(2);
        (0..self.dim()).filter(move |&i| self.states[i].degree() <= top)
    }

    /// n₁!⋯n_N!(K)_{|n|}; the Fock coefficient of |z⟩ divided by the
    /// analytic coefficient of ₀F₁(K; z·w) is its square root.
    pub fn conversion_factor(&self, i: usize) -> f64 {
        let s = &self.states[i];
        (s.factorial() * specfun::pochhammer(self.k as f64, s.degree())).sqrt()
    }
}

/// Matrix with at most one nonzero per column: column j maps to
/// `entries[j] = Some((row, value))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeneratorMatrix {
    pub alpha: usize,
    pub beta: usize,
    entries: Vec<Option<(usize, f64)>>,
    /// Columns whose image left the truncated space.
    pub truncated: Vec<usize>,
}

impl GeneratorMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn column(&self, j: usize) -> Option<(usize, f64)> {
        self.entries[j]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        match self.entries[j] {
            Some((r, v)) if r == i => v,
            _ => 0.0,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let d = self.dim();
        let mut m = vec![vec![0.0; d]; d];
        for (j, e) in self.entries.iter().enumerate() {
            if let Some((i, v)) = e {
                m[*i][j] = *v;
            }
        }
        m
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let mut y = vec![Complex64::zero(); self.dim()];
        for (j, e) in self.entries.iter().enumerate() {
            if let Some((i, v)) = e {
                y[*i] += x[j] * v;
            }
        }
        y
    }

    /// True when the matrix is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(j, e)| e.is_none_or(|(i, _)| i == j))
    }
}

fn sqrt_u(x: u32) -> f64 {
    (x as f64).sqrt()
}

/// Matrix of E_{αβ} (1-based) on the basis.
pub fn build_generator(basis: &FockBasis, alpha: usize, beta: usize) -> Result<GeneratorMatrix> {
    let last = basis.n + 1;
    if alpha == 0 || beta == 0 || alpha > last || beta > last {
        return Err(AlgebraError::Index {
            alpha,
            beta,
            max: last,
        });
    }
    let mut entries = Vec::with_capacity(basis.dim());
    let mut truncated = Vec::new();
    for (j, s) in basis.states.iter().enumerate() {
        let n = s.as_slice();
        let m = basis.last_occupation(j);
        let image: Option<(Vec<u32>, f64)> = match (alpha == last, beta == last) {
            (false, false) => {
                let (a, b) = (alpha - 1, beta - 1);
                if n[b] == 0 {
                    None
                } else if a == b {
                    Some((n.to_vec(), n[a] as f64))
                } else {
                    let mut t = n.to_vec();
                    t[b] -= 1;
                    t[a] += 1;
                    Some((t, sqrt_u(n[b]) * sqrt_u(n[a] + 1)))
                }
            }
            (false, true) => {
                let a = alpha - 1;
                let mut t = n.to_vec();
                t[a] += 1;
                Some((t, sqrt_u(n[a] + 1) * sqrt_u(m + 1)))
            }
            (true, false) => {
                let b = beta - 1;
                if n[b] == 0 {
                    None
                } else {
                    let mut t = n.to_vec();
                    t[b] -= 1;
                    Some((t, sqrt_u(n[b]) * sqrt_u(m)))
                }
            }
            (true, true) => Some((n.to_vec(), m as f64 + 1.0)),
        };
        let entry = match image {
            None => None,
            Some((t, v)) => match basis.position(&MultiIndex::new(t)) {
                Some(i) => Some((i, v)),
                None => {
                    truncated.push(j);
                    None
                }
            },
        };
        entries.push(entry);
    }
    Ok(GeneratorMatrix {
        alpha,
        beta,
        entries,
        truncated,
    })
}

/// All (N+1)² generators, keyed by 1-based (α, β).
#[derive(Debug, Clone)]
pub struct Generators {
    pub n: usize,
    mats: Vec<GeneratorMatrix>,
}

impl Generators {
    pub fn get(&self, alpha: usize, beta: usize) -> &GeneratorMatrix {
        &self.mats[(alpha - 1) * (self.n + 1) + (beta - 1)]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorMatrix> {
        self.mats.iter()
    }
}

pub fn build_generators(basis: &FockBasis) -> Generators {
    let m = basis.n + 1;
    let mats = (1..=m)
        .flat_map(|a| (1..=m).map(move |b| (a, b)))
        .map(|(a, b)| build_generator(basis, a, b).expect("indices in range"))
        .collect();
    Generators { n: basis.n, mats }
}

// (row, value) of A·B applied to e_j.
fn product_column(a: &GeneratorMatrix, b: &GeneratorMatrix, j: usize) -> Option<(usize, f64)> {
    let (i, v) = b.column(j)?;
    let (r, w) = a.column(i)?;
    Some((r, v * w))
}

/// Max over interior basis states e_j of
/// |([E_{αβ},E_{γδ}] − η_{βγ}E_{αδ} + η_{δα}E_{γβ}) e_j|.
pub fn structure_defect(
    basis: &FockBasis,
    gens: &Generators,
    metric: &Metric,
    (alpha, beta, gamma, delta): (usize, usize, usize, usize),
) -> f64 {
    let ab = gens.get(alpha, beta);
    let cd = gens.get(gamma, delta);
    let eta_bg = metric.eta(beta, gamma);
    let eta_da = metric.eta(delta, alpha);
    let mut worst: f64 = 0.0;
    for j in basis.interior() {
        let mut acc: HashMap<usize, f64> = HashMap::new();
        let mut push = |e: Option<(usize, f64)>, s: f64| {
            if let Some((i, v)) = e {
                *acc.entry(i).or_insert(0.0) += s * v;
            }
        };
        push(product_column(ab, cd, j), 1.0);
        push(product_column(cd, ab, j), -1.0);
        push(gens.get(alpha, delta).column(j), -eta_bg);
        push(gens.get(gamma, beta).column(j), eta_da);
        worst = acc.values().fold(worst, |w, v| w.max(v.abs()));
    }
    worst
}

/// Largest defect over all (α,β,γ,δ) ∈ {1..N+1}⁴.
pub fn structure_sweep(basis: &FockBasis, gens: &Generators) -> f64 {
    let metric = Metric::new(basis.n);
    let m = basis.n + 1;
    let mut worst: f64 = 0.0;
    for a in 1..=m {
        for b in 1..=m {
            for c in 1..=m {
                for d in 1..=m {
                    worst = worst.max(structure_defect(basis, gens, &metric, (a, b, c, d)));
                }
            }
        }
    }
    worst
}

/// Coefficients √(Γ(K)/(n₁!⋯n_N! Γ(K+|n|))) z^n.
pub fn fock_bg_state(basis: &FockBasis, z: &[Complex64]) -> Result<Vec<Complex64>> {
    if z.len() != basis.n {
        return Err(AlgebraError::Length {
            got: z.len(),
            expected: basis.n,
        });
    }
    Ok((0..basis.dim())
        .map(|i| basis.state(i).monomial(z) / basis.conversion_factor(i))
        .collect())
}

/// ⟨a|b⟩ = Σ ā_i b_i.
pub fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// max over α and interior states of |((E_{N+1,α} − z_α)|z⟩)_n|.
pub fn fock_eigen_residual(basis: &FockBasis, gens: &Generators, z: &[Complex64]) -> Result<f64> {
    let state = fock_bg_state(basis, z)?;
    let mut worst: f64 = 0.0;
    for a in 1..=basis.n {
        let lowered = gens.get(basis.n + 1, a).apply(&state);
        for i in basis.interior() {
            worst = worst.max((lowered[i] - z[a - 1] * state[i]).norm());
        }
    }
    Ok(worst)
}
