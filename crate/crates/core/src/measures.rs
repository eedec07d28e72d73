//! Measure densities on the BG plane, the U(N,1) ball of ℂ^N and the
//! Perelomov disc, together with the symplectic density induced by a
//! coherent-state norm and the machinery that compares two densities up to
//! normalisation.
//!
//! Densities are with respect to the area element d(Re z) d(Im z); with that
//! convention the n = 0 moment of the BG density is exactly 1.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use serde::Serialize;
use thiserror::Error;

use crate::specfun::{self, gamma, hyp0f1_real, SpecfunError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("{what} is undefined at r = {r}")]
    Domain { what: &'static str, r: f64 },
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, MeasureError>;

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(MeasureError::InvalidParameter { name, value })
    }
}

/// (2/(π Γ(2K))) K_{2K−1}(2r) r^{2K−1}, prepared for repeated evaluation.
#[derive(Debug, Clone, Copy)]
pub struct BgDensity {
    k: f64,
    prefactor: f64,
}

impl BgDensity {
    pub fn new(k: f64) -> Result<Self> {
        require_positive("K", k)?;
        Ok(Self {
            k,
            prefactor: 2.0 / (PI * gamma(2.0 * k)?),
        })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(MeasureError::Domain {
                what: "BG density",
                r,
            });
        }
        let order = 2.0 * self.k - 1.0;
        Ok(self.prefactor * specfun::bessel_k(order, 2.0 * r)? * r.powf(order))
    }

    /// NaN instead of an error; for quadrature integrands.
    pub fn eval_unchecked(&self, r: f64) -> f64 {
        self.eval(r).unwrap_or(f64::NAN)
    }
}

pub fn bg_density(k: f64, r: f64) -> Result<f64> {
    BgDensity::new(k)?.eval(r)
}

/// (2/(π^N Γ(K))) r^{K−N} K_{K−N}(2r) as a function of r = ‖z‖.
#[derive(Debug, Clone, Copy)]
pub struct Un1Density {
    k: f64,
    n: usize,
    prefactor: f64,
}

impl Un1Density {
    pub fn new(k: f64, n: usize) -> Result<Self> {
        require_positive("K", k)?;
        if n == 0 {
            return Err(MeasureError::InvalidParameter {
                name: "N",
                value: 0.0,
            });
        }
        Ok(Self {
            k,
            n,
            prefactor: 2.0 / (PI.powi(n as i32) * gamma(k)?),
        })
    }

    pub fn eval(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) {
            return Err(MeasureError::Domain {
                what: "U(N,1) density",
                r,
            });
        }
        let order = self.k - self.n as f64;
        Ok(self.prefactor * r.powf(order) * specfun::bessel_k(order, 2.0 * r)?)
    }

    pub fn eval_unchecked(&self, r: f64) -> f64 {
        self.eval(r).unwrap_or(f64::NAN)
    }
}

pub fn un1_density(k: f64, n: usize, r: f64) -> Result<f64> {
    Un1Density::new(k, n)?.eval(r)
}

/// ((2K−1)/π)(1−ρ²)^{2K−2} on the unit disc.
pub fn perelomov_density(k: f64, rho: f64) -> Result<f64> {
    if !(k > 0.5) {
        return Err(MeasureError::InvalidParameter {
            name: "K",
            value: k,
        });
    }
    if !(0.0..1.0).contains(&rho) {
        return Err(MeasureError::Domain {
            what: "Perelomov density",
            r: rho,
        });
    }
    Ok((2.0 * k - 1.0) / PI * (1.0 - rho * rho).powf(2.0 * k - 2.0))
}

/// Coherent-state norm F(t) = ⟨z|z⟩ as a function of t = |z|², with exact
/// first and second derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum NormFunction {
    /// F(t) = ₀F₁(2K; t).
    Bg { k: f64 },
    /// F(t) = (1 − t)^{−2K}, t < 1.
    Perelomov { k: f64 },
}

impl NormFunction {
    pub fn validate(&self) -> Result<()> {
        match *self {
            NormFunction::Bg { k } | NormFunction::Perelomov { k } => require_positive("K", k),
        }
    }

    fn check_t(&self, t: f64) -> Result<()> {
        let ok = match self {
            NormFunction::Bg { .. } => t >= 0.0 && t.is_finite(),
            NormFunction::Perelomov { .. } => (0.0..1.0).contains(&t),
        };
        if ok {
            Ok(())
        } else {
            Err(MeasureError::Domain {
                what: "norm function",
                r: t.sqrt(),
            })
        }
    }

    /// (F, F', F'') at t.
    pub fn derivatives(&self, t: f64) -> Result<(f64, f64, f64)> {
        self.validate()?;
        self.check_t(t)?;
        Ok(match *self {
            NormFunction::Bg { k } => {
                // d/dt ₀F₁(ν; t) = ₀F₁(ν+1; t)/ν
                let a = 2.0 * k;
                let f = hyp0f1_real(a, t)?;
                let f1 = hyp0f1_real(a + 1.0, t)? / a;
                let f2 = hyp0f1_real(a + 2.0, t)? / (a * (a + 1.0));
                (f, f1, f2)
            }
            NormFunction::Perelomov { k } => {
                let a = 2.0 * k;
                let u = 1.0 - t;
                let f = u.powf(-a);
                (f, a * f / u, a * (a + 1.0) * f / (u * u))
            }
        })
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        Ok(self.derivatives(t)?.0)
    }
}

/// (1/F) ∂_z ∂_z̄ log F(|z|²), evaluated as
/// (1/F)[F'/F + t (F''F − F'²)/F²] with t = r².
///
/// Defined at r = 0 as well, since the expression only involves t.
pub fn symplectic_density(norm: &NormFunction, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(MeasureError::Domain {
            what: "symplectic density",
            r,
        });
    }
    let t = r * r;
    let (f, f1, f2) = norm.derivatives(t)?;
    let g1 = f1 / f;
    Ok((g1 + t * (f2 / f - g1 * g1)) / f)
}

/// Closed form of the BG symplectic density:
/// (1/2K) F⁻³ [F₁F + r² F₂F/(2K+1) − r² F₁²/(2K)] with F = ₀F₁(2K; r²),
/// F₁ = ₀F₁(2K+1; r²), F₂ = ₀F₁(2K+2; r²). Divided through by F² before
/// combining so large r does not overflow F³.
pub fn bg_symplectic_closed(k: f64, r: f64) -> Result<f64> {
    require_positive("K", k)?;
    if !(r >= 0.0) {
        return Err(MeasureError::Domain {
            what: "BG symplectic density",
            r,
        });
    }
    let a = 2.0 * k;
    let t = r * r;
    let f = hyp0f1_real(a, t)?;
    let q1 = hyp0f1_real(a + 1.0, t)? / f;
    let q2 = hyp0f1_real(a + 2.0, t)? / f;
    Ok((q1 + t * q2 / (a + 1.0) - t * q1 * q1 / a) / (a * f))
}

/// Leading small-r behaviour of the BG symplectic density,
/// (1/2K)[1 − (2K+3)/(2K(2K+1)) r²].
pub fn omega_near_origin(k: f64, r: f64) -> Result<f64> {
    require_positive("K", k)?;
    let a = 2.0 * k;
    Ok((1.0 - (a + 3.0) / (a * (a + 1.0)) * r * r) / a)
}

/// Leading small-r behaviour of the BG density for K > 1/2, K ≠ 1,
/// (1/((2K−1)π))[1 − r²/(2K−2)].
pub fn bg_near_origin(k: f64, r: f64) -> Result<f64> {
    if !(k > 0.5) || k == 1.0 {
        return Err(MeasureError::InvalidParameter {
            name: "K",
            value: k,
        });
    }
    Ok((1.0 - r * r / (2.0 * k - 2.0)) / ((2.0 * k - 1.0) * PI))
}

/// (omega_approx, bg_approx).
pub fn near_origin_pair(k: f64, r: f64) -> Result<(f64, f64)> {
    Ok((omega_near_origin(k, r)?, bg_near_origin(k, r)?))
}

/// Which measure a density belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind")]
pub enum MeasureKind {
    Bg { k: f64 },
    Un1 { k: f64, n: usize },
    Perelomov { k: f64 },
    SymplecticInduced { norm: NormFunction },
}

impl MeasureKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            MeasureKind::Bg { k } => require_positive("K", k),
            MeasureKind::Un1 { k, n } => {
                require_positive("K", k)?;
                if n == 0 {
                    return Err(MeasureError::InvalidParameter {
                        name: "N",
                        value: 0.0,
                    });
                }
                Ok(())
            }
            MeasureKind::Perelomov { k } => {
                if k > 0.5 {
                    Ok(())
                } else {
                    Err(MeasureError::InvalidParameter {
                        name: "K",
                        value: k,
                    })
                }
            }
            MeasureKind::SymplecticInduced { norm } => norm.validate(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            MeasureKind::Bg { .. } => "bg".into(),
            MeasureKind::Un1 { .. } => "un1".into(),
            MeasureKind::Perelomov { .. } => "perelomov".into(),
            MeasureKind::SymplecticInduced { .. } => "omega".into(),
        }
    }

    /// Radial density at r (or ρ on the disc).
    pub fn density(&self, r: f64) -> Result<f64> {
        match *self {
            MeasureKind::Bg { k } => bg_density(k, r),
            MeasureKind::Un1 { k, n } => un1_density(k, n, r),
            MeasureKind::Perelomov { k } => perelomov_density(k, r),
            MeasureKind::SymplecticInduced {
                norm: NormFunction::Bg { k },
            } => bg_symplectic_closed(k, r),
            MeasureKind::SymplecticInduced { norm } => symplectic_density(&norm, r),
        }
    }

    /// Exponents of the small-r expansion of the density, used as the
    /// least-squares basis when fitting near-origin behaviour.
    pub fn expansion_exponents(&self) -> Vec<f64> {
        let even = [0.0, 2.0, 4.0, 6.0, 8.0];
        let mut exps: Vec<f64> = match *self {
            // analytic part in r², plus r^{4K-2} × (analytic in r²) from I_ν
            MeasureKind::Bg { k } => {
                let mut e = vec![0.0, 2.0, 4.0, 6.0];
                e.extend([0.0, 2.0, 4.0].map(|j| 4.0 * k - 2.0 + j));
                e
            }
            MeasureKind::Un1 { k, n } => {
                let mut e = vec![0.0, 2.0, 4.0, 6.0];
                let nu = k - n as f64;
                e.extend([0.0, 2.0, 4.0].map(|j| nu - nu.abs() + j));
                e
            }
            _ => even.to_vec(),
        };
        exps.sort_by(|a, b| a.total_cmp(b));
        exps.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
        exps
    }
}

/// Least-squares fit of a density by Σ c_j r^{e_j}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpansionFit {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub residual_rms: f64,
    /// Fitted constant term.
    pub c0: f64,
    /// Fitted r² coefficient divided by c0.
    pub c2: f64,
    /// Standard error of `c2`.
    pub c2_std_err: f64,
}

/// Fits y(r) ≈ Σ c_j r^{e_j}. Needs a 0 and a 2 among the exponents.
pub fn fit_expansion(r: &[f64], y: &[f64], exponents: &[f64]) -> Option<ExpansionFit> {
    let m = exponents.len();
    let n = r.len();
    if n != y.len() || n < m + 2 {
        return None;
    }
    let i0 = exponents.iter().position(|&e| e == 0.0)?;
    let i2 = exponents.iter().position(|&e| e == 2.0)?;
    // Scale r to [0, 1] for conditioning.
    let scale = r.iter().cloned().fold(0.0, f64::max);
    let design = DMatrix::from_fn(n, m, |i, j| (r[i] / scale).powf(exponents[j]));
    let rhs = DVector::from_column_slice(y);
    let svd = design.clone().svd(true, true);
    let scaled = svd.solve(&rhs, 1e-14).ok()?;
    let resid = &design * &scaled - &rhs;
    let dof = (n - m) as f64;
    let s2 = resid.norm_squared() / dof;
    let v_t = svd.v_t.as_ref()?;
    let sv = &svd.singular_values;
    // Var(ĉ_j) = s² Σ_k V_jk² / σ_k²
    let var: Vec<f64> = (0..m)
        .map(|j| {
            s2 * (0..sv.len())
                .map(|k| (v_t[(k, j)] / sv[k]).powi(2))
                .sum::<f64>()
        })
        .collect();
    let unscale = |j: usize| scale.powf(-exponents[j]);
    let coefficients: Vec<f64> = (0..m).map(|j| scaled[j] * unscale(j)).collect();
    let std_errors: Vec<f64> = (0..m).map(|j| var[j].sqrt() * unscale(j)).collect();
    let c0 = coefficients[i0];
    let c2 = coefficients[i2] / c0;
    let c2_std_err = ((std_errors[i2] / c0).powi(2)
        + (coefficients[i2] * std_errors[i0] / (c0 * c0)).powi(2))
    .sqrt();
    Some(ExpansionFit {
        exponents: exponents.to_vec(),
        coefficients,
        std_errors,
        residual_rms: (resid.norm_squared() / n as f64).sqrt(),
        c0,
        c2,
        c2_std_err,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Same,
    Different,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Same => "SAME",
            Verdict::Different => "DIFFERENT",
        }
    }
}

/// Largest |normalised ratio − 1| treated as "same shape".
pub const SHAPE_TOLERANCE: f64 = 1e-9;
/// Grid points up to this radius enter the near-origin fit.
pub const FIT_WINDOW: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub measure_a: MeasureKind,
    pub measure_b: MeasureKind,
    pub normalized: bool,
    pub grid: Vec<f64>,
    pub density_a: Vec<f64>,
    pub density_b: Vec<f64>,
    /// (a/a₀)/(b/b₀) when normalised, a/b otherwise.
    pub ratio: Vec<f64>,
    pub fit_a: Option<ExpansionFit>,
    pub fit_b: Option<ExpansionFit>,
    /// max |ratio − 1|.
    pub max_deviation: f64,
    /// Fitted r² coefficients differ by more than 10× their standard errors.
    pub fit_separated: bool,
    pub verdict: Verdict,
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(MeasureError::Grid("empty grid".into()));
    }
    if grid.iter().any(|r| !r.is_finite()) {
        return Err(MeasureError::Grid("non-finite grid point".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MeasureError::Grid(
            "grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Compares two radial densities on a grid.
///
/// The verdict is DIFFERENT when the near-origin fits separate
/// (|Δc₂| > 10(σ_a + σ_b)) or the normalised ratio leaves 1 by more than
/// [`SHAPE_TOLERANCE`]; SAME otherwise.
pub fn compare(
    a: &MeasureKind,
    b: &MeasureKind,
    grid: &[f64],
    normalize: bool,
) -> Result<ComparisonReport> {
    a.validate()?;
    b.validate()?;
    check_grid(grid)?;
    let density_a = grid
        .iter()
        .map(|&r| a.density(r))
        .collect::<Result<Vec<_>>>()?;
    let density_b = grid
        .iter()
        .map(|&r| b.density(r))
        .collect::<Result<Vec<_>>>()?;
    let (na, nb) = if normalize {
        (density_a[0], density_b[0])
    } else {
        (1.0, 1.0)
    };
    let ratio: Vec<f64> = density_a
        .iter()
        .zip(&density_b)
        .map(|(x, y)| (x / na) / (y / nb))
        .collect();
    let max_deviation = ratio.iter().map(|q| (q - 1.0).abs()).fold(0.0, f64::max);

    let window = grid
        .iter()
        .take_while(|&&r| r <= FIT_WINDOW * (1.0 + 1e-12))
        .count();
    let fit = |kind: &MeasureKind, dens: &[f64], norm: f64| {
        let y: Vec<f64> = dens[..window].iter().map(|v| v / norm).collect();
        fit_expansion(&grid[..window], &y, &kind.expansion_exponents())
    };
    let fit_a = fit(a, &density_a, na);
    let fit_b = fit(b, &density_b, nb);
    let fit_separated = match (&fit_a, &fit_b) {
        (Some(fa), Some(fb)) => (fa.c2 - fb.c2).abs() > 10.0 * (fa.c2_std_err + fb.c2_std_err),
        _ => false,
    };
    let verdict = if fit_separated || max_deviation > SHAPE_TOLERANCE {
        Verdict::Different
    } else {
        Verdict::Same
    };
    Ok(ComparisonReport {
        measure_a: *a,
        measure_b: *b,
        normalized: normalize,
        grid: grid.to_vec(),
        density_a,
        density_b,
        ratio,
        fit_a,
        fit_b,
        max_deviation,
        fit_separated,
        verdict,
    })
}

/// BG density against the symplectic density of the BG norm.
pub fn compare_measures(k: f64, grid: &[f64], normalize: bool) -> Result<ComparisonReport> {
    compare(
        &MeasureKind::Bg { k },
        &MeasureKind::SymplecticInduced {
            norm: NormFunction::Bg { k },
        },
        grid,
        normalize,
    )
}

/// Perelomov density against the symplectic density of the Perelomov norm.
pub fn compare_perelomov(k: f64, grid: &[f64], normalize: bool) -> Result<ComparisonReport> {
    compare(
        &MeasureKind::Perelomov { k },
        &MeasureKind::SymplecticInduced {
            norm: NormFunction::Perelomov { k },
        },
        grid,
        normalize,
    )
}

/// e^{−2r}/(π r): BG density at K = 1/4.
pub fn bg_density_quarter(r: f64) -> f64 {
    (-2.0 * r).exp() / (PI * r)
}

/// (2/π) e^{−2r}: BG density at K = 3/4.
pub fn bg_density_three_quarters(r: f64) -> f64 {
    2.0 / PI * (-2.0 * r).exp()
}

/// (1/cosh³2r)(sinh2r cosh2r/(2r) + 1): symplectic density at K = 1/4.
pub fn omega_quarter(r: f64) -> f64 {
    let (s, c) = ((2.0 * r).sinh(), (2.0 * r).cosh());
    (s * c / (2.0 * r) + 1.0) / (c * c * c)
}

/// (2r/sinh³2r)(cosh2r sinh2r/(2r) − 1): symplectic density at K = 3/4.
pub fn omega_three_quarters(r: f64) -> f64 {
    let x = 2.0 * r;
    let (s, c) = (x.sinh(), x.cosh());
    // c s/x − 1 cancels for small x; expand sinh/cosh there.
    let bracket = if x < 0.1 {
        let x2 = x * x;
        // (c s − x)/x = 2x²/3 + 2x⁴/15 + 4x⁶/315 + 2x⁸/2835 + …
        x2 * (2.0 / 3.0 + x2 * (2.0 / 15.0 + x2 * (4.0 / 315.0 + x2 * 2.0 / 2835.0)))
    } else {
        c * s / x - 1.0
    };
    x / (s * s * s) * bracket
}
