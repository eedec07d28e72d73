//! Special functions needed by the coherent-state toolkit.
//!
//! Everything here is binary64 and self-contained: the Pochhammer symbol,
//! Gamma and log-Gamma, the hypergeometric series ₀F₁ (real and complex
//! argument) and the modified Bessel functions I_ν and K_ν of real order.
//!
//! All functions are pure; there is no global state.

mod bessel;
mod gamma;
mod hyper;

pub use bessel::{
    bessel_i, bessel_i_scaled, bessel_i_with, bessel_k, bessel_k_asymptotic,
    bessel_k_integer_series, bessel_k_method, bessel_k_reflection, bessel_k_scaled, KMethod,
};
pub use gamma::{digamma_int, gamma, log_gamma, pochhammer, rgamma, sin_pi};
pub use hyper::{hyp0f1, hyp0f1_derivative, hyp0f1_real, hyp0f1_with};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecfunError {
    #[error("{func} has a pole at x = {x}")]
    Pole { func: &'static str, x: f64 },
    #[error("argument x = {x} is outside the domain of {func}")]
    Domain { func: &'static str, x: f64 },
    #[error("{func} series did not converge within {terms} terms")]
    NotConverged { func: &'static str, terms: usize },
    #[error("invalid series control: rel_tol = {rel_tol}, max_terms = {max_terms}")]
    InvalidControl { rel_tol: f64, max_terms: usize },
}

pub type Result<T> = std::result::Result<T, SpecfunError>;

/// Stopping rule for power series.
///
/// A series is accepted once two consecutive terms satisfy
/// `|term| <= rel_tol * |partial sum|`. Hitting `max_terms` first is an
/// error, never a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesControl {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0) || max_terms == 0 {
            return Err(SpecfunError::InvalidControl { rel_tol, max_terms });
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            rel_tol: 1e-16,
            max_terms: 500,
        }
    }
}
