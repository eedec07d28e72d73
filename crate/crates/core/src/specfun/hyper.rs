use num_complex::Complex64;

use super::{Result, SeriesControl, SpecfunError};

/// ₀F₁(ν; z) = Σ zⁿ / ((ν)_n n!) for ν > 0 and complex z.
pub fn hyp0f1(nu: f64, z: Complex64) -> Result<Complex64> {
    hyp0f1_with(nu, z, &SeriesControl::default())
}

/// [`hyp0f1`] with an explicit stopping rule.
pub fn hyp0f1_with(nu: f64, z: Complex64, ctl: &SeriesControl) -> Result<Complex64> {
    if !(nu > 0.0) {
        return Err(SpecfunError::Domain {
            func: "hyp0f1",
            x: nu,
        });
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut small_in_a_row = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= z / ((nu + nf) * (nf + 1.0));
        sum += term;
        if term.norm() <= ctl.rel_tol * sum.norm() {
            small_in_a_row += 1;
            if small_in_a_row == 2 {
                return Ok(sum);
            }
        } else {
            small_in_a_row = 0;
        }
    }
    Err(SpecfunError::NotConverged {
        func: "hyp0f1",
        terms: ctl.max_terms,
    })
}

/// Real-argument ₀F₁(ν; x).
pub fn hyp0f1_real(nu: f64, x: f64) -> Result<f64> {
    hyp0f1(nu, Complex64::new(x, 0.0)).map(|v| v.re)
}

/// d/dz ₀F₁(ν; z) = ₀F₁(ν+1; z) / ν.
pub fn hyp0f1_derivative(nu: f64, z: Complex64) -> Result<Complex64> {
    if !(nu > 0.0) {
        return Err(SpecfunError::Domain {
            func: "hyp0f1_derivative",
            x: nu,
        });
    }
    Ok(hyp0f1(nu + 1.0, z)? / nu)
}
