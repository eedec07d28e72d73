//! Modified Bessel functions I_ν and K_ν of real order and real positive
//! argument.
//!
//! K_ν is evaluated by one of five routes depending on (ν, x):
//!
//! | route                | where                                              |
//! |----------------------|----------------------------------------------------|
//! | asymptotic expansion | half-integer ν (series terminates), or x > 10 when the series reaches machine precision |
//! | Steed continued fraction (Temme) | remaining x > 2                          |
//! | integer-order log series | x ≤ 2, ν an integer                            |
//! | reflection (I_{−ν} − I_ν) | x ≤ 2, ν at least 0.05 away from an integer  |
//! | Temme series         | x ≤ 2, ν within 0.05 of (but not at) an integer    |
//!
//! The reflection form cancels badly near integer order and for large x,
//! which is why it only covers the corner where it is well conditioned.

use std::f64::consts::PI;

use super::gamma::{digamma_int, rgamma, sin_pi};
use super::{Result, SeriesControl, SpecfunError};

const SMALL_X: f64 = 2.0;
const ASYMPTOTIC_X: f64 = 10.0;
const I_ASYMPTOTIC_X: f64 = 30.0;
const REFLECTION_MIN_GAP: f64 = 0.05;
const INTEGER_SNAP: f64 = 1e-13;
const MAX_ASYMPTOTIC_TERMS: usize = 60;
const MAX_CF_ITER: usize = 10_000;

// Taylor coefficients c_k of 1/Γ(z) = Σ c_k z^k, k = 1..26.
#[allow(clippy::excessive_precision)]
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -2.013_485_478_078_823_865_6e-5,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
];

/// Which evaluation route [`bessel_k`] takes for a given (ν, x).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KMethod {
    Asymptotic,
    ContinuedFraction,
    IntegerSeries,
    Reflection,
    Temme,
}

fn integer_gap(nu: f64) -> f64 {
    (nu - nu.round()).abs()
}

pub fn bessel_k_method(nu: f64, x: f64) -> KMethod {
    let nu = nu.abs();
    let gap = integer_gap(nu);
    if (gap - 0.5).abs() == 0.0 || (x > ASYMPTOTIC_X && asymptotic_k_scaled(nu, x).is_ok()) {
        KMethod::Asymptotic
    } else if x > SMALL_X {
        KMethod::ContinuedFraction
    } else if gap < INTEGER_SNAP * nu.max(1.0) {
        KMethod::IntegerSeries
    } else if gap >= REFLECTION_MIN_GAP {
        KMethod::Reflection
    } else {
        KMethod::Temme
    }
}

fn check_k_domain(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(SpecfunError::Domain {
            func: "bessel_k",
            x,
        })
    }
}

/// K_ν(x) for real ν and x > 0.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    check_k_domain(x)?;
    let nu = nu.abs();
    match bessel_k_method(nu, x) {
        KMethod::Asymptotic => Ok(asymptotic_k_scaled(nu, x)? * (-x).exp()),
        KMethod::ContinuedFraction => Ok(steed_k_scaled(nu, x) * (-x).exp()),
        KMethod::IntegerSeries => bessel_k_integer_series(nu.round() as u32, x),
        KMethod::Reflection => bessel_k_reflection(nu, x),
        KMethod::Temme => Ok(temme_k(nu, x)),
    }
}

/// eˣ K_ν(x); avoids underflow for large x.
pub fn bessel_k_scaled(nu: f64, x: f64) -> Result<f64> {
    check_k_domain(x)?;
    let nu = nu.abs();
    match bessel_k_method(nu, x) {
        KMethod::Asymptotic => asymptotic_k_scaled(nu, x),
        KMethod::ContinuedFraction => Ok(steed_k_scaled(nu, x)),
        _ => Ok(bessel_k(nu, x)? * x.exp()),
    }
}

/// K_ν = (π/2)(I_{−ν} − I_ν)/sin(νπ). Poorly conditioned near integer ν and
/// for large x; exposed for cross-checks.
pub fn bessel_k_reflection(nu: f64, x: f64) -> Result<f64> {
    check_k_domain(x)?;
    let s = sin_pi(nu);
    if s == 0.0 {
        return Err(SpecfunError::Pole {
            func: "bessel_k_reflection",
            x: nu,
        });
    }
    Ok(0.5 * PI * (bessel_i(-nu, x)? - bessel_i(nu, x)?) / s)
}

/// Integer-order logarithmic series for K_n(x).
pub fn bessel_k_integer_series(n: u32, x: f64) -> Result<f64> {
    check_k_domain(x)?;
    let ctl = SeriesControl::default();
    let half = 0.5 * x;
    let q = half * half;
    let nf = n as f64;

    let mut finite = 0.0;
    if n > 0 {
        // Σ_{k<n} (n-k-1)!/k! (-q)^k
        let mut term = fact(n - 1);
        finite = term;
        for k in 1..n {
            term *= -q / (k as f64 * (n - k) as f64);
            finite += term;
        }
        finite *= 0.5 * half.powf(-nf);
    }

    let log_part = if n.is_multiple_of(2) { -1.0 } else { 1.0 } * half.ln() * bessel_i(nf, x)?;

    let mut psi_a = digamma_int(1);
    let mut psi_b = digamma_int(n + 1);
    let mut coef = rgamma(nf + 1.0);
    let mut sum = (psi_a + psi_b) * coef;
    let mut small = 0;
    let mut converged = false;
    for k in 0..ctl.max_terms {
        let kf = k as f64;
        coef *= q / ((kf + 1.0) * (nf + kf + 1.0));
        psi_a += 1.0 / (kf + 1.0);
        psi_b += 1.0 / (nf + kf + 1.0);
        let term = coef * (psi_a + psi_b);
        sum += term;
        if term.abs() <= ctl.rel_tol * sum.abs() {
            small += 1;
            if small == 2 {
                converged = true;
                break;
            }
        } else {
            small = 0;
        }
    }
    if !converged {
        return Err(SpecfunError::NotConverged {
            func: "bessel_k_integer_series",
            terms: ctl.max_terms,
        });
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let series_part = sign * 0.5 * half.powf(nf) * sum;
    Ok(finite + log_part + series_part)
}

fn fact(n: u32) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

/// Large-argument expansion e^x K_ν(x) ~ √(π/2x) Σ a_k(ν)/x^k.
///
/// Terminates exactly for half-integer ν. Otherwise fails unless the terms
/// fall below machine precision before they start to grow.
fn asymptotic_k_scaled(nu: f64, x: f64) -> Result<f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next == 0.0 {
            return Ok((PI / (2.0 * x)).sqrt() * sum);
        }
        if next.abs() > term.abs() && mu < odd * odd {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.5 * sum.abs() {
            return Ok((PI / (2.0 * x)).sqrt() * sum);
        }
    }
    Err(SpecfunError::NotConverged {
        func: "bessel_k_asymptotic",
        terms: MAX_ASYMPTOTIC_TERMS,
    })
}

/// K_ν(x) from the large-argument expansion, or `NotConverged` when the
/// expansion cannot reach machine precision at this x.
pub fn bessel_k_asymptotic(nu: f64, x: f64) -> Result<f64> {
    check_k_domain(x)?;
    Ok(asymptotic_k_scaled(nu.abs(), x)? * (-x).exp())
}

// Split ν = n + μ with |μ| <= 1/2.
fn split_order(nu: f64) -> (u32, f64) {
    let n = (nu + 0.5).floor();
    (n as u32, nu - n)
}

// Upward recurrence K_{μ+i+1} = K_{μ+i-1} + 2(μ+i)/x K_{μ+i}.
fn recur_up(mu: f64, n: u32, x: f64, mut k_mu: f64, mut k_mu1: f64) -> f64 {
    let two_over_x = 2.0 / x;
    for i in 1..=n {
        let next = (mu + i as f64) * two_over_x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
    }
    k_mu
}

// (1/Γ(1−μ) − 1/Γ(1+μ))/(2μ) and (1/Γ(1−μ) + 1/Γ(1+μ))/2.
fn temme_gammas(mu: f64) -> (f64, f64) {
    let mu2 = mu * mu;
    let mut gam1 = 0.0;
    let mut gam2 = 0.0;
    let mut p = 1.0;
    for pair in RGAMMA_TAYLOR.chunks(2) {
        gam2 += pair[0] * p;
        if let Some(c) = pair.get(1) {
            gam1 -= c * p;
        }
        p *= mu2;
    }
    (gam1, gam2)
}

// Temme's series for K_μ, K_{μ+1}, x <= 2, then recurrence to K_ν.
fn temme_k(nu: f64, x: f64) -> f64 {
    let (n, mu) = split_order(nu);
    let mu2 = mu * mu;
    let half = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < f64::EPSILON {
        1.0
    } else {
        pimu / pimu.sin()
    };
    let d = -half.ln();
    let e = mu * d;
    let fact2 = if e.abs() < f64::EPSILON {
        1.0
    } else {
        e.sinh() / e
    };
    let (gam1, gam2) = temme_gammas(mu);
    let gampl = gam2 - mu * gam1;
    let gammi = gam2 + mu * gam1;

    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = half * half;
    let mut sum1 = p;
    for i in 1..MAX_CF_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * f64::EPSILON {
            break;
        }
    }
    recur_up(mu, n, x, sum, sum1 * 2.0 / x)
}

// Steed's continued fraction (Temme's CF2) for e^x K_μ, e^x K_{μ+1}, x > 2.
fn steed_k_scaled(nu: f64, x: f64) -> f64 {
    let (n, mu) = split_order(nu);
    let mu2 = mu * mu;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu2;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_CF_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            break;
        }
    }
    h *= a1;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    recur_up(mu, n, x, k_mu, k_mu1)
}

/// I_ν(x) by the ascending series (x/2)^ν Σ (x/2)^{2n}/(n! Γ(ν+n+1)).
pub fn bessel_i(nu: f64, x: f64) -> Result<f64> {
    bessel_i_with(nu, x, &SeriesControl::default())
}

pub fn bessel_i_with(nu: f64, x: f64, ctl: &SeriesControl) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(SpecfunError::Domain {
            func: "bessel_i",
            x,
        });
    }
    let nu = if nu < 0.0 && nu == nu.floor() {
        -nu
    } else {
        nu
    };
    if x == 0.0 {
        return if nu == 0.0 {
            Ok(1.0)
        } else if nu > 0.0 {
            Ok(0.0)
        } else {
            Err(SpecfunError::Domain {
                func: "bessel_i",
                x,
            })
        };
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half.powf(nu) * rgamma(nu + 1.0);
    let mut sum = term;
    let mut small = 0;
    for n in 0..ctl.max_terms {
        let nf = n as f64;
        term *= q / ((nf + 1.0) * (nu + nf + 1.0));
        sum += term;
        if term.abs() <= ctl.rel_tol * sum.abs() {
            small += 1;
            if small == 2 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
    }
    Err(SpecfunError::NotConverged {
        func: "bessel_i",
        terms: ctl.max_terms,
    })
}

/// e^{−x} I_ν(x). Uses the large-argument expansion above x = 30 when it
/// converges, the ascending series otherwise.
pub fn bessel_i_scaled(nu: f64, x: f64) -> Result<f64> {
    if x > I_ASYMPTOTIC_X {
        if let Some(v) = asymptotic_i_scaled(nu, x) {
            return Ok(v);
        }
    }
    Ok(bessel_i(nu, x)? * (-x).exp())
}

fn asymptotic_i_scaled(nu: f64, x: f64) -> Option<f64> {
    let mu = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    for k in 1..=MAX_ASYMPTOTIC_TERMS {
        let odd = (2 * k - 1) as f64;
        let next = -term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next == 0.0 {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
        if next.abs() > term.abs() && mu < odd * odd {
            return None;
        }
        term = next;
        sum += term;
        if term.abs() <= f64::EPSILON * 0.5 * sum.abs() {
            return Some(sum / (2.0 * PI * x).sqrt());
        }
    }
    None
}
