use std::f64::consts::PI;

use super::{Result, SpecfunError};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const FACTORIALS: [f64; 23] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5_040.0,
    40_320.0,
    362_880.0,
    3_628_800.0,
    39_916_800.0,
    479_001_600.0,
    6_227_020_800.0,
    87_178_291_200.0,
    1_307_674_368_000.0,
    20_922_789_888_000.0,
    355_687_428_096_000.0,
    6_402_373_705_728_000.0,
    121_645_100_408_832_000.0,
    2_432_902_008_176_640_000.0,
    51_090_942_171_709_440_000.0,
    1_124_000_727_777_607_680_000.0,
];

/// Rising factorial (a)_n = a (a+1) ... (a+n-1); (a)_0 = 1.
///
/// Overflows to ±∞ for large `n` rather than erroring.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}

/// sin(πx) with exact zeros at the integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        (PI * (r - 2.0)).sin()
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

// Lanczos sum for Γ(x), x >= 0.5, without overflowing the power term.
fn lanczos_gamma(x: f64) -> f64 {
    let xm = x - 1.0;
    let mut a = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (xm + i as f64);
    }
    let t = xm + LANCZOS_G + 0.5;
    let half = t.powf(0.5 * (xm + 0.5));
    (2.0 * PI).sqrt() * half * (half * (-t).exp()) * a
}

/// Gamma function for real arguments.
///
/// Exact for integers up to 22, Lanczos above 0.5 and the reflection
/// Γ(x)Γ(1−x) = π / sin(πx) below.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(SpecfunError::Domain { func: "gamma", x });
    }
    if is_nonpositive_integer(x) {
        return Err(SpecfunError::Pole { func: "gamma", x });
    }
    if x == x.floor() && x <= 22.0 {
        return Ok(FACTORIALS[x as usize - 1]);
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * lanczos_gamma(1.0 - x)));
    }
    if x >= STIRLING_MIN {
        return Ok(stirling_gamma(x));
    }
    Ok(lanczos_gamma(x))
}

// Above this the Stirling series is at full precision, and its power term
// has an exactly representable base (Lanczos shifts the base and loses
// digits near the overflow limit).
const STIRLING_MIN: f64 = 15.0;

fn stirling_correction(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING {
        corr += c * p;
        p *= inv2;
    }
    corr
}

fn stirling_gamma(x: f64) -> f64 {
    let half = x.powf(0.5 * x);
    (2.0 * PI).sqrt() * half * (half * (-x).exp()) / x.sqrt() * stirling_correction(x).exp()
}

/// 1/Γ(x), defined everywhere; zero at the poles of Γ.
pub fn rgamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x < 0.5 {
        return sin_pi(x) * lanczos_gamma(1.0 - x) / PI;
    }
    match gamma(x) {
        Ok(g) => 1.0 / g,
        Err(_) => 0.0,
    }
}

// Stirling correction 1/(12x) - 1/(360x^3) + ... (Bernoulli terms).
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(SpecfunError::Domain {
            func: "log_gamma",
            x,
        });
    }
    if x < STIRLING_MIN {
        return Ok(gamma(x)?.ln());
    }
    Ok((x - 0.5) * x.ln() - x + 0.5 * (2.0 * PI).ln() + stirling_correction(x))
}

/// ψ(n) for a positive integer n: −γ + H_{n−1}.
pub fn digamma_int(n: u32) -> f64 {
    assert!(n >= 1, "digamma_int needs n >= 1");
    -EULER_GAMMA + (1..n).map(|k| 1.0 / k as f64).sum::<f64>()
}
