//! Gamma function and the ball-volume constants built from it.

use std::f64::consts::PI;

use crate::error::{Error, Result};

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

/// Γ(x) via the Lanczos approximation (g = 7, nine coefficients), with the
/// reflection formula below 1/2.
pub fn gamma(x: f64) -> f64 {
    if x > 0.0 && x <= 170.0 && (2.0 * x).fract() == 0.0 {
        return gamma_half_integer(x);
    }
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS_COEFFS[0];
        for (k, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
            acc += c / (x + k as f64);
        }
        let t = x + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

/// Γ(x) for x ∈ ½ℕ by the recurrence Γ(x + 1) = xΓ(x).
fn gamma_half_integer(x: f64) -> f64 {
    let (mut acc, mut t) = if x.fract() == 0.0 { (1.0, 1.0) } else { (PI.sqrt(), 0.5) };
    while t < x {
        acc *= t;
        t += 1.0;
    }
    acc
}

/// Volume of the unit i-ball, α_i = π^{i/2} / Γ(i/2 + 1); α_0 = 1.
pub fn alpha(i: usize) -> f64 {
    if i == 0 {
        return 1.0;
    }
    PI.powf(i as f64 / 2.0) / gamma(i as f64 / 2.0 + 1.0)
}

/// Normalizing constant of the affine Crofton formula,
/// Γ((n−i+1)/2) Γ((i+1)/2) / (Γ((n+1)/2) Γ(1/2)).
pub fn beta(n: usize, i: usize) -> Result<f64> {
    if i > n {
        return Err(Error::Domain(format!("beta({n}, {i}) needs 0 <= i <= n")));
    }
    let (n, i) = (n as f64, i as f64);
    Ok(gamma((n - i + 1.0) / 2.0) * gamma((i + 1.0) / 2.0) / (gamma((n + 1.0) / 2.0) * PI.sqrt()))
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}
