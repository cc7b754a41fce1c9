//! Special-function kernels: complex log-Gamma and the real Gamma/Beta
//! values derived from it.
//!
//! `ln_gamma` uses upward recurrence to push the argument out to |z| >= 10
//! followed by a ten-term Stirling series; arguments with Re z < 1/2 go
//! through the reflection formula with the branch correction that keeps
//! the result on the principal branch (continuous off the negative real
//! axis).

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A point of the complex plane.
pub type ComplexValue = Complex64;

/// Largest exponent that `exp` can take without overflowing.
pub const MAX_EXP: f64 = 709.782712893384;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

/// B_{2k} / (2k (2k-1)), k = 1..10.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
];

const STIRLING_RADIUS: f64 = 10.0;

/// If `z` is (within rounding) a nonpositive integer, return `n` with z = -n.
pub fn pole_index(z: Complex64) -> Option<u64> {
    if z.re > 0.5 {
        return None;
    }
    let n = (-z.re).round();
    let tol = 1e-12 * n.max(1.0);
    if (z.re + n).abs() <= tol && z.im.abs() <= tol {
        Some(n as u64)
    } else {
        None
    }
}

/// Principal branch of log Γ(z).
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Validation(format!("non-finite argument {z}")));
    }
    if pole_index(z).is_some() {
        return Err(Error::Pole { location: z.re, factor: None });
    }
    Ok(ln_gamma_unchecked(z))
}

fn ln_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Γ(z)Γ(1-z) = π / sin(πz)
        let correction = (2.0 * PI).copysign(z.im) * (0.5 * z.re + 0.25).floor();
        let refl = LN_PI - ln_sin_pi(z) - ln_gamma_right(Complex64::new(1.0, 0.0) - z);
        return refl + Complex64::new(0.0, correction);
    }
    ln_gamma_right(z)
}

/// ζ(k) - 1 for k = 0..=SERIES_TERMS + 1 (entries 0 and 1 unused).
fn zeta_minus_one() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![0.0; SERIES_TERMS + 2];
        t[2] = PI * PI / 6.0 - 1.0;
        t[3] = 0.202_056_903_159_594_3;
        for (k, slot) in t.iter_mut().enumerate().skip(4) {
            // direct sum to N - 1, Euler-Maclaurin tail from N
            let kf = k as f64;
            let n = 200.0f64;
            let mut sum = n.powf(1.0 - kf) / (kf - 1.0) + 0.5 * n.powf(-kf) + kf / 12.0 * n.powf(-kf - 1.0)
                - kf * (kf + 1.0) * (kf + 2.0) / 720.0 * n.powf(-kf - 3.0);
            for m in (2..200).rev() {
                sum += (m as f64).powf(-kf);
            }
            *slot = sum;
        }
        t
    })
}

const SERIES_TERMS: usize = 48;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// log Γ(1+x) = -log(1+x) + x(1-γ) + Σ_{k≥2} (-1)^k (ζ(k)-1) x^k / k, for |x| < 0.75.
fn ln_gamma_1p_series(x: Complex64) -> Complex64 {
    let z = zeta_minus_one();
    let mut series = Complex64::new(0.0, 0.0);
    for k in (2..=SERIES_TERMS).rev() {
        let c = if k % 2 == 0 { z[k] } else { -z[k] } / k as f64;
        series = (series + c) * x;
    }
    let ln1p = if x.im == 0.0 { Complex64::new(x.re.ln_1p(), 0.0) } else { (x + 1.0).ln() };
    -ln1p + x * (1.0 - EULER_GAMMA) + series * x
}

/// Re z >= 1/2.
fn ln_gamma_right(z: Complex64) -> Complex64 {
    if z.im.abs() < 0.5 && z.re < STIRLING_RADIUS {
        // reduce to Re z0 in [1/2, 3/2); the shift logs do not cancel here
        let n = (z.re - 0.5).floor().max(0.0) as usize;
        let z0 = z - n as f64;
        let mut shift = Complex64::new(0.0, 0.0);
        for k in 0..n {
            shift += (z0 + k as f64).ln();
        }
        return ln_gamma_1p_series(z0 - 1.0) + shift;
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 || r.abs() == 1.0 {
        return 0.0;
    }
    (PI * r).sin()
}

/// cos(πx) with exact argument reduction.
pub fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    if r.abs() == 0.5 {
        return 0.0;
    }
    (PI * r).cos()
}

/// Principal log of sin(πz); stable for large |Im z|.
pub fn ln_sin_pi(z: Complex64) -> Complex64 {
    if z.im.abs() < 20.0 {
        let s = Complex64::new(
            sin_pi(z.re) * (PI * z.im).cosh(),
            cos_pi(z.re) * (PI * z.im).sinh(),
        );
        return s.ln();
    }
    if z.im < 0.0 {
        return ln_sin_pi(z.conj()).conj();
    }
    // sin(πz) = e^{-iπz} (i/2) (1 - e^{2iπz})
    let w = Complex64::new(cos_pi(2.0 * z.re), sin_pi(2.0 * z.re)) * (-2.0 * PI * z.im).exp();
    let tail = (Complex64::new(1.0, 0.0) - w).ln();
    let re = PI * z.im - std::f64::consts::LN_2 + tail.re;
    let im = wrap_phase(-PI * (z.re - 2.0 * (z.re / 2.0).round()) + 0.5 * PI + tail.im);
    Complex64::new(re, im)
}

/// Reduce an angle into (-π, π].
pub fn wrap_phase(theta: f64) -> f64 {
    let mut t = theta % (2.0 * PI);
    if t <= -PI {
        t += 2.0 * PI;
    } else if t > PI {
        t -= 2.0 * PI;
    }
    t
}

/// log|Γ(x)| and the sign of Γ(x) for real x.
pub fn ln_gamma_real(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() {
        return Err(Error::Validation(format!("non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole { location: x, factor: None });
    }
    if x >= 0.5 {
        return Ok((ln_gamma_right(Complex64::new(x, 0.0)).re, 1.0));
    }
    // Γ(x) = π / (sin(πx) Γ(1-x))
    let s = sin_pi(x);
    let lg = ln_gamma_right(Complex64::new(1.0 - x, 0.0)).re;
    Ok((LN_PI - s.abs().ln() - lg, s.signum()))
}

/// Γ(x) for real x. Saturates to ±∞ / 0 beyond the f64 range.
pub fn gamma_real(x: f64) -> Result<f64> {
    let (lg, sign) = ln_gamma_real(x)?;
    Ok(sign * exp_saturating(lg))
}

/// log Γ(x) for x > 0.
pub fn ln_gamma_pos(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    ln_gamma_right(Complex64::new(x, 0.0)).re
}

/// log B(a, b) for a, b > 0.
pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma_pos(a) + ln_gamma_pos(b) - ln_gamma_pos(a + b)
}

pub fn beta(a: f64, b: f64) -> f64 {
    exp_saturating(ln_beta(a, b))
}

/// `exp` that returns +∞ past [`MAX_EXP`] instead of relying on libm.
pub fn exp_saturating(x: f64) -> f64 {
    if x > MAX_EXP {
        f64::INFINITY
    } else {
        x.exp()
    }
}

/// Complex exponential; the overflow sentinel is +∞ in the real part.
pub fn cexp_saturating(z: Complex64) -> Complex64 {
    if z.re > MAX_EXP {
        Complex64::new(f64::INFINITY, 0.0)
    } else {
        z.exp()
    }
}
