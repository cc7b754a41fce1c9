use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::Result;
use crate::quad::{integrate, QuadOptions};
use crate::specfun::{ln_gamma, ln_gamma_pos};

/// Closed-form densities. Symmetric entries carry the density of X on the
/// whole line, not of |X|.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ClosedDensity {
    Exponential,
    Gamma { shape: f64 },
    Beta { a: f64, b: f64 },
    Uniform,
    Rayleigh,
    Maxwell,
    Type2Beta { a: f64, b: f64 },
    /// Standard Cauchy on the line.
    Cauchy,
    /// N(0, var) on the line.
    Normal { var: f64 },
    /// e^{-|x|}/2.
    Laplace,
    /// D = |X1 - X2| for uniform points in an n-ball of radius a.
    BallDistance { n: u32, radius: f64 },
    /// 2x e^{-x²}.
    KHalf,
    /// m-th largest of n iid Exp(1).
    MaxExp { n: u32, m: u32 },
    /// -log Γ_m.
    GumbelMth { m: u32 },
    Logistic,
    /// Product of two independent standard Cauchy variables.
    CauchyProduct2,
    /// Sum of k independent hyperbolic secant variables.
    HyperbolicSecant { k: u32 },
    Lamperti { alpha: f64 },
    LampertiPower { alpha: f64 },
    KotzOstrovskii { alpha: f64, beta: f64 },
    GeneralizedExponential { beta: f64 },
}

fn positive(x: f64, f: impl FnOnce(f64) -> f64) -> f64 {
    if x > 0.0 {
        f(x)
    } else {
        0.0
    }
}

fn unit(x: f64, f: impl FnOnce(f64) -> f64) -> f64 {
    if x > 0.0 && x < 1.0 {
        f(x)
    } else {
        0.0
    }
}

/// log(x)/(x - 1), continuous at x = 1.
fn log_ratio(x: f64) -> f64 {
    let d = x - 1.0;
    if d.abs() < 1e-8 {
        1.0 - 0.5 * d
    } else {
        d.ln_1p() / d
    }
}

fn lamperti_power(alpha: f64, x: f64) -> f64 {
    let (s, c) = (PI * alpha).sin_cos();
    s / (PI * alpha) / (x * x + 2.0 * c * x + 1.0)
}

/// Density of λ = D/2a on (0, 1).
fn ball_scaled(n: u32, lambda: f64) -> Result<f64> {
    let nf = n as f64;
    let ln_c = LN_2 + nf.ln() + ln_gamma_pos(nf + 1.0) - 2.0 * ln_gamma_pos(0.5 * nf + 0.5);
    let e = 0.5 * (nf - 1.0);
    let tail = integrate(|z| (1.0 - z * z).max(0.0).powf(e), lambda, 1.0, QuadOptions { abs_tol: 1e-13, rel_tol: 1e-12, max_intervals: 2000 })?;
    Ok((ln_c + (nf - 1.0) * lambda.ln()).exp() * tail.value)
}

impl ClosedDensity {
    pub fn eval(&self, x: f64) -> Result<f64> {
        Ok(match *self {
            ClosedDensity::Exponential => positive(x, |x| (-x).exp()),
            ClosedDensity::Gamma { shape } => {
                positive(x, |x| ((shape - 1.0) * x.ln() - x - ln_gamma_pos(shape)).exp())
            }
            ClosedDensity::Beta { a, b } => unit(x, |x| {
                ((a - 1.0) * x.ln() + (b - 1.0) * (-x).ln_1p() + ln_gamma_pos(a + b) - ln_gamma_pos(a) - ln_gamma_pos(b))
                    .exp()
            }),
            ClosedDensity::Uniform => unit(x, |_| 1.0),
            ClosedDensity::Rayleigh => positive(x, |x| x * (-0.5 * x * x).exp()),
            ClosedDensity::Maxwell => positive(x, |x| (2.0 / PI).sqrt() * x * x * (-0.5 * x * x).exp()),
            ClosedDensity::Type2Beta { a, b } => positive(x, |x| {
                (ln_gamma_pos(a + b) - ln_gamma_pos(a) - ln_gamma_pos(b) + (a - 1.0) * x.ln() - (a + b) * x.ln_1p()).exp()
            }),
            ClosedDensity::Cauchy => 1.0 / (PI * (1.0 + x * x)),
            ClosedDensity::Normal { var } => (-0.5 * x * x / var).exp() / (2.0 * PI * var).sqrt(),
            ClosedDensity::Laplace => 0.5 * (-x.abs()).exp(),
            ClosedDensity::BallDistance { n, radius } => {
                let d = 2.0 * radius;
                if x > 0.0 && x < d {
                    ball_scaled(n, x / d)? / d
                } else {
                    0.0
                }
            }
            ClosedDensity::KHalf => positive(x, |x| 2.0 * x * (-x * x).exp()),
            ClosedDensity::MaxExp { n, m } => positive(x, |x| {
                // e^{-M} ~ Beta(m, n-m+1), u = e^{-x}
                let (n, m) = (n as f64, m as f64);
                let ln_c = ln_gamma_pos(n + 1.0) - ln_gamma_pos(m) - ln_gamma_pos(n - m + 1.0);
                (ln_c - m * x + (n - m) * (-(-x).exp_m1()).ln()).exp()
            }),
            ClosedDensity::GumbelMth { m } => {
                let m = m as f64;
                (-m * x - (-x).exp() - ln_gamma_pos(m)).exp()
            }
            ClosedDensity::Logistic => {
                let c = (0.5 * x).cosh();
                0.25 / (c * c)
            }
            ClosedDensity::CauchyProduct2 => {
                let a = x.abs();
                // 2 log a / (π² (a² - 1))
                2.0 * log_ratio(a) / (PI * PI * (a + 1.0))
            }
            ClosedDensity::HyperbolicSecant { k } => {
                let t = k as f64;
                let lg = ln_gamma(Complex64::new(0.5 * t, 0.5 * x))?.re;
                ((t - 2.0) * LN_2 - PI.ln() - ln_gamma_pos(t) + 2.0 * lg).exp()
            }
            ClosedDensity::Lamperti { alpha } => positive(x, |x| {
                let xa = x.powf(alpha);
                (PI * alpha).sin() / PI * x.powf(alpha - 1.0) / (xa * xa + 2.0 * (PI * alpha).cos() * xa + 1.0)
            }),
            ClosedDensity::LampertiPower { alpha } => positive(x, |x| lamperti_power(alpha, x)),
            ClosedDensity::KotzOstrovskii { alpha, beta } => positive(x, |y| {
                // Y = L^{1/β} with L Lamperti of index α/β
                let a = alpha / beta;
                let l = y.powf(beta);
                let la = l.powf(a);
                let fl = (PI * a).sin() / PI * l.powf(a - 1.0) / (la * la + 2.0 * (PI * a).cos() * la + 1.0);
                fl * beta * y.powf(beta - 1.0)
            }),
            ClosedDensity::GeneralizedExponential { beta } => {
                positive(x, |x| (-x.powf(beta) - ln_gamma_pos(1.0 + 1.0 / beta)).exp())
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_points() {
        assert_eq!(ClosedDensity::Logistic.eval(0.0).unwrap(), 0.25);
        assert!((ClosedDensity::KHalf.eval(1.0).unwrap() - 2.0 / std::f64::consts::E).abs() < 1e-15);
        assert!((ClosedDensity::LampertiPower { alpha: 0.5 }.eval(1.0).unwrap() - 1.0 / PI).abs() < 1e-15);
        let hc2 = ClosedDensity::HyperbolicSecant { k: 2 }.eval(1.0).unwrap();
        assert!((hc2 - 1.0 / (2.0 * (PI / 2.0).sinh())).abs() < 1e-13);
        let hc1 = ClosedDensity::HyperbolicSecant { k: 1 }.eval(0.7).unwrap();
        assert!((hc1 - 1.0 / (2.0 * (PI * 0.7 / 2.0).cosh())).abs() < 1e-13);
        let cp = ClosedDensity::CauchyProduct2.eval(2.0).unwrap();
        assert!((cp - 2.0 * LN_2 / (3.0 * PI * PI)).abs() < 1e-15);
        assert!((ClosedDensity::CauchyProduct2.eval(1.0).unwrap() - 1.0 / (PI * PI)).abs() < 1e-15);
    }

    #[test]
    fn ball_distance_in_one_dimension() {
        // n = 1, a = 1/2: |U1 - U2| has density 2(1 - x)
        let d = ClosedDensity::BallDistance { n: 1, radius: 0.5 };
        for x in [0.1, 0.5, 0.9] {
            assert!((d.eval(x).unwrap() - 2.0 * (1.0 - x)).abs() < 1e-12);
        }
        assert_eq!(d.eval(1.5).unwrap(), 0.0);
    }

    #[test]
    fn outside_support_is_zero() {
        assert_eq!(ClosedDensity::Rayleigh.eval(-1.0).unwrap(), 0.0);
        assert_eq!(ClosedDensity::Beta { a: 2.0, b: 3.0 }.eval(1.2).unwrap(), 0.0);
    }
}
