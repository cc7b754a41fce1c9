use std::f64::consts::PI;

use serde::Serialize;

use super::scalar::Scalar;
use super::GammaTypeForm;

/// Growth parameters of a Gamma-type form. Along a vertical line,
/// |F(c+it)| ≈ C1 |t|^{δ + γ′c} e^{-πγ|t|/2}; along the positive real
/// axis (all slopes positive), log F(s) ≈ γ′ s log s + (κ − γ′) s + δ log s + log C1.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AsymptoticProfile {
    pub gamma: f64,
    pub gamma_prime: f64,
    pub delta: f64,
    pub kappa: f64,
    pub c1: f64,
}

impl GammaTypeForm {
    /// γ, γ′ and δ as scalars, exact when slopes and offsets are.
    pub fn profile_exact_parts(&self) -> (Scalar, Scalar, Scalar) {
        let half = Scalar::ratio(1, 2);
        let zero = Scalar::int(0);
        let sum = |it: &mut dyn Iterator<Item = Scalar>| it.fold(zero, |a, b| a + b);
        let gamma = sum(&mut self.numerator.iter().map(|f| f.slope.abs()))
            - sum(&mut self.denominator.iter().map(|f| f.slope.abs()));
        let gamma_prime =
            sum(&mut self.numerator.iter().map(|f| f.slope)) - sum(&mut self.denominator.iter().map(|f| f.slope));
        let delta = sum(&mut self.numerator.iter().map(|f| f.offset - half))
            - sum(&mut self.denominator.iter().map(|f| f.offset - half));
        (gamma, gamma_prime, delta)
    }

    pub fn asymptotic_profile(&self) -> AsymptoticProfile {
        let (gamma, gamma_prime, delta) = self.profile_exact_parts();
        let a_log_a = |f: &super::GammaFactor| {
            let a = f.slope.to_f64();
            a * a.abs().ln()
        };
        let kappa = self.log_scale + self.numerator.iter().map(a_log_a).sum::<f64>()
            - self.denominator.iter().map(a_log_a).sum::<f64>();
        let ln_weight = |f: &super::GammaFactor| (f.offset.to_f64() - 0.5) * f.slope.to_f64().abs().ln();
        let p = self.numerator.len() as f64;
        let q = self.denominator.len() as f64;
        let ln_c1 = self.constant.ln() + 0.5 * (p - q) * (2.0 * PI).ln()
            + self.numerator.iter().map(ln_weight).sum::<f64>()
            - self.denominator.iter().map(ln_weight).sum::<f64>();
        AsymptoticProfile {
            gamma: gamma.to_f64(),
            gamma_prime: gamma_prime.to_f64(),
            delta: delta.to_f64(),
            kappa,
            c1: ln_c1.exp(),
        }
    }
}
