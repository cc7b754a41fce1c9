//! Gamma-type forms
//!
//! A form is the meromorphic function
//!
//! ```text
//! F(s) = C · e^{ℓ s} · ∏ Γ(a_j s + b_j) / ∏ Γ(c_k s + d_k)
//! ```
//!
//! held as an exact value. Slopes and offsets are [`Scalar`]s: they stay
//! rational whenever the inputs are, so pole progressions and
//! cancellations can be decided exactly. Evaluation happens in log space
//! and is exponentiated only at the edge.

mod identity;
mod json;
mod profile;
pub mod scalar;
mod strip;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{self, cexp_saturating, pole_index};

pub use identity::{IdentityReport, DEFAULT_IDENTITY_TOL};
pub use json::FormJson;
pub use profile::AsymptoticProfile;
pub use scalar::{Rational, Scalar};
pub use strip::{AnalyticityStrip, ConsistencyReport};

/// One factor Γ(slope · s + offset).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GammaFactor {
    pub slope: Scalar,
    pub offset: Scalar,
}

impl GammaFactor {
    pub fn new(slope: impl Into<Scalar>, offset: impl Into<Scalar>) -> Result<Self> {
        let slope = slope.into();
        let offset = offset.into();
        if slope.is_zero() || !slope.to_f64().is_finite() {
            return Err(Error::Validation(format!("Gamma factor slope must be finite and nonzero, got {slope}")));
        }
        if !offset.to_f64().is_finite() {
            return Err(Error::Validation(format!("Gamma factor offset must be finite, got {offset}")));
        }
        Ok(GammaFactor { slope, offset })
    }

    /// Γ(s + offset).
    pub fn unit(offset: impl Into<Scalar>) -> Self {
        GammaFactor { slope: Scalar::int(1), offset: offset.into() }
    }

    pub fn argument(&self, s: Complex64) -> Complex64 {
        s * self.slope.to_f64() + self.offset.to_f64()
    }

    /// Location of the n-th pole, s = (-n - b)/a.
    pub fn pole(&self, n: u64) -> Scalar {
        -(Scalar::int(n as i64) + self.offset) / self.slope
    }

    fn structurally_eq(&self, other: &GammaFactor) -> bool {
        self.slope.approx_eq(other.slope) && self.offset.approx_eq(other.offset)
    }

    fn order(&self, other: &GammaFactor) -> Ordering {
        self.slope
            .cmp_value(other.slope)
            .then_with(|| self.offset.cmp_value(other.offset))
    }
}

impl fmt::Display for GammaFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Γ({}·s + {})", self.slope, self.offset)
    }
}

/// Which factor list an index refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorRef {
    Numerator(usize),
    Denominator(usize),
}

/// log F(s), where F may vanish.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LogValue {
    Zero,
    Finite(Complex64),
}

/// C · e^{ℓs} · ∏Γ(a_j s + b_j) / ∏Γ(c_k s + d_k).
#[derive(Clone, Debug, PartialEq)]
pub struct GammaTypeForm {
    constant: f64,
    log_scale: f64,
    numerator: Vec<GammaFactor>,
    denominator: Vec<GammaFactor>,
}

impl GammaTypeForm {
    pub fn new(
        constant: f64,
        log_scale: f64,
        numerator: Vec<GammaFactor>,
        denominator: Vec<GammaFactor>,
    ) -> Result<Self> {
        if !(constant > 0.0) || !constant.is_finite() {
            return Err(Error::Validation(format!("constant must be positive and finite, got {constant}")));
        }
        if !log_scale.is_finite() {
            return Err(Error::Validation(format!("log scale must be finite, got {log_scale}")));
        }
        for f in numerator.iter().chain(&denominator) {
            GammaFactor::new(f.slope, f.offset)?;
        }
        Ok(GammaTypeForm { constant, log_scale, numerator, denominator })
    }

    /// The constant function 1.
    pub fn one() -> Self {
        GammaTypeForm { constant: 1.0, log_scale: 0.0, numerator: vec![], denominator: vec![] }
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    pub fn numerator(&self) -> &[GammaFactor] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[GammaFactor] {
        &self.denominator
    }

    /// Divide by the value at s = 0 so that F(0) = 1.
    pub fn normalized(&self) -> Result<Self> {
        match self.ln_evaluate(Complex64::new(0.0, 0.0))? {
            LogValue::Zero => Err(Error::InvalidForm("form vanishes at s = 0".into())),
            LogValue::Finite(l) => {
                let mut out = self.clone();
                out.constant = (self.constant.ln() - l.re).exp();
                Ok(out)
            }
        }
    }

    /// log F(s). A numerator pole cancelled by a denominator pole at the
    /// same s is evaluated as the limit, via the residues of Γ.
    pub fn ln_evaluate(&self, s: Complex64) -> Result<LogValue> {
        let mut acc = Complex64::new(self.constant.ln(), 0.0) + s * self.log_scale;
        let mut net = 0i32;
        let mut first_pole: Option<(usize, bool)> = None;
        let factors = self
            .numerator
            .iter()
            .enumerate()
            .map(|(i, f)| (i, f, 1.0))
            .chain(self.denominator.iter().enumerate().map(|(i, f)| (i, f, -1.0)));
        for (i, f, sign) in factors {
            let z = f.argument(s);
            match pole_index(z) {
                Some(n) => {
                    // Γ(-n + ah) ~ (-1)^n / (n! a h)
                    let a = f.slope.to_f64();
                    let parity = (n % 2) as f64 + if a < 0.0 { 1.0 } else { 0.0 };
                    let ln_res = Complex64::new(-specfun::ln_gamma_pos(n as f64 + 1.0) - a.abs().ln(), PI * parity);
                    acc += ln_res * sign;
                    if sign > 0.0 {
                        net += 1;
                        first_pole.get_or_insert((i, true));
                    } else {
                        net -= 1;
                    }
                }
                None => acc += specfun::ln_gamma(z)? * sign,
            }
        }
        if net > 0 {
            let (i, _) = first_pole.unwrap_or((0, true));
            return Err(Error::Pole {
                location: s.re,
                factor: Some(format!("numerator[{i}] = {}", self.numerator[i])),
            });
        }
        if net < 0 {
            return Ok(LogValue::Zero);
        }
        Ok(LogValue::Finite(acc))
    }

    /// F(s). Denominator poles give an exact 0; overflow saturates to +∞.
    pub fn evaluate(&self, s: Complex64) -> Result<Complex64> {
        Ok(match self.ln_evaluate(s)? {
            LogValue::Zero => Complex64::new(0.0, 0.0),
            LogValue::Finite(l) => cexp_saturating(l),
        })
    }

    /// F(s) for real s (the real part; forms with real parameters are real
    /// on the real axis).
    pub fn evaluate_real(&self, s: f64) -> Result<f64> {
        Ok(self.evaluate(Complex64::new(s, 0.0))?.re)
    }

    /// F·G: the moment function of a product of independent variables.
    pub fn product(&self, other: &GammaTypeForm) -> GammaTypeForm {
        let mut numerator = self.numerator.clone();
        numerator.extend_from_slice(&other.numerator);
        let mut denominator = self.denominator.clone();
        denominator.extend_from_slice(&other.denominator);
        GammaTypeForm {
            constant: self.constant * other.constant,
            log_scale: self.log_scale + other.log_scale,
            numerator,
            denominator,
        }
    }

    /// s ↦ F(rs): the moment function of X^r.
    pub fn power(&self, r: impl Into<Scalar>) -> Result<GammaTypeForm> {
        let r = r.into();
        if r.is_zero() || !r.to_f64().is_finite() {
            return Err(Error::Validation(format!("power exponent must be finite and nonzero, got {r}")));
        }
        let map = |f: &GammaFactor| GammaFactor { slope: f.slope * r, offset: f.offset };
        Ok(GammaTypeForm {
            constant: self.constant,
            log_scale: self.log_scale * r.to_f64(),
            numerator: self.numerator.iter().map(map).collect(),
            denominator: self.denominator.iter().map(map).collect(),
        })
    }

    /// s ↦ F(-s): the moment function of 1/X.
    pub fn reciprocal(&self) -> GammaTypeForm {
        self.power(Scalar::int(-1)).expect("-1 is a valid exponent")
    }

    /// s ↦ c^s F(s): the moment function of cX.
    pub fn scale(&self, c: f64) -> Result<GammaTypeForm> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(Error::Validation(format!("scale factor must be positive and finite, got {c}")));
        }
        let mut out = self.clone();
        out.log_scale += c.ln();
        Ok(out)
    }

    /// Multiply by a positive constant.
    pub fn times_constant(&self, c: f64) -> Result<GammaTypeForm> {
        GammaTypeForm::new(self.constant * c, self.log_scale, self.numerator.clone(), self.denominator.clone())
    }

    /// Rewrite Γ(as+b) with the Gauss multiplication formula as
    /// (2π)^{(1-m)/2} m^{as+b-1/2} ∏_{i<m} Γ((as+b+i)/m).
    pub fn expand_multiplication(&self, index: FactorRef, m: u32) -> Result<GammaTypeForm> {
        if m < 2 {
            return Err(Error::Validation(format!("multiplication order must be >= 2, got {m}")));
        }
        let (list, sign) = match index {
            FactorRef::Numerator(i) if i < self.numerator.len() => (&self.numerator, 1.0),
            FactorRef::Denominator(i) if i < self.denominator.len() => (&self.denominator, -1.0),
            _ => return Err(Error::FactorRef(format!("{index:?} out of range"))),
        };
        let i = match index {
            FactorRef::Numerator(i) | FactorRef::Denominator(i) => i,
        };
        let f = list[i];
        let mm = Scalar::int(m as i64);
        let ln_m = (m as f64).ln();
        let pieces: Vec<GammaFactor> = (0..m)
            .map(|k| GammaFactor { slope: f.slope / mm, offset: (f.offset + Scalar::int(k as i64)) / mm })
            .collect();
        let ln_prefactor = 0.5 * (1.0 - m as f64) * (2.0 * PI).ln() + (f.offset.to_f64() - 0.5) * ln_m;
        let mut out = self.clone();
        out.constant = (self.constant.ln() + sign * ln_prefactor).exp();
        out.log_scale += sign * f.slope.to_f64() * ln_m;
        let target = if sign > 0.0 { &mut out.numerator } else { &mut out.denominator };
        target.splice(i..=i, pieces);
        Ok(out)
    }

    /// Cancel numerator/denominator factors that are structurally identical.
    pub fn reduced(&self) -> GammaTypeForm {
        let mut numerator = self.numerator.clone();
        let mut denominator = Vec::with_capacity(self.denominator.len());
        for d in &self.denominator {
            match numerator.iter().position(|n| n.structurally_eq(d)) {
                Some(p) => {
                    numerator.remove(p);
                }
                None => denominator.push(*d),
            }
        }
        GammaTypeForm { constant: self.constant, log_scale: self.log_scale, numerator, denominator }
    }

    /// Factor lists sorted by (slope, offset).
    pub fn sorted(&self) -> GammaTypeForm {
        let mut out = self.clone();
        out.numerator.sort_by(|a, b| a.order(b));
        out.denominator.sort_by(|a, b| a.order(b));
        out
    }

    /// Same constant, scale and factor multisets, within `tol` on the reals.
    pub fn structurally_equal(&self, other: &GammaTypeForm, tol: f64) -> bool {
        let (a, b) = (self.reduced().sorted(), other.reduced().sorted());
        let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0);
        close(a.constant, b.constant)
            && close(a.log_scale, b.log_scale)
            && a.numerator.len() == b.numerator.len()
            && a.denominator.len() == b.denominator.len()
            && a.numerator.iter().zip(&b.numerator).all(|(x, y)| x.structurally_eq(y))
            && a.denominator.iter().zip(&b.denominator).all(|(x, y)| x.structurally_eq(y))
    }
}

impl fmt::Display for GammaTypeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} · e^({}·s)", self.constant, self.log_scale)?;
        for n in &self.numerator {
            write!(f, " · {n}")?;
        }
        for d in &self.denominator {
            write!(f, " / {d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, SQRT_2};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn rayleigh() -> GammaTypeForm {
        GammaTypeForm::new(1.0, 0.5 * LN_2, vec![GammaFactor::new(Scalar::ratio(1, 2), 1).unwrap()], vec![]).unwrap()
    }

    fn half_cauchy() -> GammaTypeForm {
        GammaTypeForm::new(
            1.0 / PI,
            0.0,
            vec![
                GammaFactor::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2)).unwrap(),
                GammaFactor::new(Scalar::ratio(-1, 2), Scalar::ratio(1, 2)).unwrap(),
            ],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(GammaFactor::new(0, 1).is_err());
        assert!(GammaTypeForm::new(0.0, 0.0, vec![], vec![]).is_err());
        assert!(GammaTypeForm::new(-1.0, 0.0, vec![], vec![]).is_err());
        assert!(rayleigh().power(0).is_err());
        assert!(rayleigh().scale(0.0).is_err());
        assert!(rayleigh().scale(-2.0).is_err());
    }

    #[test]
    fn constant_form_is_one() {
        let one = GammaTypeForm::one();
        assert_eq!(one.evaluate(Complex64::new(3.0, -2.0)).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn rayleigh_values() {
        let f = rayleigh();
        assert!((f.evaluate_real(2.0).unwrap() - 2.0).abs() < 1e-14);
        assert!((f.evaluate_real(0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((f.evaluate_real(1.0).unwrap() - (PI / 2.0).sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cauchy_is_secant() {
        let f = half_cauchy();
        assert!((f.evaluate_real(0.5).unwrap() - SQRT_2).abs() < 1e-13);
        let s = Complex64::new(0.3, 1.2);
        let direct = 1.0 / (s * PI / 2.0).cos();
        assert!((f.evaluate(s).unwrap() - direct).norm() < 1e-12 * direct.norm());
    }

    #[test]
    fn pole_and_zero() {
        // Γ(s+1): pole at s = -1
        let f = GammaTypeForm::new(1.0, 0.0, vec![GammaFactor::unit(1)], vec![]).unwrap();
        assert!(matches!(f.evaluate(c(-1.0)), Err(Error::Pole { .. })));
        // 1/Γ(s+1): zero at s = -1
        let g = GammaTypeForm::new(1.0, 0.0, vec![], vec![GammaFactor::unit(1)]).unwrap();
        assert_eq!(g.evaluate(c(-1.0)).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn cancelled_poles_take_the_limit() {
        // Γ(s+1)/Γ(s/2+1/2) at s = -1: both have poles, limit = 2·(-1)^0/(0!)... check vs nearby
        let f = GammaTypeForm::new(
            1.0,
            0.0,
            vec![GammaFactor::unit(1)],
            vec![GammaFactor::new(Scalar::ratio(1, 2), Scalar::ratio(1, 2)).unwrap()],
        )
        .unwrap();
        let at = f.evaluate_real(-1.0).unwrap();
        let near = 0.5 * (f.evaluate_real(-1.0 + 1e-7).unwrap() + f.evaluate_real(-1.0 - 1e-7).unwrap());
        assert!((at - near).abs() < 1e-6, "{at} vs {near}");
        assert!((at - 0.5).abs() < 1e-12);
    }

    #[test]
    fn product_power_scale() {
        let f = rayleigh();
        let one = GammaTypeForm::one();
        assert_eq!(f.product(&one), f);
        assert_eq!(f.power(1).unwrap(), f);
        assert_eq!(f.scale(1.0).unwrap(), f);
        let h = half_cauchy().reciprocal();
        for s in [-0.7, -0.2, 0.4, 0.9] {
            let a = h.evaluate_real(s).unwrap();
            let b = half_cauchy().evaluate_real(s).unwrap();
            assert!((a - b).abs() < 1e-12 * a.abs());
        }
    }

    #[test]
    fn duplication_expansion() {
        // Γ(1+2s)/Γ(1+s) = 2^{2s} π^{-1/2} Γ(s+1/2)
        let f = GammaTypeForm::new(1.0, 0.0, vec![GammaFactor::new(2, 1).unwrap()], vec![GammaFactor::unit(1)]).unwrap();
        let e = f.expand_multiplication(FactorRef::Numerator(0), 2).unwrap().reduced();
        let expected = GammaTypeForm::new(
            1.0 / PI.sqrt(),
            2.0 * LN_2,
            vec![GammaFactor::unit(Scalar::ratio(1, 2))],
            vec![],
        )
        .unwrap();
        assert!(e.structurally_equal(&expected, 1e-14), "{e}");
        assert!(f.expand_multiplication(FactorRef::Numerator(3), 2).is_err());
        assert!(f.expand_multiplication(FactorRef::Denominator(0), 1).is_err());
    }

    #[test]
    fn expansion_in_denominator_preserves_values() {
        let f = GammaTypeForm::new(
            2.0,
            0.3,
            vec![GammaFactor::new(Scalar::ratio(3, 2), 0.7).unwrap()],
            vec![GammaFactor::new(1, 1.2).unwrap()],
        )
        .unwrap();
        for m in 2..6 {
            let g = f.expand_multiplication(FactorRef::Denominator(0), m).unwrap();
            for s in [-0.3, 0.0, 0.8, 2.5] {
                let s = Complex64::new(s, 0.4);
                let (a, b) = (f.evaluate(s).unwrap(), g.evaluate(s).unwrap());
                assert!((a - b).norm() <= 1e-11 * a.norm());
            }
        }
    }
}
