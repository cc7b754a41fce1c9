use num_complex::Complex64;
use serde::Serialize;

use super::{GammaTypeForm, LogValue};
use crate::error::Result;
use crate::specfun::wrap_phase;

pub const DEFAULT_IDENTITY_TOL: f64 = 1e-10;

const REAL_LEVELS: usize = 5;
const IMAG_LEVELS: [f64; 5] = [-3.0, -1.5, 0.0, 1.5, 3.0];
const WINDOW: f64 = 4.0;

/// Details of an identity comparison.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub equal: bool,
    pub structural: bool,
    #[serde(serialize_with = "crate::ser_f64")]
    pub max_relative_deviation: f64,
    pub points: usize,
    pub tol: f64,
}

impl GammaTypeForm {
    /// Whether F and G agree as functions: structurally, or numerically on
    /// a 5×5 grid of complex s inside the common strip.
    pub fn moments_equal(&self, other: &GammaTypeForm, tol: f64) -> Result<bool> {
        Ok(self.compare_moments(other, tol)?.equal)
    }

    pub fn compare_moments(&self, other: &GammaTypeForm, tol: f64) -> Result<IdentityReport> {
        let common = self.strip()?.intersect(&other.strip()?)?;
        if self.structurally_equal(other, tol) {
            return Ok(IdentityReport { equal: true, structural: true, max_relative_deviation: 0.0, points: 0, tol });
        }
        let (lo, hi) = common.window(WINDOW);
        let mut worst = 0.0f64;
        let mut points = 0;
        for k in 1..=REAL_LEVELS {
            let re = lo + (hi - lo) * k as f64 / (REAL_LEVELS + 1) as f64;
            for im in IMAG_LEVELS {
                let s = Complex64::new(re, im);
                let dev = match (self.ln_evaluate(s)?, other.ln_evaluate(s)?) {
                    (LogValue::Zero, LogValue::Zero) => 0.0,
                    (LogValue::Finite(a), LogValue::Finite(b)) => {
                        let d = a - b;
                        (Complex64::new(d.re, wrap_phase(d.im)).exp() - 1.0).norm()
                    }
                    _ => f64::INFINITY,
                };
                worst = worst.max(if dev.is_nan() { f64::INFINITY } else { dev });
                points += 1;
            }
        }
        Ok(IdentityReport { equal: worst <= tol, structural: false, max_relative_deviation: worst, points, tol })
    }
}
