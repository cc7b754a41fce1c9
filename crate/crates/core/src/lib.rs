//! Gamma-type moment functions.
//!
//! Exact algebra for moment functions of the form
//! C·e^{ℓs}·∏Γ(a_j s+b_j)/∏Γ(c_k s+d_k), their analyticity strips and
//! asymptotic profiles, a catalog of named distributions, Monte Carlo
//! verification and numerical Mellin inversion.

// `!(x > 0.0)` is used on purpose so that NaN lands in the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod cli;
pub mod error;
pub mod gtform;
pub mod mellin;
pub mod quad;
pub mod specfun;
pub mod stochastics;

pub use error::{Error, Result};
pub use gtform::{AnalyticityStrip, AsymptoticProfile, GammaFactor, GammaTypeForm, Scalar};

/// JSON value for a float; infinities and NaN become the strings
/// "inf", "-inf" and "nan".
pub fn json_f64(x: f64) -> serde_json::Value {
    match serde_json::Number::from_f64(x) {
        Some(n) => serde_json::Value::Number(n),
        None if x.is_nan() => "nan".into(),
        None if x > 0.0 => "inf".into(),
        None => "-inf".into(),
    }
}

pub(crate) fn ser_f64<S: serde::Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    json_f64(*x).serialize(s)
}

pub(crate) fn ser_opt_f64<S: serde::Serializer>(x: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_f64(x, s),
        None => s.serialize_none(),
    }
}
