use serde::{Deserialize, Serialize};
use serde_json::{Number, Value};

use super::scalar::{Rational, Scalar};
use super::{GammaFactor, GammaTypeForm};
use crate::error::{Error, Result};

/// Wire format of a form:
/// `{"constant", "log_scale", "num": [[slope_num, slope_den, offset], ...], "den": [...]}`.
///
/// Exact slopes are written as integer pairs. An inexact slope is written
/// as a float numerator over 1. Offsets are an integer, a float, or an
/// integer pair `[num, den]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormJson {
    pub constant: f64,
    pub log_scale: f64,
    pub num: Vec<[Value; 3]>,
    pub den: Vec<[Value; 3]>,
}

fn int(n: i64) -> Value {
    Value::Number(n.into())
}

fn float(x: f64) -> Value {
    // finite by construction of GammaFactor
    Value::Number(Number::from_f64(x).expect("finite float"))
}

fn encode_factor(f: &GammaFactor) -> [Value; 3] {
    let (sn, sd) = match f.slope.as_ratio() {
        Some((n, d)) => (int(n), int(d)),
        None => (float(f.slope.to_f64()), int(1)),
    };
    let offset = match f.offset.as_ratio() {
        Some((n, 1)) => int(n),
        Some((n, d)) => Value::Array(vec![int(n), int(d)]),
        None => float(f.offset.to_f64()),
    };
    [sn, sd, offset]
}

fn parse_number(v: &Value, what: &str) -> Result<Scalar> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::int(i))
            } else {
                let x = n.as_f64().ok_or_else(|| Error::Parse(format!("{what}: unrepresentable number {n}")))?;
                if x.is_finite() {
                    Ok(Scalar::Approx(x))
                } else {
                    Err(Error::Parse(format!("{what}: non-finite number")))
                }
            }
        }
        _ => Err(Error::Parse(format!("{what}: expected a number, got {v}"))),
    }
}

fn parse_ratio(n: &Value, d: &Value, what: &str) -> Result<Scalar> {
    let num = parse_number(n, what)?;
    let den = parse_number(d, what)?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{what}: zero denominator")));
    }
    match (num.as_ratio(), den.as_ratio()) {
        (Some((a, 1)), Some((b, 1))) => {
            if b == i64::MIN || a == i64::MIN {
                return Err(Error::Parse(format!("{what}: integer out of range")));
            }
            Ok(Scalar::Exact(Rational::new(a, b)))
        }
        _ => {
            if den.to_f64() == 1.0 {
                Ok(Scalar::Approx(num.to_f64()))
            } else {
                Ok(Scalar::Approx(num.to_f64() / den.to_f64()))
            }
        }
    }
}

fn decode_factor(v: &[Value; 3]) -> Result<GammaFactor> {
    let slope = parse_ratio(&v[0], &v[1], "slope")?;
    let offset = match &v[2] {
        Value::Array(pair) if pair.len() == 2 => parse_ratio(&pair[0], &pair[1], "offset")?,
        other => parse_number(other, "offset")?,
    };
    GammaFactor::new(slope, offset)
}

impl FormJson {
    pub fn from_form(form: &GammaTypeForm) -> Self {
        FormJson {
            constant: form.constant,
            log_scale: form.log_scale,
            num: form.numerator.iter().map(encode_factor).collect(),
            den: form.denominator.iter().map(encode_factor).collect(),
        }
    }

    pub fn to_form(&self) -> Result<GammaTypeForm> {
        let num = self.num.iter().map(decode_factor).collect::<Result<Vec<_>>>()?;
        let den = self.den.iter().map(decode_factor).collect::<Result<Vec<_>>>()?;
        GammaTypeForm::new(self.constant, self.log_scale, num, den)
    }
}

impl GammaTypeForm {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(FormJson::from_form(self)).expect("form serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&FormJson::from_form(self)).expect("form serializes")
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let fj: FormJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        fj.to_form()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let fj: FormJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        fj.to_form()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exact_round_trip() {
        let f = GammaTypeForm::new(
            0.1 + 0.2,
            std::f64::consts::LN_2 / 3.0,
            vec![GammaFactor::new(Scalar::ratio(3, 4), Scalar::ratio(7, 3)).unwrap()],
            vec![GammaFactor::new(Scalar::Approx(1.0 / std::f64::consts::PI), Scalar::Approx(0.123456789)).unwrap()],
        )
        .unwrap();
        let s = f.to_json_string();
        let g = GammaTypeForm::from_json_str(&s).unwrap();
        assert_eq!(g.constant().to_bits(), f.constant().to_bits());
        assert_eq!(g.log_scale().to_bits(), f.log_scale().to_bits());
        assert_eq!(g.numerator()[0].slope.as_ratio(), Some((3, 4)));
        assert_eq!(g.numerator()[0].offset.as_ratio(), Some((7, 3)));
        assert_eq!(g.denominator()[0].slope.to_f64().to_bits(), (1.0 / std::f64::consts::PI).to_bits());
        assert_eq!(g.to_json_string(), s);
    }

    #[test]
    fn rejects_bad_input() {
        for bad in [
            r#"{"constant":0,"log_scale":0,"num":[],"den":[]}"#,
            r#"{"constant":1,"log_scale":0,"num":[[0,1,1]],"den":[]}"#,
            r#"{"constant":1,"log_scale":0,"num":[[1,0,1]],"den":[]}"#,
            r#"{"constant":1,"log_scale":0,"num":[[1,1,"x"]],"den":[]}"#,
            r#"{"constant":1,"log_scale":0,"num":[[1,1,[1,0]]],"den":[]}"#,
            r#"{"constant":1,"log_scale":0,"num":[],"den":[],"extra":1}"#,
            r#"{"constant":1}"#,
            "[]",
        ] {
            assert!(GammaTypeForm::from_json_str(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn negative_denominator_normalizes() {
        let g = GammaTypeForm::from_json_str(r#"{"constant":1,"log_scale":0,"num":[[1,-2,[3,-6]]],"den":[]}"#).unwrap();
        assert_eq!(g.numerator()[0].slope.as_ratio(), Some((-1, 2)));
        assert_eq!(g.numerator()[0].offset.as_ratio(), Some((-1, 2)));
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-1000i64..1000, 1i64..1000).prop_map(|(n, d)| Scalar::ratio(n, d)),
            (-1e6f64..1e6).prop_map(Scalar::Approx),
        ]
    }

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(
            c in 1e-300f64..1e300,
            l in -1e3f64..1e3,
            fs in prop::collection::vec((scalar(), scalar(), any::<bool>()), 0..6),
        ) {
            let mut num = vec![];
            let mut den = vec![];
            for (a, b, top) in fs {
                if a.is_zero() { continue; }
                let f = GammaFactor::new(a, b).unwrap();
                if top { num.push(f) } else { den.push(f) }
            }
            let f = GammaTypeForm::new(c, l, num, den).unwrap();
            let s = f.to_json_string();
            let g = GammaTypeForm::from_json_str(&s).unwrap();
            prop_assert_eq!(g.to_json_string(), s);
            prop_assert_eq!(g.constant().to_bits(), f.constant().to_bits());
            for (x, y) in f.numerator().iter().chain(f.denominator()).zip(g.numerator().iter().chain(g.denominator())) {
                prop_assert_eq!(x.slope.to_f64().to_bits(), y.slope.to_f64().to_bits());
                prop_assert_eq!(x.offset.to_f64().to_bits(), y.offset.to_f64().to_bits());
                prop_assert_eq!(x.slope.as_ratio(), y.slope.as_ratio());
            }
        }
    }
}
