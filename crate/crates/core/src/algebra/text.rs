//! Canonical text and JSON forms of scalars.
//!
//! Rationals print as `p/q` (or `p` when `q = 1`) with the sign on the
//! numerator; Gaussian rationals as `{"re": "p/q", "im": "p/q"}`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::Zero;
use serde_json::{json, Value};

use super::poly::MultiPoly;
use super::ring::{GaussianRational, Rational};
use crate::error::{Error, Result};

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Scalars with a canonical JSON representation.
pub trait JsonScalar: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) if n.is_i64() => Ok(Rational::from_integer(n.as_i64().unwrap().into())),
            _ => Err(Error::Parse(format!("expected rational string, got {v}"))),
        }
    }
}

impl JsonScalar for GaussianRational {
    fn to_json(&self) -> Value {
        json!({"re": self.re.to_string(), "im": self.im.to_string()})
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(map) => {
                let part = |k: &str| match map.get(k) {
                    Some(x) => Rational::from_json(x),
                    None => Ok(Rational::zero()),
                };
                Ok(Complex::new(part("re")?, part("im")?))
            }
            other => Ok(Complex::new(Rational::from_json(other)?, Rational::zero())),
        }
    }
}

impl JsonScalar for MultiPoly {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            _ => Err(Error::Parse(format!("expected polynomial string, got {v}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ring::ratio;

    #[test]
    fn rational_text_is_canonical() {
        assert_eq!(parse_rational("6/-4").unwrap().to_string(), "-3/2");
        assert_eq!(parse_rational(" 10/5 ").unwrap().to_string(), "2");
        assert_eq!(parse_rational("0/7").unwrap().to_string(), "0");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn gaussian_json() {
        let z = Complex::new(ratio(1, 2), ratio(-3, 1));
        let v = z.to_json();
        assert_eq!(v, json!({"re": "1/2", "im": "-3"}));
        assert_eq!(GaussianRational::from_json(&v).unwrap(), z);
    }
}
