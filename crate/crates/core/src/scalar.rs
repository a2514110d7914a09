//! Scalar field abstraction.
//!
//! Every computation runs in one of two modes: exact arbitrary-precision
//! rationals or IEEE doubles. Algorithms are written once over [`Scalar`]
//! and monomorphised for both.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::roots;

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" | "exact" => Ok(Mode::Rational),
            "float" => Ok(Mode::Float),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Rational => "rational",
            Mode::Float => "float",
        })
    }
}

pub trait Scalar: Clone + Debug + PartialOrd + Signed + Send + Sync + 'static {
    const MODE: Mode;

    fn from_i64(v: i64) -> Self;

    fn from_ratio(num: i64, den: i64) -> Self;

    /// Exact image of a double in this field. `None` for NaN/Inf.
    fn from_f64(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn from_rational(r: &Rational) -> Self;

    fn is_finite(&self) -> bool;

    /// Comparison slack to use in this mode; exact mode always returns zero.
    fn tolerance(tol: f64) -> Self;

    /// Real roots of a real-rooted polynomial given low-to-high coefficients.
    /// Exact inputs are conditioned in exact arithmetic before the
    /// floating-point bracketing search.
    fn real_roots(coeffs: &[Self], tol: Option<f64>) -> Result<Vec<f64>>;

    fn to_json(&self) -> Value;

    fn from_json(v: &Value) -> Result<Self>;

    fn half(&self) -> Self {
        self.clone() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_f64(v: f64) -> Option<Self> {
        v.is_finite().then_some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }

    fn tolerance(tol: f64) -> Self {
        tol
    }

    fn real_roots(coeffs: &[Self], tol: Option<f64>) -> Result<Vec<f64>> {
        roots::real_roots(coeffs, tol).map(|r| r.into_vec())
    }

    fn to_json(&self) -> Value {
        serde_json::Number::from_f64(*self)
            .map(Value::Number)
            .unwrap_or(Value::Null)
    }

    fn from_json(v: &Value) -> Result<Self> {
        let x = match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}")))?,
            Value::String(s) => rational_to_f64(&parse_rational(s)?),
            other => return Err(Error::Parse(format!("expected number, got {other}"))),
        };
        if !x.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(x)
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Rational;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Rational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_f64(v: f64) -> Option<Self> {
        Rational::from_float(v)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn tolerance(_tol: f64) -> Self {
        Rational::zero()
    }

    fn real_roots(coeffs: &[Self], tol: Option<f64>) -> Result<Vec<f64>> {
        roots::real_roots_exact(coeffs, tol).map(|r| r.into_vec())
    }

    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => parse_rational(s),
            Value::Number(n) => parse_rational(&n.to_string()),
            other => Err(Error::Parse(format!("expected rational, got {other}"))),
        }
    }
}

/// Accurate conversion that survives huge numerators and denominators.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
            return n / d;
        }
    }
    // scale so the quotient carries ~64 significant bits
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift = 64 - (nb - db);
    let scaled = if shift >= 0 {
        (r.numer() << (shift as usize)) / r.denom()
    } else {
        r.numer() / (r.denom() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(shift as i32))
}

/// Formats as `p/q`, or `p` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal literal (`-1.25`, `3e-2`)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('/') {
        let (p, q) = s.split_once('/').unwrap();
        let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
        if q.is_zero() {
            return Err(Error::Parse(format!("{s}: zero denominator")));
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|e| Error::Parse(format!("{s}: {e}")))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int_part}{frac_part}");
    let num = BigInt::from_str(&digits).map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(num, num_traits::pow(ten, (-scale) as usize))
    })
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fractions with a final semiconvergent check).
pub fn rationalize(x: f64, max_den: u64) -> Option<Rational> {
    let exact = Rational::from_float(x)?;
    let max_den = BigInt::from(max_den.max(1));
    let (mut p0, mut q0) = (BigInt::zero(), BigInt::one());
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let mut rem = exact.clone();
    loop {
        let a = rem.floor().to_integer();
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        if q2 > max_den {
            // largest semiconvergent that still fits
            let k = (&max_den - &q0).div_floor(&q1);
            let ps = &k * &p1 + &p0;
            let qs = &k * &q1 + &q0;
            let semi = Rational::new(ps, qs);
            let conv = Rational::new(p1, q1);
            return Some(if (&semi - &exact).abs() < (&conv - &exact).abs() {
                semi
            } else {
                conv
            });
        }
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let frac = &rem - Rational::from_integer(a);
        if frac.is_zero() {
            return Some(Rational::new(p1, q1));
        }
        rem = frac.recip();
    }
}

pub fn to_f64_vec<S: Scalar>(v: &[S]) -> Vec<f64> {
    v.iter().map(Scalar::to_f64).collect()
}

pub fn to_rational_vec(v: &[f64]) -> Result<Vec<Rational>> {
    v.iter()
        .map(|x| Rational::from_f64(*x).ok_or(Error::NonFinite))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), Rational::from_ratio(3, 4));
        assert_eq!(parse_rational("-7").unwrap(), Rational::from_i64(-7));
        assert_eq!(parse_rational("1.25").unwrap(), Rational::from_ratio(5, 4));
        assert_eq!(parse_rational("-2.5e-1").unwrap(), Rational::from_ratio(-1, 4));
        assert_eq!(parse_rational("6/4").unwrap(), Rational::from_ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn format_round_trip() {
        for s in ["3/4", "-7", "0", "-22/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
    }

    #[test]
    fn exact_arithmetic_round_trips() {
        let a = Rational::from_ratio(1, 3);
        let b = Rational::from_ratio(2, 7);
        let s = a.clone() + b.clone();
        assert_eq!(s.clone() - b.clone(), a);
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert!(a > b);
    }

    #[test]
    fn huge_rationals_convert() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let r = Rational::new(big.clone() * 3, big);
        assert!((rational_to_f64(&r) - 3.0).abs() < 1e-15);
        let tiny = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), 300));
        assert!((rational_to_f64(&tiny) / 2f64.powi(-300) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rationalize_respects_cap() {
        let r = rationalize(std::f64::consts::PI, 1000).unwrap();
        assert_eq!(r, Rational::from_ratio(355, 113));
        let r = rationalize(0.5, 1 << 40).unwrap();
        assert_eq!(r, Rational::from_ratio(1, 2));
        let r = rationalize(-1.0 / 3.0, 1 << 40).unwrap();
        assert_eq!(r, Rational::from_ratio(-1, 3));
    }

    #[test]
    fn float_json_rejects_nan() {
        assert!(f64::from_json(&Value::Null).is_err());
        assert_eq!(f64::from_json(&Value::String("1/4".into())).unwrap(), 0.25);
    }
}
