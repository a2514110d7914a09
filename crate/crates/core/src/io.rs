//! JSON encodings of polynomials, LP functions and contraction chains.
//!
//! Rationals are written as `"p/q"` strings; floats as JSON numbers.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::contraction::{ContractionChain, ContractionStep};
use crate::error::{Error, Result};
use crate::hyperbolic::HyperbolicPoly;
use crate::lp::LPFunction;
use crate::poly::Poly;
use crate::scalar::{Mode, Rational, Scalar};

/// A hyperbolic polynomial in whichever mode its JSON declared.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoly {
    Float(HyperbolicPoly<f64>),
    Rational(HyperbolicPoly<Rational>),
}

impl AnyPoly {
    pub fn mode(&self) -> Mode {
        match self {
            AnyPoly::Float(_) => Mode::Float,
            AnyPoly::Rational(_) => Mode::Rational,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            AnyPoly::Float(p) => p.degree(),
            AnyPoly::Rational(p) => p.degree(),
        }
    }

    pub fn to_f64(&self) -> HyperbolicPoly<f64> {
        match self {
            AnyPoly::Float(p) => p.clone(),
            AnyPoly::Rational(p) => p.to_f64(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyPoly::Float(p) => poly_to_json(p),
            AnyPoly::Rational(p) => poly_to_json(p),
        }
    }
}

pub fn read_json(path: impl AsRef<Path>) -> Result<Value> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::Parse(format!("`{what}` must be an array")))
}

pub fn scalars_from_json<S: Scalar>(v: &Value) -> Result<Vec<S>> {
    array(v, "values")?.iter().map(S::from_json).collect()
}

pub fn scalars_to_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(Scalar::to_json).collect())
}

/// Explicit `"mode"` wins; otherwise any string entry means rational.
pub fn declared_mode(v: &Value) -> Result<Mode> {
    if let Some(m) = v.get("mode") {
        return m
            .as_str()
            .ok_or_else(|| Error::Parse("`mode` must be a string".into()))?
            .parse();
    }
    let has_string = ["roots", "coeffs"]
        .iter()
        .filter_map(|k| v.get(*k).and_then(Value::as_array))
        .flatten()
        .any(Value::is_string);
    Ok(if has_string { Mode::Rational } else { Mode::Float })
}

/// Reads `{"mode":…, "roots":[…]}` or `{"coeffs":[…]}` (low degree first).
/// Coefficient input is root-found, so it always yields a float polynomial.
pub fn poly_from_json(v: &Value) -> Result<AnyPoly> {
    let mode = declared_mode(v)?;
    if let Some(roots) = v.get("roots") {
        return Ok(match mode {
            Mode::Float => AnyPoly::Float(HyperbolicPoly::from_roots(scalars_from_json(roots)?)?),
            Mode::Rational => AnyPoly::Rational(HyperbolicPoly::from_roots(scalars_from_json(roots)?)?),
        });
    }
    let coeffs = field(v, "coeffs")?;
    let roots = match mode {
        Mode::Float => f64::real_roots(&scalars_from_json::<f64>(coeffs)?, None)?,
        Mode::Rational => Rational::real_roots(&scalars_from_json::<Rational>(coeffs)?, None)?,
    };
    Ok(AnyPoly::Float(HyperbolicPoly::from_roots(roots)?))
}

/// Typed variant of [`poly_from_json`]; rejects a declared mode that differs
/// from `S`.
pub fn typed_poly_from_json<S: Scalar>(v: &Value) -> Result<HyperbolicPoly<S>> {
    if v.get("mode").is_some() && declared_mode(v)? != S::MODE {
        return Err(Error::ModeMismatch);
    }
    if let Some(roots) = v.get("roots") {
        return HyperbolicPoly::from_roots(scalars_from_json(roots)?);
    }
    let coeffs: Vec<S> = scalars_from_json(field(v, "coeffs")?)?;
    HyperbolicPoly::from_roots(
        S::real_roots(&coeffs, None)?
            .into_iter()
            .map(|r| S::from_f64(r).ok_or(Error::NonFinite))
            .collect::<Result<_>>()?,
    )
}

pub fn poly_to_json<S: Scalar>(p: &HyperbolicPoly<S>) -> Value {
    json!({"mode": S::MODE, "roots": scalars_to_json(p.root_slice())})
}

pub fn coeffs_to_json<S: Scalar>(p: &Poly<S>) -> Value {
    json!({"mode": S::MODE, "coeffs": scalars_to_json(p.coeffs())})
}

/// Coefficients of any polynomial, optionally with its real roots.
pub fn image_to_json<S: Scalar>(p: &Poly<S>, with_roots: bool) -> Result<Value> {
    let mut out = coeffs_to_json(p);
    if with_roots && p.degree().unwrap_or(0) >= 1 {
        let roots = S::real_roots(p.monic()?.coeffs(), None)?;
        out["roots"] = json!(roots);
    }
    Ok(out)
}

/// `{"c", "m", "a" | "a_sq", "b", "alphas"}`; missing entries default to
/// `c = 1`, `m = 0`, zero otherwise. `"a"` is squared on load.
pub fn lp_from_json<S: Scalar>(v: &Value) -> Result<LPFunction<S>> {
    let get = |k: &str, default: i64| -> Result<S> { v.get(k).map_or(Ok(S::from_i64(default)), S::from_json) };
    let m = match v.get("m") {
        None => 0,
        Some(x) => x
            .as_u64()
            .ok_or_else(|| Error::Parse("`m` must be a nonnegative integer".into()))? as usize,
    };
    let a_sq = match (v.get("a_sq"), v.get("a")) {
        (Some(_), Some(_)) => return Err(Error::Parse("give `a` or `a_sq`, not both".into())),
        (Some(x), None) => S::from_json(x)?,
        (None, Some(x)) => {
            let a = S::from_json(x)?;
            a.clone() * a
        }
        (None, None) => S::zero(),
    };
    let alphas = match v.get("alphas") {
        None => Vec::new(),
        Some(a) => scalars_from_json(a)?,
    };
    LPFunction::new(get("c", 1)?, m, a_sq, get("b", 0)?, alphas)
}

/// Writes `"a"` when `a²` has an exact square root in this mode, `"a_sq"`
/// otherwise.
pub fn lp_to_json<S: Scalar>(phi: &LPFunction<S>) -> Value {
    let mut out = Map::new();
    out.insert("c".into(), phi.c.to_json());
    out.insert("m".into(), json!(phi.m));
    match exact_sqrt(&phi.a_sq) {
        Some(a) => out.insert("a".into(), a.to_json()),
        None => out.insert("a_sq".into(), phi.a_sq.to_json()),
    };
    out.insert("b".into(), phi.b.to_json());
    out.insert("alphas".into(), scalars_to_json(&phi.alphas));
    Value::Object(out)
}

fn exact_sqrt<S: Scalar>(x: &S) -> Option<S> {
    let r = S::from_f64(x.to_f64().sqrt())?;
    (r.clone() * r.clone() == *x).then_some(r)
}

pub fn chain_to_json<S: Scalar>(c: &ContractionChain<S>) -> Value {
    c.to_json()
}

pub fn chain_from_json<S: Scalar>(v: &Value) -> Result<ContractionChain<S>> {
    let steps = array(field(v, "steps")?, "steps")?
        .iter()
        .map(|s| {
            let idx = |k: &str| -> Result<usize> {
                field(s, k)?
                    .as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("step `{k}` must be an integer")))
            };
            Ok(ContractionStep::new(
                idx("k")?,
                idx("l")?,
                S::from_json(field(s, "t")?)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ContractionChain {
        source: typed_poly_from_json(field(v, "source")?)?,
        steps,
        target: typed_poly_from_json(field(v, "target")?)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let v = json!({"mode": "rational", "roots": ["1/2", "-3", "7/4"]});
        let p = poly_from_json(&v).unwrap();
        assert_eq!(p.mode(), Mode::Rational);
        assert_eq!(p.to_json()["roots"], json!(["-3", "1/2", "7/4"]));
        assert_eq!(poly_from_json(&p.to_json()).unwrap(), p);

        let v = json!({"roots": [2.5, -1.0]});
        let p = poly_from_json(&v).unwrap();
        assert_eq!(p.mode(), Mode::Float);
        assert_eq!(p.to_json(), json!({"mode": "float", "roots": [-1.0, 2.5]}));
    }

    #[test]
    fn coefficient_import() {
        let v = json!({"coeffs": [-6, 11, -6, 1]});
        let p = poly_from_json(&v).unwrap().to_f64();
        for (a, b) in p.root_slice().iter().zip([1.0, 2.0, 3.0]) {
            assert!((a - b).abs() < 1e-10);
        }
        let v = json!({"mode": "rational", "coeffs": ["-1/4", "0", "1"]});
        let p = poly_from_json(&v).unwrap().to_f64();
        assert!((p.root_slice()[1] - 0.5).abs() < 1e-14);
        assert!(poly_from_json(&json!({"roots": []})).is_err());
        assert!(poly_from_json(&json!({"mode": "decimal", "roots": [1]})).is_err());
    }

    #[test]
    fn typed_mode_mismatch() {
        let v = json!({"mode": "float", "roots": [1.0]});
        assert_eq!(typed_poly_from_json::<Rational>(&v), Err(Error::ModeMismatch));
    }

    #[test]
    fn lp_round_trip() {
        let v = json!({"c": "2", "m": 1, "a": "1/2", "b": "-1", "alphas": ["1/3"]});
        let phi: LPFunction<Rational> = lp_from_json(&v).unwrap();
        assert_eq!(phi.a_sq, Rational::from_ratio(1, 4));
        assert_eq!(
            lp_to_json(&phi),
            json!({"c": "2", "m": 1, "a": "1/2", "b": "-1", "alphas": ["1/3"]})
        );
        let half: LPFunction<Rational> = lp_from_json(&json!({"a_sq": "1/2"})).unwrap();
        assert_eq!(lp_to_json(&half)["a_sq"], "1/2");
        assert_eq!(lp_from_json::<Rational>(&lp_to_json(&half)).unwrap(), half);
        assert!(lp_from_json::<Rational>(&json!({"a": 1, "a_sq": 1})).is_err());
        assert!(lp_from_json::<Rational>(&json!({"c": 0})).is_err());
    }

    #[test]
    fn chain_round_trip() {
        let p = HyperbolicPoly::from_roots(vec![Rational::from_i64(0), Rational::from_i64(4)]).unwrap();
        let c = crate::contraction::decompose_majorization(
            &p,
            &HyperbolicPoly::from_roots(vec![Rational::from_i64(1), Rational::from_i64(3)]).unwrap(),
            100,
        )
        .unwrap()
        .chain;
        let v = chain_to_json(&c);
        assert_eq!(v["steps"], json!([{"k": 1, "l": 2, "t": "1"}]));
        assert_eq!(chain_from_json::<Rational>(&v).unwrap(), c);
    }
}
