//! JSON-in, JSON-out entry points shared by the command line and the C ABI.
//!
//! Polynomials use the `{"mode", "roots"}` / `{"coeffs"}` encoding of
//! [`io`](crate::io). When every polynomial argument is rational the work is
//! exact; otherwise everything is converted to floating point.

use serde_json::{json, Value};

use crate::contraction::{
    decompose_majorization, decompose_perturbed, random_comparable_pair, transfer_chain, Decomposition, StageCase,
    DEFAULT_STEP_CAP,
};
use crate::error::{Error, Result};
use crate::hyperbolic::HyperbolicPoly;
use crate::io::{
    chain_from_json, image_to_json, lp_from_json, poly_from_json, poly_to_json, scalars_from_json, AnyPoly,
};
use crate::lp::{appell, gaussian_op, laguerre_ms, shift_pencil, DeformationVector, LPFunction, MultiplierSequence};
use crate::majorization::{build_witness, check_majorization};
use crate::pencil::{sample_grid, uniform_grid};
use crate::poly::Poly;
use crate::scalar::{Mode, Rational, Scalar};

/// Both polynomials in one mode: rational only if both are.
enum Pair {
    Rational(HyperbolicPoly<Rational>, HyperbolicPoly<Rational>),
    Float(HyperbolicPoly<f64>, HyperbolicPoly<f64>),
}

fn pair(a: &Value, b: &Value) -> Result<Pair> {
    Ok(match (poly_from_json(a)?, poly_from_json(b)?) {
        (AnyPoly::Rational(a), AnyPoly::Rational(b)) => Pair::Rational(a, b),
        (a, b) => Pair::Float(a.to_f64(), b.to_f64()),
    })
}

fn rational_pair(a: &Value, b: &Value) -> Result<(HyperbolicPoly<Rational>, HyperbolicPoly<Rational>)> {
    match pair(a, b)? {
        Pair::Rational(a, b) => Ok((a, b)),
        Pair::Float(..) => Err(Error::FloatModeUnsupported),
    }
}

/// Certificate for `Z(q) ≺ Z(p)`.
pub fn majorize_check(q: &Value, p: &Value, tol: Option<f64>) -> Result<Value> {
    Ok(match pair(q, p)? {
        Pair::Rational(q, p) => check_majorization(q.roots(), p.roots(), tol)?.to_json(),
        Pair::Float(q, p) => check_majorization(q.roots(), p.roots(), tol)?.to_json(),
    })
}

/// True for a certificate whose verdict is `Less` or `Equal`.
pub fn certificate_holds(cert: &Value) -> bool {
    matches!(cert["verdict"].as_str(), Some("Less" | "Equal"))
}

/// Doubly stochastic `A` with `A·Z(p) = Z(q)`; rational inputs only.
pub fn majorize_witness(q: &Value, p: &Value) -> Result<Value> {
    let (q, p) = rational_pair(q, p)?;
    Ok(build_witness(q.roots(), p.roots())?.to_json())
}

/// At most `n - 1` general contractions carrying `p` to `q`; repeated
/// roots allowed.
pub fn majorize_chain(q: &Value, p: &Value) -> Result<Value> {
    let (q, p) = rational_pair(q, p)?;
    Ok(transfer_chain(&p, &q)?.to_json())
}

fn decomposition_json(d: &Decomposition<Rational>) -> Value {
    let stages: Vec<Value> = d
        .stages
        .iter()
        .map(|s| {
            json!({
                "case": match s.case {
                    StageCase::Adjacent => "adjacent",
                    StageCase::Separated => "separated",
                },
                "i": s.i,
                "j": s.j,
                "amount": s.amount.to_json(),
                "discrepancy_before": s.discrepancy_before,
                "discrepancy_after": s.discrepancy_after,
                "steps": s.steps,
            })
        })
        .collect();
    json!({"chain": d.chain.to_json(), "stages": stages})
}

/// Simple nondegenerate chain from `p` to `q`. With `eps`, both are first
/// perturbed to strict polynomials by the same shift vector.
pub fn chain_decompose(p: &Value, q: &Value, eps: Option<&Value>, cap: Option<usize>) -> Result<Value> {
    let (p, q) = rational_pair(p, q)?;
    let cap = cap.unwrap_or(DEFAULT_STEP_CAP);
    let d = match eps {
        Some(e) => decompose_perturbed(&p, &q, &Rational::from_json(e)?, cap)?,
        None => decompose_majorization(&p, &q, cap)?,
    };
    Ok(decomposition_json(&d))
}

pub fn chain_verify(chain: &Value) -> Result<Value> {
    let chain = chain_from_json::<Rational>(chain)?;
    let r = chain.verify()?;
    Ok(json!({
        "steps": r.steps,
        "replays": r.replays,
        "all_simple": r.all_simple,
        "all_nondegenerate": r.all_nondegenerate,
        "all_strict": r.all_strict,
        "monotone": r.monotone,
        "clean": r.is_clean(),
    }))
}

/// Strict `P` of degree `n` and `Q ⪯ P` after `budget` random contractions.
pub fn chain_random_pair(seed: u64, n: usize, budget: usize, mode: Mode) -> Result<Value> {
    Ok(match mode {
        Mode::Rational => {
            let (p, q) = random_comparable_pair::<Rational>(seed, n, budget)?;
            json!({"p": poly_to_json(&p), "q": poly_to_json(&q)})
        }
        Mode::Float => {
            let (p, q) = random_comparable_pair::<f64>(seed, n, budget)?;
            json!({"p": poly_to_json(&p), "q": poly_to_json(&q)})
        }
    })
}

/// Coefficients and, when real-rooted, roots of an image polynomial.
fn image<S: Scalar>(p: &Poly<S>) -> Result<Value> {
    match image_to_json(p, true) {
        Ok(mut v) => {
            v["real_rooted"] = json!(true);
            Ok(v)
        }
        Err(Error::NotRealRooted(_)) => {
            let mut v = image_to_json(p, false)?;
            v["real_rooted"] = json!(false);
            Ok(v)
        }
        Err(e) => Err(e),
    }
}

macro_rules! with_poly {
    ($v:expr, $p:ident => $body:expr) => {
        match poly_from_json($v)? {
            AnyPoly::Rational($p) => $body,
            AnyPoly::Float($p) => $body,
        }
    };
}

fn apply_phi<S: Scalar>(
    phi: &LPFunction<S>,
    p: &HyperbolicPoly<S>,
    degree: Option<usize>,
    normalized: bool,
) -> Result<Value> {
    let op = phi.to_operator(degree.unwrap_or(p.degree()).max(p.degree()))?;
    let img = if normalized {
        op.apply_normalized(&p.to_poly())?
    } else {
        op.apply(&p.to_poly())?
    };
    image(&img)
}

/// `φ(D)[P]`, optionally divided by its leading coefficient.
pub fn op_apply(phi: &Value, poly: &Value, degree: Option<usize>, normalized: bool) -> Result<Value> {
    with_poly!(poly, p => apply_phi(&lp_from_json(phi)?, &p, degree, normalized))
}

/// `φ(D)[x^n]`.
pub fn op_appell(phi: &Value, n: usize, normalized: bool, mode: Mode) -> Result<Value> {
    match mode {
        Mode::Rational => image(&appell(&lp_from_json::<Rational>(phi)?, n, normalized)?),
        Mode::Float => image(&appell(&lp_from_json::<f64>(phi)?, n, normalized)?),
    }
}

/// `(1 - λD) e^{λD} P`.
pub fn op_shift_pencil(poly: &Value, lambda: &Value) -> Result<Value> {
    with_poly!(poly, p => image(&shift_pencil(&p.to_poly(), &Scalar::from_json(lambda)?)))
}

/// `e^{-aD²}` applied to `P`.
pub fn op_gaussian(poly: &Value, a: &Value) -> Result<Value> {
    with_poly!(poly, p => image(&gaussian_op(&p.to_poly(), &Scalar::from_json(a)?)))
}

/// `D(φ^s, n)[P]` for the deformation vector `s`.
pub fn op_deform(phi: &Value, s: &Value, poly: &Value, normalized: bool) -> Result<Value> {
    with_poly!(poly, p => {
        let phi = lp_from_json(phi)?.deform(&DeformationVector(scalars_from_json(s)?));
        apply_phi(&phi, &p, None, normalized)
    })
}

/// Sequence for [`op_multiplier`].
#[derive(Clone, Debug, PartialEq)]
pub enum Multiplier {
    Gammas(Value),
    Laguerre { m: usize, p: usize },
}

/// `Σ γ_k a_k x^k` for `P = Σ a_k x^k`; normalized divides by `γ_n`.
pub fn op_multiplier(poly: &Value, seq: &Multiplier, normalized: bool) -> Result<Value> {
    with_poly!(poly, p => {
        let n = p.degree();
        let ms = match seq {
            Multiplier::Gammas(g) => MultiplierSequence::new(scalars_from_json(g)?),
            Multiplier::Laguerre { m, p: shift } => laguerre_ms(*m, *shift, n + 1)?,
        };
        image(&ms.apply(&p.to_poly(), normalized)?)
    })
}

/// CSV rows `λ, x_1(λ), …, x_n(λ), f_1(λ), …, f_n(λ)` over `points` evenly
/// spaced values of `λ` in `[-half_width, half_width]`.
pub fn pencil_scan_csv(poly: &Value, half_width: f64, points: usize) -> Result<String> {
    if !(half_width.is_finite() && half_width > 0.0) || points == 0 {
        return Err(Error::Config("grid needs L > 0 and N ≥ 1".into()));
    }
    let p = poly_from_json(poly)?.to_f64();
    let n = p.degree();
    let samples = sample_grid(&p, &uniform_grid(&half_width, points), None)?;
    let mut out = String::from("lambda");
    for i in 1..=n {
        out.push_str(&format!(",x{i}"));
    }
    for m in 1..=n {
        out.push_str(&format!(",f{m}"));
    }
    out.push('\n');
    for s in samples {
        let row: Vec<String> = std::iter::once(s.lambda)
            .chain(s.roots.iter().copied())
            .chain(s.partial_sums.iter().copied())
            .map(|x| format!("{x:e}"))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roots(v: &[&str]) -> Value {
        json!({"mode": "rational", "roots": v})
    }

    #[test]
    fn check_and_witness() {
        let cert = majorize_check(&roots(&["1", "3"]), &roots(&["0", "4"]), None).unwrap();
        assert_eq!(cert["verdict"], "Less");
        assert!(certificate_holds(&cert));
        let w = majorize_witness(&roots(&["1", "3"]), &roots(&["0", "4"])).unwrap();
        assert_eq!(w["matrix"], json!([["3/4", "1/4"], ["1/4", "3/4"]]));
        let float = json!({"roots": [1.0, 3.0]});
        assert_eq!(
            majorize_witness(&float, &roots(&["0", "4"])),
            Err(Error::FloatModeUnsupported)
        );
        assert_eq!(
            majorize_check(&float, &roots(&["0", "4"]), None).unwrap()["verdict"],
            "Less"
        );
    }

    #[test]
    fn decompose_and_verify() {
        let d = chain_decompose(&roots(&["0", "2", "4"]), &roots(&["1", "2", "3"]), None, None).unwrap();
        assert_eq!(d["chain"]["steps"].as_array().unwrap().len(), 8);
        let r = chain_verify(&d["chain"]).unwrap();
        assert_eq!(r["clean"], true);
        let g = majorize_chain(&roots(&["1", "1", "4"]), &roots(&["0", "2", "4"])).unwrap();
        assert_eq!(chain_verify(&g).unwrap()["replays"], true);
    }

    #[test]
    fn operator_images() {
        let img = op_apply(&json!({"alphas": ["1"]}), &roots(&["0", "0"]), None, false).unwrap();
        // (1 - D) e^D [x²] = x² - 1 after cancellation of the x term
        assert_eq!(img["coeffs"], json!(["-1", "0", "1"]));
        let g = op_gaussian(&roots(&["0", "0", "0"]), &json!("1/2")).unwrap();
        assert_eq!(g["coeffs"], json!(["0", "-3", "0", "1"]));
        let m = op_multiplier(&roots(&["1", "2"]), &Multiplier::Gammas(json!(["0", "1", "2"])), false).unwrap();
        assert_eq!(m["coeffs"], json!(["0", "-3", "2"]));
        let a = op_appell(&json!({"a": "1"}), 2, true, Mode::Rational).unwrap();
        assert_eq!(a["coeffs"], json!(["-2", "0", "1"]));
    }

    #[test]
    fn pencil_csv_shape() {
        let csv = pencil_scan_csv(&json!({"roots": [0.0, 0.0]}), 2.0, 5).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lambda,x1,x2,f1,f2");
        assert_eq!(lines.len(), 6);
        let row: Vec<f64> = lines[5].split(',').map(|x| x.parse().unwrap()).collect();
        // P = x² at λ = 2: roots 0 and 4, f_1 = -2, f_2 = 0
        assert!((row[2] - 4.0).abs() < 1e-12 && (row[3] + 2.0).abs() < 1e-12 && row[4].abs() < 1e-12);
    }
}
