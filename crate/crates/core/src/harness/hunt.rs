//! Counterexample searches for the open questions on diagonal and general
//! hyperbolicity-preserving operators.
//!
//! - `pb1`: normalized truncations `Γ_n` of multiplier sequences of the first
//!   kind. Families: `xdx` (`γ_k = k`), `laguerre` (`γ_k = H(k + p)`), and
//!   `random` Hadamard products of known sequences.
//! - `pb2`: finite sequences `λ_0, …, λ_n = 1` whose operator maps `H_n` into
//!   itself. Families: `jensen` (built from a Jensen polynomial with roots of
//!   one sign), `raw` (rejection sampling), `mixed`.
//! - `pb3`: operators on `H_n` compared for barycenter preservation and
//!   order preservation. Families: `lp`, `diagonal`, `diagonal-shift`,
//!   `translation`, `mixed`.
//!
//! A flagged violation counts as a counterexample only after the exact
//! check in [`certify`](super::certify) confirms it.

use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::certify::{certify_order, Certification};
use super::gen::{self, LpShape};
use super::{run_trials, ExperimentConfig, Outcome, SuiteReport};
use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicPoly, RootTuple};
use crate::io::{lp_from_json, lp_to_json, poly_to_json, scalars_from_json, scalars_to_json};
use crate::lp::{laguerre_ms, LPFunction, MultiplierSequence};
use crate::majorization::check_majorization;
use crate::poly::{binomial, factorial, Poly};
use crate::roots::is_real_rooted_exact;
use crate::scalar::{rationalize, Mode, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Problem {
    Pb1,
    Pb2,
    Pb3,
}

impl FromStr for Problem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pb1" => Ok(Problem::Pb1),
            "pb2" => Ok(Problem::Pb2),
            "pb3" => Ok(Problem::Pb3),
            other => Err(Error::UnknownSuite(other.into())),
        }
    }
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Pb1 => "pb1",
            Problem::Pb2 => "pb2",
            Problem::Pb3 => "pb3",
        }
    }

    fn default_family(self) -> &'static str {
        match self {
            Problem::Pb1 => "random",
            Problem::Pb2 => "jensen",
            Problem::Pb3 => "mixed",
        }
    }

    fn families(self) -> &'static [&'static str] {
        match self {
            Problem::Pb1 => &["xdx", "laguerre", "random"],
            Problem::Pb2 => &["jensen", "raw", "mixed"],
            Problem::Pb3 => &["lp", "diagonal", "diagonal-shift", "translation", "mixed"],
        }
    }
}

/// Comparable pairs tested per sampled operator.
pub const PAIRS_PER_TRIAL: usize = 4;

/// Attempts before rejection sampling of `pb2` operators gives up.
pub const REJECTION_ATTEMPTS: usize = 2000;

pub fn run(problem: Problem, config: &ExperimentConfig) -> Result<SuiteReport> {
    let family = config.family.clone().unwrap_or_else(|| problem.default_family().into());
    if !problem.families().contains(&family.as_str()) {
        return Err(Error::Config(format!(
            "unknown family `{family}` for {}; expected one of {:?}",
            problem.name(),
            problem.families()
        )));
    }
    let degrees = config.degrees(match problem {
        Problem::Pb1 => (2, 8),
        Problem::Pb2 if family == "raw" => (2, 4),
        Problem::Pb2 | Problem::Pb3 => (2, 6),
    })?;
    let laguerre = config.laguerre;
    if let Some([m, _]) = laguerre {
        if m == 0 {
            return Err(Error::Config("laguerre sequence needs m ≥ 1".into()));
        }
    }
    let mode = config.mode;
    let rel = config.rel_tol();
    run_trials(problem.name(), config, |trial| {
        let mut rng = gen::trial_rng(config.seed, trial);
        let inputs = match problem {
            Problem::Pb1 => gen_pb1(&mut rng, degrees, &family, laguerre),
            Problem::Pb2 => gen_pb2(&mut rng, degrees, &family)?,
            Problem::Pb3 => gen_pb3(&mut rng, degrees, &family, trial),
        };
        let outcome = replay(problem, &inputs, mode, rel);
        Ok((inputs, outcome))
    })
}

/// Re-checks serialized hunt inputs.
pub fn replay(problem: Problem, inputs: &Value, mode: Mode, rel: f64) -> Result<Outcome> {
    match (problem, mode) {
        (Problem::Pb1 | Problem::Pb2, Mode::Rational) => check_diagonal::<Rational>(inputs, rel),
        (Problem::Pb1 | Problem::Pb2, Mode::Float) => check_diagonal::<f64>(inputs, rel),
        (Problem::Pb3, Mode::Rational) => check_pb3::<Rational>(inputs, rel),
        (Problem::Pb3, Mode::Float) => check_pb3::<f64>(inputs, rel),
    }
}

// ---- shared ----------------------------------------------------------------

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("hunt inputs lack `{key}`")))
}

/// Scalars of a serialized witness in exact arithmetic; float entries are
/// replaced by the nearest rational with denominator at most `2^40`.
fn exact_scalars(v: &Value) -> Result<Vec<Rational>> {
    v.as_array()
        .ok_or_else(|| Error::Parse("expected an array".into()))?
        .iter()
        .map(|x| match x {
            Value::Number(n) => n.as_f64().and_then(|f| rationalize(f, 1 << 40)).ok_or(Error::NonFinite),
            other => Rational::from_json(other),
        })
        .collect()
}

fn exact_poly(v: &Value) -> Result<HyperbolicPoly<Rational>> {
    HyperbolicPoly::from_roots(exact_scalars(field(v, "roots")?)?)
}

fn poly<S: Scalar>(v: &Value) -> Result<HyperbolicPoly<S>> {
    HyperbolicPoly::from_roots(scalars_from_json(field(v, "roots")?)?)
}

fn pairs_json<R: Rng>(rng: &mut R, n: usize) -> Value {
    let pairs: Vec<Value> = (0..PAIRS_PER_TRIAL)
        .map(|i| {
            let (p, q) = if i == 0 {
                // the extreme pair: P against the n-fold root at its barycenter
                let p = gen::random_strict(rng, n);
                let c = p.barycenter();
                let q = HyperbolicPoly::from_roots(vec![c; n]).expect("n ≥ 1");
                (p, q)
            } else {
                gen::random_pair(rng, n)
            };
            json!({"p": poly_to_json(&p), "q": poly_to_json(&q)})
        })
        .collect();
    Value::Array(pairs)
}

fn roots_of<S: Scalar>(p: &Poly<S>) -> Result<RootTuple<f64>> {
    Ok(RootTuple::new(S::real_roots(p.monic()?.coeffs(), None)?))
}

/// What one comparable pair says about an operator.
#[derive(Clone, Debug, PartialEq)]
enum PairVerdict {
    Ordered(f64),
    /// Exactly certified `T[Q] ⋠ T[P]`.
    Violated(Value),
    /// Flagged in floating point but not decided exactly.
    Unconfirmed(Value),
}

/// Compares `T[Q]` with `T[P]` in mode `S`; a flagged violation is rechecked
/// on exact images with certified root enclosures.
fn judge<S: Scalar>(
    apply: &dyn Fn(&Poly<S>) -> Result<Poly<S>>,
    apply_exact: &dyn Fn(&Poly<Rational>) -> Result<Poly<Rational>>,
    pair: &Value,
    rel: f64,
) -> Result<PairVerdict> {
    let p: HyperbolicPoly<S> = poly(field(pair, "p")?)?;
    let q: HyperbolicPoly<S> = poly(field(pair, "q")?)?;
    let (tq, tp) = (apply(&q.to_poly())?, apply(&p.to_poly())?);
    let float = match (roots_of(&tq), roots_of(&tp)) {
        (Ok(zq), Ok(zp)) => {
            let tol = rel * (1.0 + zq.max_abs().max(zp.max_abs()));
            let cert = check_majorization(&zq, &zp, Some(tol))?;
            if cert.holds() {
                return Ok(PairVerdict::Ordered(cert.worst_slack()));
            }
            cert
        }
        // float roots of repeated image roots can turn complex
        (Err(e), _) | (_, Err(e)) if S::MODE == Mode::Float => {
            return confirm(apply_exact, pair, json!({"float_error": e.to_string()}), 0.0);
        }
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    let slack = float.worst_slack().max(0.0);
    confirm(apply_exact, pair, float.to_json(), slack)
}

/// Exact recheck of a pair the float comparison flagged.
fn confirm(
    apply_exact: &dyn Fn(&Poly<Rational>) -> Result<Poly<Rational>>,
    pair: &Value,
    float: Value,
    slack: f64,
) -> Result<PairVerdict> {
    let pe = exact_poly(field(pair, "p")?)?;
    let qe = exact_poly(field(pair, "q")?)?;
    let tq = apply_exact(&qe.to_poly())?;
    let tp = apply_exact(&pe.to_poly())?;
    Ok(match certify_order(&tq, &tp) {
        Certification::Violated(w) => PairVerdict::Violated(json!({
            "float_certificate": float,
            "exact_certificate": w,
            "image_q": scalars_to_json(tq.coeffs()),
            "image_p": scalars_to_json(tp.coeffs()),
        })),
        Certification::Holds => PairVerdict::Ordered(slack),
        Certification::Undecided(reason) => PairVerdict::Unconfirmed(json!({
            "float_certificate": float,
            "reason": reason,
        })),
    })
}

fn judge_all<S: Scalar>(
    apply: &dyn Fn(&Poly<S>) -> Result<Poly<S>>,
    apply_exact: &dyn Fn(&Poly<Rational>) -> Result<Poly<Rational>>,
    v: &Value,
    rel: f64,
) -> Result<Vec<PairVerdict>> {
    field(v, "pairs")?
        .as_array()
        .ok_or_else(|| Error::Parse("`pairs` must be an array".into()))?
        .iter()
        .map(|pair| judge(apply, apply_exact, pair, rel))
        .collect()
}

/// Folds pair verdicts: certified violations fail, unconfirmed ones are
/// observed, otherwise the smallest slack passes.
fn fold_verdicts(verdicts: &[PairVerdict]) -> Outcome {
    if let Some((i, w)) = verdicts.iter().enumerate().find_map(|(i, v)| match v {
        PairVerdict::Violated(w) => Some((i, w)),
        _ => None,
    }) {
        return Outcome::Fail {
            certificate: json!({"pair": i, "witness": w}),
        };
    }
    if let Some((i, w)) = verdicts.iter().enumerate().find_map(|(i, v)| match v {
        PairVerdict::Unconfirmed(w) => Some((i, w)),
        _ => None,
    }) {
        return Outcome::Observe {
            kind: "unconfirmed".into(),
            detail: json!({"pair": i, "detail": w}),
            slack: None,
        };
    }
    Outcome::Pass {
        slack: min_slack(verdicts),
    }
}

fn min_slack(verdicts: &[PairVerdict]) -> f64 {
    verdicts
        .iter()
        .filter_map(|v| match v {
            PairVerdict::Ordered(s) => Some(*s),
            _ => None,
        })
        .fold(f64::INFINITY, f64::min)
}

// ---- diagonal operators (pb1, pb2) ------------------------------------------

fn gen_pb1(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize), family: &str, laguerre: Option<[usize; 2]>) -> Value {
    let (n, gammas, detail) = match family {
        "xdx" => {
            let n = rng.gen_range(lo..=hi);
            let g: Vec<Rational> = (0..=n).map(|k| Rational::from_i64(k as i64)).collect();
            (n, g, json!({}))
        }
        "laguerre" => {
            let [m, p] = laguerre.unwrap_or_else(|| [rng.gen_range(1..=3), rng.gen_range(0..=3)]);
            let floor = m.saturating_sub(p).max(1);
            let n = rng.gen_range(lo.max(floor)..=hi.max(floor));
            let g = laguerre_ms::<Rational>(m, p, n + 1)
                .expect("m ≥ 1 is checked before the run")
                .gammas;
            (n, g, json!({"m": m, "p": p}))
        }
        _ => {
            let n = rng.gen_range(lo..=hi);
            let (g, detail) = random_multiplier_sequence(rng, n + 1);
            (n, g, detail)
        }
    };
    json!({
        "problem": "pb1",
        "family": family,
        "detail": detail,
        "gammas": scalars_to_json(&gammas),
        "pairs": pairs_json(rng, n),
    })
}

/// Hadamard product of `f(k)` (with `f` having only nonpositive zeros),
/// optionally `1/k!` and optionally `q^{k²}` with `0 < q < 1`: all
/// multiplier sequences of the first kind with no zero terms.
fn random_multiplier_sequence<R: Rng>(rng: &mut R, len: usize) -> (Vec<Rational>, Value) {
    let shifts: Vec<Rational> = (0..rng.gen_range(0..=3))
        .map(|_| Rational::from_ratio(rng.gen_range(1..=12), 4))
        .collect();
    let with_factorial = rng.gen_bool(0.5);
    let q = rng.gen_bool(0.5).then(|| Rational::from_ratio(rng.gen_range(1..=3), 4));
    let gammas = (0..len)
        .map(|k| {
            let kk = Rational::from_i64(k as i64);
            let mut g = shifts.iter().fold(Rational::from_i64(1), |acc, r| acc * (&kk + r));
            if with_factorial {
                g /= factorial::<Rational>(k);
            }
            if let Some(q) = &q {
                g = (0..k * k).fold(g, |acc, _| acc * q);
            }
            g
        })
        .collect();
    let detail = json!({
        "shifts": scalars_to_json(&shifts),
        "factorial": with_factorial,
        "q": q.as_ref().map(Scalar::to_json),
    });
    (gammas, detail)
}

/// `Σ C(n,k) λ_k x^k`, which is `T[(1 + x)^n]`.
fn jensen_polynomial(lambdas: &[Rational]) -> Poly<Rational> {
    let n = lambdas.len() - 1;
    Poly::new(
        lambdas
            .iter()
            .enumerate()
            .map(|(k, l)| binomial::<Rational>(n, k) * l)
            .collect(),
    )
}

/// Roots all `≤ 0` or all `≥ 0`, read exactly from the coefficient signs
/// once the roots at zero are removed.
fn roots_of_one_sign(g: &Poly<Rational>) -> bool {
    let Ok(core) = g.shift_down(g.zero_root_multiplicity()) else {
        return false;
    };
    let c = core.coeffs();
    let d = c.len() - 1;
    let same = c.iter().all(|x| x.is_positive()) || c.iter().all(|x| x.is_negative());
    let alternating = c
        .iter()
        .enumerate()
        .all(|(k, x)| !x.is_zero() && (x.is_positive() == (c[d].is_positive() == ((d - k) % 2 == 0))));
    same || alternating
}

/// `λ_0, …, λ_n` with `λ_n = 1` maps `H_n` into itself when its Jensen
/// polynomial is real-rooted with roots of one sign.
pub fn admissible_finite_sequence(lambdas: &[Rational]) -> bool {
    let Some(last) = lambdas.last() else {
        return false;
    };
    if *last != Rational::from_i64(1) {
        return false;
    }
    let g = jensen_polynomial(lambdas);
    roots_of_one_sign(&g) && newton_inequalities(lambdas) && is_real_rooted_exact(&g)
}

/// `λ_k² ≥ λ_{k-1} λ_{k+1}`, necessary for a real-rooted Jensen polynomial.
fn newton_inequalities(lambdas: &[Rational]) -> bool {
    lambdas.windows(3).all(|w| w[1].clone() * &w[1] >= w[0].clone() * &w[2])
}

/// `λ_k = g_k / C(n,k)` for a monic `g` with roots of one sign.
fn jensen_lambdas<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let roots: Vec<Rational> = (0..n)
        .map(|_| Rational::from_ratio(sign * rng.gen_range(0..=16), 4))
        .collect();
    let g = Poly::from_roots(&roots);
    (0..=n).map(|k| g.coeff(k) / binomial::<Rational>(n, k)).collect()
}

fn raw_lambdas<R: Rng>(rng: &mut R, n: usize) -> Option<Vec<Rational>> {
    (0..REJECTION_ATTEMPTS).find_map(|_| {
        // only all-positive and alternating patterns can pass
        let alternating = rng.gen_bool(0.5);
        let mut l: Vec<Rational> = (0..n)
            .map(|k| {
                let x = gen::random_rational(rng, 0, 3, 4);
                if alternating && (n - k) % 2 == 1 {
                    -x
                } else {
                    x
                }
            })
            .collect();
        l.push(Rational::from_i64(1));
        admissible_finite_sequence(&l).then_some(l)
    })
}

fn gen_pb2(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize), family: &str) -> Result<Value> {
    let n = rng.gen_range(lo..=hi);
    let (lambdas, source) = match family {
        "raw" => (
            raw_lambdas(rng, n).ok_or_else(|| {
                Error::GeneratorExhausted(format!(
                    "no admissible sequence of length {} in {REJECTION_ATTEMPTS} draws",
                    n + 1
                ))
            })?,
            "raw",
        ),
        "mixed" if rng.gen_bool(0.5) => match raw_lambdas(rng, n) {
            Some(l) => (l, "raw"),
            None => (jensen_lambdas(rng, n), "jensen"),
        },
        _ => (jensen_lambdas(rng, n), "jensen"),
    };
    Ok(json!({
        "problem": "pb2",
        "family": source,
        "gammas": scalars_to_json(&lambdas),
        "pairs": pairs_json(rng, n),
    }))
}

fn check_diagonal<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let gammas: Vec<S> = scalars_from_json(field(v, "gammas")?)?;
    let exact_gammas = exact_scalars(field(v, "gammas")?)?;
    if field(v, "problem")?.as_str() == Some("pb2") && !admissible_finite_sequence(&exact_gammas) {
        return Ok(Outcome::Skip("sequence does not preserve H_n".into()));
    }
    if gammas.last().is_none_or(|g| g.is_zero()) {
        return Ok(Outcome::Skip("top term is zero".into()));
    }
    let seq = MultiplierSequence::new(gammas);
    let exact = MultiplierSequence::new(exact_gammas);
    let apply = |p: &Poly<S>| seq.apply(p, true);
    let apply_exact = |p: &Poly<Rational>| exact.apply(p, true);
    Ok(fold_verdicts(&judge_all(&apply, &apply_exact, v, rel)?))
}

// ---- pb3: barycenter preservation against order preservation --------------

const PB3_KINDS: [&str; 4] = ["lp", "diagonal", "diagonal-shift", "translation"];

fn gen_pb3(rng: &mut ChaCha8Rng, (lo, hi): (usize, usize), family: &str, trial: u64) -> Value {
    let kind = if family == "mixed" {
        PB3_KINDS[(trial % 4) as usize]
    } else {
        family
    };
    let n = rng.gen_range(lo..=hi);
    let op = match kind {
        "lp" => {
            let driftless = rng.gen_bool(0.5);
            let phi = gen::random_lp(
                rng,
                LpShape {
                    max_m: 0,
                    max_alphas: 3,
                    driftless,
                    unit_at_zero: true,
                },
            );
            json!({"kind": "lp", "phi": lp_to_json(&phi)})
        }
        "diagonal" => json!({"kind": "diagonal", "lambdas": scalars_to_json(&jensen_lambdas(rng, n))}),
        "diagonal-shift" => {
            let l = jensen_lambdas(rng, n);
            let b = gen::random_nonzero(rng, -2, 2, 4);
            json!({"kind": "diagonal-shift", "lambdas": scalars_to_json(&l), "b": b.to_json()})
        }
        _ => {
            let b = gen::random_nonzero(rng, -2, 2, 4);
            json!({"kind": "translation", "b": b.to_json()})
        }
    };
    let probes: Vec<Value> = (0..2).map(|_| poly_to_json(&gen::random_centered(rng, n))).collect();
    json!({
        "problem": "pb3",
        "operator": op,
        "centered_probes": probes,
        "pairs": pairs_json(rng, n),
    })
}

/// A sampled operator on `H_n`.
#[derive(Clone, Debug)]
enum Operator<S> {
    Lp(LPFunction<S>),
    Diagonal(MultiplierSequence<S>),
    /// `e^{bD} ∘ Λ`
    DiagonalShift(MultiplierSequence<S>, S),
    /// `e^{bD}`
    Translation(S),
}

impl<S: Scalar> Operator<S> {
    fn from_json(
        v: &Value,
        scalars: &dyn Fn(&Value) -> Result<Vec<S>>,
        one: &dyn Fn(&Value) -> Result<S>,
    ) -> Result<Self> {
        Ok(match field(v, "kind")?.as_str() {
            Some("lp") => Operator::Lp(lp_from_json(field(v, "phi")?)?),
            Some("diagonal") => Operator::Diagonal(MultiplierSequence::new(scalars(field(v, "lambdas")?)?)),
            Some("diagonal-shift") => Operator::DiagonalShift(
                MultiplierSequence::new(scalars(field(v, "lambdas")?)?),
                one(field(v, "b")?)?,
            ),
            Some("translation") => Operator::Translation(one(field(v, "b")?)?),
            _ => return Err(Error::Parse("unknown operator kind".into())),
        })
    }

    fn apply(&self, p: &Poly<S>) -> Result<Poly<S>> {
        let n = p.degree().ok_or(Error::DegreeZero)?;
        match self {
            Operator::Lp(phi) => phi.to_operator(n)?.apply(p),
            Operator::Diagonal(l) => l.apply(p, false),
            Operator::DiagonalShift(l, b) => Ok(l.apply(p, false)?.taylor_shift(b)),
            Operator::Translation(b) => Ok(p.taylor_shift(b)),
        }
    }
}

fn check_pb3<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let op_json = field(v, "operator")?;
    let op: Operator<S> = Operator::from_json(op_json, &|x| scalars_from_json(x), &|x| S::from_json(x))?;
    let exact: Operator<Rational> = Operator::from_json(op_json, &exact_scalars, &|x| {
        exact_scalars(&Value::Array(vec![x.clone()])).map(|mut v| v.remove(0))
    })?;
    // barycenter preservation, sampled on centered probes
    let mut centered = true;
    for probe in field(v, "centered_probes")?
        .as_array()
        .ok_or_else(|| Error::Parse("`centered_probes` must be an array".into()))?
    {
        let p: HyperbolicPoly<S> = poly(probe)?;
        let img = op.apply(&p.to_poly())?;
        if img.degree() != Some(p.degree()) {
            return Ok(Outcome::Skip("operator lowers the degree".into()));
        }
        let bary = img.barycenter().ok_or(Error::DegreeZero)?;
        let tol = if S::MODE == Mode::Rational {
            0.0
        } else {
            rel * (1.0 + p.roots().max_abs())
        };
        centered &= bary.to_f64().abs() <= tol && (S::MODE == Mode::Float || bary.is_zero());
    }
    let apply = |p: &Poly<S>| op.apply(p);
    let apply_exact = |p: &Poly<Rational>| exact.apply(p);
    let verdicts = judge_all(&apply, &apply_exact, v, rel)?;
    let preserves = verdicts.iter().all(|x| matches!(x, PairVerdict::Ordered(_)));
    Ok(match (centered, preserves) {
        (true, _) => fold_verdicts(&verdicts),
        (false, true) => Outcome::Observe {
            kind: "order-preserving outside A0".into(),
            detail: json!({"operator": op_json}),
            slack: Some(min_slack(&verdicts)),
        },
        (false, false) => Outcome::Pass { slack: f64::INFINITY },
    })
}
