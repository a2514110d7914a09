//! Verification suites, one per proved statement.
//!
//! A suite is a generator, which draws rational inputs for a trial and
//! serializes them, and a check, which parses those inputs in the requested
//! scalar mode and decides whether the statement held.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gen::{self, LpShape};
use super::{run_trials, ExperimentConfig, Outcome, SuiteReport};
use crate::contraction::{decompose_majorization, DEFAULT_STEP_CAP};
use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicPoly, RootTuple};
use crate::io::{lp_from_json, lp_to_json, poly_to_json, scalars_from_json, scalars_to_json};
use crate::lp::{appell, laguerre_closed_form, laguerre_ms, shift_pencil, DeformationVector, LPFunction};
use crate::majorization::{check_majorization, hinge_oracle, schur_eval, SchurProbe};
use crate::pencil::{monotonicity_from_samples, pencil_majorization_check, sample_grid, uniform_grid};
use crate::poly::Poly;
use crate::scalar::{Mode, Rational, Scalar};

type Generator = fn(&mut ChaCha8Rng, (usize, usize), u64) -> Value;
type Check = fn(&Value, f64) -> Result<Outcome>;

struct Suite {
    name: &'static str,
    degrees: (usize, usize),
    generate: Generator,
    rational: Check,
    float: Check,
}

macro_rules! suite {
    ($name:literal, $deg:expr, $gen:ident, $check:ident) => {
        Suite {
            name: $name,
            degrees: $deg,
            generate: $gen,
            rational: $check::<Rational>,
            float: $check::<f64>,
        }
    };
}

const SUITES: &[Suite] = &[
    suite!("oracle", (1, 10), gen_oracle, check_oracle),
    suite!("chain", (2, 8), gen_pair, check_chain),
    suite!("main1", (2, 10), gen_main1, check_main1),
    suite!("main2", (1, 10), gen_main2, check_main2),
    suite!("deriv", (2, 10), gen_pair, check_deriv),
    suite!("iso", (1, 10), gen_iso, check_iso),
    suite!("appell-min", (1, 8), gen_appell_min, check_appell_min),
    suite!("extensive", (1, 10), gen_extensive, check_extensive),
    suite!("scaled", (1, 10), gen_scaled, check_scaled),
    suite!("deform", (1, 10), gen_deform, check_deform),
    suite!("allincr", (1, 10), gen_allincr, check_allincr),
    suite!("schur", (2, 10), gen_schur, check_schur),
    suite!("lag-ms", (1, 10), gen_lag_ms, check_lag_ms),
];

pub fn suite_names() -> Vec<&'static str> {
    SUITES.iter().map(|s| s.name).collect()
}

fn lookup(name: &str) -> Result<&'static Suite> {
    SUITES
        .iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownSuite(name.into()))
}

pub fn run(config: &ExperimentConfig) -> Result<SuiteReport> {
    let suite = lookup(&config.suite)?;
    let degrees = config.degrees(suite.degrees)?;
    let check = match config.mode {
        Mode::Rational => suite.rational,
        Mode::Float => suite.float,
    };
    let rel = config.rel_tol();
    run_trials(suite.name, config, |trial| {
        let mut rng = gen::trial_rng(config.seed, trial);
        let inputs = (suite.generate)(&mut rng, degrees, trial);
        let outcome = check(&inputs, rel);
        Ok((inputs, outcome))
    })
}

/// Re-checks serialized trial inputs, such as those of a failure record.
pub fn replay(suite: &str, inputs: &Value, mode: Mode, rel_tol: f64) -> Result<Outcome> {
    let suite = lookup(suite)?;
    match mode {
        Mode::Rational => (suite.rational)(inputs, rel_tol),
        Mode::Float => (suite.float)(inputs, rel_tol),
    }
}

// ---- shared helpers -------------------------------------------------------

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Parse(format!("trial inputs lack `{key}`")))
}

fn poly<S: Scalar>(v: &Value, key: &str) -> Result<HyperbolicPoly<S>> {
    HyperbolicPoly::from_roots(scalars_from_json(field(field(v, key)?, "roots")?)?)
}

fn scalar<S: Scalar>(v: &Value, key: &str) -> Result<S> {
    S::from_json(field(v, key)?)
}

fn usize_field(v: &Value, key: &str) -> Result<usize> {
    field(v, key)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("`{key}` must be a nonnegative integer")))
}

fn lp<S: Scalar>(v: &Value, key: &str) -> Result<LPFunction<S>> {
    lp_from_json(field(v, key)?)
}

fn degree<R: Rng>(rng: &mut R, (lo, hi): (usize, usize)) -> usize {
    rng.gen_range(lo..=hi)
}

/// Degree at least `floor`, otherwise drawn from the configured range.
fn degree_at_least<R: Rng>(rng: &mut R, (lo, hi): (usize, usize), floor: usize) -> usize {
    rng.gen_range(lo.max(floor)..=hi.max(floor))
}

fn roots_of<S: Scalar>(p: &Poly<S>) -> Result<RootTuple<f64>> {
    Ok(RootTuple::new(S::real_roots(p.monic()?.coeffs(), None)?))
}

fn scale_of(tuples: &[&RootTuple<f64>]) -> f64 {
    1.0 + tuples.iter().map(|t| t.max_abs()).fold(0.0, f64::max)
}

/// `Z(lower) ≺ Z(upper)` with tolerance `rel · (1 + max |root|)`.
fn ordered(what: &str, lower: &RootTuple<f64>, upper: &RootTuple<f64>, rel: f64) -> Result<Outcome> {
    let tol = rel * scale_of(&[lower, upper]);
    let cert = check_majorization(lower, upper, Some(tol))?;
    Ok(if cert.holds() {
        Outcome::Pass {
            slack: cert.worst_slack(),
        }
    } else {
        Outcome::Fail {
            certificate: json!({
                "check": what,
                "lower_roots": lower.as_slice(),
                "upper_roots": upper.as_slice(),
                "certificate": cert.to_json(),
            }),
        }
    })
}

fn ordered_polys<S: Scalar>(what: &str, lower: &Poly<S>, upper: &Poly<S>, rel: f64) -> Result<Outcome> {
    ordered(what, &roots_of(lower)?, &roots_of(upper)?, rel)
}

fn pair_json(p: &HyperbolicPoly<Rational>, q: &HyperbolicPoly<Rational>) -> Value {
    json!({"p": poly_to_json(p), "q": poly_to_json(q)})
}

// ---- oracle: partial sums against hinge probes -----------------------------

fn gen_oracle(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let n = degree(rng, deg);
    let y: Vec<i64> = (0..n).map(|_| rng.gen_range(-10..=10)).collect();
    let kind = rng.gen_range(0..3);
    let mut x = y.clone();
    match kind {
        0 => x.iter_mut().for_each(|v| *v = rng.gen_range(-10..=10)),
        1 => {
            x.iter_mut().for_each(|v| *v = rng.gen_range(-10..=10));
            let diff: i64 = y.iter().sum::<i64>() - x.iter().sum::<i64>();
            x[n - 1] += diff;
        }
        _ => {
            // integer Robin Hood transfers keep x majorized by y
            for _ in 0..rng.gen_range(0..=4) {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                let (lo, hi) = if x[i] <= x[j] { (i, j) } else { (j, i) };
                let t = (x[hi] - x[lo]) / 2;
                if t > 0 {
                    let t = rng.gen_range(1..=t);
                    x[lo] += t;
                    x[hi] -= t;
                }
            }
        }
    }
    json!({"x": x, "y": y, "constructed": kind == 2})
}

fn check_oracle<S: Scalar>(v: &Value, _: f64) -> Result<Outcome> {
    let x = RootTuple::new(scalars_from_json::<S>(field(v, "x")?)?);
    let y = RootTuple::new(scalars_from_json::<S>(field(v, "y")?)?);
    let cert = check_majorization(&x, &y, None)?;
    let oracle = hinge_oracle(&x, &y, None)?;
    let constructed = field(v, "constructed")?.as_bool().unwrap_or(false);
    let agree = cert.holds() == oracle.all_satisfied();
    Ok(if agree && (!constructed || cert.holds()) {
        Outcome::Pass { slack: f64::INFINITY }
    } else {
        Outcome::Fail {
            certificate: json!({
                "partial_sums": cert.to_json(),
                "hinge_failures": oracle.failures().map(|p| p.description.clone()).collect::<Vec<_>>(),
            }),
        }
    })
}

// ---- chain: exact decomposition into simple contractions ------------------

fn gen_pair(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let n = degree(rng, deg).max(2);
    let (p, q) = gen::random_pair(rng, n);
    pair_json(&p, &q)
}

fn check_chain<S: Scalar>(v: &Value, _: f64) -> Result<Outcome> {
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let q: HyperbolicPoly<S> = poly(v, "q")?;
    if S::MODE == Mode::Float {
        return Err(Error::FloatModeUnsupported);
    }
    if p == q {
        return Ok(Outcome::Skip("pair is identical".into()));
    }
    let dec = decompose_majorization(&p, &q, DEFAULT_STEP_CAP)?;
    let report = dec.chain.verify()?;
    let descending = dec.stages.iter().all(|s| s.discrepancy_after < s.discrepancy_before);
    let reaches = dec.chain.target == q && dec.chain.replay()? == q;
    Ok(if report.is_clean() && descending && reaches {
        Outcome::Pass { slack: f64::INFINITY }
    } else {
        Outcome::Fail {
            certificate: json!({
                "steps": report.steps,
                "replays": report.replays && reaches,
                "all_simple": report.all_simple,
                "all_nondegenerate": report.all_nondegenerate,
                "all_strict": report.all_strict,
                "monotone": report.monotone,
                "discrepancy_descending": descending,
            }),
        }
    })
}

// ---- main1: pencils P - λP' keep the order --------------------------------

fn gen_main1(rng: &mut ChaCha8Rng, deg: (usize, usize), t: u64) -> Value {
    let mut v = gen_pair(rng, deg, t);
    v["lambdas"] = json!((-5..=5).map(|k| (2 * k).to_string()).collect::<Vec<_>>());
    v
}

fn check_main1<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let q: HyperbolicPoly<S> = poly(v, "q")?;
    let lambdas: Vec<S> = scalars_from_json(field(v, "lambdas")?)?;
    let n = p.degree() as f64;
    let base = p.roots().max_abs().max(q.roots().max_abs());
    let mut out = Outcome::Pass { slack: f64::INFINITY };
    for l in &lambdas {
        let tol = rel * (1.0 + base + n * l.to_f64().abs());
        let cert = pencil_majorization_check(&p, &q, l, Some(tol))?;
        out = out.and(if cert.holds() {
            Outcome::Pass {
                slack: cert.worst_slack(),
            }
        } else {
            Outcome::Fail {
                certificate: json!({"lambda": l.to_json(), "certificate": cert.to_json()}),
            }
        });
    }
    Ok(out)
}

// ---- main2: (1 - λD)e^{λD} is monotone in λ on each half-line -------------

fn gen_main2(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let n = degree(rng, deg);
    let p = gen::random_strict(rng, n);
    let (s, t) = gen::random_ordered_scalars(rng);
    let widen = Rational::from_ratio(5, 2);
    json!({
        "p": poly_to_json(&p),
        "lambda1": (s * &widen).to_json(),
        "lambda2": (t * &widen).to_json(),
    })
}

fn check_main2<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let l1: S = scalar(v, "lambda1")?;
    let l2: S = scalar(v, "lambda2")?;
    if l1.abs() > l2.abs() || (l1.clone() * l2.clone()).is_negative() {
        return Ok(Outcome::Skip("λ1, λ2 not ordered".into()));
    }
    let base = p.to_poly();
    ordered_polys(
        "shift_pencil",
        &shift_pencil(&base, &l1),
        &shift_pencil(&base, &l2),
        rel,
    )
}

// ---- deriv: Q ⪯ P implies Q' ⪯ P' -----------------------------------------

fn check_deriv<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let q: HyperbolicPoly<S> = poly(v, "q")?;
    if p.degree() < 2 {
        return Ok(Outcome::Skip("degree below 2".into()));
    }
    ordered_polys("derivative", &q.to_poly().derivative(), &p.to_poly().derivative(), rel)
}

// ---- iso: LP operators are isotonic ---------------------------------------

fn gen_iso(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let phi = gen::random_lp(rng, LpShape::default());
    let n = degree_at_least(rng, deg, (phi.m + 1).max(2));
    let (p, q) = gen::random_pair(rng, n);
    let mut v = pair_json(&p, &q);
    v["phi"] = lp_to_json(&phi);
    v
}

fn image<S: Scalar>(phi: &LPFunction<S>, p: &HyperbolicPoly<S>) -> Result<Poly<S>> {
    phi.to_operator(p.degree())?.apply(&p.to_poly())
}

fn check_iso<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let q: HyperbolicPoly<S> = poly(v, "q")?;
    if p.degree() < phi.m + 1 {
        return Ok(Outcome::Skip("degree below m + 1".into()));
    }
    ordered_polys("lp_image", &image(&phi, &q)?, &image(&phi, &p)?, rel)
}

// ---- appell-min: the Appell polynomial is the least image of H_n^0 --------

fn gen_appell_min(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let phi = gen::random_lp(rng, LpShape::default());
    let n = degree_at_least(rng, deg, phi.m + 1);
    let p = gen::random_centered(rng, n);
    json!({"phi": lp_to_json(&phi), "p": poly_to_json(&p)})
}

fn check_appell_min<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let n = p.degree();
    if n < phi.m + 1 {
        return Ok(Outcome::Skip("degree below m + 1".into()));
    }
    if !p.barycenter().to_f64().abs().le(&(rel * (1.0 + p.roots().max_abs()))) {
        return Ok(Outcome::Skip("barycenter is not zero".into()));
    }
    let zero = RootTuple::new(vec![S::zero(); n]);
    let base = check_majorization(&zero, p.roots(), Some(rel * (1.0 + p.roots().max_abs())))?;
    let base = if base.holds() {
        Outcome::Pass {
            slack: base.worst_slack(),
        }
    } else {
        Outcome::Fail {
            certificate: json!({"check": "x^n below P", "certificate": base.to_json()}),
        }
    };
    let op = phi.to_operator(n)?;
    let minimum = appell(&phi, n, true)?;
    let img = op.apply_normalized(&p.to_poly())?;
    Ok(base.and(ordered_polys("appell_minimum", &minimum, &img, rel)?))
}

// ---- extensive / scaled / deform ------------------------------------------

/// `φ ∈ LP'` with `φ(0) = 1`: no drift, no power of `x`, unit constant.
fn unit_shape() -> LpShape {
    LpShape {
        max_m: 0,
        max_alphas: 4,
        driftless: true,
        unit_at_zero: true,
    }
}

fn gen_extensive(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let phi = gen::random_lp(rng, unit_shape());
    let n = degree(rng, deg);
    let p = gen::random_strict(rng, n);
    json!({"phi": lp_to_json(&phi), "p": poly_to_json(&p)})
}

fn check_extensive<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    if !phi.is_driftless() || phi.m != 0 || !(phi.value_at_zero() == S::one()) {
        return Ok(Outcome::Skip("φ outside LP' with φ(0) = 1".into()));
    }
    ordered("extensive", &p.roots().to_f64(), &roots_of(&image(&phi, &p)?)?, rel)
}

fn gen_scaled(rng: &mut ChaCha8Rng, deg: (usize, usize), t: u64) -> Value {
    let mut v = gen_extensive(rng, deg, t);
    let (s, t) = gen::random_ordered_scalars(rng);
    v["s"] = s.to_json();
    v["t"] = t.to_json();
    v
}

fn check_scaled<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let s: S = scalar(v, "s")?;
    let t: S = scalar(v, "t")?;
    if s.abs() > t.abs() || (s.clone() * t.clone()).is_negative() {
        return Ok(Outcome::Skip("s, t not ordered".into()));
    }
    let lower = image(&phi.scaled(&s)?, &p)?;
    let upper = image(&phi.scaled(&t)?, &p)?;
    ordered_polys("scaled", &lower, &upper, rel)
}

fn gen_deform(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let phi = gen::random_lp(rng, LpShape::default());
    let n = degree_at_least(rng, deg, phi.m + 1);
    let p = gen::random_strict(rng, n);
    let (s, t) = gen::random_ordered_deformations(rng, phi.alphas.len() + 1);
    json!({
        "phi": lp_to_json(&phi),
        "p": poly_to_json(&p),
        "s": scalars_to_json(&s.0),
        "t": scalars_to_json(&t.0),
    })
}

fn check_deform<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let s = DeformationVector(scalars_from_json::<S>(field(v, "s")?)?);
    let t = DeformationVector(scalars_from_json::<S>(field(v, "t")?)?);
    if !s.le(&t) {
        return Ok(Outcome::Skip("deformations not ordered".into()));
    }
    if p.degree() < phi.m + 1 {
        return Ok(Outcome::Skip("degree below m + 1".into()));
    }
    let lower = image(&phi.deform(&s), &p)?;
    let upper = image(&phi.deform(&t), &p)?;
    ordered_polys("deformation", &lower, &upper, rel)
}

// ---- allincr: monotone partial sums along the pencil ----------------------

/// Number of grid points on `[-L, L]`.
pub const PENCIL_GRID: usize = 201;

fn gen_allincr(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let n = degree(rng, deg);
    let p = gen::random_strict(rng, n);
    json!({"p": poly_to_json(&p), "grid_points": PENCIL_GRID})
}

fn check_allincr<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let points = usize_field(v, "grid_points")?;
    if points < 3 || points % 2 == 0 {
        return Err(Error::Config("grid_points must be odd and at least 3".into()));
    }
    let r = p.root_slice();
    let (lo, hi) = (r[0].abs(), r[r.len() - 1].abs());
    let reach = if lo > hi { lo } else { hi };
    let half = S::one() + S::from_i64(2) * reach;
    let grid = uniform_grid(&half, points);
    let samples = sample_grid(&p, &grid, None)?;
    let report = monotonicity_from_samples(&samples, p.degree());
    let drift_tol = 0.1 * rel * (1.0 + report.root_scale);
    let interlace_tol = rel * (1.0 + report.root_scale);
    let interlaced = samples.iter().all(|s| s.interlaces(interlace_tol));
    Ok(if report.passes(rel) && report.f_n_drift <= drift_tol && interlaced {
        Outcome::Pass {
            slack: rel - report.worst_violation,
        }
    } else {
        Outcome::Fail {
            certificate: json!({
                "worst_violation": report.worst_violation,
                "per_m": report.per_m.iter().map(|s| json!([s.m, s.worst_violation])).collect::<Vec<_>>(),
                "f_n_drift": report.f_n_drift,
                "drift_tolerance": drift_tol,
                "interlaced": interlaced,
            }),
        }
    })
}

// ---- schur: convex sums of image roots ------------------------------------

fn probe_strings(probes: &[SchurProbe]) -> Vec<String> {
    probes.iter().map(ToString::to_string).collect()
}

fn gen_schur(rng: &mut ChaCha8Rng, deg: (usize, usize), trial: u64) -> Value {
    match trial % 3 {
        0 => {
            let mut v = gen_iso(rng, deg, trial);
            let mut probes = vec![
                SchurProbe::Power(1.0),
                SchurProbe::Power(1.5),
                SchurProbe::Power(2.0),
                SchurProbe::Power(3.0),
            ];
            for _ in 0..3 {
                probes.push(SchurProbe::Hinge(rng.gen_range(-40..=40) as f64 / 4.0));
            }
            v["variant"] = json!("isotone");
            v["probes"] = json!(probe_strings(&probes));
            v
        }
        1 => {
            let phi = gen::random_lp(
                rng,
                LpShape {
                    max_m: 0,
                    max_alphas: 4,
                    driftless: true,
                    unit_at_zero: false,
                },
            );
            let n = degree(rng, deg);
            let p = gen::random_strict(rng, n);
            let (s, t) = gen::random_ordered_scalars(rng);
            let mut probes = vec![SchurProbe::Power(1.0), SchurProbe::Power(2.0), SchurProbe::Power(4.0)];
            probes.push(SchurProbe::Hinge(rng.gen_range(-40..=40) as f64 / 4.0));
            json!({
                "variant": "scaled",
                "phi": lp_to_json(&phi),
                "p": poly_to_json(&p),
                "s": s.to_json(),
                "t": t.to_json(),
                "probes": probe_strings(&probes),
            })
        }
        _ => {
            let phi = gen::random_positive_type(rng, 2, 3);
            let n = degree_at_least(rng, deg, (phi.m + 1).max(2));
            let p = gen::random_positive(rng, n);
            let (p, q) = gen::random_pair_from(rng, p);
            let k = [1.0, 2.0, 3.5][rng.gen_range(0..3)];
            let r = [-1.5, -1.0, 0.5, 2.0, 3.0][rng.gen_range(0..5)];
            let probes = [SchurProbe::XLogX, SchurProbe::Power(k), SchurProbe::SignedPower(r)];
            let mut v = pair_json(&p, &q);
            v["variant"] = json!("positive");
            v["phi"] = lp_to_json(&phi);
            v["probes"] = json!(probe_strings(&probes));
            v
        }
    }
}

fn probes_of(v: &Value) -> Result<Vec<SchurProbe>> {
    field(v, "probes")?
        .as_array()
        .ok_or_else(|| Error::Parse("`probes` must be an array".into()))?
        .iter()
        .map(|p| {
            p.as_str()
                .ok_or_else(|| Error::Parse("probe must be a string".into()))?
                .parse()
        })
        .collect()
}

fn convex_sums(probes: &[SchurProbe], lower: &RootTuple<f64>, upper: &RootTuple<f64>, rel: f64) -> Result<Outcome> {
    let mut out = Outcome::Pass { slack: f64::INFINITY };
    for &probe in probes {
        let vl = schur_eval(lower, probe)?;
        let vu = schur_eval(upper, probe)?;
        let tol = rel * (1.0 + vl.abs() + vu.abs());
        out = out.and(if vl <= vu + tol {
            Outcome::Pass { slack: vu - vl }
        } else {
            Outcome::Fail {
                certificate: json!({
                    "probe": probe.to_string(),
                    "lower_value": vl,
                    "upper_value": vu,
                    "lower_roots": lower.as_slice(),
                    "upper_roots": upper.as_slice(),
                }),
            }
        });
    }
    Ok(out)
}

fn check_schur<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let probes = probes_of(v)?;
    let phi: LPFunction<S> = lp(v, "phi")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    match field(v, "variant")?.as_str() {
        Some("isotone") | Some("positive") => {
            let q: HyperbolicPoly<S> = poly(v, "q")?;
            if p.degree() < phi.m + 1 {
                return Ok(Outcome::Skip("degree below m + 1".into()));
            }
            let zq = roots_of(&image(&phi, &q)?)?;
            let zp = roots_of(&image(&phi, &p)?)?;
            convex_sums(&probes, &zq, &zp, rel)
        }
        Some("scaled") => {
            let s: S = scalar(v, "s")?;
            let t: S = scalar(v, "t")?;
            if s.abs() > t.abs() || (s.clone() * t.clone()).is_negative() {
                return Ok(Outcome::Skip("s, t not ordered".into()));
            }
            let zs = roots_of(&image(&phi.scaled(&s)?, &p)?)?;
            let zt = roots_of(&image(&phi.scaled(&t)?, &p)?)?;
            Ok(convex_sums(&probes, &zs, &zt, rel)?.and(convex_sums(&probes, &p.roots().to_f64(), &zt, rel)?))
        }
        _ => Err(Error::Parse("unknown schur variant".into())),
    }
}

// ---- lag-ms: the Laguerre multiplier sequence -----------------------------

fn gen_lag_ms(rng: &mut ChaCha8Rng, deg: (usize, usize), _: u64) -> Value {
    let m = rng.gen_range(1..=3usize);
    let shift = rng.gen_range(0..=3usize);
    let n = degree_at_least(rng, deg, m.saturating_sub(shift).max(2));
    let (p, q) = gen::random_pair(rng, n);
    let mut v = pair_json(&p, &q);
    v["m"] = json!(m);
    v["shift"] = json!(shift);
    v
}

fn same_coeffs<S: Scalar>(a: &Poly<S>, b: &Poly<S>) -> bool {
    if S::MODE == Mode::Rational {
        return a == b;
    }
    let len = a.coeffs().len().max(b.coeffs().len());
    let scale = a
        .coeffs()
        .iter()
        .chain(b.coeffs())
        .fold(0.0f64, |m, c| m.max(c.to_f64().abs()));
    (0..len).all(|k| (a.coeff(k).to_f64() - b.coeff(k).to_f64()).abs() <= 1e-12 * (1.0 + scale))
}

fn check_lag_ms<S: Scalar>(v: &Value, rel: f64) -> Result<Outcome> {
    let m = usize_field(v, "m")?;
    let shift = usize_field(v, "shift")?;
    let p: HyperbolicPoly<S> = poly(v, "p")?;
    let q: HyperbolicPoly<S> = poly(v, "q")?;
    let n = p.degree();
    if n < 1.max(m.saturating_sub(shift)) {
        return Ok(Outcome::Skip("degree below max(1, m - p)".into()));
    }
    let seq = laguerre_ms::<S>(m, shift, n + 1)?;
    let mut out = Outcome::Pass { slack: f64::INFINITY };
    for (name, h) in [("p", &p), ("q", &q)] {
        let direct = seq.apply(&h.to_poly(), false)?;
        let closed = laguerre_closed_form(m, shift, &h.to_poly())?;
        if !same_coeffs(&direct, &closed) {
            out = out.and(Outcome::Fail {
                certificate: json!({
                    "check": "closed_form",
                    "which": name,
                    "sequence": scalars_to_json(direct.coeffs()),
                    "closed_form": scalars_to_json(closed.coeffs()),
                }),
            });
        }
    }
    let tq = seq.apply(&q.to_poly(), true)?;
    let tp = seq.apply(&p.to_poly(), true)?;
    Ok(out.and(ordered_polys("laguerre_sequence", &tq, &tp, rel)?))
}
