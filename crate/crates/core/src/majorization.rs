//! Majorization of root tuples: partial-sum certificates, an independent
//! hinge-function checker, doubly stochastic witnesses, and Schur-convex
//! functionals.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::contraction::{decompose_majorization, transfer_chain, ContractionChain, DEFAULT_STEP_CAP};
use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicPoly, RootTuple};
use crate::scalar::{Mode, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Less,
    Equal,
    Incomparable,
    #[serde(rename = "NotComparable_SumMismatch")]
    SumMismatch,
}

impl Verdict {
    /// `Less` or `Equal`.
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Less | Verdict::Equal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Less => "Less",
            Verdict::Equal => "Equal",
            Verdict::Incomparable => "Incomparable",
            Verdict::SumMismatch => "NotComparable_SumMismatch",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of comparing `X` against `Y`.
///
/// `slacks[k-1]` is the sum of the `k` largest entries of `Y` minus the sum
/// of the `k` largest entries of `X`, for `k = 1..n-1`.
#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationCertificate<S> {
    pub verdict: Verdict,
    pub sum_residual: S,
    pub slacks: Vec<S>,
    pub tolerance: S,
}

impl<S: Scalar> MajorizationCertificate<S> {
    pub fn holds(&self) -> bool {
        self.verdict.holds()
    }

    /// Smallest partial-sum slack, or `+inf` when there are none.
    pub fn worst_slack(&self) -> f64 {
        self.slacks.iter().map(Scalar::to_f64).fold(f64::INFINITY, f64::min)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "sum_residual": self.sum_residual.to_json(),
            "slacks": self.slacks.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "tol": self.tolerance.to_json(),
        })
    }

    pub fn to_f64(&self) -> MajorizationCertificate<f64> {
        MajorizationCertificate {
            verdict: self.verdict,
            sum_residual: self.sum_residual.to_f64(),
            slacks: self.slacks.iter().map(Scalar::to_f64).collect(),
            tolerance: self.tolerance.to_f64(),
        }
    }
}

/// `1e-9 · (1 + max |entry|)` over both tuples.
pub fn default_tolerance<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>) -> f64 {
    1e-9 * (1.0 + x.max_abs().max(y.max_abs()))
}

fn check_lengths<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(Error::EmptyTuple);
    }
    Ok(())
}

/// Decides `X ≺ Y` from descending partial sums. Exact mode ignores `tol`.
pub fn check_majorization<S: Scalar>(
    x: &RootTuple<S>,
    y: &RootTuple<S>,
    tol: Option<f64>,
) -> Result<MajorizationCertificate<S>> {
    check_lengths(x, y)?;
    let tolerance = S::tolerance(tol.unwrap_or_else(|| default_tolerance(x, y)));
    let n = x.len();
    let xs = x.as_slice();
    let ys = y.as_slice();

    let mut slacks = Vec::with_capacity(n.saturating_sub(1));
    let mut top_x = S::zero();
    let mut top_y = S::zero();
    for k in 0..n {
        top_x = top_x + xs[n - 1 - k].clone();
        top_y = top_y + ys[n - 1 - k].clone();
        if k + 1 < n {
            slacks.push(top_y.clone() - top_x.clone());
        }
    }
    let sum_residual = top_x - top_y;

    let verdict = if sum_residual.abs() > tolerance {
        Verdict::SumMismatch
    } else if slacks.iter().any(|s| *s < -tolerance.clone()) {
        Verdict::Incomparable
    } else if xs
        .iter()
        .zip(ys)
        .all(|(a, b)| (a.clone() - b.clone()).abs() <= tolerance)
    {
        Verdict::Equal
    } else {
        Verdict::Less
    };
    Ok(MajorizationCertificate {
        verdict,
        sum_residual,
        slacks,
        tolerance,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexProbe<S> {
    pub description: String,
    pub value_on_x: S,
    pub value_on_y: S,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvexProbeReport<S> {
    pub probes: Vec<ConvexProbe<S>>,
}

impl<S: Scalar> ConvexProbeReport<S> {
    pub fn all_satisfied(&self) -> bool {
        self.probes.iter().all(|p| p.satisfied)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConvexProbe<S>> {
        self.probes.iter().filter(|p| !p.satisfied)
    }
}

fn hinge_sum<S: Scalar>(v: &[S], t: &S) -> S {
    v.iter()
        .filter(|x| *x > t)
        .fold(S::zero(), |acc, x| acc + x.clone() - t.clone())
}

/// Checks `Σ f(x_i) ≤ Σ f(y_i)` for the hinges `f(x) = max(x - t, 0)` at
/// every entry `t` of either tuple, plus equality of the sums. This is an
/// independent route to the same relation as [`check_majorization`].
pub fn hinge_oracle<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>, tol: Option<f64>) -> Result<ConvexProbeReport<S>> {
    check_lengths(x, y)?;
    let tolerance = S::tolerance(tol.unwrap_or_else(|| default_tolerance(x, y)));
    let (sx, sy) = (x.sum(), y.sum());
    let mut probes = vec![ConvexProbe {
        description: "sum".into(),
        satisfied: (sx.clone() - sy.clone()).abs() <= tolerance,
        value_on_x: sx,
        value_on_y: sy,
    }];
    let mut points: Vec<S> = x.as_slice().iter().chain(y.as_slice()).cloned().collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    points.dedup();
    for t in points {
        let vx = hinge_sum(x.as_slice(), &t);
        let vy = hinge_sum(y.as_slice(), &t);
        probes.push(ConvexProbe {
            description: format!("hinge({})", t.to_f64()),
            satisfied: vx <= vy.clone() + tolerance.clone(),
            value_on_x: vx,
            value_on_y: vy,
        });
    }
    Ok(ConvexProbeReport { probes })
}

/// One factor `μI + (1-μ)Π_{kl}` (indices 1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct TTransform<S> {
    pub k: usize,
    pub l: usize,
    pub mu: S,
}

/// Doubly stochastic `A` with `A·Ỹ = X̃` for the sorted column vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct DoublyStochasticWitness<S> {
    pub matrix: Vec<Vec<S>>,
    pub factors: Vec<TTransform<S>>,
}

impl<S: Scalar> DoublyStochasticWitness<S> {
    fn identity(n: usize) -> Self {
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        DoublyStochasticWitness {
            matrix,
            factors: Vec::new(),
        }
    }

    /// Left-multiplies by the T-transform.
    fn push(&mut self, f: TTransform<S>) {
        let (k, l) = (f.k - 1, f.l - 1);
        let nu = S::one() - f.mu.clone();
        for c in 0..self.matrix.len() {
            let rk = self.matrix[k][c].clone();
            let rl = self.matrix[l][c].clone();
            self.matrix[k][c] = f.mu.clone() * rk.clone() + nu.clone() * rl.clone();
            self.matrix[l][c] = nu.clone() * rk + f.mu.clone() * rl;
        }
        self.factors.push(f);
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        self.matrix
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Checks nonnegativity, unit row/column sums and `A·Ỹ = X̃` within `tol`
    /// (zero in exact mode).
    pub fn verify(&self, x: &RootTuple<S>, y: &RootTuple<S>, tol: f64) -> Result<()> {
        let tol = S::tolerance(tol);
        let n = self.dim();
        if x.len() != n || y.len() != n {
            return Err(Error::LengthMismatch(x.len(), n));
        }
        let bad = |what: String| Err(Error::ReplayMismatch(what));
        for (i, row) in self.matrix.iter().enumerate() {
            if row.iter().any(|a| *a < -tol.clone()) {
                return bad(format!("negative entry in row {}", i + 1));
            }
            let s = row.iter().cloned().fold(S::zero(), |a, b| a + b);
            if (s - S::one()).abs() > tol {
                return bad(format!("row {} does not sum to one", i + 1));
            }
        }
        for c in 0..n {
            let s = (0..n).fold(S::zero(), |a, r| a + self.matrix[r][c].clone());
            if (s - S::one()).abs() > tol {
                return bad(format!("column {} does not sum to one", c + 1));
            }
        }
        let image = self.apply(y.as_slice());
        if image
            .iter()
            .zip(x.as_slice())
            .any(|(a, b)| (a.clone() - b.clone()).abs() > tol)
        {
            return bad("A·Y differs from X".into());
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self
                .matrix
                .iter()
                .map(|r| r.iter().map(Scalar::to_json).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "factors": self
                .factors
                .iter()
                .map(|f| json!({"k": f.k, "l": f.l, "mu": f.mu.to_json()}))
                .collect::<Vec<_>>(),
        })
    }
}

/// Chain of contractions carrying the roots of `Y` onto those of `X`.
fn witness_chain<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>) -> Result<ContractionChain<S>> {
    let from = HyperbolicPoly::from_tuple(y.clone())?;
    let to = HyperbolicPoly::from_tuple(x.clone())?;
    if from.is_strict() && to.is_strict() {
        if let Ok(d) = decompose_majorization(&from, &to, DEFAULT_STEP_CAP) {
            return Ok(d.chain);
        }
    }
    transfer_chain(&from, &to)
}

/// Doubly stochastic `A` with `A·Ỹ = X̃`, built as the product of the
/// T-transforms of a contraction chain from `Y` to `X`. Exact mode only.
///
/// Strictly hyperbolic pairs use the simple nondegenerate chain; pairs with
/// repeated entries use the shorter general transfer chain.
pub fn build_witness<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>) -> Result<DoublyStochasticWitness<S>> {
    if S::MODE == Mode::Float {
        return Err(Error::FloatModeUnsupported);
    }
    let cert = check_majorization(x, y, None)?;
    if !cert.holds() {
        return Err(Error::NotMajorized);
    }
    let mut w = DoublyStochasticWitness::identity(x.len());
    if cert.verdict == Verdict::Equal {
        return Ok(w);
    }
    let chain = witness_chain(x, y)?;
    let mut z = chain.source.root_slice().to_vec();
    for step in &chain.steps {
        let (k, l) = (step.k - 1, step.l - 1);
        let gap = z[l].clone() - z[k].clone();
        let mu = S::one() - step.t.clone() / gap;
        z[k] = z[k].clone() + step.t.clone();
        z[l] = z[l].clone() - step.t.clone();
        w.push(TTransform {
            k: step.k,
            l: step.l,
            mu,
        });
    }
    w.verify(x, y, 0.0)?;
    Ok(w)
}

/// `max_i |x_(i) - y_(i)|` on the sorted tuples, which equals the minimum
/// over all pairings of the largest displacement.
pub fn matching_distance<S: Scalar>(x: &RootTuple<S>, y: &RootTuple<S>) -> Result<S> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    Ok(x.as_slice()
        .iter()
        .zip(y.as_slice())
        .map(|(a, b)| (a.clone() - b.clone()).abs())
        .fold(S::zero(), |m, d| if d > m { d } else { m }))
}

/// Convex test functions `f` for `Σ f(x_i)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchurProbe {
    /// `max(x - t, 0)`
    Hinge(f64),
    /// `|x|^k`, `k ≥ 1`
    Power(f64),
    /// `x ln x` on positive entries
    XLogX,
    /// `r(r-1) x^r` on positive entries
    SignedPower(f64),
}

impl FromStr for SchurProbe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let num = || -> Result<f64> {
            arg.ok_or_else(|| Error::Parse(format!("probe `{name}` needs a parameter")))?
                .parse()
                .map_err(|e| Error::Parse(format!("{s}: {e}")))
        };
        match name {
            "hinge" => Ok(SchurProbe::Hinge(num()?)),
            "power" => Ok(SchurProbe::Power(num()?)),
            "xlogx" => Ok(SchurProbe::XLogX),
            "signed-power" | "signed_power" => Ok(SchurProbe::SignedPower(num()?)),
            _ => Err(Error::Parse(format!("unknown probe `{s}`"))),
        }
    }
}

impl fmt::Display for SchurProbe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchurProbe::Hinge(t) => write!(f, "hinge:{t}"),
            SchurProbe::Power(k) => write!(f, "power:{k}"),
            SchurProbe::XLogX => f.write_str("xlogx"),
            SchurProbe::SignedPower(r) => write!(f, "signed-power:{r}"),
        }
    }
}

/// `Σ f(x_i)` for the chosen probe, in `f64`.
pub fn schur_eval<S: Scalar>(x: &RootTuple<S>, probe: SchurProbe) -> Result<f64> {
    let v: Vec<f64> = x.as_slice().iter().map(Scalar::to_f64).collect();
    let positive = || {
        if v.iter().all(|&a| a > 0.0) {
            Ok(())
        } else {
            Err(Error::DomainViolation(format!("{probe} needs positive entries")))
        }
    };
    Ok(match probe {
        SchurProbe::Hinge(t) => v.iter().map(|a| (a - t).max(0.0)).sum(),
        SchurProbe::Power(k) => {
            if k.is_nan() || k < 1.0 {
                return Err(Error::DomainViolation(format!("power {k} is not convex")));
            }
            v.iter().map(|a| a.abs().powf(k)).sum()
        }
        SchurProbe::XLogX => {
            positive()?;
            v.iter().map(|a| a * a.ln()).sum()
        }
        SchurProbe::SignedPower(r) => {
            positive()?;
            r * (r - 1.0) * v.iter().map(|a| a.powf(r)).sum::<f64>()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn qt(v: &[i64]) -> RootTuple<Rational> {
        RootTuple::new(v.iter().map(|&x| Rational::from_i64(x)).collect())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn certificate_examples() {
        let c = check_majorization(&qt(&[1, 1, 2]), &qt(&[0, 2, 2]), None).unwrap();
        assert_eq!(c.verdict, Verdict::Less);
        assert_eq!(c.slacks, vec![q(0, 1), q(1, 1)]);
        assert_eq!(c.sum_residual, q(0, 1));

        let c = check_majorization(&qt(&[0, 5]), &qt(&[0, 5]), None).unwrap();
        assert_eq!(c.verdict, Verdict::Equal);

        let c = check_majorization(&qt(&[0, 1]), &qt(&[0, 2]), None).unwrap();
        assert_eq!(c.verdict, Verdict::SumMismatch);
        assert_eq!(c.sum_residual, q(-1, 1));

        let c = check_majorization(&qt(&[0, 2]), &qt(&[1, 1]), None).unwrap();
        assert_eq!(c.verdict, Verdict::Incomparable);
    }

    #[test]
    fn certificate_errors() {
        assert_eq!(
            check_majorization(&qt(&[1]), &qt(&[1, 2]), None),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn float_tolerance_absorbs_noise() {
        let x = RootTuple::new(vec![1.0, 3.0 + 1e-12]);
        let y = RootTuple::new(vec![1.0 - 1e-12, 3.0]);
        assert_eq!(check_majorization(&x, &y, None).unwrap().verdict, Verdict::Equal);
        let c = check_majorization(&x, &y, Some(0.0)).unwrap();
        assert_eq!(c.verdict, Verdict::SumMismatch);
    }

    #[test]
    fn certificate_json_shape() {
        let c = check_majorization(&qt(&[1, 1, 2]), &qt(&[0, 2, 2]), None).unwrap();
        let j = c.to_json();
        assert_eq!(j["verdict"], "Less");
        assert_eq!(j["slacks"], json!(["0", "1"]));
        assert_eq!(j["tol"], "0");
    }

    #[test]
    fn hinge_examples() {
        let r = hinge_oracle(&qt(&[1, 1]), &qt(&[0, 2]), None).unwrap();
        assert!(r.all_satisfied());
        let t0 = r.probes.iter().find(|p| p.description == "hinge(0)").unwrap();
        assert_eq!((t0.value_on_x.clone(), t0.value_on_y.clone()), (q(2, 1), q(2, 1)));
        let t1 = r.probes.iter().find(|p| p.description == "hinge(1)").unwrap();
        assert_eq!((t1.value_on_x.clone(), t1.value_on_y.clone()), (q(0, 1), q(1, 1)));

        let r = hinge_oracle(&qt(&[3, -1, 4]), &qt(&[3, -1, 4]), None).unwrap();
        assert!(r.all_satisfied());
        assert!(r.probes.iter().all(|p| p.value_on_x == p.value_on_y));

        let r = hinge_oracle(&qt(&[0, 2]), &qt(&[1, 1]), None).unwrap();
        let failed: Vec<_> = r.failures().map(|p| p.description.clone()).collect();
        assert!(failed.contains(&"hinge(1)".to_string()));
    }

    #[test]
    fn witness_two_by_two() {
        let w = build_witness(&qt(&[1, 3]), &qt(&[0, 4])).unwrap();
        assert_eq!(w.matrix, vec![vec![q(3, 4), q(1, 4)], vec![q(1, 4), q(3, 4)]]);
        assert_eq!(w.apply(qt(&[0, 4]).as_slice()), qt(&[1, 3]).into_vec());
    }

    #[test]
    fn witness_identity_and_errors() {
        let w = build_witness(&qt(&[2, 5, 7]), &qt(&[2, 5, 7])).unwrap();
        assert_eq!(w.matrix, DoublyStochasticWitness::identity(3).matrix);
        assert_eq!(build_witness(&qt(&[0, 2]), &qt(&[1, 1])), Err(Error::NotMajorized));
        let f = RootTuple::new(vec![1.0, 3.0]);
        let g = RootTuple::new(vec![0.0, 4.0]);
        assert_eq!(build_witness(&f, &g), Err(Error::FloatModeUnsupported));
    }

    #[test]
    fn witness_with_repeated_entries() {
        let x = qt(&[1, 1, 1]);
        let y = qt(&[0, 1, 2]);
        let w = build_witness(&x, &y).unwrap();
        w.verify(&x, &y, 0.0).unwrap();
        assert_eq!(w.apply(y.as_slice()), x.clone().into_vec());
    }

    #[test]
    fn witness_on_strict_chain() {
        let x = qt(&[1, 2, 3]);
        let y = qt(&[0, 2, 4]);
        let w = build_witness(&x, &y).unwrap();
        assert_eq!(w.factors.len(), 8);
        w.verify(&x, &y, 0.0).unwrap();
    }

    #[test]
    fn matching_distance_examples() {
        assert_eq!(matching_distance(&qt(&[0, 4]), &qt(&[1, 3])).unwrap(), q(1, 1));
        assert_eq!(matching_distance(&qt(&[2, 9]), &qt(&[2, 9])).unwrap(), q(0, 1));
        assert_eq!(matching_distance(&qt(&[0]), &qt(&[7])).unwrap(), q(7, 1));
        assert!(matching_distance(&qt(&[0]), &qt(&[7, 1])).is_err());
    }

    #[test]
    fn schur_examples() {
        let ones = RootTuple::new(vec![1.0, 1.0]);
        assert_eq!(schur_eval(&ones, SchurProbe::Power(2.0)).unwrap(), 2.0);
        let v = schur_eval(&RootTuple::new(vec![1.0, 2.0]), SchurProbe::XLogX).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-15);
        let twos = RootTuple::new(vec![2.0, 2.0]);
        assert_eq!(schur_eval(&twos, SchurProbe::Hinge(1.0)).unwrap(), 2.0);
        let bad = RootTuple::new(vec![0.0, 2.0]);
        assert!(matches!(
            schur_eval(&bad, SchurProbe::XLogX),
            Err(Error::DomainViolation(_))
        ));
        assert!(matches!(
            schur_eval(&bad, SchurProbe::SignedPower(0.5)),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn probe_parsing() {
        assert_eq!("hinge:1.5".parse::<SchurProbe>().unwrap(), SchurProbe::Hinge(1.5));
        assert_eq!("xlogx".parse::<SchurProbe>().unwrap(), SchurProbe::XLogX);
        assert_eq!(
            "signed-power:-1".parse::<SchurProbe>().unwrap(),
            SchurProbe::SignedPower(-1.0)
        );
        assert!("power".parse::<SchurProbe>().is_err());
    }
}
