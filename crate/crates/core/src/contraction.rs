//! Zero-transfer contractions and chains of them.
//!
//! A contraction `T(k, l; t)` moves the `k`-th and `l`-th smallest roots
//! toward each other by `t`. Every strict majorization between strictly
//! hyperbolic polynomials factors into simple (adjacent) nondegenerate
//! contractions; [`decompose_majorization`] builds such a factorization by
//! induction on the number of differing roots.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::harness::gen;
use crate::hyperbolic::HyperbolicPoly;
use crate::majorization::check_majorization;
use crate::scalar::{Mode, Rational, Scalar};

pub const DEFAULT_STEP_CAP: usize = 1_000_000;

/// `T(k, l; t)` with 1-based indices into the sorted roots.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionStep<S> {
    pub k: usize,
    pub l: usize,
    pub t: S,
}

impl<S: Scalar> ContractionStep<S> {
    pub fn new(k: usize, l: usize, t: S) -> Self {
        ContractionStep { k, l, t }
    }

    pub fn is_simple(&self) -> bool {
        self.l == self.k + 1
    }

    /// Whether the two roots stay apart when applied to `p`.
    pub fn is_nondegenerate_on(&self, p: &HyperbolicPoly<S>) -> bool {
        let r = p.root_slice();
        if self.k == 0 || self.l > r.len() || self.k >= self.l {
            return false;
        }
        let gap = r[self.l - 1].clone() - r[self.k - 1].clone();
        self.t.clone() + self.t.clone() < gap
    }

    pub fn to_json(&self) -> Value {
        json!({"k": self.k, "l": self.l, "t": self.t.to_json()})
    }
}

/// Replaces `x_k, x_l` by `x_k + t, x_l - t`.
pub fn apply_contraction<S: Scalar>(p: &HyperbolicPoly<S>, step: &ContractionStep<S>) -> Result<HyperbolicPoly<S>> {
    let n = p.degree();
    let (k, l) = (step.k, step.l);
    if k < 1 || k >= l || l > n {
        return Err(Error::InvalidIndices { k, l, n });
    }
    if !step.t.is_positive() {
        return Err(Error::NonPositiveCoefficient);
    }
    let mut r = p.root_slice().to_vec();
    let gap = r[l - 1].clone() - r[k - 1].clone();
    if gap.is_zero() {
        return Err(Error::EqualRoots);
    }
    if step.t.clone() + step.t.clone() > gap {
        return Err(Error::CoefficientTooLarge);
    }
    r[k - 1] = r[k - 1].clone() + step.t.clone();
    r[l - 1] = r[l - 1].clone() - step.t.clone();
    HyperbolicPoly::from_roots(r)
}

/// Number of positions where the sorted roots differ by more than `tol`
/// (exactly, in rational mode).
pub fn discrepancy<S: Scalar>(p: &HyperbolicPoly<S>, q: &HyperbolicPoly<S>, tol: Option<f64>) -> Result<usize> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    let tol = S::tolerance(tol.unwrap_or(0.0));
    Ok(p.root_slice()
        .iter()
        .zip(q.root_slice())
        .filter(|(a, b)| ((*a).clone() - (*b).clone()).abs() > tol)
        .count())
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContractionChain<S> {
    pub source: HyperbolicPoly<S>,
    pub steps: Vec<ContractionStep<S>>,
    pub target: HyperbolicPoly<S>,
}

/// Result of replaying a chain step by step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub steps: usize,
    pub replays: bool,
    pub all_simple: bool,
    pub all_nondegenerate: bool,
    pub all_strict: bool,
    /// Every intermediate is majorized by its predecessor.
    pub monotone: bool,
}

impl ChainReport {
    pub fn is_clean(&self) -> bool {
        self.replays && self.all_simple && self.all_nondegenerate && self.all_strict && self.monotone
    }
}

impl<S: Scalar> ContractionChain<S> {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn replay(&self) -> Result<HyperbolicPoly<S>> {
        self.steps
            .iter()
            .try_fold(self.source.clone(), |p, s| apply_contraction(&p, s))
    }

    pub fn verify(&self) -> Result<ChainReport> {
        let mut report = ChainReport {
            steps: self.steps.len(),
            replays: false,
            all_simple: true,
            all_nondegenerate: true,
            all_strict: self.source.is_strict(),
            monotone: true,
        };
        let mut cur = self.source.clone();
        for s in &self.steps {
            report.all_simple &= s.is_simple();
            report.all_nondegenerate &= s.is_nondegenerate_on(&cur);
            let next = apply_contraction(&cur, s)?;
            report.all_strict &= next.is_strict();
            report.monotone &= check_majorization(next.roots(), cur.roots(), None)?.holds();
            cur = next;
        }
        report.replays = cur == self.target;
        Ok(report)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": crate::io::poly_to_json(&self.source),
            "steps": self.steps.iter().map(ContractionStep::to_json).collect::<Vec<_>>(),
            "target": crate::io::poly_to_json(&self.target),
        })
    }
}

fn require_exact<S: Scalar>() -> Result<()> {
    if S::MODE == Mode::Float {
        Err(Error::FloatModeUnsupported)
    } else {
        Ok(())
    }
}

/// Replaces the transfer `x_i += σ, x_j -= σ` across `p = j - i - 1`
/// interior roots by `(p + 1)·2^d` simple nondegenerate contractions of size
/// `σ/2^d`, sweeping left to right `2^d` times. `d ≥ 1` is the least integer
/// with `σ < 2^(d-1)·M`, where `M` is the smallest of `z_1 - x_i - σ`,
/// `x_j - z_p - σ` and the interior gaps. Indices are 1-based.
pub fn expand_transfer<S: Scalar>(
    p: &HyperbolicPoly<S>,
    i: usize,
    j: usize,
    sigma: &S,
    cap: usize,
) -> Result<ContractionChain<S>> {
    require_exact::<S>()?;
    let n = p.degree();
    if i < 1 || i >= j || j > n {
        return Err(Error::InvalidIndices { k: i, l: j, n });
    }
    if !p.is_strict() {
        return Err(Error::NotStrict);
    }
    if !sigma.is_positive() {
        return Err(Error::NonPositiveCoefficient);
    }
    let r = p.root_slice();
    let (a, b) = (r[i - 1].clone(), r[j - 1].clone());
    if sigma.clone() + sigma.clone() >= b.clone() - a.clone() {
        return Err(Error::SigmaTooLarge);
    }
    let interior = &r[i..j - 1];
    let lo = a.clone() + sigma.clone();
    let hi = b.clone() - sigma.clone();
    if let Some(z) = interior.iter().find(|z| !(**z > lo && **z < hi)) {
        return Err(Error::PreconditionViolated(format!(
            "interior root {} outside ({}, {})",
            z.to_f64(),
            lo.to_f64(),
            hi.to_f64()
        )));
    }

    let mut expected = r.to_vec();
    expected[i - 1] = lo.clone();
    expected[j - 1] = hi.clone();
    let target = HyperbolicPoly::from_roots(expected)?;

    if interior.is_empty() {
        let step = ContractionStep::new(i, j, sigma.clone());
        let out = apply_contraction(p, &step)?;
        debug_assert_eq!(out, target);
        return Ok(ContractionChain {
            source: p.clone(),
            steps: vec![step],
            target,
        });
    }

    let m_bound = interior
        .windows(2)
        .map(|w| w[1].clone() - w[0].clone())
        .chain([interior[0].clone() - lo, hi - interior[interior.len() - 1].clone()])
        .fold(None::<S>, |m, g| match m {
            Some(m) if m <= g => Some(m),
            _ => Some(g),
        })
        .unwrap();

    let two = S::from_i64(2);
    let mut d: u32 = 1;
    let mut half_pow = S::one(); // 2^(d-1)
    while *sigma >= half_pow.clone() * m_bound.clone() {
        d += 1;
        half_pow = half_pow * two.clone();
        if d > 120 {
            return Err(Error::ChainTooLong { needed: u128::MAX, cap });
        }
    }
    let rounds: u128 = 1u128 << d;
    let per_round = interior.len() as u128 + 1;
    let needed = rounds * per_round;
    if needed > cap as u128 {
        return Err(Error::ChainTooLong { needed, cap });
    }
    let t = sigma.clone() / (half_pow * two);

    let mut steps = Vec::with_capacity(needed as usize);
    let mut cur = p.clone();
    for _ in 0..rounds {
        for q in 0..per_round as usize {
            let step = ContractionStep::new(i + q, i + q + 1, t.clone());
            if !step.is_nondegenerate_on(&cur) {
                return Err(Error::ReplayMismatch(format!(
                    "degenerate sweep step ({}, {})",
                    step.k, step.l
                )));
            }
            cur = apply_contraction(&cur, &step)?;
            steps.push(step);
        }
    }
    if cur != target {
        return Err(Error::ReplayMismatch("sweep missed the target".into()));
    }
    Ok(ContractionChain {
        source: p.clone(),
        steps,
        target,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageCase {
    /// Opposite differences at adjacent positions: one contraction.
    Adjacent,
    /// Opposite differences separated by agreeing roots: a swept transfer.
    Separated,
}

/// One inductive stage of [`decompose_majorization`].
#[derive(Clone, Debug, PartialEq)]
pub struct Stage<S> {
    pub case: StageCase,
    pub i: usize,
    pub j: usize,
    pub amount: S,
    pub discrepancy_before: usize,
    pub discrepancy_after: usize,
    pub steps: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<S> {
    pub chain: ContractionChain<S>,
    pub stages: Vec<Stage<S>>,
}

/// Simple nondegenerate contractions carrying `p` to `q`, where both are
/// strictly hyperbolic, distinct, and `q ⪯ p`. Exact mode only.
///
/// At each stage the first pair of consecutive differing positions `i < j`
/// with `q_i > r_i` and `q_j < r_j` is closed by the transfer of
/// `min(q_i - r_i, r_j - q_j)`, reducing the discrepancy.
pub fn decompose_majorization<S: Scalar>(
    p: &HyperbolicPoly<S>,
    q: &HyperbolicPoly<S>,
    cap: usize,
) -> Result<Decomposition<S>> {
    require_exact::<S>()?;
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    if !p.is_strict() || !q.is_strict() {
        return Err(Error::NotStrict);
    }
    if p == q {
        return Err(Error::NotDistinct);
    }
    if !check_majorization(q.roots(), p.roots(), None)?.holds() {
        return Err(Error::NotMajorized);
    }

    let y = q.root_slice();
    let mut cur = p.clone();
    let mut steps: Vec<ContractionStep<S>> = Vec::new();
    let mut stages = Vec::new();
    loop {
        let before = discrepancy(&cur, q, None)?;
        if before == 0 {
            break;
        }
        let x = cur.root_slice();
        let differing: Vec<usize> = (0..x.len()).filter(|&k| x[k] != y[k]).collect();
        let (i, j) = differing
            .windows(2)
            .map(|w| (w[0], w[1]))
            .find(|&(i, j)| y[i] > x[i] && y[j] < x[j])
            .ok_or(Error::NotMajorized)?;
        let amount = {
            let up = y[i].clone() - x[i].clone();
            let down = x[j].clone() - y[j].clone();
            if up < down {
                up
            } else {
                down
            }
        };
        let remaining = cap.saturating_sub(steps.len());
        let (case, sub) = if j == i + 1 {
            let step = ContractionStep::new(i + 1, j + 1, amount.clone());
            if remaining == 0 {
                return Err(Error::ChainTooLong {
                    needed: steps.len() as u128 + 1,
                    cap,
                });
            }
            (StageCase::Adjacent, vec![step])
        } else {
            let chain = expand_transfer(&cur, i + 1, j + 1, &amount, remaining).map_err(|e| match e {
                Error::ChainTooLong { needed, .. } => Error::ChainTooLong {
                    needed: needed.saturating_add(steps.len() as u128),
                    cap,
                },
                other => other,
            })?;
            (StageCase::Separated, chain.steps)
        };
        for s in &sub {
            if !s.is_nondegenerate_on(&cur) {
                return Err(Error::ReplayMismatch("degenerate step in stage".into()));
            }
            cur = apply_contraction(&cur, s)?;
        }
        let after = discrepancy(&cur, q, None)?;
        if after >= before {
            return Err(Error::ReplayMismatch(format!(
                "discrepancy did not drop ({before} -> {after})"
            )));
        }
        stages.push(Stage {
            case,
            i: i + 1,
            j: j + 1,
            amount,
            discrepancy_before: before,
            discrepancy_after: after,
            steps: sub.len(),
        });
        steps.extend(sub);
    }
    let chain = ContractionChain {
        source: p.clone(),
        steps,
        target: q.clone(),
    };
    if chain.replay()? != *q {
        return Err(Error::ReplayMismatch("chain does not reach the target".into()));
    }
    Ok(Decomposition { chain, stages })
}

/// Separates repeated roots of both polynomials with
/// [`HyperbolicPoly::strict_perturb`] and decomposes the perturbed pair.
/// The same shift vector is added to both sorted tuples, so every partial-sum
/// slack is unchanged.
pub fn decompose_perturbed<S: Scalar>(
    p: &HyperbolicPoly<S>,
    q: &HyperbolicPoly<S>,
    eps: &S,
    cap: usize,
) -> Result<Decomposition<S>> {
    let pp = p.strict_perturb(eps)?;
    let qq = q.strict_perturb(eps)?;
    decompose_majorization(&pp, &qq, cap)
}

/// At most `n - 1` contractions, not necessarily simple, carrying `p` to
/// `q ⪯ p` for arbitrary multiplicities. Each step moves the lowest root
/// lying above its target down and the nearest lower root lying below its
/// target up, by the smaller of the two distances. Exact mode only.
pub fn transfer_chain<S: Scalar>(p: &HyperbolicPoly<S>, q: &HyperbolicPoly<S>) -> Result<ContractionChain<S>> {
    require_exact::<S>()?;
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    if !check_majorization(q.roots(), p.roots(), None)?.holds() {
        return Err(Error::NotMajorized);
    }
    let x = q.root_slice();
    let mut cur = p.clone();
    let mut steps = Vec::new();
    for _ in 0..=p.degree() {
        let y = cur.root_slice();
        let Some(hi) = (0..y.len()).find(|&a| y[a] > x[a]) else {
            break;
        };
        let lo = (0..hi).rev().find(|&a| y[a] < x[a]).ok_or(Error::NotMajorized)?;
        let down = y[hi].clone() - x[hi].clone();
        let up = x[lo].clone() - y[lo].clone();
        let t = if down < up { down } else { up };
        let step = ContractionStep::new(lo + 1, hi + 1, t);
        cur = apply_contraction(&cur, &step)?;
        steps.push(step);
    }
    if cur != *q {
        return Err(Error::ReplayMismatch("transfer chain did not converge".into()));
    }
    Ok(ContractionChain {
        source: p.clone(),
        steps,
        target: q.clone(),
    })
}

/// Applies up to `budget` random contractions that keep the polynomial
/// strictly hyperbolic. Coefficients are `u/2` of the current gap with `u`
/// a multiple of `1/16` in `(0, 1)`, so every step is nondegenerate.
pub fn random_contractions<R: Rng>(
    rng: &mut R,
    p: &HyperbolicPoly<Rational>,
    budget: usize,
    simple_only: bool,
) -> HyperbolicPoly<Rational> {
    let n = p.degree();
    let mut cur = p.clone();
    if n < 2 {
        return cur;
    }
    for _ in 0..budget {
        for _attempt in 0..32 {
            let (k, l) = if simple_only || rng.gen_bool(0.5) {
                let k = rng.gen_range(1..n);
                (k, k + 1)
            } else {
                let k = rng.gen_range(1..n);
                (k, rng.gen_range(k + 1..=n))
            };
            let r = cur.root_slice();
            let gap = r[l - 1].clone() - r[k - 1].clone();
            let u = Rational::from_ratio(rng.gen_range(1..16), 32);
            let step = ContractionStep::new(k, l, gap * u);
            if let Ok(next) = apply_contraction(&cur, &step) {
                if next.is_strict() {
                    cur = next;
                    break;
                }
            }
        }
    }
    cur
}

/// Random strictly hyperbolic `P` of degree `n` and `Q ⪯ P` obtained from it
/// by `budget` random simple nondegenerate contractions.
pub fn random_comparable_pair<S: Scalar>(
    seed: u64,
    n: usize,
    budget: usize,
) -> Result<(HyperbolicPoly<S>, HyperbolicPoly<S>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = gen::random_hyperbolic(&mut rng, n, &Rational::from_i64(10), &Rational::from_ratio(1, 4))?;
    let q = random_contractions(&mut rng, &p, budget, true);
    Ok((gen::convert_poly(&p)?, gen::convert_poly(&q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn hp(v: &[i64]) -> HyperbolicPoly<Rational> {
        HyperbolicPoly::from_roots(v.iter().map(|&x| Rational::from_i64(x)).collect()).unwrap()
    }

    #[test]
    fn apply_examples() {
        let p = hp(&[0, 4]);
        let s = ContractionStep::new(1, 2, q(1, 1));
        assert_eq!(apply_contraction(&p, &s).unwrap(), hp(&[1, 3]));
        let s = ContractionStep::new(1, 2, q(2, 1));
        assert_eq!(apply_contraction(&p, &s).unwrap(), hp(&[2, 2]));
        let s = ContractionStep::new(1, 3, q(1, 1));
        assert_eq!(apply_contraction(&hp(&[0, 2, 6]), &s).unwrap(), hp(&[1, 2, 5]));
    }

    #[test]
    fn apply_errors() {
        let p = hp(&[0, 4]);
        assert!(matches!(
            apply_contraction(&p, &ContractionStep::new(2, 1, q(1, 1))),
            Err(Error::InvalidIndices { .. })
        ));
        assert!(matches!(
            apply_contraction(&p, &ContractionStep::new(1, 3, q(1, 1))),
            Err(Error::InvalidIndices { .. })
        ));
        assert_eq!(
            apply_contraction(&p, &ContractionStep::new(1, 2, q(5, 2))),
            Err(Error::CoefficientTooLarge)
        );
        assert_eq!(
            apply_contraction(&hp(&[1, 1]), &ContractionStep::new(1, 2, q(1, 2))),
            Err(Error::EqualRoots)
        );
        assert_eq!(
            apply_contraction(&p, &ContractionStep::new(1, 2, q(0, 1))),
            Err(Error::NonPositiveCoefficient)
        );
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(discrepancy(&hp(&[0, 2, 4]), &hp(&[1, 2, 3]), None).unwrap(), 2);
        assert_eq!(discrepancy(&hp(&[0, 2, 4]), &hp(&[0, 2, 4]), None).unwrap(), 0);
        assert_eq!(discrepancy(&hp(&[0, 4]), &hp(&[1, 3]), None).unwrap(), 2);
        assert_eq!(
            discrepancy(&hp(&[0, 4]), &hp(&[1]), None),
            Err(Error::DegreeMismatch(2, 1))
        );
    }

    #[test]
    fn expand_examples() {
        let c = expand_transfer(&hp(&[0, 2, 4]), 1, 3, &q(1, 1), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.steps.iter().all(|s| s.t == q(1, 4)));
        assert_eq!(c.target, hp(&[1, 2, 3]));
        assert!(c.verify().unwrap().is_clean());

        let c = expand_transfer(&hp(&[0, 4]), 1, 2, &q(1, 1), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(c.steps, vec![ContractionStep::new(1, 2, q(1, 1))]);

        let c = expand_transfer(&hp(&[0, 4, 6, 10]), 1, 4, &q(1, 1), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(c.len(), 6);
        assert!(c.steps.iter().all(|s| s.t == q(1, 2)));
        assert_eq!(c.target, hp(&[1, 4, 6, 9]));
        assert!(c.verify().unwrap().is_clean());
    }

    #[test]
    fn expand_errors() {
        let p = hp(&[0, 2, 4]);
        assert!(matches!(
            expand_transfer(&hp(&[0, 1, 4]), 1, 3, &q(3, 2), DEFAULT_STEP_CAP),
            Err(Error::PreconditionViolated(_))
        ));
        assert_eq!(
            expand_transfer(&p, 1, 3, &q(2, 1), DEFAULT_STEP_CAP),
            Err(Error::SigmaTooLarge)
        );
        assert!(matches!(
            expand_transfer(&p, 1, 3, &q(1, 1), 7),
            Err(Error::ChainTooLong { needed: 8, cap: 7 })
        ));
        let f = HyperbolicPoly::from_roots(vec![0.0, 2.0, 4.0]).unwrap();
        assert_eq!(
            expand_transfer(&f, 1, 3, &1.0, DEFAULT_STEP_CAP),
            Err(Error::FloatModeUnsupported)
        );
    }

    #[test]
    fn decompose_examples() {
        let d = decompose_majorization(&hp(&[0, 4]), &hp(&[1, 3]), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(d.chain.steps, vec![ContractionStep::new(1, 2, q(1, 1))]);
        assert_eq!(d.stages[0].case, StageCase::Adjacent);

        let d = decompose_majorization(&hp(&[0, 2, 4]), &hp(&[1, 2, 3]), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(d.chain.len(), 8);
        assert_eq!(d.stages.len(), 1);
        assert_eq!(d.stages[0].case, StageCase::Separated);
        assert_eq!((d.stages[0].i, d.stages[0].j), (1, 3));
        assert_eq!(d.stages[0].amount, q(1, 1));
        assert!(d.chain.verify().unwrap().is_clean());
    }

    #[test]
    fn decompose_errors() {
        let p = hp(&[0, 2, 4]);
        assert_eq!(
            decompose_majorization(&p, &p, DEFAULT_STEP_CAP),
            Err(Error::NotDistinct)
        );
        assert_eq!(
            decompose_majorization(&hp(&[1, 3]), &hp(&[0, 4]), DEFAULT_STEP_CAP),
            Err(Error::NotMajorized)
        );
        assert_eq!(
            decompose_majorization(&hp(&[0, 4]), &hp(&[2, 2]), DEFAULT_STEP_CAP),
            Err(Error::NotStrict)
        );
    }

    #[test]
    fn perturbed_decomposition_handles_repeated_roots() {
        let d = decompose_perturbed(&hp(&[0, 4]), &hp(&[2, 2]), &q(1, 10), DEFAULT_STEP_CAP).unwrap();
        assert_eq!(d.chain.target.root_slice(), &[q(19, 10), q(21, 10)]);
        assert!(d.chain.verify().unwrap().is_clean());
    }

    #[test]
    fn transfer_chain_general() {
        let c = transfer_chain(&hp(&[0, 1, 2]), &hp(&[1, 1, 1])).unwrap();
        assert_eq!(c.steps, vec![ContractionStep::new(1, 3, q(1, 1))]);
        assert_eq!(c.replay().unwrap(), hp(&[1, 1, 1]));
        let c = transfer_chain(&hp(&[-5, 0, 1, 9]), &hp(&[-1, 0, 2, 4])).unwrap();
        assert!(c.len() <= 3);
        assert_eq!(c.replay().unwrap(), hp(&[-1, 0, 2, 4]));
    }

    #[test]
    fn random_pair_contract() {
        let (p, q0) = random_comparable_pair::<Rational>(7, 5, 0).unwrap();
        assert_eq!(p, q0);
        for seed in 0..20 {
            let (p, qq) = random_comparable_pair::<Rational>(seed, 6, 4).unwrap();
            assert!(check_majorization(qq.roots(), p.roots(), None).unwrap().holds());
            assert!(qq.is_strict());
        }
        let (p, qq) = random_comparable_pair::<f64>(3, 4, 3).unwrap();
        assert_eq!(p.degree(), qq.degree());
    }
}
