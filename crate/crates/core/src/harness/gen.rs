//! Seeded random generators for polynomials, operators and sequences.
//!
//! Everything is drawn as small-denominator rationals so that exact-mode
//! checks stay cheap; float-mode suites convert afterwards.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::contraction::random_contractions;
use crate::error::{Error, Result};
use crate::hyperbolic::HyperbolicPoly;
use crate::lp::{DeformationVector, LPFunction};
use crate::scalar::{Rational, Scalar};

/// Independent stream for one trial: the run seed xor the trial index.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial)
}

/// Uniform on the grid `{k/den}` inside `[lo, hi]`.
pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    Rational::from_ratio(rng.gen_range(lo * den..=hi * den), den)
}

/// Like [`random_rational`] but never zero.
pub fn random_nonzero<R: Rng>(rng: &mut R, lo: i64, hi: i64, den: i64) -> Rational {
    loop {
        let r = random_rational(rng, lo, hi, den);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Strictly hyperbolic polynomial with roots in `[-bound, bound]` and
/// consecutive gaps at least `min_gap`: sorted uniform draws on
/// `[-bound, bound - (n-1)·gap]` with `i·gap` added to the `i`-th.
pub fn random_hyperbolic<R: Rng>(
    rng: &mut R,
    n: usize,
    bound: &Rational,
    min_gap: &Rational,
) -> Result<HyperbolicPoly<Rational>> {
    if n == 0 {
        return Err(Error::EmptyTuple);
    }
    if Rational::from_i64(n as i64) * min_gap > Rational::from_i64(2) * bound {
        return Err(Error::InfeasibleGap(format!(
            "{n} roots with gap {} do not fit in ±{}",
            min_gap.to_f64(),
            bound.to_f64()
        )));
    }
    let lo = -bound.clone();
    let span = Rational::from_i64(2) * bound - Rational::from_i64(n as i64 - 1) * min_gap;
    let mut draws: Vec<Rational> = (0..n)
        .map(|_| &lo + &span * Rational::from_ratio(rng.gen_range(0..=1024), 1024))
        .collect();
    draws.sort();
    let roots = draws
        .into_iter()
        .enumerate()
        .map(|(i, x)| x + Rational::from_i64(i as i64) * min_gap)
        .collect();
    HyperbolicPoly::from_roots(roots)
}

/// Strictly hyperbolic with roots in roughly `[-10, 10]` and gaps `≥ 1/4`.
pub fn random_strict<R: Rng>(rng: &mut R, n: usize) -> HyperbolicPoly<Rational> {
    random_hyperbolic(rng, n, &Rational::from_i64(10), &Rational::from_ratio(1, 4))
        .expect("degree within the supported range")
}

/// Random strict polynomial translated so its barycenter is exactly zero.
pub fn random_centered<R: Rng>(rng: &mut R, n: usize) -> HyperbolicPoly<Rational> {
    let p = random_strict(rng, n);
    let c = p.barycenter();
    p.taylor_shift(&c)
}

/// Random strict polynomial with every root in `[1, 21]`.
pub fn random_positive<R: Rng>(rng: &mut R, n: usize) -> HyperbolicPoly<Rational> {
    random_strict(rng, n).taylor_shift(&Rational::from_i64(-11))
}

/// `(P, Q)` with `Q` obtained from `P` by 1 to 6 random contractions (simple
/// or not), all keeping strict hyperbolicity.
pub fn random_pair_from<R: Rng>(
    rng: &mut R,
    p: HyperbolicPoly<Rational>,
) -> (HyperbolicPoly<Rational>, HyperbolicPoly<Rational>) {
    let budget = rng.gen_range(1..=6);
    let simple_only = rng.gen_bool(0.5);
    let q = random_contractions(rng, &p, budget, simple_only);
    (p, q)
}

pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (HyperbolicPoly<Rational>, HyperbolicPoly<Rational>) {
    let p = random_strict(rng, n);
    random_pair_from(rng, p)
}

/// Knobs for [`random_lp`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LpShape {
    pub max_m: usize,
    pub max_alphas: usize,
    /// Force `b = 0`.
    pub driftless: bool,
    /// Force `m = 0`, `c = 1`, so `φ(0) = 1`.
    pub unit_at_zero: bool,
}

impl Default for LpShape {
    fn default() -> Self {
        LpShape {
            max_m: 2,
            max_alphas: 4,
            driftless: false,
            unit_at_zero: false,
        }
    }
}

pub fn random_lp<R: Rng>(rng: &mut R, shape: LpShape) -> LPFunction<Rational> {
    let (c, m) = if shape.unit_at_zero {
        (Rational::from_i64(1), 0)
    } else {
        (random_nonzero(rng, -2, 2, 2), rng.gen_range(0..=shape.max_m))
    };
    let a_sq = if rng.gen_bool(0.5) {
        Rational::from_ratio(rng.gen_range(1..=16), 8)
    } else {
        Rational::from_i64(0)
    };
    let b = if shape.driftless {
        Rational::from_i64(0)
    } else {
        random_rational(rng, -3, 3, 4)
    };
    let alphas = (0..rng.gen_range(0..=shape.max_alphas))
        .map(|_| random_nonzero(rng, -2, 2, 4))
        .collect();
    LPFunction::new(c, m, a_sq, b, alphas).expect("generated parameters are valid")
}

/// `c x^m e^{bx} ∏ (1 - α_k x)` with `b ≤ 0`, `α_k > 0`: the functions whose
/// operators keep positive zeros positive.
pub fn random_positive_type<R: Rng>(rng: &mut R, max_m: usize, max_alphas: usize) -> LPFunction<Rational> {
    let c = random_nonzero(rng, -2, 2, 2);
    let m = rng.gen_range(0..=max_m);
    let b = random_rational(rng, -2, 0, 4);
    let alphas: Vec<Rational> = (0..rng.gen_range(0..=max_alphas))
        .map(|_| Rational::from_ratio(rng.gen_range(1..=8), 4))
        .collect();
    // ∏(1 - αx) = ∏(1 - αx)e^{αx} · e^{-Σα x}
    let drift = alphas.iter().fold(b, |acc, a| acc - a);
    LPFunction::new(c, m, Rational::from_i64(0), drift, alphas).expect("valid parameters")
}

/// Random `s ⩽ t`: `t_i` uniform in `[-2, 2]`, `s_i = u_i t_i` with
/// `u_i ∈ [0, 1]`.
pub fn random_ordered_deformations<R: Rng>(
    rng: &mut R,
    len: usize,
) -> (DeformationVector<Rational>, DeformationVector<Rational>) {
    let t: Vec<Rational> = (0..len).map(|_| random_rational(rng, -2, 2, 4)).collect();
    let s = t
        .iter()
        .map(|x| x * Rational::from_ratio(rng.gen_range(0..=8), 8))
        .collect();
    (DeformationVector(s), DeformationVector(t))
}

/// Random `(s, t)` with `|s| ≤ |t|` and `st ≥ 0`.
pub fn random_ordered_scalars<R: Rng>(rng: &mut R) -> (Rational, Rational) {
    let t = random_rational(rng, -2, 2, 8);
    let s = &t * Rational::from_ratio(rng.gen_range(0..=8), 8);
    (s, t)
}

pub fn convert_poly<S: Scalar>(p: &HyperbolicPoly<Rational>) -> Result<HyperbolicPoly<S>> {
    HyperbolicPoly::from_roots(p.root_slice().iter().map(S::from_rational).collect())
}

pub fn convert_lp<S: Scalar>(phi: &LPFunction<Rational>) -> LPFunction<S> {
    LPFunction {
        c: S::from_rational(&phi.c),
        m: phi.m,
        a_sq: S::from_rational(&phi.a_sq),
        b: S::from_rational(&phi.b),
        alphas: phi.alphas.iter().map(S::from_rational).collect(),
    }
}

pub fn convert_vec<S: Scalar>(v: &[Rational]) -> Vec<S> {
    v.iter().map(S::from_rational).collect()
}
