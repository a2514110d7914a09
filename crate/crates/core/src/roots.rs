//! Real-root extraction for polynomials known to be real-rooted.
//!
//! Roots of the derivative bracket the roots of the polynomial (Rolle), so
//! the search recurses down the derivative tower and bisects every bracket
//! between consecutive critical points, closed off by the Cauchy bound.
//! Before searching, the polynomial is centred at its barycenter and scaled
//! by a power of two so that its roots fall in `[-1, 1]`; for exact inputs
//! this conditioning is done in rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hyperbolic::RootTuple;
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

/// Above this `barycenter² / spread`, float inputs are conditioned exactly.
const OFFSET_RATIO: f64 = 16.0;

/// Endpoint values within this many evaluation-error bounds of zero count
/// as zero when a bracket shows no sign change.
const NOISE_FACTOR: f64 = 64.0;

/// Roots of a real-rooted polynomial with `f64` coefficients, sorted.
pub fn real_roots(coeffs: &[f64], tol: Option<f64>) -> Result<RootTuple<f64>> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NonFinite);
    }
    let p = Poly::new(coeffs.to_vec());
    check_shape(coeffs, &p)?;
    let p = p.monic()?;
    let zeros = p.zero_root_multiplicity();
    let q = p.shift_down(zeros)?;
    let mut roots = vec![0.0; zeros];
    if q.degree().unwrap_or(0) > 0 {
        let center = q.barycenter().unwrap_or(0.0);
        let centered = q.taylor_shift(&center);
        let d = centered.degree().unwrap();
        let spread = samuelson_sq_f64(&centered, d);
        if center * center > OFFSET_RATIO * spread.abs() {
            // far from the origin the float shift cancels badly; redo it exactly
            let exact: Vec<Rational> = q
                .coeffs()
                .iter()
                .map(|c| Rational::from_f64(*c).ok_or(Error::NonFinite))
                .collect::<Result<_>>()?;
            roots.extend(real_roots_exact(&exact, tol)?.into_vec());
            return Ok(RootTuple::new(roots));
        }
        if spread < -1e-8 * (1.0 + center * center) {
            return Err(Error::NotRealRooted(format!("negative root variance {spread:e}")));
        }
        let radius = spread.max(0.0).sqrt();
        let scale = pow2_at_least(radius);
        let tol = tol.unwrap_or(0.0);
        let scaled: Vec<f64> = (0..=d)
            .map(|k| centered.coeff(k) * scale.powi(k as i32 - d as i32))
            .collect();
        // rounding in the input and in the shift, carried per coefficient
        let abs_shifted = q.map(|c| c.abs()).taylor_shift(&center.abs());
        let err: Vec<f64> = (0..=d)
            .map(|k| 4.0 * (d + 1) as f64 * f64::EPSILON * abs_shifted.coeff(k) * scale.powi(k as i32 - d as i32))
            .collect();
        let mut noisy = false;
        for u in interlacing_roots(&scaled, &err, tol / scale, &mut noisy)? {
            roots.push(center + scale * u);
        }
    }
    Ok(RootTuple::new(roots))
}

/// Roots of a real-rooted polynomial with exact rational coefficients.
///
/// Roots at zero and at the barycenter are deflated exactly. When the float
/// search meets a bracket without a sign change or a tight cluster, the
/// polynomial is split exactly into square-free layers (repeated gcd with
/// the derivative) and each layer is searched on its own, so multiple roots
/// anywhere come out to full precision.
pub fn real_roots_exact(coeffs: &[Rational], tol: Option<f64>) -> Result<RootTuple<f64>> {
    let p = Poly::new(coeffs.to_vec());
    check_shape(coeffs, &p)?;
    let p = p.monic()?;
    let zeros = p.zero_root_multiplicity();
    let q = p.shift_down(zeros)?;
    let mut roots = vec![0.0; zeros];
    if q.degree().unwrap_or(0) > 0 {
        let (found, suspect) = search_exact(&q, tol)?;
        if suspect {
            for layer in squarefree_layers(&q) {
                let (found, suspect) = search_exact(&layer, tol)?;
                roots.extend(if suspect { sturm_roots(&layer)? } else { found });
            }
        } else {
            roots.extend(found);
        }
    }
    Ok(RootTuple::new(roots))
}

/// Gap below which two roots in the unit-scaled search count as a cluster.
const CLUSTER_GAP: f64 = 1e-5;

/// Float search on the exactly centred and scaled polynomial; the flag
/// reports noise-accepted brackets or clustered roots.
fn search_exact(q: &Poly<Rational>, tol: Option<f64>) -> Result<(Vec<f64>, bool)> {
    let center = q.barycenter().unwrap_or_else(Rational::zero);
    let centered = q.taylor_shift(&center);
    let at_center = centered.zero_root_multiplicity();
    let rest = centered.shift_down(at_center)?;
    let center_f = center.to_f64();
    let mut roots = vec![center_f; at_center];
    let d = rest.degree().unwrap_or(0);
    if d == 0 {
        return Ok((roots, false));
    }
    let spread = samuelson_sq(&rest, d);
    if spread.is_negative() {
        return Err(Error::NotRealRooted("negative root variance".into()));
    }
    let mut scale = Rational::from_f64(pow2_at_least(spread.to_f64().sqrt())).unwrap_or_else(Rational::one);
    while &scale * &scale < spread {
        scale *= Rational::from_i64(2);
    }
    let scale_f = scale.to_f64();
    let tol = tol.unwrap_or(0.0);
    let mut wide = Vec::with_capacity(d + 1);
    let mut factor = Rational::one();
    for k in (0..=d).rev() {
        let c = rest.coeff(k) * &factor;
        let hi = c.to_f64();
        let lo = Rational::from_f64(hi).map_or(0.0, |h| (c - h).to_f64());
        wide.push((hi, lo));
        factor /= &scale;
    }
    wide.reverse();
    let scaled: Vec<f64> = wide.iter().map(|c| c.0).collect();
    let err: Vec<f64> = scaled.iter().map(|c| f64::EPSILON * c.abs()).collect();
    let mut noisy = false;
    let mut us = interlacing_roots(&scaled, &err, tol / scale_f, &mut noisy)?;
    let clustered = us.windows(2).any(|w| w[1] - w[0] < CLUSTER_GAP);
    if tol == 0.0 {
        polish(&wide, &mut us);
    }
    let consistent = matches_exact_sums(&rest, &us, scale_f);
    roots.extend(us.into_iter().map(|u| center_f + scale_f * u));
    Ok((roots, noisy || clustered || !consistent))
}

/// Compares the sum and the log of the product of the roots `scale·u` with
/// the values read exactly off the coefficients of `p`.
fn matches_exact_sums(p: &Poly<Rational>, us: &[f64], scale: f64) -> bool {
    let d = us.len();
    let lead = p.coeff(d);
    let ys: Vec<f64> = us.iter().map(|u| scale * u).collect();
    let mag: f64 = ys.iter().map(|y| y.abs()).sum();
    let sum = (-p.coeff(d - 1) / &lead).to_f64();
    let sum_ok = (ys.iter().sum::<f64>() - sum).abs() <= 1e-9 * mag;
    let log_prod: f64 = ys.iter().map(|y| y.abs().ln()).sum();
    let prod = p.coeff(0) / &lead;
    let prod_ok = (log_prod - ln_abs(&prod)).abs() <= 1e-6 * d as f64;
    sum_ok && prod_ok
}

/// `ln |r|` without overflow for huge numerators or denominators.
fn ln_abs(r: &Rational) -> f64 {
    fn ln_big(n: &BigInt) -> f64 {
        let bits = n.bits();
        let shift = bits.saturating_sub(64);
        let top = num_traits::ToPrimitive::to_f64(&(n.abs() >> shift)).unwrap_or(f64::NAN);
        top.ln() + shift as f64 * std::f64::consts::LN_2
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

/// Newton steps on well-separated roots, evaluating the exact coefficients
/// in double-double arithmetic; each root moves by less than a quarter of
/// the gap to its neighbours.
fn polish(c: &[(f64, f64)], roots: &mut [f64]) {
    let dc: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &(hi, lo))| (hi * k as f64, lo * k as f64))
        .collect();
    let snapshot = roots.to_vec();
    for (i, u) in roots.iter_mut().enumerate() {
        let left = if i > 0 {
            snapshot[i] - snapshot[i - 1]
        } else {
            f64::INFINITY
        };
        let right = snapshot.get(i + 1).map_or(f64::INFINITY, |r| r - snapshot[i]);
        let gap = left.min(right);
        if gap < CLUSTER_GAP {
            continue;
        }
        let limit = gap / 4.0;
        let start = *u;
        for _ in 0..3 {
            let step = dd_eval(c, *u) / dd_eval(&dc, *u);
            let next = *u - step;
            if !step.is_finite() || (next - start).abs() > limit {
                break;
            }
            *u = next;
            if step.abs() <= f64::EPSILON * u.abs() {
                break;
            }
        }
    }
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Horner evaluation with coefficients and accumulator held as `hi + lo`.
fn dd_eval(c: &[(f64, f64)], x: f64) -> f64 {
    let (mut hi, mut lo) = (0.0f64, 0.0f64);
    for &(ch, cl) in c.iter().rev() {
        let p = hi * x;
        let pe = hi.mul_add(x, -p) + lo * x;
        let (s, se) = two_sum(p, ch);
        let e = se + pe + cl;
        hi = s + e;
        lo = e - (hi - s);
    }
    hi + lo
}

/// `h_1, h_2, …` with `h_i` the product of the distinct roots of multiplicity
/// at least `i`, each once; their roots together are the roots of `p`.
pub(crate) fn squarefree_layers(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut layers = Vec::new();
    let mut g = p.clone();
    while g.degree().unwrap_or(0) > 0 {
        let next = gcd(&g, &g.derivative());
        layers.push(div_exact(&g, &next));
        g = next;
    }
    layers
}

/// Exact real-rootedness test: the Sturm sequence of the square-free part
/// must count as many distinct real roots as that part has degree.
pub fn is_real_rooted_exact(p: &Poly<Rational>) -> bool {
    let Some(d) = p.degree() else {
        return false;
    };
    if d == 0 {
        return true;
    }
    let core = div_exact(p, &gcd(p, &p.derivative()));
    let dc = core.degree().unwrap_or(0);
    distinct_real_roots(&core) == dc
}

/// Distinct real roots of `p` from sign changes of its Sturm sequence at
/// `-∞` and `+∞`.
fn distinct_real_roots(p: &Poly<Rational>) -> usize {
    let seq = sturm_sequence(p);
    let changes = |signs: Vec<bool>| signs.windows(2).filter(|w| w[0] != w[1]).count();
    let at_plus: Vec<bool> = seq
        .iter()
        .filter_map(|q| q.leading().map(|l| l.is_positive()))
        .collect();
    let at_minus: Vec<bool> = seq
        .iter()
        .filter_map(|q| {
            let d = q.degree()?;
            q.leading().map(|l| l.is_positive() == (d % 2 == 0))
        })
        .collect();
    changes(at_minus).saturating_sub(changes(at_plus))
}

fn sturm_sequence(p: &Poly<Rational>) -> Vec<Poly<Rational>> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.degree().unwrap_or(0) == 0 {
            break;
        }
        let r = div_rem(&seq[seq.len() - 2], last).1;
        if r.is_zero() {
            break;
        }
        seq.push(primitive(&r).scale(&-Rational::one()));
    }
    seq
}

/// Positive multiple of `p` with coprime integer coefficients.
fn primitive(p: &Poly<Rational>) -> Poly<Rational> {
    let den = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if content.is_zero() {
        return p.clone();
    }
    Poly::new(ints.into_iter().map(|c| Rational::from_integer(c / &content)).collect())
}

/// Bisection steps allowed per root in [`sturm_roots`].
const STURM_STEPS: usize = 4000;

/// Dyadic rational `u / 2^k`.
#[derive(Clone, Debug)]
struct Dyadic {
    u: BigInt,
    k: u32,
}

impl Dyadic {
    fn int(u: BigInt) -> Self {
        Dyadic { u, k: 0 }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        let k = a.k.max(b.k);
        (&a.u << (k - a.k), &b.u << (k - b.k), k)
    }

    fn mid(a: &Dyadic, b: &Dyadic) -> Dyadic {
        let (ua, ub, k) = Dyadic::aligned(a, b);
        Dyadic { u: ua + ub, k: k + 1 }
    }

    /// `a + (b - a)·j/4`
    fn quarter(a: &Dyadic, b: &Dyadic, j: u32) -> Dyadic {
        let (ua, ub, k) = Dyadic::aligned(a, b);
        Dyadic {
            u: (&ua << 2u32) + (ub - &ua) * j,
            k: k + 2,
        }
    }

    /// `|b - a| ≤ 2^-62 · max(|a|, |b|)`
    fn close(a: &Dyadic, b: &Dyadic) -> bool {
        let (ua, ub, _) = Dyadic::aligned(a, b);
        let scale = ua.abs().max(ub.abs());
        ((ub - ua).abs() << 62u32) <= scale
    }

    fn to_f64(&self) -> f64 {
        Rational::new(self.u.clone(), BigInt::one() << self.k).to_f64()
    }
}

/// Sign of the integer polynomial `p` at `u / 2^k`, by homogeneous Horner.
fn sign_at(p: &[BigInt], x: &Dyadic) -> i8 {
    let d = p.len() - 1;
    let mut acc = p[d].clone();
    for i in (0..d).rev() {
        acc = acc * &x.u + (&p[i] << (x.k as usize * (d - i)));
    }
    if acc.is_zero() {
        0
    } else if acc.is_positive() {
        1
    } else {
        -1
    }
}

fn integer_coeffs(p: &Poly<Rational>) -> Vec<BigInt> {
    primitive(p).coeffs().iter().map(|c| c.to_integer()).collect()
}

/// Roots of a square-free polynomial: Sturm counts isolate them, then sign
/// bisection refines each to full relative precision, all in exact integer
/// arithmetic at dyadic points. Indifferent to how far apart in magnitude
/// the roots are.
fn sturm_roots(h: &Poly<Rational>) -> Result<Vec<f64>> {
    let d = h.degree().unwrap_or(0);
    let hp = integer_coeffs(h);
    let seq: Vec<Vec<BigInt>> = sturm_sequence(h).iter().map(integer_coeffs).collect();
    let changes = |x: &Dyadic| {
        let signs: Vec<i8> = seq.iter().map(|q| sign_at(q, x)).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    // roots in (a, b]
    let count = |a: &Dyadic, b: &Dyadic| changes(a).saturating_sub(changes(b));
    let lead = hp[d].abs();
    let ratio: BigInt = hp[..d].iter().map(|c| c.abs()).max().unwrap_or_else(BigInt::zero) / &lead + 2;
    let bound = Dyadic::int(BigInt::one() << ratio.bits());
    let lo = Dyadic::int(-&bound.u);
    let total = count(&lo, &bound);
    if total != d {
        return Err(Error::NotRealRooted(format!("{total} of {d} roots are real")));
    }
    // split points avoid roots, so every interval end has a nonzero sign
    let split = |a: &Dyadic, b: &Dyadic| -> Dyadic {
        let m = Dyadic::mid(a, b);
        if sign_at(&hp, &m) != 0 {
            return m;
        }
        let m = Dyadic::quarter(a, b, 1);
        if sign_at(&hp, &m) != 0 {
            return m;
        }
        Dyadic::quarter(a, b, 3)
    };
    let mut stack = vec![(lo, bound, total)];
    let mut out = Vec::with_capacity(d);
    while let Some((mut a, mut b, n)) = stack.pop() {
        match n {
            0 => {}
            1 => {
                let left = sign_at(&hp, &a);
                for _ in 0..STURM_STEPS {
                    if Dyadic::close(&a, &b) {
                        break;
                    }
                    let m = Dyadic::mid(&a, &b);
                    match sign_at(&hp, &m) {
                        0 => {
                            a = m.clone();
                            b = m;
                            break;
                        }
                        s if s == left => a = m,
                        _ => b = m,
                    }
                }
                out.push(Dyadic::mid(&a, &b).to_f64());
            }
            _ => {
                let m = split(&a, &b);
                let left = count(&a, &m);
                stack.push((a, m.clone(), left));
                stack.push((m, b, n - left));
            }
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Quotient and remainder of `a / b`.
fn div_rem(a: &Poly<Rational>, b: &Poly<Rational>) -> (Poly<Rational>, Poly<Rational>) {
    let db = b.degree().expect("nonzero divisor");
    let lead = b.coeff(db);
    let mut rem = a.coeffs().to_vec();
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap().clone() / &lead;
        for (i, bc) in b.coeffs().iter().enumerate() {
            rem[k + i] = &rem[k + i] - &c * bc;
        }
        quot[k] = c;
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    (Poly::new(quot), Poly::new(rem))
}

fn div_exact(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    div_rem(a, b).0
}

/// Monic gcd by the Euclidean algorithm.
fn gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = div_rem(&a, &b).1;
        a = b;
        b = match r.monic() {
            Ok(m) => m,
            Err(_) => Poly::zero(),
        };
    }
    a.monic().unwrap_or(a)
}

fn check_shape<S: Scalar>(raw: &[S], p: &Poly<S>) -> Result<()> {
    match raw.last() {
        None => return Err(Error::DegreeZero),
        Some(l) if l.is_zero() => return Err(Error::ZeroLeading),
        _ => {}
    }
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::DegreeZero);
    }
    Ok(())
}

/// `(d-1)/d · Σ u_i²` for a monic polynomial whose roots sum to zero; the
/// Laguerre–Samuelson bound says every root lies within its square root.
fn samuelson_sq(p: &Poly<Rational>, d: usize) -> Rational {
    if d < 2 {
        return p.coeff(0) * p.coeff(0);
    }
    let a1 = p.coeff(d - 1);
    let sum_sq = &a1 * &a1 - Rational::from_i64(2) * p.coeff(d - 2);
    sum_sq * Rational::from_ratio(d as i64 - 1, d as i64)
}

fn samuelson_sq_f64(p: &Poly<f64>, d: usize) -> f64 {
    if d < 2 {
        return p.coeff(0) * p.coeff(0);
    }
    let a1 = p.coeff(d - 1);
    (a1 * a1 - 2.0 * p.coeff(d - 2)) * (d as f64 - 1.0) / d as f64
}

fn pow2_at_least(r: f64) -> f64 {
    if !r.is_finite() || r <= 0.0 {
        return 1.0;
    }
    let mut s = 2f64.powi(r.log2().ceil() as i32);
    while s < r {
        s *= 2.0;
    }
    s
}

/// Horner value and a bound on its error: evaluation rounding plus the
/// propagated coefficient error `err`.
fn eval_with_bound(c: &[f64], err: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut mag = 0.0;
    let mut e = 0.0;
    for (a, ea) in c.iter().zip(err).rev() {
        v = v * x + a;
        mag = mag * x.abs() + a.abs();
        e = e * x.abs() + ea;
    }
    let n = c.len() as f64;
    (v, 2.0 * n * f64::EPSILON * mag + e)
}

/// Roots of a monic polynomial by recursion on the derivative tower.
fn interlacing_roots(c: &[f64], err: &[f64], tol: f64, noisy: &mut bool) -> Result<Vec<f64>> {
    let d = c.len() - 1;
    if d == 1 {
        return Ok(vec![-c[0]]);
    }
    let deriv: Vec<f64> = (1..=d).map(|k| c[k] * k as f64 / d as f64).collect();
    let deriv_err: Vec<f64> = (1..=d).map(|k| err[k] * k as f64 / d as f64).collect();
    let crit = interlacing_roots(&deriv, &deriv_err, tol, noisy)?;
    let cauchy = 1.0 + c[..d].iter().fold(0.0f64, |m, a| m.max(a.abs()));
    let mut ends = Vec::with_capacity(d + 1);
    ends.push(-cauchy);
    ends.extend(crit);
    ends.push(cauchy);
    let mut out = Vec::with_capacity(d);
    for w in ends.windows(2) {
        out.push(bracket_root(c, err, w[0], w[1], tol, noisy)?);
    }
    Ok(out)
}

fn bracket_root(c: &[f64], err: &[f64], mut lo: f64, mut hi: f64, tol: f64, noisy: &mut bool) -> Result<f64> {
    let (flo, elo) = eval_with_bound(c, err, lo);
    let (fhi, ehi) = eval_with_bound(c, err, hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        // multiple or clustered root sitting on a critical point
        let rlo = flo.abs() / elo.max(f64::MIN_POSITIVE);
        let rhi = fhi.abs() / ehi.max(f64::MIN_POSITIVE);
        let (x, ratio) = if rlo <= rhi { (lo, rlo) } else { (hi, rhi) };
        if ratio <= NOISE_FACTOR {
            *noisy = true;
            return Ok(x);
        }
        return Err(Error::NotRealRooted(format!(
            "no sign change on [{lo}, {hi}] (values {flo:e}, {fhi:e})"
        )));
    }
    let slo = flo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let (fm, _) = eval_with_bound(c, err, mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == slo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn hand_fixtures() {
        let r = real_roots(&[-6.0, 11.0, -6.0, 1.0], None).unwrap();
        assert!(close(r.as_slice(), &[1.0, 2.0, 3.0], 1e-10));
        let r = real_roots(&[0.0, 1.0], None).unwrap();
        assert_eq!(r.as_slice(), &[0.0]);
        let r = real_roots(&[-1.0, 0.0, 1.0], None).unwrap();
        assert!(close(r.as_slice(), &[-1.0, 1.0], 1e-10));
    }

    #[test]
    fn shape_errors() {
        assert_eq!(real_roots(&[3.0], None), Err(Error::DegreeZero));
        assert_eq!(real_roots(&[], None), Err(Error::DegreeZero));
        assert_eq!(real_roots(&[1.0, 0.0], None), Err(Error::ZeroLeading));
        assert_eq!(real_roots(&[f64::NAN, 1.0], None), Err(Error::NonFinite));
    }

    #[test]
    fn non_real_rooted_is_flagged() {
        // x^2 + 1
        assert!(matches!(
            real_roots(&[1.0, 0.0, 1.0], None),
            Err(Error::NotRealRooted(_))
        ));
        // (x^2 + 1)(x - 3)(x + 2): variance positive but a bracket fails
        let p = Poly::from_roots(&[3.0, -2.0]).mul(&Poly::new(vec![1.0, 0.0, 1.0]));
        assert!(matches!(real_roots(p.coeffs(), None), Err(Error::NotRealRooted(_))));
    }

    #[test]
    fn multiple_roots() {
        let p = Poly::from_roots(&[2.0, 2.0, 2.0, -1.0]);
        let r = real_roots(p.coeffs(), None).unwrap();
        assert!(close(r.as_slice(), &[-1.0, 2.0, 2.0, 2.0], 1e-4));
        let r = real_roots(&[0.0, 0.0, 0.0, 1.0], None).unwrap();
        assert_eq!(r.as_slice(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn exact_multiple_roots_are_exact() {
        let q = |n: i64, d: i64| Rational::from_ratio(n, d);
        let p = Poly::from_roots(&[q(1, 3), q(1, 3), q(1, 3), q(1, 3)]);
        let r = real_roots_exact(p.coeffs(), None).unwrap();
        assert!(r.as_slice().iter().all(|x| (x - 1.0 / 3.0).abs() < 1e-15));
        let p = Poly::from_roots(&[q(0, 1), q(0, 1), q(5, 1), q(-7, 2)]);
        let r = real_roots_exact(p.coeffs(), None).unwrap();
        assert!(close(r.as_slice(), &[-3.5, 0.0, 0.0, 5.0], 1e-12));
    }

    #[test]
    fn exact_clusters_off_center() {
        let q = |n: i64, d: i64| Rational::from_ratio(n, d);
        // (x + 1)^5 (x - 4): a fivefold root away from the barycenter
        let mut roots = vec![q(-1, 1); 5];
        roots.push(q(4, 1));
        let p = Poly::from_roots(&roots);
        let r = real_roots_exact(p.coeffs(), None).unwrap();
        assert!(close(r.as_slice(), &[-1.0, -1.0, -1.0, -1.0, -1.0, 4.0], 1e-14));
        let p = Poly::from_roots(&[q(1, 3), q(1, 3), q(2, 7), q(2, 7), q(2, 7), q(-5, 2)]);
        let r = real_roots_exact(p.coeffs(), None).unwrap();
        let want = [-2.5, 2.0 / 7.0, 2.0 / 7.0, 2.0 / 7.0, 1.0 / 3.0, 1.0 / 3.0];
        assert!(close(r.as_slice(), &want, 1e-14));
    }

    #[test]
    fn sturm_real_rootedness() {
        let q = |n: i64| Rational::from_i64(n);
        assert!(is_real_rooted_exact(&Poly::from_roots(&[q(1), q(1), q(-2), q(7)])));
        assert!(!is_real_rooted_exact(&Poly::new(vec![q(1), q(0), q(1)])));
        let p = Poly::from_roots(&[q(3), q(3)]).mul(&Poly::new(vec![q(1), q(1), q(1)]));
        assert!(!is_real_rooted_exact(&p));
        assert_eq!(distinct_real_roots(&Poly::from_roots(&[q(0), q(2), q(5)])), 3);
    }

    #[test]
    fn squarefree_split() {
        let q = |n: i64| Rational::from_i64(n);
        let p = Poly::from_roots(&[q(1), q(1), q(1), q(2), q(2), q(5)]);
        let layers = squarefree_layers(&p);
        assert_eq!(layers[0], Poly::from_roots(&[q(1), q(2), q(5)]));
        assert_eq!(layers[1], Poly::from_roots(&[q(1), q(2)]));
        assert_eq!(layers[2], Poly::from_roots(&[q(1)]));
        assert_eq!(layers.len(), 3);
    }

    #[test]
    fn wide_and_offset_roots() {
        let roots = [1000.0, 1000.5, 1001.0, 1003.0, 999.0];
        let p = Poly::from_roots(&roots);
        let r = real_roots(p.coeffs(), None).unwrap();
        let mut want = roots.to_vec();
        want.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!(close(r.as_slice(), &want, 1e-6));
    }

    #[test]
    fn cluster_beside_a_far_root() {
        let exact: Vec<Rational> = [-9425, -7388, -4974, -4244, -3426, -2149, -1095, 1295, 2580, 205490]
            .iter()
            .map(|&k| Rational::from_ratio(k, 1000))
            .collect();
        let p = Poly::from_roots(&exact);
        let got = real_roots_exact(p.coeffs(), None).unwrap().into_vec();
        for (g, e) in got.iter().zip(&exact) {
            assert!((g - e.to_f64()).abs() < 1e-12 * (1.0 + g.abs()), "{g} vs {e}");
        }
    }

    #[test]
    fn wide_dynamic_range() {
        // roots 10^-9, 1, 10^9 and a close pair near 1
        let exact: Vec<Rational> = vec![
            Rational::from_ratio(1, 1_000_000_000),
            Rational::from_i64(1),
            Rational::from_ratio(1_000_001, 1_000_000),
            Rational::from_i64(1_000_000_000),
        ];
        let p = Poly::from_roots(&exact);
        let got = real_roots_exact(p.coeffs(), None).unwrap().into_vec();
        for (g, e) in got.iter().zip(&exact) {
            let e = e.to_f64();
            assert!((g - e).abs() <= 1e-12 * e.abs(), "{g} vs {e}");
        }
        assert_eq!(sturm_roots(&Poly::from_roots(&exact)).unwrap().len(), 4);
        assert!(sturm_roots(&Poly::new(vec![Rational::one(), Rational::zero(), Rational::one()])).is_err());
    }
}
