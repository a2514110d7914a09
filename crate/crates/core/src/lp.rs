//! Laguerre–Pólya class functions and the differential operators they
//! induce on polynomials.
//!
//! A function `φ(x) = c x^m e^{-a²x² + bx} ∏ (1 - α_k x) e^{α_k x}` acts on a
//! polynomial through its Maclaurin series, `φ(D)[P] = Σ a_k P^{(k)}`, which
//! only needs the coefficients up to the degree of `P`.

use crate::error::{Error, Result};
use crate::poly::{binomial, factorial, Poly};
use crate::scalar::Scalar;

/// `c x^m e^{-a²x² + bx} ∏ (1 - α_k x) e^{α_k x}` with finitely many `α_k`.
///
/// The Gaussian parameter is stored squared so that rational `a²` (such as
/// `1/2`) stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct LPFunction<S> {
    pub c: S,
    pub m: usize,
    pub a_sq: S,
    pub b: S,
    pub alphas: Vec<S>,
}

impl<S: Scalar> LPFunction<S> {
    pub fn new(c: S, m: usize, a_sq: S, b: S, alphas: Vec<S>) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::InvalidOperator("c must be nonzero".into()));
        }
        if a_sq.is_negative() {
            return Err(Error::InvalidOperator("a² must be nonnegative".into()));
        }
        if ![&c, &a_sq, &b].into_iter().chain(&alphas).all(Scalar::is_finite) {
            return Err(Error::NonFinite);
        }
        Ok(LPFunction { c, m, a_sq, b, alphas })
    }

    /// `e^{bx}`
    pub fn exp(b: S) -> Self {
        LPFunction {
            c: S::one(),
            m: 0,
            a_sq: S::zero(),
            b,
            alphas: Vec::new(),
        }
    }

    /// `e^{-a²x²}`
    pub fn gaussian(a_sq: S) -> Self {
        LPFunction {
            c: S::one(),
            m: 0,
            a_sq,
            b: S::zero(),
            alphas: Vec::new(),
        }
    }

    /// `x^m`
    pub fn monomial(m: usize) -> Self {
        LPFunction {
            c: S::one(),
            m,
            a_sq: S::zero(),
            b: S::zero(),
            alphas: Vec::new(),
        }
    }

    /// `φ(0)`: `c` when `m = 0`, else zero.
    pub fn value_at_zero(&self) -> S {
        if self.m == 0 {
            self.c.clone()
        } else {
            S::zero()
        }
    }

    /// No exponential drift (`b = 0`).
    pub fn is_driftless(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact Maclaurin coefficients `a_0..a_N`.
    ///
    /// The exponential part is `exp(g)` with `g = (b + Σα)x - a²x²`, expanded
    /// through `k E_k = g_1 E_{k-1} + 2 g_2 E_{k-2}`, then multiplied by the
    /// linear factors, `c` and `x^m`.
    pub fn maclaurin_prefix(&self, n_max: usize) -> Vec<S> {
        let mut out = vec![S::zero(); n_max + 1];
        if n_max < self.m {
            return out;
        }
        let len = n_max - self.m + 1;
        let g1 = self.alphas.iter().cloned().fold(self.b.clone(), |acc, a| acc + a);
        let g2 = -self.a_sq.clone();
        let mut e: Vec<S> = Vec::with_capacity(len);
        for k in 0..len {
            let v = if k == 0 {
                S::one()
            } else {
                let mut acc = g1.clone() * e[k - 1].clone();
                if k >= 2 {
                    acc = acc + S::from_i64(2) * g2.clone() * e[k - 2].clone();
                }
                acc / S::from_i64(k as i64)
            };
            e.push(v);
        }
        for alpha in &self.alphas {
            for k in (1..len).rev() {
                e[k] = e[k].clone() - alpha.clone() * e[k - 1].clone();
            }
        }
        for (k, v) in e.into_iter().enumerate() {
            out[self.m + k] = self.c.clone() * v;
        }
        out
    }

    /// `φ(D)` truncated at order `n_max`.
    pub fn to_operator(&self, n_max: usize) -> Result<DiffOperator<S>> {
        DiffOperator::from_prefix(self.maclaurin_prefix(n_max.max(self.m)))
    }

    /// `φ^s`: `a² ↦ s_0² a²`, `α_k ↦ s_k α_k`; `c`, `m`, `b` unchanged.
    pub fn deform(&self, s: &DeformationVector<S>) -> Self {
        let s0 = s.get(0);
        LPFunction {
            c: self.c.clone(),
            m: self.m,
            a_sq: self.a_sq.clone() * s0.clone() * s0,
            b: self.b.clone(),
            alphas: self
                .alphas
                .iter()
                .enumerate()
                .map(|(k, a)| a.clone() * s.get(k + 1))
                .collect(),
        }
    }

    /// `x ↦ φ(sx)`, whose operator is `φ(sD)`.
    pub fn scaled(&self, s: &S) -> Result<Self> {
        let cs = (0..self.m).fold(self.c.clone(), |acc, _| acc * s.clone());
        LPFunction::new(
            cs,
            self.m,
            self.a_sq.clone() * s.clone() * s.clone(),
            self.b.clone() * s.clone(),
            self.alphas.iter().map(|a| a.clone() * s.clone()).collect(),
        )
    }
}

/// `f(D) = Σ_{k ≥ m} a_k D^k` from a Maclaurin prefix `a_0..a_N` whose first
/// nonzero entry is `a_m`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOperator<S> {
    m: usize,
    coeffs: Vec<S>,
}

impl<S: Scalar> DiffOperator<S> {
    pub fn from_prefix(coeffs: Vec<S>) -> Result<Self> {
        let m = coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::InvalidOperator("Maclaurin prefix is identically zero".into()))?;
        Ok(DiffOperator { m, coeffs })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn prefix(&self) -> &[S] {
        &self.coeffs
    }

    /// `Σ_{k=m}^{deg P} a_k P^{(k)}`. A degree-`n` input with `n = m` gives a
    /// constant and `n < m` gives zero.
    pub fn apply(&self, p: &Poly<S>) -> Result<Poly<S>> {
        let Some(n) = p.degree() else {
            return Ok(Poly::zero());
        };
        if n > self.max_degree() {
            return Err(Error::PrefixTooShort {
                have: self.coeffs.len(),
                need: n + 1,
            });
        }
        let mut acc = Poly::zero();
        let mut dk = p.nth_derivative(self.m);
        for k in self.m..=n {
            if !self.coeffs[k].is_zero() {
                acc = acc.add(&dk.scale(&self.coeffs[k]));
            }
            dk = dk.derivative();
        }
        Ok(acc)
    }

    /// `k_n = 1 / (C(n, m) · m! · a_m)`, defined for `n ≥ m + 1`.
    pub fn normalization(&self, n: usize) -> Result<S> {
        if n < self.m + 1 {
            return Err(Error::DegreeTooSmall {
                degree: n,
                required: self.m + 1,
            });
        }
        let denom = binomial::<S>(n, self.m) * factorial::<S>(self.m) * self.coeffs[self.m].clone();
        Ok(S::one() / denom)
    }

    /// `D(f, n)[P] = k_n f(D)[P]` with `n = deg P`; monic input gives monic
    /// output of degree `n - m`.
    pub fn apply_normalized(&self, p: &Poly<S>) -> Result<Poly<S>> {
        let n = p.degree().ok_or(Error::DegreeZero)?;
        let k = self.normalization(n)?;
        Ok(self.apply(p)?.scale(&k))
    }
}

/// `φ(D)[x^n]`, optionally scaled by `k_n(φ)` to be monic.
pub fn appell<S: Scalar>(phi: &LPFunction<S>, n: usize, normalized: bool) -> Result<Poly<S>> {
    if n < phi.m + 1 {
        return Err(Error::DegreeTooSmall {
            degree: n,
            required: phi.m + 1,
        });
    }
    let op = phi.to_operator(n)?;
    let xn = Poly::monomial(n);
    if normalized {
        op.apply_normalized(&xn)
    } else {
        op.apply(&xn)
    }
}

/// `(1 - λD) e^{λD} P = P(x + λ) - λ P'(x + λ)`.
pub fn shift_pencil<S: Scalar>(p: &Poly<S>, lambda: &S) -> Poly<S> {
    let s = p.taylor_shift(lambda);
    s.sub(&s.derivative().scale(lambda))
}

/// `e^{-aD²} P = Σ_k (-a)^k P^{(2k)} / k!`.
pub fn gaussian_op<S: Scalar>(p: &Poly<S>, a: &S) -> Poly<S> {
    let mut acc = Poly::zero();
    let mut d = p.clone();
    let mut weight = S::one();
    let mut k = 0i64;
    while !d.is_zero() {
        acc = acc.add(&d.scale(&weight));
        k += 1;
        weight = weight * (-a.clone()) / S::from_i64(k);
        d = d.nth_derivative(2);
    }
    acc
}

/// Scaling vector `s_0, s_1, …` for the deformation `φ ↦ φ^s`. Entries past
/// the end read as `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationVector<S>(pub Vec<S>);

impl<S: Scalar> DeformationVector<S> {
    pub fn get(&self, i: usize) -> S {
        self.0.get(i).cloned().unwrap_or_else(S::one)
    }

    /// `s ⩽ t`: `|s_i| ≤ |t_i|` and `s_i t_i ≥ 0` for every index.
    pub fn le(&self, other: &Self) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| {
            let (s, t) = (self.get(i), other.get(i));
            s.abs() <= t.abs() && !(s * t).is_negative()
        })
    }
}

/// Polynomial approximant
/// `c x^m (1 - a²x²/j)^j (1 + τ x/n_j)^{n_j} ∏_{ν ≤ j} (1 - α_ν x)` with
/// `τ = b + Σ_{ν ≤ j} α_ν`, whose Maclaurin prefix tends to that of `φ`.
/// Parameters `α_ν` beyond the stored list count as zero.
pub fn approximant<S: Scalar>(phi: &LPFunction<S>, j: usize, n_j: usize) -> Result<Poly<S>> {
    if j == 0 || n_j == 0 {
        return Err(Error::InvalidOperator("approximant needs j ≥ 1 and n_j ≥ 1".into()));
    }
    let used = &phi.alphas[..j.min(phi.alphas.len())];
    let tau = used.iter().cloned().fold(phi.b.clone(), |acc, a| acc + a);
    let gauss = Poly::new(vec![S::one(), S::zero(), -phi.a_sq.clone() / S::from_i64(j as i64)]).pow(j);
    let drift = Poly::new(vec![S::one(), tau / S::from_i64(n_j as i64)]).pow(n_j);
    let product = used.iter().fold(Poly::constant(S::one()), |acc, a| {
        acc.mul(&Poly::new(vec![S::one(), -a.clone()]))
    });
    Ok(gauss.mul(&drift).mul(&product).shift_up(phi.m).scale(&phi.c))
}

/// Diagonal operator `x^k ↦ γ_k x^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierSequence<S> {
    pub gammas: Vec<S>,
}

impl<S: Scalar> MultiplierSequence<S> {
    pub fn new(gammas: Vec<S>) -> Self {
        MultiplierSequence { gammas }
    }

    /// `γ_k = k`, the sequence of `x D`.
    pub fn xdx(len: usize) -> Self {
        MultiplierSequence::new((0..len).map(|k| S::from_i64(k as i64)).collect())
    }

    pub fn ones(len: usize) -> Self {
        MultiplierSequence::new(vec![S::one(); len])
    }

    /// Applies the sequence to `P` of degree `n`; when normalized the result
    /// is divided by `γ_n`.
    pub fn apply(&self, p: &Poly<S>, normalized: bool) -> Result<Poly<S>> {
        let Some(n) = p.degree() else {
            return Ok(Poly::zero());
        };
        if self.gammas.len() <= n {
            return Err(Error::PrefixTooShort {
                have: self.gammas.len(),
                need: n + 1,
            });
        }
        let image = Poly::new(
            p.coeffs()
                .iter()
                .zip(&self.gammas)
                .map(|(a, g)| a.clone() * g.clone())
                .collect(),
        );
        if !normalized {
            return Ok(image);
        }
        let top = self.gammas[n].clone();
        if top.is_zero() {
            return Err(Error::ZeroTopTerm);
        }
        Ok(image.scale(&(S::one() / top)))
    }
}

/// `γ_k = H(k + p)` with `H(x) = x(x-1)…(x-m+1)`, for `k = 0..len-1`.
pub fn laguerre_ms<S: Scalar>(m: usize, p: usize, len: usize) -> Result<MultiplierSequence<S>> {
    if m == 0 {
        return Err(Error::InvalidOperator("laguerre sequence needs m ≥ 1".into()));
    }
    Ok(MultiplierSequence::new(
        (0..len)
            .map(|k| (0..m).fold(S::one(), |acc, i| acc * S::from_i64(k as i64 + p as i64 - i as i64)))
            .collect(),
    ))
}

/// `x^{m-p} [x^p P]^{(m)}`, the closed form of the sequence above.
pub fn laguerre_closed_form<S: Scalar>(m: usize, p: usize, poly: &Poly<S>) -> Result<Poly<S>> {
    let d = poly.shift_up(p).nth_derivative(m);
    if m >= p {
        Ok(d.shift_up(m - p))
    } else {
        d.shift_down(p - m)
    }
}
