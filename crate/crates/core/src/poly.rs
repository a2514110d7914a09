//! Dense univariate polynomials in coefficient form (low degree first).

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Poly<S> {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Poly::new(vec![c])
    }

    /// `x^n`
    pub fn monomial(n: usize) -> Self {
        let mut c = vec![S::zero(); n + 1];
        c[n] = S::one();
        Poly { coeffs: c }
    }

    /// `∏ (x - r)`
    pub fn from_roots(roots: &[S]) -> Self {
        let mut c = vec![S::one()];
        for r in roots {
            let mut next = vec![S::zero(); c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + a.clone();
                next[i] = next[i].clone() - a.clone() * r.clone();
            }
            c = next;
        }
        Poly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        self.nth_derivative(1)
    }

    pub fn nth_derivative(&self, k: usize) -> Self {
        if k == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= k {
            return Poly::zero();
        }
        let out = (k..self.coeffs.len())
            .map(|i| {
                // i (i-1) ... (i-k+1)
                let falling = ((i - k + 1)..=i).fold(S::one(), |acc, j| acc * S::from_i64(j as i64));
                self.coeffs[i].clone() * falling
            })
            .collect();
        Poly::new(out)
    }

    /// `P(x + shift)`, by repeated synthetic division.
    pub fn taylor_shift(&self, shift: &S) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if shift.is_zero() || n < 2 {
            return self.clone();
        }
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let add = c[j + 1].clone() * shift.clone();
                c[j] = c[j].clone() + add;
            }
        }
        Poly::new(c)
    }

    /// `P(s x)`
    pub fn scale_arg(&self, s: &S) -> Self {
        let mut pow = S::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.clone() * pow.clone());
            pow = pow * s.clone();
        }
        Poly::new(out)
    }

    pub fn scale(&self, s: &S) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Poly::constant(S::one()), |acc, _| acc.mul(self))
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![S::zero(); k];
        c.extend(self.coeffs.iter().cloned());
        Poly::new(c)
    }

    /// Divide by `x^k`; fails unless the `k` lowest coefficients vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::InvalidOperator(format!("polynomial not divisible by x^{k}")));
        }
        Ok(Poly::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    /// Number of vanishing low-order coefficients (multiplicity of the root 0).
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroLeading)?.clone();
        Ok(Poly::new(
            self.coeffs.iter().map(|c| c.clone() / lead.clone()).collect(),
        ))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|l| *l == S::one())
    }

    /// Barycenter of the zeros, `-a_{n-1} / (n a_n)`.
    pub fn barycenter(&self) -> Option<S> {
        let n = self.degree().filter(|&n| n >= 1)?;
        let lead = self.leading()?.clone();
        Some(-self.coeff(n - 1) / (S::from_i64(n as i64) * lead))
    }

    pub fn to_f64(&self) -> Poly<f64> {
        Poly::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<f64> {
    pub fn to_rational(&self) -> Result<Poly<Rational>> {
        Ok(Poly::new(crate::scalar::to_rational_vec(&self.coeffs)?))
    }
}

pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = S::one();
    for i in 0..k {
        acc = acc * S::from_i64((n - i) as i64) / S::from_i64((i + 1) as i64);
    }
    acc
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, i| acc * S::from_i64(i as i64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn qs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn from_roots_expands() {
        let p = Poly::from_roots(&qs(&[3, 1, 2]));
        assert_eq!(p.coeffs(), qs(&[-6, 11, -6, 1]).as_slice());
        let p = Poly::from_roots(&qs(&[-1, 1]));
        assert_eq!(p.coeffs(), qs(&[-1, 0, 1]).as_slice());
    }

    #[test]
    fn derivatives() {
        let p = Poly::new(qs(&[0, 0, 0, 1])); // x^3
        assert_eq!(p.derivative().coeffs(), qs(&[0, 0, 3]).as_slice());
        assert_eq!(p.nth_derivative(3).coeffs(), qs(&[6]).as_slice());
        assert!(p.nth_derivative(4).is_zero());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Poly::new(qs(&[5, -3, 2, 7]));
        let s = q(3, 2);
        let shifted = p.taylor_shift(&s);
        for x in [-2, 0, 1, 5] {
            let x = Rational::from_i64(x);
            assert_eq!(shifted.eval(&x), p.eval(&(x.clone() + s.clone())));
        }
        assert_eq!(shifted.taylor_shift(&-s), p);
    }

    #[test]
    fn shift_down_requires_divisibility() {
        let p = Poly::new(qs(&[0, 0, 1, 2]));
        assert_eq!(p.zero_root_multiplicity(), 2);
        assert_eq!(p.shift_down(2).unwrap().coeffs(), qs(&[1, 2]).as_slice());
        assert!(p.shift_down(3).is_err());
        assert_eq!(p.shift_down(2).unwrap().shift_up(2), p);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<Rational>(5, 2), Rational::from_i64(10));
        assert_eq!(binomial::<Rational>(3, 5), Rational::from_i64(0));
        assert_eq!(factorial::<Rational>(5), Rational::from_i64(120));
    }

    #[test]
    fn barycenter_of_roots() {
        let p = Poly::from_roots(&qs(&[1, 2, 6]));
        assert_eq!(p.barycenter().unwrap(), Rational::from_i64(3));
    }
}
