//! Monic hyperbolic (real-rooted) polynomials stored by their zeros.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Rational, Scalar};

/// Unordered tuple of reals, stored sorted nondecreasing.
#[derive(Clone, Debug, PartialEq)]
pub struct RootTuple<S>(Vec<S>);

fn cmp_scalar<S: PartialOrd>(a: &S, b: &S) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

impl<S: Scalar> RootTuple<S> {
    pub fn new(mut values: Vec<S>) -> Self {
        values.sort_by(cmp_scalar);
        RootTuple(values)
    }

    pub fn as_slice(&self) -> &[S] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<S> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> S {
        self.0.iter().cloned().fold(S::zero(), |a, b| a + b)
    }

    pub fn to_f64(&self) -> RootTuple<f64> {
        RootTuple(self.0.iter().map(Scalar::to_f64).collect())
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|x| x.to_f64().abs()).fold(0.0, f64::max)
    }
}

impl RootTuple<f64> {
    pub fn to_rational(&self) -> Result<RootTuple<Rational>> {
        Ok(RootTuple(crate::scalar::to_rational_vec(&self.0)?))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrictnessReport<S> {
    pub is_strict: bool,
    /// Smallest gap between consecutive roots; `None` for degree one.
    pub min_gap: Option<S>,
}

/// Monic polynomial `∏ (x - x_i)` with all zeros real.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperbolicPoly<S> {
    roots: RootTuple<S>,
}

impl<S: Scalar> HyperbolicPoly<S> {
    pub fn from_roots(roots: Vec<S>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyTuple);
        }
        if roots.iter().any(|r| !r.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(HyperbolicPoly {
            roots: RootTuple::new(roots),
        })
    }

    pub fn from_tuple(roots: RootTuple<S>) -> Result<Self> {
        Self::from_roots(roots.into_vec())
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &RootTuple<S> {
        &self.roots
    }

    pub fn root_slice(&self) -> &[S] {
        self.roots.as_slice()
    }

    /// Monic coefficient vector, low degree first, expanded in this mode.
    pub fn to_coefficients(&self) -> Vec<S> {
        self.to_poly().into_coeffs()
    }

    pub fn to_poly(&self) -> Poly<S> {
        Poly::from_roots(self.roots.as_slice())
    }

    pub fn barycenter(&self) -> S {
        self.roots.sum() / S::from_i64(self.degree() as i64)
    }

    pub fn strictness(&self) -> StrictnessReport<S> {
        let min_gap = self
            .roots
            .as_slice()
            .windows(2)
            .map(|w| w[1].clone() - w[0].clone())
            .min_by(cmp_scalar);
        StrictnessReport {
            is_strict: min_gap.as_ref().is_none_or(|g| g.is_positive()),
            min_gap,
        }
    }

    pub fn is_strict(&self) -> bool {
        self.strictness().is_strict
    }

    /// Roots of the monic normalization `n⁻¹ P'`.
    pub fn derivative(&self, tol: Option<f64>) -> Result<HyperbolicPoly<f64>> {
        let n = self.degree();
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n, required: 2 });
        }
        let d = self.to_poly().derivative().monic()?;
        HyperbolicPoly::from_roots(S::real_roots(d.coeffs(), tol)?)
    }

    /// `P(x + λ)`: every root moves to `x_i - λ`.
    pub fn taylor_shift(&self, lambda: &S) -> Self {
        HyperbolicPoly {
            roots: RootTuple::new(
                self.roots
                    .as_slice()
                    .iter()
                    .map(|r| r.clone() - lambda.clone())
                    .collect(),
            ),
        }
    }

    /// Separates every cluster of equal roots while keeping the barycenter:
    /// `x_i - (n-i)ε` for `i < n` and `x_n + n(n-1)ε/2`.
    pub fn strict_perturb(&self, eps: &S) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveEps);
        }
        let n = self.degree();
        let roots = self
            .roots
            .as_slice()
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if i + 1 < n {
                    x.clone() - S::from_i64((n - 1 - i) as i64) * eps.clone()
                } else {
                    x.clone() + S::from_i64((n * (n - 1) / 2) as i64) * eps.clone()
                }
            })
            .collect();
        HyperbolicPoly::from_roots(roots)
    }

    pub fn to_f64(&self) -> HyperbolicPoly<f64> {
        HyperbolicPoly {
            roots: self.roots.to_f64(),
        }
    }
}

impl HyperbolicPoly<f64> {
    /// Imports a real-rooted polynomial from coefficients (low degree first).
    pub fn from_coefficients(coeffs: &[f64], tol: Option<f64>) -> Result<Self> {
        HyperbolicPoly::from_tuple(crate::roots::real_roots(coeffs, tol)?)
    }

    pub fn to_rational(&self) -> Result<HyperbolicPoly<Rational>> {
        HyperbolicPoly::from_tuple(self.roots.to_rational()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn qi(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_i64(x)).collect()
    }

    #[test]
    fn from_roots_sorts_and_expands() {
        let p = HyperbolicPoly::from_roots(qi(&[3, 1, 2])).unwrap();
        assert_eq!(p.root_slice(), qi(&[1, 2, 3]).as_slice());
        assert_eq!(p.to_coefficients(), qi(&[-6, 11, -6, 1]));
        let x = HyperbolicPoly::from_roots(qi(&[0])).unwrap();
        assert_eq!(x.to_coefficients(), qi(&[0, 1]));
        let sq = HyperbolicPoly::from_roots(vec![q(5, 2), q(5, 2)]).unwrap();
        assert_eq!(sq.root_slice(), &[q(5, 2), q(5, 2)]);
        assert!(!sq.is_strict());
    }

    #[test]
    fn coefficient_edge_cases() {
        let zeros = HyperbolicPoly::from_roots(qi(&[0, 0, 0, 0])).unwrap();
        assert_eq!(zeros.to_coefficients(), qi(&[0, 0, 0, 0, 1]));
        let sym = HyperbolicPoly::from_roots(qi(&[-1, 1])).unwrap();
        assert_eq!(sym.to_coefficients(), qi(&[-1, 0, 1]));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(HyperbolicPoly::<f64>::from_roots(vec![]), Err(Error::EmptyTuple));
        assert_eq!(HyperbolicPoly::from_roots(vec![1.0, f64::NAN]), Err(Error::NonFinite));
        assert_eq!(HyperbolicPoly::from_roots(vec![f64::INFINITY]), Err(Error::NonFinite));
    }

    #[test]
    fn derivative_examples() {
        let p = HyperbolicPoly::from_roots(qi(&[0, 4])).unwrap();
        let d = p.derivative(None).unwrap();
        assert!((d.root_slice()[0] - 2.0).abs() < 1e-12);

        let p = HyperbolicPoly::from_roots(vec![1.5, 1.5]).unwrap();
        assert!((p.derivative(None).unwrap().root_slice()[0] - 1.5).abs() < 1e-12);

        let p = HyperbolicPoly::from_roots(qi(&[-1, 0, 1])).unwrap();
        let d = p.derivative(None).unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert!((d.root_slice()[0] + r).abs() < 1e-10);
        assert!((d.root_slice()[1] - r).abs() < 1e-10);

        let lin = HyperbolicPoly::from_roots(vec![1.0]).unwrap();
        assert!(matches!(lin.derivative(None), Err(Error::DegreeTooSmall { .. })));
    }

    #[test]
    fn taylor_shift_examples() {
        let p = HyperbolicPoly::from_roots(qi(&[1, 2])).unwrap();
        assert_eq!(
            p.taylor_shift(&Rational::from_i64(1)).root_slice(),
            qi(&[0, 1]).as_slice()
        );
        assert_eq!(p.taylor_shift(&Rational::from_i64(0)), p);
        let z = HyperbolicPoly::from_roots(qi(&[0])).unwrap();
        assert_eq!(
            z.taylor_shift(&Rational::from_i64(-3)).root_slice(),
            qi(&[3]).as_slice()
        );
    }

    #[test]
    fn strict_perturb_examples() {
        let one = Rational::from_i64(1);
        let p = HyperbolicPoly::from_roots(qi(&[0, 0])).unwrap();
        assert_eq!(p.strict_perturb(&one).unwrap().root_slice(), qi(&[-1, 1]).as_slice());
        let p = HyperbolicPoly::from_roots(qi(&[0, 0, 0])).unwrap();
        assert_eq!(
            p.strict_perturb(&one).unwrap().root_slice(),
            qi(&[-2, -1, 3]).as_slice()
        );
        assert_eq!(p.strict_perturb(&Rational::from_i64(0)), Err(Error::NonPositiveEps));
    }

    #[test]
    fn strict_perturb_converges() {
        let p = HyperbolicPoly::from_roots(vec![-1.0, 0.5, 0.5, 2.0]).unwrap();
        let mut last = f64::INFINITY;
        for k in 1..10 {
            let eps = 10f64.powi(-k);
            let pe = p.strict_perturb(&eps).unwrap();
            assert!(pe.is_strict());
            let dist = pe
                .root_slice()
                .iter()
                .zip(p.root_slice())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(dist < last);
            last = dist;
        }
        assert!(last < 1e-8);
    }

    #[test]
    fn strictness_report() {
        let p = HyperbolicPoly::from_roots(qi(&[0, 3, 4])).unwrap();
        let s = p.strictness();
        assert!(s.is_strict);
        assert_eq!(s.min_gap, Some(Rational::from_i64(1)));
        let single = HyperbolicPoly::from_roots(qi(&[7])).unwrap();
        assert!(single.strictness().is_strict);
        assert_eq!(single.strictness().min_gap, None);
    }
}
