//! Exact confirmation of suspected order violations.
//!
//! Float root finding only nominates candidates. A violation is confirmed
//! when rational enclosures of the roots, each certified by an exact sign
//! change, separate the partial sums: the `k` largest lower endpoints of one
//! image already exceed the `k` largest upper endpoints of the other.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::roots::squarefree_layers;
use crate::scalar::{format_rational, Rational, Scalar};

/// Closed rational interval holding a root (the exact root zero when
/// `lo == hi`).
#[derive(Clone, Debug, PartialEq)]
pub struct Enclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl Enclosure {
    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

fn exact(x: f64) -> Result<Rational> {
    Rational::from_f64(x).ok_or(Error::NonFinite)
}

fn sign_change(p: &Poly<Rational>, lo: &Rational, hi: &Rational) -> bool {
    let a = p.eval(lo);
    let b = p.eval(hi);
    (a.is_positive() && b.is_negative()) || (a.is_negative() && b.is_positive())
}

/// Certified enclosures of all roots with multiplicity, sorted. The
/// nonzero roots are isolated by exact sign changes on each square-free
/// layer; roots at zero are counted exactly from the low-order coefficients.
pub fn enclose_roots(p: &Poly<Rational>) -> Result<Vec<Enclosure>> {
    let p = p.monic()?;
    let zeros = p.zero_root_multiplicity();
    let rest = p.shift_down(zeros)?;
    let mut out: Vec<Enclosure> = (0..zeros)
        .map(|_| Enclosure {
            lo: Rational::zero(),
            hi: Rational::zero(),
        })
        .collect();
    if rest.degree().unwrap_or(0) > 0 {
        for layer in squarefree_layers(&rest) {
            out.extend(enclose_simple(&layer)?);
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

fn enclose_simple(p: &Poly<Rational>) -> Result<Vec<Enclosure>> {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return Ok(Vec::new());
    }
    let approx = crate::roots::real_roots_exact(p.coeffs(), Some(0.0))?.into_vec();
    let mut out = Vec::with_capacity(d);
    for (i, &r) in approx.iter().enumerate() {
        let left = if i > 0 { r - approx[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < d { approx[i + 1] - r } else { f64::INFINITY };
        let room = left.min(right) / 3.0;
        if room.is_nan() || room <= 0.0 {
            return Err(Error::NotRealRooted("clustered roots cannot be isolated".into()));
        }
        let mut found = None;
        for rel in [1e-12, 1e-9, 1e-6] {
            let delta = (rel * (1.0 + r.abs())).min(room);
            let (lo, hi) = (exact(r - delta)?, exact(r + delta)?);
            if sign_change(p, &lo, &hi) {
                found = Some(Enclosure { lo, hi });
                break;
            }
        }
        if found.is_none() {
            let (lo, hi) = (exact(r - room)?, exact(r + room)?);
            if sign_change(p, &lo, &hi) {
                found = Some(Enclosure { lo, hi });
            }
        }
        out.push(found.ok_or_else(|| Error::NotRealRooted(format!("no certified sign change near {r}")))?);
    }
    Ok(out)
}

/// True when every root is certified real.
pub fn certified_real_rooted(p: &Poly<Rational>) -> bool {
    enclose_roots(p).is_ok()
}

/// Exact outcome of comparing two operator images.
#[derive(Clone, Debug, PartialEq)]
pub enum Certification {
    /// `Z(q) ⊀ Z(p)` is proven.
    Violated(Value),
    /// `Z(q) ≺ Z(p)` is proven.
    Holds,
    /// Enclosures are too wide or roots too clustered to decide.
    Undecided(String),
}

fn top_k_sum<'a>(ends: impl Iterator<Item = &'a Rational>, k: usize) -> Rational {
    let mut v: Vec<&Rational> = ends.collect();
    v.sort();
    v.iter().rev().take(k).fold(Rational::zero(), |a, x| a + *x)
}

/// Decides `Z(q) ≺ Z(p)` for two monic-izable rational polynomials of the
/// same degree, using exact root sums and certified enclosures.
pub fn certify_order(q: &Poly<Rational>, p: &Poly<Rational>) -> Certification {
    let (Some(n), Some(np)) = (q.degree(), p.degree()) else {
        return Certification::Undecided("zero polynomial".into());
    };
    if n != np || n == 0 {
        return Certification::Undecided("degree mismatch".into());
    }
    let (Ok(qm), Ok(pm)) = (q.monic(), p.monic()) else {
        return Certification::Undecided("zero leading coefficient".into());
    };
    let sum_q = -qm.coeff(n - 1);
    let sum_p = -pm.coeff(n - 1);
    if sum_q != sum_p {
        return Certification::Violated(json!({
            "kind": "sum",
            "sum_q": format_rational(&sum_q),
            "sum_p": format_rational(&sum_p),
        }));
    }
    let (eq, ep) = match (enclose_roots(&qm), enclose_roots(&pm)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Certification::Undecided(e.to_string()),
    };
    let mut undecided = false;
    for k in 1..n {
        let lower_q = top_k_sum(eq.iter().map(|e| &e.lo), k);
        let upper_p = top_k_sum(ep.iter().map(|e| &e.hi), k);
        if lower_q > upper_p {
            return Certification::Violated(json!({
                "kind": "partial_sum",
                "k": k,
                "top_k_lower_bound_q": format_rational(&lower_q),
                "top_k_upper_bound_p": format_rational(&upper_p),
                "margin": (&lower_q - &upper_p).to_f64(),
                "enclosures_q": enclosures_json(&eq),
                "enclosures_p": enclosures_json(&ep),
            }));
        }
        let upper_q = top_k_sum(eq.iter().map(|e| &e.hi), k);
        let lower_p = top_k_sum(ep.iter().map(|e| &e.lo), k);
        if upper_q > lower_p {
            undecided = true;
        }
    }
    if undecided {
        Certification::Undecided("enclosures overlap at some partial sum".into())
    } else {
        Certification::Holds
    }
}

fn enclosures_json(e: &[Enclosure]) -> Value {
    Value::Array(
        e.iter()
            .map(|x| json!([format_rational(&x.lo), format_rational(&x.hi)]))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    fn from_roots(v: &[(i64, i64)]) -> Poly<Rational> {
        Poly::from_roots(&v.iter().map(|&(n, d)| q(n, d)).collect::<Vec<_>>())
    }

    #[test]
    fn enclosures_contain_roots() {
        let p = Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]); // x^2 - 2
        let e = enclose_roots(&p).unwrap();
        assert_eq!(e.len(), 2);
        let s = 2f64.sqrt();
        assert!(e[1].lo.to_f64() <= s && s <= e[1].hi.to_f64());
        assert!(e[0].width() < q(1, 1000));

        let z = from_roots(&[(0, 1), (0, 1), (3, 1)]);
        let e = enclose_roots(&z).unwrap();
        assert_eq!(
            e[0],
            Enclosure {
                lo: q(0, 1),
                hi: q(0, 1)
            }
        );
        assert_eq!(
            e[1],
            Enclosure {
                lo: q(0, 1),
                hi: q(0, 1)
            }
        );
    }

    #[test]
    fn repeated_roots_certify_but_complex_roots_fail() {
        let e = enclose_roots(&from_roots(&[(1, 1), (1, 1), (5, 2)])).unwrap();
        assert_eq!(e.len(), 3);
        assert!(e[0].lo < q(1, 1) && q(1, 1) < e[1].hi);
        assert!(certified_real_rooted(&from_roots(&[(1, 1), (1, 1)])));
        assert!(!certified_real_rooted(&Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)])));
        assert!(certified_real_rooted(&from_roots(&[(1, 3), (1, 2), (7, 1)])));
    }

    #[test]
    fn order_certificates() {
        let p = from_roots(&[(0, 1), (4, 1)]);
        let qq = from_roots(&[(1, 1), (3, 1)]);
        assert_eq!(certify_order(&qq, &p), Certification::Holds);
        assert!(matches!(certify_order(&p, &qq), Certification::Violated(_)));
        let shifted = from_roots(&[(1, 1), (4, 1)]);
        match certify_order(&shifted, &p) {
            Certification::Violated(v) => assert_eq!(v["kind"], "sum"),
            other => panic!("{other:?}"),
        }
        // irrational roots: x^2 - 2 against x^2 - 3
        let a = Poly::new(vec![q(-2, 1), q(0, 1), q(1, 1)]);
        let b = Poly::new(vec![q(-3, 1), q(0, 1), q(1, 1)]);
        assert_eq!(certify_order(&a, &b), Certification::Holds);
        assert!(matches!(certify_order(&b, &a), Certification::Violated(_)));
        // the n-fold root at the barycenter is below everything
        let flat = from_roots(&[(1, 1), (1, 1), (1, 1)]);
        let spread = from_roots(&[(0, 1), (1, 1), (2, 1)]);
        assert_eq!(certify_order(&flat, &spread), Certification::Holds);
        assert!(matches!(certify_order(&spread, &flat), Certification::Violated(_)));
    }
}
