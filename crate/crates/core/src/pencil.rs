//! The pencil `P_λ = P - λP'` and the partial sums
//! `f_m(λ) = Σ_{i ≤ m} (x_i(λ) - λ)` of its root trajectories.
//!
//! For hyperbolic `P`, each `f_m` with `m < n` is nondecreasing on
//! `(-∞, 0]` and nonincreasing on `[0, ∞)`, and `f_n` is constant.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperbolic::{HyperbolicPoly, RootTuple};
use crate::majorization::{check_majorization, MajorizationCertificate};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `P - λP'`
pub fn pencil_poly<S: Scalar>(p: &Poly<S>, lambda: &S) -> Poly<S> {
    p.sub(&p.derivative().scale(lambda))
}

/// Roots of `P_λ` and of its derivative at one value of `λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilSample {
    pub lambda: f64,
    pub roots: Vec<f64>,
    pub critical: Vec<f64>,
    /// `f_1(λ), …, f_n(λ)`
    pub partial_sums: Vec<f64>,
}

impl PencilSample {
    /// `x_1 ≤ w_1 ≤ x_2 ≤ … ≤ w_{n-1} ≤ x_n` within `tol`.
    pub fn interlaces(&self, tol: f64) -> bool {
        self.critical
            .iter()
            .enumerate()
            .all(|(j, w)| self.roots[j] <= w + tol && *w <= self.roots[j + 1] + tol)
    }
}

fn roots_of<S: Scalar>(p: &Poly<S>, tol: Option<f64>) -> Result<Vec<f64>> {
    S::real_roots(p.monic()?.coeffs(), tol)
}

pub fn pencil_at<S: Scalar>(p: &HyperbolicPoly<S>, lambda: &S, tol: Option<f64>) -> Result<PencilSample> {
    let poly = p.to_poly();
    let pl = pencil_poly(&poly, lambda);
    let roots = if lambda.is_zero() {
        p.roots().to_f64().into_vec()
    } else {
        roots_of(&pl, tol)?
    };
    let critical = if p.degree() >= 2 {
        roots_of(&pl.derivative(), tol)?
    } else {
        Vec::new()
    };
    let lam = lambda.to_f64();
    let partial_sums = roots
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x - lam;
            Some(*acc)
        })
        .collect();
    Ok(PencilSample {
        lambda: lam,
        roots,
        critical,
        partial_sums,
    })
}

/// `n` evenly spaced points on `[-half_width, half_width]`; odd `n` puts
/// the middle point exactly at zero.
pub fn uniform_grid<S: Scalar>(half_width: &S, n: usize) -> Vec<S> {
    if n <= 1 {
        return vec![S::zero(); n];
    }
    let den = S::from_i64(n as i64 - 1);
    (0..n)
        .map(|i| half_width.clone() * S::from_i64(2 * i as i64 - (n as i64 - 1)) / den.clone())
        .collect()
}

/// 201 points over `[-L, L]` with `L = 1 + 2 · max |x_i|`.
pub fn default_grid<S: Scalar>(p: &HyperbolicPoly<S>) -> Vec<f64> {
    let l = 1.0 + 2.0 * p.roots().max_abs();
    uniform_grid(&l, 201)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneStat {
    pub m: usize,
    /// Largest increase on the right half-line or decrease on the left.
    pub worst_violation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotonicityReport {
    pub per_m: Vec<MonotoneStat>,
    pub worst_violation: f64,
    /// `max |f_n(λ) - f_n(0)|` over the grid.
    pub f_n_drift: f64,
    /// Largest second divided difference of any `f_m`; informational only.
    pub max_curvature: f64,
    /// Largest `|x_i(λ)|` seen, for scaling tolerances.
    pub root_scale: f64,
}

impl MonotonicityReport {
    pub fn passes(&self, slack: f64) -> bool {
        self.worst_violation <= slack
    }
}

/// Pencil samples over a grid, evaluated in parallel and returned in grid
/// order.
pub fn sample_grid<S: Scalar>(p: &HyperbolicPoly<S>, grid: &[S], tol: Option<f64>) -> Result<Vec<PencilSample>> {
    grid.par_iter().map(|l| pencil_at(p, l, tol)).collect()
}

/// Checks the monotone pattern of every `f_m`, `m < n`, on a sorted grid
/// containing zero.
pub fn scan_monotonicity<S: Scalar>(p: &HyperbolicPoly<S>, grid: &[S], tol: Option<f64>) -> Result<MonotonicityReport> {
    if grid.windows(2).any(|w| w[0] >= w[1]) || !grid.iter().any(|l| l.is_zero()) {
        return Err(Error::Config("grid must be strictly increasing and contain 0".into()));
    }
    let samples = sample_grid(p, grid, tol)?;
    Ok(monotonicity_from_samples(&samples, p.degree()))
}

pub fn monotonicity_from_samples(samples: &[PencilSample], n: usize) -> MonotonicityReport {
    let zero = samples.iter().position(|s| s.lambda == 0.0);
    let f_n0 = zero.map(|z| samples[z].partial_sums[n - 1]).unwrap_or(0.0);
    let f_n_drift = samples
        .iter()
        .map(|s| (s.partial_sums[n - 1] - f_n0).abs())
        .fold(0.0, f64::max);
    let root_scale = samples
        .iter()
        .flat_map(|s| s.roots.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    let mut per_m = Vec::new();
    let mut max_curvature = f64::NEG_INFINITY;
    for m in 1..n {
        let f: Vec<f64> = samples.iter().map(|s| s.partial_sums[m - 1]).collect();
        let mut worst = 0.0f64;
        for (w, pair) in samples.windows(2).zip(f.windows(2)) {
            let (la, lb) = (w[0].lambda, w[1].lambda);
            let v = if lb <= 0.0 {
                pair[0] - pair[1]
            } else if la >= 0.0 {
                pair[1] - pair[0]
            } else {
                0.0
            };
            worst = worst.max(v);
        }
        for i in 1..f.len().saturating_sub(1) {
            let h0 = samples[i].lambda - samples[i - 1].lambda;
            let h1 = samples[i + 1].lambda - samples[i].lambda;
            let dd = 2.0 * ((f[i + 1] - f[i]) / h1 - (f[i] - f[i - 1]) / h0) / (h0 + h1);
            max_curvature = max_curvature.max(dd);
        }
        per_m.push(MonotoneStat {
            m,
            worst_violation: worst,
        });
    }
    MonotonicityReport {
        worst_violation: per_m.iter().map(|s| s.worst_violation).fold(0.0, f64::max),
        per_m,
        f_n_drift,
        max_curvature: if max_curvature.is_finite() { max_curvature } else { 0.0 },
        root_scale,
    }
}

/// Certificate for `Z(Q - λQ') ≺ Z(P - λP')`. At `λ = 0` the stored roots
/// are compared directly, exactly in rational mode.
pub fn pencil_majorization_check<S: Scalar>(
    p: &HyperbolicPoly<S>,
    q: &HyperbolicPoly<S>,
    lambda: &S,
    tol: Option<f64>,
) -> Result<MajorizationCertificate<f64>> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch(p.degree(), q.degree()));
    }
    if lambda.is_zero() {
        return Ok(check_majorization(q.roots(), p.roots(), tol)?.to_f64());
    }
    let zp = RootTuple::new(roots_of(&pencil_poly(&p.to_poly(), lambda), None)?);
    let zq = RootTuple::new(roots_of(&pencil_poly(&q.to_poly(), lambda), None)?);
    check_majorization(&zq, &zp, tol)
}
