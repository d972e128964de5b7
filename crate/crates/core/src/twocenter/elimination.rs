//! Real solutions of a pair of bivariate polynomial equations.
//!
//! `λ` is eliminated with the resultant `Res_λ(F1, F2)(R)`. Its values at
//! integer `R` are exact Sylvester determinants, and the polynomial is
//! recovered by exact Newton interpolation on enough nodes to cover the
//! degree bound `deg_λ F1 · deg_R F2 + deg_λ F2 · deg_R F1`. Real roots in
//! `R` come from a Sturm chain; `λ` is recovered at each root from the
//! univariate specialisations and polished by a guarded Newton step on the
//! full system.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, RationalPolynomial};
use crate::sturm;

use super::BiPoly;

/// Accepted when both relative residuals fall below this.
pub const RESIDUAL_TOL: f64 = 1e-10;
/// Solutions closer than this in both coordinates are merged.
pub const DEDUP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct JointSolution {
    /// `(λ, R)`, sorted by `R` then `λ`.
    pub pairs: Vec<(f64, f64)>,
    pub resultant: RationalPolynomial,
    /// Distinct real roots of the resultant.
    pub real_r_roots: Vec<f64>,
    /// Distinct non-real roots of the resultant (counted once per root).
    pub nonreal_r_roots: usize,
}

fn determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if piv != col {
            a.swap(piv, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &p;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// Sylvester resultant of two univariate polynomials with the given formal
/// degrees (leading coefficients may vanish).
fn sylvester(f: &RationalPolynomial, df: usize, g: &RationalPolynomial, dg: usize) -> BigRational {
    let size = df + dg;
    if size == 0 {
        return BigRational::one();
    }
    let mut rows = Vec::with_capacity(size);
    for (poly, deg, copies) in [(f, df, dg), (g, dg, df)] {
        for shift in 0..copies {
            let mut row = vec![BigRational::zero(); size];
            for k in 0..=deg {
                row[shift + k] = poly.coeff(deg - k);
            }
            rows.push(row);
        }
    }
    determinant(rows)
}

/// Exact interpolant through `(x_i, y_i)`.
fn newton_interpolate(xs: &[BigRational], ys: &[BigRational]) -> RationalPolynomial {
    let n = xs.len();
    let mut c = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    let mut p = Poly::constant(c[n - 1].clone());
    for i in (0..n - 1).rev() {
        p = &(&p * &Poly::linear(-xs[i].clone(), BigRational::one())) + &Poly::constant(c[i].clone());
    }
    p
}

/// `Res_λ(F1, F2)` as an exact polynomial in `R`.
pub fn resultant_lambda(f1: &BiPoly, f2: &BiPoly) -> RationalPolynomial {
    let d1 = f1.degree_lambda().unwrap_or(0);
    let d2 = f2.degree_lambda().unwrap_or(0);
    let bound = d1 * f2.degree_r().unwrap_or(0) + d2 * f1.degree_r().unwrap_or(0);
    let xs: Vec<BigRational> = (0..=bound as i64).map(|k| BigRational::from_integer(k.into())).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|r| sylvester(&f1.at_r(r), d1, &f2.at_r(r), d2))
        .collect();
    newton_interpolate(&xs, &ys)
}

fn newton_polish(f1: &BiPoly, f2: &BiPoly, lambda: f64, r: f64) -> (f64, f64) {
    let (j11, j12) = (f1.d_lambda(), f1.d_r());
    let (j21, j22) = (f2.d_lambda(), f2.d_r());
    let res = |l: f64, r: f64| f1.relative_residual(l, r).max(f2.relative_residual(l, r));
    let (mut l, mut rr) = (lambda, r);
    let mut best = res(l, rr);
    for _ in 0..8 {
        let (a, b, c, d) = (j11.eval(l, rr), j12.eval(l, rr), j21.eval(l, rr), j22.eval(l, rr));
        let det = a * d - b * c;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let (v1, v2) = (f1.eval(l, rr), f2.eval(l, rr));
        let dl = (d * v1 - b * v2) / det;
        let dr = (a * v2 - c * v1) / det;
        let (nl, nr) = (l - dl, rr - dr);
        // stay on the resultant root we started from
        if (nr - r).abs() > 1e-6 * r.abs().max(1.0) {
            break;
        }
        let nres = res(nl, nr);
        if !(nres < best) {
            break;
        }
        (l, rr, best) = (nl, nr, nres);
    }
    (l, rr)
}

fn lambda_candidates(f: &BiPoly, r: f64) -> Vec<f64> {
    let p = f.at_r_f64(r);
    let mut out = sturm::real_roots_f64(&p);
    // near-double roots can split off the real axis in floating point;
    // critical points of the specialisation catch them
    out.extend(sturm::real_roots_f64(&p.derivative()));
    out
}

pub fn joint_solve(f1: &BiPoly, f2: &BiPoly) -> Result<JointSolution> {
    if f1.is_zero() || f2.is_zero() {
        return Err(Error::InvalidParameter("joint_solve needs nonzero polynomials".into()));
    }
    if f1.degree_lambda() == Some(0) && f2.degree_lambda() == Some(0) {
        // neither equation constrains λ
        return Err(Error::EliminationDegenerate);
    }
    let res = resultant_lambda(f1, f2);
    if res.is_zero() {
        return Err(Error::EliminationDegenerate);
    }
    let sf = res.squarefree_part();
    let real_r_roots = sturm::real_roots(&sf);
    let nonreal_r_roots = sf.degree().unwrap_or(0) - real_r_roots.len();

    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for &r in &real_r_roots {
        let mut cands = lambda_candidates(f1, r);
        cands.extend(lambda_candidates(f2, r));
        for l0 in cands {
            let (l, rr) = newton_polish(f1, f2, l0, r);
            if f1.relative_residual(l, rr) < RESIDUAL_TOL && f2.relative_residual(l, rr) < RESIDUAL_TOL {
                pairs.push((l, rr));
            }
        }
    }
    pairs.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.0.total_cmp(&b.0)));
    pairs.dedup_by(|a, b| (a.0 - b.0).abs() <= DEDUP_TOL && (a.1 - b.1).abs() <= DEDUP_TOL);
    // dedup_by only merges neighbours; a second sweep catches interleaved copies
    let mut unique: Vec<(f64, f64)> = Vec::new();
    for p in pairs {
        if !unique
            .iter()
            .any(|u| (u.0 - p.0).abs() <= DEDUP_TOL && (u.1 - p.1).abs() <= DEDUP_TOL)
        {
            unique.push(p);
        }
    }
    Ok(JointSolution {
        pairs: unique,
        resultant: res,
        real_r_roots,
        nonreal_r_roots,
    })
}
