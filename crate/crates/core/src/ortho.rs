//! Orthogonality structures of the QES sector.
//!
//! In Sturm–Liouville form the CHEq reads
//! `((z²-1) ω u')' + (α/2)(z+1) ω u = q ω u` with
//! `ω(z) = (z+1)^{γ-1} (z-1)^{δ-1} e^{εz/2}`, so eigenfunctions with distinct
//! `q` at the same `n` are orthogonal with weight `ω` on every interval whose
//! endpoints kill the boundary term: both `(-1, 1)` and, for `ε < 0`,
//! `(1, ∞)`.
//!
//! The critical polynomials themselves are orthogonal with respect to a
//! discrete functional supported on the spectral roots:
//! `𝓛(P_k P_l) = Σ_j P_k(q_j) P_l(q_j) Ω_j = ν_k δ_kl`.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::cheq::{critical_sequence, CriticalPolynomialFamily, PolynomialSolution, SpectralRoots};
use crate::error::{Error, Result};
use crate::quad::{integrate_finite, integrate_to_infinity, QuadResult};
use crate::scalar::{rational_to_f64, Scalar};

/// Relative accuracy requested from the quadrature.
pub const QUAD_REL_TOL: f64 = 1e-12;

/// `ω(z) = (z+1)^{γ-1} (z-1)^{δ-1} e^{εz/2}`.
///
/// On `(-1, 1)` the factor `(z-1)^{δ-1}` is taken as `|z-1|^{δ-1}`, which
/// keeps the weight positive; the dropped phase `e^{iπ(δ-1)}` is constant and
/// irrelevant to orthogonality.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightFunction {
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl WeightFunction {
    pub fn new(gamma: f64, delta: f64, epsilon: f64) -> Self {
        Self { gamma, delta, epsilon }
    }

    pub fn for_solution(sol: &PolynomialSolution) -> Self {
        Self::new(sol.gamma, sol.delta, sol.epsilon)
    }

    /// `ω` from the distances `|z+1|` and `|z-1|`, avoiding cancellation
    /// near the endpoints.
    pub fn eval_with_distances(&self, z: f64, d_plus: f64, d_minus: f64) -> f64 {
        pow(d_plus, self.gamma - 1.0) * pow(d_minus, self.delta - 1.0) * (0.5 * self.epsilon * z).exp()
    }
}

fn pow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.powf(p)
    }
}

pub fn weight_eval(w: &WeightFunction, z: f64) -> Result<f64> {
    if (z == -1.0 && w.gamma < 1.0) || (z == 1.0 && w.delta < 1.0) {
        return Err(Error::SingularPoint { z });
    }
    Ok(w.eval_with_distances(z, (z + 1.0).abs(), (z - 1.0).abs()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Interval {
    /// `(-1, 1)`
    Inner,
    /// `(1, ∞)`
    Outer,
}

impl Interval {
    pub const BOTH: [Interval; 2] = [Interval::Inner, Interval::Outer];
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interval::Inner => write!(f, "(-1, 1)"),
            Interval::Outer => write!(f, "(1, inf)"),
        }
    }
}

/// `∫ f(z) g(z) ω(z) dz` over the interval, with the quadrature error
/// estimate and the scale `∫ |f g| ω`.
pub fn weighted_integral(
    f: impl Fn(f64) -> f64,
    w: &WeightFunction,
    interval: Interval,
) -> Result<QuadResult> {
    match interval {
        Interval::Inner => {
            if w.gamma <= 0.0 || w.delta <= 0.0 {
                return Err(Error::Divergent(format!(
                    "weight exponents γ-1 = {}, δ-1 = {} must exceed -1 on (-1, 1)",
                    w.gamma - 1.0,
                    w.delta - 1.0
                )));
            }
            Ok(integrate_finite(
                |z, dp, dm| f(z) * w.eval_with_distances(z, dp, dm),
                -1.0,
                1.0,
                QUAD_REL_TOL,
            ))
        }
        Interval::Outer => {
            if !(w.epsilon < 0.0) {
                return Err(Error::Divergent(format!(
                    "e^(εz/2) does not decay on (1, ∞) for ε = {}",
                    w.epsilon
                )));
            }
            if w.delta <= 0.0 {
                return Err(Error::Divergent(format!(
                    "weight exponent δ-1 = {} must exceed -1 at z = 1",
                    w.delta - 1.0
                )));
            }
            Ok(integrate_to_infinity(
                |z, dm| f(z) * w.eval_with_distances(z, z + 1.0, dm),
                1.0,
                2.0 / w.epsilon.abs(),
                QUAD_REL_TOL,
            ))
        }
    }
}

/// `∫ u_a u_b ω dz` over the interval.
pub fn double_orthogonality(
    a: &PolynomialSolution,
    b: &PolynomialSolution,
    w: &WeightFunction,
    interval: Interval,
) -> Result<f64> {
    weighted_integral(|z| a.eval(z) * b.eval(z), w, interval).map(|r| r.value)
}

/// `∫ u_a u_b ω / sqrt(∫ u_a² ω ∫ u_b² ω)`, the overlap normalised to the
/// two norms.
pub fn normalized_overlap(
    a: &PolynomialSolution,
    b: &PolynomialSolution,
    w: &WeightFunction,
    interval: Interval,
) -> Result<f64> {
    let ab = double_orthogonality(a, b, w, interval)?;
    let aa = double_orthogonality(a, a, w, interval)?;
    let bb = double_orthogonality(b, b, w, interval)?;
    Ok(ab / (aa * bb).sqrt())
}

/// `ν_k = ∏_{j=1}^{k} j ε (n-j+1) (γ+j-1)` for `k = 0..=n`.
pub fn nu_coefficients<T: Scalar>(family: &CriticalPolynomialFamily<T>) -> Vec<f64> {
    let n = family.n;
    let g = family.gamma.to_f64_lossy();
    let e = family.epsilon.to_f64_lossy();
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 1.0;
    out.push(acc);
    for j in 1..=n {
        let jf = j as f64;
        acc *= jf * e * (n as f64 - jf + 1.0) * (g + jf - 1.0);
        out.push(acc);
    }
    out
}

/// The discrete functional `𝓛(f) = Σ_j f(q_j) Ω_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentFunctional {
    pub roots: SpectralRoots,
    pub omegas: Vec<f64>,
    pub nus: Vec<f64>,
}

impl MomentFunctional {
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.roots
            .as_slice()
            .iter()
            .zip(&self.omegas)
            .map(|(&q, &w)| f(q) * w)
            .sum()
    }

    /// `Ω(q) = Σ_j Ω_j θ(q - q_j)`, right-continuous.
    pub fn step_measure(&self, q: f64) -> f64 {
        self.roots
            .as_slice()
            .iter()
            .zip(&self.omegas)
            .filter(|(&qj, _)| q >= qj)
            .map(|(_, &w)| w)
            .sum()
    }

    /// `max_k |Σ_j P_k(q_j) Ω_j - δ_k0|`.
    pub fn system_residual<T: Scalar>(&self, family: &CriticalPolynomialFamily<T>) -> f64 {
        self.residual_rows(family).iter().map(|r| r.0).fold(0.0, f64::max)
    }

    /// Componentwise backward error of the defining system,
    /// `max_k |Σ_j P_k(q_j) Ω_j - δ_k0| / (Σ_j |P_k(q_j) Ω_j| + δ_k0)`.
    /// Unlike [`MomentFunctional::system_residual`] it does not grow with the
    /// size of `P_k(q_j)`.
    pub fn system_backward_error<T: Scalar>(&self, family: &CriticalPolynomialFamily<T>) -> f64 {
        self.residual_rows(family)
            .iter()
            .map(|&(r, scale)| if scale > 0.0 { r / scale } else { r })
            .fold(0.0, f64::max)
    }

    fn residual_rows<T: Scalar>(&self, family: &CriticalPolynomialFamily<T>) -> Vec<(f64, f64)> {
        let table = value_table(family, &self.roots);
        (0..=family.n)
            .map(|k| {
                let delta = if k == 0 { 1.0 } else { 0.0 };
                let row: Vec<f64> = table.iter().map(|v| v[k]).collect();
                let a: f64 = row.iter().zip(&self.omegas).map(|(v, w)| (v * w).abs()).sum();
                ((dot2(&row, &self.omegas) - delta).abs(), a + delta)
            })
            .collect()
    }
}

/// Dot product in twice the working precision (error-free products via
/// `mul_add`, compensated sum).
fn dot2(x: &[f64], y: &[f64]) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for (&a, &b) in x.iter().zip(y) {
        let p = a * b;
        let pe = a.mul_add(b, -p);
        let t = s + p;
        let z = t - s;
        let se = (s - (t - z)) + (p - z);
        s = t;
        c += pe + se;
    }
    s + c
}

/// `P_k(q_j)` for `k = 0..=n`, one row per root, correctly rounded: the
/// recurrence runs exactly on the rational images of the stored parameters
/// and on the high-precision roots. Near a root of `P_{n+1}` the values of
/// the lower `P_k` are too sensitive to `q` for the rounded roots.
fn value_table<T: Scalar>(family: &CriticalPolynomialFamily<T>, roots: &SpectralRoots) -> Vec<Vec<f64>> {
    match family.exact_parameters() {
        Some((m, e, g)) if roots.exact().len() == roots.len() => roots
            .exact()
            .iter()
            .map(|q| {
                critical_sequence(q, &m, &e, &g, family.n, family.n + 1)
                    .iter()
                    .map(rational_to_f64)
                    .collect()
            })
            .collect(),
        _ => roots.as_slice().iter().map(|&q| family.values_at(q)).collect(),
    }
}

pub fn moment_functional<T: Scalar>(
    family: &CriticalPolynomialFamily<T>,
    roots: &SpectralRoots,
) -> Result<MomentFunctional> {
    let n = family.n;
    let q = roots.as_slice();
    if q.len() != n + 1 {
        return Err(Error::RootCountMismatch {
            expected: n + 1,
            found: q.len(),
        });
    }
    for w in q.windows(2) {
        if (w[1] - w[0]).abs() <= 1e-12 * w[0].abs().max(w[1].abs()).max(1.0) {
            return Err(Error::SingularSystem(format!("roots {} and {} coincide", w[0], w[1])));
        }
    }
    let table = value_table(family, roots);
    let nus = nu_coefficients(family);
    let a = DMatrix::from_fn(n + 1, n + 1, |k, j| table[j][k]);
    let lu = a.lu();
    let solve = |rhs: DVector<f64>| {
        lu.solve(&rhs)
            .filter(|x| x.iter().all(|v| v.is_finite()))
            .ok_or_else(|| Error::SingularSystem("matrix P_k(q_j) is not invertible".into()))
    };
    // Christoffel form of the solution, Ω_j = ν_n / (P_n(q_j) P'_{n+1}(q_j))
    // with P'_{n+1}(q_j) = Π_{i≠j} (q_j - q_i); elimination on this
    // Vandermonde-like matrix loses digits. Falls back to LU if it breaks
    // down.
    let gaps = |j: usize| -> f64 {
        if roots.exact().len() == q.len() {
            let ex = roots.exact();
            (0..=n)
                .filter(|&i| i != j)
                .map(|i| rational_to_f64(&(&ex[j] - &ex[i])))
                .product()
        } else {
            (0..=n).filter(|&i| i != j).map(|i| q[j] - q[i]).product()
        }
    };
    let christoffel: Vec<f64> = (0..=n).map(|j| nus[n] / (table[j][n] * gaps(j))).collect();
    let omegas = if christoffel.iter().all(|v| v.is_finite()) {
        christoffel
    } else {
        let mut rhs = DVector::zeros(n + 1);
        rhs[0] = 1.0;
        solve(rhs)?.iter().copied().collect()
    };
    Ok(MomentFunctional {
        roots: roots.clone(),
        omegas,
        nus,
    })
}

/// `max_{k,l ≤ n} |𝓛(P_k P_l) - ν_k δ_kl|`.
pub fn weak_orthogonality_check<T: Scalar>(
    mf: &MomentFunctional,
    family: &CriticalPolynomialFamily<T>,
) -> f64 {
    let table = value_table(family, &mf.roots);
    let mut worst = 0.0f64;
    for k in 0..=family.n {
        for l in 0..=family.n {
            let s: f64 = table
                .iter()
                .zip(&mf.omegas)
                .map(|(v, w)| v[k] * v[l] * w)
                .sum();
            let target = if k == l { mf.nus[k] } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cheq::{all_solutions, build_family, spectral_roots};

    #[test]
    fn weight_examples() {
        assert_eq!(weight_eval(&WeightFunction::new(1.0, 1.0, 0.0), 0.3).unwrap(), 1.0);
        assert_eq!(weight_eval(&WeightFunction::new(1.0, 1.0, -2.0), 0.0).unwrap(), 1.0);
        assert_eq!(weight_eval(&WeightFunction::new(2.0, 2.0, 0.0), 3.0).unwrap(), 8.0);
        assert!((weight_eval(&WeightFunction::new(1.0, 1.5, 0.0), 0.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(matches!(
            weight_eval(&WeightFunction::new(0.5, 1.0, 0.0), -1.0),
            Err(Error::SingularPoint { .. })
        ));
        assert_eq!(weight_eval(&WeightFunction::new(2.0, 1.0, 0.0), -1.0).unwrap(), 0.0);
    }

    #[test]
    fn nu_examples() {
        let f = build_family(1.0, 1.0, -2.0, 1);
        assert_eq!(nu_coefficients(&f), vec![1.0, -2.0]);
        let r = 0.7;
        let f = build_family(1.0, 1.0, -4.0 * r, 2);
        let nu = nu_coefficients(&f);
        assert!((nu[2] - 128.0 * r * r).abs() < 1e-12);
    }

    #[test]
    fn moment_functional_small() {
        let f = build_family(3.0, 1.0, 0.5, 0);
        let mf = moment_functional(&f, &spectral_roots(&f).unwrap()).unwrap();
        assert_eq!(mf.omegas, vec![1.0]);

        let f = build_family(1.0, 1.0, -2.0, 1);
        let roots = spectral_roots(&f).unwrap();
        let mf = moment_functional(&f, &roots).unwrap();
        assert!((mf.omegas.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(mf.apply(|q| q).abs() < 1e-13);
        assert!((mf.apply(|q| q * q) - mf.nus[1]).abs() < 1e-12);
        assert!(weak_orthogonality_check(&mf, &f) < 1e-10);
        assert_eq!(mf.step_measure(roots.q(1) - 1.0), 0.0);
        assert!((mf.step_measure(roots.q(2)) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn divergence_guards() {
        let f = build_family(1.0, 1.0, 2.0, 1);
        let s = all_solutions(&f).unwrap();
        let w = WeightFunction::for_solution(&s[0]);
        assert!(matches!(
            double_orthogonality(&s[0], &s[1], &w, Interval::Outer),
            Err(Error::Divergent(_))
        ));
        assert!(double_orthogonality(&s[0], &s[1], &w, Interval::Inner).unwrap().abs() < 1e-10);
    }

    #[test]
    fn distinct_roots_orthogonal_on_both_intervals() {
        let f = build_family(1.5, 1.5, -2.0, 2);
        let s = all_solutions(&f).unwrap();
        let w = WeightFunction::for_solution(&s[0]);
        for iv in Interval::BOTH {
            for a in 0..3 {
                for b in 0..3 {
                    let v = normalized_overlap(&s[a], &s[b], &w, iv).unwrap();
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((v - want).abs() < 1e-9, "{iv} {a} {b} {v}");
                }
            }
        }
    }
}
