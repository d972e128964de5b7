//! Wavefunctions, normalisation and densities of Demkov solutions.
//!
//! `Ψ = X(ξ) Y(η) cos(mφ)` in 3D and `Ψ = X(ξ) Y(η)` in 2D, where each
//! factor is a branch prefactor times the polynomial solution. Integrals
//! use the separable volume elements
//!
//! ```text
//! 3D: dV = (R/2)³ (ξ² - η²) dξ dη dφ
//! 2D: dA = 2 (R/2)² (ξ² - η²) / sqrt((ξ²-1)(1-η²)) dξ dη
//! ```
//!
//! The factor 2 in 2D is there because `(ξ, η)` covers each half-plane
//! `x2 > 0`, `x2 < 0` once.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quad::{integrate_finite, integrate_to_infinity};
use crate::reductions::GaugeFactor;

use super::search::DemkovSolution;
use super::Dim;

/// Relative accuracy for the normalisation integrals.
const NORM_TOL: f64 = 1e-12;

/// One separated factor `g(z) u(z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub gauge: GaugeFactor,
    /// Coefficients of `u` in powers of `(z+1)`.
    pub shifted: Vec<f64>,
}

impl Factor {
    fn poly(&self, z: f64) -> f64 {
        let t = z + 1.0;
        self.shifted.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    fn gauge_with(&self, z: f64, d_plus: f64, d_minus: f64) -> f64 {
        let g = &self.gauge;
        pow(d_plus, g.exp_plus) * pow(d_minus, g.exp_minus) * (g.exp_lin * z).exp()
    }

    pub fn eval(&self, z: f64) -> f64 {
        self.gauge_with(z, (z + 1.0).abs(), (z - 1.0).abs()) * self.poly(z)
    }

    /// Value from precomputed `|z+1|`, `|z-1|`.
    pub fn eval_with(&self, z: f64, d_plus: f64, d_minus: f64) -> f64 {
        self.gauge_with(z, d_plus, d_minus) * self.poly(z)
    }
}

fn pow(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.powf(p)
    }
}

/// `Ψ` as a callable.
#[derive(Clone, Debug, PartialEq)]
pub struct Wavefunction {
    pub dim: Dim,
    pub r: f64,
    pub m: u32,
    pub radial: Factor,
    pub angular: Factor,
}

pub fn assemble_wavefunction(sol: &DemkovSolution) -> Wavefunction {
    Wavefunction {
        dim: sol.config.dim,
        r: sol.r,
        m: sol.qn.m.unwrap_or(0),
        radial: Factor {
            gauge: sol.branch_r.prefactor(sol.r),
            shifted: sol.radial.shifted_coeffs().to_vec(),
        },
        angular: Factor {
            gauge: sol.branch_a.prefactor(sol.r),
            shifted: sol.angular.shifted_coeffs().to_vec(),
        },
    }
}

impl Wavefunction {
    /// `Ψ(ξ, η, φ)`; `φ` is ignored in 2D.
    pub fn eval_spheroidal(&self, xi: f64, eta: f64, phi: f64) -> Result<f64> {
        if !(xi >= 1.0) {
            return Err(Error::Domain(format!("ξ = {xi} < 1")));
        }
        if !(eta.abs() <= 1.0) {
            return Err(Error::Domain(format!("|η| = {} > 1", eta.abs())));
        }
        Ok(self.radial.eval(xi) * self.angular.eval(eta) * self.azimuthal(phi))
    }

    fn azimuthal(&self, phi: f64) -> f64 {
        match self.dim {
            Dim::Three if self.m > 0 => (self.m as f64 * phi).cos(),
            _ => 1.0,
        }
    }

    /// `(ξ, η, φ)` of a Cartesian point (`x1` along the axis, `Z1` at
    /// `x1 = R/2`). In 2D `φ` is 0.
    pub fn spheroidal_coords(&self, x: &[f64]) -> (f64, f64, f64) {
        let half = self.r / 2.0;
        let perp2: f64 = x[1..].iter().map(|v| v * v).sum();
        let r1 = ((x[0] - half).powi(2) + perp2).sqrt();
        let r2 = ((x[0] + half).powi(2) + perp2).sqrt();
        let xi = ((r1 + r2) / self.r).max(1.0);
        let eta = ((r2 - r1) / self.r).clamp(-1.0, 1.0);
        let phi = if x.len() == 3 { x[2].atan2(x[1]) } else { 0.0 };
        (xi, eta, phi)
    }

    /// Distances `(r1, r2)` to the two nuclei.
    pub fn distances(&self, x: &[f64]) -> (f64, f64) {
        let half = self.r / 2.0;
        let perp2: f64 = x[1..].iter().map(|v| v * v).sum();
        (
            ((x[0] - half).powi(2) + perp2).sqrt(),
            ((x[0] + half).powi(2) + perp2).sqrt(),
        )
    }

    pub fn eval_cartesian(&self, x: &[f64]) -> f64 {
        let (r1, r2) = self.distances(x);
        // ξ - 1 and 1 - η straight from the distances, without cancellation
        let xi = (r1 + r2) / self.r;
        let xi_m1 = ((r1 + r2 - self.r) / self.r).max(0.0);
        let eta = ((r2 - r1) / self.r).clamp(-1.0, 1.0);
        let one_m_eta = ((self.r - (r2 - r1)) / self.r).max(0.0);
        let one_p_eta = ((self.r + (r2 - r1)) / self.r).max(0.0);
        let phi = if x.len() == 3 { x[2].atan2(x[1]) } else { 0.0 };
        self.radial.eval_with(xi, xi + 1.0, xi_m1) * self.angular.eval_with(eta, one_p_eta, one_m_eta) * self.azimuthal(phi)
    }
}

/// `N² = ∫ |Ψ|²` over all space.
pub fn normalization(wf: &Wavefunction) -> Result<f64> {
    let decay = -wf.radial.gauge.exp_lin;
    if !(decay > 0.0) {
        return Err(Error::NotNormalizable(format!(
            "radial factor grows like e^({}ξ)",
            wf.radial.gauge.exp_lin
        )));
    }
    let planar = wf.dim == Dim::Two;
    let xi_int = |power: i32| {
        integrate_to_infinity(
            |xi, d| {
                let x = wf.radial.eval_with(xi, xi + 1.0, d);
                let w = if planar { 1.0 / (d * (xi + 1.0)).sqrt() } else { 1.0 };
                x * x * xi.powi(power) * w
            },
            1.0,
            1.0 / decay,
            NORM_TOL,
        )
        .value
    };
    let eta_int = |power: i32| {
        integrate_finite(
            |eta, dp, dm| {
                let y = wf.angular.eval_with(eta, dp, dm);
                let w = if planar { 1.0 / (dp * dm).sqrt() } else { 1.0 };
                y * y * eta.powi(power) * w
            },
            -1.0,
            1.0,
            NORM_TOL,
        )
        .value
    };
    let core = xi_int(2) * eta_int(0) - xi_int(0) * eta_int(2);
    let half = wf.r / 2.0;
    let n2 = match wf.dim {
        Dim::Three => {
            let phi = if wf.m == 0 { 2.0 * PI } else { PI };
            half.powi(3) * phi * core
        }
        Dim::Two => 2.0 * half * half * core,
    };
    if !(n2.is_finite() && n2 > 0.0) {
        return Err(Error::NotNormalizable(format!("N² = {n2}")));
    }
    Ok(n2)
}

/// Axis-aligned box sampled at `counts[i]` equispaced points per axis
/// (endpoints included).
#[derive(Clone, Debug, PartialEq)]
pub struct CartesianGrid {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub counts: Vec<usize>,
}

impl CartesianGrid {
    pub fn cube(dim: Dim, half_width: f64, count: usize) -> Self {
        let d = dim.as_int() as usize;
        Self {
            min: vec![-half_width; d],
            max: vec![half_width; d],
            counts: vec![count; d],
        }
    }

    pub fn axis(&self, i: usize) -> Vec<f64> {
        let n = self.counts[i];
        if n == 1 {
            return vec![0.5 * (self.min[i] + self.max[i])];
        }
        (0..n)
            .map(|k| self.min[i] + (self.max[i] - self.min[i]) * k as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major, last axis fastest.
    pub fn points(&self) -> Vec<Vec<f64>> {
        let axes: Vec<Vec<f64>> = (0..self.counts.len()).map(|i| self.axis(i)).collect();
        let mut out = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; axes.len()];
        for _ in 0..self.len() {
            out.push(idx.iter().enumerate().map(|(a, &k)| axes[a][k]).collect());
            for a in (0..axes.len()).rev() {
                idx[a] += 1;
                if idx[a] < axes[a].len() {
                    break;
                }
                idx[a] = 0;
            }
        }
        out
    }
}

/// `ρ = |Ψ|²/N²` on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityGrid {
    pub grid: CartesianGrid,
    pub points: Vec<Vec<f64>>,
    pub rho: Vec<f64>,
    pub norm2: f64,
}

impl DensityGrid {
    pub fn max(&self) -> f64 {
        self.rho.iter().copied().fold(0.0, f64::max)
    }

    /// Number of samples with `ρ > level`.
    pub fn count_above(&self, level: f64) -> usize {
        self.rho.iter().filter(|&&v| v > level).count()
    }
}

pub fn density_grid(sol: &DemkovSolution, grid: &CartesianGrid) -> Result<DensityGrid> {
    let d = sol.config.dim.as_int() as usize;
    if grid.min.len() != d || grid.max.len() != d || grid.counts.len() != d {
        return Err(Error::InvalidParameter(format!("grid must have {d} axes")));
    }
    if grid
        .min
        .iter()
        .chain(&grid.max)
        .any(|v| !v.is_finite())
    {
        return Err(Error::InvalidParameter("grid bounds must be finite".into()));
    }
    let wf = assemble_wavefunction(sol);
    let norm2 = normalization(&wf)?;
    let points = grid.points();
    let rho = points
        .iter()
        .map(|p| {
            let v = wf.eval_cartesian(p);
            v * v / norm2
        })
        .collect();
    Ok(DensityGrid {
        grid: grid.clone(),
        points,
        rho,
        norm2,
    })
}

/// `-Δ/2 Ψ - (Z1/r1 + Z2/r2) Ψ` at `x` by second-order central
/// differences with spacing `h`.
pub fn apply_hamiltonian(wf: &Wavefunction, z1: f64, z2: f64, x: &[f64], h: f64) -> f64 {
    let c = wf.eval_cartesian(x);
    let mut lap = 0.0;
    let mut y = x.to_vec();
    for i in 0..x.len() {
        y[i] = x[i] + h;
        let p = wf.eval_cartesian(&y);
        y[i] = x[i] - h;
        let m = wf.eval_cartesian(&y);
        y[i] = x[i];
        lap += (p - 2.0 * c + m) / (h * h);
    }
    let (r1, r2) = wf.distances(x);
    -0.5 * lap - (z1 / r1 + z2 / r2) * c
}

/// `‖HΨ - EΨ‖ / ‖Ψ‖` over a point cloud (discrete ℓ² norms).
pub fn hamiltonian_residual(wf: &Wavefunction, z1: f64, z2: f64, energy: f64, points: &[Vec<f64>], h: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for p in points {
        let v = wf.eval_cartesian(p);
        let r = apply_hamiltonian(wf, z1, z2, p, h) - energy * v;
        num += r * r;
        den += v * v;
    }
    (num / den).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_points_row_major() {
        let g = CartesianGrid {
            min: vec![0.0, 0.0],
            max: vec![1.0, 2.0],
            counts: vec![2, 3],
        };
        let p = g.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], vec![0.0, 0.0]);
        assert_eq!(p[1], vec![0.0, 1.0]);
        assert_eq!(p[3], vec![1.0, 0.0]);
    }

    #[test]
    fn hydrogen_like_factor_normalises() {
        // Ψ = e^{-(ξ - η) R/2}: with R = 2 this is e^{-r1}, a 1s orbital on
        // center 1; ∫ e^{-2 r} d³r = π
        let wf = Wavefunction {
            dim: Dim::Three,
            r: 2.0,
            m: 0,
            radial: Factor {
                gauge: GaugeFactor {
                    exp_plus: 0.0,
                    exp_minus: 0.0,
                    exp_lin: -1.0,
                },
                shifted: vec![1.0],
            },
            angular: Factor {
                gauge: GaugeFactor {
                    exp_plus: 0.0,
                    exp_minus: 0.0,
                    exp_lin: 1.0,
                },
                shifted: vec![1.0],
            },
        };
        assert!((normalization(&wf).unwrap() - PI).abs() < 1e-11);
        let v = wf.eval_cartesian(&[1.0 + 0.3, 0.4, 0.0]);
        assert!((v - (-0.5f64).exp()).abs() < 1e-14);
        // 1s with Z1 = 1, E = -1/2, no second nucleus
        let res = hamiltonian_residual(&wf, 1.0, 0.0, -0.5, &[vec![1.5, 0.7, -0.3]], 1e-3);
        assert!(res < 1e-5, "{res}");
    }
}
