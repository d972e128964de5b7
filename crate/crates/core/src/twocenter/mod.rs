//! Demkov's elementary eigenfunctions of the two-fixed-centers Coulomb
//! problem.
//!
//! A particle of unit mass and charge sees nuclei of charges `Z1` at
//! `(R/2, 0, 0)` and `Z2` at `(-R/2, 0, 0)`:
//!
//! ```text
//! H = -Δ/2 - Z1/r1 - Z2/r2.
//! ```
//!
//! In (prolate) spheroidal coordinates `ξ = (r1+r2)/R`, `η = (r2-r1)/R` the
//! equation separates into a radial equation in `ξ ∈ (1, ∞)` and an angular
//! one in `η ∈ (-1, 1)`, each a confluent Heun equation. A Demkov solution
//! is a pair of QES polynomial solutions sharing the energy `E`, the
//! separation constant `λ` and the distance `R`. The shared energy forces
//! the diophantine condition `(Z1+Z2)²/n1² = (Z1-Z2)²/n2²`; the shared `λ`
//! and `R` come from a polynomial system in `(λ, R)`.

pub mod bipoly;
pub mod branch;
pub mod elimination;
pub mod search;
pub mod wavefunction;

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use bipoly::BiPoly;
pub use branch::{
    branch_cheq_params, compatibility_polynomials, hydrogenoid_energy, select_root_pairing, BranchKind,
    BranchSpec, Side,
};
pub use elimination::{joint_solve, JointSolution};
pub use search::{demkov_search, demkov_search_for, Candidate, CandidateOutcome, DemkovSolution, SearchReport};
pub use wavefunction::{
    assemble_wavefunction, density_grid, hamiltonian_residual, normalization, CartesianGrid, DensityGrid,
    Wavefunction,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    pub fn from_int(d: u32) -> Result<Dim> {
        match d {
            2 => Ok(Dim::Two),
            3 => Ok(Dim::Three),
            _ => Err(Error::InvalidParameter(format!("dimension must be 2 or 3, got {d}"))),
        }
    }

    pub fn as_int(self) -> u32 {
        match self {
            Dim::Two => 2,
            Dim::Three => 3,
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}D", self.as_int())
    }
}

/// Charges and dimension. `Z1` sits at `x1 = +R/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct CenterConfig {
    pub z1: BigRational,
    pub z2: BigRational,
    pub dim: Dim,
}

impl CenterConfig {
    /// Both charges must be positive. The search works with `Z1 ≥ Z2`; see
    /// [`CenterConfig::normalized`].
    pub fn new(z1: BigRational, z2: BigRational, dim: Dim) -> Result<Self> {
        if !z1.is_positive() || !z2.is_positive() {
            return Err(Error::InvalidParameter(format!(
                "charges must be positive, got Z1 = {z1}, Z2 = {z2}"
            )));
        }
        Ok(Self { z1, z2, dim })
    }

    pub fn from_ints(z1: i64, z2: i64, dim: Dim) -> Result<Self> {
        Self::new(BigRational::from_integer(z1.into()), BigRational::from_integer(z2.into()), dim)
    }

    /// The configuration with the larger charge first, and whether the
    /// charges were swapped. Swapping the charges is the reflection
    /// `x1 → -x1`, i.e. `η → -η`.
    pub fn normalized(&self) -> (CenterConfig, bool) {
        if self.z1 >= self.z2 {
            (self.clone(), false)
        } else {
            (
                CenterConfig {
                    z1: self.z2.clone(),
                    z2: self.z1.clone(),
                    dim: self.dim,
                },
                true,
            )
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.z1 == self.z2
    }

    pub fn z_sum(&self) -> BigRational {
        &self.z1 + &self.z2
    }

    /// `Z2 - Z1`, the charge combination entering the angular equation.
    pub fn z_diff(&self) -> BigRational {
        &self.z2 - &self.z1
    }

    pub fn z1_f64(&self) -> f64 {
        self.z1.to_f64().unwrap_or(f64::NAN)
    }

    pub fn z2_f64(&self) -> f64 {
        self.z2.to_f64().unwrap_or(f64::NAN)
    }
}

/// `n1`, `n2` label the radial and angular hydrogenoid energies; `m` is the
/// azimuthal number (3D only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantumNumbers {
    pub n1: u32,
    pub n2: u32,
    pub m: Option<u32>,
}

impl QuantumNumbers {
    pub fn planar(n1: u32, n2: u32) -> Self {
        Self { n1, n2, m: None }
    }

    pub fn spatial(n1: u32, n2: u32, m: u32) -> Self {
        Self { n1, n2, m: Some(m) }
    }

    /// `n^r = n1 - |m| - 1` (3D).
    pub fn n_radial(&self) -> Option<usize> {
        let m = self.m?;
        (self.n1 > m).then(|| (self.n1 - m - 1) as usize)
    }

    /// `n^a = n2 - |m| - 1` (3D).
    pub fn n_angular(&self) -> Option<usize> {
        let m = self.m?;
        (self.n2 > m).then(|| (self.n2 - m - 1) as usize)
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            Some(m) => write!(f, "(n1={}, n2={}, m={m})", self.n1, self.n2),
            None => write!(f, "(n1={}, n2={})", self.n1, self.n2),
        }
    }
}

/// All `(n1, n2)` in `1..=n_max` with `(Z1+Z2)² n2² = (Z1-Z2)² n1²`, checked
/// exactly; in 3D every pair is expanded over `0 ≤ m ≤ min(n1, n2) - 1`.
///
/// Returns nothing when `Z1 = Z2`: the angular energy vanishes and no `n1`
/// satisfies the condition.
pub fn diophantine_enumerate(config: &CenterConfig, n_max: u32) -> Vec<QuantumNumbers> {
    let (c, _) = config.normalized();
    let sum = c.z_sum();
    let diff = c.z_diff();
    if diff.is_zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for n1 in 1..=n_max {
        for n2 in 1..=n_max {
            let lhs = &sum * &sum * BigRational::from_integer((n2 * n2).into());
            let rhs = &diff * &diff * BigRational::from_integer((n1 * n1).into());
            if lhs != rhs {
                continue;
            }
            match c.dim {
                Dim::Two => out.push(QuantumNumbers::planar(n1, n2)),
                Dim::Three => {
                    for m in 0..n1.min(n2) {
                        out.push(QuantumNumbers::spatial(n1, n2, m));
                    }
                }
            }
        }
    }
    out
}
