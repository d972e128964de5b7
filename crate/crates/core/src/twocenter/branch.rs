//! The radial and angular equations as QES confluent Heun equations.
//!
//! Every branch fixes `γ`, `δ`, the degree `n` and a rational `e` with
//! `ε = e R`; the accessory parameter is `q = offset(R) - λ` with `offset` a
//! rational polynomial in `R`:
//!
//! * 3D (`γ = δ = |m|+1`, `N = n1` or `n2`): `e = -2 Zc / N`,
//!   `offset = -n ε/2 - |m|(|m|+1)`;
//! * 2D (`γ, δ` from the case, `s = γ+δ`, `N = 2n + s`): `e = -4 Zc / N`,
//!   `offset = ε²/16 + ε(γ-δ)/4 - s(s-2)/4 - n ε/2 - 1/4`;
//!
//! with `Zc = Z1+Z2` (radial, `z = ξ`) or `Zc = Z2-Z1` (angular, `z = η`).

use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cheq::{build_family, critical_sequence, CheqParams, CriticalPolynomialFamily};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalPolynomial};
use crate::reductions::{rwh_gauge, Case2d, GaugeFactor};
use crate::scalar::ratio;
use crate::sturm;

use super::{BiPoly, CenterConfig, Dim, QuantumNumbers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Radial,
    Angular,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Radial => write!(f, "radial"),
            Side::Angular => write!(f, "angular"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BranchKind {
    Radial3D,
    Angular3D,
    Radial2D,
    Angular2D,
}

impl BranchKind {
    pub fn new(side: Side, dim: Dim) -> Self {
        match (side, dim) {
            (Side::Radial, Dim::Three) => BranchKind::Radial3D,
            (Side::Angular, Dim::Three) => BranchKind::Angular3D,
            (Side::Radial, Dim::Two) => BranchKind::Radial2D,
            (Side::Angular, Dim::Two) => BranchKind::Angular2D,
        }
    }

    pub fn side(self) -> Side {
        match self {
            BranchKind::Radial3D | BranchKind::Radial2D => Side::Radial,
            BranchKind::Angular3D | BranchKind::Angular2D => Side::Angular,
        }
    }

    pub fn dim(self) -> Dim {
        match self {
            BranchKind::Radial3D | BranchKind::Angular3D => Dim::Three,
            BranchKind::Radial2D | BranchKind::Angular2D => Dim::Two,
        }
    }
}

/// One separated equation of a candidate solution.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchSpec {
    pub kind: BranchKind,
    pub case2d: Option<Case2d>,
    pub qn: QuantumNumbers,
    pub config: CenterConfig,
}

fn rat(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

impl BranchSpec {
    pub fn new(kind: BranchKind, case2d: Option<Case2d>, qn: QuantumNumbers, config: CenterConfig) -> Result<Self> {
        if kind.dim() != config.dim {
            return Err(Error::InvalidCase(format!("{kind:?} branch for a {} configuration", config.dim)));
        }
        let spec = Self {
            kind,
            case2d,
            qn,
            config,
        };
        match kind.dim() {
            Dim::Three => {
                if case2d.is_some() {
                    return Err(Error::InvalidCase("3D branches take no planar case".into()));
                }
                let Some(m) = qn.m else {
                    return Err(Error::InvalidCase("3D branches need m".into()));
                };
                if m >= spec.principal() {
                    return Err(Error::InvalidCase(format!(
                        "|m| = {m} exceeds {} - 1 on the {} side",
                        spec.principal(),
                        kind.side()
                    )));
                }
            }
            Dim::Two => {
                let Some(case) = case2d else {
                    return Err(Error::InvalidCase("2D branches need a case a-d".into()));
                };
                if qn.m.is_some() {
                    return Err(Error::InvalidCase("2D branches carry no m".into()));
                }
                let (big_n, s) = (spec.principal(), case.gamma_plus_delta());
                if big_n < s || (big_n - s) % 2 != 0 {
                    return Err(Error::InvalidCase(format!(
                        "case {case} needs {} = 2n + {s} for some n >= 0",
                        big_n
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn side(&self) -> Side {
        self.kind.side()
    }

    /// `n1` (radial) or `n2` (angular).
    pub fn principal(&self) -> u32 {
        match self.side() {
            Side::Radial => self.qn.n1,
            Side::Angular => self.qn.n2,
        }
    }

    /// Degree of the polynomial factor.
    pub fn n(&self) -> usize {
        match (self.kind.dim(), self.case2d) {
            (Dim::Three, _) => (self.principal() - self.qn.m.unwrap_or(0) - 1) as usize,
            (Dim::Two, Some(c)) => ((self.principal() - c.gamma_plus_delta()) / 2) as usize,
            (Dim::Two, None) => unreachable!("validated on construction"),
        }
    }

    pub fn gamma(&self) -> BigRational {
        match self.case2d {
            Some(c) => ratio((2.0 * c.gamma()) as i64, 2),
            None => rat(self.qn.m.unwrap_or(0) as i64 + 1),
        }
    }

    pub fn delta(&self) -> BigRational {
        match self.case2d {
            Some(c) => ratio((2.0 * c.delta()) as i64, 2),
            None => rat(self.qn.m.unwrap_or(0) as i64 + 1),
        }
    }

    /// `Zc`: `Z1 + Z2` radially, `Z2 - Z1` in the angular equation.
    pub fn charge(&self) -> BigRational {
        match self.side() {
            Side::Radial => self.config.z_sum(),
            Side::Angular => self.config.z_diff(),
        }
    }

    /// `e` with `ε = e R`.
    pub fn epsilon_coeff(&self) -> BigRational {
        let k = match self.kind.dim() {
            Dim::Three => -2,
            Dim::Two => -4,
        };
        self.charge() * rat(k) / rat(self.principal() as i64)
    }

    pub fn epsilon(&self, r: f64) -> f64 {
        self.epsilon_coeff().to_f64().unwrap_or(f64::NAN) * r
    }

    /// `offset(R)` with `q = offset(R) - λ`.
    pub fn offset(&self) -> RationalPolynomial {
        let e = self.epsilon_coeff();
        let n = rat(self.n() as i64);
        let two = rat(2);
        match self.kind.dim() {
            Dim::Three => {
                let m = rat(self.qn.m.unwrap_or(0) as i64);
                Poly::new(vec![-(&m * (&m + rat(1))), -(&n * &e) / &two])
            }
            Dim::Two => {
                let (g, d) = (self.gamma(), self.delta());
                let s = &g + &d;
                let c0 = -(&s * (&s - &two)) / rat(4) - ratio(1, 4);
                let c1 = &e * (&g - &d) / rat(4) - &n * &e / &two;
                let c2 = &e * &e / rat(16);
                Poly::new(vec![c0, c1, c2])
            }
        }
    }

    pub fn q_of(&self, lambda: f64, r: f64) -> f64 {
        self.offset().to_f64().eval(&r) - lambda
    }

    /// Separation constant from the accessory parameter, `λ = offset(R) - q`.
    pub fn lambda_of(&self, q: f64, r: f64) -> f64 {
        self.offset().to_f64().eval(&r) - q
    }

    /// `q(λ, R)` as a bivariate polynomial.
    pub fn q_bipoly(&self) -> BiPoly {
        &BiPoly::in_r(self.offset()) - &BiPoly::lambda()
    }

    /// `P_{n+1}(q(λ, R))` with the `R`-dependence of `ε` carried through
    /// the recurrence coefficients.
    pub fn compatibility_polynomial(&self) -> BiPoly {
        let eps = BiPoly::in_r(Poly::new(vec![BigRational::zero(), self.epsilon_coeff()]));
        let g = BiPoly::constant(self.gamma());
        let m = &BiPoly::constant(self.gamma() + self.delta()) - &eps;
        let n = self.n();
        critical_sequence(&self.q_bipoly(), &m, &eps, &g, n, n + 1)
            .pop()
            .expect("sequence has n + 2 entries")
    }

    /// Exact hydrogenoid energy: `-Zc²/(2N²)` in 3D, `-2Zc²/N²` in 2D.
    pub fn energy_exact(&self) -> BigRational {
        let zc = self.charge();
        let big_n = rat(self.principal() as i64);
        let k = match self.kind.dim() {
            Dim::Three => ratio(-1, 2),
            Dim::Two => rat(-2),
        };
        k * &zc * &zc / (&big_n * &big_n)
    }

    pub fn cheq_params(&self, lambda: f64, r: f64) -> Result<CheqParams> {
        let eps = self.epsilon(r);
        CheqParams::new(
            -(self.n() as f64) * eps,
            self.gamma().to_f64().unwrap_or(f64::NAN),
            self.delta().to_f64().unwrap_or(f64::NAN),
            eps,
            self.q_of(lambda, r),
        )
    }

    /// Critical polynomials in `q` at a fixed `R`.
    pub fn family_at(&self, r: f64) -> CriticalPolynomialFamily<f64> {
        build_family(
            self.gamma().to_f64().unwrap_or(f64::NAN),
            self.delta().to_f64().unwrap_or(f64::NAN),
            self.epsilon(r),
            self.n(),
        )
    }

    /// Factor multiplying the polynomial `u(z)` in the separated
    /// wavefunction: `(z²-1)^{|m|/2} e^{εz/4}` in 3D, and in 2D the inverse
    /// of the Razavy/Whittaker–Hill gauge,
    /// `(z+1)^{(2γ-1)/4} (z-1)^{(2δ-1)/4} e^{εz/4}` (absolute values inside).
    pub fn prefactor(&self, r: f64) -> GaugeFactor {
        let eps = self.epsilon(r);
        match self.kind.dim() {
            Dim::Three => {
                let h = self.qn.m.unwrap_or(0) as f64 / 2.0;
                GaugeFactor {
                    exp_plus: h,
                    exp_minus: h,
                    exp_lin: eps / 4.0,
                }
            }
            Dim::Two => {
                let p = self.cheq_params(0.0, r).expect("finite parameters");
                rwh_gauge(&p).inverse()
            }
        }
    }

    pub fn label(&self) -> String {
        match self.case2d {
            Some(c) => format!("{} {} case {c}", self.side(), self.kind.dim()),
            None => format!("{} {}", self.side(), self.kind.dim()),
        }
    }
}

pub fn branch_cheq_params(branch: &BranchSpec, lambda: f64, r: f64) -> Result<CheqParams> {
    branch.cheq_params(lambda, r)
}

pub fn hydrogenoid_energy(branch: &BranchSpec) -> f64 {
    branch.energy_exact().to_f64().unwrap_or(f64::NAN)
}

/// `(F_r, F_a)`; the two branches must describe the same configuration and
/// have the same energy.
pub fn compatibility_polynomials(radial: &BranchSpec, angular: &BranchSpec) -> Result<(BiPoly, BiPoly)> {
    if radial.side() != Side::Radial || angular.side() != Side::Angular {
        return Err(Error::InvalidCase("expected a radial and an angular branch".into()));
    }
    if radial.config != angular.config || radial.qn != angular.qn {
        return Err(Error::InvalidCase("branches describe different configurations".into()));
    }
    if radial.energy_exact() != angular.energy_exact() {
        return Err(Error::InvalidCase(format!(
            "radial energy {} differs from angular energy {}",
            radial.energy_exact(),
            angular.energy_exact()
        )));
    }
    Ok((radial.compatibility_polynomial(), angular.compatibility_polynomial()))
}

/// 1-based index (among the real roots of `P_{n+1}` at this `R`) of the
/// root that maps to `λ`, together with the root itself.
pub fn matching_root(branch: &BranchSpec, lambda: f64, r: f64) -> Result<(usize, f64)> {
    let family = branch.family_at(r);
    let target = branch.q_of(lambda, r);
    let roots = match family.exact_critical() {
        Some(p) => sturm::real_roots(&p),
        None => Vec::new(),
    };
    let scale = roots.iter().fold(target.abs().max(1.0), |m, q| m.max(q.abs()));
    let hits: Vec<(usize, f64)> = roots
        .iter()
        .enumerate()
        .filter(|(_, &q)| (q - target).abs() <= 1e-8 * scale)
        .map(|(i, &q)| (i + 1, q))
        .collect();
    match hits.len() {
        0 => Err(Error::NoMatchingRoot { lambda }),
        1 => Ok(hits[0]),
        count => Err(Error::AmbiguousRoot { lambda, count }),
    }
}

/// Root indices `(j_r, j_a)` compatible with `(λ, R)`.
pub fn select_root_pairing(radial: &BranchSpec, angular: &BranchSpec, lambda: f64, r: f64) -> Result<(usize, usize)> {
    let (jr, _) = matching_root(radial, lambda, r)?;
    let (ja, _) = matching_root(angular, lambda, r)?;
    Ok((jr, ja))
}
