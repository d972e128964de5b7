//! The full search: quantum numbers → branch pairs → `(λ, R)` → solutions.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cheq::{build_solution, PolynomialSolution};
use crate::error::{Error, Result};
use crate::reductions::Case2d;

use super::branch::{compatibility_polynomials, matching_root, BranchKind, BranchSpec, Side};
use super::elimination::joint_solve;
use super::{diophantine_enumerate, BiPoly, CenterConfig, Dim, QuantumNumbers};

/// Smallest intercenter distance treated as physical.
pub const MIN_DISTANCE: f64 = 1e-9;
/// Allowed disagreement between the `λ` recovered from the two roots.
pub const LAMBDA_TOL: f64 = 1e-10;

/// An elementary eigenfunction with everything needed to rebuild it.
#[derive(Clone, Debug, PartialEq)]
pub struct DemkovSolution {
    pub config: CenterConfig,
    pub qn: QuantumNumbers,
    pub case_r: Option<Case2d>,
    pub case_a: Option<Case2d>,
    pub energy: f64,
    pub energy_exact: BigRational,
    pub lambda: f64,
    pub r: f64,
    pub radial: PolynomialSolution,
    pub angular: PolynomialSolution,
    pub q_r: f64,
    pub q_a: f64,
    pub branch_r: BranchSpec,
    pub branch_a: BranchSpec,
}

impl DemkovSolution {
    /// Build from a common zero `(λ, R)` of the two compatibility
    /// polynomials.
    pub fn from_pair(branch_r: &BranchSpec, branch_a: &BranchSpec, lambda: f64, r: f64) -> Result<Self> {
        if !(r > MIN_DISTANCE) {
            return Err(Error::InvalidParameter(format!("R = {r} is not a positive distance")));
        }
        let (j_r, q_r) = matching_root(branch_r, lambda, r)?;
        let (j_a, q_a) = matching_root(branch_a, lambda, r)?;
        let lr = branch_r.lambda_of(q_r, r);
        let la = branch_a.lambda_of(q_a, r);
        if (lr - la).abs() > LAMBDA_TOL * lr.abs().max(1.0) {
            return Err(Error::NoMatchingRoot { lambda });
        }
        let mut radial = build_solution(&branch_r.family_at(r), q_r)?;
        radial.j = j_r;
        let mut angular = build_solution(&branch_a.family_at(r), q_a)?;
        angular.j = j_a;
        let energy_exact = branch_r.energy_exact();
        Ok(Self {
            config: branch_r.config.clone(),
            qn: branch_r.qn,
            case_r: branch_r.case2d,
            case_a: branch_a.case2d,
            energy: energy_exact.to_f64().unwrap_or(f64::NAN),
            energy_exact,
            lambda,
            r,
            radial,
            angular,
            q_r,
            q_a,
            branch_r: branch_r.clone(),
            branch_a: branch_a.clone(),
        })
    }

    /// `(E, λ, R)`.
    pub fn triple(&self) -> (f64, f64, f64) {
        (self.energy, self.lambda, self.r)
    }

    /// 1-based root indices `(j_r, j_a)`.
    pub fn root_indices(&self) -> (usize, usize) {
        (self.radial.j, self.angular.j)
    }
}

/// A radial/angular pair to try.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub radial: BranchSpec,
    pub angular: BranchSpec,
}

impl Candidate {
    pub fn label(&self) -> String {
        format!("{} {} / {}", self.radial.qn, self.radial.label(), self.angular.label())
    }
}

/// A common zero that did not become a solution, and why.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejected {
    pub lambda: f64,
    pub r: f64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateOutcome {
    pub candidate: Candidate,
    pub f_radial: BiPoly,
    pub f_angular: BiPoly,
    pub solutions: Vec<DemkovSolution>,
    pub rejected: Vec<Rejected>,
    /// Non-real roots of the resultant in `R`.
    pub nonreal_r_roots: usize,
    pub error: Option<Error>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchReport {
    pub config: CenterConfig,
    pub n_max: u32,
    /// Physical solutions sorted by `(n1, n2, m, R)`.
    pub solutions: Vec<DemkovSolution>,
    pub outcomes: Vec<CandidateOutcome>,
    pub notes: Vec<String>,
}

/// Radial/angular branch pairs for one set of quantum numbers. In 2D the
/// case on each side must match the parity of `n1` (resp. `n2`): `a`, `b`
/// need it odd, `c`, `d` even.
pub fn candidates(config: &CenterConfig, qn: QuantumNumbers) -> Vec<Candidate> {
    let make = |side: Side, case: Option<Case2d>| {
        BranchSpec::new(BranchKind::new(side, config.dim), case, qn, config.clone()).ok()
    };
    let cases: Vec<Option<Case2d>> = match config.dim {
        Dim::Three => vec![None],
        Dim::Two => Case2d::ALL.iter().map(|&c| Some(c)).collect(),
    };
    let mut out = Vec::new();
    for &cr in &cases {
        for &ca in &cases {
            if let (Some(radial), Some(angular)) = (make(Side::Radial, cr), make(Side::Angular, ca)) {
                out.push(Candidate { radial, angular });
            }
        }
    }
    out
}

fn run_candidate(c: Candidate) -> CandidateOutcome {
    let (f_radial, f_angular) = match compatibility_polynomials(&c.radial, &c.angular) {
        Ok(p) => p,
        Err(e) => {
            return CandidateOutcome {
                candidate: c,
                f_radial: BiPoly::zero(),
                f_angular: BiPoly::zero(),
                solutions: Vec::new(),
                rejected: Vec::new(),
                nonreal_r_roots: 0,
                error: Some(e),
            }
        }
    };
    let mut out = CandidateOutcome {
        candidate: c,
        f_radial,
        f_angular,
        solutions: Vec::new(),
        rejected: Vec::new(),
        nonreal_r_roots: 0,
        error: None,
    };
    let joint = match joint_solve(&out.f_radial, &out.f_angular) {
        Ok(j) => j,
        Err(e) => {
            out.error = Some(e);
            return out;
        }
    };
    out.nonreal_r_roots = joint.nonreal_r_roots;
    for (lambda, r) in joint.pairs {
        if !(r > MIN_DISTANCE) {
            out.rejected.push(Rejected {
                lambda,
                r,
                reason: if r.abs() <= MIN_DISTANCE {
                    "R = 0".into()
                } else {
                    "R < 0".into()
                },
            });
            continue;
        }
        match DemkovSolution::from_pair(&out.candidate.radial, &out.candidate.angular, lambda, r) {
            Ok(s) => out.solutions.push(s),
            Err(e) => out.rejected.push(Rejected {
                lambda,
                r,
                reason: e.to_string(),
            }),
        }
    }
    out
}

/// Search the given quantum numbers only.
pub fn demkov_search_for(config: &CenterConfig, qns: &[QuantumNumbers], n_max: u32) -> SearchReport {
    let mut notes = Vec::new();
    if config.is_symmetric() {
        notes.push("Z1=Z2 degenerate: the angular energy vanishes and no quantum numbers qualify".into());
    }
    let cands: Vec<Candidate> = qns.iter().flat_map(|&qn| candidates(config, qn)).collect();
    let outcomes: Vec<CandidateOutcome> = cands.into_par_iter().map(run_candidate).collect();
    let mut solutions: Vec<DemkovSolution> = outcomes.iter().flat_map(|o| o.solutions.clone()).collect();
    solutions.sort_by(|a, b| {
        (a.qn.n1, a.qn.n2, a.qn.m)
            .cmp(&(b.qn.n1, b.qn.n2, b.qn.m))
            .then(a.r.total_cmp(&b.r))
            .then(a.case_r.cmp(&b.case_r))
            .then(a.case_a.cmp(&b.case_a))
    });
    SearchReport {
        config: config.clone(),
        n_max,
        solutions,
        outcomes,
        notes,
    }
}

/// Every Demkov solution with `n1, n2 ≤ n_max`.
pub fn demkov_search(config: &CenterConfig, n_max: u32) -> SearchReport {
    let qns = diophantine_enumerate(config, n_max);
    demkov_search_for(config, &qns, n_max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_candidates_follow_parity() {
        let c = CenterConfig::from_ints(5, 1, Dim::Two).unwrap();
        let labels: Vec<String> = candidates(&c, QuantumNumbers::planar(3, 2))
            .iter()
            .map(|c| format!("{}{}", c.radial.case2d.unwrap(), c.angular.case2d.unwrap()))
            .collect();
        assert_eq!(labels, vec!["ac", "ad", "bc", "bd"]);
    }

    #[test]
    fn symmetric_charges_note() {
        let c = CenterConfig::from_ints(2, 2, Dim::Three).unwrap();
        let rep = demkov_search(&c, 4);
        assert!(rep.solutions.is_empty());
        assert!(rep.notes[0].starts_with("Z1=Z2 degenerate"));
    }

    #[test]
    fn five_one_spatial() {
        let c = CenterConfig::from_ints(5, 1, Dim::Three).unwrap();
        let rep = demkov_search(&c, 3);
        assert_eq!(rep.solutions.len(), 1);
        let (e, l, r) = rep.solutions[0].triple();
        assert_eq!(e, -2.0);
        assert!((l + 10.0 / 3.0).abs() < 1e-12);
        assert!((r - 10f64.sqrt() / 3.0).abs() < 1e-12);
        assert_eq!(rep.solutions[0].root_indices(), (2, 2));
        // the m = 1 candidate only meets at R = 0
        let m1 = rep.outcomes.iter().find(|o| o.candidate.radial.qn.m == Some(1)).unwrap();
        assert!(m1.solutions.is_empty());
        assert!(!m1.rejected.is_empty());
        assert!(m1.rejected.iter().all(|x| x.reason == "R = 0"));
    }
}
