//! Descendant equations of the confluent Heun equation, the sl(2,ℝ) form of
//! the QES operator and its Schrödinger (gauge-transformed) form.
//!
//! Two changes of dependent variable matter here:
//!
//! * `u = (z+1)^{(1-γ)/2} (z-1)^{(1-δ)/2} e^{-εz/4} v` gives the
//!   self-adjoint form
//!   `((z²-1) v')' + (A z² + B z + C + (a z + b)/(z²-1)) v = 0`,
//!   which is the generalized spheroidal equation when `a = 0`;
//! * `u = (z+1)^{(1-2γ)/4} (z-1)^{(1-2δ)/4} e^{-εz/4} w` gives
//!   `(z²-1) w'' + z w' + (A z² + B z + C - 1/4 + (a z + b + 1/4)/(z²-1)) w = 0`,
//!   the algebraic Razavy / Whittaker–Hill form when `a = 0, b = -1/4`.

use std::fmt;

use crate::cheq::{CheqParams, QesCertificate};
use crate::error::{Error, Result};
use crate::poly::{Poly, RealPolynomial};

/// Parameters of the self-adjoint forms.
#[allow(non_snake_case)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DerivedParams {
    pub A: f64,
    pub B: f64,
    pub C: f64,
    pub a: f64,
    pub b: f64,
}

pub fn derived_params(p: &CheqParams) -> DerivedParams {
    let (al, g, d, e, q) = (p.alpha, p.gamma, p.delta, p.epsilon, p.q);
    DerivedParams {
        A: -e * e / 16.0,
        B: al / 2.0 - e / 4.0 * (g + d),
        C: e * e / 16.0 + e / 4.0 * (g - d) - (g + d) / 4.0 * (g + d - 2.0) + al / 2.0 - q,
        a: d * (1.0 - d / 2.0) - g * (1.0 - g / 2.0),
        b: d * (1.0 - d / 2.0) + g * (1.0 - g / 2.0) - 1.0,
    }
}

/// The four `(γ, δ)` pairs giving the Razavy / Whittaker–Hill form, lettered
/// as in the two-center application: `a = (½,½)`, `b = (3/2,3/2)`,
/// `c = (γ,δ) = (3/2,½)`, `d = (γ,δ) = (½,3/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Case2d {
    A,
    B,
    C,
    D,
}

impl Case2d {
    pub const ALL: [Case2d; 4] = [Case2d::A, Case2d::B, Case2d::C, Case2d::D];

    pub fn gamma(self) -> f64 {
        match self {
            Case2d::A | Case2d::D => 0.5,
            Case2d::B | Case2d::C => 1.5,
        }
    }

    pub fn delta(self) -> f64 {
        match self {
            Case2d::A | Case2d::C => 0.5,
            Case2d::B | Case2d::D => 1.5,
        }
    }

    /// `γ + δ`, which fixes the hydrogenoid quantum number `2n + γ + δ`.
    pub fn gamma_plus_delta(self) -> u32 {
        match self {
            Case2d::A => 1,
            Case2d::B => 3,
            Case2d::C | Case2d::D => 2,
        }
    }

    /// `γ - δ` as an integer.
    pub fn gamma_minus_delta(self) -> i32 {
        match self {
            Case2d::A | Case2d::B => 0,
            Case2d::C => 1,
            Case2d::D => -1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Case2d::A => 'a',
            Case2d::B => 'b',
            Case2d::C => 'c',
            Case2d::D => 'd',
        }
    }
}

impl fmt::Display for Case2d {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReductionKind {
    GseqGammaEqDelta,
    GseqGammaEqTwoMinusDelta,
    Spheroidal,
    AssociatedLegendre,
    Legendre,
    RazavyWhittakerHill(Case2d),
    Mathieu,
}

impl ReductionKind {
    pub fn constraint(&self) -> &'static str {
        match self {
            ReductionKind::GseqGammaEqDelta => "γ = δ",
            ReductionKind::GseqGammaEqTwoMinusDelta => "γ = 2 - δ",
            ReductionKind::Spheroidal => "a = B = 0 (α = εδ with γ = δ, or α = ε with γ = 2 - δ)",
            ReductionKind::AssociatedLegendre => "spheroidal with ε = 0",
            ReductionKind::Legendre => "associated Legendre with b = 0 (γ = δ = 1)",
            ReductionKind::RazavyWhittakerHill(Case2d::A) => "γ = δ = 1/2",
            ReductionKind::RazavyWhittakerHill(Case2d::B) => "γ = δ = 3/2",
            ReductionKind::RazavyWhittakerHill(Case2d::C) => "γ = 3/2, δ = 1/2",
            ReductionKind::RazavyWhittakerHill(Case2d::D) => "γ = 1/2, δ = 3/2",
            ReductionKind::Mathieu => "Razavy/Whittaker-Hill with B = 0",
        }
    }
}

/// Every descendant equation whose defining constraint holds within `tol`.
pub fn classify_reductions(p: &CheqParams, tol: f64) -> Vec<ReductionKind> {
    let close = |x: f64, y: f64| (x - y).abs() <= tol;
    let dp = derived_params(p);
    let mut out = Vec::new();
    let eq = close(p.gamma, p.delta);
    let flip = close(p.gamma, 2.0 - p.delta);
    if eq {
        out.push(ReductionKind::GseqGammaEqDelta);
    }
    if flip {
        out.push(ReductionKind::GseqGammaEqTwoMinusDelta);
    }
    let spheroidal =
        (eq && close(p.alpha, p.epsilon * p.delta)) || (flip && close(p.alpha, p.epsilon));
    if spheroidal {
        out.push(ReductionKind::Spheroidal);
        if close(p.epsilon, 0.0) {
            out.push(ReductionKind::AssociatedLegendre);
            if close(dp.b, 0.0) {
                out.push(ReductionKind::Legendre);
            }
        }
    }
    let mut rwh = false;
    for case in Case2d::ALL {
        if close(p.gamma, case.gamma()) && close(p.delta, case.delta()) {
            out.push(ReductionKind::RazavyWhittakerHill(case));
            rwh = true;
        }
    }
    if rwh && close(dp.B, 0.0) {
        out.push(ReductionKind::Mathieu);
    }
    out
}

/// `g(z) = |z+1|^{exp_plus} |z-1|^{exp_minus} e^{exp_lin z}`.
///
/// Absolute values make the factor real on `(-1, 1)` as well as on `z > 1`;
/// on `(-1, 1)` this drops a constant phase, which does not affect any of
/// the equations it is used with.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaugeFactor {
    pub exp_plus: f64,
    pub exp_minus: f64,
    pub exp_lin: f64,
}

impl GaugeFactor {
    pub const IDENTITY: GaugeFactor = GaugeFactor {
        exp_plus: 0.0,
        exp_minus: 0.0,
        exp_lin: 0.0,
    };

    pub fn eval(&self, z: f64) -> f64 {
        pow_abs(z + 1.0, self.exp_plus) * pow_abs(z - 1.0, self.exp_minus) * (self.exp_lin * z).exp()
    }

    /// `g'/g`.
    pub fn log_derivative(&self, z: f64) -> f64 {
        term(self.exp_plus, z + 1.0) + term(self.exp_minus, z - 1.0) + self.exp_lin
    }

    /// `(g'/g)'`.
    pub fn log_derivative_prime(&self, z: f64) -> f64 {
        -term2(self.exp_plus, z + 1.0) - term2(self.exp_minus, z - 1.0)
    }

    pub fn inverse(&self) -> GaugeFactor {
        GaugeFactor {
            exp_plus: -self.exp_plus,
            exp_minus: -self.exp_minus,
            exp_lin: -self.exp_lin,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY || (self.exp_plus == 0.0 && self.exp_minus == 0.0 && self.exp_lin == 0.0)
    }
}

fn pow_abs(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else {
        x.abs().powf(p)
    }
}

fn term(p: f64, x: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p / x
    }
}

fn term2(p: f64, x: f64) -> f64 {
    if p == 0.0 {
        0.0
    } else {
        p / (x * x)
    }
}

/// Which of the two routes to the generalized spheroidal equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GseqBranch {
    GammaEqDelta,
    GammaEqTwoMinusDelta,
}

/// Factor `g` with `u = g v` mapping the CHEq to the generalized spheroidal
/// equation.
pub fn gseq_gauge(p: &CheqParams, branch: GseqBranch, tol: f64) -> Result<GaugeFactor> {
    let half = (1.0 - p.delta) / 2.0;
    match branch {
        GseqBranch::GammaEqDelta => {
            if (p.gamma - p.delta).abs() > tol {
                return Err(Error::ConstraintViolated("γ = δ".into()));
            }
            Ok(GaugeFactor {
                exp_plus: half,
                exp_minus: half,
                exp_lin: -p.epsilon / 4.0,
            })
        }
        GseqBranch::GammaEqTwoMinusDelta => {
            if (p.gamma + p.delta - 2.0).abs() > tol {
                return Err(Error::ConstraintViolated("γ = 2 - δ".into()));
            }
            Ok(GaugeFactor {
                exp_plus: -half,
                exp_minus: half,
                exp_lin: -p.epsilon / 4.0,
            })
        }
    }
}

/// Factor `g` with `u = g w` mapping the CHEq to the algebraic
/// Razavy / Whittaker–Hill form.
pub fn rwh_gauge(p: &CheqParams) -> GaugeFactor {
    GaugeFactor {
        exp_plus: (1.0 - 2.0 * p.gamma) / 4.0,
        exp_minus: (1.0 - 2.0 * p.delta) / 4.0,
        exp_lin: -p.epsilon / 4.0,
    }
}

/// `L[g v](z) / g(z)` for the CHEq operator `L` (including `-q`).
fn cheq_on_gauged(p: &CheqParams, g: &GaugeFactor, v: &RealPolynomial, z: f64) -> f64 {
    let (v0, v1, v2) = (v.eval(&z), v.derivative().eval(&z), v.derivative().derivative().eval(&z));
    let l = g.log_derivative(z);
    let lp = g.log_derivative_prime(z);
    let u1 = v1 + l * v0;
    let u2 = v2 + 2.0 * l * v1 + (lp + l * l) * v0;
    let p1 = p.epsilon / 2.0 * (z * z - 1.0) + p.gamma * (z - 1.0) + p.delta * (z + 1.0);
    let p0 = p.alpha / 2.0 * (z + 1.0) - p.q;
    (z * z - 1.0) * u2 + p1 * u1 + p0 * v0
}

/// `L[g v]/g - S[v]` where `S` is the self-adjoint form with parameters from
/// [`derived_params`]; zero for every `v` when `g` is the right factor.
pub fn self_adjoint_defect(p: &CheqParams, g: &GaugeFactor, v: &RealPolynomial, z: f64) -> f64 {
    let dp = derived_params(p);
    let (v0, v1, v2) = (v.eval(&z), v.derivative().eval(&z), v.derivative().derivative().eval(&z));
    let s = (z * z - 1.0) * v2
        + 2.0 * z * v1
        + (dp.A * z * z + dp.B * z + dp.C + (dp.a * z + dp.b) / (z * z - 1.0)) * v0;
    cheq_on_gauged(p, g, v, z) - s
}

/// `L[g w]/g - W[w]` where `W` is the Razavy / Whittaker–Hill style form.
pub fn rwh_defect(p: &CheqParams, g: &GaugeFactor, w: &RealPolynomial, z: f64) -> f64 {
    let dp = derived_params(p);
    let (w0, w1, w2) = (w.eval(&z), w.derivative().eval(&z), w.derivative().derivative().eval(&z));
    let s = (z * z - 1.0) * w2
        + z * w1
        + (dp.A * z * z + dp.B * z + dp.C - 0.25 + (dp.a * z + dp.b + 0.25) / (z * z - 1.0)) * w0;
    cheq_on_gauged(p, g, w, z) - s
}

/// Coefficients of `D` as a quadratic element of the enveloping algebra of
/// sl(2,ℝ) realised by `J⁻ = d/dz`, `J⁰ = z d/dz - n/2`, `J⁺ = z² d/dz - n z`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Sl2Decomposition {
    pub n: usize,
    /// `(J⁰)²`
    pub c_00: f64,
    /// `(J⁻)²`
    pub c_mm: f64,
    /// `J⁺J⁻ + J⁻J⁺`
    pub c_pm: f64,
    pub c_p: f64,
    pub c_0: f64,
    pub c_m: f64,
}

pub fn sl2_decompose(cert: &QesCertificate) -> Sl2Decomposition {
    let (n, g, d, e) = (cert.n as f64, cert.gamma, cert.delta, cert.epsilon);
    Sl2Decomposition {
        n: cert.n,
        c_00: 2.0 * (n + g + d - e) / (n + 2.0),
        c_mm: -1.0,
        c_pm: (2.0 - n - 2.0 * (g + d - e)) / (2.0 * (n + 2.0)),
        c_p: e / 2.0,
        c_0: g + d + n - 1.0,
        c_m: d - g - e / 2.0,
    }
}

/// Same as [`sl2_decompose`], certifying the QES condition first.
pub fn sl2_decompose_params(p: &CheqParams, n: usize, tol: f64) -> Result<Sl2Decomposition> {
    QesCertificate::certify(p, n, tol).map(|c| sl2_decompose(&c))
}

/// `P2 d²/dz² + P1 d/dz + P0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondOrderOperator {
    pub p2: RealPolynomial,
    pub p1: RealPolynomial,
    pub p0: RealPolynomial,
}

/// Differential operator `sum_k c_k(z) (d/dz)^k` with polynomial
/// coefficients.
#[derive(Clone, Debug)]
struct DiffOp(Vec<RealPolynomial>);

impl DiffOp {
    fn coeff(&self, k: usize) -> RealPolynomial {
        self.0.get(k).cloned().unwrap_or_else(Poly::zero)
    }

    fn scale(&self, s: f64) -> DiffOp {
        DiffOp(self.0.iter().map(|c| c.scale(&s)).collect())
    }

    fn add(&self, other: &DiffOp) -> DiffOp {
        let n = self.0.len().max(other.0.len());
        DiffOp((0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    /// `self ∘ other`, using the Leibniz rule
    /// `D^i (b f) = sum_l C(i,l) b^{(i-l)} D^l f`.
    fn compose(&self, other: &DiffOp) -> DiffOp {
        let mut out: Vec<RealPolynomial> = vec![Poly::zero(); self.0.len() + other.0.len()];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                let mut deriv = b.clone();
                let mut derivs = vec![deriv.clone()];
                for _ in 0..i {
                    deriv = deriv.derivative();
                    derivs.push(deriv.clone());
                }
                for l in 0..=i {
                    let binom = binomial(i, l) as f64;
                    let t = &(a * &derivs[i - l]).scale(&binom);
                    out[l + j] = &out[l + j] + t;
                }
            }
        }
        DiffOp(out)
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Expand the quadratic combination into an ordinary second-order operator.
pub fn sl2_expand(d: &Sl2Decomposition) -> SecondOrderOperator {
    let n = d.n as f64;
    let jm = DiffOp(vec![Poly::zero(), Poly::one()]);
    let j0 = DiffOp(vec![Poly::constant(-n / 2.0), Poly::x()]);
    let jp = DiffOp(vec![Poly::linear(0.0, -n), Poly::monomial(2)]);
    let op = j0
        .compose(&j0)
        .scale(d.c_00)
        .add(&jm.compose(&jm).scale(d.c_mm))
        .add(&jp.compose(&jm).add(&jm.compose(&jp)).scale(d.c_pm))
        .add(&jp.scale(d.c_p))
        .add(&j0.scale(d.c_0))
        .add(&jm.scale(d.c_m));
    debug_assert!(op.0.iter().skip(3).all(|c| c.max_abs_coeff() < 1e-9));
    SecondOrderOperator {
        p2: op.coeff(2),
        p1: op.coeff(1),
        p0: op.coeff(0),
    }
}

/// The CHEq operator `D` (without the `-q` shift) for a QES certificate.
pub fn cheq_operator(cert: &QesCertificate) -> SecondOrderOperator {
    let e = cert.epsilon;
    let n = cert.n as f64;
    SecondOrderOperator {
        p2: Poly::new(vec![-1.0, 0.0, 1.0]),
        p1: Poly::new(vec![-e / 2.0 - cert.gamma + cert.delta, cert.gamma + cert.delta, e / 2.0]),
        p0: Poly::new(vec![-n * e / 2.0, -n * e / 2.0]),
    }
}

/// Schrödinger form `-d²/dx² + V(x)` of the QES operator on `z = cosh x > 1`.
///
/// If `u` solves the QES equation for the chosen `q`, `ψ(x) = μ(cosh x) u(cosh x)`
/// is a zero mode of `-d²/dx² + V`. The constant `-C + 1/4` is part of `V`;
/// it is also exposed on its own through [`SchroedingerForm::constant_term`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchroedingerForm {
    pub n: usize,
    pub q: f64,
    /// Derived parameters with `α = -n ε` substituted.
    pub derived: DerivedParams,
    pub mu: GaugeFactor,
}

pub fn schroedinger_form(cert: &QesCertificate, q: f64) -> SchroedingerForm {
    let params = cert.with_q(q);
    SchroedingerForm {
        n: cert.n,
        q,
        derived: derived_params(&params),
        mu: rwh_gauge(&params).inverse(),
    }
}

impl SchroedingerForm {
    pub fn z_of_x(x: f64) -> f64 {
        x.cosh()
    }

    pub fn x_of_z(z: f64) -> f64 {
        z.acosh()
    }

    /// `-C + 1/4`.
    pub fn constant_term(&self) -> f64 {
        -self.derived.C + 0.25
    }

    /// `V(x) = -A cosh²x - B cosh x - a coth x csch x - (b+1/4) csch²x - C + 1/4`.
    pub fn potential(&self, x: f64) -> f64 {
        let d = &self.derived;
        let (c, s) = (x.cosh(), x.sinh());
        -d.A * c * c - d.B * c - d.a * c / (s * s) - (d.b + 0.25) / (s * s) + self.constant_term()
    }

    /// `true` when the potential blows up as `x → 0⁺`.
    pub fn singular_at_origin(&self, tol: f64) -> bool {
        self.derived.a.abs() > tol || (self.derived.b + 0.25).abs() > tol
    }

    /// `ψ(x) = μ(cosh x) u(cosh x)`.
    pub fn gauge_transform(&self, u: impl Fn(f64) -> f64, x: f64) -> f64 {
        let z = x.cosh();
        self.mu.eval(z) * u(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, gamma: f64, delta: f64, epsilon: f64, q: f64) -> CheqParams {
        CheqParams::new(alpha, gamma, delta, epsilon, q).unwrap()
    }

    #[test]
    fn derived_params_special_cases() {
        let d = derived_params(&params(0.3, 2.5, 2.5, -1.2, 0.7));
        assert!(d.a.abs() < 1e-15);
        assert!((d.b + (1.0f64 - 2.5).powi(2)).abs() < 1e-14);
        let d = derived_params(&params(0.3, 2.0 - 0.37, 0.37, -1.2, 0.7));
        assert!(d.a.abs() < 1e-14);
        let d = derived_params(&params(0.0, 1.0, 1.0, 0.0, 0.0));
        assert_eq!((d.A, d.B, d.C, d.a, d.b), (0.0, 0.0, 0.0, 0.0, 0.0));
        // B and C reduce as printed for γ = δ
        let p = params(0.3, 1.7, 1.7, -1.2, 0.7);
        let d = derived_params(&p);
        assert!((d.B - 0.5 * (p.alpha - p.epsilon * p.delta)).abs() < 1e-14);
        let c = p.epsilon.powi(2) / 16.0 + p.alpha / 2.0 - p.q + p.delta * (1.0 - p.delta);
        assert!((d.C - c).abs() < 1e-14);
    }

    #[test]
    fn razavy_cases_have_b_minus_quarter() {
        for case in Case2d::ALL {
            let d = derived_params(&params(0.1, case.gamma(), case.delta(), -0.4, 0.2));
            assert!(d.a.abs() < 1e-15, "{case}");
            assert!((d.b + 0.25).abs() < 1e-15, "{case}");
        }
    }

    #[test]
    fn classification_examples() {
        let kinds = classify_reductions(&params(0.0, 1.0, 1.0, 0.0, 0.0), 1e-12);
        for k in [
            ReductionKind::GseqGammaEqDelta,
            ReductionKind::GseqGammaEqTwoMinusDelta,
            ReductionKind::Spheroidal,
            ReductionKind::AssociatedLegendre,
            ReductionKind::Legendre,
        ] {
            assert!(kinds.contains(&k), "{k:?}");
        }
        let kinds = classify_reductions(&params(0.0, 0.5, 1.5, -1.0, 0.0), 1e-12);
        assert!(kinds.contains(&ReductionKind::RazavyWhittakerHill(Case2d::D)));
        assert!(kinds.contains(&ReductionKind::GseqGammaEqTwoMinusDelta));
        assert!(!kinds.contains(&ReductionKind::GseqGammaEqDelta));
        // Mathieu needs B = 0: with γ = δ = 1/2, B = α/2 - ε/4
        let kinds = classify_reductions(&params(-0.5, 0.5, 0.5, -1.0, 0.3), 1e-12);
        assert!(kinds.contains(&ReductionKind::Mathieu));
    }

    #[test]
    fn gseq_gauge_exponents() {
        let p = params(0.0, 2.5, 2.5, -1.2, 0.0);
        let g = gseq_gauge(&p, GseqBranch::GammaEqDelta, 1e-12).unwrap();
        assert_eq!((g.exp_plus, g.exp_minus, g.exp_lin), (-0.75, -0.75, 0.3));
        let p = params(0.0, 0.5, 1.5, -1.2, 0.0);
        let g = gseq_gauge(&p, GseqBranch::GammaEqTwoMinusDelta, 1e-12).unwrap();
        assert_eq!((g.exp_plus, g.exp_minus), (0.25, -0.25));
        assert!(matches!(
            gseq_gauge(&p, GseqBranch::GammaEqDelta, 1e-12),
            Err(Error::ConstraintViolated(_))
        ));
        let p = params(0.0, 1.0, 1.0, 0.0, 0.0);
        assert!(gseq_gauge(&p, GseqBranch::GammaEqDelta, 1e-12).unwrap().is_identity());
        assert!(gseq_gauge(&p, GseqBranch::GammaEqTwoMinusDelta, 1e-12).unwrap().is_identity());
    }

    #[test]
    fn rwh_gauge_exponents() {
        let g = rwh_gauge(&params(0.0, 0.5, 0.5, -2.0, 0.0));
        assert_eq!((g.exp_plus, g.exp_minus, g.exp_lin), (0.0, 0.0, 0.5));
        let g = rwh_gauge(&params(0.0, 1.5, 0.5, 0.0, 0.0));
        assert_eq!((g.exp_plus, g.exp_minus), (-0.5, 0.0));
    }

    #[test]
    fn sl2_small_cases() {
        let d = sl2_decompose(&QesCertificate::new(0, 1.0, 1.0, 0.0));
        assert_eq!(d.c_00, 2.0);
        assert_eq!(d.c_pm, -0.5);
        let only = |c_m: f64, c_0: f64| Sl2Decomposition {
            n: 3,
            c_00: 0.0,
            c_mm: 0.0,
            c_pm: 0.0,
            c_p: 0.0,
            c_0,
            c_m,
        };
        let op = sl2_expand(&only(1.0, 0.0));
        assert!(op.p2.is_zero() && op.p0.is_zero());
        assert_eq!(op.p1.coeffs(), &[1.0]);
        let op = sl2_expand(&only(0.0, 1.0));
        assert_eq!(op.p1.coeffs(), &[0.0, 1.0]);
        assert_eq!(op.p0.coeffs(), &[-1.5]);
    }

    #[test]
    fn sl2_requires_qes() {
        let p = params(1.0, 1.0, 1.0, 1.0, 0.0);
        assert!(matches!(sl2_decompose_params(&p, 1, 1e-12), Err(Error::NotQes { n: 1 })));
    }

    #[test]
    fn qes_b_matches_closed_form() {
        let r = 10f64.sqrt() / 3.0;
        let cert = QesCertificate::new(2, 1.0, 1.0, -4.0 * r);
        let s = schroedinger_form(&cert, 0.0);
        assert!((s.derived.B - 6.0 * r).abs() < 1e-14);
        assert!(s.derived.A <= 0.0);
        assert!(!s.singular_at_origin(1e-12) || s.derived.b != -0.25);
    }

    #[test]
    fn gauges_conjugate_to_descendant_forms() {
        let v = Poly::new(vec![0.3, -1.1, 0.7, 0.25]);
        let p = params(0.4, 1.3, 1.3, -0.9, 0.6);
        let g = gseq_gauge(&p, GseqBranch::GammaEqDelta, 1e-12).unwrap();
        let p2 = params(0.4, 2.0 - 0.35, 0.35, 1.7, -0.2);
        let g2 = gseq_gauge(&p2, GseqBranch::GammaEqTwoMinusDelta, 1e-12).unwrap();
        let p3 = params(-0.8, 0.9, 2.2, 1.3, 0.45);
        for z in [-0.6, 0.2, 1.4, 3.0] {
            assert!(self_adjoint_defect(&p, &g, &v, z).abs() < 1e-11, "{z}");
            assert!(self_adjoint_defect(&p2, &g2, &v, z).abs() < 1e-11, "{z}");
            assert!(rwh_defect(&p3, &rwh_gauge(&p3), &v, z).abs() < 1e-11, "{z}");
        }
        // a wrong factor leaves a defect
        assert!(self_adjoint_defect(&p3, &GaugeFactor::IDENTITY, &v, 2.0).abs() > 1e-3);
    }

    #[test]
    fn sl2_expansion_reproduces_cheq_operator() {
        let cert = QesCertificate::new(3, 0.7, 1.9, -1.3);
        let e = sl2_expand(&sl2_decompose(&cert));
        let d = cheq_operator(&cert);
        for (a, b) in [(&e.p2, &d.p2), (&e.p1, &d.p1), (&e.p0, &d.p0)] {
            assert!((a - b).max_abs_coeff() < 1e-12, "{a:?} vs {b:?}");
        }
    }
}
