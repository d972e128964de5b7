//! The confluent Heun equation in symmetric form,
//!
//! ```text
//! (z²-1) u'' + (ε/2 (z²-1) + γ(z-1) + δ(z+1)) u' + (α/2 (z+1) - q) u = 0,
//! ```
//!
//! its quasi-exactly solvable sector `α = -n ε`, the critical polynomials
//! `P_k(q)` and the degree-`n` polynomial eigenfunctions `u_{n,j}`.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{from_shifted_basis, Poly, RationalPolynomial, RealPolynomial};
use crate::scalar::Scalar;
use crate::sturm::{self, Endpoint, SturmChain};

/// Default relative tolerance for the QES condition on float inputs.
pub const QES_TOL: f64 = 1e-12;
/// Relative residual (against `sum |c_k||q|^k`) below which a value is
/// accepted as a root of the critical polynomial.
pub const ROOT_ACCEPT_TOL: f64 = 1e-9;

/// The five real parameters of the symmetric confluent Heun equation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CheqParams {
    pub alpha: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    pub q: f64,
}

impl CheqParams {
    pub fn new(alpha: f64, gamma: f64, delta: f64, epsilon: f64, q: f64) -> Result<Self> {
        let p = Self {
            alpha,
            gamma,
            delta,
            epsilon,
            q,
        };
        if [alpha, gamma, delta, epsilon, q].iter().all(|v| v.is_finite()) {
            Ok(p)
        } else {
            Err(Error::InvalidParameter(format!("non-finite parameter in {p:?}")))
        }
    }

    /// `M = δ + γ - ε`.
    pub fn m(&self) -> f64 {
        self.delta + self.gamma - self.epsilon
    }
}

/// Witness that `α = -n ε`: the operator preserves polynomials of degree
/// at most `n`. The accessory parameter `q` is left free.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QesCertificate {
    pub n: usize,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
}

impl QesCertificate {
    pub fn new(n: usize, gamma: f64, delta: f64, epsilon: f64) -> Self {
        Self {
            n,
            gamma,
            delta,
            epsilon,
        }
    }

    /// Certify `params`, failing with [`Error::NotQes`] if `α ≠ -n ε`.
    pub fn certify(params: &CheqParams, n: usize, tol: f64) -> Result<Self> {
        let target = -(n as f64) * params.epsilon;
        if (params.alpha - target).abs() <= tol * params.alpha.abs().max(target.abs()).max(1.0) {
            Ok(Self::new(n, params.gamma, params.delta, params.epsilon))
        } else {
            Err(Error::NotQes { n })
        }
    }

    pub fn alpha(&self) -> f64 {
        -(self.n as f64) * self.epsilon
    }

    pub fn m(&self) -> f64 {
        self.delta + self.gamma - self.epsilon
    }

    pub fn with_q(&self, q: f64) -> CheqParams {
        CheqParams {
            alpha: self.alpha(),
            gamma: self.gamma,
            delta: self.delta,
            epsilon: self.epsilon,
            q,
        }
    }
}

/// Degree of the invariant polynomial module, if the parameters are QES.
///
/// Returns `n` when `-α/ε` is within `tol` (relative) of a non-negative
/// integer. For `ε = 0` the only QES case is `α = 0`, reported as `n = 0`.
pub fn qes_degree(params: &CheqParams, tol: f64) -> Option<usize> {
    let (a, e) = (params.alpha, params.epsilon);
    if e == 0.0 {
        return (a.abs() <= tol).then_some(0);
    }
    let ratio = -a / e;
    let k = ratio.round();
    (k >= 0.0 && (ratio - k).abs() <= tol * ratio.abs().max(1.0)).then_some(k as usize)
}

/// Rising factorial `x (x+1) ... (x+k-1)`.
pub fn pochhammer<T: Scalar>(x: &T, k: usize) -> T {
    (0..k).fold(T::one(), |acc, i| acc * (x.clone() + T::from_int(i as i64)))
}

/// Minimal ring interface the three-term recurrence needs.
pub trait RecurrenceRing: Clone {
    fn from_int(k: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
}

macro_rules! scalar_ring {
    ($t:ty) => {
        impl RecurrenceRing for $t {
            fn from_int(k: i64) -> Self {
                <$t as Scalar>::from_int(k)
            }
            fn add(&self, o: &Self) -> Self {
                self.clone() + o.clone()
            }
            fn sub(&self, o: &Self) -> Self {
                self.clone() - o.clone()
            }
            fn mul(&self, o: &Self) -> Self {
                self.clone() * o.clone()
            }
        }
    };
}
scalar_ring!(f64);
scalar_ring!(BigRational);

impl<T: Scalar> RecurrenceRing for Poly<T> {
    fn from_int(k: i64) -> Self {
        Poly::constant(T::from_int(k))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// `P_0 .. P_{last}` from
///
/// ```text
/// P_{k+1} = (q - k(M+k-1)) P_k - k ε (n-k+1)(γ+k-1) P_{k-1},   P_0 = 1, P_1 = q.
/// ```
///
/// Generic over the ring so the same code produces polynomials in `q`,
/// values at a point, or bivariate polynomials in `(λ, R)`.
pub fn critical_sequence<R: RecurrenceRing>(
    q: &R,
    m: &R,
    eps: &R,
    gamma: &R,
    n: usize,
    last: usize,
) -> Vec<R> {
    let mut seq = Vec::with_capacity(last + 1);
    seq.push(R::from_int(1));
    if last == 0 {
        return seq;
    }
    seq.push(q.clone());
    for k in 1..last {
        let ki = k as i64;
        let diag = R::from_int(ki).mul(&m.add(&R::from_int(ki - 1)));
        let off = R::from_int(ki * (n as i64 - ki + 1))
            .mul(eps)
            .mul(&gamma.add(&R::from_int(ki - 1)));
        let next = q.sub(&diag).mul(&seq[k]).sub(&off.mul(&seq[k - 1]));
        seq.push(next);
    }
    seq
}

/// The monic critical polynomials `P_0 .. P_{n+2}` in the accessory
/// parameter `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct CriticalPolynomialFamily<T: Scalar = f64> {
    pub n: usize,
    pub gamma: T,
    pub delta: T,
    pub epsilon: T,
    polys: Vec<Poly<T>>,
}

/// Run the recurrence symbolically in `q`.
pub fn build_family<T: Scalar>(gamma: T, delta: T, epsilon: T, n: usize) -> CriticalPolynomialFamily<T> {
    let m = gamma.clone() + delta.clone() - epsilon.clone();
    let polys = critical_sequence(
        &Poly::x(),
        &Poly::constant(m),
        &Poly::constant(epsilon.clone()),
        &Poly::constant(gamma.clone()),
        n,
        n + 2,
    );
    CriticalPolynomialFamily {
        n,
        gamma,
        delta,
        epsilon,
        polys,
    }
}

impl<T: Scalar> CriticalPolynomialFamily<T> {
    pub fn m(&self) -> T {
        self.gamma.clone() + self.delta.clone() - self.epsilon.clone()
    }

    /// `P_k`, `k <= n + 2`.
    pub fn p(&self, k: usize) -> &Poly<T> {
        &self.polys[k]
    }

    pub fn polys(&self) -> &[Poly<T>] {
        &self.polys
    }

    /// `P_{n+1}`, whose roots are the algebraic eigenvalues.
    pub fn critical(&self) -> &Poly<T> {
        &self.polys[self.n + 1]
    }

    /// Values `P_0(q) .. P_{n+1}(q)` through the recurrence itself, which is
    /// better conditioned than evaluating expanded coefficients.
    pub fn values_at(&self, q: f64) -> Vec<f64> {
        critical_sequence(
            &q,
            &self.m().to_f64_lossy(),
            &self.epsilon.to_f64_lossy(),
            &self.gamma.to_f64_lossy(),
            self.n,
            self.n + 1,
        )
    }

    pub fn to_f64(&self) -> CriticalPolynomialFamily<f64> {
        CriticalPolynomialFamily {
            n: self.n,
            gamma: self.gamma.to_f64_lossy(),
            delta: self.delta.to_f64_lossy(),
            epsilon: self.epsilon.to_f64_lossy(),
            polys: self.polys.iter().map(|p| p.to_f64()).collect(),
        }
    }

    /// Exact rational images of `(M, ε, γ)`, with `M = γ + δ - ε` formed
    /// exactly. `None` for non-finite parameters.
    pub fn exact_parameters(&self) -> Option<(BigRational, BigRational, BigRational)> {
        let g = self.gamma.to_rational()?;
        let d = self.delta.to_rational()?;
        let e = self.epsilon.to_rational()?;
        Some((&g + &d - &e, e, g))
    }

    /// `P_{n+1}` run through the recurrence in exact arithmetic. For `f64`
    /// parameters this differs from [`CriticalPolynomialFamily::critical`],
    /// whose expanded coefficients carry the rounding of the recurrence.
    pub fn exact_critical(&self) -> Option<RationalPolynomial> {
        let (m, e, g) = self.exact_parameters()?;
        let seq = critical_sequence(
            &Poly::x(),
            &Poly::constant(m),
            &Poly::constant(e),
            &Poly::constant(g),
            self.n,
            self.n + 1,
        );
        seq.into_iter().last()
    }

    /// Relative residual of `P_{n+1}` at `q`.
    pub fn relative_residual(&self, q: f64) -> f64 {
        let p = self.critical().to_f64();
        let scale = p.eval_scale(q);
        if scale == 0.0 {
            0.0
        } else {
            p.eval(&q).abs() / scale
        }
    }
}

/// Binary digits kept in the rational root images.
pub const EXACT_ROOT_BITS: u32 = 120;

/// The `n + 1` algebraic eigenvalues, strictly increasing.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralRoots {
    roots: Vec<f64>,
    exact: Vec<BigRational>,
}

impl SpectralRoots {
    /// The roots to `EXACT_ROOT_BITS` relative bits, as rationals. Quantities
    /// that are ill-conditioned in `q` (values of `P_k` near a root of
    /// `P_{n+1}`, the Stieltjes weights) are computed from these.
    pub fn exact(&self) -> &[BigRational] {
        &self.exact
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// 1-based access, `q_j`.
    pub fn q(&self, j: usize) -> f64 {
        self.roots[j - 1]
    }
}

/// All `n + 1` real roots of `P_{n+1}`.
///
/// Isolation uses an exact Sturm chain on `P_{n+1}` computed exactly from
/// the rational images of the parameters; each root is then bisected with
/// exact sign evaluation down to adjacent doubles.
pub fn spectral_roots<T: Scalar>(family: &CriticalPolynomialFamily<T>) -> Result<SpectralRoots> {
    let expected = family.n + 1;
    let p = family
        .exact_critical()
        .ok_or_else(|| Error::InvalidParameter("non-finite critical polynomial".into()))?;
    let sf = p.squarefree_part();
    // a multiple root shows up as fewer distinct roots
    let isolated = sturm::isolate_real_roots(&sf);
    if isolated.len() != expected {
        return Err(Error::RootCountMismatch {
            expected,
            found: isolated.len(),
        });
    }
    let roots: Vec<f64> = isolated
        .iter()
        .map(|(lo, hi)| sturm::refine_to_f64(&sf, lo, hi))
        .collect();
    if roots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::RootCountMismatch {
            expected,
            found: roots.len() - 1,
        });
    }
    // continue from a few-ulp bracket around the double when it is valid
    let exact = isolated
        .iter()
        .zip(&roots)
        .map(|((lo, hi), &r)| {
            let w = 4.0 * f64::EPSILON * r.abs().max(f64::MIN_POSITIVE);
            let tight = (BigRational::from_float(r - w), BigRational::from_float(r + w));
            match tight {
                (Some(a), Some(b)) if &a >= lo && &b <= hi && sturm::brackets(&sf, &a, &b) => {
                    sturm::refine_rational(&sf, &a, &b, EXACT_ROOT_BITS)
                }
                _ => sturm::refine_rational(&sf, lo, hi, EXACT_ROOT_BITS),
            }
        })
        .collect();
    Ok(SpectralRoots { roots, exact })
}

/// A polynomial eigenfunction `u_{n,j}`, stored in powers of `(z+1)` with
/// constant term 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialSolution {
    pub n: usize,
    /// 1-based position of `q` among the ordered roots.
    pub j: usize,
    pub q: f64,
    pub gamma: f64,
    pub delta: f64,
    pub epsilon: f64,
    shifted: Vec<f64>,
}

impl PolynomialSolution {
    /// Coefficients of `(z+1)^k`, `k = 0..=n`.
    pub fn shifted_coeffs(&self) -> &[f64] {
        &self.shifted
    }

    /// The same polynomial in powers of `z`.
    pub fn to_monomial(&self) -> RealPolynomial {
        from_shifted_basis(&self.shifted, &-1.0)
    }

    /// Monic-in-`z` view (the normalisation used for display).
    pub fn monic(&self) -> RealPolynomial {
        self.to_monomial().monic()
    }

    pub fn eval(&self, z: f64) -> f64 {
        let t = z + 1.0;
        self.shifted.iter().rev().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn certificate(&self) -> QesCertificate {
        QesCertificate::new(self.n, self.gamma, self.delta, self.epsilon)
    }
}

/// Truncated Frobenius solution at `z = -1` for a root `q` of `P_{n+1}`:
///
/// ```text
/// u(z) = sum_{k=0}^{n} (-1)^k P_k(q) / (2^k k! (γ)_k) (z+1)^k.
/// ```
pub fn build_solution<T: Scalar>(family: &CriticalPolynomialFamily<T>, q: f64) -> Result<PolynomialSolution> {
    let residual = family.relative_residual(q);
    if !(residual <= ROOT_ACCEPT_TOL) {
        return Err(Error::NotARoot { q, residual });
    }
    let gamma = family.gamma.to_f64_lossy();
    let values = family.values_at(q);
    let mut shifted = Vec::with_capacity(family.n + 1);
    let mut denom = 1.0;
    for (k, pk) in values.iter().take(family.n + 1).enumerate() {
        if k > 0 {
            denom *= -2.0 * k as f64 * (gamma + k as f64 - 1.0);
        }
        if denom == 0.0 {
            return Err(Error::InvalidParameter(format!(
                "(γ)_{k} vanishes for γ = {gamma}; the Frobenius series at z = -1 is undefined"
            )));
        }
        shifted.push(pk / denom);
    }
    while shifted.len() > 1 && shifted.last() == Some(&0.0) {
        shifted.pop();
    }
    let j = root_index(family, q);
    Ok(PolynomialSolution {
        n: family.n,
        j,
        q,
        gamma,
        delta: family.delta.to_f64_lossy(),
        epsilon: family.epsilon.to_f64_lossy(),
        shifted,
    })
}

/// 1-based index of `q` among the real roots of `P_{n+1}`.
fn root_index<T: Scalar>(family: &CriticalPolynomialFamily<T>, q: f64) -> usize {
    let Some(p) = family.exact_critical() else {
        return 0;
    };
    let chain = SturmChain::new(&p);
    let below = q - 1e-9 * q.abs().max(1.0);
    chain.count_half_open(&Endpoint::NegInf, &Endpoint::from_f64(below)) + 1
}

/// All `n + 1` solutions, ordered by their roots.
pub fn all_solutions<T: Scalar>(family: &CriticalPolynomialFamily<T>) -> Result<Vec<PolynomialSolution>> {
    let roots = spectral_roots(family)?;
    roots
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            build_solution(family, q).map(|mut s| {
                s.j = i + 1;
                s
            })
        })
        .collect()
}

/// Left-hand side of the QES equation at `z`, with exact derivatives of
/// `u`.
pub fn cheq_residual(cert: &QesCertificate, q: f64, u: &RealPolynomial, z: f64) -> f64 {
    terms(cert, q, u, z).iter().sum()
}

/// Sum of absolute values of the individual terms of the residual; the
/// scale to compare [`cheq_residual`] against.
pub fn cheq_residual_scale(cert: &QesCertificate, q: f64, u: &RealPolynomial, z: f64) -> f64 {
    terms(cert, q, u, z).iter().map(|t| t.abs()).sum()
}

fn terms(cert: &QesCertificate, q: f64, u: &RealPolynomial, z: f64) -> [f64; 3] {
    let d1 = u.derivative();
    let d2 = d1.derivative();
    let e = cert.epsilon;
    let p1 = 0.5 * e * (z * z - 1.0) + cert.gamma * (z - 1.0) + cert.delta * (z + 1.0);
    let p0 = -0.5 * cert.n as f64 * e * (z + 1.0) - q;
    [
        (z * z - 1.0) * d2.eval(&z),
        p1 * d1.eval(&z),
        p0 * u.eval(&z),
    ]
}

/// Exact number of distinct real zeros of the solution in `(a, b)`; `b` may
/// be `f64::INFINITY`.
pub fn count_zeros(sol: &PolynomialSolution, a: f64, b: f64) -> usize {
    sturm::count_zeros_in(&sol.to_monomial(), a, b)
}

/// `true` if `p` has degree exactly `k` with unit leading coefficient.
pub fn is_monic_of_degree<T: Scalar>(p: &Poly<T>, k: usize) -> bool {
    p.degree() == Some(k) && p.coeff(k) == T::one()
}
