//! Exact Sturm sequences over the rationals.
//!
//! Root counting and isolation run in exact arithmetic. Polynomials with
//! `f64` coefficients are first lifted to their exact dyadic rational image,
//! so counts are exact for the polynomial actually stored in memory.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::intpoly::IntPoly;
use crate::poly::{Poly, RationalPolynomial};
use crate::scalar::{midpoint, rational_to_f64, Scalar};

/// One end of a counting interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Endpoint {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Endpoint {
    pub fn from_f64(x: f64) -> Self {
        if x == f64::INFINITY {
            Endpoint::PosInf
        } else if x == f64::NEG_INFINITY {
            Endpoint::NegInf
        } else {
            Endpoint::Finite(x.to_rational().expect("finite endpoint"))
        }
    }
}

/// Sturm chain of the squarefree part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    seq: Vec<IntPoly>,
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

impl SturmChain {
    /// Build the chain. The zero polynomial and constants give an empty
    /// chain with no roots.
    pub fn new(p: &RationalPolynomial) -> Self {
        if p.degree().unwrap_or(0) == 0 {
            return Self { seq: Vec::new() };
        }
        let p0 = IntPoly::from_rational(p).squarefree();
        let p1 = p0.derivative();
        let mut seq = vec![p0, p1];
        loop {
            let n = seq.len();
            if seq[n - 1].degree().unwrap_or(0) == 0 {
                break;
            }
            // a positive multiple of the remainder, negated
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        Self { seq }
    }

    /// The squarefree polynomial the chain was built from (up to a positive
    /// factor).
    pub fn base(&self) -> Option<RationalPolynomial> {
        self.seq.first().map(IntPoly::to_rational)
    }

    pub fn variations_at(&self, x: &Endpoint) -> usize {
        match x {
            Endpoint::Finite(v) => variations(self.seq.iter().map(|p| p.sign_at(v))),
            Endpoint::PosInf => variations(self.seq.iter().map(|p| p.sign_at_infinity(true))),
            Endpoint::NegInf => variations(self.seq.iter().map(|p| p.sign_at_infinity(false))),
        }
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Endpoint, b: &Endpoint) -> usize {
        if self.seq.is_empty() {
            return 0;
        }
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// Number of distinct real roots in the open interval `(a, b)`.
    pub fn count_open(&self, a: &Endpoint, b: &Endpoint) -> usize {
        let n = self.count_half_open(a, b);
        match (b, self.seq.first()) {
            (Endpoint::Finite(v), Some(p)) if p.sign_at(v) == 0 => n - 1,
            _ => n,
        }
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.count_half_open(&Endpoint::NegInf, &Endpoint::PosInf)
    }
}

/// Cauchy bound: every root satisfies `|x| < 1 + max |a_k / a_n|`.
pub fn cauchy_bound(p: &RationalPolynomial) -> BigRational {
    let lc = p.leading().expect("nonzero polynomial").abs();
    let one = BigRational::from_integer(1.into());
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / lc.clone())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + one
}

/// Disjoint half-open intervals `(lo, hi]`, sorted, each containing exactly
/// one distinct real root.
pub fn isolate_real_roots(p: &RationalPolynomial) -> Vec<(BigRational, BigRational)> {
    let chain = SturmChain::new(p);
    let Some(base) = chain.base() else {
        return Vec::new();
    };
    let bound = cauchy_bound(&base);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_half_open(
            &Endpoint::Finite(lo.clone()),
            &Endpoint::Finite(hi.clone()),
        );
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = midpoint(&lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Shrink an isolating interval of a squarefree polynomial until its
/// endpoints are adjacent doubles, using exact sign evaluation throughout.
/// Returns the double closest to the root.
pub fn refine_to_f64(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational) -> f64 {
    let ip = IntPoly::from_rational(p);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_hi = ip.sign_at(&hi);
    if s_hi == 0 {
        return rational_to_f64(&hi);
    }
    for _ in 0..4000 {
        let (lf, hf) = (rational_to_f64(&lo), rational_to_f64(&hi));
        let mf = 0.5 * lf + 0.5 * hf;
        let mid = if mf > lf && mf < hf {
            mf.to_rational().unwrap()
        } else if lf == hf || lf.next_up() >= hf {
            break;
        } else {
            midpoint(&lo, &hi)
        };
        let s = ip.sign_at(&mid);
        if s == 0 {
            return rational_to_f64(&mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let (lf, hf) = (rational_to_f64(&lo), rational_to_f64(&hi));
    let pf = p.to_f64();
    if pf.eval(&lf).abs() <= pf.eval(&hf).abs() {
        lf
    } else {
        hf
    }
}

/// Whether `p` changes sign strictly across `[lo, hi]`.
pub fn brackets(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational) -> bool {
    let ip = IntPoly::from_rational(p);
    ip.sign_at(lo) * ip.sign_at(hi) < 0
}

/// Bisect an isolating interval of a squarefree polynomial until its width
/// is at most `2^-bits` relative to the root (absolute near zero). Exact
/// throughout; returns the midpoint.
pub fn refine_rational(p: &RationalPolynomial, lo: &BigRational, hi: &BigRational, bits: u32) -> BigRational {
    let ip = IntPoly::from_rational(p);
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_hi = ip.sign_at(&hi);
    if s_hi == 0 {
        return hi;
    }
    let tol = BigRational::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
    loop {
        let mid = midpoint(&lo, &hi);
        let scale = if lo.abs() > hi.abs() { lo.abs() } else { hi.abs() };
        let scale = if scale > BigRational::from_integer(1.into()) { scale } else { BigRational::from_integer(1.into()) };
        if &hi - &lo <= &tol * scale {
            return mid;
        }
        let s = ip.sign_at(&mid);
        if s == 0 {
            return mid;
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// All distinct real roots, ascending, to full double precision.
pub fn real_roots(p: &RationalPolynomial) -> Vec<f64> {
    let sf = if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    } else {
        p.squarefree_part()
    };
    isolate_real_roots(&sf)
        .iter()
        .map(|(lo, hi)| refine_to_f64(&sf, lo, hi))
        .collect()
}

/// Distinct real roots of a double-precision polynomial (exact on its
/// rational image).
pub fn real_roots_f64(p: &Poly<f64>) -> Vec<f64> {
    match p.to_rational() {
        Some(r) => real_roots(&r),
        None => Vec::new(),
    }
}

/// Distinct real zeros of `p` in the open interval `(a, b)`; the ends may
/// be infinite.
pub fn count_zeros_in<T: Scalar>(p: &Poly<T>, a: f64, b: f64) -> usize {
    let Some(r) = p.to_rational() else {
        return 0;
    };
    SturmChain::new(&r).count_open(&Endpoint::from_f64(a), &Endpoint::from_f64(b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn p(c: &[i64]) -> RationalPolynomial {
        Poly::new(c.iter().map(|&k| ratio(k, 1)).collect())
    }

    #[test]
    fn counts_roots_of_cubic() {
        // (x-1)(x-2)(x+3)
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[3, 1]);
        let ch = SturmChain::new(&f);
        assert_eq!(ch.count_all(), 3);
        let e = |x: i64| Endpoint::Finite(ratio(x, 1));
        assert_eq!(ch.count_open(&e(0), &e(2)), 1);
        assert_eq!(ch.count_half_open(&e(0), &e(2)), 2);
        assert_eq!(ch.count_open(&e(1), &Endpoint::PosInf), 1);
        assert_eq!(ch.count_open(&Endpoint::NegInf, &e(-3)), 0);
    }

    #[test]
    fn multiple_roots_are_counted_once() {
        let f = &(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 0, 1]);
        assert_eq!(SturmChain::new(&f).count_all(), 1);
        assert_eq!(real_roots(&f), vec![1.0]);
    }

    #[test]
    fn irrational_roots_to_full_precision() {
        let f = p(&[-2, 0, 1]);
        let r = real_roots(&f);
        assert_eq!(r.len(), 2);
        assert!((r[1] - 2f64.sqrt()).abs() <= f64::EPSILON * 2.0);
        assert!((r[0] + 2f64.sqrt()).abs() <= f64::EPSILON * 2.0);
    }

    #[test]
    fn no_real_roots() {
        assert!(real_roots(&p(&[1, 0, 1])).is_empty());
        assert!(real_roots(&p(&[5])).is_empty());
    }

    #[test]
    fn zero_count_of_shifted_linear() {
        // z + 2 has its root outside (-1, 1)
        assert_eq!(count_zeros_in(&Poly::new(vec![2.0, 1.0]), -1.0, 1.0), 0);
        assert_eq!(count_zeros_in(&Poly::new(vec![2.0, 1.0]), -3.0, 1.0), 1);
    }
}
