//! Primitive integer polynomials, the working representation behind the
//! exact Sturm machinery. Rational coefficients are cleared once; after that
//! every step scales only by positive integers, so signs are preserved and
//! no per-operation gcd normalisation is paid.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::poly::{Poly, RationalPolynomial};

/// Ascending coefficients, trimmed; empty for the zero polynomial.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct IntPoly(Vec<BigInt>);

fn sgn(x: &BigInt) -> i8 {
    match x.sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl IntPoly {
    fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Self(c)
    }

    /// A positive multiple of `p` with coprime integer coefficients.
    pub(crate) fn from_rational(p: &RationalPolynomial) -> Self {
        let l = p
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(
            p.coeffs()
                .iter()
                .map(|c| c.numer() * (&l / c.denom()))
                .collect(),
        )
        .primitive()
    }

    pub(crate) fn to_rational(&self) -> RationalPolynomial {
        Poly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub(crate) fn leading(&self) -> Option<&BigInt> {
        self.0.last()
    }

    /// Divide out the (positive) content.
    pub(crate) fn primitive(self) -> Self {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        Self(self.0.into_iter().map(|c| c / &g).collect())
    }

    pub(crate) fn neg(self) -> Self {
        Self(self.0.into_iter().map(|c| -c).collect())
    }

    pub(crate) fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// `(q, r)` with `s·self = q·b + r`, `s` a positive integer and
    /// `deg r < deg b`.
    fn pseudo_div(&self, b: &Self) -> (Self, Self) {
        let db = b.degree().expect("division by the zero polynomial");
        let lb = b.leading().unwrap();
        let (alb, sb) = (lb.abs(), BigInt::from(sgn(lb)));
        let mut r = self.0.clone();
        let mut q: Vec<BigInt> = Vec::new();
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() * &sb;
            for x in r.iter_mut() {
                *x *= &alb;
            }
            for (i, bc) in b.0.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
            if q.len() < shift + 1 {
                q.resize(shift + 1, BigInt::zero());
            }
            for x in q.iter_mut() {
                *x *= &alb;
            }
            q[shift] += &c;
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Primitive remainder of a positive multiple of `self` by `b`.
    pub(crate) fn rem(&self, b: &Self) -> Self {
        self.pseudo_div(b).1.primitive()
    }

    /// Primitive gcd with positive leading coefficient.
    pub(crate) fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone().primitive(), other.clone().primitive());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|l| l.is_negative()) {
            a.neg()
        } else {
            a
        }
    }

    /// Squarefree part, primitive, with the sign of `self`'s leading
    /// coefficient.
    pub(crate) fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.pseudo_div(&g).0.primitive()
    }

    /// Sign of `p(x)` for a rational `x = a/b`, via `b^d p(a/b)` in integers.
    pub(crate) fn sign_at(&self, x: &BigRational) -> i8 {
        let Some(d) = self.degree() else {
            return 0;
        };
        let (a, b) = (x.numer(), x.denom());
        let mut acc = self.0[d].clone();
        let mut bp = BigInt::one();
        for k in (0..d).rev() {
            bp *= b;
            acc = acc * a + &self.0[k] * &bp;
        }
        sgn(&acc)
    }

    /// Sign of `p(x)` as `x → +∞` (`positive`) or `-∞`.
    pub(crate) fn sign_at_infinity(&self, positive: bool) -> i8 {
        let Some(d) = self.degree() else {
            return 0;
        };
        let s = sgn(&self.0[d]);
        if !positive && d % 2 == 1 {
            -s
        } else {
            s
        }
    }
}
