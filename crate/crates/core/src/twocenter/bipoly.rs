//! Exact bivariate polynomials in `(λ, R)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cheq::RecurrenceRing;
use crate::poly::{Poly, RationalPolynomial, RealPolynomial};

/// `Σ c_ij λ^i R^j`, stored as polynomials in `R`, one per power of `λ`.
#[derive(Clone, PartialEq)]
pub struct BiPoly {
    by_lambda: Vec<RationalPolynomial>,
}

impl BiPoly {
    pub fn new(mut by_lambda: Vec<RationalPolynomial>) -> Self {
        while by_lambda.last().is_some_and(|c| c.is_zero()) {
            by_lambda.pop();
        }
        Self { by_lambda }
    }

    pub fn zero() -> Self {
        Self { by_lambda: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![Poly::constant(c)])
    }

    /// A polynomial in `R` alone.
    pub fn in_r(p: RationalPolynomial) -> Self {
        Self::new(vec![p])
    }

    pub fn lambda() -> Self {
        Self::new(vec![Poly::zero(), Poly::one()])
    }

    /// From `(i, j, c)` triples meaning `c λ^i R^j`.
    pub fn from_terms(terms: &[(usize, usize, BigRational)]) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            let mut r = vec![BigRational::zero(); j + 1];
            r[*j] = c.clone();
            let mut l = vec![Poly::zero(); i + 1];
            l[*i] = Poly::new(r);
            out = &out + &Self::new(l);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.by_lambda.is_empty()
    }

    /// Coefficient of `λ^i`, a polynomial in `R`.
    pub fn lambda_coeff(&self, i: usize) -> RationalPolynomial {
        self.by_lambda.get(i).cloned().unwrap_or_else(Poly::zero)
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigRational {
        self.lambda_coeff(i).coeff(j)
    }

    pub fn degree_lambda(&self) -> Option<usize> {
        self.by_lambda.len().checked_sub(1)
    }

    pub fn degree_r(&self) -> Option<usize> {
        self.by_lambda.iter().filter_map(|c| c.degree()).max()
    }

    /// Nonzero terms `(i, j, c)`, ordered by `i` then `j`.
    pub fn terms(&self) -> Vec<(usize, usize, BigRational)> {
        let mut out = Vec::new();
        for (i, c) in self.by_lambda.iter().enumerate() {
            for (j, v) in c.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    out.push((i, j, v.clone()));
                }
            }
        }
        out
    }

    /// Specialise `R`, leaving a polynomial in `λ`.
    pub fn at_r(&self, r: &BigRational) -> RationalPolynomial {
        Poly::new(self.by_lambda.iter().map(|c| c.eval(r)).collect())
    }

    /// Specialise `R` in floating point.
    pub fn at_r_f64(&self, r: f64) -> RealPolynomial {
        Poly::new(self.by_lambda.iter().map(|c| c.to_f64().eval(&r)).collect())
    }

    pub fn eval(&self, lambda: f64, r: f64) -> f64 {
        self.at_r_f64(r).eval(&lambda)
    }

    /// `Σ |c_ij| |λ|^i |R|^j`, the scale for judging `eval`.
    pub fn eval_scale(&self, lambda: f64, r: f64) -> f64 {
        self.terms()
            .iter()
            .map(|(i, j, c)| {
                c.abs().to_f64().unwrap_or(f64::INFINITY) * lambda.abs().powi(*i as i32) * r.abs().powi(*j as i32)
            })
            .sum()
    }

    /// `|F| / Σ|c_ij λ^i R^j|`, zero where the scale vanishes.
    pub fn relative_residual(&self, lambda: f64, r: f64) -> f64 {
        let s = self.eval_scale(lambda, r);
        if s == 0.0 {
            0.0
        } else {
            self.eval(lambda, r).abs() / s
        }
    }

    pub fn d_lambda(&self) -> BiPoly {
        Self::new(
            self.by_lambda
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&BigRational::from_integer((i as i64).into())))
                .collect(),
        )
    }

    pub fn d_r(&self) -> BiPoly {
        Self::new(self.by_lambda.iter().map(|c| c.derivative()).collect())
    }

    pub fn to_f64_terms(&self) -> Vec<(usize, usize, f64)> {
        self.terms()
            .into_iter()
            .map(|(i, j, c)| (i, j, c.to_f64().unwrap_or(f64::NAN)))
            .collect()
    }
}

impl std::ops::Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.by_lambda.len().max(o.by_lambda.len());
        BiPoly::new((0..n).map(|i| &self.lambda_coeff(i) + &o.lambda_coeff(i)).collect())
    }
}

impl std::ops::Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.by_lambda.len().max(o.by_lambda.len());
        BiPoly::new((0..n).map(|i| &self.lambda_coeff(i) - &o.lambda_coeff(i)).collect())
    }
}

impl std::ops::Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut out = vec![Poly::zero(); self.by_lambda.len() + o.by_lambda.len() - 1];
        for (i, a) in self.by_lambda.iter().enumerate() {
            for (j, b) in o.by_lambda.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        BiPoly::new(out)
    }
}

impl RecurrenceRing for BiPoly {
    fn from_int(k: i64) -> Self {
        BiPoly::constant(BigRational::from_integer(k.into()))
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

impl fmt::Display for BiPoly {
    /// Terms by descending total degree, then descending power of `λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        terms.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        for (k, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one() && (*i > 0 || *j > 0);
            if !unit {
                if mag.is_integer() {
                    write!(f, "{mag}")?;
                } else {
                    write!(f, "({mag})")?;
                }
            }
            match *i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
            match *j {
                0 => {}
                1 => write!(f, "R")?,
                _ => write!(f, "R^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn arithmetic_and_display() {
        let l = BiPoly::lambda();
        let r = BiPoly::in_r(Poly::x());
        let f = &(&l * &l) - &(&(&r * &r) * &BiPoly::constant(ratio(4, 1)));
        let f = &f + &(&l * &BiPoly::constant(ratio(2, 1)));
        assert_eq!(f.to_string(), "λ^2 - 4R^2 + 2λ");
        assert_eq!(f.degree_lambda(), Some(2));
        assert_eq!(f.degree_r(), Some(2));
        assert_eq!(f.eval(-2.0, 0.0), 0.0);
        assert_eq!(f.at_r(&ratio(1, 2)).coeffs(), &[ratio(-1, 1), ratio(2, 1), ratio(1, 1)]);
        assert_eq!(f.d_lambda().to_string(), "2λ + 2");
        assert_eq!(f.d_r().to_string(), "-8R");
    }

    #[test]
    fn from_terms_round_trip() {
        let t = vec![(0, 2, ratio(64, 1)), (1, 0, ratio(-12, 1)), (3, 0, ratio(-1, 1))];
        let f = BiPoly::from_terms(&t);
        assert_eq!(f.terms(), t);
    }
}
