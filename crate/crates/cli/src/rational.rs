//! Exact parsing of numeric arguments.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Parse `p/q`, an integer, or a decimal with optional exponent
/// (`-4.2163`, `1e-3`) into the exact rational it denotes.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let t = s.trim().replace('\u{2212}', "-");
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q.trim().parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(&t).ok_or_else(|| format!("not a number: {s:?}"))
}

fn parse_decimal(t: &str) -> Option<BigRational> {
    let (neg, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(i) => (&body[..i], body[i + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let shift = exp - i32::try_from(frac.len()).ok()?;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let mut x = if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    if neg {
        x = -x;
    }
    Some(x)
}

/// `Some(n)` if `x` is a non-negative integer.
pub fn as_count(x: &BigRational) -> Option<usize> {
    if !x.denom().is_one() || x.numer() < &BigInt::zero() {
        return None;
    }
    x.numer().to_string().parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn fractions_and_integers() {
        assert_eq!(parse_rational("10/3").unwrap(), r(10, 3));
        assert_eq!(parse_rational("-7/16").unwrap(), r(-7, 16));
        assert_eq!(parse_rational("4/-2").unwrap(), r(-2, 1));
        assert_eq!(parse_rational(" 8 ").unwrap(), r(8, 1));
        assert_eq!(parse_rational("\u{2212}3").unwrap(), r(-3, 1));
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.1").unwrap(), r(1, 10));
        assert_eq!(parse_rational("-4.25").unwrap(), r(-17, 4));
        assert_eq!(parse_rational("1e-3").unwrap(), r(1, 1000));
        assert_eq!(parse_rational("2.5E2").unwrap(), r(250, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        assert_eq!(parse_rational("3.").unwrap(), r(3, 1));
    }

    #[test]
    fn rejects_garbage() {
        for s in ["", "abc", "1/0", "1.2.3", "nan", "inf", "-", "e5", "1/x"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(as_count(&r(4, 2)), Some(2));
        assert_eq!(as_count(&r(0, 1)), Some(0));
        assert_eq!(as_count(&r(1, 2)), None);
        assert_eq!(as_count(&r(-1, 1)), None);
    }
}
