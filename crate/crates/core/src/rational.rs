//! Helpers around [`BigRational`]: conversion, parsing, decimal rendering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Small exact rational used for resummation parameters (σ, α, b0 offsets).
pub type Small = Ratio<i64>;

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_small(x: Small) -> BigRational {
    frac(*x.numer(), *x.denom())
}

pub fn small_to_f64(x: Small) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Nearest `f64`; correct for numerators and denominators of any size.
pub fn to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let Some(v) = x.to_f64() {
        if v.is_finite() && v != 0.0 {
            return v;
        }
    }
    let ln = ln_abs(x);
    let s = if x.is_negative() { -1.0 } else { 1.0 };
    s * ln.exp()
}

/// `ln |x|` without overflow for huge numerators or denominators.
pub fn ln_abs(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

fn ln_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = n.abs() >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// The exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Invalid(format!("{x} is not finite")))
}

/// Parse `"p/q"`, an integer, or a decimal literal such as `"-0.25"` or `"1e-2"`.
pub fn parse(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("cannot parse {s:?} as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    let all = format!("{int_part}{frac_part}");
    if !all.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let n: BigInt = all.parse().map_err(|_| bad())?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(n * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(n, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

/// `digits` significant decimal digits in scientific notation, truncated
/// toward zero (e.g. `-3.5109...e14`). Exact integers with at most `digits`
/// digits are printed plainly.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    if x.is_integer() && x.numer().abs().to_string().len() <= digits {
        return x.numer().to_string();
    }
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    // decimal exponent estimate, then fix up by at most one
    let mut e10 = (ln_abs(&a) / std::f64::consts::LN_10).floor() as i64;
    let ten = BigInt::from(10);
    let scaled = |e: i64| -> BigInt {
        let shift = digits as i64 - 1 - e;
        let (n, d) = (a.numer().clone(), a.denom().clone());
        if shift >= 0 {
            (n * num_traits::pow(ten.clone(), shift as usize)).div_floor(&d)
        } else {
            n.div_floor(&(d * num_traits::pow(ten.clone(), (-shift) as usize)))
        }
    };
    let mut m = scaled(e10);
    let lim = num_traits::pow(ten.clone(), digits);
    if m >= lim {
        e10 += 1;
        m = scaled(e10);
    } else if m < num_traits::pow(ten.clone(), digits - 1) {
        e10 -= 1;
        m = scaled(e10);
    }
    let ds = m.to_string();
    let (head, tail) = ds.split_at(1);
    let tail = tail.trim_end_matches('0');
    if tail.is_empty() {
        format!("{sign}{head}e{e10}")
    } else {
        format!("{sign}{head}.{tail}e{e10}")
    }
}

/// `"n"` or `"n/d"`, the layout used in coefficient listings.
pub fn to_fraction_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse("3/4").unwrap(), frac(3, 4));
        assert_eq!(parse("-6/8").unwrap(), frac(-3, 4));
        assert_eq!(parse("12").unwrap(), big(12));
        assert_eq!(parse("-0.25").unwrap(), frac(-1, 4));
        assert_eq!(parse("1e-2").unwrap(), frac(1, 100));
        assert_eq!(parse("2.5E1").unwrap(), big(25));
        assert!(parse("1/0").is_err());
        assert!(parse("abc").is_err());
        assert!(parse(".").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&frac(1, 3), 10), "3.333333333e-1");
        assert_eq!(to_decimal(&big(-9), 40), "-9");
        assert_eq!(to_decimal(&parse("-52920213881686076606297").unwrap(), 5), "-5.292e22");
        assert_eq!(to_decimal(&frac(1, 1000), 4), "1e-3");
    }

    #[test]
    fn huge_to_f64() {
        let x = num_traits::pow(big(10), 400) / num_traits::pow(big(10), 399);
        assert_eq!(to_f64(&x), 10.0);
        let y = frac(1, 3) * num_traits::pow(big(2), 1200);
        assert!(to_f64(&y).is_infinite());
        assert!((ln_abs(&y) - (1200.0 * std::f64::consts::LN_2 - 3f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn float_roundtrip_is_exact() {
        for x in [0.1, -2.5, 1e-300, 123456.789] {
            assert_eq!(to_f64(&from_f64(x).unwrap()), x);
        }
    }
}
