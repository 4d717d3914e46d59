use std::cmp::Ordering;
use std::fmt;
use std::ops::{Div, Mul, Neg};

/// A real number stored as `sign * mantissa * 2^exponent` with the mantissa
/// normalized into `[1, 2)`.
///
/// The exponent is an `i64`, so magnitudes far beyond `f64` range
/// (`|log2 v|` up to ~9e18) are representable. Zero has mantissa 0,
/// exponent 0 and sign 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScaledValue {
    sign: i8,
    mantissa: f64,
    exponent: i64,
}

/// Split a finite non-zero `f64` into `(m, e)` with `|x| = m * 2^e`, `m` in `[1, 2)`.
fn frexp(x: f64) -> (f64, i64) {
    debug_assert!(x.is_finite() && x != 0.0);
    let a = x.abs();
    let bits = a.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // subnormal: lift into the normal range first
        let (m, e) = frexp(a * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1023u64 << 52));
    (m, raw_exp - 1023)
}

fn ldexp(m: f64, e: i64) -> f64 {
    if e > 1100 {
        return m * f64::INFINITY;
    }
    if e < -1100 {
        return m * 0.0;
    }
    // split to stay exact when e sits near the limits of powi
    let half = e / 2;
    m * 2f64.powi(half as i32) * 2f64.powi((e - half) as i32)
}

impl ScaledValue {
    pub const ZERO: ScaledValue = ScaledValue {
        sign: 0,
        mantissa: 0.0,
        exponent: 0,
    };
    pub const ONE: ScaledValue = ScaledValue {
        sign: 1,
        mantissa: 1.0,
        exponent: 0,
    };

    /// Build from raw parts, normalizing the mantissa into `[1, 2)`.
    pub fn from_parts(sign: i8, mantissa: f64, exponent: i64) -> Self {
        if sign == 0 || mantissa == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = frexp(mantissa);
        let s = sign.signum() * if mantissa < 0.0 { -1 } else { 1 };
        ScaledValue {
            sign: s,
            mantissa: m,
            exponent: exponent + e,
        }
    }

    /// `(sign, mantissa, exponent)`; inverse of [`ScaledValue::from_parts`].
    pub fn into_parts(self) -> (i8, f64, i64) {
        (self.sign, self.mantissa, self.exponent)
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "ScaledValue::from_f64 needs a finite value");
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::from_parts(if x < 0.0 { -1 } else { 1 }, x.abs(), 0)
        }
    }

    /// `sign * exp(ln_abs)`.
    pub fn from_ln(sign: i8, ln_abs: f64) -> Self {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            return Self::ZERO;
        }
        let log2 = ln_abs / std::f64::consts::LN_2;
        let e = log2.floor();
        // residual stays in [0, 1) up to rounding; exp2 of it is accurate to ~1 ulp
        let m = (ln_abs - e * std::f64::consts::LN_2).exp();
        Self::from_parts(sign, m, e as i64)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    /// Natural log of the magnitude (`-inf` for zero).
    pub fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
        }
    }

    /// Convert to `f64`, saturating to `±inf` / `0` outside the native range.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            f64::from(self.sign) * ldexp(self.mantissa, self.exponent)
        }
    }

    pub fn abs(self) -> Self {
        ScaledValue {
            sign: self.sign.abs(),
            ..self
        }
    }

    /// Multiply by `2^shift` exactly.
    pub fn scale_pow2(self, shift: i64) -> Self {
        if self.is_zero() {
            self
        } else {
            ScaledValue {
                exponent: self.exponent + shift,
                ..self
            }
        }
    }

    /// `self / other` as a plain `f64`; meaningful when the ratio is moderate.
    pub fn ratio(&self, other: &ScaledValue) -> f64 {
        (*self / *other).to_f64()
    }

    /// Sum of two scaled values.
    pub fn add(self, other: ScaledValue) -> Self {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.exponent >= other.exponent {
            (self, other)
        } else {
            (other, self)
        };
        let shift = small.exponent - big.exponent;
        let a = f64::from(big.sign) * big.mantissa;
        let b = f64::from(small.sign) * ldexp(small.mantissa, shift);
        let s = a + b;
        if s == 0.0 {
            Self::ZERO
        } else {
            Self::from_parts(if s < 0.0 { -1 } else { 1 }, s.abs(), big.exponent)
        }
    }
}

impl Mul for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: ScaledValue) -> ScaledValue {
        if self.is_zero() || rhs.is_zero() {
            return ScaledValue::ZERO;
        }
        ScaledValue::from_parts(
            self.sign * rhs.sign,
            self.mantissa * rhs.mantissa,
            self.exponent + rhs.exponent,
        )
    }
}

impl Mul<f64> for ScaledValue {
    type Output = ScaledValue;
    fn mul(self, rhs: f64) -> ScaledValue {
        self * ScaledValue::from_f64(rhs)
    }
}

impl Div for ScaledValue {
    type Output = ScaledValue;
    fn div(self, rhs: ScaledValue) -> ScaledValue {
        assert!(!rhs.is_zero(), "division of ScaledValue by zero");
        if self.is_zero() {
            return ScaledValue::ZERO;
        }
        ScaledValue::from_parts(
            self.sign * rhs.sign,
            self.mantissa / rhs.mantissa,
            self.exponent - rhs.exponent,
        )
    }
}

impl Neg for ScaledValue {
    type Output = ScaledValue;
    fn neg(self) -> ScaledValue {
        ScaledValue {
            sign: -self.sign,
            ..self
        }
    }
}

impl PartialOrd for ScaledValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let d = self.add(-*other);
        Some(d.sign.cmp(&0))
    }
}

impl fmt::Display for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let log10 = self.ln_abs() / std::f64::consts::LN_10;
        let e10 = log10.floor();
        let m10 = 10f64.powf(log10 - e10);
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}{m10:.12}e{e10}")
    }
}
