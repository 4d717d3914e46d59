use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `x (x-1) ... (x-m+1) / m!` for real `x`.
pub fn generalized_binomial(x: f64, m: u32) -> f64 {
    let mut acc = 1.0;
    for i in 0..m {
        acc *= (x - f64::from(i)) / f64::from(i + 1);
    }
    acc
}

/// Exact generalized binomial for a rational upper index.
pub fn binomial_rational(x: &BigRational, m: u32) -> BigRational {
    let mut num = BigRational::one();
    let mut den = BigInt::one();
    for i in 0..m {
        num *= x - BigRational::from_integer(BigInt::from(i));
        den *= BigInt::from(i + 1);
    }
    num / BigRational::from_integer(den)
}

/// Rising factorial `(x)_k = x (x+1) ... (x+k-1)`.
pub fn pochhammer(x: f64, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (x + f64::from(i)))
}

pub fn pochhammer_rational(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..k {
        let term = x + BigRational::from_integer(BigInt::from(i));
        if term.is_zero() {
            return BigRational::zero();
        }
        acc *= term;
    }
    acc
}
