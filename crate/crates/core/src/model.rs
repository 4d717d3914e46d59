//! The two-dimensional model integral
//!
//! ```text
//! Z(g, δ) = (1/π) ∫ dx dy exp(-(x²+y²) - g[x⁴ + 2(1-δ)x²y² + y⁴])
//! ```
//!
//! and its radial form `∫₀^∞ e^{-ρ - g(1-δ/4)ρ²} I_0(δgρ²/4) dρ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::borel::ResummedApproximant;
use crate::error::{Error, Result};
use crate::rational::Small;
use crate::series::{Affine, CoefficientTable, LargeOrderParams};
use crate::special::{
    bessel_i0_scaled, integrate_semiline, legendre_scaled, legendre_scaled_sequence, ln_factorial, log_gamma,
    QuadResult, QuadratureSpec, ScaledValue,
};

/// Growth constant of the model coefficients.
pub const SIGMA: i64 = 4;

fn factorials(m: usize) -> Vec<BigInt> {
    let mut f = vec![BigInt::one(); m + 1];
    for i in 1..=m {
        f[i] = &f[i - 1] * BigInt::from(i);
    }
    f
}

fn z_entry(k: usize, n: usize, fact: &[BigInt]) -> BigRational {
    if k < n {
        return BigRational::zero();
    }
    let num = &fact[2 * n] * &fact[2 * k];
    let den = BigInt::from(8).pow(n as u32) * &fact[n] * &fact[n] * &fact[n] * &fact[k - n];
    let v = BigRational::new(num, den);
    if (k + n) % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `Z_kn`, the coefficient of `g^k δ^n`:
/// `(-1)^{k+n} (2n)! (2k)! / (8^n (n!)³ (k-n)!)`, zero for `k < n`.
pub fn z_coeff(k: i64, n: i64) -> Result<BigRational> {
    if k < 0 || n < 0 {
        return Err(Error::domain("z_coeff", format!("negative index ({k}, {n})")));
    }
    let (k, n) = (k as usize, n as usize);
    if k < n {
        return Ok(BigRational::zero());
    }
    Ok(z_entry(k, n, &factorials(2 * k)))
}

/// Exact table of `Z_kn` for `k <= kmax`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelCoefficients {
    pub table: CoefficientTable,
}

impl ModelCoefficients {
    pub fn build(kmax: usize) -> Self {
        let fact = factorials(2 * kmax);
        ModelCoefficients {
            table: CoefficientTable::from_fn(kmax, |k, n| z_entry(k, n, &fact)),
        }
    }

    pub fn kmax(&self) -> usize {
        self.table.kmax()
    }
}

/// `Z_k(δ) = Σ_n Z_kn δ^n`, exact.
pub fn z_coeff_delta(k: usize, delta: &BigRational) -> BigRational {
    let fact = factorials(2 * k);
    (0..=k)
        .rev()
        .fold(BigRational::zero(), |acc, n| acc * delta + z_entry(k, n, &fact))
}

fn legendre_argument(delta: f64) -> Result<f64> {
    if !(delta < 2.0) {
        return Err(Error::domain("z_coeff_delta_legendre", format!("need delta < 2, got {delta}")));
    }
    Ok((4.0 - delta) / (2.0 * (4.0 - 2.0 * delta).sqrt()))
}

fn legendre_prefactor_ln(k: usize, delta: f64) -> f64 {
    // (2k)!/k! (1-δ/2)^{k/2}
    ln_factorial(2 * k as u64) - ln_factorial(k as u64) + 0.5 * k as f64 * (1.0 - delta / 2.0).ln()
}

fn parity(k: usize) -> i8 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `Z_k(δ) = (-1)^k (2k)!/k! (1-δ/2)^{k/2} P_k((4-δ)/(2√(4-2δ)))`, overflow-safe.
pub fn z_coeff_delta_legendre(k: usize, delta: f64) -> Result<ScaledValue> {
    let x = legendre_argument(delta)?;
    let pk = legendre_scaled(k, x)?;
    let pre = ScaledValue::from_ln(parity(k), legendre_prefactor_ln(k, delta));
    Ok(pre * pk)
}

/// `Z_k(δ)` for all `k <= kmax`, as used by the crossover scan.
pub fn z_column_delta(kmax: usize, delta: f64) -> Result<Vec<ScaledValue>> {
    let x = legendre_argument(delta)?;
    let p = legendre_scaled_sequence(kmax, x)?;
    Ok(p
        .into_iter()
        .enumerate()
        .map(|(k, pk)| ScaledValue::from_ln(parity(k), legendre_prefactor_ln(k, delta)) * pk)
        .collect())
}

/// `Z(g, δ)` by quadrature of the radial representation with the exponentially
/// scaled Bessel function.
pub fn z_reference(g: f64, delta: f64, spec: &QuadratureSpec) -> Result<QuadResult> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::domain("z_reference", format!("need g > 0, got {g}")));
    }
    if !(delta < 2.0) {
        return Err(Error::domain("z_reference", format!("need delta < 2, got {delta}")));
    }
    // e^{-g(1-δ/4)ρ²} I_0(δgρ²/4) = e^{-g(1-δ/4-|δ|/4)ρ²} · e^{-|x|} I_0(|x|)
    let quad_coeff = g * (1.0 - delta / 4.0 - delta.abs() / 4.0);
    let bessel_coeff = delta.abs() * g / 4.0;
    let f = |rho: f64| {
        let r2 = rho * rho;
        (-rho - quad_coeff * r2).exp() * bessel_i0_scaled(bessel_coeff * r2)
    };
    integrate_semiline(f, spec)
}

/// Partial sum of `κ(δ) = (√π/2) Σ_n ((2n)!)² / ((n!)⁴ 2^{5n}) δ^n`, the
/// prefactor of the strong-coupling limit `Z → κ(δ) g^{-1/2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaSum {
    pub value: f64,
    /// Bound on the neglected tail; infinite when the series diverges.
    pub remainder: f64,
    /// `|δ| >= 2`: the series diverges and `value` is only a partial sum.
    pub divergent: bool,
}

pub fn strong_coupling_kappa(delta: f64, terms: usize) -> KappaSum {
    let mut t = std::f64::consts::PI.sqrt() / 2.0;
    let mut sum = 0.0;
    for n in 0..terms {
        sum += t;
        let m = n as f64;
        let r = 2.0 * (2.0 * m + 1.0) / (m + 1.0);
        t *= r * r / 32.0 * delta;
    }
    let divergent = delta.abs() >= 2.0;
    // successive term ratios increase towards δ/2 from below
    let remainder = if divergent {
        f64::INFINITY
    } else {
        t.abs() / (1.0 - delta.abs() / 2.0)
    };
    KappaSum {
        value: sum,
        remainder,
        divergent,
    }
}

/// One term `prefactor · (1/(scale |g|))^power · e^{-1/(scale |g|)}` of the
/// imaginary part on the negative-coupling cut, multiplying `δ^n`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ImaginaryPartTerm {
    pub n: usize,
    pub prefactor: f64,
    pub exponent_scale: f64,
    pub power: f64,
}

/// `Im Z = -Σ_n (-1)^n δ^n Γ(n+1/2)/(2^n n!²) (1/(4|g|))^{n+1/2} e^{-1/(4|g|)}`.
/// Prefactors are stored as magnitudes; [`imaginary_part`] applies the signs.
pub fn imaginary_part_terms(n_max: usize) -> Vec<ImaginaryPartTerm> {
    (0..=n_max)
        .map(|n| {
            let ln = log_gamma(n as f64 + 0.5).expect("positive argument") - n as f64 * 2f64.ln()
                - 2.0 * ln_factorial(n as u64);
            ImaginaryPartTerm {
                n,
                prefactor: ln.exp(),
                exponent_scale: SIGMA as f64,
                power: n as f64 + 0.5,
            }
        })
        .collect()
}

/// `Im Z(g, δ)` for `g < 0` from the first `n_max + 1` terms.
pub fn imaginary_part(g: f64, delta: f64, n_max: usize) -> Result<f64> {
    if !(g < 0.0) {
        return Err(Error::domain("imaginary_part", format!("the cut lies at g < 0, got {g}")));
    }
    Ok(imaginary_part_terms(n_max)
        .iter()
        .map(|t| {
            let u = 1.0 / (t.exponent_scale * g.abs());
            let sign = if t.n % 2 == 0 { -1.0 } else { 1.0 };
            sign * delta.powi(t.n as i32) * t.prefactor * (t.power * u.ln() - u).exp()
        })
        .sum())
}

/// Coefficient of `g^k δ^n` implied by the dispersion relation
/// `Z_kn = (1/π) ∫_{-∞}^0 Im Z_n(g) g^{-k-1} dg` applied to one imaginary-part
/// term, evaluated in closed form: `(-1)^{k+n} prefactor 4^k Γ(k+n+1/2) / π`.
pub fn dispersion_coefficient(k: usize, n: usize) -> ScaledValue {
    let t = imaginary_part_terms(n)[n];
    let ln = t.prefactor.ln() + k as f64 * t.exponent_scale.ln()
        + log_gamma(k as f64 + t.power).expect("positive argument")
        - std::f64::consts::PI.ln();
    ScaledValue::from_ln(parity(k + n), ln)
}

/// The dispersion integral for one term evaluated by quadrature, after the
/// substitution `u = 1/(scale |g|)` that turns the algebraic tail at `g -> -∞`
/// into the endpoint `u -> 0`.
pub fn dispersion_integral(k: usize, n: usize, spec: &QuadratureSpec) -> Result<f64> {
    let t = imaginary_part_terms(n)[n];
    let c = t.exponent_scale;
    // |g|^{-k-1} d|g| = c^{k} u^{k-1} du
    let f = |u: f64| (t.power * u.ln() - u + (k as f64 - 1.0) * u.ln()).exp();
    let v = integrate_semiline(f, spec)?.value * c.powi(k as i32) * t.prefactor / std::f64::consts::PI;
    Ok(if (k + n) % 2 == 1 { -v } else { v })
}

/// `Z_kn ≈ (-1)^{k+n} Γ(n+1/2)/(2^n n!²) (4^k/π) k! k^{n-1/2}` for `k >> n`.
pub fn large_order_estimate(k: usize, n: usize) -> Result<ScaledValue> {
    if k == 0 {
        return Err(Error::domain("large_order_estimate", "need k >= 1"));
    }
    let t = imaginary_part_terms(n)[n];
    let kf = k as f64;
    let ln = t.prefactor.ln() + kf * 4f64.ln() - std::f64::consts::PI.ln() + ln_factorial(k as u64)
        + (n as f64 - 0.5) * kf.ln();
    Ok(ScaledValue::from_ln(parity(k + n), ln))
}

/// Large-order behavior of `Z_k(δ)` at fixed anisotropy.
///
/// * `δ > 0`: `(√2/π) (-1)^k 4^k k! k^{-1} δ^{-1/2} (1 + 1/(2kδ))`
/// * `δ < 0`: `(√(2-δ)/π) (-1)^k (4-2δ)^k k! k^{-1} (-δ)^{-1/2} (1 - 1/(2kδ))`
/// * `δ = 0`: `(-1)^k 4^k k! / √(πk)`
pub fn large_order_fixed_delta(k: usize, delta: f64) -> Result<ScaledValue> {
    if k == 0 {
        return Err(Error::domain("large_order_fixed_delta", "need k >= 1"));
    }
    if !(delta < 2.0) {
        return Err(Error::domain("large_order_fixed_delta", format!("need delta < 2, got {delta}")));
    }
    let kf = k as f64;
    let pi = std::f64::consts::PI;
    let ln = if delta > 0.0 {
        0.5 * 2f64.ln() - pi.ln() + kf * 4f64.ln() - kf.ln() - 0.5 * delta.ln() + (1.0 + 1.0 / (2.0 * kf * delta)).ln()
    } else if delta < 0.0 {
        0.5 * (2.0 - delta).ln() - pi.ln() + kf * (4.0 - 2.0 * delta).ln() - kf.ln() - 0.5 * (-delta).ln()
            + (1.0 - 1.0 / (2.0 * kf * delta)).ln()
    } else {
        kf * 4f64.ln() - 0.5 * (pi * kf).ln()
    };
    Ok(ScaledValue::from_ln(parity(k), ln + ln_factorial(k as u64)))
}

/// Large-order and strong-coupling data of the model: `σ = 4`, `β(n) = n - 1/2`,
/// `b0(n) = n + 1`, `α = -1/2`.
pub fn model_params(n_max: usize) -> LargeOrderParams {
    let gamma = imaginary_part_terms(n_max)
        .iter()
        .map(|t| if t.n % 2 == 0 { 1.0 } else { -1.0 } * t.prefactor / std::f64::consts::PI)
        .collect();
    LargeOrderParams::new(
        gamma,
        Small::from_integer(SIGMA),
        Affine::new(Small::from_integer(1), Small::new(-1, 2)),
        Small::new(-1, 2),
    )
    .expect("sigma is positive")
}

/// Order-`N` Borel approximant of the model integral.
pub fn model_approximant(order: usize, quad: QuadratureSpec) -> Result<ResummedApproximant> {
    let coeffs = ModelCoefficients::build(order);
    ResummedApproximant::build(&coeffs.table, model_params(order), order, quad)
}

/// Closed form of the only nonzero expansion coefficients when `α = -1/2`:
/// `a_nn = (1/8^n) ((n+1)/(2n+1)) ((2n)!/(n!)²)`.
pub fn diagonal_coefficient(n: usize) -> BigRational {
    let fact = factorials(2 * n);
    BigRational::new(
        BigInt::from(n + 1) * &fact[2 * n],
        BigInt::from(8).pow(n as u32) * BigInt::from(2 * n + 1) * &fact[n] * &fact[n],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{self, big, frac};
    use proptest::prelude::*;

    /// `⟨x^{2a} y^{2b}⟩` under `e^{-(x²+y²)}/π`.
    fn moment(a: usize, b: usize) -> BigRational {
        let dfact = |m: usize| (1..=m).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1));
        BigRational::new(dfact(a) * dfact(b), BigInt::from(2).pow((a + b) as u32))
    }

    /// Expand `(-g)^k/k! ⟨(x⁴ + 2x²y² + y⁴ - 2δx²y²)^k⟩` and pick the `δ^n` term.
    fn moment_oracle(k: usize, n: usize) -> BigRational {
        let binom = |a: usize, b: usize| -> BigInt {
            (0..b).fold(BigInt::one(), |acc, i| acc * BigInt::from(a - i)) / (1..=b).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
        };
        // (r⁴)^{k-n} (-2δ x²y²)^n with r⁴ = Σ_j binom(2m, j) ... expand (x²+y²)^{2(k-n)}
        let m = k - n;
        let mut acc = BigRational::zero();
        for j in 0..=2 * m {
            let c = BigRational::from_integer(binom(2 * m, j));
            acc += c * moment(j + n, 2 * m - j + n);
        }
        let fact_k = (1..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i));
        let sign = if k % 2 == 0 { 1 } else { -1 };
        // (-g)^k/k! · binom(k, n) (-2)^n
        let pre = BigRational::new(BigInt::from(sign) * binom(k, n) * BigInt::from(-2).pow(n as u32), fact_k);
        pre * acc
    }

    #[test]
    fn coefficient_examples() {
        assert_eq!(z_coeff(0, 0).unwrap(), big(1));
        assert_eq!(z_coeff(1, 1).unwrap(), frac(1, 2));
        assert_eq!(z_coeff(2, 2).unwrap(), frac(9, 8));
        assert_eq!(z_coeff(1, 0).unwrap(), big(-2));
        assert_eq!(z_coeff(2, 0).unwrap(), big(12));
        assert_eq!(z_coeff(1, 3).unwrap(), big(0));
        assert!(z_coeff(-1, 0).is_err());
        assert!(z_coeff(2, -1).is_err());
    }

    #[test]
    fn closed_form_matches_gaussian_moments() {
        for k in 0..=7 {
            for n in 0..=k {
                assert_eq!(z_coeff(k as i64, n as i64).unwrap(), moment_oracle(k, n), "({k},{n})");
            }
        }
    }

    #[test]
    fn delta_polynomials() {
        let d = frac(3, 7);
        assert_eq!(z_coeff_delta(1, &d), big(-2) + &d / big(2));
        assert_eq!(z_coeff_delta(2, &d), big(12) - big(6) * &d + frac(9, 8) * &d * &d);
        for k in 0..10 {
            let f: BigInt = (k + 1..=2 * k).fold(BigInt::one(), |a, i| a * BigInt::from(i));
            let want = BigRational::from_integer(if k % 2 == 0 { f } else { -f });
            assert_eq!(z_coeff_delta(k, &big(0)), want);
        }
    }

    #[test]
    fn legendre_form_matches_double_series() {
        for d in [frac(-1, 1), frac(-1, 2), frac(1, 2), frac(1, 1)] {
            let df = rational::to_f64(&d);
            for k in 0..=60 {
                let exact = rational::to_f64(&z_coeff_delta(k, &d));
                let leg = z_coeff_delta_legendre(k, df).unwrap().to_f64();
                assert!(((leg - exact) / exact).abs() < 1e-9, "k={k} δ={df}: {leg} vs {exact}");
            }
        }
        let col = z_column_delta(60, 0.5).unwrap();
        for k in [0, 7, 60] {
            let a = z_coeff_delta_legendre(k, 0.5).unwrap();
            assert!((col[k].ratio(&a) - 1.0).abs() < 1e-12);
        }
        assert!(z_coeff_delta_legendre(3, 2.0).is_err());
    }

    #[test]
    fn reference_integral_examples() {
        let q = QuadratureSpec::default();
        let v = z_reference(1e-10, 0.7, &q).unwrap().value;
        assert!((v - 1.0).abs() < 1e-8);
        let v = z_reference(1.0, 0.0, &q).unwrap().value;
        assert!((v - 0.545_641_360_765_047).abs() < 1e-10, "{v}");
        assert!(z_reference(0.0, 0.0, &q).is_err());
        assert!(z_reference(1.0, 2.0, &q).is_err());
    }

    #[test]
    fn reference_inside_optimal_truncation_bracket() {
        let q = QuadratureSpec::default();
        let (g, d) = (0.02, frac(1, 2));
        let z = z_reference(g, 0.5, &q).unwrap().value;
        // partial sums of an alternating series bracket the value up to the smallest term
        let terms: Vec<f64> = (0..40).map(|k| rational::to_f64(&z_coeff_delta(k, &d)) * g.powi(k as i32)).collect();
        let kmin = (1..40).min_by(|&a, &b| terms[a].abs().total_cmp(&terms[b].abs())).unwrap();
        let s0: f64 = terms[..kmin].iter().sum();
        let s1 = s0 + terms[kmin];
        assert!(z >= s0.min(s1) && z <= s0.max(s1), "{z} outside [{s0}, {s1}]");
    }

    #[test]
    fn reference_decreases_in_g() {
        let q = QuadratureSpec::default();
        for &d in &[-1.5, -0.5, 0.0, 0.5, 1.5] {
            let mut prev = f64::INFINITY;
            for &g in &[0.01, 0.1, 0.3, 1.0, 3.0, 10.0] {
                let h = 1e-4 * g;
                let a = z_reference(g - h, d, &q).unwrap().value;
                let b = z_reference(g + h, d, &q).unwrap().value;
                assert!(b - a < 0.0, "δ={d} g={g}");
                let v = z_reference(g, d, &q).unwrap().value;
                assert!(v < prev);
                prev = v;
            }
        }
    }

    #[test]
    fn kappa_series() {
        let k0 = strong_coupling_kappa(0.0, 10);
        assert!((k0.value - 0.886_226_925_452_758).abs() < 1e-15);
        assert_eq!(k0.remainder, 0.0);
        let k1 = strong_coupling_kappa(1.0, 50);
        assert!(!k1.divergent && k1.remainder < 1e-14);
        // term ratio tends to δ/2
        let ln_t = |n: u64| 2.0 * ln_factorial(2 * n) - 4.0 * ln_factorial(n) - 5.0 * n as f64 * 2f64.ln();
        let ratio = (ln_t(4000) - ln_t(3999)).exp();
        assert!((ratio - 0.5).abs() < 2e-4, "{ratio}");
        assert!(strong_coupling_kappa(2.5, 10).divergent);
        let k = strong_coupling_kappa(-1.0, 100);
        assert!(k.value < k0.value);
    }

    #[test]
    fn imaginary_part_prefactors() {
        let sp = std::f64::consts::PI.sqrt();
        let t = imaginary_part_terms(2);
        let want = [(sp, 0.5), (sp / 4.0, 1.5), (3.0 * sp / 64.0, 2.5)];
        for (term, (p, w)) in t.iter().zip(want) {
            assert!((term.prefactor / p - 1.0).abs() < 1e-13, "{} vs {p}", term.prefactor);
            assert_eq!(term.power, w);
            assert_eq!(term.exponent_scale, 4.0);
        }
        assert!(imaginary_part(0.1, 0.0, 2).is_err());
        let v = imaginary_part(-0.1, 0.0, 0).unwrap();
        assert!((v + sp * 2.5f64.sqrt() * (-2.5f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn dispersion_integral_matches_closed_form() {
        let q = QuadratureSpec::default();
        for n in 0..3 {
            for k in [1usize, 3, 6, 10] {
                let num = dispersion_integral(k, n, &q).unwrap();
                let closed = dispersion_coefficient(k, n).to_f64();
                assert!(((num - closed) / closed).abs() < 1e-10, "k={k} n={n}: {num} vs {closed}");
            }
        }
        // the closed form reproduces the n = 0 column exactly
        for k in [1usize, 10, 50] {
            let exact = crate::series::scaled_from_rational(&z_coeff(k as i64, 0).unwrap());
            assert!((exact.ratio(&dispersion_coefficient(k, 0)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn large_order_ratios() {
        let r = |k: usize, n: usize| {
            let exact = crate::series::scaled_from_rational(&z_coeff(k as i64, n as i64).unwrap());
            exact.ratio(&large_order_estimate(k, n).unwrap())
        };
        assert!((r(100, 0) - 1.0).abs() < 0.01);
        assert!((r(200, 2) - 1.0).abs() < 0.03);
        assert!(large_order_estimate(0, 0).is_err());
    }

    #[test]
    fn fixed_delta_asymptotics() {
        // δ < 0 grows with 4 - 2δ = 6 at δ = -1
        let d = big(-1);
        let (a, b) = (z_coeff_delta(300, &d), z_coeff_delta(301, &d));
        let growth = -rational::to_f64(&(b / a)) / 301.0;
        assert!((growth - 6.0).abs() < 0.05, "{growth}");
        for &delta in &[-1.0, -0.5, 0.0, 0.5, 1.0] {
            let k = 3000;
            let exact = z_coeff_delta_legendre(k, delta).unwrap();
            let est = large_order_fixed_delta(k, delta).unwrap();
            assert!((exact.ratio(&est) - 1.0).abs() < 2e-3, "δ={delta}: {}", exact.ratio(&est));
        }
    }

    #[test]
    fn model_params_shape() {
        let p = model_params(3);
        assert_eq!(p.b0_of_n(0), Small::from_integer(1));
        assert_eq!(p.b0_of_n(2), Small::from_integer(3));
        assert_eq!(p.alpha(), Small::new(-1, 2));
        assert!((p.gamma[0] - 1.0 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!(p.gamma[1] < 0.0);
    }

    #[test]
    fn sparsity_for_small_orders() {
        let approx = model_approximant(6, QuadratureSpec::default()).unwrap();
        for n in 0..=6 {
            for p in n..=6 {
                let want = if p == n { diagonal_coefficient(n) } else { big(0) };
                assert_eq!(approx.coefficient(p, n), want, "a_({p},{n})");
            }
        }
        assert_eq!(diagonal_coefficient(1), frac(1, 6));
        assert_eq!(diagonal_coefficient(2), frac(9, 160));
    }

    proptest! {
        #[test]
        fn alternating_signs(k in 0i64..80, n in 0i64..80) {
            prop_assume!(n <= k);
            let z = z_coeff(k, n).unwrap();
            let want = if (k + n) % 2 == 0 { num_traits::Signed::is_positive(&z) } else { num_traits::Signed::is_negative(&z) };
            prop_assert!(want);
        }
    }
}
