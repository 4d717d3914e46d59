//! Large-order data and Borel resummation of the anisotropic oscillator
//! ground-state energy.
//!
//! Everything here works in the variables of the Rayleigh–Schrödinger table:
//! `ḡ = g/4` and `2δ`. In `ḡ` the coefficients grow like `3^k k!`, so the
//! default growth parameter is `σ_ḡ = 3` (equivalently `3/4` in `g`).

use std::f64::consts::PI;

use num_rational::BigRational;

use crate::borel::ResummedApproximant;
use crate::error::{Error, Result};
use crate::model::ImaginaryPartTerm;
use crate::rational::Small;
use crate::series::{Affine, CoefficientTable, LargeOrderParams};
use crate::special::{beta, integrate_unit, ln_factorial, QuadratureSpec, ScaledValue};

pub const DEFAULT_SIGMA: i64 = 3;

/// `γ_n = -(6/π²) (-1)^n B(n+1/2, n+1/2) / n!`, the large-order prefactor of
/// the coefficient of `ḡ^k (2δ)^n`.
pub fn gamma_prefactor(n: usize) -> f64 {
    let nf = n as f64;
    let b = beta(nf + 0.5, nf + 0.5).expect("positive arguments");
    let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
    sign * 6.0 / (PI * PI) * b * (-ln_factorial(n as u64)).exp()
}

/// `b0(n) = n + 3/2`, `β(n) = n`, `α = 1/3`, growth `σ` in `ḡ`.
pub fn qm_params(sigma: Small, n_max: usize) -> Result<LargeOrderParams> {
    LargeOrderParams::new(
        (0..=n_max).map(gamma_prefactor).collect(),
        sigma,
        Affine::new(Small::from_integer(1), Small::from_integer(0)),
        Small::new(1, 3),
    )
}

/// Terms of `Im E = (6/π) Σ_n ((-2δ)^n/n!) B(n+1/2, n+1/2) (4/(3|g|))^{n+1} e^{-4/(3|g|)}`
/// in the raw coupling `g`: `prefactor = (6/π)(2^n/n!)B(n+1/2, n+1/2)`,
/// `power = n + 1`, and `exponent_scale = 3/4` so that `1/(scale |g|) = 4/(3|g|)`.
pub fn qm_imaginary_terms(n_max: usize) -> Vec<ImaginaryPartTerm> {
    (0..=n_max)
        .map(|n| {
            let nf = n as f64;
            let b = beta(nf + 0.5, nf + 0.5).expect("positive arguments");
            ImaginaryPartTerm {
                n,
                prefactor: 6.0 / PI * (nf * 2f64.ln() - ln_factorial(n as u64)).exp() * b,
                exponent_scale: 0.75,
                power: nf + 1.0,
            }
        })
        .collect()
}

/// `B(n+1/2, n+1/2)` from `∫₀^{2π} [2 sin²(2φ)]^n dφ = 8^n · 2 · B(n+1/2, n+1/2)`.
pub fn beta_from_angular_integral(n: usize, quad: &QuadratureSpec) -> Result<f64> {
    let f = |x: f64, _: f64| {
        let s = (4.0 * PI * x).sin();
        (2.0 * s * s).powi(n as i32)
    };
    let integral = 2.0 * PI * integrate_unit(f, quad)?.value;
    Ok(integral / (8f64.powi(n as i32) * 2.0))
}

/// `γ_n (-1)^k σ^k k! k^n`, evaluated in log space.
pub fn qm_large_order_estimate(k: usize, n: usize, sigma_in_gbar: f64) -> Result<ScaledValue> {
    if k == 0 {
        return Err(Error::domain("qm_large_order_estimate", "need k >= 1"));
    }
    if !(sigma_in_gbar > 0.0) {
        return Err(Error::domain("qm_large_order_estimate", format!("sigma = {sigma_in_gbar} must be positive")));
    }
    let g = gamma_prefactor(n);
    let kf = k as f64;
    let ln = g.abs().ln() + kf * sigma_in_gbar.ln() + ln_factorial(k as u64) + n as f64 * kf.ln();
    let sign = if (g < 0.0) == (k % 2 == 0) { -1 } else { 1 };
    Ok(ScaledValue::from_ln(sign, ln))
}

/// Order-`N` resummation of the ground-state energy.
#[derive(Debug)]
pub struct QmResummation {
    approx: ResummedApproximant,
}

impl QmResummation {
    pub fn new(table: &CoefficientTable, order: usize, sigma: Small, quad: QuadratureSpec) -> Result<Self> {
        let params = qm_params(sigma, order)?;
        Ok(QmResummation {
            approx: ResummedApproximant::build(table, params, order, quad)?,
        })
    }

    pub fn approximant(&self) -> &ResummedApproximant {
        &self.approx
    }

    /// `E^{(N)}(ḡ, δ) = Σ_n (Σ_p a_pn I_pn(ḡ)) (2δ)^n`.
    pub fn energy(&self, g_over_4: f64, delta: f64) -> Result<f64> {
        self.approx.resum(g_over_4, 2.0 * delta)
    }

    pub fn coefficient(&self, p: usize, n: usize) -> BigRational {
        self.approx.coefficient(p, n)
    }
}

/// One-shot form of [`QmResummation::energy`].
pub fn resum_energy(
    table: &CoefficientTable,
    order: usize,
    g_over_4: f64,
    delta: f64,
    sigma: Small,
    quad: QuadratureSpec,
) -> Result<f64> {
    QmResummation::new(table, order, sigma, quad)?.energy(g_over_4, delta)
}
