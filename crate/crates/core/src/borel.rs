//! Hypergeometric Borel resummation of double series.
//!
//! Each column `c_k` (fixed power `n` of the anisotropy) is rewritten as
//! `Σ_p a_p I_p(g)`, where the basis integrals
//!
//! ```text
//! I_p(g) = ∫₀^∞ dt e^{-t} t^{b0} / Γ(b0+1) · ((1+√(1+σgt))/2)^{2α} · (σgt)^p / (1+√(1+σgt))^{2p}
//! ```
//!
//! carry the known large-order growth `σ` and strong-coupling power `g^α`.
//! The `a_p` follow from matching the Taylor series of `Σ a_p I_p` to the
//! input through order `N`.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, from_small, small_to_f64};
use crate::series::{CoefficientTable, LargeOrderParams};
use crate::special::{
    binomial_rational, generalized_binomial, integrate_semiline, integrate_unit, log_gamma, pochhammer,
    pochhammer_rational, QuadratureSpec,
};

/// Below this value of `σg` the basis integrals are summed from their
/// asymptotic series rather than integrated.
pub const SMALL_COUPLING: f64 = 1e-3;

/// One basis integral `I_p` with Borel parameter `b0`, strong-coupling
/// exponent `α` and growth parameter `σ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BorelBasisSpec {
    pub p: usize,
    pub b0: f64,
    pub alpha: f64,
    pub sigma: f64,
}

impl BorelBasisSpec {
    pub fn new(p: usize, b0: f64, alpha: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::Invalid(format!("sigma = {sigma} must be positive")));
        }
        if !(b0 > -1.0) || !alpha.is_finite() {
            return Err(Error::Invalid(format!("need b0 > -1 and finite alpha, got b0 = {b0}, alpha = {alpha}")));
        }
        Ok(BorelBasisSpec { p, b0, alpha, sigma })
    }

    /// `a = p - α`, the hypergeometric parameter of the expansion.
    pub fn a(&self) -> f64 {
        self.p as f64 - self.alpha
    }

    /// Exponent of `1/(1-w)` in the w-form integrand.
    pub fn endpoint_exponent(&self) -> f64 {
        2.0 * self.b0 + 2.0 * self.alpha + 3.0
    }

    /// Coefficient of `g^k` in the Taylor series of `I_p`; zero for `k < p`.
    pub fn taylor_coefficient(&self, k: usize) -> f64 {
        if k < self.p {
            return 0.0;
        }
        let m = (k - self.p) as u32;
        let a = self.a();
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let ln = k as f64 * self.sigma.ln() + ln_pochhammer(self.b0 + 1.0, k as u32)
            - self.p as f64 * 4f64.ln();
        sign * ln.exp() * hyper_term(a, m)
    }
}

fn ln_pochhammer(x: f64, k: u32) -> f64 {
    (0..k).map(|i| (x + f64::from(i)).ln()).sum()
}

/// `(a)_m (a+1/2)_m / ((2a+1)_m m!)`
fn hyper_term(a: f64, m: u32) -> f64 {
    (0..m).fold(1.0, |acc, i| {
        let i = f64::from(i);
        acc * (a + i) * (a + 0.5 + i) / ((2.0 * a + 1.0 + i) * (i + 1.0))
    })
}

/// Exact Taylor coefficient of `g^k` in `I_p` for rational parameters.
pub fn taylor_coefficient_exact(
    p: usize,
    k: usize,
    b0: &BigRational,
    alpha: &BigRational,
    sigma: &BigRational,
) -> BigRational {
    if k < p {
        return BigRational::zero();
    }
    let m = (k - p) as u32;
    let a = rational::big(p as i64) - alpha;
    let half = rational::frac(1, 2);
    let hyper = pochhammer_rational(&a, m) * pochhammer_rational(&(&a + &half), m)
        / (pochhammer_rational(&(&a * rational::big(2) + BigRational::one()), m)
            * pochhammer_rational(&BigRational::one(), m));
    let mut v = num_traits::pow(sigma.clone(), k)
        * pochhammer_rational(&(b0 + BigRational::one()), k as u32)
        * hyper
        / BigRational::from_integer(BigInt::from(4).pow(p as u32));
    if m % 2 == 1 {
        v = -v;
    }
    v
}

/// Expansion coefficients `a_p` (`p = n..=order`) of one column.
///
/// `column[i]` is the coefficient of `g^{n+i}`; entries beyond `order - n`
/// are ignored. Exact whenever the parameters are rational.
pub fn borel_coefficients(
    column: &[BigRational],
    params: &LargeOrderParams,
    n: usize,
    order: usize,
) -> Result<Vec<BigRational>> {
    if order < n {
        return Err(Error::Invalid(format!("order {order} below the column index {n}")));
    }
    if column.len() < order - n + 1 {
        return Err(Error::Range {
            requested: order,
            available: n + column.len().saturating_sub(1),
        });
    }
    let b0 = from_small(params.b0_of_n(n));
    let alpha = from_small(params.alpha());
    let ratio = rational::big(4) / from_small(params.sigma());
    let one = BigRational::one();
    // c_k (4/σ)^k / (b0+1)_k, shared by every p
    let mut scaled = Vec::with_capacity(order - n + 1);
    let mut poch = pochhammer_rational(&(&b0 + &one), n as u32);
    let mut pow = num_traits::pow(ratio.clone(), n);
    for k in n..=order {
        if k > n {
            poch *= &b0 + rational::big(k as i64);
            pow *= &ratio;
        }
        scaled.push(&column[k - n] * &pow / &poch);
    }
    let two_alpha = &alpha * rational::big(2);
    let mut out = Vec::with_capacity(order - n + 1);
    for p in n..=order {
        let mut acc = BigRational::zero();
        for k in n..=p {
            let upper = rational::big((p + k) as i64 - 1) - &two_alpha;
            acc += &scaled[k - n] * binomial_rational(&upper, (p - k) as u32);
        }
        out.push(acc);
    }
    Ok(out)
}

/// Floating-point version of [`borel_coefficients`].
pub fn borel_coefficients_f64(column: &[f64], b0: f64, alpha: f64, sigma: f64, n: usize, order: usize) -> Vec<f64> {
    (n..=order)
        .map(|p| {
            (n..=p)
                .map(|k| {
                    column[k - n] * (4.0 / sigma).powi(k as i32) / pochhammer(b0 + 1.0, k as u32)
                        * generalized_binomial((p + k) as f64 - 1.0 - 2.0 * alpha, (p - k) as u32)
                })
                .sum()
        })
        .collect()
}

/// `I_p(g)` from the w-substitution `w = (√(1+σgt)-1)/(√(1+σgt)+1)`:
///
/// ```text
/// I_p(g) = (4/σg)^{b0+1} ∫₀¹ dw (1+w) w^{b0+p} / (Γ(b0+1) (1-w)^{2b0+2α+3}) exp(-4w / ((1-w)² σg))
/// ```
///
/// For `σg` below [`SMALL_COUPLING`] the optimally truncated Taylor series is used.
pub fn basis_integral(spec: &BorelBasisSpec, g: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_coupling(g)?;
    if spec.sigma * g < SMALL_COUPLING {
        return Ok(basis_series(spec, g));
    }
    let s = spec.sigma * g;
    let pre = (spec.b0 + 1.0) * (4.0 / s).ln() - log_gamma(spec.b0 + 1.0)?;
    let e_w = spec.b0 + spec.p as f64;
    let e_end = spec.endpoint_exponent();
    let f = |w: f64, wc: f64| {
        if w <= 0.0 {
            return 0.0;
        }
        let ln = pre + (1.0 + w).ln() + e_w * w.ln() - e_end * wc.ln() - 4.0 * w / (wc * wc * s);
        ln.exp()
    };
    Ok(integrate_unit(f, quad)?.value)
}

/// `I_p(g)` directly from the Borel t-integral; used as a cross-check.
pub fn basis_integral_t_form(spec: &BorelBasisSpec, g: f64, quad: &QuadratureSpec) -> Result<f64> {
    check_coupling(g)?;
    let lg = log_gamma(spec.b0 + 1.0)?;
    let f = |t: f64| {
        let x = spec.sigma * g * t;
        let r = 1.0 + (1.0 + x).sqrt();
        let ln = -t + spec.b0 * t.ln() - lg + 2.0 * spec.alpha * (r / 2.0).ln()
            + if spec.p == 0 { 0.0 } else { spec.p as f64 * (x.ln() - 2.0 * r.ln()) };
        ln.exp()
    };
    Ok(integrate_semiline(f, quad)?.value)
}

fn check_coupling(g: f64) -> Result<()> {
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::domain("basis_integral", format!("coupling must be positive, got {g}")));
    }
    Ok(())
}

fn basis_series(spec: &BorelBasisSpec, g: f64) -> f64 {
    let p = spec.p;
    let a = spec.a();
    let s = spec.sigma * g;
    // leading term (σg)^p (b0+1)_p / 4^p, then ratios
    let mut term = (p as f64 * (s / 4.0).ln() + ln_pochhammer(spec.b0 + 1.0, p as u32)).exp();
    let mut sum = term;
    let mut m = 0.0;
    loop {
        let k = p as f64 + m;
        let next = -term * s * (spec.b0 + 1.0 + k) * (a + m) * (a + 0.5 + m) / ((2.0 * a + 1.0 + m) * (m + 1.0));
        if next.abs() >= term.abs() || next.abs() <= 1e-17 * sum.abs() {
            break;
        }
        sum += next;
        term = next;
        m += 1.0;
    }
    sum
}

/// Order-`N` resummed approximant `Σ_n (Σ_{p=n}^N a_pn I_pn(g)) δ^n`.
#[derive(Debug)]
pub struct ResummedApproximant {
    order: usize,
    /// `a[n][p - n]`
    a: Vec<Vec<BigRational>>,
    params: LargeOrderParams,
    input: CoefficientTable,
    quad: QuadratureSpec,
    cache: Mutex<HashMap<(usize, usize, u64), f64>>,
}

#[derive(Serialize)]
struct ApproximantJson<'a> {
    #[serde(rename = "N")]
    order: usize,
    sigma: String,
    alpha: String,
    b0_slope: String,
    b0_offset: String,
    normalization: &'a str,
    variables: &'a str,
    a: Vec<AEntry>,
}

#[derive(Serialize)]
struct AEntry {
    p: usize,
    n: usize,
    numerator: String,
    denominator: String,
}

impl ResummedApproximant {
    /// Build from the first `order` rows of `table`.
    pub fn build(table: &CoefficientTable, params: LargeOrderParams, order: usize, quad: QuadratureSpec) -> Result<Self> {
        quad.validate()?;
        let input = table.truncated(order)?;
        let a = (0..=order)
            .map(|n| borel_coefficients(&input.column(n), &params, n, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(ResummedApproximant {
            order,
            a,
            params,
            input,
            quad,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn params(&self) -> &LargeOrderParams {
        &self.params
    }

    pub fn input(&self) -> &CoefficientTable {
        &self.input
    }

    pub fn quadrature(&self) -> &QuadratureSpec {
        &self.quad
    }

    /// `a_pn`, zero outside `n <= p <= N`.
    pub fn coefficient(&self, p: usize, n: usize) -> BigRational {
        if n > p || p > self.order {
            BigRational::zero()
        } else {
            self.a[n][p - n].clone()
        }
    }

    pub fn basis_spec(&self, p: usize, n: usize) -> BorelBasisSpec {
        BorelBasisSpec {
            p,
            b0: small_to_f64(self.params.b0_of_n(n)),
            alpha: small_to_f64(self.params.alpha()),
            sigma: small_to_f64(self.params.sigma()),
        }
    }

    /// Memoized `I_pn(g)`.
    pub fn basis_value(&self, p: usize, n: usize, g: f64) -> Result<f64> {
        let key = (p, n, g.to_bits());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = basis_integral(&self.basis_spec(p, n), g, &self.quad)?;
        self.cache.lock().unwrap().insert(key, v);
        Ok(v)
    }

    /// `Σ_p a_pn I_pn(g)`, the resummed coefficient function of `δ^n`.
    pub fn column_value(&self, n: usize, g: f64) -> Result<f64> {
        let mut acc = 0.0;
        for p in n..=self.order {
            let a = &self.a[n][p - n];
            if a.is_zero() {
                continue;
            }
            acc += rational::to_f64(a) * self.basis_value(p, n, g)?;
        }
        Ok(acc)
    }

    pub fn resum(&self, g: f64, delta: f64) -> Result<f64> {
        check_coupling(g)?;
        let mut acc = 0.0;
        for n in (0..=self.order).rev() {
            acc = acc * delta + self.column_value(n, g)?;
        }
        Ok(acc)
    }

    /// Largest `|Σ_p a_pn I^p_k - c_kn|` over `k, n <= N`, in exact arithmetic.
    pub fn reexpansion_residual_exact(&self) -> BigRational {
        let alpha = from_small(self.params.alpha());
        let sigma = from_small(self.params.sigma());
        let mut worst = BigRational::zero();
        for n in 0..=self.order {
            let b0 = from_small(self.params.b0_of_n(n));
            for k in n..=self.order {
                let mut acc = BigRational::zero();
                for p in n..=k {
                    acc += &self.a[n][p - n] * taylor_coefficient_exact(p, k, &b0, &alpha, &sigma);
                }
                let r = (acc - self.input.get(k, n)).abs();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }

    /// The same check carried out entirely in `f64`, with `a_pn` recomputed in
    /// floating point. Returns the largest relative residual.
    pub fn reexpansion_residual_f64(&self) -> f64 {
        let alpha = small_to_f64(self.params.alpha());
        let sigma = small_to_f64(self.params.sigma());
        let mut worst: f64 = 0.0;
        for n in 0..=self.order {
            let b0 = small_to_f64(self.params.b0_of_n(n));
            let column: Vec<f64> = self.input.column(n).iter().map(rational::to_f64).collect();
            let a = borel_coefficients_f64(&column, b0, alpha, sigma, n, self.order);
            for k in n..=self.order {
                let mut acc = 0.0;
                for p in n..=k {
                    let spec = BorelBasisSpec { p, b0, alpha, sigma };
                    acc += a[p - n] * spec.taylor_coefficient(k);
                }
                let c = column[k - n];
                let r = if c == 0.0 { acc.abs() } else { ((acc - c) / c).abs() };
                worst = worst.max(r);
            }
        }
        worst
    }

    /// JSON record of the approximant, with exact coefficients.
    pub fn to_json(&self, variables: &str) -> String {
        let b = self.params.beta();
        let b0_offset = b.offset + num_rational::Ratio::new(3, 2);
        let json = ApproximantJson {
            order: self.order,
            sigma: self.params.sigma().to_string(),
            alpha: self.params.alpha().to_string(),
            b0_slope: b.slope.to_string(),
            b0_offset: b0_offset.to_string(),
            normalization: "I_p = (sigma g)^p / (4^p Gamma(b0+1)) * Borel integral",
            variables,
            a: (0..=self.order)
                .flat_map(|n| (n..=self.order).map(move |p| (p, n)))
                .map(|(p, n)| {
                    let v = &self.a[n][p - n];
                    AEntry {
                        p,
                        n,
                        numerator: v.numer().to_string(),
                        denominator: v.denom().to_string(),
                    }
                })
                .collect(),
        };
        serde_json::to_string_pretty(&json).expect("approximant serializes")
    }
}
