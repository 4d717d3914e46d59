//! Double-exponential quadrature on `(0, 1)` and `(0, ∞)` with step halving.


use crate::error::{Error, Result};

/// Environment variable overriding the default relative tolerance.
pub const QUAD_TOL_ENV: &str = "ANIRES_QUAD_TOL";

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_refinements: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_refinements: 10,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_refinements: usize) -> Result<Self> {
        let spec = QuadratureSpec {
            abs_tol,
            rel_tol,
            max_refinements,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_refinements < 1 {
            return Err(Error::Invalid(format!(
                "quadrature spec needs abs_tol > 0, rel_tol > 0, max_refinements >= 1, got {self:?}"
            )));
        }
        Ok(())
    }

    /// Default spec with the relative tolerance taken from `ANIRES_QUAD_TOL` when set.
    pub fn from_env() -> Result<Self> {
        let mut spec = Self::default();
        if let Ok(raw) = std::env::var(QUAD_TOL_ENV) {
            spec.rel_tol = raw
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("{QUAD_TOL_ENV}={raw:?} is not a number")))?;
            spec.validate()?;
        }
        Ok(spec)
    }

    /// Tighten both tolerances by `factor` (used for self-refinement checks).
    pub fn tightened(&self, factor: f64) -> Self {
        QuadratureSpec {
            abs_tol: self.abs_tol * factor,
            rel_tol: self.rel_tol * factor,
            max_refinements: self.max_refinements + 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
    pub levels: usize,
}

const H0: f64 = 0.5;
const T_UNIT: f64 = 6.0;
const T_SEMI_LO: f64 = -6.0;
const T_SEMI_CAP: f64 = 12.0;

/// `∫₀¹ f(x, 1-x) dx` with the tanh-sinh map. The integrand receives both `x`
/// and `1 - x`, each computed without cancellation, so endpoint singularities
/// at either end are resolved.
pub fn integrate_unit<F>(f: F, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64, f64) -> f64,
{
    let node = |t: f64| -> Option<f64> {
        let u = std::f64::consts::PI * t.sinh();
        // x = 1/(1+e^{-u}), 1-x = 1/(1+e^{u})
        let x = 1.0 / (1.0 + (-u).exp());
        let xc = 1.0 / (1.0 + u.exp());
        if x <= 0.0 || xc <= 0.0 {
            return None;
        }
        let w = std::f64::consts::PI * t.cosh() * x * xc;
        Some(w * f(x, xc))
    };
    de_sum(node, -T_UNIT, T_UNIT, spec)
}

/// `∫₀^∞ f(x) dx` with the exp-exp map `x = exp(t - e^{-t})`, suited to
/// exponentially decaying integrands with integrable behavior at 0.
pub fn integrate_semiline<F>(f: F, spec: &QuadratureSpec) -> Result<QuadResult>
where
    F: Fn(f64) -> f64,
{
    let node = |t: f64| -> Option<f64> {
        let e = (-t).exp();
        let x = (t - e).exp();
        if x <= 0.0 || !x.is_finite() {
            return None;
        }
        Some(x * (1.0 + e) * f(x))
    };
    // find where the integrand has died off on the right
    let mut hi = 1.0;
    let mut quiet = 0;
    let mut peak: f64 = 0.0;
    let mut t = T_SEMI_LO;
    while t <= T_SEMI_CAP {
        let v = node(t).unwrap_or(0.0).abs();
        peak = peak.max(v);
        if t >= 1.0 {
            if v <= 1e-18 * peak {
                quiet += 1;
                if quiet >= 3 {
                    hi = t;
                    break;
                }
            } else {
                quiet = 0;
            }
        }
        hi = t;
        t += H0 / 4.0;
    }
    de_sum(node, T_SEMI_LO, hi, spec)
}

fn de_sum<N>(node: N, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<QuadResult>
where
    N: Fn(f64) -> Option<f64>,
{
    spec.validate()?;
    let mut h = H0;
    let mut evaluations = 0usize;
    let mut raw = 0.0;
    // level 0: all multiples of h in [lo, hi]
    let k_lo = (lo / h).ceil() as i64;
    let k_hi = (hi / h).floor() as i64;
    for k in k_lo..=k_hi {
        raw += node(k as f64 * h).unwrap_or(0.0);
        evaluations += 1;
    }
    let mut estimate = raw * h;
    let mut err = f64::INFINITY;
    for level in 1..=spec.max_refinements {
        h *= 0.5;
        let k_lo = (lo / h).ceil() as i64;
        let k_hi = (hi / h).floor() as i64;
        let mut k = if k_lo.rem_euclid(2) == 1 { k_lo } else { k_lo + 1 };
        while k <= k_hi {
            raw += node(k as f64 * h).unwrap_or(0.0);
            evaluations += 1;
            k += 2;
        }
        let next = raw * h;
        if !next.is_finite() {
            return Err(Error::Quadrature {
                estimate: next,
                error_bound: f64::INFINITY,
                levels: level,
            });
        }
        err = (next - estimate).abs();
        estimate = next;
        if level >= 2 && err <= spec.abs_tol.max(spec.rel_tol * estimate.abs()) {
            return Ok(QuadResult {
                value: estimate,
                error_estimate: err,
                evaluations,
                levels: level,
            });
        }
    }
    Err(Error::Quadrature {
        estimate,
        error_bound: err,
        levels: spec.max_refinements,
    })
}


#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn close(got: f64, want: f64, tol: f64) -> bool {
        (got - want).abs() <= tol * want.abs().max(1.0)
    }

    /// Composite Simpson on a truncated range with Richardson-style doubling,
    /// used as an independent brute-force reference.
    fn brute_force(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        let simpson = |n: usize| {
            let h = (b - a) / n as f64;
            let mut s = f(a) + f(b);
            for i in 1..n {
                let x = a + i as f64 * h;
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
            }
            s * h / 3.0
        };
        let (s1, s2) = (simpson(1 << 14), simpson(1 << 15));
        s2 + (s2 - s1) / 15.0
    }

    #[test]
    fn battery_semiline() {
        let s = spec();
        let cases: Vec<(Box<dyn Fn(f64) -> f64>, f64)> = vec![
            (Box::new(|t: f64| (-t).exp()), 1.0),
            (Box::new(|t: f64| t * t * (-t).exp()), 2.0),
            (Box::new(|t: f64| (-t * t).exp()), PI.sqrt() / 2.0),
            (Box::new(|t: f64| (-t).exp() / t.sqrt()), PI.sqrt()),
            (Box::new(|t: f64| 1.0 / t.cosh()), PI / 2.0),
            (Box::new(|t: f64| (-1e4 * t * t).exp()), PI.sqrt() / 200.0),
            (Box::new(|t: f64| t.powf(3.5) * (-t).exp()), 11.631_728_396_567_45),
        ];
        for (i, (f, want)) in cases.iter().enumerate() {
            let r = integrate_semiline(f, &s).unwrap();
            assert!(close(r.value, *want, 1e-10), "case {i}: {} vs {want}", r.value);
        }
    }

    #[test]
    fn algebraic_tail_is_reported_not_truncated() {
        let r = integrate_semiline(|t| 1.0 / (1.0 + t * t), &spec());
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }

    #[test]
    fn battery_unit() {
        let s = spec();
        let cases: Vec<(Box<dyn Fn(f64, f64) -> f64>, f64)> = vec![
            (Box::new(|x: f64, _| 1.0 / x.sqrt()), 2.0),
            (Box::new(|_, xc: f64| 1.0 / xc.sqrt()), 2.0),
            (Box::new(|x: f64, _| x * x), 1.0 / 3.0),
            (Box::new(|x: f64, xc: f64| 1.0 / (x * xc).sqrt()), PI),
            (Box::new(|x: f64, _| -x.ln()), 1.0),
            (Box::new(|x: f64, _| (PI * x).sin()), 2.0 / PI),
            (Box::new(|x: f64, _| 4.0 / (1.0 + x * x)), PI),
        ];
        for (i, (f, want)) in cases.iter().enumerate() {
            let r = integrate_unit(f, &s).unwrap();
            assert!(close(r.value, *want, 1e-10), "case {i}: {} vs {want}", r.value);
        }
    }

    #[test]
    fn gaussian_shifted_exponential_against_brute_force() {
        let f = |r: f64| (-r - r * r).exp();
        let want = brute_force(f, 0.0, 40.0);
        assert!((want - 0.545_641_360_8).abs() < 1e-10);
        let got = integrate_semiline(f, &spec()).unwrap().value;
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tight = QuadratureSpec::new(1e-300, 1e-300, 2).unwrap();
        match integrate_semiline(|t: f64| (-t).exp(), &tight) {
            Err(Error::Quadrature { estimate, error_bound, .. }) => {
                assert!((estimate - 1.0).abs() < 1e-3);
                assert!(error_bound >= 0.0);
            }
            other => panic!("expected quadrature error, got {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(0.0, 1e-10, 3).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 0).is_err());
        assert!(QuadratureSpec::new(1e-10, 1e-10, 1).is_ok());
    }
}
