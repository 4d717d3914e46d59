//! Variational perturbation theory for the ground-state energy.
//!
//! The series `E = Σ ḡ^l ε_l` is reexpanded around a trial frequency `Ω`,
//! truncated at order `k`, and the result `W_k(Ω)` is made stationary in `Ω`.
//! With `2ρΩ = (ω² - Ω²) Ω / ḡ`,
//!
//! ```text
//! W_k(Ω) = Σ_{l<=k} Σ_{j<=l} e_j binom((1-3j)/2, l-j) ḡ^j (ω²-Ω²)^{l-j} Ω^{l-j+1-3l}
//! ```
//!
//! where `e_j = Σ_n E_jn (2δ)^n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{self, big, frac};
use crate::series::CoefficientTable;
use crate::special::binomial_rational;

pub const OMEGA_LO: f64 = 1e-2;
pub const OMEGA_HI: f64 = 1e2;
pub const SCAN_CELLS: usize = 4000;
const ROOT_TOL: f64 = 1e-12;

/// Finite Laurent polynomial `Σ_p c_p Ω^p`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LaurentInOmega {
    pub terms: BTreeMap<i32, f64>,
}

impl LaurentInOmega {
    pub fn from_exact(exact: &BTreeMap<i32, BigRational>) -> Self {
        LaurentInOmega {
            terms: exact
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(&p, c)| (p, rational::to_f64(c)))
                .collect(),
        }
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `d^order W / dΩ^order` at `omega`.
    pub fn derivative(&self, omega: f64, order: u32) -> f64 {
        self.terms
            .iter()
            .map(|(&p, &c)| {
                let falling = (0..order as i32).fold(1.0, |acc, i| acc * f64::from(p - i));
                c * falling * omega.powi(p - order as i32)
            })
            .sum()
    }

    pub fn eval(&self, omega: f64) -> f64 {
        self.derivative(omega, 0)
    }

    /// `Σ |c_p p^{(order)}| Ω^{p-order}`, the scale against which cancellation
    /// in the derivative is judged.
    pub fn magnitude(&self, omega: f64, order: u32) -> f64 {
        self.terms
            .iter()
            .map(|(&p, &c)| {
                let falling = (0..order as i32).fold(1.0, |acc, i| acc * f64::from(p - i));
                (c * falling * omega.powi(p - order as i32)).abs()
            })
            .sum()
    }

    /// `(Ω, W(Ω))` on a geometric grid.
    pub fn curve(&self, lo: f64, hi: f64, points: usize) -> Vec<(f64, f64)> {
        geometric(lo, hi, points.max(2) - 1)
            .into_iter()
            .map(|x| (x, self.eval(x)))
            .collect()
    }
}

fn geometric(lo: f64, hi: f64, cells: usize) -> Vec<f64> {
    let r = (hi / lo).ln() / cells as f64;
    (0..=cells).map(|i| lo * (r * i as f64).exp()).collect()
}

/// `e_j = Σ_n E_jn (2δ)^n` for `j <= k`.
fn order_sums(table: &CoefficientTable, k: usize, delta: &BigRational) -> Result<Vec<BigRational>> {
    let two_delta = delta * big(2);
    (0..=k).map(|j| table.row_polynomial(j, &two_delta)).collect()
}

/// Coefficients of `(2ρΩ)^m`, `m = 0..=l`, in `ε_l`:
/// `ε_l = Σ_{j<=l} e_j binom((1-3j)/2, l-j) (2ρΩ)^{l-j}`.
pub fn reexpansion_coefficients(table: &CoefficientTable, l: usize, delta: &BigRational) -> Result<Vec<BigRational>> {
    let e = order_sums(table, l, delta)?;
    let mut out = vec![BigRational::zero(); l + 1];
    for (j, ej) in e.iter().enumerate() {
        let m = l - j;
        out[m] = ej * binomial_rational(&frac(1 - 3 * j as i64, 2), m as u32);
    }
    Ok(out)
}

/// Exact Laurent coefficients of `W_k` for oscillator frequency `ω² = omega_sq`.
pub fn w_laurent_exact(
    table: &CoefficientTable,
    k: usize,
    g_over_4: &BigRational,
    delta: &BigRational,
    omega_sq: &BigRational,
) -> Result<BTreeMap<i32, BigRational>> {
    let e = order_sums(table, k, delta)?;
    let mut out: BTreeMap<i32, BigRational> = BTreeMap::new();
    let mut g_pow = vec![BigRational::one()];
    for j in 1..=k {
        let next = &g_pow[j - 1] * g_over_4;
        g_pow.push(next);
    }
    for l in 0..=k {
        for (j, ej) in e.iter().enumerate().take(l + 1) {
            let m = l - j;
            let c = ej * binomial_rational(&frac(1 - 3 * j as i64, 2), m as u32) * &g_pow[j];
            if c.is_zero() {
                continue;
            }
            // (ω² - Ω²)^m = Σ_s binom(m, s) ω^{2(m-s)} (-1)^s Ω^{2s}
            let mut binom = BigInt::one();
            for s in 0..=m {
                if s > 0 {
                    binom = binom * BigInt::from(m - s + 1) / BigInt::from(s);
                }
                let mut term = &c * BigRational::from_integer(binom.clone()) * num_traits::pow(omega_sq.clone(), m - s);
                if s % 2 == 1 {
                    term = -term;
                }
                let p = (m + 1 + 2 * s) as i32 - 3 * l as i32;
                *out.entry(p).or_insert_with(BigRational::zero) += term;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// `W_k(Ω)` at `ω = 1`, built exactly from the binary values of `ḡ` and `δ`.
pub fn w_laurent(table: &CoefficientTable, k: usize, g_over_4: f64, delta: f64) -> Result<LaurentInOmega> {
    w_laurent_with_omega(table, k, g_over_4, delta, 1.0)
}

pub fn w_laurent_with_omega(
    table: &CoefficientTable,
    k: usize,
    g_over_4: f64,
    delta: f64,
    omega: f64,
) -> Result<LaurentInOmega> {
    if !(g_over_4 > 0.0) {
        return Err(Error::domain("w_laurent", format!("need g/4 > 0, got {g_over_4}")));
    }
    let g = rational::from_f64(g_over_4)?;
    let d = rational::from_f64(delta)?;
    let w = rational::from_f64(omega)?;
    Ok(LaurentInOmega::from_exact(&w_laurent_exact(table, k, &g, &d, &(&w * &w))?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateKind {
    Extremum,
    TurningPoint,
}

impl std::fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CandidateKind::Extremum => "extremum",
            CandidateKind::TurningPoint => "turning_point",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Candidate {
    pub omega: f64,
    pub kind: CandidateKind,
    pub w: f64,
}

/// Which stationary point defines `W_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OmegaRule {
    /// Lowest `W` among the admissible points.
    #[default]
    LowestEnergy,
    /// Smallest `Ω` among the admissible points.
    SmallestOmega,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VptOrderResult {
    pub k: usize,
    /// Extrema, or turning points when `W_k` has no extremum; ascending in `Ω`.
    pub candidates: Vec<Candidate>,
    pub chosen: usize,
    pub omega: f64,
    pub w: f64,
    /// A candidate lies in the outermost cell of the scan bracket.
    pub at_bracket_edge: bool,
}

impl VptOrderResult {
    pub fn chosen_kind(&self) -> CandidateKind {
        self.candidates[self.chosen].kind
    }
}

fn roots(w: &LaurentInOmega, order: u32, grid: &[f64]) -> Vec<f64> {
    let f = |x: f64| w.derivative(x, order);
    let mut out = Vec::new();
    let mut fa = f(grid[0]);
    for cell in grid.windows(2) {
        let (a, b) = (cell[0], cell[1]);
        let fb = f(b);
        if fa == 0.0 {
            out.push(a);
        } else if fa * fb < 0.0 {
            let (mut lo, mut hi, mut flo) = (a, b, fa);
            while hi - lo > ROOT_TOL * hi {
                let mid = 0.5 * (lo + hi);
                let fm = f(mid);
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if (fm < 0.0) == (flo < 0.0) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        fa = fb;
    }
    out
}

/// Stationary points of `W` in `[OMEGA_LO, OMEGA_HI]` and the chosen one.
pub fn optimize_omega(w: &LaurentInOmega, k: usize, rule: OmegaRule) -> Result<VptOrderResult> {
    let grid = geometric(OMEGA_LO, OMEGA_HI, SCAN_CELLS);
    let mut kind = CandidateKind::Extremum;
    let mut found = roots(w, 1, &grid);
    if found.is_empty() {
        kind = CandidateKind::TurningPoint;
        found = roots(w, 2, &grid);
    }
    if found.is_empty() {
        return Err(Error::NoCandidate {
            k,
            lo: OMEGA_LO,
            hi: OMEGA_HI,
        });
    }
    let order = if kind == CandidateKind::Extremum { 1 } else { 2 };
    let tol = if kind == CandidateKind::Extremum { 1e-10 } else { 1e-8 };
    for &x in &found {
        let d = w.derivative(x, order).abs();
        let scale = w.magnitude(x, order).max(1.0);
        if d > tol * scale {
            return Err(Error::Invalid(format!(
                "W_{k}: derivative {d:e} at Omega = {x} exceeds {tol:e} times scale {scale:e}"
            )));
        }
    }
    let edge = (grid[1], grid[SCAN_CELLS - 1]);
    let at_bracket_edge = found.iter().any(|&x| x <= edge.0 || x >= edge.1);
    let candidates: Vec<Candidate> = found
        .into_iter()
        .map(|omega| Candidate {
            omega,
            kind,
            w: w.eval(omega),
        })
        .collect();
    let chosen = match rule {
        OmegaRule::SmallestOmega => 0,
        OmegaRule::LowestEnergy => candidates
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.w.total_cmp(&b.1.w))
            .map(|(i, _)| i)
            .unwrap(),
    };
    Ok(VptOrderResult {
        k,
        omega: candidates[chosen].omega,
        w: candidates[chosen].w,
        candidates,
        chosen,
        at_bracket_edge,
    })
}

/// `W_k` at its chosen stationary point.
pub fn vpt_energy(table: &CoefficientTable, k: usize, g_over_4: f64, delta: f64, rule: OmegaRule) -> Result<VptOrderResult> {
    optimize_omega(&w_laurent(table, k, g_over_4, delta)?, k, rule)
}

/// As [`vpt_energy`] for a general oscillator frequency `ω`.
pub fn vpt_energy_with_omega(
    table: &CoefficientTable,
    k: usize,
    g_over_4: f64,
    delta: f64,
    omega: f64,
    rule: OmegaRule,
) -> Result<VptOrderResult> {
    optimize_omega(&w_laurent_with_omega(table, k, g_over_4, delta, omega)?, k, rule)
}
