//! Exact coefficient tables for double series in `(g, δ)` and large-order
//! diagnostics on their columns.

use std::io::{BufRead, Write};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Small};
use crate::special::{ln_factorial, ScaledValue};

/// Triangular table of exact rationals `c(k, n)` for `0 <= n <= k <= kmax`.
///
/// `k` is the order in the coupling, `n` the order in the anisotropy. Entries
/// with `n > k` are structurally zero and not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientTable {
    rows: Vec<Vec<BigRational>>,
}

impl CoefficientTable {
    /// Table with every entry zero except `(0, 0) = 1`.
    pub fn unit(kmax: usize) -> Self {
        let mut t = Self::from_fn(kmax, |_, _| BigRational::zero());
        t.rows[0][0] = BigRational::one();
        t
    }

    pub fn from_fn(kmax: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let rows = (0..=kmax)
            .map(|k| (0..=k).map(|n| f(k, n)).collect())
            .collect();
        CoefficientTable { rows }
    }

    pub fn kmax(&self) -> usize {
        self.rows.len() - 1
    }

    /// Entry `(k, n)`; zero when `n > k`. Panics if `k > kmax`.
    pub fn get(&self, k: usize, n: usize) -> BigRational {
        if n > k {
            BigRational::zero()
        } else {
            self.rows[k][n].clone()
        }
    }

    pub fn entry(&self, k: usize, n: usize) -> Option<&BigRational> {
        self.rows.get(k).and_then(|r| r.get(n))
    }

    pub fn set(&mut self, k: usize, n: usize, value: BigRational) {
        assert!(n <= k && k <= self.kmax(), "entry ({k}, {n}) outside the table");
        self.rows[k][n] = value;
    }

    /// `(k, n, value)` in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(n, v)| (k, n, v)))
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Coefficients accompanying `δ^n`, indexed by `k` from `n` to `kmax`.
    pub fn column(&self, n: usize) -> Vec<BigRational> {
        (n..=self.kmax()).map(|k| self.get(k, n)).collect()
    }

    /// Same table truncated to `kmax`.
    pub fn truncated(&self, kmax: usize) -> Result<Self> {
        self.check_order(kmax)?;
        Ok(CoefficientTable {
            rows: self.rows[..=kmax].to_vec(),
        })
    }

    /// Table keeping only the columns `n` for which `keep(n)` holds; the rest are zeroed.
    pub fn filter_columns(&self, keep: impl Fn(usize) -> bool) -> Self {
        Self::from_fn(self.kmax(), |k, n| {
            if keep(n) {
                self.get(k, n)
            } else {
                BigRational::zero()
            }
        })
    }

    fn check_order(&self, order: usize) -> Result<()> {
        if order > self.kmax() {
            return Err(Error::Range {
                requested: order,
                available: self.kmax(),
            });
        }
        Ok(())
    }

    /// `Σ_{k<=order} Σ_{n<=k} c(k,n) g^k δ^n` in exact arithmetic.
    pub fn truncated_double_sum_exact(
        &self,
        g: &BigRational,
        delta: &BigRational,
        order: usize,
    ) -> Result<BigRational> {
        self.check_order(order)?;
        // Horner in g over rows, Horner in δ within each row
        let mut acc = BigRational::zero();
        for k in (0..=order).rev() {
            let mut row = BigRational::zero();
            for c in self.rows[k].iter().rev() {
                row = row * delta + c;
            }
            acc = acc * g + row;
        }
        Ok(acc)
    }

    /// Floating-point version of [`Self::truncated_double_sum_exact`].
    pub fn truncated_double_sum(&self, g: f64, delta: f64, order: usize) -> Result<f64> {
        self.check_order(order)?;
        let mut acc = 0.0;
        for k in (0..=order).rev() {
            let row = self.rows[k]
                .iter()
                .rev()
                .fold(0.0, |r, c| r * delta + rational::to_f64(c));
            acc = acc * g + row;
        }
        Ok(acc)
    }

    /// `Σ_n c(k, n) δ^n` for one order `k`, exactly.
    pub fn row_polynomial(&self, k: usize, delta: &BigRational) -> Result<BigRational> {
        self.check_order(k)?;
        Ok(self.rows[k]
            .iter()
            .rev()
            .fold(BigRational::zero(), |r, c| r * delta + c))
    }

    /// CSV with header `k,n,numerator,denominator`, one row per stored entry.
    pub fn write_csv<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        writeln!(out, "k,n,numerator,denominator")?;
        for (k, n, v) in self.iter() {
            writeln!(out, "{k},{n},{},{}", v.numer(), v.denom())?;
        }
        Ok(())
    }

    /// As [`Self::write_csv`] plus a `decimal` column with `digits` significant digits.
    pub fn write_csv_with_decimal<W: Write>(&self, out: &mut W, digits: usize) -> std::io::Result<()> {
        writeln!(out, "k,n,numerator,denominator,decimal")?;
        for (k, n, v) in self.iter() {
            writeln!(
                out,
                "{k},{n},{},{},{}",
                v.numer(),
                v.denom(),
                rational::to_decimal(v, digits)
            )?;
        }
        Ok(())
    }

    /// Listing with header `k,n,<value_name>` and values as `p/q` strings.
    pub fn write_listing<W: Write>(&self, out: &mut W, value_name: &str) -> std::io::Result<()> {
        writeln!(out, "k,n,{value_name}")?;
        for (k, n, v) in self.iter() {
            writeln!(out, "{k},{n},{}", rational::to_fraction_string(v))?;
        }
        Ok(())
    }

    /// Read back either CSV layout written above. Missing entries are zero.
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut entries = Vec::new();
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Invalid("empty coefficient file".into()))?
            .map_err(|e| Error::Invalid(e.to_string()))?;
        let four_col = header.starts_with("k,n,numerator,denominator");
        for (lineno, line) in lines.enumerate() {
            let line = line.map_err(|e| Error::Invalid(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::Invalid(format!("malformed coefficient row {}: {line:?}", lineno + 2));
            let f: Vec<&str> = line.split(',').collect();
            if f.len() < 3 {
                return Err(bad());
            }
            let k: usize = f[0].trim().parse().map_err(|_| bad())?;
            let n: usize = f[1].trim().parse().map_err(|_| bad())?;
            let v = if four_col {
                rational::parse(&format!("{}/{}", f[2].trim(), f.get(3).ok_or_else(bad)?.trim()))?
            } else {
                rational::parse(f[2])?
            };
            if n > k {
                return Err(bad());
            }
            entries.push((k, n, v));
        }
        let kmax = entries.iter().map(|e| e.0).max().unwrap_or(0);
        let mut t = Self::from_fn(kmax, |_, _| BigRational::zero());
        for (k, n, v) in entries {
            t.set(k, n, v);
        }
        Ok(t)
    }
}

/// `n -> slope * n + offset` with exact rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Affine {
    pub slope: Small,
    pub offset: Small,
}

impl Affine {
    pub fn new(slope: Small, offset: Small) -> Self {
        Affine { slope, offset }
    }

    pub fn at(&self, n: usize) -> Small {
        self.slope * Small::from_integer(n as i64) + self.offset
    }
}

/// Large-order and strong-coupling data driving the resummation:
/// `c_kn ~ γ_n (-1)^k σ^k k! k^{β(n)}` and `f(g) ~ κ g^α`.
///
/// The Borel parameter is tied to the subleading exponent, `b0(n) = β(n) + 3/2`,
/// so it is derived rather than stored.
#[derive(Clone, Debug, PartialEq)]
pub struct LargeOrderParams {
    pub gamma: Vec<f64>,
    sigma: Small,
    beta: Affine,
    alpha: Small,
}

impl LargeOrderParams {
    pub fn new(gamma: Vec<f64>, sigma: Small, beta: Affine, alpha: Small) -> Result<Self> {
        if sigma <= Small::from_integer(0) {
            return Err(Error::Invalid(format!("growth parameter sigma = {sigma} must be positive")));
        }
        Ok(LargeOrderParams {
            gamma,
            sigma,
            beta,
            alpha,
        })
    }

    pub fn sigma(&self) -> Small {
        self.sigma
    }

    pub fn alpha(&self) -> Small {
        self.alpha
    }

    pub fn beta(&self) -> Affine {
        self.beta
    }

    pub fn beta_of_n(&self, n: usize) -> Small {
        self.beta.at(n)
    }

    pub fn b0_of_n(&self, n: usize) -> Small {
        self.beta.at(n) + Small::new(3, 2)
    }

    /// The same parameters with a different growth constant.
    pub fn with_sigma(&self, sigma: Small) -> Result<Self> {
        Self::new(self.gamma.clone(), sigma, self.beta, self.alpha)
    }
}

/// Result of [`local_exponent`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CrossoverReport {
    pub k_grid: Vec<usize>,
    /// `f(k) = ln |c_k / ((-σ)^k k!)|` on the grid.
    pub f_values: Vec<f64>,
    /// Slope of `f` against `ln k` between consecutive grid points.
    pub beta_local: Vec<f64>,
    /// Geometric midpoints `sqrt(k_i k_{i+1})` the slopes belong to.
    pub k_mid: Vec<f64>,
    pub threshold: f64,
    pub k_cross: Option<usize>,
}

/// Midpoint between the isotropic (-1/2) and anisotropic (-1) exponents.
pub const CROSSOVER_THRESHOLD: f64 = -0.75;

/// `[kmin, 2 kmin, 4 kmin, ...]` up to and including the last value `<= kmax`.
pub fn geometric_grid(kmin: usize, kmax: usize) -> Vec<usize> {
    assert!(kmin >= 1);
    let mut out = Vec::new();
    let mut k = kmin;
    while k <= kmax {
        out.push(k);
        k *= 2;
    }
    out
}

/// Local large-order exponent of a coefficient column.
///
/// `column[k]` holds `c_k`; only the entries on `k_grid` are read. The column
/// must alternate in sign over the grid. See [`CROSSOVER_THRESHOLD`] for the
/// `k_cross` definition.
pub fn local_exponent(column: &[ScaledValue], sigma: f64, k_grid: &[usize]) -> Result<CrossoverReport> {
    local_exponent_with_threshold(column, sigma, k_grid, CROSSOVER_THRESHOLD)
}

pub fn local_exponent_with_threshold(
    column: &[ScaledValue],
    sigma: f64,
    k_grid: &[usize],
    threshold: f64,
) -> Result<CrossoverReport> {
    if k_grid.len() < 2 || k_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Invalid("k_grid must be strictly increasing with at least 2 points".into()));
    }
    if !(sigma > 0.0) {
        return Err(Error::Invalid(format!("sigma = {sigma} must be positive")));
    }
    let last = *k_grid.last().unwrap();
    if last >= column.len() {
        return Err(Error::Range {
            requested: last,
            available: column.len().saturating_sub(1),
        });
    }
    let parity = |k: usize| if k % 2 == 0 { 1i8 } else { -1 };
    let reference = column[k_grid[0]].sign() * parity(k_grid[0]);
    let mut f_values = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        let c = column[k];
        if c.is_zero() || c.sign() * parity(k) != reference {
            return Err(Error::SignPattern { k });
        }
        f_values.push(c.ln_abs() - k as f64 * sigma.ln() - ln_factorial(k as u64));
    }
    let mut beta_local = Vec::with_capacity(k_grid.len() - 1);
    let mut k_mid = Vec::with_capacity(k_grid.len() - 1);
    for i in 0..k_grid.len() - 1 {
        let (a, b) = (k_grid[i] as f64, k_grid[i + 1] as f64);
        beta_local.push((f_values[i + 1] - f_values[i]) / (b.ln() - a.ln()));
        k_mid.push((a * b).sqrt());
    }
    let k_cross = find_crossing(k_grid, &k_mid, &beta_local, threshold);
    Ok(CrossoverReport {
        k_grid: k_grid.to_vec(),
        f_values,
        beta_local,
        k_mid,
        threshold,
        k_cross,
    })
}

fn find_crossing(k_grid: &[usize], k_mid: &[f64], beta: &[f64], threshold: f64) -> Option<usize> {
    let i = beta.iter().position(|&b| b <= threshold)?;
    if i == 0 {
        return Some(k_grid[0]);
    }
    let (l0, l1) = (k_mid[i - 1].ln(), k_mid[i].ln());
    let t = (beta[i - 1] - threshold) / (beta[i - 1] - beta[i]);
    let k = (l0 + t * (l1 - l0)).exp().round() as usize;
    Some(k.clamp(k_grid[0], *k_grid.last().unwrap()))
}

/// Exact rational as a [`ScaledValue`] (via its log magnitude).
pub fn scaled_from_rational(x: &BigRational) -> ScaledValue {
    if x.is_zero() {
        ScaledValue::ZERO
    } else {
        ScaledValue::from_ln(if x.is_negative() { -1 } else { 1 }, rational::ln_abs(x))
    }
}
