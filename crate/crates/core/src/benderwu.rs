//! Rayleigh–Schrödinger coefficients of the ground state of
//! `H = -Δ/2 + (x²+y²)/2 + (g/4)[x⁴ + 2(1-δ)x²y² + y⁴]` from the Bender–Wu
//! difference equation.
//!
//! The wave function is `e^{-(x²+y²)/2} Σ (g/4)^k (2δ)^n Φ_kn(x, y)` with
//! `Φ_kn = Σ_ij A^{kn}_ij x^{2i} y^{2j}`, and the energy is
//! `E = Σ (g/4)^k (2δ)^n E_kn`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::series::CoefficientTable;

/// Polynomial coefficients `A^{kn}_ij` for `0 <= i, j <= 2k - n`.
#[derive(Clone, Debug)]
struct Block {
    dim: usize,
    data: Vec<BigRational>,
}

impl Block {
    fn new(k: usize, n: usize) -> Self {
        let dim = 2 * k - n + 1;
        Block {
            dim,
            data: vec![BigRational::zero(); dim * dim],
        }
    }

    fn get(&self, i: isize, j: isize) -> Option<&BigRational> {
        if i < 0 || j < 0 || i as usize >= self.dim || j as usize >= self.dim {
            return None;
        }
        Some(&self.data[i as usize * self.dim + j as usize])
    }

    fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.dim + j] = v;
    }
}

/// Finished recursion: wave-function coefficients and the energy table.
#[derive(Clone, Debug)]
pub struct BwState {
    /// `blocks[k][n]`
    blocks: Vec<Vec<Block>>,
    energies: CoefficientTable,
}

impl BwState {
    pub fn kmax(&self) -> usize {
        self.energies.kmax()
    }

    /// `A^{kn}_ij`; zero outside the support.
    pub fn amplitude(&self, i: isize, j: isize, k: usize, n: usize) -> BigRational {
        self.lookup(i, j, k as isize, n as isize).cloned().unwrap_or_else(BigRational::zero)
    }

    fn lookup(&self, i: isize, j: isize, k: isize, n: isize) -> Option<&BigRational> {
        if k < 0 || n < 0 || k < n || k as usize >= self.blocks.len() {
            return None;
        }
        self.blocks[k as usize][n as usize].get(i, j)
    }

    /// `E_kn`, the coefficient of `(g/4)^k (2δ)^n`.
    pub fn energy_series(&self) -> &CoefficientTable {
        &self.energies
    }

    pub fn into_energy_series(self) -> CoefficientTable {
        self.energies
    }

    /// Number of stored `A` entries at order `k` (all `n`).
    pub fn stored_entries(&self, k: usize) -> usize {
        self.blocks[k].iter().map(|b| b.data.len()).sum()
    }

    /// `A^{kn}_10 = A^{kn}_01` for every block (the x ↔ y symmetry).
    pub fn is_symmetric(&self) -> bool {
        self.blocks.iter().flatten().all(|b| {
            (0..b.dim).all(|i| (0..b.dim).all(|j| b.data[i * b.dim + j] == b.data[j * b.dim + i]))
        })
    }
}

/// Run the recursion through order `kmax`.
///
/// Blocks are filled for `k` ascending, `n = 0..=k`, and within each block
/// for `i` then `j` descending from `2k - n`, so every term on the right-hand
/// side is known when it is read. `A^{kn}_00 = δ_{k0} δ_{n0}`.
pub fn build(kmax: usize) -> BwState {
    let mut blocks: Vec<Vec<Block>> = Vec::with_capacity(kmax + 1);
    // shifts[l][m] = s_lm, filled as blocks complete
    let mut shifts: Vec<Vec<BigRational>> = Vec::with_capacity(kmax + 1);
    let mut energies = CoefficientTable::unit(kmax);
    let zero = BigRational::zero();

    for k in 0..=kmax {
        blocks.push(Vec::with_capacity(k + 1));
        shifts.push(Vec::with_capacity(k + 1));
        for n in 0..=k {
            let mut block = Block::new(k, n);
            if k == 0 {
                block.set(0, 0, BigRational::one());
                blocks[k].push(block);
                shifts[k].push(BigRational::zero());
                continue;
            }
            let d = (2 * k - n) as isize;
            let prev = |i: isize, j: isize, kk: usize, nn: isize| -> &BigRational {
                if nn < 0 || nn as usize > kk {
                    return &zero;
                }
                blocks[kk][nn as usize].get(i, j).unwrap_or(&zero)
            };
            for i in (0..=d).rev() {
                for j in (0..=d).rev() {
                    if i == 0 && j == 0 {
                        continue;
                    }
                    let mut r = BigRational::zero();
                    if let Some(a) = block.get(i + 1, j) {
                        if !a.is_zero() {
                            r += a * BigRational::from_integer(((2 * i + 1) * (i + 1)).into());
                        }
                    }
                    if let Some(a) = block.get(i, j + 1) {
                        if !a.is_zero() {
                            r += a * BigRational::from_integer(((2 * j + 1) * (j + 1)).into());
                        }
                    }
                    let ni = n as isize;
                    r += prev(i - 2, j, k - 1, ni);
                    r += prev(i, j - 2, k - 1, ni);
                    let c = prev(i - 1, j - 1, k - 1, ni);
                    if !c.is_zero() {
                        r += c * BigRational::from_integer(2.into());
                    }
                    r -= prev(i - 1, j - 1, k - 1, ni - 1);
                    // energy shifts times lower-order wave functions; l = k only
                    // multiplies A^{0,·}_ij, which vanishes for (i, j) != (0, 0)
                    for m in 0..=n {
                        for l in m.max(1)..k {
                            let a = prev(i, j, k - l, (n - m) as isize);
                            if a.is_zero() || shifts[l][m].is_zero() {
                                continue;
                            }
                            r -= &shifts[l][m] * a;
                        }
                    }
                    r /= BigRational::from_integer((2 * (i + j)).into());
                    block.set(i as usize, j as usize, r);
                }
            }
            let s = {
                let z = BigRational::zero();
                block.get(1, 0).unwrap_or(&z) + block.get(0, 1).unwrap_or(&z)
            };
            // the i = j = 0 equation: its left side vanishes and its right side
            // reduces to s_kn - s_kn; check that nothing else contributes
            let mut residual = s.clone();
            for m in 0..=n {
                for l in m.max(1)..=k {
                    let s_lm = if l == k && m == n { &s } else { &shifts[l][m] };
                    residual -= s_lm * prev(0, 0, k - l, (n - m) as isize);
                }
            }
            assert!(residual.is_zero(), "consistency equation fails at ({k}, {n})");
            let e = if k % 2 == 0 { -s.clone() } else { s.clone() };
            energies.set(k, n, e);
            shifts[k].push(s);
            blocks[k].push(block);
        }
    }
    debug_assert!(blocks.iter().enumerate().all(|(k, row)| row.iter().enumerate().all(|(n, b)| b.dim == 2 * k - n + 1)));
    BwState { blocks, energies }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{big, frac};

    #[test]
    fn low_orders() {
        let e = build(4).into_energy_series();
        assert_eq!(e.get(0, 0), big(1));
        assert_eq!(e.get(1, 0), big(2));
        assert_eq!(e.get(1, 1), frac(-1, 4));
        assert_eq!(e.get(2, 0), big(-9));
        assert_eq!(e.get(4, 3), frac(2465, 128));
    }

    #[test]
    fn first_order_from_gaussian_moments() {
        // ⟨x⁴⟩ = 3/4, ⟨x²y²⟩ = 1/4 for the ground state e^{-(x²+y²)}/π:
        // (g/4)⟨x⁴ + 2(1-δ)x²y² + y⁴⟩ = (g/4)(2 - δ/2) = (g/4)(2 - (1/4)(2δ))
        let e = build(1).into_energy_series();
        let x4 = frac(3, 4);
        let x2y2 = frac(1, 4);
        assert_eq!(e.get(1, 0), &x4 + big(2) * &x2y2 + &x4);
        assert_eq!(e.get(1, 1), -big(2) * &x2y2 / big(2));
    }

    #[test]
    fn seventh_order_entry() {
        let e = build(7).into_energy_series();
        assert_eq!(e.get(7, 6), frac(4423646695, 1769472));
    }

    #[test]
    fn symmetric_and_supported() {
        let s = build(6);
        assert!(s.is_symmetric());
        for k in 0..=6 {
            let bound: usize = (0..=k).map(|n: usize| (2 * k - n + 1).pow(2)).sum();
            assert_eq!(s.stored_entries(k), bound);
        }
        assert_eq!(s.amplitude(0, 0, 3, 1), big(0));
        assert_eq!(s.amplitude(-1, 0, 3, 1), big(0));
        assert_eq!(s.amplitude(20, 0, 3, 1), big(0));
    }

    #[test]
    fn signs_alternate_in_k() {
        let e = build(10).into_energy_series();
        for n in 0..=10 {
            for k in n.max(1)..10 {
                let (a, b) = (e.get(k, n), e.get(k + 1, n));
                if !a.is_zero() && !b.is_zero() {
                    assert!((a * b) < big(0), "({k},{n})");
                }
            }
        }
    }
}
