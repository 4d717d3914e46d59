//! Resummation of divergent double series in a coupling `g` and an
//! anisotropy `δ`, built around the quartic oscillator with cubic anisotropy
//! `V = (x²+y²)/2 + (g/4)[x⁴ + 2(1-δ)x²y² + y⁴]`.
//!
//! * [`special`]: log-gamma, binomials, scaled Legendre and Bessel functions,
//!   double-exponential quadrature.
//! * [`series`]: exact coefficient tables and local large-order exponents.
//! * [`model`]: the two-dimensional model integral (zero-dimensional field theory).
//! * [`borel`]: hypergeometric Borel resummation with exact expansion coefficients.
//! * [`benderwu`]: Rayleigh–Schrödinger coefficients of the oscillator ground state.
//! * [`qm`]: large-order data and resummation of the ground-state energy.
//! * [`vpt`]: variational perturbation theory.

pub mod benderwu;
pub mod borel;
pub mod error;
pub mod model;
pub mod qm;
pub mod rational;
pub mod series;
pub mod special;
pub mod vpt;

pub use error::{Error, Result};
