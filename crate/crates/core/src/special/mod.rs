//! Scalar special functions and quadrature primitives.
//!
//! Everything here is pure and reentrant. Values that overflow `f64` at high
//! perturbative order (factorials, Legendre polynomials at large `k`) are
//! carried as [`ScaledValue`]s or in log space.

mod bessel;
mod binomial;
mod gamma;
mod legendre;
mod quadrature;
mod scaled;

pub use bessel::bessel_i0_scaled;
pub use binomial::{
    binomial_rational, generalized_binomial, pochhammer, pochhammer_rational,
};
pub use gamma::{beta, ln_factorial, log_gamma};
pub use legendre::{legendre_scaled, legendre_scaled_sequence};
pub use quadrature::{integrate_semiline, integrate_unit, QuadResult, QuadratureSpec};
pub use scaled::ScaledValue;
