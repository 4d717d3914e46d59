use thiserror::Error;

/// Errors produced by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("index out of range: requested order {requested}, table holds up to {available}")]
    Range { requested: usize, available: usize },

    #[error(
        "quadrature did not converge after {levels} refinements: estimate {estimate:e}, error bound {error_bound:e}"
    )]
    Quadrature {
        estimate: f64,
        error_bound: f64,
        levels: usize,
    },

    #[error("coefficient sign pattern broken at k = {k}: expected alternation (-1)^k")]
    SignPattern { k: usize },

    #[error("no stationary point or turning point found for W_{k} in Omega range [{lo}, {hi}]")]
    NoCandidate { k: usize, lo: f64, hi: f64 },

    #[error("invalid parameter: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}
