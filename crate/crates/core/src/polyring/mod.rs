//! Exact sparse multivariate polynomials.

mod coeff;
pub mod gcd;
mod monomial;
mod order;
mod parse;
mod poly;
mod ratfunc;
mod ring;
pub mod sparse;

use thiserror::Error;

pub use coeff::{q, qf, Coeff, Q};
pub use monomial::Monomial;
pub use order::TermOrder;
pub use parse::{parse_poly, parse_rational};
pub use poly::Polynomial;
pub use ratfunc::{to_fraction_coeffs, RatFunc};
pub use ring::RingSpec;
pub(crate) use ring::same_ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("negative exponent")]
    NegativeExponent,
    #[error("duplicate variable name `{0}`")]
    DuplicateName(String),
    #[error("invalid variable name `{0}`")]
    BadName(String),
    #[error("expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("inhomogeneous polynomial with degrees {0:?}")]
    Inhomogeneous(Vec<i64>),
    #[error("`{0}` is a parameter, not a fiber variable")]
    ParameterDerivative(String),
}

/// Parse a list of polynomial strings.
pub fn parse_all<S: AsRef<str>>(
    texts: &[S],
    ring: &std::sync::Arc<RingSpec>,
) -> Result<Vec<Polynomial<Q>>, PolyError> {
    texts.iter().map(|t| parse_poly(t.as_ref(), ring)).collect()
}
