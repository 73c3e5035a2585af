//! Exact computation of singular loci of positively graded algebras over a
//! polynomial base ring.
//!
//! The crate is organised bottom-up:
//!
//! * [`polyring`]: sparse polynomials over the rationals and over rational
//!   functions in the parameters, term orders, parsing and printing.
//! * [`ideals`]: Buchberger's algorithm and ideal operations built on it.
//! * [`matrices`]: matrices over the parameter ring, minors and ranks.
//! * [`bbscheme`]: border basis schemes of order ideals.
//! * [`posalg`]: positive algebras, linear parts, fibers and local invariants.
//! * [`singloci`]: the three singular loci, Gröbner systems and constructible sets.
//! * [`fixtures`] and [`report`]: worked examples and descriptor driven analyses.

pub mod bbscheme;
pub mod fixtures;
pub mod ideals;
pub mod matrices;
pub mod polyring;
pub mod posalg;
pub mod report;
pub mod singloci;


pub use polyring::{
    parse_poly, Coeff, Monomial, PolyError, Polynomial, RatFunc, RingSpec, TermOrder, Q,
};
pub use ideals::{Budget, GbError, GroebnerBasis, Ideal};
