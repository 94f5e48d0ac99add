//! Exact arithmetic substrate: variables, monomials, integer-coefficient polynomials,
//! polynomial determinants and rational linear systems.

mod det;
mod monomial;
mod mpoly;
mod rational;
mod var;

pub use det::{det_bareiss, det_cofactor, det_fraction_free, COFACTOR_MAX_ORDER};
pub use monomial::Monomial;
pub use mpoly::MPoly;
pub use rational::{
    solve_rational_system, to_integer, LinearError, LinearSolution, RatMatrix, Rational,
};
pub use var::{Var, VarParseError};
