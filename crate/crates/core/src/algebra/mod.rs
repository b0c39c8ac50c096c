//! Exact arithmetic: rationals, sparse multivariate polynomials, rational
//! functions and linear algebra over ℚ(vars).

pub mod ceiling;
pub mod gcd;
pub mod linear;
pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod univariate;

pub use ceiling::{with_term_ceiling, TermCeilingExceeded, DEFAULT_TERM_CEILING};
pub use linear::{solve_rational_system, RationalSolution};
pub use matrix::RatMatrix;
pub use poly::{MPoly, Monomial, Vars};
pub use ratfunc::RatFunc;
pub use rational::{format_rational, int, parse_rational, pow_rational, rat, Rational};
pub use univariate::{factor_rational_roots, RootFactorization, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable list mismatch: {0}")]
    VariableMismatch(String),
    #[error("matrix is singular (determinant is identically zero)")]
    Singular,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is not univariate: {0}")]
    NotUnivariate(String),
    #[error("coefficients too large for rational-root search")]
    RootSearchTooLarge,
}
