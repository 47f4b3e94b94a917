//! Exact arithmetic: Gaussian rationals, sparse polynomials, reduced rational
//! functions, the x-derivation on exponential generators, and a linear solver
//! over the rational-function field.

mod deriv;
mod gauss;
pub mod gcd;
mod linsolve;
mod poly;
mod ratfn;
pub mod text;

pub use deriv::{differentiate, DerivationTable};
pub use gauss::{GaussRat, ParseGaussError};
pub use linsolve::{echelon, solve, Echelon, Solution};
pub use poly::{Monomial, Poly, Var, NVARS};
pub use ratfn::RationalFn;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("unknown generator `{0}`: no derivation rule")]
    UnknownGenerator(String),
    #[error("inconsistent system: reduced row {row}")]
    Inconsistent { row: String },
    #[error("dimension mismatch")]
    DimensionMismatch,
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&text::poly_to_string(self))
    }
}

/// `a (op) b` on rational functions, with division checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Div,
}

pub fn arith(a: &RationalFn, b: &RationalFn, op: ArithOp) -> Result<RationalFn, ExprError> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}
