//! Exact sparse multivariate polynomials and rational functions over Q.
//!
//! Rational functions are never reduced by a polynomial GCD. Numerator and
//! denominator are kept as products of structurally distinct factors, so a
//! factor that appears on both sides cancels by plain equality. Two rational
//! functions are equal iff their cross products expand to the same canonical
//! polynomial.

mod mpoly;
mod ratfun;
pub mod univariate;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use mpoly::{Monomial, MPoly};
pub use ratfun::RatFun;
pub use univariate::UniPoly;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Square root of a univariate polynomial in `main_var` with positive leading
/// coefficient; `None` if `f` is not a perfect square or involves other
/// variables.
pub fn poly_exact_sqrt(f: &MPoly, main_var: Var) -> Option<MPoly> {
    let h = f.to_univariate(main_var)?.exact_sqrt()?;
    Some(MPoly::from_univariate(&h, main_var))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbError {
    #[error("DivisionByZeroFunction")]
    DivisionByZeroFunction,
    #[error("SubstitutionDenominatorZero")]
    SubstitutionDenominatorZero,
    #[error("PoleAtPoint")]
    PoleAtPoint,
    #[error("UnboundVariable: {0}")]
    UnboundVariable(Var),
}

/// The fixed variable universe, in canonical order. `x` is the argument of
/// user-supplied univariate polynomials (reciprocal curves).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    B,
    C,
    D,
    T,
    U,
    X,
}

impl Var {
    pub const ALL: [Var; 7] = [Var::A, Var::B, Var::C, Var::D, Var::T, Var::U, Var::X];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["a", "b", "c", "d", "t", "u", "x"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
