//! Exact polynomial arithmetic: parametric coefficients, Laurent polynomials in
//! the field generators, monomial orders, gcds and small dense linear algebra.

mod gcd;
mod laurent;
pub mod linalg;
mod order;
mod param;
mod parse;

pub use gcd::{div_exact, div_poly, gcd, gcd_poly, lcm};
pub use laurent::{Coeff, Laurent, LaurentPoly, Poly};
pub use order::{Ext, MonomialOrder, WeightVector};
pub use param::ParamPoly;
pub use parse::{parse_fraction, parse_laurent, parse_param, parse_poly, Printer};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rationals, the constant field throughout.
pub type Q = BigRational;

/// Exponent vector of a Laurent monomial.
pub type Exps = Vec<i64>;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats a rational as `n` or `n/d`.
pub fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn floor_q(q: &Q) -> BigInt {
    q.floor().to_integer()
}

pub fn ceil_q(q: &Q) -> BigInt {
    q.ceil().to_integer()
}

/// Errors raised by polynomial construction, arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("negative power of a non-monomial")]
    NegativePower,
    #[error("polynomial contains exponent variables")]
    HasParameters,
    #[error("polynomial has negative exponents")]
    NotOrdinary,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("singular order matrix")]
    SingularOrder,
}
