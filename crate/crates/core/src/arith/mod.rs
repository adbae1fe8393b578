//! Exact scalars: rationals, cyclotomic fields ℚ(ζ_N), polynomials in `t`,
//! and the dense linear algebra the module code is built on.

mod cyclotomic;
pub mod lattice;
pub mod linalg;
mod poly;
mod rational;

pub use cyclotomic::{cyclotomic_poly, totient, Cyclotomic};
pub use linalg::{Echelon, Mat, Vector};
pub use poly::Poly;
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Canonical residue of Σ raw[j]·ζ_N^j modulo Φ_N.
pub fn cyclo_normalize(raw: &[Rational], n: u32) -> Cyclotomic {
    Cyclotomic::normalize(raw, n)
}

/// Multiplicative inverse; fails on zero.
pub fn cyclo_invert(x: &Cyclotomic) -> Result<Cyclotomic, ArithError> {
    x.inv()
}
