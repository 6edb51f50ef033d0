//! Exact integer polynomials in the indexed families `x`, `y`, `alpha`,
//! `beta` plus a few auxiliary slots, truncated series over them, and
//! determinants.

mod coeff;
mod det;
mod json;
mod monomial;
mod poly;
mod series;

pub use coeff::Coeff;
pub use det::{det_bareiss, det_cofactor, determinant, determinant_series, Ring, DEFAULT_MAX_SIZE};
pub use json::{poly_from_json, poly_to_json};
pub use monomial::{aux_index, Family, Grading, Monomial, Variable, AUX_NAMES};
pub use poly::Poly;
pub use series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("series with different gradings cannot be combined")]
    GradingMismatch,
    #[error("series has no inverse: constant term is not 1")]
    NonUnitConstant,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix of size {0} exceeds the limit {1}")]
    MatrixTooLarge(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}
