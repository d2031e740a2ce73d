//! Exact arithmetic kernel.
//!
//! Everything here is exact: rationals are arbitrary precision, algebraic
//! constants live in a cyclotomic field `Q(w) = Q[t]/Phi_d(t)`, and
//! polynomials are sparse maps from exponent vectors to field elements kept
//! in graded-lexicographic order.

mod cyclo;
mod linalg;
mod matrix;
mod nondeg;
mod poly;
mod text;

pub use cyclo::{cyclotomic_poly, field_arith, CycloField, FieldElem, FieldOp, Rational};
pub use linalg::EchelonBasis;
pub use matrix::{poly_power_matrix, FieldMatrix, PolyMatrix};
pub use nondeg::{nondegenerate, Nondegeneracy};
pub use poly::{Monomial, MultiPoly};
pub use text::{format_field_elem, format_poly, format_term, parse_field_elem, parse_poly};

pub(crate) use matrix::pfaffian_with_sign_fault;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("cyclotomic order must be at least 1")]
    ZeroOrder,
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: Q(w_{left}) vs Q(w_{right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("variable arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("matrix size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("Pfaffian of a matrix of odd size {0}")]
    OddSize(usize),
    #[error("matrix is not skew-symmetric at entry ({row}, {col})")]
    NotSkewSymmetric { row: usize, col: usize },
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("form of degree {0} is too small, need degree at least 2")]
    DegreeTooSmall(u32),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

pub type Result<T> = std::result::Result<T, AlgError>;
