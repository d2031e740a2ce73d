//! Matrix representations of generalized Clifford algebras.
//!
//! A representation of `C_f` for a form `f` of degree `d` in `n` variables is
//! a tuple of constant `m x m` matrices `A_1..A_n` with
//! `(x_1 A_1 + ... + x_n A_n)^d = f(x) I_m` as polynomial matrices. The
//! matrix size is always a multiple of `d`; `r = m / d` is the rank of the
//! associated Ulrich bundle on `w^d = f`.

mod generate;
mod irreducible;

use std::sync::Arc;

use thiserror::Error;

use crate::exactalg::{
    poly_power_matrix, AlgError, CycloField, FieldElem, FieldMatrix, Monomial, MultiPoly,
    PolyMatrix,
};

pub use generate::{
    clock_matrix, generate_diagonal_rep, omega_binomial, omega_binomial_pascal, shift_matrix,
};
pub use irreducible::{irreducible, IrredReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("degree d = {0} must be at least 2")]
    DegreeTooSmall(u32),
    #[error("need at least 2 variables, got {0}")]
    TooFewVariables(usize),
    #[error("matrix size {m} is not a multiple of d = {d}")]
    SizeNotMultiple { d: u32, m: usize },
    #[error("form must be homogeneous of degree {expected} in {nvars} variables")]
    BadForm { expected: u32, nvars: usize },
    #[error("expected {expected} matrices, got {found}")]
    MatrixCount { expected: usize, found: usize },
    #[error("matrix {index} has size {found}, expected {expected}")]
    MatrixSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("root c_{0} is zero")]
    ZeroRoot(usize),
    #[error("field Q(w_{field}) has no primitive {d}-th root of unity")]
    NoRootOfUnity { field: u32, d: u32 },
    #[error("representation does not satisfy the defining identity")]
    Unverified,
    #[error("conjugating matrix is singular")]
    SingularConjugator,
    #[error("word length {reached} exhausted before closure (span dimension {dimension})")]
    WordLengthExhausted { reached: usize, dimension: usize },
}

pub type Result<T> = std::result::Result<T, CliffordError>;

/// A candidate representation `(d, n, m, f, A_1..A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCARep {
    d: u32,
    field: Arc<CycloField>,
    form: MultiPoly,
    matrices: Vec<FieldMatrix>,
}

impl GCARep {
    pub fn new(d: u32, form: MultiPoly, matrices: Vec<FieldMatrix>) -> Result<Self> {
        if d < 2 {
            return Err(CliffordError::DegreeTooSmall(d));
        }
        let n = form.nvars();
        if n < 2 {
            return Err(CliffordError::TooFewVariables(n));
        }
        let form_ok = form.is_homogeneous() && form.total_degree().is_none_or(|e| e == d);
        if !form_ok {
            return Err(CliffordError::BadForm { expected: d, nvars: n });
        }
        if matrices.len() != n {
            return Err(CliffordError::MatrixCount {
                expected: n,
                found: matrices.len(),
            });
        }
        let m = matrices[0].size();
        if m == 0 || !m.is_multiple_of(d as usize) {
            return Err(CliffordError::SizeNotMultiple { d, m });
        }
        let field = form.field().clone();
        for (index, a) in matrices.iter().enumerate() {
            if a.size() != m {
                return Err(CliffordError::MatrixSize {
                    index,
                    expected: m,
                    found: a.size(),
                });
            }
            if a.field().order() != field.order() {
                return Err(AlgError::FieldMismatch {
                    left: field.order(),
                    right: a.field().order(),
                }
                .into());
            }
        }
        Ok(GCARep {
            d,
            field,
            form,
            matrices,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.form.nvars()
    }

    pub fn m(&self) -> usize {
        self.matrices[0].size()
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }

    pub fn matrices(&self) -> &[FieldMatrix] {
        &self.matrices
    }

    /// The same form with different matrices (sizes are re-validated).
    pub fn with_matrices(&self, matrices: Vec<FieldMatrix>) -> Result<Self> {
        Self::new(self.d, self.form.clone(), matrices)
    }

    /// `L(x) = x_1 A_1 + ... + x_n A_n` in `nvars >= n` variables.
    pub fn linear_matrix(&self, nvars: usize) -> PolyMatrix {
        let m = self.m();
        PolyMatrix::from_fn(&self.field, nvars, m, |i, j| {
            let terms = self.matrices.iter().enumerate().map(|(k, a)| {
                (Monomial::var(nvars, k), a.get(i, j).clone())
            });
            MultiPoly::from_terms(&self.field, nvars, terms).expect("consistent arity")
        })
    }

    /// Simultaneous conjugation `A_i -> theta A_i theta^-1`.
    pub fn conjugate(&self, theta: &FieldMatrix) -> Result<Self> {
        let inv = theta.inverse().ok_or(CliffordError::SingularConjugator)?;
        let matrices = self
            .matrices
            .iter()
            .map(|a| theta.mul(a).and_then(|t| t.mul(&inv)))
            .collect::<std::result::Result<_, _>>()?;
        self.with_matrices(matrices)
    }

    /// Block-diagonal direct sum of two representations of the same form.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.form != other.form || self.d != other.d {
            return Err(CliffordError::BadForm {
                expected: self.d,
                nvars: self.n(),
            });
        }
        let (p, q) = (self.m(), other.m());
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                FieldMatrix::from_fn(&self.field, p + q, |i, j| match (i < p, j < p) {
                    (true, true) => a.get(i, j).clone(),
                    (false, false) => b.get(i - p, j - p).clone(),
                    _ => FieldElem::zero(&self.field),
                })
            })
            .collect();
        self.with_matrices(matrices)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub row: usize,
    pub col: usize,
    pub exponents: Vec<u32>,
    pub expected: FieldElem,
    pub actual: FieldElem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub first_discrepancy: Option<Discrepancy>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.first_discrepancy.is_none()
    }
}

/// Checks `L(x)^d = f I_m` entry by entry.
///
/// The reported discrepancy is the first differing entry in row-major order
/// and, within it, the smallest differing monomial in graded-lex order.
pub fn verify_rep(rep: &GCARep) -> VerifyReport {
    let n = rep.n();
    let power = poly_power_matrix(&rep.linear_matrix(n), rep.d);
    let zero = MultiPoly::zero(&rep.field, n);
    let m = rep.m();
    for i in 0..m {
        for j in 0..m {
            let expected = if i == j { &rep.form } else { &zero };
            let actual = power.get(i, j);
            let diff = actual - expected;
            let first = diff.terms().next().map(|(m, _)| m.clone());
            if let Some(mono) = first {
                return VerifyReport {
                    first_discrepancy: Some(Discrepancy {
                        row: i,
                        col: j,
                        exponents: mono.exponents().to_vec(),
                        expected: expected.coeff(&mono),
                        actual: actual.coeff(&mono),
                    }),
                };
            }
        }
    }
    VerifyReport {
        first_discrepancy: None,
    }
}

/// `w I_m - sum x_i A_i` in variables `x_1..x_n, w` (so `w` is `x_{n+1}`).
pub fn presentation_matrix(rep: &GCARep) -> Result<PolyMatrix> {
    if !verify_rep(rep).pass() {
        return Err(CliffordError::Unverified);
    }
    Ok(presentation_unchecked(rep))
}

fn presentation_unchecked(rep: &GCARep) -> PolyMatrix {
    let n = rep.n();
    let w = MultiPoly::var(&rep.field, n + 1, n);
    let wi = PolyMatrix::identity(&rep.field, n + 1, rep.m())
        .scale(&w)
        .expect("same ring");
    wi.sub(&rep.linear_matrix(n + 1)).expect("same shape")
}

/// `(w^d - f)^r` in the presentation's variables.
pub fn expected_char_poly(rep: &GCARep) -> MultiPoly {
    let n = rep.n();
    let w = MultiPoly::var(&rep.field, n + 1, n);
    let base = &w.pow(rep.d) - &rep.form.extend_vars(n + 1);
    base.pow(ulrich_rank(rep) as u32)
}

/// Whether `det(w I - sum x_i A_i) = (w^d - f)^(m/d)` exactly.
pub fn char_poly_identity(rep: &GCARep) -> Result<bool> {
    let pres = presentation_matrix(rep)?;
    Ok(pres.determinant() == expected_char_poly(rep))
}

/// Rank `r = m / d` of the Ulrich bundle attached to the representation.
pub fn ulrich_rank(rep: &GCARep) -> usize {
    rep.m() / rep.d as usize
}

/// `m / d` for raw dimensions, refusing sizes that are not multiples of `d`.
pub fn ulrich_rank_of(d: u32, m: usize) -> Result<usize> {
    if d < 2 {
        return Err(CliffordError::DegreeTooSmall(d));
    }
    if m == 0 || !m.is_multiple_of(d as usize) {
        return Err(CliffordError::SizeNotMultiple { d, m });
    }
    Ok(m / d as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;

    pub(crate) fn pauli() -> GCARep {
        let q = CycloField::new(2).unwrap();
        let f = parse_poly("x1^2 + x2^2", &q, 2).unwrap();
        let a1 = FieldMatrix::from_ints(&q, &[&[0, 1], &[1, 0]]).unwrap();
        let a2 = FieldMatrix::from_ints(&q, &[&[1, 0], &[0, -1]]).unwrap();
        GCARep::new(2, f, vec![a1, a2]).unwrap()
    }

    fn clock_shift_4() -> GCARep {
        let f = CycloField::new(4).unwrap();
        let form = parse_poly("x1^4 + x2^4", &f, 2).unwrap();
        GCARep::new(4, form, vec![shift_matrix(&f, 4), clock_matrix(&f, 4).unwrap()]).unwrap()
    }

    #[test]
    fn pauli_verifies() {
        assert!(verify_rep(&pauli()).pass());
    }

    #[test]
    fn clock_shift_verifies() {
        assert!(verify_rep(&clock_shift_4()).pass());
    }

    #[test]
    fn altered_clock_is_located() {
        let rep = clock_shift_4();
        let mut a2 = rep.matrices()[1].clone();
        a2.set(2, 2, FieldElem::from_int(rep.field(), 2));
        let bad = rep.with_matrices(vec![rep.matrices()[0].clone(), a2]).unwrap();
        let report = verify_rep(&bad);
        assert!(!report.pass());
        let d = report.first_discrepancy.unwrap();
        assert_ne!(d.expected, d.actual);
    }

    #[test]
    fn construction_errors() {
        let q = CycloField::rationals();
        let f = parse_poly("x1^2 + x2^2", &q, 2).unwrap();
        let i3 = FieldMatrix::identity(&q, 3);
        assert_eq!(
            GCARep::new(2, f.clone(), vec![i3.clone(), i3]),
            Err(CliffordError::SizeNotMultiple { d: 2, m: 3 })
        );
        let i2 = FieldMatrix::identity(&q, 2);
        assert_eq!(
            GCARep::new(2, f.clone(), vec![i2.clone()]),
            Err(CliffordError::MatrixCount { expected: 2, found: 1 })
        );
        assert_eq!(
            GCARep::new(3, f, vec![i2.clone(), i2]),
            Err(CliffordError::BadForm { expected: 3, nvars: 2 })
        );
    }

    #[test]
    fn pauli_presentation() {
        let pres = presentation_matrix(&pauli()).unwrap();
        let q = pauli().field().clone();
        let expected = PolyMatrix::from_rows(
            &q,
            3,
            vec![
                vec![parse_poly("x3 - x2", &q, 3).unwrap(), parse_poly("-x1", &q, 3).unwrap()],
                vec![parse_poly("-x1", &q, 3).unwrap(), parse_poly("x3 + x2", &q, 3).unwrap()],
            ],
        )
        .unwrap();
        assert_eq!(pres, expected);
        assert!(char_poly_identity(&pauli()).unwrap());
        assert_eq!(
            pres.determinant(),
            parse_poly("x3^2 - x1^2 - x2^2", &q, 3).unwrap()
        );
    }

    #[test]
    fn clock_shift_presentation_is_linear() {
        let rep = clock_shift_4();
        let pres = presentation_matrix(&rep).unwrap();
        assert_eq!(pres.size(), 4);
        assert!(pres.entries().iter().all(|e| e.total_degree().unwrap_or(0) <= 1));
        assert_eq!(
            pres.determinant(),
            parse_poly("x3^4 - x1^4 - x2^4", rep.field(), 3).unwrap()
        );
        assert!(char_poly_identity(&rep).unwrap());
    }

    #[test]
    fn presentation_refuses_unverified() {
        let rep = pauli();
        let bad = rep
            .with_matrices(vec![rep.matrices()[0].clone(), rep.matrices()[0].clone()])
            .unwrap();
        assert_eq!(presentation_matrix(&bad), Err(CliffordError::Unverified));
    }

    #[test]
    fn ranks() {
        assert_eq!(ulrich_rank_of(4, 8), Ok(2));
        assert_eq!(ulrich_rank_of(2, 2), Ok(1));
        assert_eq!(ulrich_rank_of(4, 16), Ok(4));
        assert_eq!(ulrich_rank_of(4, 6), Err(CliffordError::SizeNotMultiple { d: 4, m: 6 }));
        assert_eq!(ulrich_rank(&pauli()), 1);
    }
}
