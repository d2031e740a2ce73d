use crate::exactalg::{EchelonBasis, FieldElem, FieldMatrix};

use super::{CliffordError, GCARep, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrredReport {
    pub algebra_dimension: usize,
    pub irreducible: bool,
    pub word_length_reached: usize,
}

/// Dimension of the algebra generated by the `A_i`, by spanning words of
/// increasing length.
///
/// The span of words of length `<= L` is closed once left multiplication by
/// every generator adds nothing new; the representation is irreducible iff
/// the closed span is all of `Mat_m`. Only the words that enlarged the span
/// in the previous round need to be extended.
pub fn irreducible(rep: &GCARep, max_word_len: usize) -> Result<IrredReport> {
    let m = rep.m();
    let full = m * m;
    let mut basis = EchelonBasis::new(rep.field(), full);
    let id = FieldMatrix::identity(rep.field(), m);
    basis.insert(flatten(&id));
    let mut frontier = vec![id];
    let mut len = 0;
    loop {
        if basis.rank() == full || frontier.is_empty() {
            return Ok(IrredReport {
                algebra_dimension: basis.rank(),
                irreducible: basis.rank() == full,
                word_length_reached: len,
            });
        }
        if len == max_word_len {
            return Err(CliffordError::WordLengthExhausted {
                reached: len,
                dimension: basis.rank(),
            });
        }
        len += 1;
        let mut next = Vec::new();
        for w in &frontier {
            for a in rep.matrices() {
                let p = a.mul(w)?;
                if basis.insert(flatten(&p)) {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            // closed: one more round produced nothing
            return Ok(IrredReport {
                algebra_dimension: basis.rank(),
                irreducible: false,
                word_length_reached: len,
            });
        }
        frontier = next;
    }
}

fn flatten(a: &FieldMatrix) -> Vec<FieldElem> {
    a.entries().to_vec()
}
