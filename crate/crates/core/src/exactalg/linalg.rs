use std::sync::Arc;

use super::{CycloField, FieldElem};

/// Incrementally built row-echelon basis of a subspace of `F^dim`.
///
/// Rows are normalized to 1 at their pivot and reduced against all earlier
/// rows, so reducing a vector against the rows in insertion order leaves it
/// zero at every pivot.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: Arc<CycloField>,
    dim: usize,
    rows: Vec<(usize, Vec<FieldElem>)>,
}

impl EchelonBasis {
    pub fn new(field: &Arc<CycloField>, dim: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            dim,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn reduce(&self, mut v: Vec<FieldElem>) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.dim, "vector length");
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: Vec<FieldElem>) -> bool {
        self.reduce(v).iter().all(FieldElem::is_zero)
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<FieldElem>) -> bool {
        let v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        let row = v.iter().map(|x| x * &inv).collect();
        self.rows.push((p, row));
        true
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_dependent_rows() {
        let q = CycloField::rationals();
        let v = |xs: &[i64]| xs.iter().map(|&x| FieldElem::from_int(&q, x)).collect::<Vec<_>>();
        let mut b = EchelonBasis::new(&q, 3);
        assert!(b.insert(v(&[1, 2, 3])));
        assert!(b.insert(v(&[0, 1, 1])));
        assert!(!b.insert(v(&[2, 5, 7])));
        assert!(!b.insert(v(&[0, 0, 0])));
        assert!(b.contains(v(&[1, 3, 4])));
        assert!(b.insert(v(&[0, 0, 1])));
        assert_eq!(b.rank(), 3);
    }
}
