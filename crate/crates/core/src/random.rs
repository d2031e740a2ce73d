//! Seeded generators for randomized checks.
//!
//! Everything draws from a caller-supplied RNG so runs are reproducible from
//! a single seed; [`rng`] builds the standard one.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{CycloField, FieldElem, FieldMatrix, MultiPoly, PolyMatrix, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Field element with integer coordinates in `[-bound, bound]`.
pub fn field_elem<R: Rng>(rng: &mut R, field: &Arc<CycloField>, bound: i64) -> FieldElem {
    let coords = (0..field.degree())
        .map(|_| Rational::from_integer(rng.gen_range(-bound..=bound).into()))
        .collect();
    FieldElem::from_coords(field, coords)
}

pub fn nonzero_field_elem<R: Rng>(rng: &mut R, field: &Arc<CycloField>, bound: i64) -> FieldElem {
    loop {
        let c = field_elem(rng, field, bound);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Linear form `sum c_k x_k` with integer `c_k` in `[-bound, bound]`.
pub fn linear_form<R: Rng>(
    rng: &mut R,
    field: &Arc<CycloField>,
    nvars: usize,
    bound: i64,
) -> MultiPoly {
    (0..nvars).fold(MultiPoly::zero(field, nvars), |acc, k| {
        let c = rng.gen_range(-bound..=bound);
        &acc + &MultiPoly::var(field, nvars, k).scale(&FieldElem::from_int(field, c))
    })
}

/// Skew-symmetric matrix of integer linear forms.
pub fn skew_linear_matrix<R: Rng>(
    rng: &mut R,
    field: &Arc<CycloField>,
    size: usize,
    nvars: usize,
    bound: i64,
) -> PolyMatrix {
    let mut rows = vec![vec![MultiPoly::zero(field, nvars); size]; size];
    let upper = (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j)));
    for (i, j) in upper {
        let a = linear_form(rng, field, nvars, bound);
        rows[j][i] = -&a;
        rows[i][j] = a;
    }
    PolyMatrix::from_rows(field, nvars, rows).expect("square by construction")
}

/// Square matrix of integer linear forms.
pub fn linear_matrix<R: Rng>(
    rng: &mut R,
    field: &Arc<CycloField>,
    size: usize,
    nvars: usize,
    bound: i64,
) -> PolyMatrix {
    let rows = (0..size)
        .map(|_| (0..size).map(|_| linear_form(rng, field, nvars, bound)).collect())
        .collect();
    PolyMatrix::from_rows(field, nvars, rows).expect("square by construction")
}

/// Invertible constant matrix with small integer entries.
pub fn invertible_matrix<R: Rng>(
    rng: &mut R,
    field: &Arc<CycloField>,
    size: usize,
    bound: i64,
) -> (FieldMatrix, FieldMatrix) {
    loop {
        let m = FieldMatrix::from_fn(field, size, |_, _| {
            FieldElem::from_int(field, rng.gen_range(-bound..=bound))
        });
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_well_formed() {
        let q = CycloField::rationals();
        let a = skew_linear_matrix(&mut rng(3), &q, 6, 4, 3);
        let b = skew_linear_matrix(&mut rng(3), &q, 6, 4, 3);
        assert_eq!(a, b);
        assert_eq!(a.skew_violation(), None);
        let f = CycloField::new(5).unwrap();
        let (m, inv) = invertible_matrix(&mut rng(1), &f, 4, 2);
        assert_eq!(m.mul(&inv).unwrap(), FieldMatrix::identity(&f, 4));
        assert!(!nonzero_field_elem(&mut rng(0), &f, 1).is_zero());
    }
}
