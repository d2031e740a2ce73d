use std::sync::Arc;

use crate::exactalg::{AlgError, CycloField, FieldElem, FieldMatrix, Monomial, MultiPoly};

use super::{CliffordError, GCARep, Result};

// w_d inside Q(w_k) for d | k.
fn root_of_unity(field: &Arc<CycloField>, d: u32) -> Result<FieldElem> {
    let k = field.order();
    if d == 0 || !k.is_multiple_of(d) {
        return Err(CliffordError::NoRootOfUnity { field: k, d });
    }
    Ok(FieldElem::omega_pow(field, (k / d) as u64))
}

/// Clock matrix `diag(1, w, ..., w^(d-1))` for the primitive `d`-th root `w`.
pub fn clock_matrix(field: &Arc<CycloField>, d: u32) -> Result<FieldMatrix> {
    let w = root_of_unity(field, d)?;
    Ok(FieldMatrix::from_fn(field, d as usize, |i, j| {
        if i == j {
            w.pow(i as u64)
        } else {
            FieldElem::zero(field)
        }
    }))
}

/// Cyclic shift `e_j -> e_(j+1)`. With the clock `Z` this satisfies
/// `Z X = w X Z`.
pub fn shift_matrix(field: &Arc<CycloField>, d: u32) -> FieldMatrix {
    let d = d as usize;
    FieldMatrix::from_fn(field, d, |i, j| {
        if i == (j + 1) % d {
            FieldElem::one(field)
        } else {
            FieldElem::zero(field)
        }
    })
}

/// Representation of `C_f` for the diagonal form `f = sum c_i^d x_i^d`.
///
/// Uses `n - 1` tensor slots of size `d`:
/// `e_i = Z^(i-1) (x) X (x) I^(n-1-i)` for `i < n` and `e_n = Z^(n-1)`, so the
/// `e_i` pairwise `w`-commute and `A_i = c_i e_i`. The matrix size is
/// `m = d^(n-1)`. The roots must live in a field containing `w_d`.
pub fn generate_diagonal_rep(d: u32, n: usize, roots: &[FieldElem]) -> Result<GCARep> {
    if d < 2 {
        return Err(CliffordError::DegreeTooSmall(d));
    }
    if n < 2 {
        return Err(CliffordError::TooFewVariables(n));
    }
    if roots.len() != n {
        return Err(CliffordError::MatrixCount {
            expected: n,
            found: roots.len(),
        });
    }
    let field = roots[0].field().clone();
    for (i, c) in roots.iter().enumerate() {
        if c.field().order() != field.order() {
            return Err(AlgError::FieldMismatch {
                left: field.order(),
                right: c.field().order(),
            }
            .into());
        }
        if c.is_zero() {
            return Err(CliffordError::ZeroRoot(i + 1));
        }
    }
    let clock = clock_matrix(&field, d)?;
    let shift = shift_matrix(&field, d);
    let id = FieldMatrix::identity(&field, d as usize);

    let slots = n - 1;
    let mut matrices = Vec::with_capacity(n);
    for (i, c) in roots.iter().enumerate() {
        let factors: Vec<&FieldMatrix> = (0..slots)
            .map(|s| match s.cmp(&i) {
                std::cmp::Ordering::Less => &clock,
                std::cmp::Ordering::Equal => &shift,
                std::cmp::Ordering::Greater => &id,
            })
            .collect();
        let e = factors[1..]
            .iter()
            .fold(factors[0].clone(), |acc, f| acc.kron(f));
        matrices.push(e.scale(c));
    }

    let terms = roots.iter().enumerate().map(|(i, c)| {
        let mut exps = vec![0u32; n];
        exps[i] = d;
        (Monomial::from_exponents(&exps), c.pow(d as u64))
    });
    let form = MultiPoly::from_terms(&field, n, terms)?;
    GCARep::new(d, form, matrices)
}

/// Gaussian binomial `[d choose k]_w = prod_{j=1..k} (1 - w^(d-j+1)) / (1 - w^j)`
/// at the primitive `d`-th root `w`.
pub fn omega_binomial(d: u32, k: u32) -> Result<FieldElem> {
    let field = CycloField::new(d)?;
    let one = FieldElem::one(&field);
    let mut acc = one.clone();
    for j in 1..=k {
        let num = &one - &FieldElem::omega_pow(&field, (d - j + 1) as u64);
        let den = &one - &FieldElem::omega_pow(&field, j as u64);
        acc = (&acc * &num).try_div(&den)?;
    }
    Ok(acc)
}

/// Same value via the q-Pascal recurrence
/// `[a, b] = [a-1, b-1] + w^b [a-1, b]`, which never divides.
pub fn omega_binomial_pascal(d: u32, k: u32) -> Result<FieldElem> {
    let field = CycloField::new(d)?;
    let mut row = vec![FieldElem::one(&field)];
    for a in 1..=d as usize {
        let mut next = vec![FieldElem::zero(&field); a + 1];
        next[0] = FieldElem::one(&field);
        next[a] = FieldElem::one(&field);
        for b in 1..a {
            next[b] = &row[b - 1] + &(&FieldElem::omega_pow(&field, b as u64) * &row[b]);
        }
        row = next;
    }
    Ok(row[k as usize].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::verify_rep;
    use crate::exactalg::parse_poly;

    fn ones(d: u32, n: usize) -> Vec<FieldElem> {
        let f = CycloField::new(d).unwrap();
        vec![FieldElem::one(&f); n]
    }

    #[test]
    fn clock_shift_commutation() {
        for d in 2..=6 {
            let f = CycloField::new(d).unwrap();
            let z = clock_matrix(&f, d).unwrap();
            let x = shift_matrix(&f, d);
            let w = FieldElem::omega(&f);
            assert_eq!(z.mul(&x).unwrap(), x.mul(&z).unwrap().scale(&w));
        }
    }

    #[test]
    fn pauli_like_three_variables() {
        let rep = generate_diagonal_rep(2, 3, &ones(2, 3)).unwrap();
        assert_eq!(rep.m(), 4);
        let f = rep.field().clone();
        let x = shift_matrix(&f, 2);
        let z = clock_matrix(&f, 2).unwrap();
        let id = FieldMatrix::identity(&f, 2);
        assert_eq!(rep.matrices()[0], x.kron(&id));
        assert_eq!(rep.matrices()[1], z.kron(&x));
        assert_eq!(rep.matrices()[2], z.kron(&z));
        assert_eq!(rep.form(), &parse_poly("x1^2 + x2^2 + x3^2", &f, 3).unwrap());
        assert!(verify_rep(&rep).pass());
    }

    #[test]
    fn quartic_reps() {
        let rep = generate_diagonal_rep(4, 2, &ones(4, 2)).unwrap();
        assert_eq!(rep.m(), 4);
        assert!(verify_rep(&rep).pass());
        let rep = generate_diagonal_rep(4, 3, &ones(4, 3)).unwrap();
        assert_eq!(rep.m(), 16);
        assert_eq!(super::super::ulrich_rank(&rep), 4);
        assert!(verify_rep(&rep).pass());
    }

    #[test]
    fn nontrivial_roots() {
        let f = CycloField::new(3).unwrap();
        let roots = vec![
            parse_poly("(2 + w)", &f, 0).unwrap().constant_term(),
            parse_poly("(-1/2*w)", &f, 0).unwrap().constant_term(),
        ];
        let rep = generate_diagonal_rep(3, 2, &roots).unwrap();
        assert!(verify_rep(&rep).pass());
    }

    #[test]
    fn roots_in_a_larger_field() {
        // w_2 = -1 lives in Q(w_4)
        let rep = generate_diagonal_rep(2, 2, &ones(4, 2)).unwrap();
        assert!(verify_rep(&rep).pass());
        assert_eq!(
            generate_diagonal_rep(4, 2, &ones(3, 2)),
            Err(CliffordError::NoRootOfUnity { field: 3, d: 4 })
        );
    }

    #[test]
    fn generation_errors() {
        assert_eq!(
            generate_diagonal_rep(1, 2, &ones(1, 2)),
            Err(CliffordError::DegreeTooSmall(1))
        );
        let f = CycloField::new(2).unwrap();
        let roots = vec![FieldElem::one(&f), FieldElem::zero(&f)];
        assert_eq!(
            generate_diagonal_rep(2, 2, &roots),
            Err(CliffordError::ZeroRoot(2))
        );
    }

    #[test]
    fn gaussian_binomials_vanish() {
        for d in 2..=12 {
            for k in 1..d {
                assert!(omega_binomial(d, k).unwrap().is_zero(), "d={d} k={k}");
                assert!(omega_binomial_pascal(d, k).unwrap().is_zero(), "d={d} k={k}");
            }
            assert!(omega_binomial_pascal(d, 0).unwrap().is_one());
            assert!(omega_binomial_pascal(d, d).unwrap().is_one());
        }
    }
}
