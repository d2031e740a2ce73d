use super::{AlgError, EchelonBasis, FieldElem, Monomial, MultiPoly, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Nondegeneracy {
    /// The partial derivatives have no common zero besides the origin.
    Nondegenerate,
    /// A common projective zero of all partials.
    Degenerate { witness: [i64; 3] },
    /// The Macaulay matrix is rank deficient but no witness was found.
    Inconclusive { rank: usize, columns: usize },
}

// Small integer points searched for a common zero of the partials.
const WITNESS_BOX: i64 = 2;

/// Decides whether a ternary form `f` of degree `d >= 2` is nondegenerate.
///
/// Diagonal forms are settled directly. Otherwise the three partials (of
/// degree `d - 1`) are multiplied by every monomial of degree `2d - 4`; the
/// resulting Macaulay matrix spans all forms of degree `3d - 5` exactly when
/// the partials have no common projective zero.
pub fn nondegenerate(f: &MultiPoly) -> Result<Nondegeneracy> {
    if f.nvars() != 3 {
        return Err(AlgError::ArityMismatch {
            expected: 3,
            found: f.nvars(),
        });
    }
    if !f.is_homogeneous() {
        return Err(AlgError::NotHomogeneous);
    }
    let d = f.total_degree().unwrap_or(0);
    if d < 2 {
        return Err(AlgError::DegreeTooSmall(d));
    }
    if is_full_diagonal(f, d) {
        return Ok(Nondegeneracy::Nondegenerate);
    }

    let partials: Vec<MultiPoly> = (0..3).map(|i| f.partial_derivative(i)).collect();
    let target = 3 * d - 5;
    let columns = Monomial::all_of_degree(3, target);
    let multipliers = Monomial::all_of_degree(3, 2 * d - 4);
    let mut basis = EchelonBasis::new(f.field(), columns.len());
    'rows: for g in &partials {
        for m in &multipliers {
            let row = g.mul_term(m, &FieldElem::one(f.field()));
            let v = columns.iter().map(|c| row.coeff(c)).collect();
            basis.insert(v);
            if basis.rank() == columns.len() {
                break 'rows;
            }
        }
    }
    if basis.rank() == columns.len() {
        return Ok(Nondegeneracy::Nondegenerate);
    }
    match find_common_zero(&partials)? {
        Some(witness) => Ok(Nondegeneracy::Degenerate { witness }),
        None => Ok(Nondegeneracy::Inconclusive {
            rank: basis.rank(),
            columns: columns.len(),
        }),
    }
}

fn is_full_diagonal(f: &MultiPoly, d: u32) -> bool {
    f.num_terms() == 3
        && f.terms()
            .all(|(m, _)| m.exponents().iter().filter(|&&e| e > 0).count() == 1)
        && (0..3).all(|i| {
            let mut e = [0u32; 3];
            e[i] = d;
            !f.coeff(&Monomial::from_exponents(&e)).is_zero()
        })
}

fn find_common_zero(partials: &[MultiPoly]) -> Result<Option<[i64; 3]>> {
    let field = partials[0].field().clone();
    let mut candidates: Vec<[i64; 3]> = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    let range = -WITNESS_BOX..=WITNESS_BOX;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                let p = [a, b, c];
                // one representative per projective point up to sign
                let lead = p.iter().find(|&&x| x != 0);
                if lead.is_some_and(|&x| x > 0) && !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
    }
    for p in candidates {
        let point: Vec<FieldElem> = p.iter().map(|&x| FieldElem::from_int(&field, x)).collect();
        let mut all_zero = true;
        for g in partials {
            if !g.eval(&point)?.is_zero() {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            return Ok(Some(p));
        }
    }
    Ok(None)
}
