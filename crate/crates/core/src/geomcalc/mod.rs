//! Closed-form numerics on K3 surfaces and curves, and the replay ledger of
//! dimension counts built from them.
//!
//! All calculators are plain integer arithmetic. Cohomology vanishing is
//! never assumed here; the ledger records it as text next to each entry.

mod ledger;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::Rational;

pub use ledger::{numerology_replay, numerology_replay_with, LedgerEntry, LedgerStatus};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("rank must be positive")]
    NonPositiveRank,
    #[error("c1^2 = {0} is odd, but the intersection form of a K3 surface is even")]
    OddSelfIntersection(i64),
    #[error("self-intersection {0} is below -2")]
    SelfIntersectionTooSmall(i64),
    #[error("negative Brill-Noether datum: g = {g}, r = {r}, d = {d}")]
    NegativeDatum { g: i64, r: i64, d: i64 },
    #[error("degree {d} is outside [0, {max}]")]
    DegreeOutOfRange { d: i64, max: i64 },
    #[error("odd number of branch points {0}")]
    OddBranchPoints(i64),
    #[error("negative count {0}")]
    Negative(i64),
    #[error("hypothesis fails: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;

/// Rank and Chern numbers of a sheaf on a K3 surface; `c1_sq` is `c_1^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChernData {
    pub rank: i64,
    pub c1_sq: i64,
    pub c2: i64,
}

impl ChernData {
    pub fn new(rank: i64, c1_sq: i64, c2: i64) -> Result<Self> {
        if rank <= 0 {
            return Err(GeomError::NonPositiveRank);
        }
        Ok(ChernData { rank, c1_sq, c2 })
    }

    /// `O_X(mH)` on a quartic surface, where `H^2 = 4`.
    pub fn line_bundle(m: i64) -> Self {
        ChernData {
            rank: 1,
            c1_sq: 4 * m * m,
            c2: 0,
        }
    }
}

/// Genus, rank and degree of a Brill-Noether locus `W^r_d(C)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BNQuery {
    pub g: i64,
    pub r: i64,
    pub d: i64,
}

impl BNQuery {
    pub fn new(g: i64, r: i64, d: i64) -> Result<Self> {
        if g < 0 || r < 0 || d < 0 {
            return Err(GeomError::NegativeDatum { g, r, d });
        }
        Ok(BNQuery { g, r, d })
    }
}

/// Riemann-Roch on a K3 surface: `chi = 2r + c1^2/2 - c2`.
pub fn k3_euler_char(cd: &ChernData) -> Result<i64> {
    if cd.c1_sq % 2 != 0 {
        return Err(GeomError::OddSelfIntersection(cd.c1_sq));
    }
    Ok(2 * cd.rank + cd.c1_sq / 2 - cd.c2)
}

/// Adjunction on a K3 surface: a curve with `C^2 = 2g - 2`.
pub fn adjunction_genus(selfint: i64) -> Result<i64> {
    if selfint % 2 != 0 {
        return Err(GeomError::OddSelfIntersection(selfint));
    }
    if selfint < -2 {
        return Err(GeomError::SelfIntersectionTooSmall(selfint));
    }
    Ok(selfint / 2 + 1)
}

/// Coefficients (constant term first) of `d r binom(t + n - 1, n - 1)`, the
/// Hilbert polynomial of a rank-`r` Ulrich sheaf on a degree-`d`
/// hypersurface of dimension `n - 1`.
pub fn ulrich_hilbert_poly(d: i64, r: i64, n: i64) -> Result<Vec<Rational>> {
    if d < 2 {
        return Err(GeomError::Precondition(format!("degree {d} < 2")));
    }
    if r < 1 {
        return Err(GeomError::NonPositiveRank);
    }
    if n < 1 {
        return Err(GeomError::Precondition(format!("{n} variables")));
    }
    // prod_{k=1}^{n-1} (t + k) / (n-1)!
    let mut coeffs = vec![Rational::one()];
    let mut factorial = BigInt::one();
    for k in 1..n {
        let mut next = vec![Rational::zero(); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i] += c * Rational::from_integer(k.into());
            next[i + 1] += c;
        }
        coeffs = next;
        factorial *= k;
    }
    let scale = Rational::new(BigInt::from(d * r), factorial);
    Ok(coeffs.into_iter().map(|c| c * &scale).collect())
}

/// `rho(g, r, d) = g - (r + 1)(g + r - d)`.
pub fn brill_noether_rho(q: &BNQuery) -> i64 {
    q.g - (q.r + 1) * (q.g + q.r - q.d)
}

fn rho(g: i64, r: i64, d: i64) -> i64 {
    brill_noether_rho(&BNQuery { g, r, d })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CliffordIndex {
    Value(i64),
    /// Degree-9 space curves are excluded from the Clifford index statement.
    Unsupported,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Gonality {
    pub gonality: i64,
    pub clifford_index: CliffordIndex,
}

/// Gonality of a smooth space curve of the given degree whose lines meet it
/// in at most `max_collinear` points.
pub fn basili_gonality(degree: i64, max_collinear: i64) -> Result<Gonality> {
    if max_collinear < 0 {
        return Err(GeomError::Negative(max_collinear));
    }
    if degree <= max_collinear {
        return Err(GeomError::Precondition(format!(
            "degree {degree} <= max collinear {max_collinear}"
        )));
    }
    let gonality = degree - max_collinear;
    let clifford_index = if degree == 9 {
        CliffordIndex::Unsupported
    } else {
        CliffordIndex::Value(gonality - 2)
    };
    Ok(Gonality {
        gonality,
        clifford_index,
    })
}

/// Bound `dim W^1_d(C) <= d - k` for a `k`-gonal curve of genus `g`,
/// valid when `rho(g, 1, k) <= 0` and `d <= g - k + 2`.
pub fn aprodu_farkas_bound(g: i64, k: i64, d: i64) -> Result<i64> {
    BNQuery::new(g, 1, d)?;
    let rk = rho(g, 1, k);
    if rk > 0 {
        return Err(GeomError::Precondition(format!(
            "rho({g},1,{k}) <= 0 (it is {rk})"
        )));
    }
    if d > g - k + 2 {
        return Err(GeomError::Precondition(format!(
            "d <= g - k + 2 ({d} > {})",
            g - k + 2
        )));
    }
    Ok(d - k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveClass {
    Hyperelliptic,
    Nonhyperelliptic,
    /// Not hyperelliptic, trigonal, bielliptic or a smooth plane quintic.
    GenericNonspecial,
}

/// Tiered bound on `dim W^r_d(C)`.
///
/// Hyperelliptic and nonhyperelliptic tiers need `2 <= d <= g - 1`; the
/// strongest tier needs `d <= g - 2`. All tiers need `0 < 2r <= d`. A
/// negative value means the locus is empty.
pub fn martens_bound(g: i64, r: i64, d: i64, class: CurveClass) -> Result<i64> {
    BNQuery::new(g, r, d)?;
    if r == 0 || 2 * r > d {
        return Err(GeomError::Precondition(format!("0 < 2r <= d ({r}, {d})")));
    }
    let top = match class {
        CurveClass::GenericNonspecial => g - 2,
        _ => g - 1,
    };
    if d < 2 || d > top {
        return Err(GeomError::Precondition(format!("2 <= d <= {top} ({d})")));
    }
    Ok(match class {
        CurveClass::Hyperelliptic => d - 2 * r,
        CurveClass::Nonhyperelliptic => d - 2 * r - 1,
        CurveClass::GenericNonspecial => d - 2 * r - 2,
    })
}

/// Residuation `L -> K_C - L`: `W^r_d = W^{r'}_{d'}` with `d' = 2g - 2 - d`
/// and `r' = r - d + g - 1`, where `r' = -1` means empty.
pub fn serre_residual(g: i64, r: i64, d: i64) -> Result<(i64, i64)> {
    BNQuery::new(g, r, d)?;
    let max = 2 * g - 2;
    if d > max {
        return Err(GeomError::DegreeOutOfRange { d, max });
    }
    Ok((max - d, (r - d + g - 1).max(-1)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MukaiDims {
    /// `<v, v> + 2`.
    pub moduli_dim: i64,
    /// `chi(E (x) E^dual)`.
    pub chi_end: i64,
}

/// Dimension of the moduli of simple sheaves with the given Mukai vector.
pub fn mukai_moduli_dim(cd: &ChernData) -> Result<MukaiDims> {
    if cd.c1_sq % 2 != 0 {
        return Err(GeomError::OddSelfIntersection(cd.c1_sq));
    }
    let r = cd.rank;
    let pairing = 2 * r * cd.c2 - (r - 1) * cd.c1_sq;
    Ok(MukaiDims {
        moduli_dim: pairing - 2 * (r * r - 1),
        chi_end: 2 * r * r - pairing,
    })
}

/// Genus of a double cover of a genus-`g_base` curve branched at
/// `branch_points` points.
pub fn riemann_hurwitz_double_cover(g_base: i64, branch_points: i64) -> Result<i64> {
    if g_base < 0 {
        return Err(GeomError::Negative(g_base));
    }
    if branch_points < 0 {
        return Err(GeomError::Negative(branch_points));
    }
    if branch_points % 2 != 0 {
        return Err(GeomError::OddBranchPoints(branch_points));
    }
    Ok(2 * g_base - 1 + branch_points / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cd(r: i64, c1: i64, c2: i64) -> ChernData {
        ChernData::new(r, c1, c2).unwrap()
    }

    fn bn(g: i64, r: i64, d: i64) -> BNQuery {
        BNQuery::new(g, r, d).unwrap()
    }

    #[test]
    fn euler_characteristic() {
        assert_eq!(k3_euler_char(&cd(1, 16, 0)), Ok(10));
        assert_eq!(k3_euler_char(&cd(1, 0, 0)), Ok(2));
        assert_eq!(k3_euler_char(&cd(2, 36, 14)), Ok(8));
        assert_eq!(
            k3_euler_char(&cd(1, 3, 0)),
            Err(GeomError::OddSelfIntersection(3))
        );
        assert_eq!(ChernData::new(0, 0, 0), Err(GeomError::NonPositiveRank));
    }

    #[test]
    fn genus() {
        assert_eq!(adjunction_genus(16), Ok(9));
        assert_eq!(adjunction_genus(36), Ok(19));
        assert_eq!(adjunction_genus(-2), Ok(0));
        assert!(adjunction_genus(5).is_err());
        assert!(adjunction_genus(-4).is_err());
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from_integer(x.into())).collect()
    }

    #[test]
    fn hilbert_polynomial() {
        assert_eq!(ulrich_hilbert_poly(4, 2, 3).unwrap(), ints(&[8, 12, 4]));
        assert_eq!(ulrich_hilbert_poly(2, 1, 2).unwrap(), ints(&[2, 2]));
        assert_eq!(ulrich_hilbert_poly(3, 5, 1).unwrap(), ints(&[15]));
        // 2 binom(t+3, 3) = (t^3 + 6t^2 + 11t + 6) / 3
        let third = |n: i64| Rational::new(n.into(), 3.into());
        assert_eq!(
            ulrich_hilbert_poly(2, 1, 4).unwrap(),
            vec![third(6), third(11), third(6), third(1)]
        );
        assert!(ulrich_hilbert_poly(1, 1, 2).is_err());
        assert!(ulrich_hilbert_poly(2, 0, 2).is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(brill_noether_rho(&bn(19, 1, 14)), 7);
        assert_eq!(brill_noether_rho(&bn(19, 1, 8)), -5);
        for g in 0..12 {
            for d in 0..=g {
                assert_eq!(brill_noether_rho(&bn(g, 0, d)), d);
            }
        }
        assert!(BNQuery::new(-1, 0, 0).is_err());
    }

    #[test]
    fn gonality() {
        let g = basili_gonality(12, 4).unwrap();
        assert_eq!((g.gonality, g.clifford_index), (8, CliffordIndex::Value(6)));
        let g = basili_gonality(9, 3).unwrap();
        assert_eq!((g.gonality, g.clifford_index), (6, CliffordIndex::Unsupported));
        for d in 1..20 {
            let g = basili_gonality(d, 0).unwrap();
            assert_eq!(g.gonality, d);
            if d != 9 {
                assert_eq!(g.clifford_index, CliffordIndex::Value(d - 2));
            }
        }
        assert!(basili_gonality(4, 4).is_err());
    }

    #[test]
    fn aprodu_farkas() {
        assert_eq!(aprodu_farkas_bound(19, 8, 13), Ok(5));
        let err = aprodu_farkas_bound(19, 8, 14).unwrap_err();
        assert!(err.to_string().contains("d <= g - k + 2"), "{err}");
        let err = aprodu_farkas_bound(19, 11, 13).unwrap_err();
        assert!(err.to_string().contains("rho(19,1,11)"), "{err}");
    }

    #[test]
    fn martens() {
        use CurveClass::*;
        assert_eq!(martens_bound(7, 1, 6, Nonhyperelliptic), Ok(3));
        assert_eq!(martens_bound(9, 2, 7, GenericNonspecial), Ok(1));
        assert_eq!(martens_bound(9, 2, 8, Hyperelliptic), Ok(4));
        // every line bundle of degree 11 on a genus-9 curve moves in a net,
        // so W^2_11 is all of Pic^11 and no bound below 9 can hold
        assert!(martens_bound(9, 2, 11, Hyperelliptic).is_err());
        assert!(martens_bound(7, 1, 6, GenericNonspecial).is_err());
        assert!(martens_bound(7, 0, 4, Hyperelliptic).is_err());
        assert!(martens_bound(7, 3, 5, Hyperelliptic).is_err());
    }

    #[test]
    fn residual() {
        assert_eq!(serre_residual(7, 1, 7), Ok((5, 0)));
        assert_eq!(serre_residual(9, 2, 10), Ok((6, 0)));
        assert_eq!(serre_residual(9, 5, 13), Ok((3, 0)));
        assert_eq!(serre_residual(7, 0, 0), Ok((12, 6)));
        assert_eq!(serre_residual(7, 2, 4), Ok((8, 4)));
        assert_eq!(serre_residual(7, 0, 12), Ok((0, -1)));
        assert_eq!(
            serre_residual(7, 1, 13),
            Err(GeomError::DegreeOutOfRange { d: 13, max: 12 })
        );
    }

    #[test]
    fn mukai() {
        let m = mukai_moduli_dim(&cd(2, 36, 14)).unwrap();
        assert_eq!(m, MukaiDims { moduli_dim: 14, chi_end: -12 });
        assert_eq!(mukai_moduli_dim(&cd(1, 0, 0)).unwrap().moduli_dim, 0);
        assert!(mukai_moduli_dim(&cd(2, 35, 14)).is_err());
    }

    #[test]
    fn hurwitz() {
        assert_eq!(riemann_hurwitz_double_cover(1, 12), Ok(7));
        assert_eq!(riemann_hurwitz_double_cover(0, 4), Ok(1));
        for g in 1..10 {
            assert_eq!(riemann_hurwitz_double_cover(g, 0), Ok(2 * g - 1));
        }
        assert_eq!(
            riemann_hurwitz_double_cover(1, 3),
            Err(GeomError::OddBranchPoints(3))
        );
    }
}
