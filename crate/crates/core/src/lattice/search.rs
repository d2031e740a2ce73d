use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::{conic_classes, hyperplane, pair, DivisorClass, IntLattice, LatticeError, Result};

pub const PROP46_PRESET: &str = "prop-4.6";
pub const PROP46_CONTROL_PRESET: &str = "prop-4.6-control";

/// Inclusive bounds per coordinate, in the `(a, b_1, ..., b_k)` coordinates
/// of `D = a e_0 - sum b_i e_i`. `None` marks an unbounded coordinate, which
/// a search refuses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds(pub Vec<Option<(i64, i64)>>);

impl Bounds {
    pub fn boxed(ranges: &[(i64, i64)]) -> Self {
        Bounds(ranges.iter().copied().map(Some).collect())
    }

    fn finite(&self) -> Result<Vec<(i64, i64)>> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, b)| b.ok_or(LatticeError::Unbounded(i)))
            .collect()
    }
}

/// Lattice points `D` with `D.H = degree_target`, `D^2 = selfint_target` and
/// `D.c >= 0` for every listed class `c`, inside a finite box.
#[derive(Debug, Clone)]
pub struct ConeQuery {
    pub lattice: Arc<IntLattice>,
    pub degree_class: DivisorClass,
    pub degree_target: i64,
    pub selfint_target: i64,
    pub nonneg_classes: Vec<DivisorClass>,
    pub bounds: Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionRecord {
    pub a: i64,
    pub b: Vec<i64>,
    pub coeffs: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchCertificate {
    pub preset: Option<String>,
    pub lattice: String,
    pub constraints: Vec<String>,
    /// `[lo, hi]` for `a`, then each `b_i`.
    pub bounds: Vec<[i64; 2]>,
    pub candidates_checked: u64,
    pub solutions: Vec<SolutionRecord>,
    pub wall_notes: String,
}

impl SearchCertificate {
    pub fn solution_classes(&self, lattice: &Arc<IntLattice>) -> Vec<DivisorClass> {
        self.solutions
            .iter()
            .map(|s| DivisorClass::new(lattice, s.coeffs.clone()).expect("rank checked"))
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Exhaustive enumeration of the query box.
///
/// The box is split by its leading coordinate across threads; solutions are
/// sorted before emission so the certificate does not depend on the split.
pub fn cone_search(query: &ConeQuery) -> Result<SearchCertificate> {
    let rank = query.lattice.rank();
    if query.bounds.0.len() != rank {
        return Err(LatticeError::BoundsLength(query.bounds.0.len(), rank));
    }
    let ranges = query.bounds.finite()?;
    for c in query.nonneg_classes.iter().chain([&query.degree_class]) {
        if *c.lattice() != query.lattice {
            return Err(LatticeError::Mismatch(
                query.lattice.label().to_string(),
                c.lattice().label().to_string(),
            ));
        }
    }

    // D.c = sum_i coeff_i (G c)_i, so each constraint is a linear functional.
    let functional = |c: &DivisorClass| -> Vec<i64> {
        let g = query.lattice.gram();
        (0..rank)
            .map(|i| (0..rank).map(|j| g[i][j] * c.coeffs()[j]).sum())
            .collect()
    };
    let degree_fn = functional(&query.degree_class);
    let nonneg_fns: Vec<Vec<i64>> = query.nonneg_classes.iter().map(functional).collect();
    let dot = |u: &[i64], v: &[i64]| u.iter().zip(v).map(|(a, b)| a * b).sum::<i64>();

    let empty = ranges.iter().any(|(lo, hi)| lo > hi);
    let candidates: u64 = if empty {
        0
    } else {
        ranges.iter().map(|(lo, hi)| (hi - lo + 1) as u64).product()
    };

    let mut solutions: Vec<Vec<i64>> = if empty {
        Vec::new()
    } else {
        let (lo0, hi0) = ranges[0];
        (lo0..=hi0)
            .into_par_iter()
            .flat_map_iter(|lead| {
                let mut found = Vec::new();
                let mut ab: Vec<i64> = ranges.iter().map(|r| r.0).collect();
                ab[0] = lead;
                let mut coeffs = vec![0i64; rank];
                loop {
                    coeffs[0] = ab[0];
                    for i in 1..rank {
                        coeffs[i] = -ab[i];
                    }
                    if dot(&coeffs, &degree_fn) == query.degree_target
                        && query.lattice.form(&coeffs, &coeffs) == query.selfint_target
                        && nonneg_fns.iter().all(|f| dot(&coeffs, f) >= 0)
                    {
                        found.push(ab.clone());
                    }
                    // odometer over coordinates 1..rank
                    let mut k = rank - 1;
                    loop {
                        if k == 0 {
                            return found;
                        }
                        if ab[k] < ranges[k].1 {
                            ab[k] += 1;
                            break;
                        }
                        ab[k] = ranges[k].0;
                        k -= 1;
                    }
                }
            })
            .collect()
    };
    solutions.sort();

    let mut records = Vec::with_capacity(solutions.len());
    for ab in solutions {
        let class = DivisorClass::from_ab(&query.lattice, ab[0], &ab[1..])?;
        assert!(
            satisfies(query, &class)?,
            "search emitted a class that fails its constraints: {class:?}"
        );
        let (a, b) = class.ab();
        records.push(SolutionRecord {
            a,
            b,
            coeffs: class.coeffs().to_vec(),
        });
    }

    Ok(SearchCertificate {
        preset: None,
        lattice: query.lattice.label().to_string(),
        constraints: vec![
            format!("D.H = {}", query.degree_target),
            format!("D^2 = {}", query.selfint_target),
            format!("D.c >= 0 for {} listed classes", query.nonneg_classes.len()),
        ],
        bounds: ranges.iter().map(|&(lo, hi)| [lo, hi]).collect(),
        candidates_checked: candidates,
        solutions: records,
        wall_notes: String::new(),
    })
}

/// Re-checks a class against the query through the generic pairing.
pub fn satisfies(query: &ConeQuery, d: &DivisorClass) -> Result<bool> {
    if pair(d, &query.degree_class)? != query.degree_target
        || d.self_intersection() != query.selfint_target
    {
        return Ok(false);
    }
    for c in &query.nonneg_classes {
        if pair(d, c)? < 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The query behind the conic-nonnegativity argument on `X_f`: divisors with
/// `D.H = degree`, `D^2 = 4`, nonnegative on all 56 conics, with
/// `a in [1, 8]` and `b_i in [0, 3]`.
pub fn prop46_query(degree: i64) -> ConeQuery {
    let mut ranges = vec![(1, 8)];
    ranges.extend([(0, 3); 7]);
    ConeQuery {
        lattice: IntLattice::cliffk3(),
        degree_class: hyperplane(),
        degree_target: degree,
        selfint_target: 4,
        nonneg_classes: conic_classes(),
        bounds: Bounds::boxed(&ranges),
    }
}

const PROP46_NOTES: &str = "b_i >= 0 from D.e_i >= 0; b_i <= 3 from the last conic family \
together with 3a - sum b_i = 3; then sum b_i = 3a - 3 in [0, 21] forces a in [1, 8]. \
Emptiness is claimed only inside these bounds.";

/// Divisors with `D.H = 6`, `D^2 = 4` nonnegative on every conic. Expected empty.
pub fn prop46_search() -> SearchCertificate {
    let mut cert = cone_search(&prop46_query(6)).expect("preset is well formed");
    cert.preset = Some(PROP46_PRESET.to_string());
    cert.wall_notes = PROP46_NOTES.to_string();
    cert
}

/// Same engine with `D.H = 4`; `H` itself must be found.
pub fn prop46_control_search() -> SearchCertificate {
    let mut cert = cone_search(&prop46_query(4)).expect("preset is well formed");
    cert.preset = Some(PROP46_CONTROL_PRESET.to_string());
    cert.wall_notes = "positive control for the prop-4.6 engine".to_string();
    cert
}
