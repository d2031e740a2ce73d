//! Picard lattices of the degree-2 del Pezzo surface `S` and of the Clifford
//! quartic `X_f`, which is a double cover of `S`.
//!
//! `Pic(S)` has basis `e_0..e_7` (a line class and seven exceptional curves)
//! with form `diag(1, -1, ..., -1)`. Pulling back along the double cover
//! doubles the form, giving `diag(2, -2, ..., -2)` on `Pic(X_f)`.

mod search;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;
use thiserror::Error;

pub use search::{
    cone_search, prop46_control_search, prop46_query, prop46_search, satisfies, Bounds,
    ConeQuery, SearchCertificate, SolutionRecord, PROP46_CONTROL_PRESET, PROP46_PRESET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("classes live on different lattices ({0} vs {1})")]
    Mismatch(String, String),
    #[error("coefficient vector has length {found}, lattice rank is {rank}")]
    Length { rank: usize, found: usize },
    #[error("Gram matrix is not a symmetric {0}x{0} matrix")]
    BadGram(usize),
    #[error("expected a class on {expected}, got {found}")]
    WrongSource { expected: String, found: String },
    #[error("coordinate {0} has no finite bound")]
    Unbounded(usize),
    #[error("{0} bounds for a lattice of rank {1}")]
    BoundsLength(usize, usize),
}

pub type Result<T> = std::result::Result<T, LatticeError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntLattice {
    label: String,
    gram: Vec<Vec<i64>>,
}

impl IntLattice {
    pub fn new(label: &str, gram: Vec<Vec<i64>>) -> Result<Arc<Self>> {
        let r = gram.len();
        let square = gram.iter().all(|row| row.len() == r);
        if r == 0 || !square || (0..r).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::BadGram(r));
        }
        Ok(Arc::new(IntLattice {
            label: label.to_string(),
            gram,
        }))
    }

    fn diagonal(label: &str, first: i64, rest: i64, rank: usize) -> Arc<Self> {
        let gram = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| match (i == j, i) {
                        (false, _) => 0,
                        (true, 0) => first,
                        (true, _) => rest,
                    })
                    .collect()
            })
            .collect();
        Self::new(label, gram).expect("diagonal is symmetric")
    }

    /// `Pic(S)` for the degree-2 del Pezzo surface.
    pub fn delpezzo2() -> Arc<Self> {
        static L: OnceLock<Arc<IntLattice>> = OnceLock::new();
        L.get_or_init(|| Self::diagonal("delpezzo2", 1, -1, 8)).clone()
    }

    /// `Pic(X_f)` for the Clifford quartic.
    pub fn cliffk3() -> Arc<Self> {
        static L: OnceLock<Arc<IntLattice>> = OnceLock::new();
        L.get_or_init(|| Self::diagonal("cliffk3", 2, -2, 8)).clone()
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut acc = 0;
        for (i, row) in self.gram.iter().enumerate() {
            if a[i] == 0 {
                continue;
            }
            for (j, g) in row.iter().enumerate() {
                acc += a[i] * g * b[j];
            }
        }
        acc
    }
}

/// An integer class `sum c_i e_i` on a lattice.
#[derive(Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<IntLattice>,
    coeffs: Vec<i64>,
}

impl DivisorClass {
    pub fn new(lattice: &Arc<IntLattice>, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(LatticeError::Length {
                rank: lattice.rank(),
                found: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            lattice: lattice.clone(),
            coeffs,
        })
    }

    /// The basis element `e_i`.
    pub fn basis(lattice: &Arc<IntLattice>, i: usize) -> Self {
        let mut c = vec![0; lattice.rank()];
        c[i] = 1;
        DivisorClass {
            lattice: lattice.clone(),
            coeffs: c,
        }
    }

    /// `a e_0 - sum b_i e_i`.
    pub fn from_ab(lattice: &Arc<IntLattice>, a: i64, b: &[i64]) -> Result<Self> {
        let coeffs = std::iter::once(a).chain(b.iter().map(|x| -x)).collect();
        Self::new(lattice, coeffs)
    }

    pub fn lattice(&self) -> &Arc<IntLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `(a, b)` with `self = a e_0 - sum b_i e_i`.
    pub fn ab(&self) -> (i64, Vec<i64>) {
        (self.coeffs[0], self.coeffs[1..].iter().map(|x| -x).collect())
    }

    pub fn self_intersection(&self) -> i64 {
        self.lattice.form(&self.coeffs, &self.coeffs)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_lattice(self, other)?;
        Ok(self.map2(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_lattice(self, other)?;
        Ok(self.map2(other, |a, b| a - b))
    }

    pub fn scale(&self, k: i64) -> Self {
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn map2(&self, other: &Self, f: impl Fn(i64, i64) -> i64) -> Self {
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Debug for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", self.lattice.label, self.coeffs)
    }
}

/// `(a, (b_1, ..., b_k))` for `a e_0 - sum b_i e_i`.
impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.ab();
        let b: Vec<String> = b.iter().map(|x| x.to_string()).collect();
        write!(f, "({a}, ({}))", b.join(","))
    }
}

fn same_lattice(a: &DivisorClass, b: &DivisorClass) -> Result<()> {
    if Arc::ptr_eq(&a.lattice, &b.lattice) || a.lattice == b.lattice {
        Ok(())
    } else {
        Err(LatticeError::Mismatch(
            a.lattice.label.clone(),
            b.lattice.label.clone(),
        ))
    }
}

/// Intersection number `v1^T G v2`.
pub fn pair(a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
    same_lattice(a, b)?;
    Ok(a.lattice.form(&a.coeffs, &b.coeffs))
}

/// Anticanonical class `-K_S = 3 e_0 - sum e_i` on `Pic(S)`.
pub fn anticanonical() -> DivisorClass {
    DivisorClass::from_ab(&IntLattice::delpezzo2(), 3, &[1; 7]).expect("rank 8")
}

/// Hyperplane class `H = 3 e~_0 - sum e~_i` on `Pic(X_f)`, the pullback of `-K_S`.
pub fn hyperplane() -> DivisorClass {
    DivisorClass::from_ab(&IntLattice::cliffk3(), 3, &[1; 7]).expect("rank 8")
}

/// The 56 classes of `(-1)`-curves on `S`, in the order
/// `e_i`, `e_0 - e_i - e_j`, `2 e_0 - (five e_i)`, `3 e_0 - sum_{i != j} e_i - 2 e_j`.
pub fn delpezzo_minus_one_curves() -> Vec<DivisorClass> {
    let lat = IntLattice::delpezzo2();
    let mut out = Vec::with_capacity(56);
    let ab = |a: i64, b: [i64; 7]| DivisorClass::from_ab(&lat, a, &b).expect("rank 8");
    for i in 0..7 {
        let mut b = [0; 7];
        b[i] = -1;
        out.push(ab(0, b));
    }
    for i in 0..7 {
        for j in i + 1..7 {
            let mut b = [0; 7];
            b[i] = 1;
            b[j] = 1;
            out.push(ab(1, b));
        }
    }
    // five of seven = complement of a pair
    for i in 0..7 {
        for j in i + 1..7 {
            let mut b = [1; 7];
            b[i] = 0;
            b[j] = 0;
            out.push(ab(2, b));
        }
    }
    for j in 0..7 {
        let mut b = [1; 7];
        b[j] = 2;
        out.push(ab(3, b));
    }
    out
}

/// Pullback `Pic(S) -> Pic(X_f)`: same coefficients, doubled form.
pub fn pullback_to_k3(c: &DivisorClass) -> Result<DivisorClass> {
    let dp = IntLattice::delpezzo2();
    if *c.lattice != *dp {
        return Err(LatticeError::WrongSource {
            expected: dp.label.clone(),
            found: c.lattice.label.clone(),
        });
    }
    DivisorClass::new(&IntLattice::cliffk3(), c.coeffs.clone())
}

/// Classes of the 56 conics on `X_f`.
pub fn conic_classes() -> Vec<DivisorClass> {
    delpezzo_minus_one_curves()
        .iter()
        .map(|c| pullback_to_k3(c).expect("del Pezzo classes"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Effectivity {
    Effective,
    AntiEffective,
    Inconclusive,
}

/// Riemann-Roch on a K3 gives `h0(D) + h0(-D) >= 2 + D^2/2`, so a class with
/// `D^2 > 0` is effective or anti-effective, decided by its degree against
/// an ample `H`.
pub fn effectivity_hint(d: &DivisorClass, h: &DivisorClass) -> Result<Effectivity> {
    let dh = pair(d, h)?;
    let dd = d.self_intersection();
    Ok(match (dd > 0, dh.signum()) {
        (true, 1) => Effectivity::Effective,
        (true, -1) => Effectivity::AntiEffective,
        _ => Effectivity::Inconclusive,
    })
}
