use std::fmt;
use std::sync::Arc;

use super::{AlgError, CycloField, FieldElem, MultiPoly, Result};

/// Square matrix of field constants, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    size: usize,
    field: Arc<CycloField>,
    entries: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn from_rows(field: &Arc<CycloField>, rows: Vec<Vec<FieldElem>>) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(AlgError::SizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
            for e in row {
                if e.field().order() != field.order() {
                    return Err(AlgError::FieldMismatch {
                        left: field.order(),
                        right: e.field().order(),
                    });
                }
                entries.push(e);
            }
        }
        Ok(FieldMatrix {
            size,
            field: field.clone(),
            entries,
        })
    }

    pub fn from_fn(
        field: &Arc<CycloField>,
        size: usize,
        mut f: impl FnMut(usize, usize) -> FieldElem,
    ) -> Self {
        let entries = (0..size * size).map(|k| f(k / size, k % size)).collect();
        FieldMatrix {
            size,
            field: field.clone(),
            entries,
        }
    }

    pub fn from_ints(field: &Arc<CycloField>, rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| FieldElem::from_int(field, v)).collect())
                .collect(),
        )
    }

    pub fn zero(field: &Arc<CycloField>, size: usize) -> Self {
        Self::from_fn(field, size, |_, _| FieldElem::zero(field))
    }

    pub fn identity(field: &Arc<CycloField>, size: usize) -> Self {
        Self::from_fn(field, size, |i, j| {
            if i == j {
                FieldElem::one(field)
            } else {
                FieldElem::zero(field)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.size + j] = v;
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.size != other.size {
            return Err(AlgError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        let n = self.size;
        let mut out = Self::zero(&self.field, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = out.entries[idx].try_add(&a.try_mul(b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        FieldMatrix {
            size: self.size,
            field: self.field.clone(),
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (a, b) = (self.size, other.size);
        Self::from_fn(&self.field, a * b, |i, j| {
            self.get(i / b, j / b) * other.get(i % b, j % b)
        })
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Self::identity(&self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.entries.swap(pivot * n + j, col * n + j);
                    inv.entries.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a.get(col, col).inv().ok()?;
            for j in 0..n {
                a.entries[col * n + j] = a.get(col, j) * &p;
                inv.entries[col * n + j] = inv.get(col, j) * &p;
            }
            for r in (0..n).filter(|&r| r != col) {
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.entries[r * n + j] = a.get(r, j) - &(&factor * a.get(col, j));
                    inv.entries[r * n + j] = inv.get(r, j) - &(&factor * inv.get(col, j));
                }
            }
        }
        Some(inv)
    }

    pub fn to_poly_matrix(&self, nvars: usize) -> PolyMatrix {
        PolyMatrix {
            size: self.size,
            nvars,
            field: self.field.clone(),
            entries: self
                .entries
                .iter()
                .map(|c| MultiPoly::constant(&self.field, nvars, c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// Square matrix of polynomials sharing one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    size: usize,
    nvars: usize,
    field: Arc<CycloField>,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(
        field: &Arc<CycloField>,
        nvars: usize,
        rows: Vec<Vec<MultiPoly>>,
    ) -> Result<Self> {
        let size = rows.len();
        let mut entries = Vec::with_capacity(size * size);
        for row in rows {
            if row.len() != size {
                return Err(AlgError::SizeMismatch {
                    left: size,
                    right: row.len(),
                });
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(AlgError::ArityMismatch {
                        expected: nvars,
                        found: p.nvars(),
                    });
                }
                if p.field().order() != field.order() {
                    return Err(AlgError::FieldMismatch {
                        left: field.order(),
                        right: p.field().order(),
                    });
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            size,
            nvars,
            field: field.clone(),
            entries,
        })
    }

    pub fn from_fn(
        field: &Arc<CycloField>,
        nvars: usize,
        size: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly,
    ) -> Self {
        let entries = (0..size * size)
            .map(|k| {
                let p = f(k / size, k % size);
                assert_eq!(p.nvars(), nvars, "entry arity");
                p
            })
            .collect();
        PolyMatrix {
            size,
            nvars,
            field: field.clone(),
            entries,
        }
    }

    pub fn zero(field: &Arc<CycloField>, nvars: usize, size: usize) -> Self {
        Self::from_fn(field, nvars, size, |_, _| MultiPoly::zero(field, nvars))
    }

    pub fn identity(field: &Arc<CycloField>, nvars: usize, size: usize) -> Self {
        Self::from_fn(field, nvars, size, |i, j| {
            if i == j {
                MultiPoly::one(field, nvars)
            } else {
                MultiPoly::zero(field, nvars)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.size + j]
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.size != other.size {
            return Err(AlgError::SizeMismatch {
                left: self.size,
                right: other.size,
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_add(b))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.try_sub(b))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.size;
        let mut out = Self::zero(&self.field, self.nvars, n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = out.entries[idx].try_add(&a.try_mul(b)?)?;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, p: &MultiPoly) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.try_mul(p))
            .collect::<Result<_>>()?;
        Ok(PolyMatrix {
            entries,
            ..self.clone()
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.nvars, self.size, |i, j| self.get(j, i).clone())
    }

    pub fn neg(&self) -> Self {
        PolyMatrix {
            entries: self.entries.iter().map(|e| -e).collect(),
            ..self.clone()
        }
    }

    /// Block matrix `[[a, b], [c, d]]` from four equally sized blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        a.check_compatible(b)?;
        a.check_compatible(c)?;
        a.check_compatible(d)?;
        let k = a.size;
        Ok(Self::from_fn(&a.field, a.nvars, 2 * k, |i, j| {
            let src = match (i < k, j < k) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => c,
                (false, false) => d,
            };
            src.get(i % k, j % k).clone()
        }))
    }

    /// Returns the position of the first entry violating `M^T = -M` (with
    /// zero diagonal), in row-major order.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.size {
            for j in i..self.size {
                let ok = if i == j {
                    self.get(i, i).is_zero()
                } else {
                    self.get(i, j).try_add(self.get(j, i)).is_ok_and(|s| s.is_zero())
                };
                if !ok {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Determinant by Bareiss fraction-free elimination. Every division is an
    /// exact polynomial division.
    pub fn determinant(&self) -> MultiPoly {
        let n = self.size;
        if n == 0 {
            return MultiPoly::one(&self.field, self.nvars);
        }
        let mut a: Vec<Vec<MultiPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = MultiPoly::one(&self.field, self.nvars);
        for k in 0..n - 1 {
            // Any nonzero pivot works; the sparsest keeps products small.
            let pivot = (k..n)
                .filter(|&r| !a[r][k].is_zero())
                .min_by_key(|&r| (a[r][k].num_terms(), r));
            let Some(pivot) = pivot else {
                return MultiPoly::zero(&self.field, self.nvars);
            };
            if pivot != k {
                a.swap(pivot, k);
                negate = !negate;
            }
            let (top, rest) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in rest.iter_mut() {
                for j in k + 1..n {
                    let num = &(&pivot_row[k] * &row[j]) - &(&row[k] * &pivot_row[j]);
                    row[j] = num
                        .div_exact(&prev)
                        .expect("Bareiss divisions are exact");
                }
                row[k] = MultiPoly::zero(&self.field, self.nvars);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// meant as an independent check on small matrices.
    pub fn determinant_cofactor(&self) -> MultiPoly {
        let rows: Vec<usize> = (0..self.size).collect();
        let cols = rows.clone();
        self.cofactor(&rows, &cols)
    }

    fn cofactor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        match rows.len() {
            0 => MultiPoly::one(&self.field, self.nvars),
            1 => self.get(rows[0], cols[0]).clone(),
            _ => {
                let mut acc = MultiPoly::zero(&self.field, self.nvars);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> =
                        cols.iter().copied().filter(|&x| x != c).collect();
                    let term = entry * &self.cofactor(&rows[1..], &sub_cols);
                    acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Pfaffian by first-row expansion
    /// `Pf(M) = sum_{j>=2} (-1)^j m_{1j} Pf(M without rows/cols 1, j)`.
    pub fn pfaffian(&self) -> Result<MultiPoly> {
        self.check_pfaffian_input()?;
        let idx: Vec<usize> = (0..self.size).collect();
        Ok(self.pf_expand(&idx, None))
    }

    fn check_pfaffian_input(&self) -> Result<()> {
        if self.size % 2 == 1 {
            return Err(AlgError::OddSize(self.size));
        }
        if let Some((row, col)) = self.skew_violation() {
            return Err(AlgError::NotSkewSymmetric { row, col });
        }
        Ok(())
    }

    // `flip` names a 1-based column of the top-level expansion whose sign is
    // deliberately wrong; used only by the acceptance mutation control.
    fn pf_expand(&self, idx: &[usize], flip: Option<usize>) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(&self.field, self.nvars);
        }
        let first = idx[0];
        let mut acc = MultiPoly::zero(&self.field, self.nvars);
        for (pos, &j) in idx.iter().enumerate().skip(1) {
            let entry = self.get(first, j);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != j).collect();
            let term = entry * &self.pf_expand(&rest, None);
            // pos is 0-based, so column j in the formula is pos + 1.
            let mut positive = (pos + 1) % 2 == 0;
            if flip == Some(pos + 1) {
                positive = !positive;
            }
            acc = if positive { &acc + &term } else { &acc - &term };
        }
        acc
    }
}

pub(crate) fn pfaffian_with_sign_fault(m: &PolyMatrix) -> Result<MultiPoly> {
    m.check_pfaffian_input()?;
    let idx: Vec<usize> = (0..m.size).collect();
    Ok(m.pf_expand(&idx, Some(3)))
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = (0..self.size)
            .map(|i| (0..self.size).map(|j| self.get(i, j).to_string()).collect())
            .collect();
        write!(f, "{rows:?}")
    }
}

/// `m^e` by binary exponentiation.
pub fn poly_power_matrix(m: &PolyMatrix, mut e: u32) -> PolyMatrix {
    let mut base = m.clone();
    let mut acc = PolyMatrix::identity(&m.field, m.nvars, m.size);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).expect("same shape");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).expect("same shape");
        }
    }
    acc
}
