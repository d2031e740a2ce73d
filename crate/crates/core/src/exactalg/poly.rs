use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use super::{AlgError, CycloField, FieldElem, Result};

/// An exponent vector, ordered graded-lexicographically: total degree first,
/// then the exponent of the first variable, and so on.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 6]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<SmallVec<_>>>()
            .map(Monomial)
    }

    /// All monomials of total degree `deg` in `nvars` variables, in
    /// descending graded-lex order.
    pub fn all_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Monomial::from_exponents(prefix));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if deg == 0 {
                out.push(Monomial::one(0));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), deg, nvars, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Sparse multivariate polynomial over a cyclotomic field.
///
/// No stored coefficient is zero, so the zero polynomial has no terms and
/// structural equality is polynomial equality.
#[derive(Clone)]
pub struct MultiPoly {
    nvars: usize,
    field: Arc<CycloField>,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl MultiPoly {
    pub fn zero(field: &Arc<CycloField>, nvars: usize) -> Self {
        MultiPoly {
            nvars,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Arc<CycloField>, nvars: usize, c: FieldElem) -> Self {
        Self::monomial(field, nvars, Monomial::one(nvars), c)
    }

    pub fn one(field: &Arc<CycloField>, nvars: usize) -> Self {
        Self::constant(field, nvars, FieldElem::one(field))
    }

    pub fn from_int(field: &Arc<CycloField>, nvars: usize, c: i64) -> Self {
        Self::constant(field, nvars, FieldElem::from_int(field, c))
    }

    /// The variable `x_{i+1}` (zero-based index `i`).
    pub fn var(field: &Arc<CycloField>, nvars: usize, i: usize) -> Self {
        Self::monomial(field, nvars, Monomial::var(nvars, i), FieldElem::one(field))
    }

    pub fn monomial(field: &Arc<CycloField>, nvars: usize, m: Monomial, c: FieldElem) -> Self {
        assert_eq!(m.nvars(), nvars, "monomial arity");
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from (exponents, coefficient) pairs, summing repeats.
    pub fn from_terms(
        field: &Arc<CycloField>,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(AlgError::ArityMismatch {
                    expected: nvars,
                    found: m.nvars(),
                });
            }
            if c.field().order() != field.order() {
                return Err(AlgError::FieldMismatch {
                    left: field.order(),
                    right: c.field().order(),
                });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(&self.field))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElem)> {
        self.terms.last_key_value()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.total_degree().unwrap_or(0) == 0
    }

    pub fn constant_term(&self) -> FieldElem {
        self.coeff(&Monomial::one(self.nvars))
    }

    fn add_term(&mut self, m: Monomial, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgError::ArityMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        if self.field.order() != other.field.order() {
            return Err(AlgError::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.field, self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no
    /// remainder.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgError::DivisionByZero)?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(&self.field, self.nvars);
        while let Some((m, c)) = rem.terms.last_key_value() {
            let qm = m.div(lm).ok_or(AlgError::InexactDivision)?;
            let qc = c * &lc_inv;
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), &-(dc * &qc));
            }
            quot.terms.insert(qm, qc);
        }
        Ok(quot)
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e == 0 {
                continue;
            }
            let mut exps: SmallVec<[u32; 6]> = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), &c.scale(&super::Rational::from_integer(e.into())));
        }
        out
    }

    pub fn eval(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.nvars {
            return Err(AlgError::ArityMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = FieldElem::zero(&self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.try_mul(&x.pow(e as u64))?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    /// Re-embeds into a ring with `nvars >= self.nvars` variables, the new
    /// ones appended after the existing ones.
    pub fn extend_vars(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars);
        MultiPoly {
            nvars,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars
            && self.field.order() == other.field.order()
            && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::format_poly(self))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::format_poly(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("incompatible polynomial rings")
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (Arc<CycloField>, MultiPoly, MultiPoly) {
        let q = CycloField::rationals();
        let x = MultiPoly::var(&q, 2, 0);
        let y = MultiPoly::var(&q, 2, 1);
        (q, x, y)
    }

    #[test]
    fn grlex_order() {
        let m = |e: &[u32]| Monomial::from_exponents(e);
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn binomial_square() {
        let (q, x, y) = xy();
        let s = &x + &y;
        let expected = &(&x * &x) + &(&(&x * &y).scale(&FieldElem::from_int(&q, 2)) + &(&y * &y));
        assert_eq!(s.pow(2), expected);
    }

    #[test]
    fn cancellation_leaves_no_zero_terms() {
        let (_, x, y) = xy();
        let p = &(&x + &y) - &y;
        assert_eq!(p, x);
        assert_eq!(p.num_terms(), 1);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn exact_division() {
        let (_, x, y) = xy();
        let a = &x + &y;
        let b = &x - &y;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!((&prod + &x).div_exact(&a), Err(AlgError::InexactDivision));
    }

    #[test]
    fn derivative_and_eval() {
        let (q, x, y) = xy();
        let f = &x.pow(3) + &(&x * &y);
        let fx = f.partial_derivative(0);
        assert_eq!(fx, &x.pow(2).scale(&FieldElem::from_int(&q, 3)) + &y);
        let v = f
            .eval(&[FieldElem::from_int(&q, 2), FieldElem::from_int(&q, 5)])
            .unwrap();
        assert_eq!(v, FieldElem::from_int(&q, 18));
    }

    #[test]
    fn arity_mismatch() {
        let q = CycloField::rationals();
        let a = MultiPoly::var(&q, 2, 0);
        let b = MultiPoly::var(&q, 3, 0);
        assert_eq!(
            a.try_add(&b),
            Err(AlgError::ArityMismatch { expected: 2, found: 3 })
        );
    }
}
