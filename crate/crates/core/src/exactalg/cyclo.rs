use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgError, Result};

pub type Rational = num_rational::BigRational;

/// Coefficients of the `d`-th cyclotomic polynomial, lowest degree first.
///
/// Computed by dividing `t^d - 1` by `Phi_e` for every proper divisor `e`.
pub fn cyclotomic_poly(d: u32) -> Result<Vec<i64>> {
    if d == 0 {
        return Err(AlgError::ZeroOrder);
    }
    let mut known: BTreeMap<u32, Vec<i64>> = BTreeMap::new();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mut num = vec![0i64; e as usize + 1];
        num[0] = -1;
        num[e as usize] = 1;
        for (_, phi) in known.iter().filter(|(f, _)| e % **f == 0) {
            num = div_monic_int(&num, phi);
        }
        known.insert(e, num);
    }
    Ok(known.remove(&d).expect("d divides itself"))
}

// Exact quotient of integer polynomials by a monic divisor; the remainder is
// asserted zero.
fn div_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// The cyclotomic field `Q(w_d)` presented as `Q[t]/Phi_d(t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloField {
    order: u32,
    phi: Vec<i64>,
}

impl CycloField {
    pub fn new(order: u32) -> Result<Arc<Self>> {
        let phi = cyclotomic_poly(order)?;
        Ok(Arc::new(CycloField { order, phi }))
    }

    /// The rational numbers, presented as `Q(w_1)`.
    pub fn rationals() -> Arc<Self> {
        Self::new(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn phi(&self) -> &[i64] {
        &self.phi
    }

    /// Degree of the field over Q, i.e. `totient(d)`.
    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    // Reduces an arbitrary coordinate vector modulo Phi_d.
    fn reduce(&self, mut coeffs: Vec<Rational>) -> Vec<Rational> {
        let n = self.degree();
        while coeffs.len() > n {
            let c = coeffs.pop().expect("nonempty");
            if c.is_zero() {
                continue;
            }
            let base = coeffs.len() - n;
            for (i, &p) in self.phi[..n].iter().enumerate() {
                if p != 0 {
                    coeffs[base + i] -= &c * Rational::from_integer(BigInt::from(p));
                }
            }
        }
        coeffs.resize(n, Rational::zero());
        coeffs
    }
}

/// An element of `Q(w_d)` as exact rational coordinates on `1, t, ..., t^(n-1)`.
#[derive(Clone)]
pub struct FieldElem {
    field: Arc<CycloField>,
    coords: Vec<Rational>,
}

impl FieldElem {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        FieldElem {
            field: field.clone(),
            coords: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_int(field: &Arc<CycloField>, v: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(v)))
    }

    pub fn from_rational(field: &Arc<CycloField>, v: Rational) -> Self {
        let mut e = Self::zero(field);
        e.coords[0] = v;
        e
    }

    /// Builds an element from coordinates of any length; higher powers of
    /// `t` are reduced modulo `Phi_d`.
    pub fn from_coords(field: &Arc<CycloField>, coords: Vec<Rational>) -> Self {
        FieldElem {
            field: field.clone(),
            coords: field.reduce(coords),
        }
    }

    /// The class of `t`, a primitive `d`-th root of unity.
    pub fn omega(field: &Arc<CycloField>) -> Self {
        Self::from_coords(field, vec![Rational::zero(), Rational::one()])
    }

    pub fn omega_pow(field: &Arc<CycloField>, k: u64) -> Self {
        let k = (k % field.order() as u64) as usize;
        let mut coords = vec![Rational::zero(); k + 1];
        coords[k] = Rational::one();
        Self::from_coords(field, coords)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.coords[1..]
            .iter()
            .all(Zero::is_zero)
            .then(|| &self.coords[0])
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field.order == other.field.order {
            Ok(())
        } else {
            Err(AlgError::FieldMismatch {
                left: self.field.order,
                right: other.field.order,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElem {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Ok(FieldElem {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let n = self.field.degree();
        if n == 1 {
            return Ok(FieldElem {
                field: self.field.clone(),
                coords: vec![&self.coords[0] * &other.coords[0]],
            });
        }
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElem {
            field: self.field.clone(),
            coords: self.field.reduce(prod),
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against `Phi_d`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        if self.field.degree() == 1 {
            return Ok(FieldElem {
                field: self.field.clone(),
                coords: vec![self.coords[0].recip()],
            });
        }
        let modulus: Vec<Rational> = self
            .field
            .phi
            .iter()
            .map(|&c| Rational::from_integer(BigInt::from(c)))
            .collect();
        // Invariant: s_i * self == r_i (mod Phi).
        let (mut r0, mut r1) = (modulus, trim(self.coords.clone()));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = upoly_divrem(&r0, &r1);
            let s2 = upoly_sub(&s0, &upoly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // Phi is irreducible, so the gcd r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let coords = s0.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_coords(&self.field, coords))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
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

    pub fn scale(&self, c: &Rational) -> Self {
        FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

// Univariate helpers over Q, lowest degree first, trimmed (no trailing zeros).
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn upoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] -= x;
    }
    trim(out)
}

fn upoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn upoly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let lead = b.last().expect("nonzero divisor").recip();
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let k = rem.len() - 1 - db;
        let c = rem.last().expect("nonempty") * &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl Eq for FieldElem {}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::format_field_elem(self))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::format_field_elem(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs).expect("field elements from different fields")
            }
        }
        impl $trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    /// Inverts the first operand; the second is ignored apart from the field check.
    Inv,
}

pub fn field_arith(a: &FieldElem, b: &FieldElem, op: FieldOp) -> Result<FieldElem> {
    match op {
        FieldOp::Add => a.try_add(b),
        FieldOp::Sub => a.try_sub(b),
        FieldOp::Mul => a.try_mul(b),
        FieldOp::Inv => {
            a.same_field(b)?;
            a.inv()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(BigInt::from(n))
    }

    // Independent oracle: schoolbook division of integer polynomials,
    // written without the monic shortcut.
    fn oracle_divide(mut num: Vec<i64>, den: &[i64]) -> Vec<i64> {
        let mut quot = vec![0; num.len() + 1 - den.len()];
        while num.len() >= den.len() {
            let shift = num.len() - den.len();
            let c = *num.last().unwrap() / *den.last().unwrap();
            quot[shift] = c;
            for (i, &x) in den.iter().enumerate() {
                num[shift + i] -= c * x;
            }
            assert_eq!(num.pop(), Some(0));
        }
        assert!(num.iter().all(|&c| c == 0));
        quot
    }

    fn oracle_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1).unwrap(), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(2).unwrap(), vec![1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap(), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(0), Err(AlgError::ZeroOrder));
    }

    #[test]
    fn phi12_against_division_oracle() {
        // t^12 - 1 divided by Phi_1 Phi_2 Phi_3 Phi_4 Phi_6, with those small
        // factors written out by hand.
        let mut t12 = vec![0; 13];
        t12[0] = -1;
        t12[12] = 1;
        let divisors: [&[i64]; 5] = [&[-1, 1], &[1, 1], &[1, 1, 1], &[1, 0, 1], &[1, -1, 1]];
        let den = divisors.iter().fold(vec![1], |acc, p| oracle_mul(&acc, p));
        let expected = oracle_divide(t12, &den);
        assert_eq!(expected, vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_poly(12).unwrap(), expected);
    }

    #[test]
    fn divisor_product_rebuilds_t_pow_d_minus_one() {
        for d in 1..=24u32 {
            let prod = (1..=d)
                .filter(|e| d % e == 0)
                .map(|e| cyclotomic_poly(e).unwrap())
                .fold(vec![1], |acc, p| oracle_mul(&acc, &p));
            let mut expected = vec![0; d as usize + 1];
            expected[0] = -1;
            expected[d as usize] = 1;
            assert_eq!(prod, expected, "d = {d}");
        }
    }

    #[test]
    fn degree_is_totient() {
        let totient = |d: u32| (1..=d).filter(|k| num_integer::gcd(*k, d) == 1).count();
        for d in 1..=30 {
            assert_eq!(CycloField::new(d).unwrap().degree(), totient(d));
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        let f = CycloField::new(4).unwrap();
        let w = FieldElem::omega(&f);
        assert_eq!(&w * &w, FieldElem::from_int(&f, -1));
        assert_eq!(w.inv().unwrap(), -&w);
        assert_eq!(field_arith(&w, &w, FieldOp::Inv).unwrap(), -&w);
    }

    #[test]
    fn cube_roots_sum() {
        let f = CycloField::new(3).unwrap();
        let w = FieldElem::omega(&f);
        let w2 = &w * &w;
        assert_eq!(&w + &w2, FieldElem::from_int(&f, -1));
        assert_eq!(w2.coords(), &[q(-1), q(-1)]);
    }

    #[test]
    fn omega_has_exact_order() {
        for d in 1..=16 {
            let f = CycloField::new(d).unwrap();
            let w = FieldElem::omega(&f);
            assert!(w.pow(d as u64).is_one());
            for k in 1..d {
                assert!(!w.pow(k as u64).is_one(), "d={d} k={k}");
            }
        }
    }

    #[test]
    fn errors() {
        let f4 = CycloField::new(4).unwrap();
        let f3 = CycloField::new(3).unwrap();
        let a = FieldElem::one(&f4);
        let b = FieldElem::one(&f3);
        assert_eq!(
            a.try_add(&b),
            Err(AlgError::FieldMismatch { left: 4, right: 3 })
        );
        assert_eq!(FieldElem::zero(&f4).inv(), Err(AlgError::DivisionByZero));
    }
}
