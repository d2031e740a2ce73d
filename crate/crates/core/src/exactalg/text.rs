//! Polynomial text format.
//!
//! A polynomial is a sum of terms `coeff * x1^e1*...*xn^en`. Coefficients are
//! rationals `p/q` or cyclotomic coordinates `(c0 + c1*w + c2*w^2 ...)`,
//! where `w` is the primitive root of unity of the ambient field. The parser
//! is lenient (any product of numbers, parenthesized coefficients and
//! variable powers is a term); the printer emits one canonical form with
//! terms in descending graded-lex order.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{AlgError, CycloField, FieldElem, Monomial, MultiPoly, Rational, Result};

fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn format_field_elem(c: &FieldElem) -> String {
    if let Some(r) = c.as_rational() {
        return format_rational(r);
    }
    let parts: Vec<String> = c
        .coords()
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(k, x)| match k {
            0 => format_rational(x),
            1 => format!("{}*w", format_rational(x)),
            _ => format!("{}*w^{}", format_rational(x), k),
        })
        .collect();
    format!("({})", parts.join(" + "))
}

pub fn format_term(m: &Monomial, c: &FieldElem) -> String {
    let vars: Vec<String> = m
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{}", i + 1, e)
            }
        })
        .collect();
    if vars.is_empty() {
        format_field_elem(c)
    } else {
        format!("{} * {}", format_field_elem(c), vars.join("*"))
    }
}

pub fn format_poly(p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    p.terms()
        .rev()
        .map(|(m, c)| format_term(m, c))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub fn parse_poly(s: &str, field: &Arc<CycloField>, nvars: usize) -> Result<MultiPoly> {
    let mut p = Parser::new(s, field, nvars);
    let poly = p.poly()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("trailing input"));
    }
    Ok(poly)
}

pub fn parse_field_elem(s: &str, field: &Arc<CycloField>) -> Result<FieldElem> {
    let p = parse_poly(s, field, 0)?;
    Ok(p.constant_term())
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
    field: &'a Arc<CycloField>,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, field: &'a Arc<CycloField>, nvars: usize) -> Self {
        Parser {
            src,
            chars: src.chars().collect(),
            pos: 0,
            field,
            nvars,
        }
    }

    fn error(&self, reason: &str) -> AlgError {
        AlgError::Parse {
            input: self.src.to_string(),
            reason: format!("{reason} at offset {}", self.pos),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        Ok(text.parse().expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<u32> {
        let v = self.digits()?;
        u32::try_from(v).map_err(|_| self.error("exponent too large"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat('/') {
            let den = self.digits()?;
            if den.is_zero() {
                return Err(self.error("zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn signed_sum<T>(
        &mut self,
        zero: T,
        mut item: impl FnMut(&mut Self) -> Result<T>,
        add: impl Fn(T, T, bool) -> T,
        stop: Option<char>,
    ) -> Result<T> {
        let mut acc = zero;
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some('+') => {
                    self.pos += 1;
                    false
                }
                _ if first => false,
                c if c == stop || c.is_none() => break,
                _ => return Err(self.error("expected '+' or '-'")),
            };
            first = false;
            // canonical output writes negative coefficients as `+ -c`
            let mut negative = negative;
            while let Some(c @ ('-' | '+')) = self.peek() {
                self.pos += 1;
                negative ^= c == '-';
            }
            let t = item(self)?;
            acc = add(acc, t, negative);
            if self.peek() == stop || self.peek().is_none() {
                break;
            }
        }
        Ok(acc)
    }

    fn poly(&mut self) -> Result<MultiPoly> {
        if self.peek().is_none() {
            return Err(self.error("empty polynomial"));
        }
        let zero = MultiPoly::zero(self.field, self.nvars);
        self.signed_sum(
            zero,
            |p| p.term(),
            |acc, t, neg| if neg { &acc - &t } else { &acc + &t },
            None,
        )
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut coeff = FieldElem::one(self.field);
        let mut exps = vec![0u32; self.nvars];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    coeff = coeff.scale(&r);
                }
                Some('(') => {
                    self.pos += 1;
                    let c = self.cyclo()?;
                    if !self.eat(')') {
                        return Err(self.error("expected ')'"));
                    }
                    coeff = &coeff * &c;
                }
                Some('x') => {
                    self.pos += 1;
                    let i = self.small_int()? as usize;
                    if i == 0 || i > self.nvars {
                        return Err(self.error(&format!(
                            "variable x{i} out of range for {} variables",
                            self.nvars
                        )));
                    }
                    let e = if self.eat('^') { self.small_int()? } else { 1 };
                    exps[i - 1] += e;
                }
                _ => return Err(self.error("expected a number, '(' or a variable")),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(MultiPoly::monomial(
            self.field,
            self.nvars,
            Monomial::from_exponents(&exps),
            coeff,
        ))
    }

    fn cyclo(&mut self) -> Result<FieldElem> {
        let zero = FieldElem::zero(self.field);
        self.signed_sum(
            zero,
            |p| p.cyclo_term(),
            |acc, t, neg| if neg { &acc - &t } else { &acc + &t },
            Some(')'),
        )
    }

    fn cyclo_term(&mut self) -> Result<FieldElem> {
        let mut acc = FieldElem::one(self.field);
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    acc = acc.scale(&r);
                }
                Some('w') => {
                    self.pos += 1;
                    let e = if self.eat('^') { self.small_int()? } else { 1 };
                    acc = &acc * &FieldElem::omega_pow(self.field, e as u64);
                }
                _ => return Err(self.error("expected a number or 'w'")),
            }
            if !self.eat('*') {
                break;
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form() {
        let q = CycloField::rationals();
        let p = parse_poly("x2 - x1^2 + 3/2", &q, 2).unwrap();
        assert_eq!(format_poly(&p), "-1 * x1^2 + 1 * x2 + 3/2");
        assert_eq!(format_poly(&MultiPoly::zero(&q, 2)), "0");
    }

    #[test]
    fn cyclotomic_coefficients() {
        let f = CycloField::new(4).unwrap();
        let p = parse_poly("(1 + 2*w) * x1^2*x2 - (w^2)", &f, 2).unwrap();
        assert_eq!(format_poly(&p), "(1 + 2*w) * x1^2*x2 + 1");
        let w = parse_field_elem("(w)", &f).unwrap();
        assert_eq!(w, FieldElem::omega(&f));
        assert_eq!(format_field_elem(&-&w), "(-1*w)");
    }

    #[test]
    fn parse_errors() {
        let q = CycloField::rationals();
        assert!(parse_poly("x3", &q, 2).is_err());
        assert!(parse_poly("1/0", &q, 1).is_err());
        assert!(parse_poly("", &q, 1).is_err());
        assert!(parse_poly("x1 +", &q, 1).is_err());
        assert!(parse_poly("(1 + w", &q, 1).is_err());
        assert!(parse_poly("x1 x2", &q, 2).is_err());
    }

    // (exponents, coordinates as numerator/denominator pairs) per term
    type RawTerms = Vec<(Vec<u32>, Vec<(i64, i64)>)>;

    fn arb_poly() -> impl Strategy<Value = RawTerms> {
        prop::collection::vec(
            (
                prop::collection::vec(0u32..4, 3),
                prop::collection::vec((-20i64..20, 1i64..6), 4),
            ),
            0..6,
        )
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(raw in arb_poly()) {
            let f = CycloField::new(5).unwrap();
            let terms = raw.into_iter().map(|(e, cs)| {
                let coords = cs.into_iter()
                    .map(|(n, d)| Rational::new(n.into(), d.into()))
                    .collect();
                (Monomial::from_exponents(&e), FieldElem::from_coords(&f, coords))
            });
            let p = MultiPoly::from_terms(&f, 3, terms).unwrap();
            let text = format_poly(&p);
            let back = parse_poly(&text, &f, 3).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(format_poly(&back), text);
        }
    }
}
