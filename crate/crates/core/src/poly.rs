//! Exact sparse Laurent polynomials in `A` with monomials in `K1, K2, ...`.
//!
//! Canonical text form: terms in ascending `A` exponent, then ascending
//! monomial, joined by `" + "` / `" - "`, each term written as
//! `[coeff*]A^e*Ki^j*...` with unit coefficients, `A^0` and `^1` on `K`
//! omitted. The parser additionally accepts parenthesized sub-expressions,
//! juxtaposition for products and division by a monomial in `A`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Product `K_{i1}^{j1} K_{i2}^{j2} ...`, stored sorted by index with no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KMonomial(Vec<(u32, u32)>);

impl KMonomial {
    pub fn one() -> Self {
        KMonomial(Vec::new())
    }

    pub fn var(index: u32) -> Self {
        assert!(index >= 1, "K variables are indexed from 1");
        KMonomial(vec![(index, 1)])
    }

    /// Builds a monomial from (index, exponent) pairs in any order; zero exponents are dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, j) in pairs {
            assert!(i >= 1, "K variables are indexed from 1");
            *map.entry(i).or_default() += j;
        }
        KMonomial(map.into_iter().filter(|&(_, j)| j > 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// (index, exponent) pairs with ascending index.
    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn max_index(&self) -> Option<u32> {
        self.0.last().map(|&(i, _)| i)
    }

    /// Sum of `index * exponent`.
    pub fn k_degree(&self) -> u32 {
        self.0.iter().map(|&(i, j)| i * j).sum()
    }

    pub fn mul(&self, other: &KMonomial) -> KMonomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        KMonomial::from_pairs(self.0.iter().chain(other.0.iter()).copied())
    }
}

impl fmt::Display for KMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (n, &(i, j)) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str("*")?;
            }
            write!(f, "K{i}")?;
            if j != 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

pub fn k_degree(mono: &KMonomial) -> u32 {
    mono.k_degree()
}

/// Element of `Z[A, A^-1][K1, K2, ...]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ArrowPoly {
    terms: BTreeMap<(i32, KMonomial), BigInt>,
}

impl ArrowPoly {
    pub fn zero() -> Self {
        ArrowPoly::default()
    }

    pub fn one() -> Self {
        ArrowPoly::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        ArrowPoly::term(c, 0, KMonomial::one())
    }

    /// `A^a_exp`
    pub fn a_pow(a_exp: i32) -> Self {
        ArrowPoly::term(1, a_exp, KMonomial::one())
    }

    pub fn term<C: Into<BigInt>>(coeff: C, a_exp: i32, mono: KMonomial) -> Self {
        let mut p = ArrowPoly::zero();
        p.add_term(coeff.into(), a_exp, mono);
        p
    }

    /// `d = -A^2 - A^-2`, the value of a circle without cusps.
    pub fn loop_value() -> Self {
        ArrowPoly::term(-1, 2, KMonomial::one()) + ArrowPoly::term(-1, -2, KMonomial::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as (A exponent, monomial, coefficient) in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &KMonomial, &BigInt)> {
        self.terms.iter().map(|((a, m), c)| (*a, m, c))
    }

    pub fn coeff(&self, a_exp: i32, mono: &KMonomial) -> BigInt {
        self.terms.get(&(a_exp, mono.clone())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: BigInt, a_exp: i32, mono: KMonomial) {
        if coeff.is_zero() {
            return;
        }
        let key = (a_exp, mono);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `c * A^a_shift * self`
    pub fn scale<C: Into<BigInt>>(&self, c: C, a_shift: i32) -> ArrowPoly {
        let c = c.into();
        if c.is_zero() {
            return ArrowPoly::zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|((a, m), k)| ((a + a_shift, m.clone()), k * &c))
            .collect();
        ArrowPoly { terms }
    }

    pub fn pow(&self, n: u32) -> ArrowPoly {
        let mut acc = ArrowPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sets every `K_i` to 1 and collects like terms.
    pub fn substitute_k_one(&self) -> ArrowPoly {
        let mut out = ArrowPoly::zero();
        for ((a, _), c) in &self.terms {
            out.add_term(c.clone(), *a, KMonomial::one());
        }
        out
    }

    /// The substitution `A -> A^-1`.
    pub fn invert_a(&self) -> ArrowPoly {
        let terms = self.terms.iter().map(|((a, m), c)| ((-a, m.clone()), c.clone())).collect();
        ArrowPoly { terms }
    }

    /// Set of k-degrees of the summands.
    pub fn k_degree_set(&self) -> BTreeSet<u32> {
        self.terms.keys().map(|(_, m)| m.k_degree()).collect()
    }

    /// JSON rendering as a list of `{coeff, a_exp, k: {i: j}}` in canonical order.
    ///
    /// Coefficients that do not fit an `i64` are written as decimal strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|((a, m), c)| {
                    let coeff = match c.to_i64() {
                        Some(v) => json!(v),
                        None => json!(c.to_string()),
                    };
                    let k: serde_json::Map<String, Value> =
                        m.exponents().iter().map(|&(i, j)| (i.to_string(), json!(j))).collect();
                    json!({ "coeff": coeff, "a_exp": a, "k": k })
                })
                .collect(),
        )
    }
}

pub fn k_degree_set(p: &ArrowPoly) -> BTreeSet<u32> {
    p.k_degree_set()
}

pub fn substitute_k_one(p: &ArrowPoly) -> ArrowPoly {
    p.substitute_k_one()
}

impl<'a> Add<&'a ArrowPoly> for &'a ArrowPoly {
    type Output = ArrowPoly;

    fn add(self, rhs: &ArrowPoly) -> ArrowPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ArrowPoly {
    type Output = ArrowPoly;

    fn add(mut self, rhs: ArrowPoly) -> ArrowPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&ArrowPoly> for ArrowPoly {
    fn add_assign(&mut self, rhs: &ArrowPoly) {
        for ((a, m), c) in &rhs.terms {
            self.add_term(c.clone(), *a, m.clone());
        }
    }
}

impl Neg for ArrowPoly {
    type Output = ArrowPoly;

    fn neg(mut self) -> ArrowPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl<'a> Sub<&'a ArrowPoly> for &'a ArrowPoly {
    type Output = ArrowPoly;

    fn sub(self, rhs: &ArrowPoly) -> ArrowPoly {
        let mut out = self.clone();
        out += &-rhs.clone();
        out
    }
}

impl Sub for ArrowPoly {
    type Output = ArrowPoly;

    fn sub(self, rhs: ArrowPoly) -> ArrowPoly {
        self + -rhs
    }
}

impl<'a> Mul<&'a ArrowPoly> for &'a ArrowPoly {
    type Output = ArrowPoly;

    fn mul(self, rhs: &ArrowPoly) -> ArrowPoly {
        let mut out = ArrowPoly::zero();
        for ((a1, m1), c1) in &self.terms {
            for ((a2, m2), c2) in &rhs.terms {
                out.add_term(c1 * c2, a1 + a2, m1.mul(m2));
            }
        }
        out
    }
}

impl Mul for ArrowPoly {
    type Output = ArrowPoly;

    fn mul(self, rhs: ArrowPoly) -> ArrowPoly {
        &self * &rhs
    }
}

impl fmt::Display for ArrowPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, ((a, m), c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (n, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if *a != 0 {
                factors.push(format!("A^{a}"));
            }
            if !m.is_one() {
                factors.push(m.to_string());
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("polynomial syntax error at offset {offset}: {message}")]
pub struct PolyParseError {
    pub offset: usize,
    pub message: String,
}

impl FromStr for ArrowPoly {
    type Err = PolyParseError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        parse_poly(text)
    }
}

pub fn parse_poly(text: &str) -> Result<ArrowPoly, PolyParseError> {
    let mut parser = Parser { src: text.as_bytes(), pos: 0 };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos != parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

pub fn print_poly(p: &ArrowPoly) -> String {
    p.to_string()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyParseError {
        PolyParseError { offset: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ArrowPoly, PolyParseError> {
        let mut acc = ArrowPoly::zero();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc += &if negate { -t } else { t };
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<ArrowPoly, PolyParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    let inv = monomial_inverse(&f).ok_or_else(|| self.error("can only divide by ±A^k"))?;
                    acc = &acc * &inv;
                }
                Some(b'(') | Some(b'A') | Some(b'K') => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(c) if c.is_ascii_digit() => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ArrowPoly, PolyParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.uint()?;
                    return Ok(inner.pow(e));
                }
                Ok(inner)
            }
            Some(b'A') => {
                self.pos += 1;
                let e = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.int()?
                } else {
                    1
                };
                Ok(ArrowPoly::a_pow(e))
            }
            Some(b'K') => {
                self.pos += 1;
                let i = self.uint()?;
                if i == 0 {
                    return Err(self.error("K variables are indexed from 1"));
                }
                let j = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.uint()?
                } else {
                    1
                };
                Ok(ArrowPoly::term(1, 0, KMonomial::from_pairs([(i, j)])))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                Ok(ArrowPoly::constant(digits.parse::<BigInt>().unwrap()))
            }
            _ => Err(self.error("expected a number, A, K or '('")),
        }
    }

    fn uint(&mut self) -> Result<u32, PolyParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn int(&mut self) -> Result<i32, PolyParseError> {
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'(') => {
                self.pos += 1;
                let v = self.int()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                return Ok(v);
            }
            _ => false,
        };
        let v = self.uint()? as i32;
        Ok(if negative { -v } else { v })
    }
}

fn monomial_inverse(p: &ArrowPoly) -> Option<ArrowPoly> {
    if p.len() != 1 {
        return None;
    }
    let (a, m, c) = p.terms().next()?;
    if !m.is_one() || !(c.is_one() || (-c).is_one()) {
        return None;
    }
    Some(ArrowPoly::term(c.clone(), -a, KMonomial::one()))
}
