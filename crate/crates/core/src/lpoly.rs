//! Sparse Laurent polynomials in `d` variables with exact rational
//! coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration and
//! the canonical text form both follow lexicographic exponent order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;

/// A point of `Z^d`, used both as a lattice position and as a monomial
/// exponent.  Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector(coords)
    }

    pub fn zero(dim: usize) -> Self {
        ExponentVector(vec![0; dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = vec![0; dim];
        v[axis] = 1;
        ExponentVector(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        ExponentVector(lattice::scale(k, &self.0))
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

impl From<&[i64]> for ExponentVector {
    fn from(v: &[i64]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for ExponentVector {
    fn from(v: [i64; N]) -> Self {
        ExponentVector(v.to_vec())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;
    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(lattice::add(&self.0, &rhs.0))
    }
}

impl Sub for &ExponentVector {
    type Output = ExponentVector;
    fn sub(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector(lattice::sub(&self.0, &rhs.0))
    }
}

impl Neg for &ExponentVector {
    type Output = ExponentVector;
    fn neg(self) -> ExponentVector {
        ExponentVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A primitive vector whose first nonzero coordinate is positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Direction(ExponentVector);

impl Direction {
    /// Direction of a nonzero vector together with the signed multiplicity
    /// `k` such that `v = k * direction`.
    pub fn split(v: &ExponentVector) -> Result<(Direction, i64)> {
        let (p, k) = lattice::primitive_part(&v.0).ok_or(Error::ZeroVector)?;
        Ok((Direction(ExponentVector(p)), k))
    }

    pub fn of(v: &ExponentVector) -> Result<Direction> {
        Ok(Self::split(v)?.0)
    }

    pub fn vector(&self) -> &ExponentVector {
        &self.0
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Per-coordinate extent of a support.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub extents: Vec<i64>,
}

/// Canonical form `X^offset * (a_0 + a_1 X^v + ... + a_n X^{nv})` of a line
/// polynomial, with `v` the direction and `offset` the lex-least support
/// point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineInfo {
    pub direction: Direction,
    pub degree: usize,
    pub offset: ExponentVector,
    pub coefficients: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    dim: usize,
    terms: BTreeMap<ExponentVector, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl LaurentPoly {
    pub fn zero(dim: usize) -> Self {
        LaurentPoly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, BigRational::one())
    }

    pub fn constant(dim: usize, c: BigRational) -> Self {
        Self::monomial(ExponentVector::zero(dim), c)
    }

    pub fn monomial(v: ExponentVector, c: BigRational) -> Self {
        let dim = v.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(v, c);
        }
        LaurentPoly { dim, terms }
    }

    /// `X^v` with coefficient 1.
    pub fn x_pow(v: ExponentVector) -> Self {
        Self::monomial(v, BigRational::one())
    }

    /// Builds a polynomial from terms, merging repeats and dropping zeros.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExponentVector, BigRational)>,
    {
        let mut p = Self::zero(dim);
        for (v, c) in terms {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.dim() });
            }
            p.add_term(v, c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(dim: usize, terms: &[(&[i64], i64)]) -> Result<Self> {
        Self::from_terms(dim, terms.iter().map(|(v, c)| (ExponentVector::from(*v), rat(*c))))
    }

    fn add_term(&mut self, v: ExponentVector, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(v) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        parse_poly(text, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<ExponentVector, BigRational> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn coeff(&self, v: &ExponentVector) -> BigRational {
        self.terms.get(v).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_dim(&self, other: &LaurentPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(v.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_dim(other)?;
        let mut out = LaurentPoly::zero(self.dim);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u + v, a * b);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigRational) -> LaurentPoly {
        if k.is_zero() {
            return LaurentPoly::zero(self.dim);
        }
        LaurentPoly { dim: self.dim, terms: self.terms.iter().map(|(v, c)| (v.clone(), c * k)).collect() }
    }

    pub fn scale_int(&self, k: i64) -> LaurentPoly {
        self.scale(&rat(k))
    }

    /// Multiplication by the monomial `X^v`.
    pub fn shift(&self, v: &ExponentVector) -> LaurentPoly {
        LaurentPoly { dim: self.dim, terms: self.terms.iter().map(|(u, c)| (u + v, c.clone())).collect() }
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one(self.dim);
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

    /// `f(X^n)`: every exponent multiplied by `n >= 1`.
    pub fn substitute_power(&self, n: i64) -> Result<LaurentPoly> {
        if n < 1 {
            return Err(Error::Invalid(format!("substitution power must be positive, got {n}")));
        }
        Ok(LaurentPoly { dim: self.dim, terms: self.terms.iter().map(|(v, c)| (v.scaled(n), c.clone())).collect() })
    }

    /// `f(X^{-1})`.
    pub fn reflect(&self) -> LaurentPoly {
        LaurentPoly { dim: self.dim, terms: self.terms.iter().map(|(v, c)| (-v, c.clone())).collect() }
    }

    pub fn support(&self) -> BTreeSet<ExponentVector> {
        self.terms.keys().cloned().collect()
    }

    /// Sum of all coefficients, i.e. the value at `X = (1, ..., 1)`.
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |a, c| a + c)
    }

    pub fn bounding_box(&self) -> Result<BoundingBox> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for v in it {
            for i in 0..self.dim {
                lo[i] = lo[i].min(v.0[i]);
                hi[i] = hi[i].max(v.0[i]);
            }
        }
        Ok(BoundingBox { extents: hi.iter().zip(&lo).map(|(h, l)| h - l).collect() })
    }

    /// Per-coordinate `(min, max)` of the support.
    pub fn support_range(&self) -> Result<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(Error::ZeroPolynomial)?;
        let mut lo = first.0.clone();
        let mut hi = first.0.clone();
        for v in it {
            for i in 0..self.dim {
                lo[i] = lo[i].min(v.0[i]);
                hi[i] = hi[i].max(v.0[i]);
            }
        }
        Ok((lo, hi))
    }

    /// First translation `t` (in lex order) with `t - supp(f)` inside `shape`.
    pub fn fits_in(&self, shape: &[ExponentVector]) -> Option<ExponentVector> {
        let anchor = self.terms.keys().next()?;
        let set: BTreeSet<&ExponentVector> = shape.iter().collect();
        let mut cands: Vec<ExponentVector> = shape.iter().map(|s| s + anchor).collect();
        cands.sort();
        cands.dedup();
        cands.into_iter().find(|t| self.terms.keys().all(|u| set.contains(&(t - u))))
    }

    pub fn line_info(&self) -> Option<LineInfo> {
        if self.terms.len() < 2 {
            return None;
        }
        let mut keys = self.terms.keys();
        let offset = keys.next()?.clone();
        let second = keys.next()?;
        let (direction, _) = Direction::split(&(second - &offset)).ok()?;
        let v = direction.vector().coords();
        let j = v.iter().position(|&x| x != 0)?;
        let mut steps = Vec::with_capacity(self.terms.len());
        for (u, c) in &self.terms {
            let w = u - &offset;
            let k = w.0[j] / v[j];
            if w.0[j] % v[j] != 0 || lattice::scale(k, v) != w.0 {
                return None;
            }
            steps.push((k as usize, c.clone()));
        }
        let degree = steps.iter().map(|(k, _)| *k).max()?;
        let mut coefficients = vec![BigRational::zero(); degree + 1];
        for (k, c) in steps {
            coefficients[k] = c;
        }
        Some(LineInfo { direction, degree, offset, coefficients })
    }

    /// `X^v - 1`.
    pub fn difference(v: &ExponentVector) -> Result<LaurentPoly> {
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
        let d = v.dim();
        LaurentPoly::from_terms(d, [(v.clone(), rat(1)), (ExponentVector::zero(d), rat(-1))])
    }

    /// Exact quotient by a line polynomial, or `None` if `g` does not divide.
    pub fn exact_div_line(&self, g: &LaurentPoly) -> Result<Option<LaurentPoly>> {
        self.check_dim(g)?;
        let info = g.line_info().ok_or(Error::NotLine)?;
        let v = info.direction.vector().coords().to_vec();
        let j = v.iter().position(|&x| x != 0).ok_or(Error::NotLine)?;
        let a = &info.coefficients;
        let n = info.degree;
        // Group X^{-offset} f by cosets of Z v: exponent = rep + k v.
        let mut cosets: BTreeMap<Vec<i64>, BTreeMap<i64, BigRational>> = BTreeMap::new();
        for (u, c) in &self.terms {
            let e = lattice::sub(&u.0, &info.offset.0);
            let k = e[j].div_euclid(v[j]);
            let rep = lattice::sub(&e, &lattice::scale(k, &v));
            cosets.entry(rep).or_default().insert(k, c.clone());
        }
        let mut q = LaurentPoly::zero(self.dim);
        for (rep, seq) in cosets {
            let kmin = *seq.keys().next().unwrap_or(&0);
            let kmax = *seq.keys().next_back().unwrap_or(&0);
            let len = (kmax - kmin) as usize + 1;
            if len < n + 1 {
                return Ok(None);
            }
            let mut rem = vec![BigRational::zero(); len];
            for (k, c) in seq {
                rem[(k - kmin) as usize] = c;
            }
            let qlen = len - n;
            let mut quot = vec![BigRational::zero(); qlen];
            for i in (0..qlen).rev() {
                let lead = &rem[i + n];
                if lead.is_zero() {
                    continue;
                }
                let t = lead / &a[n];
                for (s, aj) in a.iter().enumerate() {
                    if !aj.is_zero() {
                        rem[i + s] -= &t * aj;
                    }
                }
                quot[i] = t;
            }
            if rem.iter().any(|r| !r.is_zero()) {
                return Ok(None);
            }
            for (i, c) in quot.into_iter().enumerate() {
                let k = kmin + i as i64;
                let e = lattice::add(&rep, &lattice::scale(k, &v));
                q.add_term(ExponentVector(e), c);
            }
        }
        Ok(Some(q))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, if all coefficients are integers.
    pub fn integer_terms(&self) -> Option<Vec<(ExponentVector, BigInt)>> {
        self.terms.iter().map(|(v, c)| c.is_integer().then(|| (v.clone(), c.to_integer()))).collect()
    }

    /// Positive rational multiple with coprime integer coefficients.
    pub fn clear_denominators(&self) -> LaurentPoly {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let num = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c.numer() * (&den / c.denom()))));
        self.scale(&BigRational::new(den, num))
    }

    /// `f^p - f(X^p)` with coefficients reduced into `[0, p)`.
    pub fn frobenius_residue(&self, p: u64) -> Result<LaurentPoly> {
        if !self.is_integral() {
            return Err(Error::NonInteger);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let e = u32::try_from(p).map_err(|_| Error::Invalid(format!("prime {p} too large")))?;
        let diff = self.pow(e).try_sub(&self.substitute_power(p as i64)?)?;
        let m = BigInt::from(p);
        let terms = diff.terms.into_iter().map(|(v, c)| (v, BigRational::from_integer(c.to_integer().mod_floor(&m))));
        LaurentPoly::from_terms(self.dim, terms)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("dimension mismatch in polynomial addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("dimension mismatch in polynomial subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("dimension mismatch in polynomial multiplication")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { dim: self.dim, terms: self.terms.iter().map(|(v, c)| (v.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Variable name for axis `i` in dimension `dim`.
pub fn var_name(i: usize, dim: usize) -> String {
    if dim <= 3 {
        ["x", "y", "z"][i].to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn lookup_var(name: &str, dim: usize) -> Option<usize> {
    if dim <= 3 {
        if let Some(i) = ["x", "y", "z"].iter().position(|&s| s == name) {
            return (i < dim).then_some(i);
        }
    }
    let idx: usize = name.strip_prefix('x')?.parse().ok()?;
    (idx >= 1 && idx <= dim && !name[1..].starts_with('0')).then(|| idx - 1)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (v, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || v.is_zero() {
                factors.push(a.to_string());
            }
            for (i, &e) in v.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(var_name(i, self.dim)),
                    _ => factors.push(format!("{}^{}", var_name(i, self.dim), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt =
                text[start..i].parse().map_err(|_| Error::Syntax { pos: start, msg: "bad integer".into() })?;
            out.push((start, Tok::Num(n)));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
        } else if "+-*/^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    dim: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                let d = self.power()?;
                if !d.is_monomial() {
                    return self.err("divisor must be a nonzero monomial");
                }
                let (v, c) = d.terms.iter().next().expect("monomial has one term");
                acc = &acc * &LaurentPoly::monomial(-v, c.recip());
            } else if matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_)) | Some(Tok::Sym('('))) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<LaurentPoly> {
        if self.eat('-') {
            return Ok(-self.power()?);
        }
        if self.eat('+') {
            return self.power();
        }
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let e = match self.peek() {
            Some(Tok::Num(n)) => n.to_u32(),
            _ => return self.err("expected exponent"),
        };
        let Some(e) = e else {
            return self.err("exponent too large");
        };
        self.at += 1;
        if !neg {
            return Ok(base.pow(e));
        }
        if !base.is_monomial() {
            return self.err("negative powers are only allowed for monomials");
        }
        let (v, c) = base.terms.iter().next().expect("monomial has one term");
        Ok(LaurentPoly::monomial(-v, c.recip()).pow(e))
    }

    fn atom(&mut self) -> Result<LaurentPoly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.at += 1;
                Ok(LaurentPoly::constant(self.dim, BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let i =
                    lookup_var(&name, self.dim).ok_or(Error::UnknownVariable { name: name.clone(), dim: self.dim })?;
                Ok(LaurentPoly::x_pow(ExponentVector::unit(self.dim, i)))
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            _ => Err(Error::Syntax { pos, msg: "expected number, variable or `(`".into() }),
        }
    }
}

/// Parses text such as `3 - x + 2*x^2 + x*y` or `(x-1)*(y-1)*(x*y^-1 - 1)`.
///
/// Variables are `x, y, z` when `dim <= 3` and `x1 .. xd` in any dimension.
/// Juxtaposition multiplies; `^` binds tighter than unary minus; negative
/// exponents are accepted on monomials.
pub fn parse_poly(text: &str, dim: usize) -> Result<LaurentPoly> {
    if dim == 0 {
        return Err(Error::Invalid("dimension must be positive".into()));
    }
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "empty input".into() });
    }
    let mut p = Parser { toks, at: 0, dim, len: text.len() };
    let out = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}
