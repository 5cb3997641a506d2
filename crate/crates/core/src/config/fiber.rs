//! One-periodic configurations described fiber by fiber.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, Frame};

/// An integer sequence indexed by `Z`: explicit values on
/// `[start, start + middle.len())` and periodic tails on either side.
///
/// A tail value at position `t` is `tail[t mod tail.len()]`; an empty tail
/// means zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoSidedSeq {
    pub start: i64,
    pub middle: Vec<BigInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<BigInt>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<BigInt>,
}

fn tail_at(tail: &[BigInt], t: i64) -> BigInt {
    if tail.is_empty() {
        BigInt::zero()
    } else {
        tail[t.rem_euclid(tail.len() as i64) as usize].clone()
    }
}

fn combined_period(a: &[BigInt], b: &[BigInt]) -> usize {
    match (a.len(), b.len()) {
        (0, 0) => 0,
        (0, n) | (n, 0) => n,
        (m, n) => lattice::lcm(m as i64, n as i64) as usize,
    }
}

impl TwoSidedSeq {
    pub fn zero() -> Self {
        TwoSidedSeq { start: 0, middle: Vec::new(), left: Vec::new(), right: Vec::new() }
    }

    pub fn finite(start: i64, middle: Vec<BigInt>) -> Self {
        TwoSidedSeq { start, middle, left: Vec::new(), right: Vec::new() }.normalized()
    }

    pub fn new(start: i64, middle: Vec<BigInt>, left: Vec<BigInt>, right: Vec<BigInt>) -> Self {
        TwoSidedSeq { start, middle, left, right }.normalized()
    }

    /// A single value at position `t`.
    pub fn point(t: i64, value: BigInt) -> Self {
        Self::finite(t, vec![value])
    }

    pub fn end(&self) -> i64 {
        self.start + self.middle.len() as i64
    }

    pub fn get(&self, t: i64) -> BigInt {
        if t < self.start {
            tail_at(&self.left, t)
        } else if t < self.end() {
            self.middle[(t - self.start) as usize].clone()
        } else {
            tail_at(&self.right, t)
        }
    }

    pub fn left_period(&self) -> usize {
        self.left.len()
    }

    pub fn right_period(&self) -> usize {
        self.right.len()
    }

    /// Finitely supported.
    pub fn is_finite(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.is_finite() && self.middle.iter().all(Zero::is_zero)
    }

    fn normalized(mut self) -> Self {
        if self.left.iter().all(Zero::is_zero) {
            self.left.clear();
        }
        if self.right.iter().all(Zero::is_zero) {
            self.right.clear();
        }
        if self.right.is_empty() {
            while self.middle.last().is_some_and(Zero::is_zero) {
                self.middle.pop();
            }
        }
        if self.left.is_empty() {
            let lead = self.middle.iter().take_while(|x| x.is_zero()).count();
            self.middle.drain(..lead);
            self.start += lead as i64;
        }
        if self.is_finite() && self.middle.is_empty() {
            self.start = 0;
        }
        self
    }

    /// The sequence `t -> self(t - d)`.
    pub fn shift(&self, d: i64) -> Self {
        let rot = |tail: &[BigInt]| -> Vec<BigInt> { (0..tail.len() as i64).map(|i| tail_at(tail, i - d)).collect() };
        TwoSidedSeq {
            start: self.start + d,
            middle: self.middle.clone(),
            left: rot(&self.left),
            right: rot(&self.right),
        }
    }

    pub fn add(&self, other: &TwoSidedSeq) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let start = self.start.min(other.start);
        let end = self.end().max(other.end());
        let lp = combined_period(&self.left, &other.left);
        let rp = combined_period(&self.right, &other.right);
        let left = (0..lp as i64).map(|i| tail_at(&self.left, i) + tail_at(&other.left, i)).collect();
        let right = (0..rp as i64).map(|i| tail_at(&self.right, i) + tail_at(&other.right, i)).collect();
        let middle = (start..end).map(|t| self.get(t) + other.get(t)).collect();
        TwoSidedSeq { start, middle, left, right }.normalized()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        self.map(|x| x * k)
    }

    /// Applies `f` to every value.  `f(0)` must be 0 for the result to stay
    /// finitely described where the tails are empty.
    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        TwoSidedSeq {
            start: self.start,
            middle: self.middle.iter().map(&f).collect(),
            left: self.left.iter().map(&f).collect(),
            right: self.right.iter().map(&f).collect(),
        }
        .normalized()
    }

    /// Every value the sequence takes.
    pub fn values(&self) -> BTreeSet<BigInt> {
        let mut out: BTreeSet<BigInt> = self.middle.iter().chain(&self.left).chain(&self.right).cloned().collect();
        if self.left.is_empty() || self.right.is_empty() {
            out.insert(BigInt::zero());
        }
        out
    }

    /// Positions where the value can be nonzero, with the tails collapsed to
    /// one period on each side: checking these decides whether the sequence
    /// vanishes.
    pub fn check_range(&self) -> (i64, i64) {
        (self.start - self.left.len() as i64, self.end() + self.right.len() as i64)
    }
}

/// Identifies one fiber: the residue of the period coordinate modulo the
/// period multiplicity, and the coordinates transverse to the fiber plane.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FiberKey {
    pub phase: i64,
    pub rest: Vec<i64>,
}

/// A configuration invariant under the translation `u = k*p` (with `p`
/// primitive), described by finitely many fibers.
///
/// Coordinates come from a unimodular frame `(p, w, e_3, ...)`: a point is
/// `s*p + t*w + r_3*e_3 + ...`.  A fiber is the set of points sharing
/// `s mod k` and `(r_3, ...)`; along a fiber the value is a [`TwoSidedSeq`]
/// in `t`.  Points on fibers without an entry are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPeriodicConfig {
    period: Vec<i64>,
    k: i64,
    frame: Frame,
    fibers: BTreeMap<FiberKey, TwoSidedSeq>,
}

impl FiberPeriodicConfig {
    /// An all-zero configuration with period `period` and fibers running
    /// along `complement` (or along a chosen complement).
    pub fn new(period: &[i64], complement: Option<&[i64]>) -> Result<Self> {
        if period.len() < 2 {
            return Err(Error::Invalid("fiber-periodic configurations need dimension at least 2".into()));
        }
        let (mut p, mut k) = lattice::primitive_part(period).ok_or(Error::ZeroVector)?;
        if k < 0 {
            p.iter_mut().for_each(|x| *x = -*x);
            k = -k;
        }
        let frame = Frame::new(&p, complement)
            .ok_or_else(|| Error::Invalid("complement must extend the period direction to a basis of Z^d".into()))?;
        Ok(FiberPeriodicConfig { period: lattice::scale(k, &p), k, frame, fibers: BTreeMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.period.len()
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    /// Primitive direction of the period.
    pub fn direction(&self) -> Vec<i64> {
        self.period.iter().map(|x| x / self.k).collect()
    }

    pub fn multiplicity(&self) -> i64 {
        self.k
    }

    pub fn complement(&self) -> Vec<i64> {
        self.frame.complement()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn fibers(&self) -> &BTreeMap<FiberKey, TwoSidedSeq> {
        &self.fibers
    }

    pub fn locate(&self, v: &[i64]) -> (FiberKey, i64) {
        let c = self.frame.coords(v);
        (FiberKey { phase: c[0].rem_euclid(self.k), rest: c[2..].to_vec() }, c[1])
    }

    /// Point with frame coordinates `(phase, t, rest)`.
    pub fn point_of(&self, key: &FiberKey, t: i64) -> Vec<i64> {
        let mut c = vec![key.phase, t];
        c.extend_from_slice(&key.rest);
        self.frame.point(&c)
    }

    pub fn value(&self, v: &[i64]) -> BigInt {
        let (key, t) = self.locate(v);
        self.fibers.get(&key).map_or_else(BigInt::zero, |s| s.get(t))
    }

    fn insert(&mut self, key: FiberKey, seq: TwoSidedSeq) {
        let merged = match self.fibers.remove(&key) {
            Some(old) => old.add(&seq),
            None => seq,
        };
        if !merged.is_zero() {
            self.fibers.insert(key, merged);
        }
    }

    /// Adds `value` on the orbit `v + Z*period`.
    pub fn add_point(&mut self, v: &[i64], value: BigInt) -> Result<()> {
        self.check(v)?;
        let (key, t) = self.locate(v);
        self.insert(key, TwoSidedSeq::point(t, value));
        Ok(())
    }

    /// Replaces the fiber through `base`: position `j` of `seq` lands on
    /// `base + j*complement`.
    pub fn set_fiber(&mut self, base: &[i64], seq: TwoSidedSeq) -> Result<()> {
        self.check(base)?;
        let (key, t) = self.locate(base);
        self.fibers.remove(&key);
        self.insert(key, seq.shift(t));
        Ok(())
    }

    fn check(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: v.len() });
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.fibers.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.fibers.values().all(TwoSidedSeq::is_finite)
    }

    pub fn same_frame(&self, other: &FiberPeriodicConfig) -> bool {
        self.period == other.period && self.frame == other.frame
    }

    /// Sum with a configuration in the same frame.
    pub fn add(&self, other: &FiberPeriodicConfig) -> Option<FiberPeriodicConfig> {
        if !self.same_frame(other) {
            return None;
        }
        let mut out = self.clone();
        for (k, s) in &other.fibers {
            out.insert(k.clone(), s.clone());
        }
        Some(out)
    }

    pub fn map_values(&self, f: impl Fn(&BigInt) -> BigInt) -> FiberPeriodicConfig {
        let mut out = FiberPeriodicConfig { fibers: BTreeMap::new(), ..self.clone() };
        for (k, s) in &self.fibers {
            out.insert(k.clone(), s.map(&f));
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> FiberPeriodicConfig {
        self.map_values(|x| x * k)
    }

    /// The configuration `v -> self(v - a)`.
    pub fn translate(&self, a: &[i64]) -> FiberPeriodicConfig {
        let c = self.frame.coords(a);
        let mut out = FiberPeriodicConfig { fibers: BTreeMap::new(), ..self.clone() };
        for (key, seq) in &self.fibers {
            let nk = FiberKey { phase: (key.phase + c[0]).rem_euclid(self.k), rest: lattice::add(&key.rest, &c[2..]) };
            out.insert(nk, seq.shift(c[1]));
        }
        out
    }

    /// The configuration `v -> self(M v)` with `M` negating coordinate `axis`.
    pub fn mirror(&self, axis: usize) -> FiberPeriodicConfig {
        let mut period = self.period.clone();
        period[axis] = -period[axis];
        FiberPeriodicConfig { period, k: self.k, frame: self.frame.mirrored(axis), fibers: self.fibers.clone() }
    }

    /// `f * self` for an integer polynomial given by its terms.
    pub fn apply(&self, terms: &[(Vec<i64>, BigInt)]) -> FiberPeriodicConfig {
        let mut out = FiberPeriodicConfig { fibers: BTreeMap::new(), ..self.clone() };
        for (a, coef) in terms {
            for (key, seq) in self.translate(a).fibers {
                out.insert(key, seq.scale(coef));
            }
        }
        out
    }

    pub fn values(&self) -> BTreeSet<BigInt> {
        let mut out: BTreeSet<BigInt> = self.fibers.values().flat_map(TwoSidedSeq::values).collect();
        out.insert(BigInt::zero());
        out
    }

    /// Points whose values decide whether the configuration is zero: one
    /// orbit representative per explicit value and per tail period.
    pub fn check_points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (key, seq) in &self.fibers {
            let (a, b) = seq.check_range();
            for t in a..b {
                out.push(self.point_of(key, t));
            }
        }
        out
    }

    /// Base points of the arithmetic progressions (step `period`) covering
    /// the support.  Only meaningful for finitely supported fibers.
    pub fn support_progressions(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (key, seq) in &self.fibers {
            for (i, v) in seq.middle.iter().enumerate() {
                if !v.is_zero() {
                    out.push(self.point_of(key, seq.start + i as i64));
                }
            }
        }
        out
    }

    /// Anchors whose patterns (for a shape with the given offsets) include
    /// every pattern of the configuration.
    pub fn pattern_anchors(&self, offsets: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let d = self.dim();
        let coords: Vec<Vec<i64>> = offsets.iter().map(|o| self.frame.coords(o)).collect();
        let lo = |i: usize| coords.iter().map(|c| c[i]).min().unwrap_or(0);
        let hi = |i: usize| coords.iter().map(|c| c[i]).max().unwrap_or(0);
        let mut ranges: Vec<(i64, i64)> = vec![(0, self.k - 1)];
        if self.fibers.is_empty() {
            let mut anchor = vec![0; d];
            anchor[0] = 0;
            return vec![self.frame.point(&anchor)];
        }
        let tmin = self.fibers.values().map(|s| s.start).min().unwrap_or(0);
        let tmax = self.fibers.values().map(|s| s.end()).max().unwrap_or(0);
        let lp = self.fibers.values().fold(0i64, |l, s| match (l, s.left_period() as i64) {
            (a, 0) => a,
            (0, b) => b,
            (a, b) => lattice::lcm(a, b),
        });
        let rp = self.fibers.values().fold(0i64, |l, s| match (l, s.right_period() as i64) {
            (a, 0) => a,
            (0, b) => b,
            (a, b) => lattice::lcm(a, b),
        });
        ranges.push((tmin - hi(1) - lp.max(1), tmax - lo(1) + rp.max(1) - 1));
        for i in 2..d {
            let rmin = self.fibers.keys().map(|k| k.rest[i - 2]).min().unwrap_or(0);
            let rmax = self.fibers.keys().map(|k| k.rest[i - 2]).max().unwrap_or(0);
            ranges.push((rmin - hi(i) - 1, rmax - lo(i) + 1));
        }
        let mut out = Vec::new();
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(self.frame.point(&cur));
            let mut axis = d;
            loop {
                if axis == 0 {
                    return out;
                }
                axis -= 1;
                if cur[axis] < ranges[axis].1 {
                    cur[axis] += 1;
                    break;
                }
                cur[axis] = ranges[axis].0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn seq(vals: &[i64]) -> Vec<BigInt> {
        vals.iter().map(|&x| b(x)).collect()
    }

    #[test]
    fn two_sided_lookup_and_shift() {
        let s = TwoSidedSeq::new(2, seq(&[5, 6]), seq(&[1, 2]), seq(&[7]));
        let vals: Vec<_> = (-2..6).map(|t| s.get(t)).collect();
        assert_eq!(vals, seq(&[1, 2, 1, 2, 5, 6, 7, 7]));
        let sh = s.shift(3);
        for t in -10..10 {
            assert_eq!(sh.get(t), s.get(t - 3));
        }
    }

    #[test]
    fn two_sided_add_matches_pointwise() {
        let a = TwoSidedSeq::new(0, seq(&[1, 0, 3]), seq(&[1, 2]), seq(&[0, 4, 4]));
        let c = TwoSidedSeq::new(-2, seq(&[9]), seq(&[0, 0, 5]), vec![]);
        let s = a.add(&c);
        for t in -20..20 {
            assert_eq!(s.get(t), a.get(t) + c.get(t));
        }
        let neg = a.scale(&b(-1));
        assert!(a.add(&neg).is_zero());
    }

    #[test]
    fn fiber_config_is_periodic() {
        let mut c = FiberPeriodicConfig::new(&[2, 0], Some(&[0, 1])).unwrap();
        c.set_fiber(&[0, 0], TwoSidedSeq::finite(0, seq(&[1, 2, 3]))).unwrap();
        c.add_point(&[1, 5], b(4)).unwrap();
        for x in -6..6 {
            for y in -4..8 {
                assert_eq!(c.value(&[x, y]), c.value(&[x + 2, y]));
            }
        }
        assert_eq!(c.value(&[4, 1]), b(2));
        assert_eq!(c.value(&[3, 5]), b(4));
        assert_eq!(c.value(&[3, 4]), b(0));
    }

    #[test]
    fn transforms_agree_with_pointwise_definitions() {
        let mut c = FiberPeriodicConfig::new(&[1, 1, 0], None).unwrap();
        c.add_point(&[0, 0, 0], b(3)).unwrap();
        c.add_point(&[2, -1, 1], b(-2)).unwrap();
        let a = [1, -2, 3];
        let tr = c.translate(&a);
        let mi = c.mirror(1);
        let terms = vec![(vec![1, 0, 0], b(1)), (vec![0, 0, 0], b(-1))];
        let ap = c.apply(&terms);
        for x in -3..3 {
            for y in -3..3 {
                for z in -3..3 {
                    let v = [x, y, z];
                    assert_eq!(tr.value(&v), c.value(&[x - a[0], y - a[1], z - a[2]]));
                    assert_eq!(mi.value(&v), c.value(&[x, -y, z]));
                    assert_eq!(ap.value(&v), c.value(&[x - 1, y, z]) - c.value(&v));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_complement() {
        assert!(FiberPeriodicConfig::new(&[1, 0], Some(&[1, 1])).is_ok());
        assert!(FiberPeriodicConfig::new(&[1, 0], Some(&[0, 2])).is_err());
        assert!(FiberPeriodicConfig::new(&[0, 0], None).is_err());
    }
}
