//! Finite boxes of `Z^d` and finite shapes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lpoly::ExponentVector;

/// Axis-aligned box with inclusive bounds `lo[i] ..= hi[i]`.
///
/// Points are enumerated in row-major (C) order: the first coordinate varies
/// slowest, the last fastest.  Window dumps use the same layout.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Region {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

impl Region {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch { expected: lo.len(), got: hi.len() });
        }
        if lo.is_empty() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Empty("region"));
        }
        Ok(Region { lo, hi })
    }

    /// `[a, b]^d`.
    pub fn cube(dim: usize, a: i64, b: i64) -> Result<Self> {
        Self::new(vec![a; dim], vec![b; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn extents(&self) -> Vec<usize> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| (b - a + 1) as usize).collect()
    }

    pub fn len(&self) -> usize {
        self.extents().iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        v.len() == self.dim() && v.iter().zip(self.lo.iter().zip(&self.hi)).all(|(x, (a, b))| a <= x && x <= b)
    }

    /// Row-major offset of a point inside the box.
    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        if !self.contains(v) {
            return None;
        }
        let mut idx = 0usize;
        for (i, e) in self.extents().iter().enumerate() {
            idx = idx * e + (v[i] - self.lo[i]) as usize;
        }
        Some(idx)
    }

    /// Row-major strides: moving one step along axis `i` moves the index by
    /// `strides()[i]`.
    pub fn strides(&self) -> Vec<i64> {
        let ext = self.extents();
        let mut st = vec![1i64; ext.len()];
        for i in (0..ext.len().saturating_sub(1)).rev() {
            st[i] = st[i + 1] * ext[i + 1] as i64;
        }
        st
    }

    pub fn point_at(&self, mut idx: usize) -> Vec<i64> {
        let ext = self.extents();
        let mut v = vec![0i64; ext.len()];
        for i in (0..ext.len()).rev() {
            v[i] = self.lo[i] + (idx % ext[i]) as i64;
            idx /= ext[i];
        }
        v
    }

    pub fn iter(&self) -> RegionIter<'_> {
        RegionIter { region: self, next: Some(self.lo.clone()) }
    }

    /// Box grown by `below` at the low end and `above` at the high end.
    /// Negative margins shrink; `None` if the result is empty.
    pub fn grow(&self, below: &[i64], above: &[i64]) -> Option<Region> {
        let lo = self.lo.iter().zip(below).map(|(a, m)| a - m).collect();
        let hi = self.hi.iter().zip(above).map(|(b, m)| b + m).collect();
        Region::new(lo, hi).ok()
    }

    /// Anchors `v` with `v + shape` inside the box.
    pub fn anchors_for(&self, shape: &Shape) -> Option<Region> {
        let (smin, smax) = shape.range();
        let lo = self.lo.iter().zip(&smin).map(|(a, m)| a - m).collect();
        let hi = self.hi.iter().zip(&smax).map(|(b, m)| b - m).collect();
        Region::new(lo, hi).ok()
    }

    /// Anchors `v` with `v - supp` inside the box, for a support given by its
    /// per-coordinate range.
    pub fn shrink_by_support(&self, smin: &[i64], smax: &[i64]) -> Option<Region> {
        let lo = self.lo.iter().zip(smax).map(|(a, m)| a + m).collect();
        let hi = self.hi.iter().zip(smin).map(|(b, m)| b + m).collect();
        Region::new(lo, hi).ok()
    }

    pub fn is_subset_of(&self, other: &Region) -> bool {
        self.dim() == other.dim() && (0..self.dim()).all(|i| other.lo[i] <= self.lo[i] && self.hi[i] <= other.hi[i])
    }

    /// Parses `a..b` (broadcast to `dim` axes) or `a..b,c..d,...`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        let mut lo = Vec::new();
        let mut hi = Vec::new();
        for part in &parts {
            let (a, b) =
                part.split_once("..").ok_or_else(|| Error::Invalid(format!("bad range `{part}`, expected a..b")))?;
            let a: i64 = a.trim().parse().map_err(|_| Error::Invalid(format!("bad bound `{a}`")))?;
            let b: i64 = b.trim().parse().map_err(|_| Error::Invalid(format!("bad bound `{b}`")))?;
            lo.push(a);
            hi.push(b);
        }
        if lo.len() == 1 && dim > 1 {
            lo = vec![lo[0]; dim];
            hi = vec![hi[0]; dim];
        }
        if lo.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: lo.len() });
        }
        Region::new(lo, hi)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}..{}", self.lo[i], self.hi[i])?;
        }
        Ok(())
    }
}

pub struct RegionIter<'a> {
    region: &'a Region,
    next: Option<Vec<i64>>,
}

impl Iterator for RegionIter<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let cur = self.next.take()?;
        let mut nxt = cur.clone();
        let mut axis = nxt.len();
        while axis > 0 {
            axis -= 1;
            if nxt[axis] < self.region.hi[axis] {
                nxt[axis] += 1;
                self.next = Some(nxt);
                return Some(cur);
            }
            nxt[axis] = self.region.lo[axis];
        }
        Some(cur)
    }
}

/// A finite nonempty set of offsets, kept sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<ExponentVector>", into = "Vec<ExponentVector>")]
pub struct Shape {
    points: Vec<ExponentVector>,
}

impl Shape {
    pub fn new(mut points: Vec<ExponentVector>) -> Result<Self> {
        points.sort();
        points.dedup();
        let first = points.first().ok_or(Error::Empty("shape"))?;
        let d = first.dim();
        if d == 0 {
            return Err(Error::Empty("shape dimension"));
        }
        if let Some(bad) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::DimensionMismatch { expected: d, got: bad.dim() });
        }
        Ok(Shape { points })
    }

    /// Every point of a box, e.g. `[0,m) x [0,n)`.
    pub fn from_region(r: &Region) -> Shape {
        Shape { points: r.iter().map(ExponentVector).collect() }
    }

    /// The `m x n` rectangle `[0,m) x [0,n)`.
    pub fn rect(m: usize, n: usize) -> Result<Shape> {
        if m == 0 || n == 0 {
            return Err(Error::Empty("rectangle"));
        }
        Ok(Self::from_region(&Region::new(vec![0, 0], vec![m as i64 - 1, n as i64 - 1])?))
    }

    /// The cube `[0,n)^d`.
    pub fn cube(dim: usize, n: usize) -> Result<Shape> {
        if n == 0 {
            return Err(Error::Empty("cube"));
        }
        Ok(Self::from_region(&Region::cube(dim, 0, n as i64 - 1)?))
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn points(&self) -> &[ExponentVector] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Per-coordinate `(min, max)`.
    pub fn range(&self) -> (Vec<i64>, Vec<i64>) {
        let d = self.dim();
        let mut lo = self.points[0].0.clone();
        let mut hi = lo.clone();
        for p in &self.points {
            for i in 0..d {
                lo[i] = lo[i].min(p.0[i]);
                hi[i] = hi[i].max(p.0[i]);
            }
        }
        (lo, hi)
    }

    pub fn negated(&self) -> Shape {
        let mut points: Vec<ExponentVector> = self.points.iter().map(|p| -p).collect();
        points.sort();
        Shape { points }
    }
}

impl TryFrom<Vec<ExponentVector>> for Shape {
    type Error = Error;
    fn try_from(v: Vec<ExponentVector>) -> Result<Self> {
        Shape::new(v)
    }
}

impl From<Shape> for Vec<ExponentVector> {
    fn from(s: Shape) -> Self {
        s.points
    }
}

impl FromStr for Region {
    type Err = Error;
    /// Parses a fully explicit `a..b,c..d` form; use [`Region::parse`] to broadcast.
    fn from_str(s: &str) -> Result<Self> {
        let dim = s.split(',').count();
        Region::parse(s, dim)
    }
}
