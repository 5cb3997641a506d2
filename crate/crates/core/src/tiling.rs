//! Cluster tiles and their lattice-periodic co-tilers.
//!
//! A finite `D` tiles `Z^d` with translation set `C` when every point is
//! covered exactly once by the translates `D + c`, `c` in `C`; equivalently
//! `f c = 1` for `f = sum_{v in D} X^v` and `c` the indicator of `C`.  Here
//! `C` is always lattice-periodic, so every verdict is exact.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::annihilate::{verify_annihilator, AnnihilationVerdict};
use crate::config::{Configuration, FullPeriodicConfig};
use crate::error::{Error, Result};
use crate::lattice;
use crate::lpoly::{ExponentVector, LaurentPoly};
use crate::region::{Region, Shape};

/// A finite nonempty set of cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ClusterTile(Shape);

impl ClusterTile {
    pub fn new(cells: Vec<ExponentVector>) -> Result<Self> {
        Ok(ClusterTile(Shape::new(cells)?))
    }

    pub fn from_shape(shape: Shape) -> Self {
        ClusterTile(shape)
    }

    pub fn cells(&self) -> &[ExponentVector] {
        self.0.points()
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn negated(&self) -> ClusterTile {
        ClusterTile(self.0.negated())
    }

    /// `sum_{v in D} X^v`.
    pub fn polynomial(&self) -> LaurentPoly {
        let terms: Vec<(ExponentVector, num_rational::BigRational)> =
            self.cells().iter().map(|v| (v.clone(), num_rational::BigRational::one())).collect();
        LaurentPoly::from_terms(self.dim(), terms).expect("cells share the dimension")
    }
}

/// Indicator of a lattice-periodic set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoTilerSet(FullPeriodicConfig);

impl CoTilerSet {
    pub fn new(set: FullPeriodicConfig) -> Result<Self> {
        if !set.is_binary() {
            return Err(Error::Invalid("co-tiler indicator must take values in {0, 1}".into()));
        }
        Ok(CoTilerSet(set))
    }

    /// The lattice spanned by `basis` itself.
    pub fn lattice(basis: Vec<Vec<i64>>) -> Result<Self> {
        let d = basis.first().map_or(0, |b| b.len());
        Self::new(FullPeriodicConfig::indicator(basis, &[vec![0; d]])?)
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.0.value(v).is_one()
    }

    pub fn periodic(&self) -> &FullPeriodicConfig {
        &self.0
    }

    pub fn configuration(&self) -> Configuration {
        Configuration::full_periodic(self.0.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum TilingVerdict {
    /// Every point is covered exactly once.
    ProvenConstantOne {
        domain: String,
    },
    CoverMismatch {
        position: ExponentVector,
        count: usize,
    },
}

impl TilingVerdict {
    pub fn is_tiling(&self) -> bool {
        matches!(self, TilingVerdict::ProvenConstantOne { .. })
    }
}

fn check_dims(d: &ClusterTile, c: &CoTilerSet) -> Result<()> {
    if d.dim() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: d.dim() });
    }
    Ok(())
}

fn cover_count(d: &ClusterTile, c: &CoTilerSet, w: &[i64]) -> usize {
    d.cells().iter().filter(|v| c.contains(&lattice::sub(w, &v.0))).count()
}

/// Checks `D + C = Z^d` as a disjoint union by counting covers on one
/// representative of each coset of the period lattice of `C`.
pub fn is_cotiler(d: &ClusterTile, c: &CoTilerSet) -> Result<TilingVerdict> {
    check_dims(d, c)?;
    let reps = c.periodic().representatives();
    for w in &reps {
        let count = cover_count(d, c, w);
        if count != 1 {
            return Ok(TilingVerdict::CoverMismatch { position: ExponentVector(w.clone()), count });
        }
    }
    Ok(TilingVerdict::ProvenConstantOne { domain: format!("{} coset representatives", reps.len()) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    /// Largest `|f c - 1|` over the period box.
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub max_deviation: BigInt,
    pub witness: Option<ExponentVector>,
    pub points_checked: usize,
}

/// Recomputes `f c` through the configuration layer on the whole axis
/// period box of `C` and reports the largest deviation from 1.
pub fn tiling_identity_check(d: &ClusterTile, c: &CoTilerSet) -> Result<IdentityReport> {
    check_dims(d, c)?;
    let fc = c.configuration().poly_apply(&d.polynomial())?;
    let periods = c.periodic().axis_periods();
    let region = Region::new(vec![0; periods.len()], periods.iter().map(|p| p - 1).collect())?;
    let mut max_deviation = BigInt::zero();
    let mut witness = None;
    for w in region.iter() {
        let dev = (fc.value(&w) - BigInt::one()).abs();
        if dev > max_deviation {
            max_deviation = dev;
            witness = Some(ExponentVector(w));
        }
    }
    Ok(IdentityReport { max_deviation, witness, points_checked: region.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodCheck {
    pub u: ExponentVector,
    pub v: ExponentVector,
    /// `p (v - u)`.
    pub period: ExponentVector,
    pub verdict: AnnihilationVerdict,
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| !p.is_multiple_of(k))
}

/// For a tile of prime size `p`, verifies that `C` is `p (v - u)`-periodic
/// for every ordered pair of distinct cells.
pub fn prime_periodicity_check(d: &ClusterTile, c: &CoTilerSet) -> Result<Vec<PeriodCheck>> {
    check_dims(d, c)?;
    let p = d.len();
    if !is_prime(p) {
        return Err(Error::NotPrime(p as u64));
    }
    if let TilingVerdict::CoverMismatch { position, count } = is_cotiler(d, c)? {
        return Err(Error::Invalid(format!("not a co-tiler: {position} is covered {count} times")));
    }
    let config = c.configuration();
    let region = Region::cube(d.dim(), 0, 0)?;
    let mut out = Vec::new();
    for u in d.cells() {
        for v in d.cells() {
            if u == v {
                continue;
            }
            let period = (v - u).scaled(p as i64);
            let verdict = verify_annihilator(&LaurentPoly::difference(&period)?, &config, &region)?;
            if !verdict.is_proven() {
                return Err(Error::Inconsistent(format!("co-tiler is not {period}-periodic: {verdict:?}")));
            }
            out.push(PeriodCheck { u: u.clone(), v: v.clone(), period, verdict });
        }
    }
    Ok(out)
}
