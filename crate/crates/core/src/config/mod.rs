//! Configurations: integer-valued functions on `Z^d`, represented as
//! immutable oracle graphs.
//!
//! Leaves are concrete finite descriptions (constant, lattice-periodic,
//! fiber-periodic, Beatty floors, or a user oracle); inner nodes are
//! pointwise combinators.  Each node knows which of three exactness classes
//! it belongs to, which decides whether global claims about it can be
//! certified from finitely many evaluations.

mod beatty;
pub mod descriptor;
mod fiber;
mod periodic;
mod structure;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lpoly::{ExponentVector, LaurentPoly};
use crate::region::{Region, Shape};

pub use beatty::{beatty_floor, BeattyConfig, QuadraticIrrational};
pub use fiber::{FiberKey, FiberPeriodicConfig, TwoSidedSeq};
pub use periodic::FullPeriodicConfig;
pub use structure::Structure;
pub(crate) use structure::{decide_zero, exact_patterns, ZeroDecision};

/// How much of a configuration can be certified from finite data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ExactnessClass {
    /// Only window evidence is available.
    OracleOnly,
    /// A finite sum of one-periodic pieces with finitely described fibers.
    FiberPeriodicFinite,
    /// Invariant under a full-rank lattice.
    FullLatticePeriodic,
}

impl fmt::Display for ExactnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ExactnessClass::OracleOnly => "OracleOnly",
            ExactnessClass::FiberPeriodicFinite => "FiberPeriodicFinite",
            ExactnessClass::FullLatticePeriodic => "FullLatticePeriodic",
        };
        f.write_str(s)
    }
}

/// A user-supplied coefficient function.  Must be deterministic.
pub trait CoefficientOracle: Send + Sync + fmt::Debug {
    fn dim(&self) -> usize;
    fn value(&self, v: &[i64]) -> BigInt;
    /// A finite set containing every value, if known.
    fn alphabet(&self) -> Option<BTreeSet<BigInt>> {
        None
    }
    fn name(&self) -> String {
        "oracle".into()
    }
}

#[derive(Debug)]
enum Kind {
    Constant(BigInt),
    FullPeriodic(FullPeriodicConfig),
    FiberPeriodic(FiberPeriodicConfig),
    Beatty(BeattyConfig),
    Sum(Vec<Configuration>),
    Scale(BigInt, Configuration),
    Translate(Vec<i64>, Configuration),
    Mirror(usize, Configuration),
    PolyApply { poly: LaurentPoly, terms: Vec<(Vec<i64>, BigInt)>, child: Configuration },
    Binarize(BTreeSet<BigInt>, Configuration),
    Declared(BTreeSet<BigInt>, Configuration),
    CosetMask { moduli: Vec<i64>, keep: BTreeSet<Vec<i64>>, child: Configuration },
    Oracle(Arc<dyn CoefficientOracle>),
}

#[derive(Debug)]
struct Node {
    dim: usize,
    kind: Kind,
    structure: OnceLock<Structure>,
}

/// A configuration over `Z^d`.  Cheap to clone; immutable.
#[derive(Clone, Debug)]
pub struct Configuration(Arc<Node>);

/// Dense values of a configuration on a box, in the box's row-major order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub region: Region,
    #[serde(serialize_with = "crate::serde_big::ser_vec")]
    pub values: Vec<BigInt>,
}

impl Window {
    pub fn get(&self, v: &[i64]) -> Option<&BigInt> {
        self.region.index_of(v).map(|i| &self.values[i])
    }

    pub fn min_max(&self) -> (BigInt, BigInt) {
        let lo = self.values.iter().min().cloned().unwrap_or_default();
        let hi = self.values.iter().max().cloned().unwrap_or_default();
        (lo, hi)
    }
}

const ALPHABET_CAP: usize = 4096;

fn sumset(a: &BTreeSet<BigInt>, b: &BTreeSet<BigInt>) -> Option<BTreeSet<BigInt>> {
    if a.len() * b.len() > ALPHABET_CAP * 16 {
        return None;
    }
    let out: BTreeSet<BigInt> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    (out.len() <= ALPHABET_CAP).then_some(out)
}

impl Configuration {
    fn node(dim: usize, kind: Kind) -> Self {
        Configuration(Arc::new(Node { dim, kind, structure: OnceLock::new() }))
    }

    pub fn constant(dim: usize, k: impl Into<BigInt>) -> Self {
        Self::node(dim, Kind::Constant(k.into()))
    }

    pub fn zero(dim: usize) -> Self {
        Self::constant(dim, 0)
    }

    pub fn full_periodic(c: FullPeriodicConfig) -> Self {
        Self::node(c.dim(), Kind::FullPeriodic(c))
    }

    pub fn fiber_periodic(c: FiberPeriodicConfig) -> Self {
        Self::node(c.dim(), Kind::FiberPeriodic(c))
    }

    pub fn beatty(c: BeattyConfig) -> Self {
        Self::node(c.weights.len(), Kind::Beatty(c))
    }

    pub fn from_oracle(o: Arc<dyn CoefficientOracle>) -> Self {
        Self::node(o.dim(), Kind::Oracle(o))
    }

    pub(crate) fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim() != d {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: d });
        }
        Ok(())
    }

    pub fn sum(children: Vec<Configuration>) -> Result<Self> {
        let first = children.first().ok_or(Error::Empty("sum"))?;
        let d = first.dim();
        for c in &children {
            c.check_dim(d).map_err(|_| Error::DimensionMismatch { expected: d, got: c.dim() })?;
        }
        Ok(Self::node(d, Kind::Sum(children)))
    }

    pub fn add(&self, other: &Configuration) -> Result<Self> {
        Self::sum(vec![self.clone(), other.clone()])
    }

    pub fn sub(&self, other: &Configuration) -> Result<Self> {
        Self::sum(vec![self.clone(), other.scale(-1)])
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        Self::node(self.dim(), Kind::Scale(k.into(), self.clone()))
    }

    /// The configuration whose value at `w` is this one's value at `w - v`.
    pub fn translate(&self, v: &ExponentVector) -> Result<Self> {
        self.check_dim(v.dim())?;
        Ok(Self::node(self.dim(), Kind::Translate(v.0.clone(), self.clone())))
    }

    /// The configuration with coordinate `axis` negated.
    pub fn mirror(&self, axis: usize) -> Result<Self> {
        if axis >= self.dim() {
            return Err(Error::Invalid(format!("axis {axis} out of range for dimension {}", self.dim())));
        }
        Ok(Self::node(self.dim(), Kind::Mirror(axis, self.clone())))
    }

    /// The formal product `f c`, with `(fc)_v = sum_u f_u c_{v-u}`.
    pub fn poly_apply(&self, f: &LaurentPoly) -> Result<Self> {
        self.check_dim(f.dim())?;
        let terms = f.integer_terms().ok_or(Error::NonInteger)?.into_iter().map(|(v, c)| (v.0, c)).collect();
        Ok(Self::node(self.dim(), Kind::PolyApply { poly: f.clone(), terms, child: self.clone() }))
    }

    /// 1 where the value lies in `ones`, else 0.
    pub fn binarize(&self, ones: BTreeSet<BigInt>) -> Result<Self> {
        if self.alphabet().is_none() {
            return Err(Error::NoAlphabet);
        }
        Ok(Self::node(self.dim(), Kind::Binarize(ones, self.clone())))
    }

    /// Declares a finite set containing every value.  Queries through
    /// [`Configuration::coefficient`] and [`Configuration::window`] check it.
    pub fn with_alphabet(&self, alphabet: BTreeSet<BigInt>) -> Self {
        Self::node(self.dim(), Kind::Declared(alphabet, self.clone()))
    }

    /// Keeps the values on the cosets of `prod moduli_i Z` listed in `keep`
    /// (as residues in `[0, moduli_i)`), and zeroes the rest.
    pub fn coset_mask(&self, moduli: Vec<i64>, keep: BTreeSet<Vec<i64>>) -> Result<Self> {
        self.check_dim(moduli.len())?;
        if moduli.iter().any(|&m| m <= 0) {
            return Err(Error::Invalid("moduli must be positive".into()));
        }
        Ok(Self::node(self.dim(), Kind::CosetMask { moduli, keep, child: self.clone() }))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn structure(&self) -> &Structure {
        self.0.structure.get_or_init(|| structure::compute(self))
    }

    pub fn exactness_class(&self) -> ExactnessClass {
        self.structure().class()
    }

    /// A finite set containing every value, when one is known.
    pub fn alphabet(&self) -> Option<BTreeSet<BigInt>> {
        match &self.0.kind {
            Kind::Constant(k) => Some([k.clone()].into()),
            Kind::FullPeriodic(p) => Some(p.values()),
            Kind::FiberPeriodic(p) => Some(p.values()),
            Kind::Beatty(_) => None,
            Kind::Sum(ch) => {
                let mut acc: BTreeSet<BigInt> = [BigInt::zero()].into();
                for c in ch {
                    acc = sumset(&acc, &c.alphabet()?)?;
                }
                Some(acc)
            }
            Kind::Scale(k, c) => Some(c.alphabet()?.iter().map(|x| x * k).collect()),
            Kind::Translate(_, c) | Kind::Mirror(_, c) => c.alphabet(),
            Kind::PolyApply { terms, child, .. } => {
                let a = child.alphabet()?;
                let mut acc: BTreeSet<BigInt> = [BigInt::zero()].into();
                for (_, coef) in terms {
                    let scaled: BTreeSet<BigInt> = a.iter().map(|x| x * coef).collect();
                    acc = sumset(&acc, &scaled)?;
                }
                Some(acc)
            }
            Kind::Binarize(..) => Some([BigInt::zero(), BigInt::one()].into()),
            Kind::Declared(a, _) => Some(a.clone()),
            Kind::CosetMask { child, .. } => {
                let mut a = child.alphabet()?;
                a.insert(BigInt::zero());
                Some(a)
            }
            Kind::Oracle(o) => o.alphabet(),
        }
    }

    /// Value at `v` without dimension or alphabet checks.
    pub fn value(&self, v: &[i64]) -> BigInt {
        match &self.0.kind {
            Kind::Constant(k) => k.clone(),
            Kind::FullPeriodic(p) => p.value(v),
            Kind::FiberPeriodic(p) => p.value(v),
            Kind::Beatty(b) => b.value(v),
            Kind::Sum(ch) => ch.iter().map(|c| c.value(v)).sum(),
            Kind::Scale(k, c) => {
                if k.is_zero() {
                    BigInt::zero()
                } else {
                    k * c.value(v)
                }
            }
            Kind::Translate(a, c) => {
                let w: Vec<i64> = v.iter().zip(a).map(|(x, y)| x - y).collect();
                c.value(&w)
            }
            Kind::Mirror(axis, c) => {
                let mut w = v.to_vec();
                w[*axis] = -w[*axis];
                c.value(&w)
            }
            Kind::PolyApply { terms, child, .. } => {
                let mut acc = BigInt::zero();
                let mut w = vec![0i64; v.len()];
                for (u, coef) in terms {
                    for i in 0..v.len() {
                        w[i] = v[i] - u[i];
                    }
                    acc += coef * child.value(&w);
                }
                acc
            }
            Kind::Binarize(ones, c) => {
                if ones.contains(&c.value(v)) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Kind::Declared(_, c) => c.value(v),
            Kind::CosetMask { moduli, keep, child } => {
                let r: Vec<i64> = v.iter().zip(moduli).map(|(x, m)| x.rem_euclid(*m)).collect();
                if keep.contains(&r) {
                    child.value(v)
                } else {
                    BigInt::zero()
                }
            }
            Kind::Oracle(o) => o.value(v),
        }
    }

    fn declared(&self) -> Option<&BTreeSet<BigInt>> {
        match &self.0.kind {
            Kind::Declared(a, _) => Some(a),
            _ => None,
        }
    }

    fn checked(&self, v: &[i64], x: BigInt) -> Result<BigInt> {
        if let Some(a) = self.declared() {
            if !a.contains(&x) {
                return Err(Error::Inconsistent(format!(
                    "value {x} at {} is outside the declared alphabet",
                    ExponentVector::from(v)
                )));
            }
        }
        Ok(x)
    }

    pub fn coefficient(&self, v: &ExponentVector) -> Result<BigInt> {
        self.check_dim(v.dim())?;
        self.checked(&v.0, self.value(&v.0))
    }

    /// Values on a box in row-major order.
    pub fn window(&self, region: &Region) -> Result<Window> {
        self.check_dim(region.dim())?;
        let mut values = Vec::with_capacity(region.len());
        for p in region.iter() {
            let x = self.value(&p);
            values.push(self.checked(&p, x)?);
        }
        Ok(Window { region: region.clone(), values })
    }

    /// Values at `v + u` for `u` in the shape, in the shape's order.
    pub fn pattern(&self, v: &ExponentVector, shape: &Shape) -> Result<Vec<BigInt>> {
        self.check_dim(v.dim())?;
        self.check_dim(shape.dim())?;
        shape.points().iter().map(|u| self.coefficient(&(v + u))).collect()
    }

    /// A short description of the oracle graph.
    pub fn describe(&self) -> String {
        match &self.0.kind {
            Kind::Constant(k) => format!("constant({k})"),
            Kind::FullPeriodic(p) => format!("full_periodic(index {})", p.hermite().index()),
            Kind::FiberPeriodic(p) => {
                format!("fiber_periodic(period {}, {} fibers)", ExponentVector::from(p.period()), p.fibers().len())
            }
            Kind::Beatty(b) => format!(
                "beatty(({} + {}*sqrt({}))/{}, w = {})",
                b.alpha.p,
                b.alpha.s,
                b.alpha.q,
                b.alpha.r,
                ExponentVector::from(b.weights.as_slice())
            ),
            Kind::Sum(ch) => {
                let parts: Vec<String> = ch.iter().map(|c| c.describe()).collect();
                format!("sum({})", parts.join(", "))
            }
            Kind::Scale(k, c) => format!("scale({k}, {})", c.describe()),
            Kind::Translate(v, c) => format!("translate({}, {})", ExponentVector::from(v.as_slice()), c.describe()),
            Kind::Mirror(a, c) => format!("mirror({a}, {})", c.describe()),
            Kind::PolyApply { poly, child, .. } => format!("apply({poly}, {})", child.describe()),
            Kind::Binarize(ones, c) => {
                format!("binarize({:?}, {})", ones.iter().map(|x| x.to_string()).collect::<Vec<_>>(), c.describe())
            }
            Kind::Declared(a, c) => {
                format!("alphabet({:?}, {})", a.iter().map(|x| x.to_string()).collect::<Vec<_>>(), c.describe())
            }
            Kind::CosetMask { moduli, keep, child } => {
                format!("coset_mask({:?}, {} cosets, {})", moduli, keep.len(), child.describe())
            }
            Kind::Oracle(o) => o.name(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector(v.to_vec())
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn stripes() -> Configuration {
        let p = FullPeriodicConfig::from_fn(vec![vec![3, 0], vec![0, 1]], |v| b(v[0].rem_euclid(3))).unwrap();
        Configuration::full_periodic(p)
    }

    #[test]
    fn combinators_are_pointwise() {
        let c = stripes();
        let z = c.add(&c.scale(-1)).unwrap();
        let t = c.translate(&ev(&[2, 5])).unwrap();
        let back = t.translate(&ev(&[-2, -5])).unwrap();
        let m = c.mirror(0).unwrap();
        for x in -4..4 {
            for y in -4..4 {
                assert_eq!(z.value(&[x, y]), b(0));
                assert_eq!(t.value(&[x, y]), c.value(&[x - 2, y - 5]));
                assert_eq!(back.value(&[x, y]), c.value(&[x, y]));
                assert_eq!(m.value(&[x, y]), c.value(&[-x, y]));
            }
        }
    }

    #[test]
    fn poly_apply_identity_and_period() {
        let c = stripes();
        let one = LaurentPoly::one(2);
        let id = c.poly_apply(&one).unwrap();
        let per = c.poly_apply(&LaurentPoly::parse("y - 1", 2).unwrap()).unwrap();
        for x in -4..4 {
            for y in -4..4 {
                assert_eq!(id.value(&[x, y]), c.value(&[x, y]));
                assert_eq!(per.value(&[x, y]), b(0));
            }
        }
        assert!(c.poly_apply(&LaurentPoly::parse("x/2", 2).unwrap()).is_err());
        assert!(c.poly_apply(&LaurentPoly::parse("x", 3).unwrap()).is_err());
    }

    #[test]
    fn window_is_row_major() {
        let c = stripes();
        let r = Region::new(vec![0, 0], vec![2, 1]).unwrap();
        let w = c.window(&r).unwrap();
        assert_eq!(w.values, vec![b(0), b(0), b(1), b(1), b(2), b(2)]);
        let one = Region::new(vec![0, 0], vec![0, 0]).unwrap();
        assert_eq!(c.window(&one).unwrap().values, vec![c.value(&[0, 0])]);
    }

    #[test]
    fn binarize_needs_alphabet() {
        let c = stripes();
        let all = c.binarize(c.alphabet().unwrap()).unwrap();
        let none = c.binarize(BTreeSet::new()).unwrap();
        for x in -3..3 {
            assert_eq!(all.value(&[x, 0]), b(1));
            assert_eq!(none.value(&[x, 0]), b(0));
        }
        let beatty = Configuration::beatty(BeattyConfig::new(QuadraticIrrational::golden(), vec![1, 0]).unwrap());
        assert_eq!(beatty.binarize(BTreeSet::new()).unwrap_err(), Error::NoAlphabet);
    }

    #[test]
    fn declared_alphabet_is_enforced() {
        let c = stripes().with_alphabet([b(0), b(1)].into());
        assert!(c.coefficient(&ev(&[1, 0])).is_ok());
        assert!(matches!(c.coefficient(&ev(&[2, 0])), Err(Error::Inconsistent(_))));
        assert!(matches!(c.coefficient(&ev(&[2, 0, 0])), Err(Error::DimensionMismatch { .. })));
    }
}
