//! Splitting a configuration into periodic components.
//!
//! The basic step is discrete integration: given a line polynomial `f` and
//! a configuration `c` annihilated by a line polynomial `g` in another
//! direction, build `c'` with `f c' = c` that `g` still annihilates.
//! Components are lazy oracles; their values can grow without bound.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::annihilate::{verify_annihilator, AnnihilationVerdict};
use crate::config::{CoefficientOracle, Configuration};
use crate::error::{Error, Result};
use crate::lattice::{self, PlaneLattice};
use crate::lpoly::{Direction, LaurentPoly, LineInfo};
use crate::region::Region;

/// Values `c'[a]` along one line `z + a u + b v`, grown outwards from the
/// zero band `0 <= a < n`.
#[derive(Default)]
struct LineValues {
    /// `c'[a]` for `a = 0, 1, ...`.
    forward: Vec<BigInt>,
    /// `c'[-1 - i]` for `i = 0, 1, ...`.
    backward: Vec<BigInt>,
}

/// `c'` with `f c' = c`, solved coset by coset.
///
/// Writing `f = X^o sum_k a_k X^{k u}`, the equation at `z + a u + b v`
/// reads `sum_k a_k c'[a - k, b] = c(z + a u + b v + o)`.
struct LineIntegral {
    dim: usize,
    /// `a_0, ..., a_n` as integers; `a_0` and `a_n` are units.
    coefs: Vec<BigInt>,
    offset: Vec<i64>,
    plane: PlaneLattice,
    source: Configuration,
    cache: Mutex<HashMap<(Vec<i64>, i64), LineValues>>,
    label: String,
}

impl std::fmt::Debug for LineIntegral {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.label)
    }
}

impl LineIntegral {
    fn rhs(&self, z: &[i64], a: i64, b: i64) -> BigInt {
        let w = lattice::add(&self.plane.join(z, a, b), &self.offset);
        self.source.value(&w)
    }

    fn degree(&self) -> usize {
        self.coefs.len() - 1
    }

    fn solve(&self, z: &[i64], a: i64, b: i64) -> BigInt {
        let n = self.degree() as i64;
        let mut cache = self.cache.lock().unwrap_or_else(|e| e.into_inner());
        let line = cache
            .entry((z.to_vec(), b))
            .or_insert_with(|| LineValues { forward: vec![BigInt::zero(); n as usize], backward: Vec::new() });
        let get = |line: &LineValues, a: i64| -> BigInt {
            if a >= 0 {
                line.forward[a as usize].clone()
            } else {
                line.backward[(-1 - a) as usize].clone()
            }
        };
        if a >= 0 {
            while (line.forward.len() as i64) <= a {
                let t = line.forward.len() as i64;
                // a_0 c'[t] = rhs(t) - sum_{k>=1} a_k c'[t-k]
                let mut acc = self.rhs(z, t, b);
                for k in 1..=n {
                    acc -= &self.coefs[k as usize] * get(line, t - k);
                }
                line.forward.push(exact_div(acc, &self.coefs[0]));
            }
        } else {
            while (line.backward.len() as i64) < -a {
                let t = -1 - line.backward.len() as i64;
                // a_n c'[t] = rhs(t+n) - sum_{k<n} a_k c'[t+n-k]
                let mut acc = self.rhs(z, t + n, b);
                for k in 0..n {
                    acc -= &self.coefs[k as usize] * get(line, t + n - k);
                }
                line.backward.push(exact_div(acc, &self.coefs[n as usize]));
            }
        }
        get(line, a)
    }
}

fn exact_div(x: BigInt, unit: &BigInt) -> BigInt {
    if unit.is_one() {
        x
    } else {
        debug_assert!(x.is_multiple_of(unit));
        x / unit
    }
}

impl CoefficientOracle for LineIntegral {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, v: &[i64]) -> BigInt {
        let (z, a, b) = self.plane.split(v);
        self.solve(&z, a, b)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

struct LineFactor {
    info: LineInfo,
    coefs: Vec<BigInt>,
}

fn line_factor(f: &LaurentPoly) -> Result<LineFactor> {
    let info = f.line_info().ok_or(Error::NotLine)?;
    let coefs: Vec<BigInt> = info
        .coefficients
        .iter()
        .map(|a| if a.is_integer() { Ok(a.to_integer()) } else { Err(Error::NonInteger) })
        .collect::<Result<_>>()?;
    let unit = |x: &BigInt| x.abs().is_one();
    if !unit(&coefs[0]) || !unit(&coefs[info.degree]) {
        return Err(Error::Invalid(format!(
            "line polynomial {f} needs leading and trailing coefficients +-1 for an integral solution"
        )));
    }
    Ok(LineFactor { info, coefs })
}

fn integrate_unchecked(f: &LineFactor, c: &Configuration, g: &LineInfo) -> Result<Configuration> {
    let u = f.info.direction.vector().coords();
    let v = g.direction.vector().coords();
    let plane = PlaneLattice::new(u, v)
        .ok_or_else(|| Error::Invalid("integration needs line polynomials in distinct directions".into()))?;
    let label = format!("integral along {} over {}", f.info.direction, c.describe());
    Ok(Configuration::from_oracle(Arc::new(LineIntegral {
        dim: c.dim(),
        coefs: f.coefs.clone(),
        offset: f.info.offset.0.clone(),
        plane,
        source: c.clone(),
        cache: Mutex::new(HashMap::new()),
        label,
    })))
}

/// A configuration `c'` with `f c' = c` and `g c' = 0`, for line
/// polynomials `f`, `g` in distinct directions with `g c = 0`.
///
/// On each coset `z + Z u + Z v` (`u`, `v` the primitive directions of `f`
/// and `g`, `z` the canonical coset representative), `c'` vanishes on the
/// band `0 <= a < deg f` and the rest follows from the recurrence.  The
/// precondition `g c = 0` is checked with [`verify_annihilator`] on
/// `region`.  Integral solutions need `f` to have unit coefficients at both
/// ends, which holds for every `X^w - 1`.
pub fn discrete_integrate(
    f: &LaurentPoly,
    c: &Configuration,
    g: &LaurentPoly,
    region: &Region,
) -> Result<Configuration> {
    c.check_dim(f.dim())?;
    c.check_dim(g.dim())?;
    let lf = line_factor(f)?;
    let gi = g.line_info().ok_or(Error::NotLine)?;
    if gi.direction == lf.info.direction {
        return Err(Error::Invalid("integration needs line polynomials in distinct directions".into()));
    }
    if let AnnihilationVerdict::NonzeroAt { position, value } = verify_annihilator(g, c, region)? {
        return Err(Error::Invalid(format!("{g} does not annihilate the configuration: value {value} at {position}")));
    }
    integrate_unchecked(&lf, c, &gi)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionEvidence {
    pub region: Region,
    /// Largest `|c - sum c_i|` on the region; zero when the round trip holds.
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub residual_max_abs: BigInt,
    /// `f_i c_i` on the region shrunk by the support of `f_i`.
    pub verdicts: Vec<AnnihilationVerdict>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub factors: Vec<LaurentPoly>,
    pub directions: Vec<Direction>,
    #[serde(skip)]
    pub components: Vec<Configuration>,
    pub evidence: DecompositionEvidence,
}

impl Decomposition {
    /// True when the sum matches and every component is annihilated by its
    /// factor on the evidence windows.
    pub fn is_consistent(&self) -> bool {
        self.evidence.residual_max_abs.is_zero() && self.evidence.verdicts.iter().all(|v| v.is_zero())
    }
}

fn split_rec(c: &Configuration, fs: &[LineFactor]) -> Result<Vec<Configuration>> {
    let (last, rest) = fs.split_last().expect("at least one factor");
    if rest.is_empty() {
        return Ok(vec![c.clone()]);
    }
    let fm = LaurentPoly::from_terms(
        c.dim(),
        last.coefs.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(k, a)| {
            let e = lattice::add(&last.info.offset.0, &lattice::scale(k as i64, last.info.direction.vector().coords()));
            (e.into(), num_rational::BigRational::from_integer(a.clone()))
        }),
    )?;
    let bs = split_rec(&c.poly_apply(&fm)?, rest)?;
    let mut out = Vec::with_capacity(fs.len());
    for (b, fi) in bs.iter().zip(rest) {
        out.push(integrate_unchecked(last, b, &fi.info)?);
    }
    let partial = Configuration::sum(out.clone())?;
    out.push(c.sub(&partial)?);
    Ok(out)
}

/// Writes `c = c_1 + ... + c_m` with `f_i c_i = 0`, for line polynomials in
/// pairwise distinct directions whose product annihilates `c`.
///
/// Factors need integer coefficients with units at both ends.  The
/// evidence is gathered on `region`.
pub fn decompose_by_factors(c: &Configuration, factors: &[LaurentPoly], region: &Region) -> Result<Decomposition> {
    if factors.is_empty() {
        return Err(Error::Empty("factor list"));
    }
    c.check_dim(region.dim())?;
    let mut lfs = Vec::with_capacity(factors.len());
    for f in factors {
        c.check_dim(f.dim())?;
        lfs.push(line_factor(f)?);
    }
    let dirs: BTreeSet<&Direction> = lfs.iter().map(|l| &l.info.direction).collect();
    if dirs.len() != lfs.len() {
        return Err(Error::Invalid("factor directions must be pairwise distinct".into()));
    }
    let product = factors.iter().try_fold(LaurentPoly::one(c.dim()), |acc, f| acc.try_mul(f))?;
    if let AnnihilationVerdict::NonzeroAt { position, value } = verify_annihilator(&product, c, region)? {
        return Err(Error::Invalid(format!(
            "the product of the factors does not annihilate the configuration: value {value} at {position}"
        )));
    }
    let components = split_rec(c, &lfs)?;

    let total = c.window(region)?;
    let mut sum = vec![BigInt::zero(); total.values.len()];
    for comp in &components {
        for (s, x) in sum.iter_mut().zip(comp.window(region)?.values) {
            *s += x;
        }
    }
    let residual_max_abs = total.values.iter().zip(&sum).map(|(a, b)| (a - b).abs()).max().unwrap_or_default();
    let mut verdicts = Vec::with_capacity(components.len());
    for (comp, f) in components.iter().zip(factors) {
        let (lo, hi) = f.support_range()?;
        let inner = region
            .shrink_by_support(&lo, &hi)
            .ok_or_else(|| Error::Invalid("evidence region is smaller than a factor's support".into()))?;
        verdicts.push(verify_annihilator(f, comp, &inner)?);
    }
    Ok(Decomposition {
        factors: factors.to_vec(),
        directions: lfs.into_iter().map(|l| l.info.direction).collect(),
        components,
        evidence: DecompositionEvidence { region: region.clone(), residual_max_abs, verdicts },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CosetPeriodicity {
    /// Periodic under `(m, 0)` only.
    Horizontal,
    /// Periodic under `(0, n)` only.
    Vertical,
    /// Periodic under both on the region; assigned to the first part.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetClass {
    pub residue: [i64; 2],
    pub periodicity: CosetPeriodicity,
}

#[derive(Clone, Debug, Serialize)]
pub struct SublatticeSplit {
    /// The cosets periodic under `(m, 0)`.
    #[serde(skip)]
    pub horizontal: Configuration,
    /// The remaining cosets, periodic under `(0, n)`.
    #[serde(skip)]
    pub vertical: Configuration,
    pub cosets: Vec<CosetClass>,
}

/// Splits a binary configuration annihilated by `(x^m - 1)(y^n - 1)` into
/// disjoint `(m,0)`- and `(0,n)`-periodic parts, coset by coset modulo
/// `<(m,0), (0,n)>`, judging each coset on `region`.
pub fn sublattice_split(c: &Configuration, m: i64, n: i64, region: &Region) -> Result<SublatticeSplit> {
    if c.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: c.dim() });
    }
    c.check_dim(region.dim())?;
    if m < 1 || n < 1 {
        return Err(Error::Invalid("sublattice periods must be positive".into()));
    }
    let win = c.window(region)?;
    if let Some(x) = win.values.iter().find(|x| !x.is_zero() && !x.is_one()) {
        return Err(Error::Invalid(format!("configuration is not binary: value {x}")));
    }
    let f = LaurentPoly::from_int_terms(2, &[(&[m, n], 1), (&[m, 0], -1), (&[0, n], -1), (&[0, 0], 1)])?;
    if let AnnihilationVerdict::NonzeroAt { position, value } = verify_annihilator(&f, c, region)? {
        return Err(Error::Invalid(format!("{f} does not annihilate the configuration: value {value} at {position}")));
    }
    let mut cosets = Vec::new();
    let mut keep_h = BTreeSet::new();
    let mut keep_v = BTreeSet::new();
    for rx in 0..m {
        for ry in 0..n {
            let mut h_ok = true;
            let mut v_ok = true;
            let mut witness = None;
            for p in region.iter() {
                if p[0].rem_euclid(m) != rx || p[1].rem_euclid(n) != ry {
                    continue;
                }
                let x = win.get(&p).expect("inside");
                if let Some(y) = win.get(&[p[0] + m, p[1]]) {
                    if x != y {
                        h_ok = false;
                        witness.get_or_insert(p.clone());
                    }
                }
                if let Some(y) = win.get(&[p[0], p[1] + n]) {
                    if x != y {
                        v_ok = false;
                        witness.get_or_insert(p.clone());
                    }
                }
            }
            let periodicity = match (h_ok, v_ok) {
                (true, true) => CosetPeriodicity::Both,
                (true, false) => CosetPeriodicity::Horizontal,
                (false, true) => CosetPeriodicity::Vertical,
                (false, false) => {
                    return Err(Error::Inconsistent(format!(
                        "coset ({rx},{ry}) is neither ({m},0)- nor (0,{n})-periodic near {}",
                        crate::lpoly::ExponentVector(witness.unwrap_or_default())
                    )))
                }
            };
            if periodicity == CosetPeriodicity::Vertical {
                keep_v.insert(vec![rx, ry]);
            } else {
                keep_h.insert(vec![rx, ry]);
            }
            cosets.push(CosetClass { residue: [rx, ry], periodicity });
        }
    }
    Ok(SublatticeSplit {
        horizontal: c.coset_mask(vec![m, n], keep_h)?,
        vertical: c.coset_mask(vec![m, n], keep_v)?,
        cosets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::config::{FiberPeriodicConfig, FullPeriodicConfig, TwoSidedSeq};

    fn p(s: &str, d: usize) -> LaurentPoly {
        LaurentPoly::parse(s, d).unwrap()
    }

    #[test]
    fn integrate_constant() {
        let r = Region::cube(2, -6, 6).unwrap();
        let one = Configuration::constant(2, 1);
        let c1 = discrete_integrate(&p("x - 1", 2), &one, &p("y - 1", 2), &r).unwrap();
        for q in r.iter() {
            // (x - 1) c' at v is c'(v - e1) - c'(v).
            assert_eq!(c1.value(&q), BigInt::from(-q[0]));
        }
        assert!(verify_annihilator(&p("y - 1", 2), &c1, &r).unwrap().is_zero());
        let zero = discrete_integrate(&p("x - 1", 2), &Configuration::zero(2), &p("y - 1", 2), &r).unwrap();
        assert!(zero.window(&r).unwrap().values.iter().all(|x| x.is_zero()));
        assert!(discrete_integrate(&p("x - 1", 2), &one, &p("x^2 - 1", 2), &r).is_err());
        assert!(discrete_integrate(&p("x - 1", 2), &one, &p("x + y", 2), &r).is_err());
        assert!(discrete_integrate(&p("2*x - 1", 2), &one, &p("y - 1", 2), &r).is_err());
    }

    #[test]
    fn integrate_horizontal_lines() {
        let r = Region::cube(2, -8, 8).unwrap();
        let rows = Configuration::full_periodic(
            FullPeriodicConfig::from_fn(vec![vec![1, 0], vec![0, 3]], |v| BigInt::from(v[1].rem_euclid(3) * 2 - 1))
                .unwrap(),
        );
        let f = p("y^2 - y + 1", 2);
        let c1 = discrete_integrate(&f, &rows, &p("x - 1", 2), &r).unwrap();
        let inner = r.shrink_by_support(&[0, 0], &[0, 2]).unwrap();
        let back = c1.poly_apply(&f).unwrap();
        for q in inner.iter() {
            assert_eq!(back.value(&q), rows.value(&q));
        }
        assert!(verify_annihilator(&p("x - 1", 2), &c1, &r).unwrap().is_zero());
    }

    #[test]
    fn single_factor_is_identity() {
        let r = Region::cube(2, -5, 5).unwrap();
        let c = Configuration::full_periodic(
            FullPeriodicConfig::indicator(vec![vec![2, 0], vec![0, 1]], &[vec![0, 0]]).unwrap(),
        );
        let d = decompose_by_factors(&c, &[p("x^2 - 1", 2)], &r).unwrap();
        assert_eq!(d.components.len(), 1);
        assert!(d.is_consistent());
    }

    #[test]
    fn two_lines_components() {
        let c = builtins::two_lines(3);
        let r = Region::cube(3, -6, 6).unwrap();
        let d = decompose_by_factors(&c, &[p("x - 1", 3), p("z - 1", 3)], &r).unwrap();
        assert!(d.is_consistent());
        assert!(decompose_by_factors(&c, &[p("x - 1", 3)], &r).is_err());
        assert!(decompose_by_factors(&c, &[p("x - 1", 3), p("x^2 - 1", 3)], &r).is_err());
    }

    #[test]
    fn split_stripes_and_crossing_halves() {
        let r = Region::cube(2, -8, 8).unwrap();
        let stripes = Configuration::full_periodic(
            FullPeriodicConfig::indicator(vec![vec![2, 0], vec![0, 1]], &[vec![0, 0]]).unwrap(),
        );
        let s = sublattice_split(&stripes, 2, 1, &r).unwrap();
        assert!(s.vertical.window(&r).unwrap().values.iter().all(|x| x.is_zero()));
        assert_eq!(s.horizontal.window(&r).unwrap(), stripes.window(&r).unwrap());

        // Rows j >= 0, j even, i = 0 mod 4 plus columns i >= 0, i odd, j odd.
        let one = BigInt::from(1);
        let mut a = FiberPeriodicConfig::new(&[4, 0], Some(&[0, 1])).unwrap();
        a.set_fiber(&[0, 0], TwoSidedSeq::new(0, vec![], vec![], vec![one.clone(), BigInt::zero()])).unwrap();
        let mut b = FiberPeriodicConfig::new(&[0, 2], Some(&[1, 0])).unwrap();
        b.set_fiber(&[0, 1], TwoSidedSeq::new(0, vec![], vec![], vec![BigInt::zero(), one])).unwrap();
        let (a, b) = (Configuration::fiber_periodic(a), Configuration::fiber_periodic(b));
        let c = a.add(&b).unwrap();
        let s = sublattice_split(&c, 4, 2, &r).unwrap();
        assert_eq!(s.horizontal.window(&r).unwrap(), a.window(&r).unwrap());
        assert_eq!(s.vertical.window(&r).unwrap(), b.window(&r).unwrap());
    }
}
