//! Annihilating polynomials: search, verification, normalization and
//! difference-product certificates.
//!
//! Verification is tiered.  For configurations with a certified structure
//! the image `f c` is decided everywhere; otherwise the verdict only covers
//! the requested region.

use std::cell::OnceCell;
use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::config::{decide_zero, Configuration, ExactnessClass, Window, ZeroDecision};
use crate::error::{Error, Result};
use crate::lattice;
use crate::lpoly::{Direction, ExponentVector, LaurentPoly};
use crate::region::{Region, Shape};

/// Outcome of checking `f c = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum AnnihilationVerdict {
    /// `f c` vanishes on all of `Z^d`.
    ProvenZero { class: ExactnessClass, domain: String },
    /// `f c` vanishes at every point of the region; nothing is claimed
    /// outside it.
    ZeroOnRegion { region: Region },
    NonzeroAt {
        position: ExponentVector,
        #[serde(serialize_with = "crate::serde_big::ser")]
        value: BigInt,
    },
}

impl AnnihilationVerdict {
    /// True unless a nonzero value was found.
    pub fn is_zero(&self) -> bool {
        !matches!(self, AnnihilationVerdict::NonzeroAt { .. })
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, AnnihilationVerdict::ProvenZero { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            AnnihilationVerdict::ProvenZero { .. } => "ProvenZero",
            AnnihilationVerdict::ZeroOnRegion { .. } => "ZeroOnRegion",
            AnnihilationVerdict::NonzeroAt { .. } => "NonzeroAt",
        }
    }
}

/// Integer terms of the positive primitive multiple of `f`.
fn integral_terms(f: &LaurentPoly) -> Vec<(Vec<i64>, BigInt)> {
    f.clear_denominators().integer_terms().expect("denominators cleared").into_iter().map(|(u, a)| (u.0, a)).collect()
}

/// A materialized window with an `i64` fast path.
pub(crate) struct Dense {
    win: Window,
    strides: Vec<i64>,
    small: Option<Vec<i64>>,
}

impl Dense {
    pub(crate) fn new(win: Window) -> Self {
        let strides = win.region.strides();
        let small = win.values.iter().map(|x| x.to_i64()).collect();
        Dense { win, strides, small }
    }

    pub(crate) fn load(c: &Configuration, region: &Region) -> Result<Self> {
        Ok(Dense::new(c.window(region)?))
    }

    /// Whether `target - supp` lies inside the window.
    pub(crate) fn covers(&self, terms: &[(Vec<i64>, BigInt)], target: &Region) -> bool {
        let d = target.dim();
        let mut lo = vec![0i64; d];
        let mut hi = vec![0i64; d];
        for (k, (u, _)) in terms.iter().enumerate() {
            for i in 0..d {
                if k == 0 || u[i] < lo[i] {
                    lo[i] = u[i];
                }
                if k == 0 || u[i] > hi[i] {
                    hi[i] = u[i];
                }
            }
        }
        target.grow(&hi, &lo.iter().map(|x| -x).collect::<Vec<_>>()).is_some_and(|r| r.is_subset_of(&self.win.region))
    }

    /// First `v` in `target` (row-major) with `sum_u a_u c(v - u) != 0`.
    pub(crate) fn first_nonzero(&self, terms: &[(Vec<i64>, BigInt)], target: &Region) -> Option<(Vec<i64>, BigInt)> {
        let offs: Vec<i64> = terms.iter().map(|(u, _)| u.iter().zip(&self.strides).map(|(a, b)| a * b).sum()).collect();
        let small_coefs: Option<Vec<i64>> = terms.iter().map(|(_, a)| a.to_i64()).collect();
        if let (Some(vals), Some(coefs)) = (&self.small, &small_coefs) {
            let mut overflow = false;
            for v in target.iter() {
                let base = self.win.region.index_of(&v).expect("window covers target") as i64;
                let mut acc = 0i128;
                for (o, a) in offs.iter().zip(coefs) {
                    match acc.checked_add(*a as i128 * vals[(base - o) as usize] as i128) {
                        Some(x) => acc = x,
                        None => {
                            overflow = true;
                            break;
                        }
                    }
                }
                if overflow {
                    break;
                }
                if acc != 0 {
                    return Some((v, BigInt::from(acc)));
                }
            }
            if !overflow {
                return None;
            }
        }
        for v in target.iter() {
            let base = self.win.region.index_of(&v).expect("window covers target") as i64;
            let mut acc = BigInt::zero();
            for (o, (_, a)) in offs.iter().zip(terms) {
                acc += a * &self.win.values[(base - o) as usize];
            }
            if !acc.is_zero() {
                return Some((v, acc));
            }
        }
        None
    }
}

/// Checks many polynomials against one configuration, reusing a single
/// window whose margin covers supports within `margin` of the origin.
pub(crate) struct Verifier<'a> {
    c: &'a Configuration,
    region: &'a Region,
    margin: i64,
    dense: OnceCell<Dense>,
}

impl<'a> Verifier<'a> {
    pub(crate) fn new(c: &'a Configuration, region: &'a Region, margin: i64) -> Result<Self> {
        c.check_dim(region.dim())?;
        Ok(Verifier { c, region, margin: margin.max(0), dense: OnceCell::new() })
    }

    fn dense(&self) -> Result<&Dense> {
        if let Some(d) = self.dense.get() {
            return Ok(d);
        }
        let m = vec![self.margin; self.region.dim()];
        let r = self.region.grow(&m, &m).expect("growing keeps the box nonempty");
        let d = Dense::load(self.c, &r)?;
        Ok(self.dense.get_or_init(|| d))
    }

    pub(crate) fn check(&self, f: &LaurentPoly) -> Result<AnnihilationVerdict> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.c.check_dim(f.dim())?;
        let class = self.c.exactness_class();
        let terms = integral_terms(f);
        if class > ExactnessClass::OracleOnly {
            let g = f.clear_denominators();
            match decide_zero(&self.c.poly_apply(&g)?) {
                ZeroDecision::Zero { domain } => return Ok(AnnihilationVerdict::ProvenZero { class, domain }),
                ZeroDecision::NonzeroAt(p, x) => {
                    return Ok(AnnihilationVerdict::NonzeroAt { position: ExponentVector(p), value: x })
                }
                ZeroDecision::Undecided => {}
            }
        }
        let dense = self.dense()?;
        let hit = if dense.covers(&terms, self.region) {
            dense.first_nonzero(&terms, self.region)
        } else {
            let (lo, hi) = f.support_range()?;
            let r = self.region.grow(&hi, &lo.iter().map(|x| -x).collect::<Vec<_>>()).expect("nonempty");
            Dense::load(self.c, &r)?.first_nonzero(&terms, self.region)
        };
        Ok(match hit {
            Some((p, x)) => AnnihilationVerdict::NonzeroAt { position: ExponentVector(p), value: x },
            None => AnnihilationVerdict::ZeroOnRegion { region: self.region.clone() },
        })
    }
}

/// Checks whether `f c` vanishes.
///
/// For certified configurations the answer covers all of `Z^d`.  Otherwise
/// every point of `region` is checked, reading `c` outside the region as
/// needed.  Reported nonzero values are those of the positive primitive
/// integer multiple of `f`.
pub fn verify_annihilator(f: &LaurentPoly, c: &Configuration, region: &Region) -> Result<AnnihilationVerdict> {
    Verifier::new(c, region, 0)?.check(f)
}

/// Integer basis of `{x : M x = 0}` for a rational matrix with `ncols`
/// columns.
///
/// Uses fraction-free Gauss–Jordan elimination with the first nonzero entry
/// of each column as pivot.  Each basis vector is content-free with a
/// positive leading entry; there is one per non-pivot column.
pub fn rational_nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Result<Vec<Vec<BigInt>>> {
    let mut m = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != ncols {
            return Err(Error::DimensionMismatch { expected: ncols, got: r.len() });
        }
        let den = r.iter().fold(BigInt::one(), |l, x| num_integer::Integer::lcm(&l, x.denom()));
        m.push(r.iter().map(|x| x.numer() * (&den / x.denom())).collect::<Vec<BigInt>>());
    }
    Ok(integer_nullspace(m, ncols))
}

pub(crate) fn integer_nullspace(mut m: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for j in 0..ncols {
        let Some(i) = (r..m.len()).find(|&i| !m[i][j].is_zero()) else {
            continue;
        };
        m.swap(r, i);
        let p = m[r][j].clone();
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let a = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                let t = &p * &*x - &a * y;
                debug_assert!((&t % &prev).is_zero(), "fraction-free step is exact");
                *x = t / &prev;
            }
        }
        prev = p;
        pivots.push(j);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    // Every pivot entry now equals `prev`.
    let mut basis = Vec::new();
    for f in (0..ncols).filter(|j| !pivots.contains(j)) {
        let mut x = vec![BigInt::zero(); ncols];
        x[f] = prev.clone();
        for (row, &pj) in pivots.iter().enumerate() {
            x[pj] = -m[row][f].clone();
        }
        basis.push(normalize_vector(x));
    }
    basis
}

fn normalize_vector(mut x: Vec<BigInt>) -> Vec<BigInt> {
    let g = x.iter().fold(BigInt::zero(), |g, a| num_integer::Integer::gcd(&g, a));
    let neg = x.iter().find(|a| !a.is_zero()).is_some_and(|a| a.is_negative());
    if !g.is_zero() {
        for a in &mut x {
            *a = &*a / &g;
            if neg {
                *a = -&*a;
            }
        }
    }
    x
}

/// Kernel of the matrix with one row `(1, pattern)` per distinct pattern of
/// `shape` at anchors inside `region`.
struct PatternKernel {
    anchors: Region,
    distinct: usize,
    kernel: Vec<Vec<BigInt>>,
}

fn pattern_kernel(c: &Configuration, shape: &Shape, region: &Region) -> Result<PatternKernel> {
    c.check_dim(shape.dim())?;
    c.check_dim(region.dim())?;
    let anchors = region.anchors_for(shape).ok_or(Error::NoAnchors)?;
    let win = c.window(region)?;
    let st = region.strides();
    let offs: Vec<usize> =
        shape.points().iter().map(|u| u.0.iter().zip(&st).map(|(a, b)| a * b).sum::<i64>() as usize).collect();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut rows = Vec::new();
    for v in anchors.iter() {
        let base = region.index_of(&v).expect("anchor inside region");
        let mut row = Vec::with_capacity(offs.len() + 1);
        row.push(BigInt::one());
        row.extend(offs.iter().map(|o| win.values[base + o].clone()));
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    let distinct = rows.len();
    Ok(PatternKernel { anchors, distinct, kernel: integer_nullspace(rows, shape.len() + 1) })
}

/// `g = sum_i a_i X^{-u_i}` from a kernel vector `(a_0, a_1, ...)`.
fn kernel_poly(a: &[BigInt], shape: &Shape) -> LaurentPoly {
    let d = shape.dim();
    let terms = shape.points().iter().zip(&a[1..]).map(|(u, x)| (-u, BigRational::from_integer(x.clone())));
    LaurentPoly::from_terms(d, terms).expect("shape points share the dimension")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorSearch {
    /// `g c` is constant on the anchors.
    pub g: LaurentPoly,
    /// `(x_1 - 1) g`.
    pub f: LaurentPoly,
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub constant: BigInt,
    pub kernel_dim: usize,
    pub distinct_patterns: usize,
    pub anchors: Region,
}

/// Looks for a polynomial supported on `-shape` that is constant on `c`
/// over the anchors of `region`, and multiplies it by `x_1 - 1`.
///
/// `Ok(None)` when the pattern matrix has full column rank.
pub fn find_annihilator(c: &Configuration, shape: &Shape, region: &Region) -> Result<Option<AnnihilatorSearch>> {
    let pk = pattern_kernel(c, shape, region)?;
    let Some(a) = pk.kernel.first() else {
        return Ok(None);
    };
    let g = kernel_poly(a, shape);
    let d = shape.dim();
    let step = LaurentPoly::difference(&ExponentVector::unit(d, 0))?;
    let f = step.try_mul(&g)?;
    Ok(Some(AnnihilatorSearch {
        g,
        f,
        constant: -a[0].clone(),
        kernel_dim: pk.kernel.len(),
        distinct_patterns: pk.distinct,
        anchors: pk.anchors,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result")]
pub enum Normalization {
    /// `a c + b` is annihilated by every polynomial that is constant on it.
    Witness {
        #[serde(serialize_with = "crate::serde_big::ser")]
        a: BigInt,
        #[serde(serialize_with = "crate::serde_big::ser")]
        b: BigInt,
        /// The constant-producing polynomial behind the witness.
        g: LaurentPoly,
        #[serde(serialize_with = "crate::serde_big::ser")]
        constant: BigInt,
    },
    /// Every constant-producing polynomial found already annihilates `c`.
    AlreadyNormalized { kernel_dim: usize },
}

/// Finds `(a, b)` with `a > 0` such that `a c + b` is normalized, using
/// polynomials supported on `-shape` that are constant on `c` over `region`.
///
/// If `g c = k` with coefficient sum `s != 0`, then `g (s c - k) = 0`.
pub fn normalize(c: &Configuration, shape: &Shape, region: &Region) -> Result<Normalization> {
    let pk = pattern_kernel(c, shape, region)?;
    if pk.kernel.is_empty() {
        return Err(Error::Inconclusive("no constant-producing polynomial supported on the shape".into()));
    }
    for a in &pk.kernel {
        let s: BigInt = a[1..].iter().sum();
        if s.is_zero() {
            continue;
        }
        let k = -a[0].clone();
        let (sa, sb) = if s.is_negative() { (-s, k.clone()) } else { (s, -k.clone()) };
        return Ok(Normalization::Witness { a: sa, b: sb, g: kernel_poly(a, shape), constant: k });
    }
    if c.alphabet().is_none() {
        return Err(Error::Inconclusive(
            "all constant-producing polynomials have zero coefficient sum, but no finite alphabet is known".into(),
        ));
    }
    Ok(Normalization::AlreadyNormalized { kernel_dim: pk.kernel.len() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExpansionRow {
    pub n: i64,
    pub verdict: AnnihilationVerdict,
}

/// Verifies `f(X^n) c = 0` for each `n`, given that `f` annihilates `c`.
pub fn expansion_check(f: &LaurentPoly, c: &Configuration, ns: &[i64], region: &Region) -> Result<Vec<ExpansionRow>> {
    let base = verify_annihilator(f, c, region)?;
    if !base.is_zero() {
        return Err(Error::Invalid("the polynomial does not annihilate the configuration".into()));
    }
    ns.iter()
        .map(|&n| Ok(ExpansionRow { n, verdict: verify_annihilator(&f.substitute_power(n)?, c, region)? }))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceProduct {
    pub vectors: Vec<ExponentVector>,
    pub directions: Vec<Direction>,
    pub product: LaurentPoly,
    pub verdict: AnnihilationVerdict,
}

fn product_of(dim: usize, vs: &[&[i64]]) -> LaurentPoly {
    vs.iter().fold(LaurentPoly::one(dim), |acc, v| {
        let d = LaurentPoly::difference(&ExponentVector::from(*v)).expect("nonzero vector");
        acc.try_mul(&d).expect("same dimension")
    })
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    lattice::primitive_part(a).map(|p| p.0) == lattice::primitive_part(b).map(|p| p.0)
}

/// First product `prod (X^{v_i} - 1)` of at most `max_factors` pairwise
/// non-parallel vectors of norm at most `max_norm` that annihilates `c`.
///
/// Candidates are tried by number of factors, then in lexicographic order
/// of index tuples over the vector search order (norm, then lex).
pub fn find_difference_product(
    c: &Configuration,
    max_norm: i64,
    max_factors: usize,
    region: &Region,
) -> Result<Option<DifferenceProduct>> {
    let d = c.dim();
    let cands = lattice::search_vectors(d, max_norm);
    let verifier = Verifier::new(c, region, max_norm * max_factors as i64)?;
    for m in 1..=max_factors {
        let mut idx: Vec<usize> = Vec::with_capacity(m);
        if let Some(found) = search_products(&cands, m, 0, &mut idx, &verifier, d)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn search_products(
    cands: &[Vec<i64>],
    m: usize,
    from: usize,
    idx: &mut Vec<usize>,
    verifier: &Verifier<'_>,
    d: usize,
) -> Result<Option<DifferenceProduct>> {
    if idx.len() == m {
        let vs: Vec<&[i64]> = idx.iter().map(|&i| cands[i].as_slice()).collect();
        let product = product_of(d, &vs);
        let verdict = verifier.check(&product)?;
        if !verdict.is_zero() {
            return Ok(None);
        }
        let vectors: Vec<ExponentVector> = vs.iter().map(|v| ExponentVector::from(*v)).collect();
        let directions = vectors.iter().map(Direction::of).collect::<Result<_>>()?;
        return Ok(Some(DifferenceProduct { vectors, directions, product, verdict }));
    }
    for i in from..cands.len() {
        if idx.iter().any(|&j| parallel(&cands[j], &cands[i])) {
            continue;
        }
        idx.push(i);
        let r = search_products(cands, m, i + 1, idx, verifier, d)?;
        idx.pop();
        if r.is_some() {
            return Ok(r);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodEvidence {
    pub vector: ExponentVector,
    pub verdict: AnnihilationVerdict,
}

/// First vector in search order (norm at most `bound`) that is a period of
/// `c`, skipping vectors parallel to any in `avoid`.
pub(crate) fn period_search(
    c: &Configuration,
    bound: i64,
    region: &Region,
    avoid: &[Vec<i64>],
) -> Result<Option<PeriodEvidence>> {
    let verifier = Verifier::new(c, region, bound)?;
    for v in lattice::search_vectors(c.dim(), bound) {
        if avoid.iter().any(|a| parallel(a, &v)) {
            continue;
        }
        let ev = ExponentVector(v);
        let verdict = verifier.check(&LaurentPoly::difference(&ev)?)?;
        if verdict.is_zero() {
            return Ok(Some(PeriodEvidence { vector: ev, verdict }));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Periodicity {
    DoublyPeriodic {
        periods: Vec<PeriodEvidence>,
    },
    OnePeriodic {
        direction: Direction,
        period: PeriodEvidence,
    },
    /// No period was found up to the search bound.
    NonPeriodicEvidence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub periodicity: Periodicity,
    /// Factors left after greedy removal.
    pub reduced: Vec<ExponentVector>,
    pub m_star: usize,
}

fn verify_with(verifier: &Verifier<'_>, c: &Configuration, vs: &[&[i64]]) -> Result<AnnihilationVerdict> {
    if vs.is_empty() {
        return verifier.check(&LaurentPoly::one(c.dim()));
    }
    verifier.check(&product_of(c.dim(), vs))
}

/// Greedily drops factors of a difference-product certificate while the
/// remaining product still annihilates `c`, then classifies periodicity by
/// searching for periods of norm at most `bound`.
///
/// With one factor left, `c` is periodic in that direction and a second,
/// independent period decides between one- and two-fold periodicity.  With
/// more than one factor left, a period found by search contradicts the
/// reduction unless the period is proven, in which case the search result
/// wins; an unproven period is reported as an inconsistency.
pub fn classify_periodicity(
    cert: &DifferenceProduct,
    c: &Configuration,
    bound: i64,
    region: &Region,
) -> Result<Classification> {
    let margin = cert.vectors.iter().map(|v| lattice::chebyshev(&v.0)).sum::<i64>().max(bound);
    let verifier = Verifier::new(c, region, margin)?;
    let all: Vec<&[i64]> = cert.vectors.iter().map(|v| v.0.as_slice()).collect();
    if !verify_with(&verifier, c, &all)?.is_zero() {
        return Err(Error::Invalid("certificate product does not annihilate the configuration".into()));
    }
    let mut keep = vec![true; all.len()];
    for i in 0..all.len() {
        keep[i] = false;
        let rest: Vec<&[i64]> = all.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| *v).collect();
        if !verify_with(&verifier, c, &rest)?.is_zero() {
            keep[i] = true;
        }
    }
    let reduced: Vec<ExponentVector> =
        all.iter().zip(&keep).filter(|(_, k)| **k).map(|(v, _)| ExponentVector::from(*v)).collect();
    let m_star = reduced.len();
    let two_fold = |first: PeriodEvidence| -> Result<Periodicity> {
        match period_search(c, bound, region, std::slice::from_ref(&first.vector.0))? {
            Some(second) => Ok(Periodicity::DoublyPeriodic { periods: vec![first, second] }),
            None => Ok(Periodicity::OnePeriodic { direction: Direction::of(&first.vector)?, period: first }),
        }
    };
    let periodicity = match m_star {
        0 => match period_search(c, bound, region, &[])? {
            Some(p) => two_fold(p)?,
            None => Periodicity::NonPeriodicEvidence,
        },
        1 => {
            let v = reduced[0].clone();
            let verdict = verifier.check(&LaurentPoly::difference(&v)?)?;
            two_fold(PeriodEvidence { vector: v, verdict })?
        }
        _ => match period_search(c, bound, region, &[])? {
            None => Periodicity::NonPeriodicEvidence,
            Some(p) if p.verdict.is_proven() => two_fold(p)?,
            Some(p) => {
                return Err(Error::Inconsistent(format!(
                    "{m_star} factors remain after reduction, yet {} is a period on the region",
                    p.vector
                )))
            }
        },
    };
    Ok(Classification { periodicity, reduced, m_star })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::config::FullPeriodicConfig;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn nullspace_examples() {
        let k = rational_nullspace(&[vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]], 3).unwrap();
        assert_eq!(k, vec![ints(&[2, -1, 0]), ints(&[3, 0, -1])]);
        assert!(rational_nullspace(&[vec![q(1), q(0)], vec![q(0), q(1)]], 2).unwrap().is_empty());
        assert_eq!(rational_nullspace(&[vec![q(1), q(1)]], 2).unwrap(), vec![ints(&[1, -1])]);
        assert_eq!(rational_nullspace(&[], 2).unwrap(), vec![ints(&[1, 0]), ints(&[0, 1])]);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(rational_nullspace(&[vec![half, q(-1)]], 2).unwrap(), vec![ints(&[2, 1])]);
        assert!(rational_nullspace(&[vec![q(1)]], 2).is_err());
    }

    #[test]
    fn nullspace_vectors_are_orthogonal() {
        let rows: Vec<Vec<BigInt>> =
            vec![ints(&[3, 1, 4, 1, 5]), ints(&[9, 2, 6, 5, 3]), ints(&[5, 8, 9, 7, 9]), ints(&[12, 3, 10, 6, 8])];
        let k = integer_nullspace(rows.clone(), 5);
        assert_eq!(k.len(), 2);
        for x in &k {
            for r in &rows {
                let dot: BigInt = r.iter().zip(x).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn verify_tiers() {
        let r = Region::cube(2, -5, 5).unwrap();
        let p = FullPeriodicConfig::from_fn(vec![vec![3, 0], vec![0, 2]], |v| BigInt::from(v[0] * 7 + v[1])).unwrap();
        let c = Configuration::full_periodic(p);
        let f = LaurentPoly::parse("x^3 - 1", 2).unwrap();
        assert!(verify_annihilator(&f, &c, &r).unwrap().is_proven());
        let g = LaurentPoly::parse("x - 1", 2).unwrap();
        assert!(matches!(verify_annihilator(&g, &c, &r).unwrap(), AnnihilationVerdict::NonzeroAt { .. }));
        let golden = builtins::golden();
        let f = LaurentPoly::parse("(x-1)*(y-1)*(x*y^-1-1)", 2).unwrap();
        assert_eq!(
            verify_annihilator(&f, &golden, &r).unwrap(),
            AnnihilationVerdict::ZeroOnRegion { region: r.clone() }
        );
        assert!(verify_annihilator(&LaurentPoly::zero(2), &c, &r).is_err());
    }

    #[test]
    fn annihilator_of_a_periodic_configuration() {
        let c = Configuration::full_periodic(
            FullPeriodicConfig::indicator(vec![vec![2, 0], vec![0, 2]], &[vec![0, 0]]).unwrap(),
        );
        let r = Region::cube(2, -10, 10).unwrap();
        let s = Shape::rect(3, 3).unwrap();
        let found = find_annihilator(&c, &s, &r).unwrap().unwrap();
        assert!(verify_annihilator(&found.f, &c, &r).unwrap().is_proven());
        assert_eq!(found.distinct_patterns, 4);
    }

    #[test]
    fn normalize_constant() {
        let c = Configuration::constant(2, 2);
        let r = Region::cube(2, 0, 6).unwrap();
        let n = normalize(&c, &Shape::rect(1, 1).unwrap(), &r).unwrap();
        match n {
            Normalization::Witness { a, b, .. } => {
                assert_eq!((a, b), (BigInt::from(1), BigInt::from(-2)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn difference_products() {
        let r = Region::cube(2, -12, 12).unwrap();
        let c = Configuration::full_periodic(
            FullPeriodicConfig::from_fn(vec![vec![2, 0], vec![0, 3]], |v| BigInt::from(v[0] + 5 * v[1])).unwrap(),
        );
        let p = find_difference_product(&c, 3, 2, &r).unwrap().unwrap();
        assert_eq!(p.vectors, vec![ExponentVector::from([2, 0])]);
        let g = builtins::golden();
        let p = find_difference_product(&g, 2, 3, &r).unwrap().unwrap();
        assert_eq!(p.vectors, vec![[0, 1].into(), [1, -1].into(), [1, 0].into()]);
        assert!(matches!(p.verdict, AnnihilationVerdict::ZeroOnRegion { .. }));
    }

    #[test]
    fn classification() {
        let r = Region::cube(2, -10, 10).unwrap();
        let c = Configuration::constant(2, 1);
        let cert = find_difference_product(&c, 1, 1, &r).unwrap().unwrap();
        let cl = classify_periodicity(&cert, &c, 3, &r).unwrap();
        assert!(matches!(cl.periodicity, Periodicity::DoublyPeriodic { .. }));
        let g = builtins::golden();
        let cert = find_difference_product(&g, 2, 3, &r).unwrap().unwrap();
        let cl = classify_periodicity(&cert, &g, 6, &r).unwrap();
        assert_eq!(cl.m_star, 3);
        assert_eq!(cl.periodicity, Periodicity::NonPeriodicEvidence);
    }
}
