//! Pattern complexity: distinct patterns, Nivat scans, lines of blocks,
//! period search and the one-dimensional Morse–Hedlund check.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;
use serde::Serialize;

use crate::annihilate::{period_search, AnnihilationVerdict, PeriodEvidence};
use crate::config::{exact_patterns, Configuration, ExactnessClass};
use crate::error::{Error, Result};
use crate::lpoly::{Direction, ExponentVector};
use crate::region::{Region, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// The count is the number of patterns in the whole configuration.
    Exact,
    /// Only patterns seen in the region were counted.
    WindowLowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexityReport {
    pub shape: Shape,
    pub region: Region,
    pub count: usize,
    pub verdict: Verdict,
    /// Pattern count over the whole configuration, when computable.
    pub total: Option<usize>,
    pub class: ExactnessClass,
}

/// Values on a box mapped to small symbols, for fast pattern hashing.
struct SymbolGrid {
    region: Region,
    strides: Vec<i64>,
    syms: Vec<u32>,
    alphabet: Vec<BigInt>,
}

impl SymbolGrid {
    fn load(c: &Configuration, region: &Region) -> Result<Self> {
        let win = c.window(region)?;
        let mut ids: HashMap<BigInt, u32> = HashMap::new();
        let mut alphabet = Vec::new();
        let syms = win
            .values
            .into_iter()
            .map(|x| {
                let n = ids.len() as u32;
                *ids.entry(x.clone()).or_insert_with(|| {
                    alphabet.push(x);
                    n
                })
            })
            .collect();
        Ok(SymbolGrid { region: region.clone(), strides: region.strides(), syms, alphabet })
    }

    /// Distinct patterns at the given anchors, which must keep the shape
    /// inside the grid.
    fn patterns(&self, shape: &Shape, anchors: &Region) -> HashSet<Vec<u32>> {
        let offs: Vec<usize> = shape
            .points()
            .iter()
            .map(|u| u.0.iter().zip(&self.strides).map(|(a, b)| a * b).sum::<i64>())
            .map(|o| o as usize)
            .collect();
        let mut out = HashSet::new();
        let mut buf = Vec::with_capacity(offs.len());
        for v in anchors.iter() {
            let base = self.region.index_of(&v).expect("anchor inside grid");
            buf.clear();
            buf.extend(offs.iter().map(|o| self.syms[base + o]));
            if !out.contains(&buf) {
                out.insert(buf.clone());
            }
        }
        out
    }

    fn decode(&self, p: &[u32]) -> Vec<BigInt> {
        p.iter().map(|&s| self.alphabet[s as usize].clone()).collect()
    }
}

/// Box `region + shape` holding every cell read by the anchors in `region`.
fn pattern_box(region: &Region, shape: &Shape) -> Region {
    let (smin, smax) = shape.range();
    region.grow(&smin.iter().map(|x| -x).collect::<Vec<_>>(), &smax).expect("nonempty box")
}

fn report(c: &Configuration, grid: &SymbolGrid, shape: &Shape, region: &Region) -> Result<ComplexityReport> {
    let seen = grid.patterns(shape, region);
    let class = c.exactness_class();
    let (verdict, total) = match exact_patterns(c, shape) {
        Some(all) => {
            if let Some(p) = seen.iter().map(|p| grid.decode(p)).find(|p| !all.contains(p)) {
                return Err(Error::Inconsistent(format!(
                    "observed pattern {p:?} is missing from the exact pattern set"
                )));
            }
            let v = if seen.len() == all.len() { Verdict::Exact } else { Verdict::WindowLowerBound };
            (v, Some(all.len()))
        }
        None => (Verdict::WindowLowerBound, None),
    };
    Ok(ComplexityReport { shape: shape.clone(), region: region.clone(), count: seen.len(), verdict, total, class })
}

/// Number of distinct patterns `c|_{v + shape}` for anchors `v` in
/// `region`.
///
/// The verdict is `Exact` when the structure of `c` yields the full pattern
/// set and the region realizes all of it.
pub fn distinct_patterns(c: &Configuration, shape: &Shape, region: &Region) -> Result<ComplexityReport> {
    c.check_dim(shape.dim())?;
    c.check_dim(region.dim())?;
    let grid = SymbolGrid::load(c, &pattern_box(region, shape))?;
    report(c, &grid, shape, region)
}

/// [`distinct_patterns`] for the rectangle `[0, m) x [0, n)`.
pub fn complexity_rect(c: &Configuration, m: usize, n: usize, region: &Region) -> Result<ComplexityReport> {
    distinct_patterns(c, &Shape::rect(m, n)?, region)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoundFlag {
    /// More than `m n` patterns.
    AboveBound,
    AtOrBelowBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NivatRow {
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub mn: usize,
    pub flag: BoundFlag,
    pub verdict: Verdict,
    /// At or below the bound, but only as a window lower bound: the true
    /// count may still exceed `m n`.
    pub inconclusive: bool,
}

/// Rectangle complexities for `1 <= m <= m_max`, `1 <= n <= n_max`
/// compared with `m n`.
pub fn nivat_scan(c: &Configuration, m_max: usize, n_max: usize, region: &Region) -> Result<Vec<NivatRow>> {
    if c.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: c.dim() });
    }
    if m_max == 0 || n_max == 0 {
        return Err(Error::Empty("rectangle range"));
    }
    c.check_dim(region.dim())?;
    let grid = SymbolGrid::load(c, &pattern_box(region, &Shape::rect(m_max, n_max)?))?;
    let mut rows = Vec::with_capacity(m_max * n_max);
    for m in 1..=m_max {
        for n in 1..=n_max {
            let r = report(c, &grid, &Shape::rect(m, n)?, region)?;
            let flag = if r.count > m * n { BoundFlag::AboveBound } else { BoundFlag::AtOrBelowBound };
            let inconclusive = flag == BoundFlag::AtOrBelowBound && r.verdict == Verdict::WindowLowerBound;
            rows.push(NivatRow { m, n, count: r.count, mn: m * n, flag, verdict: r.verdict, inconclusive });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLine {
    /// First anchor of the line inside the region, in row-major order.
    pub anchor: ExponentVector,
    pub samples: usize,
    pub blocks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLineReport {
    pub direction: Direction,
    pub m: usize,
    pub n: usize,
    pub lines: Vec<BlockLine>,
    /// Lines whose observed block sets are pairwise disjoint, chosen
    /// greedily after merging lines with identical sets.
    pub disjoint_count: usize,
}

type LineAcc = (Vec<i64>, usize, BTreeSet<Vec<u32>>);

/// Groups the `m x n` blocks anchored in `region` by the line `u + Z v`
/// through their anchor, and counts lines with pairwise disjoint block
/// sets.
pub fn block_lines(c: &Configuration, v: &Direction, m: usize, n: usize, region: &Region) -> Result<BlockLineReport> {
    if c.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: c.dim() });
    }
    c.check_dim(v.vector().dim())?;
    c.check_dim(region.dim())?;
    let shape = Shape::rect(m, n)?;
    let grid = SymbolGrid::load(c, &pattern_box(region, &shape))?;
    let offs: Vec<usize> = shape
        .points()
        .iter()
        .map(|u| u.0.iter().zip(&grid.strides).map(|(a, b)| a * b).sum::<i64>() as usize)
        .collect();
    let (a, b) = (v.vector().0[0], v.vector().0[1]);
    // For primitive v, the lines u + Z v are indexed by b u_0 - a u_1.
    // key -> (first anchor, samples, blocks)
    let mut lines: BTreeMap<i64, LineAcc> = BTreeMap::new();
    for p in region.iter() {
        let key = b * p[0] - a * p[1];
        let base = grid.region.index_of(&p).expect("anchor inside grid");
        let block: Vec<u32> = offs.iter().map(|o| grid.syms[base + o]).collect();
        let e = lines.entry(key).or_insert_with(|| (p.clone(), 0, BTreeSet::new()));
        e.1 += 1;
        e.2.insert(block);
    }
    let mut order: Vec<_> = lines.into_values().collect();
    order.sort_by(|x, y| x.0.cmp(&y.0));
    let report_lines = order
        .iter()
        .map(|(p, s, set)| BlockLine { anchor: ExponentVector(p.clone()), samples: *s, blocks: set.len() })
        .collect();
    let mut distinct: Vec<&BTreeSet<Vec<u32>>> =
        order.iter().map(|(_, _, s)| s).collect::<BTreeSet<_>>().into_iter().collect();
    distinct.sort_by_key(|s| s.len());
    let mut used: HashSet<&Vec<u32>> = HashSet::new();
    let mut disjoint_count = 0;
    for s in distinct {
        if s.iter().all(|blk| !used.contains(blk)) {
            used.extend(s.iter());
            disjoint_count += 1;
        }
    }
    Ok(BlockLineReport { direction: v.clone(), m, n, lines: report_lines, disjoint_count })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodFound {
    pub vector: ExponentVector,
    pub verdict: AnnihilationVerdict,
    /// The period holds on the region only.
    pub candidate_only: bool,
}

/// The first vector with norm at most `bound` (ordered by Chebyshev norm,
/// then lexicographically, first nonzero coordinate positive) such that
/// `X^v - 1` annihilates `c`.
pub fn find_period(c: &Configuration, bound: i64, region: &Region) -> Result<Option<PeriodFound>> {
    Ok(period_search(c, bound, region, &[])?.map(|PeriodEvidence { vector, verdict }| PeriodFound {
        candidate_only: !verdict.is_proven(),
        vector,
        verdict,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseHedlund {
    pub n: usize,
    /// Distinct factors of length `n`.
    pub count: usize,
    /// Smallest `p <= count` such that the word is `p`-periodic from
    /// `onset` on, with `onset` at most half the word length.  Only searched
    /// when `count <= n`.
    pub period: Option<usize>,
    pub onset: Option<usize>,
    /// Claims concern the given finite word only.
    pub scope: &'static str,
}

/// Counts length-`n` factors of a finite word and, when there are at most
/// `n` of them, looks for an eventual period.
pub fn morse_hedlund_1d<T: Eq + Hash>(word: &[T], n: usize) -> Result<MorseHedlund> {
    if n == 0 {
        return Err(Error::Invalid("factor length must be positive".into()));
    }
    if word.len() < 2 * n {
        return Err(Error::Invalid(format!("word of length {} is shorter than 2n = {}", word.len(), 2 * n)));
    }
    let count = word.windows(n).collect::<HashSet<_>>().len();
    let mut period = None;
    let mut onset = None;
    if count <= n {
        for p in 1..=count {
            // Smallest s with word[i] == word[i + p] for all i >= s.
            let mut s = word.len() - p;
            while s > 0 && word[s - 1] == word[s - 1 + p] {
                s -= 1;
            }
            if s <= word.len() / 2 {
                period = Some(p);
                onset = Some(s);
                break;
            }
        }
    }
    Ok(MorseHedlund { n, count, period, onset, scope: "on-window" })
}
