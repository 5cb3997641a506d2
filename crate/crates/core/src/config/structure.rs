//! Finite structure behind a configuration, and the certificates it allows.
//!
//! A node is either lattice-periodic with known axis periods, a finite sum of
//! fiber-periodic pieces, or opaque.  Pieces of a sum are kept only when they
//! are pairwise non-parallel, and when there is more than one piece every
//! fiber must be finitely supported.  Under those conditions:
//!
//! * the support of a piece is a finite union of arithmetic progressions
//!   along its period, so any orbit of another piece meets it in finitely
//!   many points;
//! * an anchor sees at most one piece unless it lies in the finite set of
//!   pairwise intersections of their influence zones.
//!
//! Both facts turn global questions (is `c` zero? which patterns occur?)
//! into finite enumerations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{Configuration, ExactnessClass, FiberPeriodicConfig, Kind};
use crate::lattice;
use crate::region::{Region, Shape};

#[derive(Clone, Debug)]
pub enum Structure {
    /// Invariant under `periods[i] * e_i` for every axis.
    Periodic {
        periods: Vec<i64>,
    },
    /// Exactly the sum of the listed pieces (none: the zero configuration).
    Fibers {
        pieces: Vec<FiberPeriodicConfig>,
    },
    Opaque,
}

impl Structure {
    pub fn class(&self) -> ExactnessClass {
        match self {
            Structure::Periodic { .. } => ExactnessClass::FullLatticePeriodic,
            Structure::Fibers { .. } => ExactnessClass::FiberPeriodicFinite,
            Structure::Opaque => ExactnessClass::OracleOnly,
        }
    }

    /// The box `[0, periods_i)` that every orbit of the period lattice meets.
    pub fn period_box(&self) -> Option<Region> {
        match self {
            Structure::Periodic { periods } => {
                Region::new(vec![0; periods.len()], periods.iter().map(|p| p - 1).collect()).ok()
            }
            _ => None,
        }
    }
}

fn parallel(a: &[i64], b: &[i64]) -> bool {
    let (pa, _) = lattice::primitive_part(a).unwrap_or_default();
    let (pb, _) = lattice::primitive_part(b).unwrap_or_default();
    pa == pb
}

fn merge(pieces: Vec<FiberPeriodicConfig>) -> Structure {
    let mut out: Vec<FiberPeriodicConfig> = Vec::new();
    'next: for p in pieces {
        if p.is_zero() {
            continue;
        }
        for q in out.iter_mut() {
            if let Some(s) = q.add(&p) {
                *q = s;
                continue 'next;
            }
        }
        out.push(p);
    }
    out.retain(|p| !p.is_zero());
    for i in 0..out.len() {
        for j in i + 1..out.len() {
            if parallel(out[i].period(), out[j].period()) {
                return Structure::Opaque;
            }
        }
    }
    if out.len() > 1 && out.iter().any(|p| !p.is_finite()) {
        return Structure::Opaque;
    }
    Structure::Fibers { pieces: out }
}

fn map_pieces(s: &Structure, f: impl Fn(&FiberPeriodicConfig) -> FiberPeriodicConfig) -> Structure {
    match s {
        Structure::Periodic { periods } => Structure::Periodic { periods: periods.clone() },
        Structure::Fibers { pieces } => merge(pieces.iter().map(f).collect()),
        Structure::Opaque => Structure::Opaque,
    }
}

/// True when a periodic child is identically zero (checked on its period
/// box when that box is small).
fn is_zero_periodic(c: &Configuration, periods: &[i64]) -> bool {
    let n: i64 = periods.iter().product();
    if n > 1 << 14 {
        return false;
    }
    let Ok(r) = Region::new(vec![0; periods.len()], periods.iter().map(|p| p - 1).collect()) else {
        return false;
    };
    r.iter().all(|p| c.value(&p).is_zero())
}

pub(super) fn compute(c: &Configuration) -> Structure {
    let d = c.dim();
    match &c.0.kind {
        Kind::Constant(_) => Structure::Periodic { periods: vec![1; d] },
        Kind::FullPeriodic(p) => Structure::Periodic { periods: p.axis_periods() },
        Kind::FiberPeriodic(p) => merge(vec![p.clone()]),
        Kind::Beatty(_) | Kind::Oracle(_) => Structure::Opaque,
        Kind::Sum(children) => {
            let structs: Vec<&Structure> = children.iter().map(|ch| ch.structure()).collect();
            if structs.iter().all(|s| matches!(s, Structure::Periodic { .. })) {
                let mut periods = vec![1i64; d];
                for s in &structs {
                    if let Structure::Periodic { periods: p } = s {
                        for i in 0..d {
                            periods[i] = lattice::lcm(periods[i], p[i]);
                        }
                    }
                }
                return Structure::Periodic { periods };
            }
            let mut pieces = Vec::new();
            for (ch, s) in children.iter().zip(&structs) {
                match s {
                    Structure::Fibers { pieces: p } => pieces.extend(p.iter().cloned()),
                    Structure::Periodic { periods } if is_zero_periodic(ch, periods) => {}
                    _ => return Structure::Opaque,
                }
            }
            merge(pieces)
        }
        Kind::Scale(k, ch) => map_pieces(ch.structure(), |p| p.scale(k)),
        Kind::Translate(a, ch) => map_pieces(ch.structure(), |p| p.translate(a)),
        Kind::Mirror(axis, ch) => map_pieces(ch.structure(), |p| p.mirror(*axis)),
        Kind::PolyApply { terms, child, .. } => map_pieces(child.structure(), |p| p.apply(terms)),
        Kind::Binarize(ones, ch) => {
            let zero_in = ones.contains(&BigInt::zero());
            match ch.structure() {
                Structure::Periodic { periods } => Structure::Periodic { periods: periods.clone() },
                Structure::Fibers { pieces } if pieces.is_empty() => {
                    if zero_in {
                        Structure::Periodic { periods: vec![1; d] }
                    } else {
                        Structure::Fibers { pieces: Vec::new() }
                    }
                }
                Structure::Fibers { pieces } if pieces.len() == 1 && !zero_in => {
                    merge(vec![pieces[0].map_values(|x| BigInt::from(u8::from(ones.contains(x))))])
                }
                _ => Structure::Opaque,
            }
        }
        Kind::Declared(_, ch) => ch.structure().clone(),
        Kind::CosetMask { moduli, child, .. } => match child.structure() {
            Structure::Periodic { periods } => {
                Structure::Periodic { periods: periods.iter().zip(moduli).map(|(p, m)| lattice::lcm(*p, *m)).collect() }
            }
            _ => Structure::Opaque,
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ZeroDecision {
    Zero { domain: String },
    NonzeroAt(Vec<i64>, BigInt),
    Undecided,
}

/// Decides whether `c` vanishes everywhere, when its structure allows it.
pub(crate) fn decide_zero(c: &Configuration) -> ZeroDecision {
    match c.structure() {
        Structure::Periodic { .. } => {
            let r = c.structure().period_box().expect("periodic structure has a box");
            for p in r.iter() {
                let x = c.value(&p);
                if !x.is_zero() {
                    return ZeroDecision::NonzeroAt(p, x);
                }
            }
            ZeroDecision::Zero { domain: format!("period box {r}") }
        }
        Structure::Fibers { pieces } if pieces.len() <= 1 => {
            let pts = pieces.first().map(|p| p.check_points()).unwrap_or_default();
            for p in &pts {
                let x = c.value(p);
                if !x.is_zero() {
                    return ZeroDecision::NonzeroAt(p.clone(), x);
                }
            }
            let fibers = pieces.first().map_or(0, |p| p.fibers().len());
            ZeroDecision::Zero { domain: format!("{} points on {} fibers", pts.len(), fibers) }
        }
        Structure::Fibers { pieces } => {
            let mut checked = 0usize;
            for (i, piece) in pieces.iter().enumerate() {
                let Some(x) = piece.check_points().into_iter().find(|p| !piece.value(p).is_zero()) else {
                    checked += piece.check_points().len();
                    continue;
                };
                // Other pieces meet the orbit of x in at most one point per
                // support progression.
                let blockers: usize = pieces
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, q)| q.support_progressions().len())
                    .sum();
                let u = piece.period();
                for n in 0..=(2 * blockers as i64 + 2) {
                    let j = if n % 2 == 0 { n / 2 } else { -(n + 1) / 2 };
                    let p = lattice::add(&x, &lattice::scale(j, u));
                    let val = c.value(&p);
                    if !val.is_zero() {
                        return ZeroDecision::NonzeroAt(p, val);
                    }
                }
                return ZeroDecision::Undecided;
            }
            ZeroDecision::Zero { domain: format!("{checked} points on {} pieces", pieces.len()) }
        }
        Structure::Opaque => ZeroDecision::Undecided,
    }
}

fn pattern_of(f: impl Fn(&[i64]) -> BigInt, v: &[i64], offsets: &[Vec<i64>]) -> Vec<BigInt> {
    offsets.iter().map(|o| f(&lattice::add(v, o))).collect()
}

/// Every `shape`-pattern occurring anywhere in `c`, when the structure makes
/// this a finite computation.
pub(crate) fn exact_patterns(c: &Configuration, shape: &Shape) -> Option<BTreeSet<Vec<BigInt>>> {
    let offsets: Vec<Vec<i64>> = shape.points().iter().map(|p| p.0.clone()).collect();
    let mut out = BTreeSet::new();
    match c.structure() {
        Structure::Periodic { .. } => {
            let r = c.structure().period_box()?;
            for p in r.iter() {
                out.insert(pattern_of(|v| c.value(v), &p, &offsets));
            }
        }
        Structure::Fibers { pieces } if pieces.is_empty() => {
            out.insert(vec![BigInt::zero(); offsets.len()]);
        }
        Structure::Fibers { pieces } if pieces.len() == 1 => {
            for a in pieces[0].pattern_anchors(&offsets) {
                out.insert(pattern_of(|v| c.value(v), &a, &offsets));
            }
        }
        Structure::Fibers { pieces } => {
            out.insert(vec![BigInt::zero(); offsets.len()]);
            for piece in pieces {
                for a in piece.pattern_anchors(&offsets) {
                    out.insert(pattern_of(|v| piece.value(v), &a, &offsets));
                }
            }
            let diffs: BTreeSet<Vec<i64>> =
                offsets.iter().flat_map(|a| offsets.iter().map(move |b| lattice::sub(a, b))).collect();
            let mut mixed: BTreeSet<Vec<i64>> = BTreeSet::new();
            for i in 0..pieces.len() {
                for j in i + 1..pieces.len() {
                    let (ui, uj) = (pieces[i].period(), pieces[j].period());
                    let neg_uj = lattice::scale(-1, uj);
                    for x0 in pieces[i].support_progressions() {
                        for y0 in pieces[j].support_progressions() {
                            let base = lattice::sub(&y0, &x0);
                            for dd in &diffs {
                                // x0 + a ui - delta = y0 + b uj - delta', dd = delta - delta'
                                let r = lattice::add(&base, dd);
                                let Some((a, _)) = lattice::solve_pair(ui, &neg_uj, &r) else {
                                    continue;
                                };
                                let x = lattice::add(&x0, &lattice::scale(a, ui));
                                for delta in &offsets {
                                    mixed.insert(lattice::sub(&x, delta));
                                }
                            }
                        }
                    }
                }
            }
            for a in mixed {
                out.insert(pattern_of(|v| c.value(v), &a, &offsets));
            }
        }
        Structure::Opaque => return None,
    }
    Some(out)
}
