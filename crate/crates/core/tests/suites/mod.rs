//! Randomized invariant suites shared by the acceptance and property
//! targets.  Every suite runs 100 cases from a fixed seed.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use lowcomplexity::annihilate::verify_annihilator;
use lowcomplexity::config::{CoefficientOracle, FiberPeriodicConfig, FullPeriodicConfig};
use lowcomplexity::decompose::sublattice_split;
use lowcomplexity::{Configuration, ExponentVector, LaurentPoly, Region};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestRunner};

pub const SEED: u64 = 0x5EED_2024;
pub const CASES: u32 = 100;

pub fn config() -> Config {
    Config { cases: CASES, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

fn runner() -> TestRunner {
    TestRunner::new(config())
}

pub fn poly2(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -6i64..=6, 1i64..=3), 0..=max_terms).prop_map(|ts| {
        LaurentPoly::from_terms(
            2,
            ts.into_iter().map(|(i, j, n, d)| (ExponentVector::from([i, j]), BigRational::new(n.into(), d.into()))),
        )
        .unwrap()
    })
}

pub fn int_poly2(max_terms: usize, max_coef: i64) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-3i64..=3, -3i64..=3, -max_coef..=max_coef), 0..=max_terms).prop_map(|ts| {
        LaurentPoly::from_terms(
            2,
            ts.into_iter().map(|(i, j, n)| (ExponentVector::from([i, j]), BigRational::from_integer(n.into()))),
        )
        .unwrap()
    })
}

pub fn nonzero_poly2(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    poly2(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// A lattice-periodic configuration with basis `[[a, s], [0, b]]`.
pub fn periodic2() -> impl Strategy<Value = (Configuration, Vec<Vec<i64>>)> {
    (1i64..=3, 1i64..=3, 0i64..=2, prop::collection::vec(-2i64..=2, 9)).prop_map(|(a, b, s, vals)| {
        let basis = vec![vec![a, s], vec![0, b]];
        let n = (a * b) as usize;
        let values = vals[..n].iter().map(|&x| BigInt::from(x)).collect();
        let p = FullPeriodicConfig::new(basis.clone(), values).unwrap();
        (Configuration::full_periodic(p), basis)
    })
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn check(r: Result<(), proptest::test_runner::TestError<impl std::fmt::Debug>>) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn ring_axioms() -> Result<(), String> {
    check(runner().run(&(poly2(5), poly2(5), poly2(5)), |(a, b, c)| {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(2), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(2), a.clone());
        let same = a.clone();
        prop_assert!((&a - &same).is_zero());
        Ok(())
    }))
}

pub fn substitution_composition() -> Result<(), String> {
    check(runner().run(&(poly2(5), poly2(3), 1i64..=4, 1i64..=4), |(f, g, m, n)| {
        let direct = f.substitute_power(m * n).unwrap();
        let nested = f.substitute_power(m).unwrap().substitute_power(n).unwrap();
        prop_assert_eq!(&direct, &nested);
        // Substitution is a ring homomorphism.
        let lhs = (&f * &g).substitute_power(n).unwrap();
        let rhs = &f.substitute_power(n).unwrap() * &g.substitute_power(n).unwrap();
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }))
}

pub fn minkowski_support() -> Result<(), String> {
    check(runner().run(&(nonzero_poly2(5), nonzero_poly2(5), -3i64..=3, -3i64..=3, 1i64..=5), |(f, g, i, j, k)| {
        let fg = &f * &g;
        let sum: std::collections::BTreeSet<ExponentVector> =
            f.support().iter().flat_map(|u| g.support().into_iter().map(move |v| u + &v)).collect();
        prop_assert!(fg.support().is_subset(&sum));
        let bf = f.bounding_box().unwrap().extents;
        let bg = g.bounding_box().unwrap().extents;
        let bfg = fg.bounding_box().unwrap().extents;
        prop_assert_eq!(bfg, bf.iter().zip(&bg).map(|(a, b)| a + b).collect::<Vec<_>>());
        let mono = LaurentPoly::monomial(ExponentVector::from([i, j]), q(k));
        let shifted: std::collections::BTreeSet<ExponentVector> =
            f.support().iter().map(|u| u + &ExponentVector::from([i, j])).collect();
        prop_assert_eq!((&f * &mono).support(), shifted);
        Ok(())
    }))
}

pub fn ideal_monomial_closure() -> Result<(), String> {
    let region = Region::cube(2, -4, 4).unwrap();
    check(runner().run(
        &(periodic2(), nonzero_poly2(4), -3i64..=3, -3i64..=3, any::<bool>()),
        |((c, basis), h, i, j, row)| {
            let v = ExponentVector(basis[usize::from(row)].clone());
            let f = LaurentPoly::difference(&v).unwrap();
            prop_assert!(verify_annihilator(&f, &c, &region).unwrap().is_proven());
            prop_assert!(verify_annihilator(&(&h * &f), &c, &region).unwrap().is_proven());
            let xf = &LaurentPoly::x_pow(ExponentVector::from([i, j])) * &f;
            prop_assert!(verify_annihilator(&xf, &c, &region).unwrap().is_proven());
            Ok(())
        },
    ))
}

/// `Phi_d(t)` for `d` in 1..=4 with `t = X^v`.
fn cyclotomic(d: i64, v: &ExponentVector) -> LaurentPoly {
    let t = |k: i64| LaurentPoly::x_pow(v.scaled(k));
    let one = LaurentPoly::one(v.dim());
    match d {
        1 => &t(1) - &one,
        2 => &t(1) + &one,
        3 => &(&t(2) + &t(1)) + &one,
        4 => &t(2) + &one,
        _ => unreachable!(),
    }
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// One-periodic finitary configurations `h c0` annihilated by a product
/// `f` of distinct cyclotomic factors in `X^v`, where `f h = X^{N v} - 1`.
pub fn line_power_radicality() -> Result<(), String> {
    let region = Region::cube(2, -4, 4).unwrap();
    let dirs = [[1i64, 0], [0, 1], [1, 1], [1, -1], [2, 1], [1, 2]];
    let strat = (
        0usize..dirs.len(),
        1i64..=4,
        prop::collection::vec(any::<bool>(), 4),
        prop::collection::vec((-3i64..=3, -3i64..=3, 0i64..=2), 1..5),
        any::<bool>(),
    );
    check(runner().run(&strat, |(di, n, pick, pts, twist)| {
        let v = ExponentVector::from(dirs[di]);
        let ds = divisors(n);
        let mut f = LaurentPoly::one(2);
        let mut h = LaurentPoly::one(2);
        for (k, d) in ds.iter().enumerate() {
            if pick[k] {
                f = &f * &cyclotomic(*d, &v);
            } else {
                h = &h * &cyclotomic(*d, &v);
            }
        }
        let mut fp = FiberPeriodicConfig::new(&v.scaled(n).0, None).unwrap();
        for (x, y, val) in pts {
            fp.add_point(&[x, y], BigInt::from(val)).unwrap();
        }
        let c0 = Configuration::fiber_periodic(fp);
        let c = c0.poly_apply(&h).unwrap();
        // Optionally a polynomial that need not annihilate.
        let f = if twist { &f + &LaurentPoly::x_pow(ExponentVector::from([0, 0])) } else { f };
        if f.is_zero() || f.len() < 2 {
            return Ok(());
        }
        let sq = verify_annihilator(&(&f * &f), &c, &region).unwrap();
        let one = verify_annihilator(&f, &c, &region).unwrap();
        if sq.is_proven() {
            prop_assert!(one.is_proven(), "f^2 annihilates but f does not: {} on {:?}", f, c.describe());
        }
        prop_assert!(sq.is_proven() || !one.is_zero());
        Ok(())
    }))
}

/// A binary configuration on cosets of `<(m,0),(0,n)>`: each coset is either
/// `(m,0)`-periodic (value depends on the row) or `(0,n)`-periodic (value
/// depends on the column).
#[derive(Debug)]
pub struct CosetMix {
    m: i64,
    n: i64,
    horizontal: BTreeMap<(i64, i64), bool>,
    table: Vec<bool>,
}

impl CoefficientOracle for CosetMix {
    fn dim(&self) -> usize {
        2
    }

    fn value(&self, v: &[i64]) -> BigInt {
        let key = (v[0].rem_euclid(self.m), v[1].rem_euclid(self.n));
        let h = self.horizontal[&key];
        // Row index for horizontal cosets, column index otherwise.
        let t = if h { v[1] } else { v[0] };
        let idx = ((t * 7 + key.0 * 3 + key.1 * 5).rem_euclid(self.table.len() as i64)) as usize;
        BigInt::from(u8::from(self.table[idx]))
    }
}

pub fn sublattice_split_disjointness() -> Result<(), String> {
    let region = Region::cube(2, -9, 9).unwrap();
    let strat = (1i64..=3, 1i64..=3, prop::collection::vec(any::<bool>(), 9), prop::collection::vec(any::<bool>(), 11));
    check(runner().run(&strat, |(m, n, kinds, table)| {
        let mut horizontal = BTreeMap::new();
        let mut k = 0;
        for a in 0..m {
            for b in 0..n {
                horizontal.insert((a, b), kinds[k]);
                k += 1;
            }
        }
        let c = Configuration::from_oracle(Arc::new(CosetMix { m, n, horizontal, table }));
        let s = sublattice_split(&c, m, n, &region).unwrap();
        let w = c.window(&region).unwrap();
        let w1 = s.horizontal.window(&region).unwrap();
        let w2 = s.vertical.window(&region).unwrap();
        for ((x, a), b) in w.values.iter().zip(&w1.values).zip(&w2.values) {
            prop_assert!(a.is_zero() || b.is_zero());
            prop_assert_eq!(x, &(a + b));
        }
        Ok(())
    }))
}
