//! Acceptance criteria, one test per criterion.  Each test prints a single
//! `criterion NN: PASS|FAIL ...` line; run with `--nocapture` to see them.

mod suites;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use lowcomplexity::annihilate::{find_annihilator, find_difference_product, verify_annihilator, AnnihilationVerdict};
use lowcomplexity::builtins;
use lowcomplexity::complexity::{
    block_lines, distinct_patterns, find_period, morse_hedlund_1d, nivat_scan, BoundFlag, Verdict,
};
use lowcomplexity::config::{FiberPeriodicConfig, QuadraticIrrational};
use lowcomplexity::decompose::decompose_by_factors;
use lowcomplexity::tiling::{is_cotiler, prime_periodicity_check, tiling_identity_check, ClusterTile, CoTilerSet};
use lowcomplexity::{Configuration, Direction, ExactnessClass, ExponentVector, LaurentPoly, Region, Shape};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, name: &str, outcome: Result<String, String>) {
    match outcome {
        Ok(detail) => println!("criterion {id:02}: PASS {name} ({detail})"),
        Err(why) => {
            println!("criterion {id:02}: FAIL {name} ({why})");
            panic!("criterion {id} failed: {why}");
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn poly(s: &str, d: usize) -> LaurentPoly {
    LaurentPoly::parse(s, d).unwrap()
}

#[test]
fn criterion_01_two_lines_complexity() {
    report(
        1,
        "two-lines configuration, 4-cube, 33 patterns",
        (|| {
            let t = Instant::now();
            let c = builtins::two_lines(4);
            let r = distinct_patterns(&c, &Shape::cube(3, 4).unwrap(), &Region::cube(3, -12, 12).unwrap())
                .map_err(|e| e.to_string())?;
            let took = t.elapsed();
            ensure(r.count == 33, || format!("count {}", r.count))?;
            ensure(r.verdict == Verdict::Exact, || format!("verdict {:?}", r.verdict))?;
            ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
            Ok(format!("count 33, Exact, {took:.2?}"))
        })(),
    );
}

#[test]
fn criterion_02_cube_formula() {
    report(
        2,
        "P(n-cube) = 2n^2 + 1 for n = 3..6",
        (|| {
            for n in 3..=6usize {
                let c = builtins::two_lines(n as i64);
                let r = distinct_patterns(&c, &Shape::cube(3, n).unwrap(), &Region::cube(3, -12, 12).unwrap())
                    .map_err(|e| e.to_string())?;
                ensure(r.count == 2 * n * n + 1 && r.verdict == Verdict::Exact, || {
                    format!("n = {n}: count {} verdict {:?}", r.count, r.verdict)
                })?;
            }
            Ok("n = 3, 4, 5, 6 exact".into())
        })(),
    );
}

#[test]
fn criterion_03_two_lines_annihilator() {
    report(
        3,
        "(X^(1,0,0) - 1)(X^(0,0,1) - 1) annihilates the two lines",
        (|| {
            let c = builtins::two_lines(4);
            let f = poly("(x - 1)*(z - 1)", 3);
            let v = verify_annihilator(&f, &c, &Region::cube(3, -4, 4).unwrap()).map_err(|e| e.to_string())?;
            match v {
                AnnihilationVerdict::ProvenZero { class: ExactnessClass::FiberPeriodicFinite, ref domain } => {
                    Ok(format!("ProvenZero on {domain}"))
                }
                other => Err(format!("{other:?}")),
            }
        })(),
    );
}

#[test]
fn criterion_04_golden_configuration() {
    report(
        4,
        "golden configuration: alphabet, triple product, no period",
        (|| {
            let t = Instant::now();
            let c = builtins::golden();
            let w = c.window(&Region::cube(2, -200, 200).unwrap()).map_err(|e| e.to_string())?;
            ensure(w.values.iter().all(|x| x.is_zero() || x.is_one()), || "value outside {0,1}".into())?;
            let f = poly("(x - 1)*(y - 1)*(x*y^-1 - 1)", 2);
            let r100 = Region::cube(2, -100, 100).unwrap();
            let v = verify_annihilator(&f, &c, &r100).map_err(|e| e.to_string())?;
            ensure(v == AnnihilationVerdict::ZeroOnRegion { region: r100.clone() }, || format!("{v:?}"))?;
            let p = find_period(&c, 12, &r100).map_err(|e| e.to_string())?;
            ensure(p.is_none(), || format!("unexpected period {p:?}"))?;
            let took = t.elapsed();
            ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
            Ok(format!("{took:.2?}"))
        })(),
    );
}

#[test]
fn criterion_05_annihilator_search() {
    report(
        5,
        "pattern-kernel annihilator for the golden configuration",
        (|| {
            let t = Instant::now();
            let c = builtins::golden();
            let found = find_annihilator(&c, &Shape::rect(3, 3).unwrap(), &Region::cube(2, -64, 64).unwrap())
                .map_err(|e| e.to_string())?
                .ok_or("no annihilator found")?;
            ensure(!found.f.is_zero() && found.f.is_integral(), || format!("f = {}", found.f))?;
            let r80 = Region::cube(2, -80, 80).unwrap();
            let v = verify_annihilator(&found.f, &c, &r80).map_err(|e| e.to_string())?;
            ensure(v == AnnihilationVerdict::ZeroOnRegion { region: r80 }, || format!("{v:?}"))?;
            let took = t.elapsed();
            ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
            Ok(format!("f = {} with {} terms, {took:.2?}", found.f, found.f.len()))
        })(),
    );
}

#[test]
fn criterion_06_decomposition_round_trip() {
    report(
        6,
        "decomposition round trip",
        (|| {
            let cases = [
                (builtins::two_lines(4), vec![poly("x - 1", 3), poly("z - 1", 3)], Region::cube(3, -20, 20).unwrap()),
                (
                    builtins::golden(),
                    vec![poly("y - 1", 2), poly("x*y^-1 - 1", 2), poly("x - 1", 2)],
                    Region::cube(2, -20, 20).unwrap(),
                ),
            ];
            let mut notes = Vec::new();
            for (c, factors, region) in cases {
                let d = decompose_by_factors(&c, &factors, &region).map_err(|e| e.to_string())?;
                ensure(d.components.len() == factors.len(), || "component count".into())?;
                ensure(d.evidence.residual_max_abs.is_zero(), || format!("residual {}", d.evidence.residual_max_abs))?;
                // Independent re-summation on the window.
                let src = c.window(&region).map_err(|e| e.to_string())?;
                let mut sum = vec![BigInt::zero(); src.values.len()];
                let mut max_abs = BigInt::zero();
                for comp in &d.components {
                    for (s, x) in sum.iter_mut().zip(comp.window(&region).map_err(|e| e.to_string())?.values) {
                        if x.magnitude() > max_abs.magnitude() {
                            max_abs = x.clone();
                        }
                        *s += x;
                    }
                }
                ensure(sum == src.values, || "components do not sum to the source".into())?;
                for (i, (comp, f)) in d.components.iter().zip(&factors).enumerate() {
                    let (lo, hi) = f.support_range().unwrap();
                    let inner = region.shrink_by_support(&lo, &hi).unwrap();
                    let v = verify_annihilator(f, comp, &inner).map_err(|e| e.to_string())?;
                    ensure(v.is_zero(), || format!("component {i}: {v:?}"))?;
                }
                notes.push(format!("{} components, largest |value| {}", d.components.len(), max_abs.magnitude()));
            }
            Ok(notes.join("; "))
        })(),
    );
}

fn golden_word(len: i64) -> Vec<i64> {
    let g = QuadraticIrrational::golden();
    (0..len).map(|k| i64::try_from(g.floor_multiple(k + 1) - g.floor_multiple(k)).unwrap()).collect()
}

#[test]
fn criterion_07_morse_hedlund() {
    report(
        7,
        "Morse-Hedlund on eventually periodic and Sturmian words",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for case in 0..50 {
                let p: usize = rng.gen_range(1..=10);
                let pre: usize = rng.gen_range(0..=2);
                let len: usize = rng.gen_range(100..=160);
                let block: Vec<u8> = (0..p).map(|_| rng.gen_range(0..3)).collect();
                let mut word: Vec<u8> = (0..pre).map(|_| rng.gen_range(0..3)).collect();
                while word.len() < len {
                    word.push(block[(word.len() - pre) % p]);
                }
                let n = p + 2;
                let mh = morse_hedlund_1d(&word, n).map_err(|e| e.to_string())?;
                ensure(mh.count <= n, || format!("case {case}: {} factors of length {n}", mh.count))?;
                let found = mh.period.ok_or_else(|| format!("case {case}: no period detected"))?;
                ensure(p.is_multiple_of(found), || format!("case {case}: detected {found}, true {p}"))?;
            }
            let word = golden_word(1000);
            for n in 1..=30 {
                let mh = morse_hedlund_1d(&word, n).map_err(|e| e.to_string())?;
                ensure(mh.count == n + 1, || format!("Sturmian n = {n}: {} factors", mh.count))?;
                ensure(mh.period.is_none(), || format!("Sturmian n = {n}: spurious period"))?;
            }
            Ok("50 random words, Sturmian n = 1..30".into())
        })(),
    );
}

#[test]
fn criterion_08_frobenius() {
    report(
        8,
        "f^p = f(X^p) mod p",
        (|| {
            let mut rng = ChaCha8Rng::seed_from_u64(8);
            for case in 0..100 {
                let k = rng.gen_range(1..=6);
                let terms: Vec<(ExponentVector, num_rational::BigRational)> = (0..k)
                    .map(|_| {
                        let e = ExponentVector::from([rng.gen_range(-4..=4), rng.gen_range(-4..=4)]);
                        (e, num_rational::BigRational::from_integer(rng.gen_range(-9i64..=9).into()))
                    })
                    .collect();
                let f = LaurentPoly::from_terms(2, terms).unwrap();
                for p in [2u64, 3, 5, 7] {
                    let r = f.frobenius_residue(p).map_err(|e| e.to_string())?;
                    ensure(r.is_zero(), || format!("case {case}, p = {p}: residue {r} for {f}"))?;
                }
            }
            Ok("100 polynomials x 4 primes".into())
        })(),
    );
}

/// `(x, y)` lies in the lattice with rows `(a, s)`, `(0, b)`.
fn in_hnf_lattice(a: i64, s: i64, b: i64, x: i64, y: i64) -> bool {
    x.rem_euclid(a) == 0 && (y - (x / a) * s).rem_euclid(b) == 0
}

/// First lattice co-tiler of `tile` among Hermite bases of index `|tile|`,
/// decided by counting covers on a box.
fn search_lattice_cotiler(tile: &[[i64; 2]]) -> Option<Vec<Vec<i64>>> {
    let k = tile.len() as i64;
    for a in 1..=k {
        if k % a != 0 {
            continue;
        }
        let b = k / a;
        for s in 0..b {
            let tiles = (0..2 * k).all(|x| {
                (0..2 * k).all(|y| tile.iter().filter(|t| in_hnf_lattice(a, s, b, x - t[0], y - t[1])).count() == 1)
            });
            if tiles {
                return Some(vec![vec![a, s], vec![0, b]]);
            }
        }
    }
    None
}

#[test]
fn criterion_09_prime_tiling() {
    report(
        9,
        "prime-size tiles force p(v - u) periods",
        (|| {
            let c3 = CoTilerSet::lattice(vec![vec![3]]).map_err(|e| e.to_string())?;
            let d1 = ClusterTile::new(vec![[0].into(), [1].into(), [2].into()]).unwrap();
            ensure(is_cotiler(&d1, &c3).map_err(|e| e.to_string())?.is_tiling(), || "1D pair rejected".into())?;
            let checks = prime_periodicity_check(&d1, &c3).map_err(|e| e.to_string())?;
            ensure(checks.len() == 6 && checks.iter().all(|c| c.verdict.is_proven()), || "1D periods".into())?;

            let cells = [[0i64, 0], [1, 0], [0, 1]];
            let basis = search_lattice_cotiler(&cells).ok_or("search found no lattice co-tiler")?;
            let c = CoTilerSet::lattice(basis.clone()).map_err(|e| e.to_string())?;
            let d2 = ClusterTile::new(cells.iter().map(|v| ExponentVector::from(*v)).collect()).unwrap();
            ensure(is_cotiler(&d2, &c).map_err(|e| e.to_string())?.is_tiling(), || "2D pair rejected".into())?;
            let id = tiling_identity_check(&d2, &c).map_err(|e| e.to_string())?;
            ensure(id.max_deviation.is_zero(), || format!("identity deviation {}", id.max_deviation))?;
            let checks = prime_periodicity_check(&d2, &c).map_err(|e| e.to_string())?;
            ensure(checks.len() == 6 && checks.iter().all(|c| c.verdict.is_proven()), || "2D periods".into())?;
            Ok(format!("3Z and lattice {basis:?}"))
        })(),
    );
}

#[test]
fn criterion_10_disjoint_lines() {
    report(
        10,
        "disjoint lines of blocks in one-periodic configurations",
        (|| {
            let region = Region::cube(2, -20, 20).unwrap();
            let mut notes = Vec::new();
            for (period, fpoly) in [([2i64, 1], "x^2*y - 1"), ([2, 2], "x^2*y^2 - 1")] {
                let mut fp = FiberPeriodicConfig::new(&period, None).unwrap();
                fp.add_point(&[0, 0], BigInt::one()).unwrap();
                let c = Configuration::fiber_periodic(fp);
                let f = poly(fpoly, 2);
                let v = verify_annihilator(&f, &c, &region).map_err(|e| e.to_string())?;
                ensure(v.is_proven(), || format!("{fpoly}: {v:?}"))?;
                let fb = f.bounding_box().unwrap().extents;
                let (mf, nf) = (fb[0] as usize, fb[1] as usize);
                let dir = Direction::of(&ExponentVector::from(period)).unwrap();
                let (m, n) = (dir.vector().0[0].unsigned_abs() as usize, dir.vector().0[1].unsigned_abs() as usize);
                for (mm, nn) in [(mf + 2, nf + 2), (mf + 4, nf + 3)] {
                    let rep = block_lines(&c, &dir, mm, nn, &region).map_err(|e| e.to_string())?;
                    let bound = (mm - mf) * n + m * (nn - nf);
                    ensure(rep.disjoint_count >= bound, || {
                        format!("{fpoly} at ({mm},{nn}): {} < {bound}", rep.disjoint_count)
                    })?;
                    notes.push(format!("{}>={bound}", rep.disjoint_count));
                }
            }
            Ok(notes.join(", "))
        })(),
    );
}

/// Golden-configuration rectangle counts for `m, n = 1..=6` on anchors in
/// `[-64, 64]^2`, row `m - 1`, column `n - 1`.
const GOLDEN_COUNTS: [[usize; 6]; 6] = [
    [2, 4, 8, 14, 22, 32],
    [4, 12, 20, 30, 42, 56],
    [8, 20, 30, 42, 56, 72],
    [14, 30, 42, 56, 72, 90],
    [22, 42, 56, 72, 90, 110],
    [32, 56, 72, 90, 110, 132],
];

fn isqrt(n: i128) -> i128 {
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `floor(k phi)` from `phi k = (k + sqrt(5 k^2)) / 2`.
fn floor_phi(k: i64) -> i64 {
    let k = k as i128;
    let s = isqrt(5 * k * k);
    let v = if k >= 0 { (k + s).div_euclid(2) } else { (k - s - 1).div_euclid(2) };
    v as i64
}

fn golden_oracle(i: i64, j: i64) -> i64 {
    floor_phi(i + j) - floor_phi(i) - floor_phi(j)
}

#[test]
fn golden_oracle_matches_library() {
    let c = builtins::golden();
    for i in -50..50 {
        for j in -50..50 {
            assert_eq!(c.value(&[i, j]), BigInt::from(golden_oracle(i, j)), "({i},{j})");
        }
    }
}

#[test]
fn criterion_11_nivat_scan() {
    report(
        11,
        "Nivat scan of the golden configuration",
        (|| {
            let region = Region::cube(2, -64, 64).unwrap();
            let rows = nivat_scan(&builtins::golden(), 6, 6, &region).map_err(|e| e.to_string())?;
            ensure(rows.len() == 36, || format!("{} rows", rows.len()))?;
            for row in &rows {
                let frozen = GOLDEN_COUNTS[row.m - 1][row.n - 1];
                ensure(row.count == frozen, || format!("({},{}): {} vs frozen {frozen}", row.m, row.n, row.count))?;
                if row.m >= 2 && row.n >= 2 {
                    ensure(row.flag == BoundFlag::AboveBound, || format!("({},{}) not above mn", row.m, row.n))?;
                }
            }
            // Independent brute-force count.
            for m in 2..=6i64 {
                for n in 2..=6i64 {
                    let mut seen = HashSet::new();
                    for i in -64..=64 {
                        for j in -64..=64 {
                            let pat: Vec<i64> = (0..m)
                                .flat_map(|a| (0..n).map(move |b| (a, b)))
                                .map(|(a, b)| golden_oracle(i + a, j + b))
                                .collect();
                            seen.insert(pat);
                        }
                    }
                    let frozen = GOLDEN_COUNTS[(m - 1) as usize][(n - 1) as usize];
                    ensure(seen.len() == frozen, || format!("oracle ({m},{n}): {} vs {frozen}", seen.len()))?;
                }
            }
            Ok("25 rows AboveBound, counts match oracle and goldens".into())
        })(),
    );
}

type Suite = fn() -> Result<(), String>;

#[test]
fn criterion_12_property_suites() {
    report(
        12,
        "randomized invariant suites, 100 cases each",
        (|| {
            let suites: [(&str, Suite); 6] = [
                ("ring axioms", suites::ring_axioms),
                ("substitution composition", suites::substitution_composition),
                ("Minkowski support", suites::minkowski_support),
                ("ideal and monomial closure", suites::ideal_monomial_closure),
                ("line-power radicality", suites::line_power_radicality),
                ("sublattice split disjointness", suites::sublattice_split_disjointness),
            ];
            for (name, run) in suites {
                run().map_err(|e| format!("{name}: {e}"))?;
            }
            Ok(format!("6 suites, seed {:#x}", suites::SEED))
        })(),
    );
}

#[test]
fn difference_product_for_golden_is_the_axis_triple() {
    let c = builtins::golden();
    let p = find_difference_product(&c, 2, 3, &Region::cube(2, -40, 40).unwrap()).unwrap().unwrap();
    assert_eq!(p.vectors, vec![ExponentVector::from([0, 1]), [1, -1].into(), [1, 0].into()]);
    assert!(matches!(p.verdict, AnnihilationVerdict::ZeroOnRegion { .. }));
    let rows = nivat_scan(&c, 2, 2, &Region::cube(2, -10, 10).unwrap()).unwrap();
    assert!(rows.iter().all(|r| r.verdict == Verdict::WindowLowerBound));
}
