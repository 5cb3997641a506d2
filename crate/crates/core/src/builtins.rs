//! Built-in configurations used by the examples, tests and the CLI.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::config::{BeattyConfig, CoefficientOracle, Configuration, FiberPeriodicConfig, QuadraticIrrational};
use crate::error::{Error, Result};
use crate::lpoly::ExponentVector;
use crate::region::Shape;

/// Names accepted by [`by_name`].
pub const NAMES: &[&str] =
    &["two_lines", "two_lines_c1", "two_lines_c2", "golden", "golden_c1", "golden_c2", "golden_c3", "t_shape"];

fn binary() -> BTreeSet<BigInt> {
    [BigInt::from(0), BigInt::from(1)].into()
}

/// The two lines `c(i,0,0) = 1` and `c(0,n,i) = 1` in `Z^3`, as separate
/// one-periodic configurations.
pub fn two_lines_components(n: i64) -> (Configuration, Configuration) {
    let mut a = FiberPeriodicConfig::new(&[1, 0, 0], Some(&[0, 1, 0])).expect("valid frame");
    a.add_point(&[0, 0, 0], BigInt::from(1)).expect("dimension 3");
    let mut b = FiberPeriodicConfig::new(&[0, 0, 1], Some(&[1, 0, 0])).expect("valid frame");
    b.add_point(&[0, n, 0], BigInt::from(1)).expect("dimension 3");
    (Configuration::fiber_periodic(a), Configuration::fiber_periodic(b))
}

/// Two perpendicular lines of 1s at distance `n` on a 0 background.
pub fn two_lines(n: i64) -> Configuration {
    let (a, b) = two_lines_components(n);
    a.add(&b).expect("same dimension").with_alphabet(binary())
}

/// `floor(i a)`, `floor(j a)` and `floor((i+j) a)` for the golden ratio `a`.
pub fn golden_components() -> [Configuration; 3] {
    let g = QuadraticIrrational::golden();
    let mk = |w: Vec<i64>| Configuration::beatty(BeattyConfig::new(g, w).expect("nonempty weights"));
    [mk(vec![1, 0]), mk(vec![0, 1]), mk(vec![1, 1])]
}

/// `floor((i+j) a) - floor(i a) - floor(j a)` for the golden ratio `a`,
/// declared over `{0, 1}`.
pub fn golden() -> Configuration {
    let [c1, c2, c3] = golden_components();
    Configuration::sum(vec![c3, c1.scale(-1), c2.scale(-1)]).expect("same dimension").with_alphabet(binary())
}

/// A T-shaped tile: a bar of width `w` on row `h - 1` and a stem of height
/// `h` in column `stem`.
pub fn t_shape(w: i64, h: i64, stem: i64) -> Result<Shape> {
    if w < 1 || h < 1 || !(0..w).contains(&stem) {
        return Err(Error::Invalid("T-shape needs w, h >= 1 and 0 <= stem < w".into()));
    }
    let mut pts: Vec<ExponentVector> = (0..w).map(|x| ExponentVector(vec![x, h - 1])).collect();
    pts.extend((0..h).map(|y| ExponentVector(vec![stem, y])));
    Shape::new(pts)
}

/// Indicator function of a finite set of points.
#[derive(Debug)]
pub struct FiniteSet {
    dim: usize,
    points: BTreeSet<Vec<i64>>,
}

impl FiniteSet {
    pub fn new(shape: &Shape) -> Self {
        FiniteSet { dim: shape.dim(), points: shape.points().iter().map(|p| p.0.clone()).collect() }
    }
}

impl CoefficientOracle for FiniteSet {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, v: &[i64]) -> BigInt {
        BigInt::from(u8::from(self.points.contains(v)))
    }

    fn alphabet(&self) -> Option<BTreeSet<BigInt>> {
        Some(binary())
    }

    fn name(&self) -> String {
        format!("finite_set({} points)", self.points.len())
    }
}

pub fn by_name(name: &str, n: Option<i64>) -> Result<Configuration> {
    let n = n.unwrap_or(4);
    if name.starts_with("two_lines") && n < 1 {
        return Err(Error::Invalid("two_lines needs n >= 1".into()));
    }
    let [g1, g2, g3] = golden_components();
    match name {
        "two_lines" => Ok(two_lines(n)),
        "two_lines_c1" => Ok(two_lines_components(n).0),
        "two_lines_c2" => Ok(two_lines_components(n).1),
        "golden" => Ok(golden()),
        "golden_c1" => Ok(g1),
        "golden_c2" => Ok(g2),
        "golden_c3" => Ok(g3),
        "t_shape" => Ok(Configuration::from_oracle(Arc::new(FiniteSet::new(&t_shape(5, 3, 2)?)))),
        _ => Err(Error::Invalid(format!("unknown built-in `{name}`; known: {}", NAMES.join(", ")))),
    }
}
