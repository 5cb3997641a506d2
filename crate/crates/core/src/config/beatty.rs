//! Exact floors of integer multiples of quadratic irrationals.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The real number `(p + s*sqrt(q)) / r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticIrrational {
    pub p: i64,
    pub s: i64,
    pub q: i64,
    pub r: i64,
}

impl QuadraticIrrational {
    pub fn new(p: i64, s: i64, q: i64, r: i64) -> Result<Self> {
        if r == 0 {
            return Err(Error::Invalid("denominator r must be nonzero".into()));
        }
        if q < 0 {
            return Err(Error::Invalid("radicand q must be non-negative".into()));
        }
        Ok(QuadraticIrrational { p, s, q, r })
    }

    /// `(1 + sqrt 5) / 2`.
    pub fn golden() -> Self {
        QuadraticIrrational { p: 1, s: 1, q: 5, r: 2 }
    }

    pub fn floor_multiple(&self, k: i64) -> BigInt {
        beatty_floor(self.p, self.s, self.q, self.r, k).expect("validated at construction")
    }
}

/// `floor(k * (p + s*sqrt(q)) / r)` in exact integer arithmetic.
pub fn beatty_floor(p: i64, s: i64, q: i64, r: i64, k: i64) -> Result<BigInt> {
    if r == 0 {
        return Err(Error::Invalid("denominator r must be nonzero".into()));
    }
    if q < 0 {
        return Err(Error::Invalid("radicand q must be non-negative".into()));
    }
    if let Some(v) = floor_small(p, s, q, r, k) {
        return Ok(BigInt::from(v));
    }
    Ok(floor_big(p, s, q, r, k))
}

fn floor_small(p: i64, s: i64, q: i64, r: i64, k: i64) -> Option<i128> {
    let (mut a, mut b, mut r) = ((k as i128).checked_mul(p as i128)?, (k as i128).checked_mul(s as i128)?, r as i128);
    if r < 0 {
        (a, b, r) = (-a, -b, -r);
    }
    let n = b.checked_mul(b)?.checked_mul(q as i128)?;
    let root = (n as u128).sqrt() as i128;
    let fl = if b >= 0 {
        root
    } else if root * root == n {
        -root
    } else {
        -root - 1
    };
    Some(Integer::div_floor(&a.checked_add(fl)?, &r))
}

fn floor_big(p: i64, s: i64, q: i64, r: i64, k: i64) -> BigInt {
    let k = BigInt::from(k);
    let mut a = &k * p;
    let mut b = &k * s;
    let mut r = BigInt::from(r);
    if r.is_negative() {
        a = -a;
        b = -b;
        r = -r;
    }
    let n = &b * &b * q;
    let root = n.sqrt();
    let fl = if !b.is_negative() {
        root
    } else if &root * &root == n {
        -root
    } else {
        -root - 1
    };
    (a + fl).div_floor(&r)
}

/// `c(v) = floor(<w, v> * alpha)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BeattyConfig {
    pub alpha: QuadraticIrrational,
    pub weights: Vec<i64>,
}

impl BeattyConfig {
    pub fn new(alpha: QuadraticIrrational, weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty("weight vector"));
        }
        Ok(BeattyConfig { alpha, weights })
    }

    pub fn value(&self, v: &[i64]) -> BigInt {
        let k: i64 = self.weights.iter().zip(v).map(|(w, x)| w * x).sum();
        self.alpha.floor_multiple(k)
    }
}
