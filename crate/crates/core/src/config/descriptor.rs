//! JSON descriptors for configurations.
//!
//! ```json
//! {"type": "sum", "terms": [
//!   {"type": "beatty", "alpha": {"p": 1, "s": 1, "q": 5, "r": 2}, "weights": [1, 1]},
//!   {"type": "scale", "factor": -1, "config":
//!     {"type": "beatty", "alpha": {"p": 1, "s": 1, "q": 5, "r": 2}, "weights": [1, 0]}}
//! ]}
//! ```

use std::collections::BTreeSet;
use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{BeattyConfig, Configuration, FiberPeriodicConfig, FullPeriodicConfig, QuadraticIrrational, TwoSidedSeq};
use crate::builtins;
use crate::error::{Error, Result};
use crate::lpoly::{ExponentVector, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    pub at: Vec<i64>,
    pub value: i64,
}

/// One fiber: position `j` of the listed values sits at
/// `base + (start + j) * complement`; optional periodic tails continue the
/// sequence on either side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSpec {
    pub base: Vec<i64>,
    #[serde(default)]
    pub start: i64,
    pub values: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Descriptor {
    Constant {
        dim: usize,
        value: i64,
    },
    FullPeriodic {
        basis: Vec<Vec<i64>>,
        /// One value per canonical coset representative, in row-major order
        /// of the Hermite box.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        values: Option<Vec<i64>>,
        /// Alternative to `values`: points whose cosets carry 1.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        ones: Option<Vec<Vec<i64>>>,
    },
    FiberPeriodic {
        period: Vec<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complement: Option<Vec<i64>>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        points: Vec<PointValue>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        fibers: Vec<FiberSpec>,
    },
    Beatty {
        alpha: QuadraticIrrational,
        weights: Vec<i64>,
    },
    Sum {
        terms: Vec<Descriptor>,
    },
    Difference {
        left: Box<Descriptor>,
        right: Box<Descriptor>,
    },
    Scale {
        factor: i64,
        config: Box<Descriptor>,
    },
    Translate {
        by: Vec<i64>,
        config: Box<Descriptor>,
    },
    Mirror {
        axis: usize,
        config: Box<Descriptor>,
    },
    PolyApply {
        poly: String,
        config: Box<Descriptor>,
    },
    Binarize {
        ones: Vec<i64>,
        config: Box<Descriptor>,
    },
    Alphabet {
        values: Vec<i64>,
        config: Box<Descriptor>,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<i64>,
    },
}

fn big_set(v: &[i64]) -> BTreeSet<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

impl Descriptor {
    pub fn from_json(text: &str) -> Result<Descriptor> {
        serde_json::from_str(text).map_err(|e| Error::Descriptor(format!("invalid descriptor: {e}")))
    }

    pub fn load(path: &Path) -> Result<Descriptor> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Descriptor(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn build(&self) -> Result<Configuration> {
        match self {
            Descriptor::Constant { dim, value } => {
                if *dim == 0 {
                    return Err(Error::Invalid("dimension must be positive".into()));
                }
                Ok(Configuration::constant(*dim, *value))
            }
            Descriptor::FullPeriodic { basis, values, ones } => {
                let p = match (values, ones) {
                    (Some(v), None) => FullPeriodicConfig::new(basis.clone(), bigs(v))?,
                    (None, Some(o)) => FullPeriodicConfig::indicator(basis.clone(), o)?,
                    _ => return Err(Error::Descriptor("full_periodic needs exactly one of `values` or `ones`".into())),
                };
                Ok(Configuration::full_periodic(p))
            }
            Descriptor::FiberPeriodic { period, complement, points, fibers } => {
                let mut p = FiberPeriodicConfig::new(period, complement.as_deref())?;
                for f in fibers {
                    let seq = TwoSidedSeq::new(f.start, bigs(&f.values), bigs(&f.left), bigs(&f.right));
                    p.set_fiber(&f.base, seq)?;
                }
                for pv in points {
                    p.add_point(&pv.at, BigInt::from(pv.value))?;
                }
                Ok(Configuration::fiber_periodic(p))
            }
            Descriptor::Beatty { alpha, weights } => {
                let a = QuadraticIrrational::new(alpha.p, alpha.s, alpha.q, alpha.r)?;
                Ok(Configuration::beatty(BeattyConfig::new(a, weights.clone())?))
            }
            Descriptor::Sum { terms } => {
                Configuration::sum(terms.iter().map(Descriptor::build).collect::<Result<_>>()?)
            }
            Descriptor::Difference { left, right } => left.build()?.sub(&right.build()?),
            Descriptor::Scale { factor, config } => Ok(config.build()?.scale(*factor)),
            Descriptor::Translate { by, config } => config.build()?.translate(&ExponentVector(by.clone())),
            Descriptor::Mirror { axis, config } => config.build()?.mirror(*axis),
            Descriptor::PolyApply { poly, config } => {
                let c = config.build()?;
                c.poly_apply(&LaurentPoly::parse(poly, c.dim())?)
            }
            Descriptor::Binarize { ones, config } => config.build()?.binarize(big_set(ones)),
            Descriptor::Alphabet { values, config } => Ok(config.build()?.with_alphabet(big_set(values))),
            Descriptor::Builtin { name, n } => builtins::by_name(name, *n),
        }
    }
}

/// Reads and builds a descriptor file.
pub fn load_config(path: &Path) -> Result<Configuration> {
    Descriptor::load(path)?.build()
}
