//! Exact analysis of low-complexity configurations over `Z^d`.
//!
//! * [`lpoly`]: sparse Laurent polynomials with rational coefficients.
//! * [`config`]: configurations as exact coefficient oracles.
//! * [`complexity`]: pattern counting, Nivat scans, lines of blocks,
//!   period search and the Morse–Hedlund check for words.
//! * [`annihilate`]: finding, verifying and normalizing annihilating
//!   polynomials.
//! * [`decompose`]: splitting a configuration into periodic components by
//!   discrete integration.
//! * [`tiling`]: co-tiler verification for cluster tiles.
//!
//! All arithmetic is exact.  Claims are reported with an explicit evidence
//! tier: proven for the whole configuration, or observed on a finite region.

pub mod annihilate;
pub mod builtins;
pub mod complexity;
pub mod config;
pub mod decompose;
pub mod error;
pub mod lattice;
pub mod lpoly;
pub mod region;
pub mod render;
pub mod tiling;

pub(crate) mod serde_big {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn ser<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn ser_vec<S: Serializer>(xs: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(|x| x.to_string()))
    }
}

pub use config::{Configuration, ExactnessClass, Window};
pub use error::{Error, Result};
pub use lpoly::{parse_poly, BoundingBox, Direction, ExponentVector, LaurentPoly, LineInfo};
pub use region::{Region, Shape};
