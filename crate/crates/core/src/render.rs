//! Text and image renderings of windows.
//!
//! Two-dimensional windows are drawn with the second coordinate increasing
//! upwards: the first output row is the largest `y`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::config::Window;
use crate::error::{Error, Result};
use crate::region::Region;

pub const LEGEND: &str = "legend: '.' = 0, '#' = 1, other values = hex digit of (value mod 16)";

pub fn glyph(x: &BigInt) -> char {
    if x.is_zero() {
        '.'
    } else if *x == BigInt::from(1) {
        '#'
    } else {
        let d = x.mod_floor(&BigInt::from(16)).to_u32().expect("residue below 16");
        char::from_digit(d, 16).expect("hex digit")
    }
}

fn slice_rows(win: &Window, fixed: &[i64], out: &mut String) {
    let r = &win.region;
    let (x0, x1) = (r.lo[0], r.hi[0]);
    let (y0, y1) = if r.dim() >= 2 { (r.lo[1], r.hi[1]) } else { (0, 0) };
    for y in (y0..=y1).rev() {
        for x in x0..=x1 {
            let mut p = vec![x];
            if r.dim() >= 2 {
                p.push(y);
            }
            p.extend_from_slice(fixed);
            out.push(glyph(win.get(&p).expect("inside window")));
        }
        out.push('\n');
    }
}

/// Character grid of a window of dimension 1, 2 or 3.  Three-dimensional
/// windows are drawn as slices of constant third coordinate.
pub fn ascii(win: &Window) -> Result<String> {
    let r = &win.region;
    let mut out = String::new();
    match r.dim() {
        1 | 2 => slice_rows(win, &[], &mut out),
        3 => {
            for z in r.lo[2]..=r.hi[2] {
                let _ = writeln!(out, "z = {z}");
                slice_rows(win, &[z], &mut out);
            }
        }
        d => return Err(Error::DimensionMismatch { expected: 2, got: d }),
    }
    Ok(out)
}

/// Affine map from window values to gray levels, recorded next to images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrayMapping {
    pub region: Region,
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub min: BigInt,
    #[serde(serialize_with = "crate::serde_big::ser")]
    pub max: BigInt,
    /// How a value becomes a gray level.
    pub rule: &'static str,
    pub width: usize,
    pub height: usize,
}

fn gray(x: &BigInt, lo: &BigInt, span: &BigInt) -> u8 {
    if span.is_zero() {
        return 0;
    }
    // round(255 (x - lo) / span)
    let num: BigInt = (x - lo) * 510 + span;
    let den: BigInt = span * 2;
    num.div_floor(&den).to_u8().expect("level in 0..=255")
}

/// Binary PPM (P6) with equal RGB channels, rows from the largest `y` down.
pub fn ppm(win: &Window) -> Result<(Vec<u8>, GrayMapping)> {
    let r = &win.region;
    if r.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: r.dim() });
    }
    let ext = r.extents();
    let (w, h) = (ext[0], ext[1]);
    let (lo, hi) = win.min_max();
    let span = &hi - &lo;
    let mut out = format!("P6\n{w} {h}\n255\n").into_bytes();
    out.reserve(w * h * 3);
    for y in (r.lo[1]..=r.hi[1]).rev() {
        for x in r.lo[0]..=r.hi[0] {
            let g = gray(win.get(&[x, y]).expect("inside window"), &lo, &span);
            out.extend_from_slice(&[g, g, g]);
        }
    }
    let mapping = GrayMapping {
        region: r.clone(),
        min: lo,
        max: hi,
        rule: "level = round(255 * (value - min) / (max - min)); 0 when max = min",
        width: w,
        height: h,
    };
    Ok((out, mapping))
}
