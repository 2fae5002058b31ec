//! Grayscale multiply-blend through an arbitrary multiplier, binary PGM
//! I/O and SNR scoring.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::multiplier::Multiplier;
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != width * height {
            return Err(Error::Pgm(format!(
                "{} samples for a {width}x{height} image",
                data.len()
            )));
        }
        Ok(GrayImage { width, height, data })
    }

    pub fn from_fn(width: usize, height: usize, f: impl Fn(usize, usize) -> u8) -> Self {
        let data = (0..height)
            .flat_map(|y| (0..width).map(move |x| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        GrayImage { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Row-major samples.
    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    fn check_same(&self, other: &GrayImage) -> Result<()> {
        if (self.width, self.height) != (other.width, other.height) {
            return Err(Error::DimensionMismatch(
                self.width,
                self.height,
                other.width,
                other.height,
            ));
        }
        Ok(())
    }
}

/// Parses a binary (`P5`) PGM with maxval 255.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    let mut pos = 0;
    let mut fields = [0usize; 3];
    let magic = next_token(bytes, &mut pos)?;
    if magic != b"P5" {
        return Err(Error::Pgm("not a binary PGM (expected P5)".into()));
    }
    for field in &mut fields {
        let tok = next_token(bytes, &mut pos)?;
        *field = std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Pgm(format!("bad header field `{}`", String::from_utf8_lossy(tok))))?;
    }
    let [width, height, maxval] = fields;
    if maxval != 255 {
        return Err(Error::Pgm(format!("maxval {maxval} unsupported (need 255)")));
    }
    // Exactly one whitespace byte separates the header from the raster.
    match bytes.get(pos) {
        Some(b) if b.is_ascii_whitespace() => pos += 1,
        _ => return Err(Error::Pgm("missing raster separator".into())),
    }
    let len = width
        .checked_mul(height)
        .ok_or_else(|| Error::Pgm("image too large".into()))?;
    let raster = bytes.get(pos..pos + len).ok_or_else(|| {
        Error::Pgm(format!(
            "truncated raster: need {len} bytes, have {}",
            bytes.len() - pos
        ))
    })?;
    GrayImage::new(width, height, raster.to_vec())
}

fn next_token<'a>(bytes: &'a [u8], pos: &mut usize) -> Result<&'a [u8]> {
    loop {
        match bytes.get(*pos) {
            Some(b'#') => {
                while bytes.get(*pos).is_some_and(|&b| b != b'\n') {
                    *pos += 1;
                }
            }
            Some(b) if b.is_ascii_whitespace() => *pos += 1,
            Some(_) => break,
            None => return Err(Error::Pgm("truncated header".into())),
        }
    }
    let start = *pos;
    while bytes.get(*pos).is_some_and(|b| !b.is_ascii_whitespace()) {
        *pos += 1;
    }
    Ok(&bytes[start..*pos])
}

pub fn write_pgm(img: &GrayImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", img.width, img.height).into_bytes();
    out.extend_from_slice(&img.data);
    out
}

#[inline]
fn rescale(product: u64) -> u8 {
    (product / 255).min(255) as u8
}

/// `out[i] = min(255, floor(m(a[i], b[i]) / 255))`, with pixels
/// zero-extended to the multiplier's width.
pub fn blend<M: Multiplier + ?Sized>(a: &GrayImage, b: &GrayImage, m: &M) -> Result<GrayImage> {
    a.check_same(b)?;
    let mut data = vec![0u8; a.data.len()];
    let row = a.width.max(1);
    data.par_chunks_mut(row)
        .zip(a.data.par_chunks(row).zip(b.data.par_chunks(row)))
        .for_each(|(out, (ra, rb))| {
            for ((o, &x), &y) in out.iter_mut().zip(ra).zip(rb) {
                *o = rescale(m.mul(x as u64, y as u64));
            }
        });
    Ok(GrayImage { data, ..a.clone() })
}

/// The blend computed with integer multiplication.
pub fn blend_reference(a: &GrayImage, b: &GrayImage) -> Result<GrayImage> {
    a.check_same(b)?;
    let data = a
        .data
        .iter()
        .zip(&b.data)
        .map(|(&x, &y)| rescale(x as u64 * y as u64))
        .collect();
    Ok(GrayImage { data, ..a.clone() })
}

/// `10·log10(Σ ref² / Σ (ref − test)²)` in dB. Identical images give +∞,
/// an all-zero reference with any noise gives −∞.
pub fn snr<F: Scalar>(reference: &GrayImage, test: &GrayImage) -> Result<F> {
    reference.check_same(test)?;
    let (mut signal, mut noise) = (0u128, 0u128);
    for (&r, &t) in reference.data.iter().zip(&test.data) {
        let d = (r as i64 - t as i64).unsigned_abs() as u128;
        signal += (r as u128) * (r as u128);
        noise += d * d;
    }
    Ok(if noise == 0 {
        F::infinity()
    } else if signal == 0 {
        F::neg_infinity()
    } else {
        F::from(10.0).unwrap() * (F::from(signal).unwrap() / F::from(noise).unwrap()).log10()
    })
}
