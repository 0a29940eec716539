//! NEQR image model: raster ingestion, per-bitplane minterm extraction and
//! the classical position → color lookup the prepared state must encode.
//!
//! Positions are indexed `y << w | x`, which is also the minterm index of a
//! cube over `h + w` variables (y bits first, most significant first).
//! Color line `C_j` carries bit `q - 1 - j` of the value, so `C_0` is the
//! most significant bitplane.

use std::path::Path;

use image::DynamicImage;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::esop::{Cube, EsopCover};

/// Largest supported bit depth per channel.
pub const MAX_DEPTH: usize = 16;

/// Largest supported `h + w`.
pub const MAX_POSITION_BITS: usize = 32;

/// A `2^h × 2^w` raster with `q` bits per channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeqrImage {
    h: usize,
    w: usize,
    q: usize,
    channels: usize,
    pixels: Vec<u16>,
    /// Raster size before padding.
    source: (usize, usize),
}

impl NeqrImage {
    /// Wraps a row-major, channel-interleaved pixel array whose dimensions are
    /// already powers of two.
    pub fn new(h: usize, w: usize, q: usize, channels: usize, pixels: Vec<u16>) -> Result<NeqrImage> {
        if channels != 1 && channels != 3 {
            return Err(Error::InvalidImage(format!("{channels} channels; expected 1 or 3")));
        }
        if q == 0 || q > MAX_DEPTH {
            return Err(Error::InvalidImage(format!("bit depth {q} outside 1..={MAX_DEPTH}")));
        }
        if h + w > MAX_POSITION_BITS {
            return Err(Error::InvalidImage(format!("2^{h} x 2^{w} image is too large")));
        }
        let expected = (1usize << (h + w)) * channels;
        if pixels.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{} samples for a 2^{h} x 2^{w} x {channels} image, expected {expected}",
                pixels.len()
            )));
        }
        if let Some(v) = pixels.iter().find(|&&v| (v as u32) >> q != 0) {
            return Err(Error::InvalidImage(format!("sample {v} does not fit in {q} bits")));
        }
        Ok(NeqrImage {
            h,
            w,
            q,
            channels,
            pixels,
            source: (1 << h, 1 << w),
        })
    }

    /// Builds an image from an arbitrary `rows × cols` raster, padding with
    /// zeros on the right and bottom up to the next powers of two.
    pub fn from_raster(rows: usize, cols: usize, channels: usize, q: usize, data: &[u16]) -> Result<NeqrImage> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyImage);
        }
        if data.len() != rows * cols * channels {
            return Err(Error::InvalidImage(format!(
                "{} samples for a {rows} x {cols} x {channels} raster",
                data.len()
            )));
        }
        let h = rows.next_power_of_two().trailing_zeros() as usize;
        let w = cols.next_power_of_two().trailing_zeros() as usize;
        let padded_cols = 1usize << w;
        let mut pixels = vec![0u16; (1usize << (h + w)) * channels];
        for (y, row) in data.chunks_exact(cols * channels).enumerate() {
            let start = y * padded_cols * channels;
            pixels[start..start + row.len()].copy_from_slice(row);
        }
        let mut img = NeqrImage::new(h, w, q, channels, pixels)?;
        img.source = (rows, cols);
        Ok(img)
    }

    /// Uniformly random samples.
    pub fn random<R: Rng + ?Sized>(h: usize, w: usize, q: usize, channels: usize, rng: &mut R) -> Result<NeqrImage> {
        let n = (1usize << (h + w)) * channels;
        let max = 1u32 << q;
        let pixels = (0..n).map(|_| rng.random_range(0..max) as u16).collect();
        NeqrImage::new(h, w, q, channels, pixels)
    }

    /// Builds an image by evaluating `f(y, x, channel)` at every position.
    pub fn from_fn(
        h: usize,
        w: usize,
        q: usize,
        channels: usize,
        mut f: impl FnMut(usize, usize, usize) -> u16,
    ) -> Result<NeqrImage> {
        let mut pixels = Vec::with_capacity((1usize << (h + w)) * channels);
        for y in 0..1usize << h {
            for x in 0..1usize << w {
                for c in 0..channels {
                    pixels.push(f(y, x, c));
                }
            }
        }
        NeqrImage::new(h, w, q, channels, pixels)
    }

    /// Number of y-position bits.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Number of x-position bits.
    pub fn w(&self) -> usize {
        self.w
    }

    /// Bits per channel.
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    /// Rows of the source raster, before padding.
    pub fn rows(&self) -> usize {
        self.source.0
    }

    /// Columns of the source raster, before padding.
    pub fn cols(&self) -> usize {
        self.source.1
    }

    /// Number of position variables, `h + w`.
    pub fn position_bits(&self) -> usize {
        self.h + self.w
    }

    pub fn num_positions(&self) -> usize {
        1 << (self.h + self.w)
    }

    pub fn pixels(&self) -> &[u16] {
        &self.pixels
    }

    #[inline]
    pub fn position(&self, y: usize, x: usize) -> usize {
        (y << self.w) | x
    }

    #[inline]
    pub fn value(&self, y: usize, x: usize, channel: usize) -> u16 {
        self.value_at(self.position(y, x), channel)
    }

    #[inline]
    pub fn value_at(&self, position: usize, channel: usize) -> u16 {
        self.pixels[position * self.channels + channel]
    }

    /// Total number of set bits across every sample.
    pub fn popcount(&self) -> usize {
        self.pixels.iter().map(|v| v.count_ones() as usize).sum()
    }
}

/// Reads a PGM/PPM (P2, P3, P5, P6) or PNG file with 8-bit samples.
///
/// Netpbm files must declare a maxval of 255; other depths are rejected
/// rather than rescaled.
pub fn load_image(path: impl AsRef<Path>) -> Result<NeqrImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::ImageRead {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    decode_image(&bytes).map_err(|e| match e {
        Error::InvalidImage(msg) => Error::ImageRead {
            path: path.to_path_buf(),
            msg,
        },
        other => other,
    })
}

/// Decodes an in-memory image; see [`load_image`].
pub fn decode_image(bytes: &[u8]) -> Result<NeqrImage> {
    if let Some(maxval) = netpbm_maxval(bytes) {
        if maxval != 255 {
            return Err(Error::UnsupportedImage(format!(
                "netpbm maxval {maxval}; only 8-bit (maxval 255) samples are accepted"
            )));
        }
    }
    let img = image::load_from_memory(bytes).map_err(|e| match e {
        image::ImageError::Unsupported(u) => Error::UnsupportedImage(u.to_string()),
        other => Error::InvalidImage(other.to_string()),
    })?;
    from_dynamic(img)
}

/// The maxval field of a P2/P3/P5/P6 header, if `bytes` starts with one.
fn netpbm_maxval(bytes: &[u8]) -> Option<u64> {
    if !matches!(bytes.get(..2)?, b"P2" | b"P3" | b"P5" | b"P6") {
        return None;
    }
    // magic, width, height, maxval; '#' comments run to end of line
    let mut fields = Vec::with_capacity(4);
    let mut i = 2;
    while fields.len() < 3 && i < bytes.len() {
        match bytes[i] {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'#' {
                    i += 1;
                }
                fields.push(std::str::from_utf8(&bytes[start..i]).ok()?.parse::<u64>().ok()?);
            }
        }
    }
    fields.get(2).copied()
}

fn from_dynamic(img: DynamicImage) -> Result<NeqrImage> {
    let (cols, rows) = (img.width() as usize, img.height() as usize);
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyImage);
    }
    let (channels, samples): (usize, Vec<u8>) = match img {
        DynamicImage::ImageLuma8(buf) => (1, buf.into_raw()),
        DynamicImage::ImageRgb8(buf) => (3, buf.into_raw()),
        other => {
            return Err(Error::UnsupportedImage(format!(
                "{:?} samples; only 8-bit grayscale and RGB are accepted",
                other.color()
            )))
        }
    };
    let data: Vec<u16> = samples.into_iter().map(u16::from).collect();
    NeqrImage::from_raster(rows, cols, channels, 8, &data)
}

/// The minterms of one color line of one channel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorLineCover {
    pub channel: usize,
    /// Color line index; 0 is the most significant bitplane.
    pub bit: usize,
    pub cover: EsopCover,
}

/// Collects, in row-major order, the positions whose `channel` sample has
/// color line `bit` set.
pub fn bitplane_cover(img: &NeqrImage, channel: usize, bit: usize) -> ColorLineCover {
    assert!(bit < img.q, "color line {bit} out of range for depth {}", img.q);
    assert!(channel < img.channels, "channel {channel} out of range");
    let n = img.position_bits();
    let shift = img.q - 1 - bit;
    let cubes = (0..img.num_positions())
        .filter(|&p| (img.value_at(p, channel) >> shift) & 1 == 1)
        .map(|p| Cube::minterm(n, p as u64))
        .collect();
    ColorLineCover {
        channel,
        bit,
        cover: EsopCover::from_parts_unchecked(n, cubes),
    }
}

/// Every color line of every channel, channel-major then `C_0 … C_{q-1}`.
pub fn all_bitplane_covers(img: &NeqrImage) -> Vec<ColorLineCover> {
    let q = img.q;
    (0..img.channels * q)
        .into_par_iter()
        .map(|k| bitplane_cover(img, k / q, k % q))
        .collect()
}

/// Exact position → channel-values lookup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealMap {
    channels: usize,
    values: Vec<u16>,
}

impl IdealMap {
    pub fn get(&self, position: usize) -> &[u16] {
        &self.values[position * self.channels..(position + 1) * self.channels]
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.channels
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &[u16])> {
        self.values.chunks_exact(self.channels).enumerate()
    }
}

pub fn ideal_map(img: &NeqrImage) -> IdealMap {
    IdealMap {
        channels: img.channels,
        values: img.pixels.clone(),
    }
}
