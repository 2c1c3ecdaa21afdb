//! Portable graymap (PGM) codec, ASCII `P2` and binary `P5`.
//!
//! The header is `magic, width, height, maxval` separated by whitespace, with
//! `#` comments permitted between header tokens. In `P5` exactly one
//! whitespace byte follows the maxval, then raw samples: one byte each for
//! maxval <= 255, two bytes big-endian otherwise. Inputs with maxval != 255
//! are rescaled by `255 / maxval` at load so the in-memory intensity range is
//! always nominally `[0, 255]`. Writing always emits maxval 255, clamping to
//! `[0, 255]` and rounding half-up.
//!
//! Every parse error carries the byte offset where it was detected.

use crate::error::{PgmError, Result};
use crate::image::GrayImage;

/// Output encoding for [`save`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// `P2`, whitespace-separated decimal samples.
    Ascii,
    /// `P5`, one raw byte per sample.
    Binary,
}

/// Clamps to `[0, 255]` and rounds half-up. This is the only place where
/// samples are quantized.
pub fn quantize(sample: f64) -> u8 {
    (sample.clamp(0.0, 255.0) + 0.5).floor() as u8
}

/// Applies save-time quantization in memory: every sample becomes exactly
/// the value a [`save`]/[`load`] round trip would give it. Useful when a
/// pipeline wants to measure what would actually be stored without touching
/// a file.
pub fn quantized(img: &GrayImage) -> GrayImage {
    let samples = img.samples().iter().map(|&s| quantize(s) as f64).collect();
    GrayImage::new(img.width(), img.height(), samples).expect("quantized samples are finite")
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    /// Skips whitespace and `#` comments (comment runs to end of line).
    fn skip_separators(&mut self, allow_comments: bool) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' && allow_comments {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    /// Next whitespace-delimited token and its start offset.
    fn next_token(&mut self, allow_comments: bool) -> Option<(&'a [u8], usize)> {
        self.skip_separators(allow_comments);
        if self.pos >= self.bytes.len() {
            return None;
        }
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && !(allow_comments && self.bytes[self.pos] == b'#')
        {
            self.pos += 1;
        }
        Some((&self.bytes[start..self.pos], start))
    }

    fn next_header_number(&mut self) -> std::result::Result<(u64, usize), PgmError> {
        let end = self.bytes.len();
        let (token, offset) = self
            .next_token(true)
            .ok_or(PgmError::TruncatedHeader { offset: end })?;
        let text = std::str::from_utf8(token).map_err(|_| PgmError::BadHeaderToken {
            token: String::from_utf8_lossy(token).into_owned(),
            offset,
        })?;
        let value = text.parse::<u64>().map_err(|_| PgmError::BadHeaderToken {
            token: text.to_owned(),
            offset,
        })?;
        Ok((value, offset))
    }
}

/// Decodes a `P2` or `P5` stream into a [`GrayImage`].
pub fn load(bytes: &[u8]) -> Result<GrayImage> {
    let mut cur = Cursor::new(bytes);

    if bytes.len() < 2 || (&bytes[0..2] != b"P2" && &bytes[0..2] != b"P5") {
        return Err(PgmError::BadMagic { offset: 0 }.into());
    }
    let binary = bytes[1] == b'5';
    // the magic must be its own token
    if bytes.len() > 2 && !bytes[2].is_ascii_whitespace() && bytes[2] != b'#' {
        return Err(PgmError::BadMagic { offset: 0 }.into());
    }
    cur.pos = 2;

    let (width, w_off) = cur.next_header_number()?;
    let (height, h_off) = cur.next_header_number()?;
    let (maxval, m_off) = cur.next_header_number()?;

    if !(1..=65535).contains(&maxval) {
        return Err(PgmError::BadMaxval {
            maxval,
            offset: m_off,
        }
        .into());
    }
    if width == 0 || height == 0 {
        return Err(PgmError::BadDimensions {
            w: width as usize,
            h: height as usize,
            offset: if width == 0 { w_off } else { h_off },
        }
        .into());
    }

    let width = width as usize;
    let height = height as usize;
    let expected = width * height;
    // multiply before dividing so full-scale samples land exactly on 255.0
    // (and 8-bit maxval-255 files load with zero rounding at all)
    let rescale = move |v: f64| v * 255.0 / maxval as f64;

    let samples = if binary {
        // exactly one whitespace byte separates maxval from the raster
        if cur.pos >= bytes.len() || !bytes[cur.pos].is_ascii_whitespace() {
            return Err(PgmError::TruncatedData {
                expected,
                got: 0,
                offset: cur.pos.min(bytes.len()),
            }
            .into());
        }
        cur.pos += 1;
        let raster = &bytes[cur.pos..];
        let bytes_per_sample = if maxval <= 255 { 1 } else { 2 };
        if raster.len() < expected * bytes_per_sample {
            return Err(PgmError::TruncatedData {
                expected,
                got: raster.len() / bytes_per_sample,
                offset: bytes.len(),
            }
            .into());
        }
        if bytes_per_sample == 1 {
            raster[..expected].iter().map(|&b| rescale(b as f64)).collect()
        } else {
            raster[..expected * 2]
                .chunks_exact(2)
                .map(|pair| rescale(u16::from_be_bytes([pair[0], pair[1]]) as f64))
                .collect()
        }
    } else {
        let mut samples = Vec::with_capacity(expected);
        while samples.len() < expected {
            let end = bytes.len();
            // comments are a header construct; the raster is numbers only
            let (token, offset) = match cur.next_token(false) {
                Some(t) => t,
                None => {
                    return Err(PgmError::TruncatedData {
                        expected,
                        got: samples.len(),
                        offset: end,
                    }
                    .into())
                }
            };
            let value = std::str::from_utf8(token)
                .ok()
                .and_then(|t| t.parse::<u64>().ok())
                .ok_or_else(|| PgmError::BadSampleToken {
                    token: String::from_utf8_lossy(token).into_owned(),
                    offset,
                })?;
            samples.push(rescale(value as f64));
        }
        samples
    };

    Ok(GrayImage::new(width, height, samples)?)
}

/// Encodes an image, always with maxval 255. Samples are clamped and rounded
/// by [`quantize`]; loading the result back reproduces them exactly.
pub fn save(img: &GrayImage, mode: Mode) -> Vec<u8> {
    let header = format!("P{}\n{} {}\n255\n", if mode == Mode::Binary { 5 } else { 2 }, img.width(), img.height());
    let mut out = header.into_bytes();
    match mode {
        Mode::Binary => {
            out.extend(img.samples().iter().map(|&s| quantize(s)));
        }
        Mode::Ascii => {
            use std::fmt::Write;
            // at most 17 samples per line keeps lines under 70 characters
            let mut line = String::new();
            for chunk in img.samples().chunks(17) {
                line.clear();
                for (i, &s) in chunk.iter().enumerate() {
                    if i > 0 {
                        line.push(' ');
                    }
                    let _ = write!(line, "{}", quantize(s));
                }
                line.push('\n');
                out.extend_from_slice(line.as_bytes());
            }
        }
    }
    out
}
