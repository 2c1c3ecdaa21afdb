//! Orthonormal Haar wavelet transform (separable, recursive on the
//! approximation band).
//!
//! A single level maps each pair `(a, b)` to `(a + b) / sqrt(2)` (low-pass)
//! and `(a - b) / sqrt(2)` (high-pass), applied along rows then columns. The
//! orthonormal scaling makes the transform energy-preserving, so distances in
//! coefficient space mean the same thing as in pixel space — convenient when
//! comparing detail magnitudes across images.
//!
//! Images whose sides are not multiples of `2^levels` are padded by edge
//! replication before analysis; the inverse crops back to the original size.

use crate::error::{Error, Result};
use crate::image::GrayImage;

const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Detail bands of one decomposition level, finest first in the pyramid.
///
/// `h` responds to horizontal intensity changes (vertical edges), `v` to
/// vertical changes, `d` to diagonal structure. Each band at level `l`
/// (1-based) has dimensions `padded / 2^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct DetailBands {
    pub h: GrayImage,
    pub v: GrayImage,
    pub d: GrayImage,
}

/// Complete multi-level Haar decomposition of one image.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletPyramid {
    /// Coarsest low-pass band, `padded / 2^levels` on each side.
    pub approx: GrayImage,
    /// Detail bands per level, index 0 = finest (level 1).
    pub details: Vec<DetailBands>,
    /// Original (pre-padding) image dimensions, restored on reconstruction.
    pub original_dims: (usize, usize),
}

impl WaveletPyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Dimensions the padded image had before the first split.
    pub fn padded_dims(&self) -> (usize, usize) {
        let scale = 1usize << self.levels();
        (self.approx.width() * scale, self.approx.height() * scale)
    }
}

/// Largest level count accepted for a `w x h` image.
///
/// Padding rounds each side up to a multiple of `2^levels`, so mathematically
/// any depth is representable — but a deep decomposition of a tiny image
/// would balloon it (1x1 at 20 levels would pad to a megapixel per side).
/// The cap allows padding to inflate a side by at most 64x, which admits any
/// reasonable depth on real images while rejecting degenerate requests.
pub fn max_levels(width: usize, height: usize) -> usize {
    let cap = |side: usize| {
        let limit = side.saturating_mul(64);
        let mut levels = 0;
        while levels < 24 {
            let step = 1usize << (levels + 1);
            if side.div_ceil(step).saturating_mul(step) > limit {
                break;
            }
            levels += 1;
        }
        levels
    };
    cap(width).min(cap(height))
}

fn pad_replicate(img: &GrayImage, multiple: usize) -> GrayImage {
    let (w, h) = img.dimensions();
    let pw = w.div_ceil(multiple) * multiple;
    let ph = h.div_ceil(multiple) * multiple;
    if pw == w && ph == h {
        return img.clone();
    }
    GrayImage::from_fn(pw, ph, |x, y| img.get(x.min(w - 1), y.min(h - 1)))
        .expect("padded dims are nonzero")
}

/// One analysis level: rows then columns, returning (ll, hl, lh, hh) where
/// the first letter is the row filter and the second the column filter.
fn analyze_level(img: &GrayImage) -> (GrayImage, GrayImage, GrayImage, GrayImage) {
    let (w, h) = img.dimensions();
    debug_assert!(w % 2 == 0 && h % 2 == 0);
    let (hw, hh) = (w / 2, h / 2);

    // Row pass: w x h -> two half-width planes.
    let mut lo = vec![0.0; hw * h];
    let mut hi = vec![0.0; hw * h];
    for y in 0..h {
        let row = img.row(y);
        for i in 0..hw {
            let (a, b) = (row[2 * i], row[2 * i + 1]);
            lo[y * hw + i] = (a + b) * INV_SQRT2;
            hi[y * hw + i] = (a - b) * INV_SQRT2;
        }
    }

    // Column pass on each plane: h -> two half-height planes.
    let split_cols = |plane: &[f64]| {
        let mut top = vec![0.0; hw * hh];
        let mut bot = vec![0.0; hw * hh];
        for j in 0..hh {
            for x in 0..hw {
                let a = plane[(2 * j) * hw + x];
                let b = plane[(2 * j + 1) * hw + x];
                top[j * hw + x] = (a + b) * INV_SQRT2;
                bot[j * hw + x] = (a - b) * INV_SQRT2;
            }
        }
        (top, bot)
    };
    let (ll, lh) = split_cols(&lo);
    let (hl, hh_band) = split_cols(&hi);

    let wrap = |v: Vec<f64>| GrayImage::new(hw, hh, v).expect("half-band dims are nonzero");
    (wrap(ll), wrap(hl), wrap(lh), wrap(hh_band))
}

/// One synthesis level, exact inverse of [`analyze_level`].
fn synthesize_level(
    ll: &GrayImage,
    hl: &GrayImage,
    lh: &GrayImage,
    hh: &GrayImage,
) -> GrayImage {
    let (hw, hh_dim) = ll.dimensions();
    let (w, h) = (hw * 2, hh_dim * 2);

    // Undo the column pass.
    let merge_cols = |top: &GrayImage, bot: &GrayImage| {
        let mut plane = vec![0.0; hw * h];
        for j in 0..hh_dim {
            for x in 0..hw {
                let s = top.get(x, j);
                let d = bot.get(x, j);
                plane[(2 * j) * hw + x] = (s + d) * INV_SQRT2;
                plane[(2 * j + 1) * hw + x] = (s - d) * INV_SQRT2;
            }
        }
        plane
    };
    let lo = merge_cols(ll, lh);
    let hi = merge_cols(hl, hh);

    // Undo the row pass.
    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for i in 0..hw {
            let s = lo[y * hw + i];
            let d = hi[y * hw + i];
            out[y * w + 2 * i] = (s + d) * INV_SQRT2;
            out[y * w + 2 * i + 1] = (s - d) * INV_SQRT2;
        }
    }
    GrayImage::new(w, h, out).expect("synthesized dims are nonzero")
}

/// Decomposes `img` into `levels` Haar levels (edge-replication padding).
///
/// Errors with [`Error::InvalidLevels`] when `levels` is 0 or exceeds
/// [`max_levels`] for the image's dimensions.
pub fn haar_dwt(img: &GrayImage, levels: usize) -> Result<WaveletPyramid> {
    let max = max_levels(img.width(), img.height());
    if levels == 0 || levels > max {
        return Err(Error::InvalidLevels { levels, max });
    }
    let original_dims = img.dimensions();
    let mut current = pad_replicate(img, 1usize << levels);
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (ll, hl, lh, hh) = analyze_level(&current);
        details.push(DetailBands { h: hl, v: lh, d: hh });
        current = ll;
    }
    Ok(WaveletPyramid {
        approx: current,
        details,
        original_dims,
    })
}

/// Reconstructs the image a pyramid came from, cropped to its original size.
///
/// Errors with [`Error::InconsistentPyramid`] when band dimensions do not
/// chain (each level must be exactly half the one below it).
pub fn haar_idwt(pyramid: &WaveletPyramid) -> Result<GrayImage> {
    let mut current = pyramid.approx.clone();
    for (i, bands) in pyramid.details.iter().enumerate().rev() {
        let dims = current.dimensions();
        if bands.h.dimensions() != dims
            || bands.v.dimensions() != dims
            || bands.d.dimensions() != dims
        {
            return Err(Error::InconsistentPyramid { level: i + 1 });
        }
        current = synthesize_level(&current, &bands.h, &bands.v, &bands.d);
    }
    let (w, h) = pyramid.original_dims;
    let (pw, ph) = current.dimensions();
    if pw < w || ph < h {
        return Err(Error::InconsistentPyramid { level: 0 });
    }
    if (pw, ph) == (w, h) {
        return Ok(current);
    }
    current.extract(crate::image::PixelRect::new(0, 0, w, h))
}
