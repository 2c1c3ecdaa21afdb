//! Grayscale raster model.
//!
//! A [`GrayImage`] is a row-major buffer of `f64` intensity samples with a
//! nominal range of `[0, 255]`. Samples stay floating point through the whole
//! pipeline; quantization to 8-bit happens only when an image is written out
//! (see [`crate::pgm::save`]).

use crate::error::{Error, Result};

/// Single-channel raster of double-precision intensity samples.
///
/// Invariants enforced at construction:
/// - `width >= 1`, `height >= 1`
/// - `samples.len() == width * height`
/// - every sample is finite
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    samples: Vec<f64>,
}

/// Axis-aligned pixel rectangle, `x0/y0` top-left inclusive, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PixelRect {
    pub x0: usize,
    pub y0: usize,
    pub w: usize,
    pub h: usize,
}

impl PixelRect {
    pub fn new(x0: usize, y0: usize, w: usize, h: usize) -> Self {
        Self { x0, y0, w, h }
    }

    /// Number of pixels covered.
    pub fn area(&self) -> usize {
        self.w * self.h
    }

    fn fits_in(&self, width: usize, height: usize) -> bool {
        self.w >= 1
            && self.h >= 1
            && self.x0.checked_add(self.w).is_some_and(|x1| x1 <= width)
            && self.y0.checked_add(self.h).is_some_and(|y1| y1 <= height)
    }
}

impl GrayImage {
    /// Builds an image from a row-major sample buffer.
    pub fn new(width: usize, height: usize, samples: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::ImageTooSmall {
                w: width,
                h: height,
                min_w: 1,
                min_h: 1,
            });
        }
        let expected = width
            .checked_mul(height)
            .ok_or(Error::SampleCountMismatch {
                w: width,
                h: height,
                expected: usize::MAX,
                got: samples.len(),
            })?;
        if samples.len() != expected {
            return Err(Error::SampleCountMismatch {
                w: width,
                h: height,
                expected,
                got: samples.len(),
            });
        }
        if let Some(index) = samples.iter().position(|s| !s.is_finite()) {
            return Err(Error::NonFiniteSample { index });
        }
        Ok(Self {
            width,
            height,
            samples,
        })
    }

    /// Constant-valued image.
    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width.saturating_mul(height).max(1)])
    }

    /// Builds an image by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut samples = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                samples.push(f(x, y));
            }
        }
        Self::new(width, height, samples)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Row-major sample buffer.
    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Sample at pixel `(x, y)`. Panics if out of bounds.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height, "pixel out of bounds");
        self.samples[y * self.width + x]
    }

    /// One row of samples.
    pub fn row(&self, y: usize) -> &[f64] {
        let start = y * self.width;
        &self.samples[start..start + self.width]
    }

    /// True when both images have identical dimensions.
    pub fn same_dims(&self, other: &GrayImage) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub(crate) fn ensure_same_dims(&self, other: &GrayImage) -> Result<()> {
        if self.same_dims(other) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected_w: self.width,
                expected_h: self.height,
                found_w: other.width,
                found_h: other.height,
            })
        }
    }

    /// Copies the sub-raster covered by `rect` into a new image.
    pub fn extract(&self, rect: PixelRect) -> Result<GrayImage> {
        if !rect.fits_in(self.width, self.height) {
            return Err(Error::RectOutOfBounds {
                x0: rect.x0,
                y0: rect.y0,
                w: rect.w,
                h: rect.h,
                img_w: self.width,
                img_h: self.height,
            });
        }
        let mut samples = Vec::with_capacity(rect.area());
        for y in rect.y0..rect.y0 + rect.h {
            let start = y * self.width + rect.x0;
            samples.extend_from_slice(&self.samples[start..start + rect.w]);
        }
        GrayImage::new(rect.w, rect.h, samples)
    }

    /// Samples of `rect` appended to `out` in row-major order, without
    /// allocating a new image. `rect` must fit.
    pub(crate) fn gather_rect(&self, rect: PixelRect, out: &mut Vec<f64>) {
        out.clear();
        for y in rect.y0..rect.y0 + rect.h {
            let start = y * self.width + rect.x0;
            out.extend_from_slice(&self.samples[start..start + rect.w]);
        }
    }
}
