//! Block tiling and per-window dispersion statistics.
//!
//! An image is partitioned into a disjoint grid of `k x k` windows (the last
//! column/row may be narrower when `k` does not divide the image). Each
//! window is scored by its sample standard deviation: in-focus regions
//! disperse more than defocused ones, so the per-window std acts as the
//! focus measure that drives fusion.

use crate::error::{Error, Result};
use crate::image::{GrayImage, PixelRect};
use rayon::prelude::*;

/// Sample standard deviation, divisor `n - 1`.
///
/// Returns 0 for a single sample (the dispersion of one point is zero by
/// definition), and errors on an empty slice.
pub fn sample_std(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySamples);
    }
    Ok(sample_std_unchecked(values))
}

/// Two-pass sample std over a non-empty slice. Fixed left-to-right summation
/// keeps results identical regardless of caller-side parallelism.
pub(crate) fn sample_std_unchecked(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (n - 1) as f64).sqrt()
}

/// Disjoint tiling of a `width x height` image into `k x k` windows.
///
/// Interior rects are exactly `k x k`; the final column/row holds the
/// remainder. `nx = ceil(width / k)`, `ny = ceil(height / k)`, and the rects
/// are stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockGrid {
    k: usize,
    nx: usize,
    ny: usize,
    width: usize,
    height: usize,
    rects: Vec<PixelRect>,
}

impl BlockGrid {
    /// Partitions a `width x height` raster into `k x k` blocks.
    pub fn new(width: usize, height: usize, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroWindow);
        }
        if width == 0 || height == 0 {
            return Err(Error::ImageTooSmall {
                w: width,
                h: height,
                min_w: 1,
                min_h: 1,
            });
        }
        let nx = width.div_ceil(k);
        let ny = height.div_ceil(k);
        let mut rects = Vec::with_capacity(nx * ny);
        for by in 0..ny {
            let y0 = by * k;
            let h = k.min(height - y0);
            for bx in 0..nx {
                let x0 = bx * k;
                let w = k.min(width - x0);
                rects.push(PixelRect::new(x0, y0, w, h));
            }
        }
        Ok(Self {
            k,
            nx,
            ny,
            width,
            height,
            rects,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Dimensions of the image the grid was built for.
    pub fn image_dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn block_count(&self) -> usize {
        self.rects.len()
    }

    /// Row-major block rectangles.
    pub fn rects(&self) -> &[PixelRect] {
        &self.rects
    }

    pub(crate) fn ensure_matches(&self, img: &GrayImage) -> Result<()> {
        if (self.width, self.height) == img.dimensions() {
            Ok(())
        } else {
            Err(Error::GridMismatch {
                grid_w: self.width,
                grid_h: self.height,
                img_w: img.width(),
                img_h: img.height(),
            })
        }
    }
}

/// Per-block sample standard deviations, row-major over the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct StdMap {
    nx: usize,
    ny: usize,
    values: Vec<f64>,
}

impl StdMap {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Std of block `(bx, by)`. Panics if out of range.
    pub fn get(&self, bx: usize, by: usize) -> f64 {
        assert!(bx < self.nx && by < self.ny, "block out of range");
        self.values[by * self.nx + bx]
    }
}

/// Sample std of every grid block of `img`.
pub fn block_std_map(img: &GrayImage, grid: &BlockGrid) -> Result<StdMap> {
    grid.ensure_matches(img)?;
    let values: Vec<f64> = grid
        .rects()
        .par_iter()
        .map(|rect| {
            let mut buf = Vec::with_capacity(rect.area());
            img.gather_rect(*rect, &mut buf);
            sample_std_unchecked(&buf)
        })
        .collect();
    Ok(StdMap {
        nx: grid.nx(),
        ny: grid.ny(),
        values,
    })
}
