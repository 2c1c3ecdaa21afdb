//! Block-selection fusion: per window, copy the source whose pixels disperse
//! the most.
//!
//! Every input is tiled by the same [`BlockGrid`]; for each block the source
//! with the highest sample standard deviation wins and its pixels are copied
//! into the output verbatim. No blending happens anywhere, so every output
//! pixel is bit-identical to a pixel of exactly one input, and the
//! [`SelectionMap`] records which one.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::stats::{sample_std_unchecked, BlockGrid};
use rayon::prelude::*;

/// Deterministic resolution for blocks whose stds tie across sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// First input wins (default).
    #[default]
    LowestIndex,
    /// Last input wins.
    HighestIndex,
}

/// Which source supplied each block of the fused output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMap {
    nx: usize,
    ny: usize,
    k: usize,
    width: usize,
    height: usize,
    source_index: Vec<usize>,
}

impl SelectionMap {
    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Window side length the selection was made with.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Dimensions of the fused image the map belongs to.
    pub fn image_dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    /// Row-major chosen source index per block.
    pub fn source_indices(&self) -> &[usize] {
        &self.source_index
    }

    /// Chosen source for block `(bx, by)`. Panics if out of range.
    pub fn get(&self, bx: usize, by: usize) -> usize {
        assert!(bx < self.nx && by < self.ny, "block out of range");
        self.source_index[by * self.nx + bx]
    }

    /// Renders the map as an image: block `(i, j)` becomes a flat region of
    /// intensity `round(255 * source_index / max(n_inputs - 1, 1))`, matching
    /// the fused image dimensions (edge blocks stay smaller than `k x k`).
    pub fn to_image(&self, n_inputs: usize) -> GrayImage {
        let grid = BlockGrid::new(self.width, self.height, self.k)
            .expect("selection map dims are valid by construction");
        let denom = n_inputs.saturating_sub(1).max(1) as f64;
        let mut samples = vec![0.0; self.width * self.height];
        for (rect, &idx) in grid.rects().iter().zip(&self.source_index) {
            let value = (255.0 * idx as f64 / denom).round().min(255.0);
            for y in rect.y0..rect.y0 + rect.h {
                let row = y * self.width;
                samples[row + rect.x0..row + rect.x0 + rect.w].fill(value);
            }
        }
        GrayImage::new(self.width, self.height, samples)
            .expect("rendered selection values are finite")
    }
}

/// Parameters a fusion ran with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FusionParams {
    pub k: usize,
    pub tie_break: TieBreak,
    pub input_count: usize,
}

/// Fused image plus the per-block provenance record.
#[derive(Debug, Clone, PartialEq)]
pub struct FusedResult {
    pub image: GrayImage,
    pub selection: SelectionMap,
    pub params: FusionParams,
}

/// Recommended window side length: small windows track focus boundaries
/// closely, and 2 is the smallest size with a usable dispersion estimate.
pub const DEFAULT_WINDOW: usize = 2;

/// Fuses `N >= 2` equally-sized images by per-block argmax of sample std.
///
/// For every block of the `k x k` tiling, the std of that block is computed
/// in each input; the input with the highest value supplies the block's
/// pixels, copied unmodified. Ties resolve by `tie_break`. The result is
/// deterministic for fixed inputs and parameters.
pub fn fuse_max_std(images: &[GrayImage], k: usize, tie_break: TieBreak) -> Result<FusedResult> {
    if images.len() < 2 {
        return Err(Error::TooFewImages {
            needed: 2,
            got: images.len(),
        });
    }
    for img in &images[1..] {
        images[0].ensure_same_dims(img)?;
    }
    let (width, height) = images[0].dimensions();
    let grid = BlockGrid::new(width, height, k)?;

    let source_index: Vec<usize> = grid
        .rects()
        .par_iter()
        .map(|rect| {
            let mut buf = Vec::with_capacity(rect.area());
            let mut best = 0usize;
            let mut best_std = f64::NEG_INFINITY;
            for (idx, img) in images.iter().enumerate() {
                img.gather_rect(*rect, &mut buf);
                let std = sample_std_unchecked(&buf);
                let wins = match tie_break {
                    TieBreak::LowestIndex => std > best_std,
                    TieBreak::HighestIndex => std >= best_std,
                };
                if wins {
                    best = idx;
                    best_std = std;
                }
            }
            best
        })
        .collect();

    let mut samples = vec![0.0; width * height];
    for (rect, &idx) in grid.rects().iter().zip(&source_index) {
        let src = &images[idx];
        for y in rect.y0..rect.y0 + rect.h {
            let row = y * width;
            samples[row + rect.x0..row + rect.x0 + rect.w]
                .copy_from_slice(&src.row(y)[rect.x0..rect.x0 + rect.w]);
        }
    }

    Ok(FusedResult {
        image: GrayImage::new(width, height, samples)?,
        selection: SelectionMap {
            nx: grid.nx(),
            ny: grid.ny(),
            k,
            width,
            height,
            source_index,
        },
        params: FusionParams {
            k,
            tie_break,
            input_count: images.len(),
        },
    })
}
