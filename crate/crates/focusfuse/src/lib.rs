//! Multi-focus image fusion for grayscale rasters.
//!
//! Cameras with a finite depth of field cannot hold every plane of a scene
//! in focus at once. Given several co-registered shots that each focus on a
//! different region, this crate assembles a single everywhere-sharp
//! composite by a deliberately simple rule: tile the frame into small
//! windows, measure pixel dispersion (sample standard deviation) per window
//! in every source, and copy each window verbatim from whichever source is
//! sharpest there.
//!
//! ```
//! use focusfuse::{fuse_max_std, GrayImage, TieBreak};
//!
//! // two 4x4 "shots": one textured (in focus), one flat (defocused)
//! let sharp = GrayImage::from_fn(4, 4, |x, y| ((x * 37 + y * 91) % 200) as f64)?;
//! let flat = GrayImage::constant(4, 4, 80.0)?;
//!
//! let fused = fuse_max_std(&[sharp.clone(), flat], 2, TieBreak::LowestIndex)?;
//! assert_eq!(fused.image, sharp); // texture wins every window
//! # Ok::<(), focusfuse::Error>(())
//! ```
//!
//! Beyond the core fuser the crate ships everything needed to evaluate it:
//!
//! - [`pgm`]: a strict PGM (P2/P5) codec with byte-positioned errors;
//! - [`stats`]: windowed standard-deviation maps over block grids;
//! - [`baselines`]: average, PCA-weighted, and wavelet-domain fusers;
//! - [`wavelet`]: an orthonormal Haar transform with exact reconstruction;
//! - [`metrics`]: RMSE, PSNR, UQI, and SSIM;
//! - [`synth`]: synthetic half-blurred focus pairs with known ground truth.
//!
//! All operations are pure and deterministic: fixed inputs and parameters
//! produce bit-identical outputs regardless of thread count.

pub mod baselines;
pub mod error;
pub mod fusion;
pub mod image;
pub mod metrics;
pub mod pgm;
pub mod stats;
pub mod synth;
pub mod wavelet;

mod guide;

pub use baselines::{fuse_average, fuse_pca, fuse_wavelet, PcaFusion, DEFAULT_LEVELS};
pub use error::{Error, PgmError, Result};
pub use fusion::{fuse_max_std, FusedResult, FusionParams, SelectionMap, TieBreak, DEFAULT_WINDOW};
pub use image::{GrayImage, PixelRect};
pub use metrics::{metric_report, psnr, rmse, ssim, ssim_to_inputs, uqi, MetricReport};
pub use stats::{block_std_map, sample_std, BlockGrid, StdMap};
pub use synth::{gaussian_blur, gaussian_kernel, make_pair, FocusPair, SplitGeometry};
pub use wavelet::{haar_dwt, haar_idwt, DetailBands, WaveletPyramid};
