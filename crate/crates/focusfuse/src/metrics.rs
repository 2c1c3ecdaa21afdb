//! Image-quality measures: RMSE, PSNR, the universal quality index (UQI),
//! and SSIM.
//!
//! All comparisons require equal dimensions. PSNR uses a fixed peak of 255
//! (images are treated as 8-bit-range data regardless of the stored floats),
//! and the windowed measures — UQI and SSIM — slide with stride 1 over all
//! fully-contained positions. Sums are accumulated in a fixed order so every
//! metric is bit-stable across runs and thread counts.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use rayon::prelude::*;

/// Sliding-window side length for [`uqi`] unless overridden.
pub const DEFAULT_UQI_WINDOW: usize = 8;
/// SSIM window side length (fixed).
pub const SSIM_WINDOW: usize = 11;
/// Standard deviation of the SSIM Gaussian weighting window.
pub const SSIM_SIGMA: f64 = 1.5;

const C1: f64 = (0.01 * 255.0) * (0.01 * 255.0);
const C2: f64 = (0.03 * 255.0) * (0.03 * 255.0);

/// Root of the mean squared per-pixel difference.
pub fn rmse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    Ok(mse(a, b)?.sqrt())
}

fn mse(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.ensure_same_dims(b)?;
    let sum: f64 = a
        .samples()
        .iter()
        .zip(b.samples())
        .map(|(x, y)| (x - y) * (x - y))
        .sum();
    Ok(sum / a.samples().len() as f64)
}

/// Peak signal-to-noise ratio in decibels against a fixed peak of 255;
/// identical images return `f64::INFINITY`.
pub fn psnr(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    let mse = mse(a, b)?;
    if mse == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(10.0 * (255.0 * 255.0 / mse).log10())
}

/// Universal quality index over sliding `window x window` patches.
///
/// Per window, `Q = 4*cov*mean_a*mean_b / ((var_a+var_b)*(mean_a^2+mean_b^2))`,
/// computed as a product of the luminance and structure ratios. Windows whose
/// denominator is zero — both patches constant, or both means zero — carry no
/// information and are skipped; if every window is skipped the images are
/// degenerate for this measure and an error is returned. The result is the
/// mean over the surviving windows and lies in `[-1, 1]`.
pub fn uqi(a: &GrayImage, b: &GrayImage, window: usize) -> Result<f64> {
    a.ensure_same_dims(b)?;
    if window == 0 {
        return Err(Error::ZeroWindow);
    }
    let (w, h) = a.dimensions();
    if w < window || h < window {
        return Err(Error::ImageTooSmall {
            w,
            h,
            min_w: window,
            min_h: window,
        });
    }

    let rows: Vec<(f64, usize)> = (0..=h - window)
        .into_par_iter()
        .map(|y0| {
            let mut sum = 0.0;
            let mut count = 0usize;
            for x0 in 0..=w - window {
                if let Some(q) = window_q(a, b, x0, y0, window) {
                    sum += q;
                    count += 1;
                }
            }
            (sum, count)
        })
        .collect();

    let (total, count) = rows
        .iter()
        .fold((0.0, 0usize), |(s, c), &(rs, rc)| (s + rs, c + rc));
    if count == 0 {
        return Err(Error::AllWindowsDegenerate);
    }
    Ok(total / count as f64)
}

/// Q for one window position, or `None` when its denominator is zero.
fn window_q(a: &GrayImage, b: &GrayImage, x0: usize, y0: usize, window: usize) -> Option<f64> {
    let n = (window * window) as f64;
    let stats = |img: &GrayImage| {
        let mut sum = 0.0;
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for y in y0..y0 + window {
            for &v in &img.row(y)[x0..x0 + window] {
                sum += v;
                min = min.min(v);
                max = max.max(v);
            }
        }
        (sum / n, min == max)
    };
    let (ma, const_a) = stats(a);
    let (mb, const_b) = stats(b);

    // constant patches get exactly-zero second moments so the degeneracy
    // test below cannot be defeated by rounding residue
    let mut va = 0.0;
    let mut vb = 0.0;
    let mut cov = 0.0;
    if !(const_a && const_b) {
        for y in y0..y0 + window {
            let (ra, rb) = (&a.row(y)[x0..x0 + window], &b.row(y)[x0..x0 + window]);
            for (&pa, &pb) in ra.iter().zip(rb) {
                let (da, db) = (pa - ma, pb - mb);
                va += da * da;
                vb += db * db;
                cov += da * db;
            }
        }
        let div = n - 1.0;
        va = if const_a { 0.0 } else { va / div };
        vb = if const_b { 0.0 } else { vb / div };
        cov = if const_a || const_b { 0.0 } else { cov / div };
    }

    let lum_den = ma * ma + mb * mb;
    let str_den = va + vb;
    if lum_den == 0.0 || str_den == 0.0 {
        return None;
    }
    Some((2.0 * ma * mb / lum_den) * (2.0 * cov / str_den))
}

/// Structural similarity index with an 11x11 Gaussian window (sigma 1.5),
/// averaged over all fully-contained positions. Symmetric, in `[-1, 1]`,
/// and exactly 1 for identical images.
pub fn ssim(a: &GrayImage, b: &GrayImage) -> Result<f64> {
    a.ensure_same_dims(b)?;
    let (w, h) = a.dimensions();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(Error::ImageTooSmall {
            w,
            h,
            min_w: SSIM_WINDOW,
            min_h: SSIM_WINDOW,
        });
    }
    let kernel = gaussian_window();

    let rows: Vec<f64> = (0..=h - SSIM_WINDOW)
        .into_par_iter()
        .map(|y0| {
            let mut sum = 0.0;
            for x0 in 0..=w - SSIM_WINDOW {
                sum += ssim_at(a, b, x0, y0, &kernel);
            }
            sum
        })
        .collect();
    let total: f64 = rows.iter().sum();
    let positions = ((w - SSIM_WINDOW + 1) * (h - SSIM_WINDOW + 1)) as f64;
    Ok(total / positions)
}

fn ssim_at(a: &GrayImage, b: &GrayImage, x0: usize, y0: usize, kernel: &[f64]) -> f64 {
    let mut mu_a = 0.0;
    let mut mu_b = 0.0;
    let mut k = 0;
    for y in y0..y0 + SSIM_WINDOW {
        let (ra, rb) = (&a.row(y)[x0..x0 + SSIM_WINDOW], &b.row(y)[x0..x0 + SSIM_WINDOW]);
        for i in 0..SSIM_WINDOW {
            mu_a += kernel[k] * ra[i];
            mu_b += kernel[k] * rb[i];
            k += 1;
        }
    }
    let mut var_a = 0.0;
    let mut var_b = 0.0;
    let mut cov = 0.0;
    k = 0;
    for y in y0..y0 + SSIM_WINDOW {
        let (ra, rb) = (&a.row(y)[x0..x0 + SSIM_WINDOW], &b.row(y)[x0..x0 + SSIM_WINDOW]);
        for i in 0..SSIM_WINDOW {
            let (da, db) = (ra[i] - mu_a, rb[i] - mu_b);
            var_a += kernel[k] * (da * da);
            var_b += kernel[k] * (db * db);
            // parenthesized so the product rounds identically under argument
            // swap, keeping ssim(a, b) bitwise equal to ssim(b, a)
            cov += kernel[k] * (da * db);
            k += 1;
        }
    }
    let num = (2.0 * mu_a * mu_b + C1) * (2.0 * cov + C2);
    let den = (mu_a * mu_a + mu_b * mu_b + C1) * (var_a + var_b + C2);
    num / den
}

/// Normalized 11x11 Gaussian weights, row-major.
fn gaussian_window() -> Vec<f64> {
    let r = (SSIM_WINDOW / 2) as isize;
    let two_sigma_sq = 2.0 * SSIM_SIGMA * SSIM_SIGMA;
    let mut w: Vec<f64> = (-r..=r)
        .flat_map(|j| (-r..=r).map(move |i| (-((i * i + j * j) as f64) / two_sigma_sq).exp()))
        .collect();
    let sum: f64 = w.iter().sum();
    for v in &mut w {
        *v /= sum;
    }
    w
}

/// Mean SSIM between a fused image and each of its inputs, with the
/// per-input values preserved.
///
/// Selection-based fusion copies each region verbatim from a single source,
/// so this score tends to be *lower* for it than for blending methods even
/// when fidelity to the true scene is higher — a fused block identical to
/// input 1 is maximally dissimilar to input 2's blurred version of it.
#[derive(Debug, Clone, PartialEq)]
pub struct SsimBreakdown {
    pub mean: f64,
    pub per_input: Vec<f64>,
}

/// Computes [`ssim`] against every input and averages. Errors as `ssim`
/// does; at least one input is required.
pub fn ssim_to_inputs(fused: &GrayImage, inputs: &[GrayImage]) -> Result<SsimBreakdown> {
    if inputs.is_empty() {
        return Err(Error::TooFewImages { needed: 1, got: 0 });
    }
    let per_input = inputs
        .iter()
        .map(|input| ssim(fused, input))
        .collect::<Result<Vec<_>>>()?;
    let mean = per_input.iter().sum::<f64>() / per_input.len() as f64;
    Ok(SsimBreakdown { mean, per_input })
}

/// All four measures for one candidate/reference pair, plus the window
/// parameters they were computed with.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub rmse: f64,
    /// Decibels; `f64::INFINITY` when the images are identical.
    pub psnr: f64,
    pub uqi: f64,
    pub ssim: f64,
    pub uqi_window: usize,
    pub ssim_window: usize,
    pub ssim_sigma: f64,
}

/// Computes the full [`MetricReport`] with default window parameters.
pub fn metric_report(candidate: &GrayImage, reference: &GrayImage) -> Result<MetricReport> {
    Ok(MetricReport {
        rmse: rmse(candidate, reference)?,
        psnr: psnr(candidate, reference)?,
        uqi: uqi(candidate, reference, DEFAULT_UQI_WINDOW)?,
        ssim: ssim(candidate, reference)?,
        uqi_window: DEFAULT_UQI_WINDOW,
        ssim_window: SSIM_WINDOW,
        ssim_sigma: SSIM_SIGMA,
    })
}
