//! Reference fusers to compare block-selection fusion against: per-pixel
//! average, PCA-weighted blending, and wavelet-domain coefficient fusion.
//!
//! None of these track focus locally the way block selection does — average
//! and PCA blend whole images with global weights, and wavelet fusion picks
//! coefficients rather than pixels — which is exactly what makes them useful
//! comparison floors and ceilings in the benchmark.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::wavelet::{haar_dwt, haar_idwt, DetailBands, WaveletPyramid};

/// Default decomposition depth for [`fuse_wavelet`].
pub const DEFAULT_LEVELS: usize = 3;

fn ensure_stack(images: &[GrayImage]) -> Result<()> {
    if images.len() < 2 {
        return Err(Error::TooFewImages {
            needed: 2,
            got: images.len(),
        });
    }
    for img in &images[1..] {
        images[0].ensure_same_dims(img)?;
    }
    Ok(())
}

/// Per-pixel arithmetic mean of `N >= 2` equally-sized images.
pub fn fuse_average(images: &[GrayImage]) -> Result<GrayImage> {
    ensure_stack(images)?;
    let (w, h) = images[0].dimensions();
    let n = images.len() as f64;
    let mut acc = images[0].samples().to_vec();
    for img in &images[1..] {
        for (a, &v) in acc.iter_mut().zip(img.samples()) {
            *a += v;
        }
    }
    for a in &mut acc {
        *a /= n;
    }
    GrayImage::new(w, h, acc)
}

/// Outcome of [`fuse_pca`]: the blended image plus the weight vector used.
#[derive(Debug, Clone, PartialEq)]
pub struct PcaFusion {
    pub image: GrayImage,
    /// Non-negative blending weights, one per input, summing to 1.
    pub weights: Vec<f64>,
    /// True when the inter-image covariance was numerically zero (all inputs
    /// constant) and the result degraded to a plain average with equal
    /// weights.
    pub fell_back_to_average: bool,
}

/// Blends images with weights from the dominant eigenvector of their
/// inter-image covariance matrix.
///
/// Each image is flattened to a vector; the `N x N` covariance of those
/// vectors (centered internally, divisor `pixels - 1`) is eigen-decomposed,
/// and the eigenvector of the largest eigenvalue supplies the weights:
/// `w_i = |e_i| / sum |e_j|`. The absolute values fix the eigenvector's sign
/// ambiguity and keep the weights non-negative. A numerically zero covariance
/// (all inputs constant) falls back to [`fuse_average`] with the fallback
/// flagged in the result.
pub fn fuse_pca(images: &[GrayImage]) -> Result<PcaFusion> {
    ensure_stack(images)?;
    let n = images.len();
    let pixels = images[0].samples().len();

    let means: Vec<f64> = images
        .iter()
        .map(|im| im.samples().iter().sum::<f64>() / pixels as f64)
        .collect();
    let mut cov = vec![vec![0.0; n]; n];
    if pixels >= 2 {
        for i in 0..n {
            for j in i..n {
                let (xi, xj) = (images[i].samples(), images[j].samples());
                let mut s = 0.0;
                for p in 0..pixels {
                    s += (xi[p] - means[i]) * (xj[p] - means[j]);
                }
                let c = s / (pixels - 1) as f64;
                cov[i][j] = c;
                cov[j][i] = c;
            }
        }
    }

    // "Numerically zero" is judged relative to the samples' own energy so
    // the test works at any intensity scale: constant inputs leave only
    // rounding residue (~1e-32 x energy) in the trace.
    let energy = images
        .iter()
        .flat_map(|im| im.samples())
        .map(|v| v * v)
        .sum::<f64>()
        / (n * pixels) as f64;
    let trace: f64 = (0..n).map(|i| cov[i][i]).sum();
    if trace <= energy * 1e-18 {
        return Ok(PcaFusion {
            image: fuse_average(images)?,
            weights: vec![1.0 / n as f64; n],
            fell_back_to_average: true,
        });
    }

    let e = dominant_eigenvector(cov);
    let total: f64 = e.iter().map(|v| v.abs()).sum();
    let weights: Vec<f64> = e.iter().map(|v| v.abs() / total).collect();

    let (w, h) = images[0].dimensions();
    let mut acc = vec![0.0; pixels];
    for (img, &wt) in images.iter().zip(&weights) {
        for (a, &v) in acc.iter_mut().zip(img.samples()) {
            *a += wt * v;
        }
    }
    Ok(PcaFusion {
        image: GrayImage::new(w, h, acc)?,
        weights,
        fell_back_to_average: false,
    })
}

/// Eigenvector of the algebraically largest eigenvalue of a small symmetric
/// matrix, via cyclic Jacobi rotations.
///
/// The matrices here are `N x N` for `N` = number of input images, so a
/// handful of sweeps is plenty; no external linear-algebra dependency needed.
fn dominant_eigenvector(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    if n == 1 {
        return vec![1.0];
    }
    let mut v = vec![vec![0.0; n]; n];
    for (k, row) in v.iter_mut().enumerate() {
        row[k] = 1.0;
    }

    for _sweep in 0..64 {
        let mut off = 0.0;
        let mut norm = 0.0;
        for p in 0..n {
            for q in 0..n {
                norm += a[p][q] * a[p][q];
                if p != q {
                    off += a[p][q] * a[p][q];
                }
            }
        }
        if off.sqrt() <= 1e-14 * norm.sqrt().max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                // smaller-angle root of t^2 + 2*theta*t - 1 = 0 (Rust's
                // signum maps +-0 to +-1, which is what we want here)
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }

    let best = (0..n)
        .max_by(|&i, &j| a[i][i].total_cmp(&a[j][j]))
        .expect("n >= 1");
    v.iter().map(|row| row[best]).collect()
}

/// Wavelet-domain fusion: decompose every input, keep the detail coefficient
/// with the largest magnitude (ties go to the lowest input index), average
/// the approximation bands, and reconstruct.
///
/// The output is real-valued and unclamped; clamping to displayable range
/// happens at save time only.
pub fn fuse_wavelet(images: &[GrayImage], levels: usize) -> Result<GrayImage> {
    ensure_stack(images)?;
    let pyramids = images
        .iter()
        .map(|im| haar_dwt(im, levels))
        .collect::<Result<Vec<_>>>()?;

    let n = pyramids.len() as f64;
    let (aw, ah) = pyramids[0].approx.dimensions();
    let mut approx = pyramids[0].approx.samples().to_vec();
    for pyr in &pyramids[1..] {
        for (a, &v) in approx.iter_mut().zip(pyr.approx.samples()) {
            *a += v;
        }
    }
    for a in &mut approx {
        *a /= n;
    }

    let max_abs_band = |pick: &dyn Fn(&WaveletPyramid) -> &GrayImage| -> GrayImage {
        let (bw, bh) = pick(&pyramids[0]).dimensions();
        let mut best = pick(&pyramids[0]).samples().to_vec();
        for pyr in &pyramids[1..] {
            for (b, &v) in best.iter_mut().zip(pick(pyr).samples()) {
                if v.abs() > b.abs() {
                    *b = v;
                }
            }
        }
        GrayImage::new(bw, bh, best).expect("band dims are nonzero")
    };

    let details: Vec<DetailBands> = (0..levels)
        .map(|l| DetailBands {
            h: max_abs_band(&|p: &WaveletPyramid| &p.details[l].h),
            v: max_abs_band(&|p: &WaveletPyramid| &p.details[l].v),
            d: max_abs_band(&|p: &WaveletPyramid| &p.details[l].d),
        })
        .collect();

    haar_idwt(&WaveletPyramid {
        approx: GrayImage::new(aw, ah, approx)?,
        details,
        original_dims: pyramids[0].original_dims,
    })
}
