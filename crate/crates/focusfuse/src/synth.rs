//! Synthetic multi-focus test pairs: blur a sharp original with a Gaussian,
//! then hand each half of the frame — split vertically, horizontally, or
//! diagonally — to a different "camera focus".
//!
//! The resulting pair is complementary: wherever one input shows the
//! original, the other shows the blurred version. Fusing such a pair back
//! together has a known ground truth (the original), which makes these pairs
//! the backbone of the benchmark.

use crate::error::{Error, Result};
use crate::image::GrayImage;
use rayon::prelude::*;
use std::fmt;
use std::str::FromStr;

/// Default blur strength for synthesized pairs.
pub const DEFAULT_SIGMA: f64 = 2.0;
/// Default kernel half-width (covers 3 sigma at the default strength).
pub const DEFAULT_RADIUS: usize = 6;

/// Normalized 1-D Gaussian weights over `[-radius, radius]`.
///
/// Weights are proportional to `exp(-i^2 / (2 sigma^2))` and normalized to
/// sum to 1. A radius of at least `ceil(3 sigma)` keeps truncation mild;
/// radius 0 is silently promoted to 1 so a kernel always has support.
pub fn gaussian_kernel(sigma: f64, radius: usize) -> Result<Vec<f64>> {
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(Error::InvalidSigma(sigma));
    }
    let radius = radius.max(1) as isize;
    let two_sigma_sq = 2.0 * sigma * sigma;
    let mut weights: Vec<f64> = (-radius..=radius)
        .map(|i| (-((i * i) as f64) / two_sigma_sq).exp())
        .collect();
    let sum: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= sum;
    }
    Ok(weights)
}

/// Separable Gaussian blur with edge replication; output dims match input.
pub fn gaussian_blur(img: &GrayImage, sigma: f64, radius: usize) -> Result<GrayImage> {
    let kernel = gaussian_kernel(sigma, radius)?;
    let r = (kernel.len() / 2) as isize;
    let (w, h) = img.dimensions();

    // horizontal pass
    let mid: Vec<f64> = (0..h)
        .into_par_iter()
        .flat_map_iter(|y| {
            let row = img.row(y);
            let kernel = &kernel;
            (0..w).map(move |x| {
                let mut acc = 0.0;
                for (t, &k) in kernel.iter().enumerate() {
                    let sx = (x as isize + t as isize - r).clamp(0, w as isize - 1);
                    acc += k * row[sx as usize];
                }
                acc
            })
        })
        .collect();

    // vertical pass
    let out: Vec<f64> = (0..h)
        .into_par_iter()
        .flat_map_iter(|y| {
            let mid = &mid;
            let kernel = &kernel;
            (0..w).map(move |x| {
                let mut acc = 0.0;
                for (t, &k) in kernel.iter().enumerate() {
                    let sy = (y as isize + t as isize - r).clamp(0, h as isize - 1);
                    acc += k * mid[sy as usize * w + x];
                }
                acc
            })
        })
        .collect();

    GrayImage::new(w, h, out)
}

/// How the frame is divided between the two synthetic focus regions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SplitGeometry {
    /// Region = left half (columns `< ceil(width / 2)`).
    #[default]
    Vertical,
    /// Region = top half (rows `< ceil(height / 2)`).
    Horizontal,
    /// Region = below the main (top-left to bottom-right) diagonal.
    DiagMain,
    /// Region = below the anti (top-right to bottom-left) diagonal.
    DiagAnti,
}

impl SplitGeometry {
    pub const ALL: [SplitGeometry; 4] = [
        SplitGeometry::Vertical,
        SplitGeometry::Horizontal,
        SplitGeometry::DiagMain,
        SplitGeometry::DiagAnti,
    ];

    /// Whether pixel `(x, y)` of a `w x h` frame falls in the region that
    /// stays sharp in `input_a`.
    pub fn region_contains(self, x: usize, y: usize, w: usize, h: usize) -> bool {
        match self {
            SplitGeometry::Vertical => x < w.div_ceil(2),
            SplitGeometry::Horizontal => y < h.div_ceil(2),
            SplitGeometry::DiagMain => x * h < y * w,
            SplitGeometry::DiagAnti => (w - 1 - x) * h < y * w,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SplitGeometry::Vertical => "vertical",
            SplitGeometry::Horizontal => "horizontal",
            SplitGeometry::DiagMain => "diag_main",
            SplitGeometry::DiagAnti => "diag_anti",
        }
    }
}

impl fmt::Display for SplitGeometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SplitGeometry {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "vertical" => Ok(SplitGeometry::Vertical),
            "horizontal" => Ok(SplitGeometry::Horizontal),
            "diag_main" => Ok(SplitGeometry::DiagMain),
            "diag_anti" => Ok(SplitGeometry::DiagAnti),
            other => Err(format!(
                "unknown geometry '{other}' (expected vertical, horizontal, diag_main, or diag_anti)"
            )),
        }
    }
}

/// A complementary half-blurred pair plus the pristine original it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct FocusPair {
    /// Sharp inside the geometry's region, blurred elsewhere.
    pub input_a: GrayImage,
    /// Blurred inside the region, sharp elsewhere.
    pub input_b: GrayImage,
    pub original: GrayImage,
    pub geometry: SplitGeometry,
    pub sigma: f64,
    pub radius: usize,
}

/// Builds a complementary pair: `input_a` keeps the original inside the
/// region and takes the blurred image outside it; `input_b` is the mirror.
///
/// The blur is computed once over the whole original, so each input is an
/// exact per-pixel composite of two globally consistent layers.
pub fn make_pair(
    original: &GrayImage,
    geometry: SplitGeometry,
    sigma: f64,
    radius: usize,
) -> Result<FocusPair> {
    let (w, h) = original.dimensions();
    if w < 2 || h < 2 {
        return Err(Error::ImageTooSmall {
            w,
            h,
            min_w: 2,
            min_h: 2,
        });
    }
    let blurred = gaussian_blur(original, sigma, radius)?;
    let compose = |sharp_in_region: bool| {
        GrayImage::from_fn(w, h, |x, y| {
            if geometry.region_contains(x, y, w, h) == sharp_in_region {
                original.get(x, y)
            } else {
                blurred.get(x, y)
            }
        })
        .expect("dims checked above")
    };
    Ok(FocusPair {
        input_a: compose(true),
        input_b: compose(false),
        original: original.clone(),
        geometry,
        sigma,
        radius: radius.max(1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion::{fuse_max_std, TieBreak};
    use crate::stats::sample_std;

    fn noise(w: usize, h: usize, seed: u64) -> GrayImage {
        GrayImage::from_fn(w, h, |x, y| {
            let n = (y * w + x) as u64;
            let mut v = n.wrapping_mul(0xd1342543de82ef95) ^ seed.rotate_left(31);
            v ^= v >> 32;
            v = v.wrapping_mul(0xff51afd7ed558ccd);
            ((v >> 35) % 256) as f64
        })
        .unwrap()
    }

    #[test]
    fn kernel_is_normalized_and_symmetric() {
        for (sigma, radius) in [(0.5, 2), (1.0, 3), (2.0, 6), (4.0, 12)] {
            let k = gaussian_kernel(sigma, radius).unwrap();
            assert_eq!(k.len(), 2 * radius + 1);
            let sum: f64 = k.iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
            for i in 0..radius {
                assert_eq!(k[i], k[2 * radius - i]);
            }
            // weights decay away from the center
            for i in 0..radius {
                assert!(k[i] < k[i + 1]);
            }
        }
    }

    #[test]
    fn kernel_center_matches_direct_evaluation() {
        let k = gaussian_kernel(1.0, 3).unwrap();
        let raw: Vec<f64> = (-3i32..=3).map(|i| (-(i * i) as f64 / 2.0).exp()).collect();
        let sum: f64 = raw.iter().sum();
        assert!((k[3] - raw[3] / sum).abs() < 1e-12);
    }

    #[test]
    fn kernel_rejects_bad_sigma_and_promotes_radius() {
        assert!(matches!(gaussian_kernel(0.0, 3), Err(Error::InvalidSigma(_))));
        assert!(matches!(gaussian_kernel(-1.0, 3), Err(Error::InvalidSigma(_))));
        assert!(matches!(
            gaussian_kernel(f64::NAN, 3),
            Err(Error::InvalidSigma(_))
        ));
        assert_eq!(gaussian_kernel(1.0, 0).unwrap().len(), 3);
    }

    #[test]
    fn blur_fixes_constant_images() {
        let img = GrayImage::constant(9, 7, 42.0).unwrap();
        let out = gaussian_blur(&img, 2.0, 6).unwrap();
        assert!(out.samples().iter().all(|&v| (v - 42.0).abs() < 1e-9));
    }

    #[test]
    fn blur_preserves_global_mean_with_constant_border() {
        // a border band of 2*radius constant pixels makes edge replication
        // exact, so the global mean must survive to rounding accuracy
        let radius = 4;
        let texture = noise(64, 64, 5);
        let img = GrayImage::from_fn(64, 64, |x, y| {
            let band = 2 * radius;
            if x < band || y < band || x >= 64 - band || y >= 64 - band {
                100.0
            } else {
                texture.get(x, y)
            }
        })
        .unwrap();
        let out = gaussian_blur(&img, 2.0, radius).unwrap();
        let mean = |im: &GrayImage| im.samples().iter().sum::<f64>() / im.samples().len() as f64;
        let (before, after) = (mean(&img), mean(&out));
        assert!(
            ((before - after) / before).abs() < 1e-6,
            "mean {before} -> {after}"
        );
    }

    #[test]
    fn blur_reduces_dispersion() {
        let img = noise(32, 32, 6);
        let out = gaussian_blur(&img, 2.0, 6).unwrap();
        assert!(sample_std(out.samples()).unwrap() < sample_std(img.samples()).unwrap());
    }

    #[test]
    fn geometry_regions_split_the_frame() {
        // vertical: ceil(5/2) = 3 columns on the sharp side
        let count = |g: SplitGeometry, w: usize, h: usize| {
            (0..h)
                .flat_map(|y| (0..w).map(move |x| (x, y)))
                .filter(|&(x, y)| g.region_contains(x, y, w, h))
                .count()
        };
        assert_eq!(count(SplitGeometry::Vertical, 5, 4), 12);
        assert_eq!(count(SplitGeometry::Horizontal, 4, 5), 12);

        // square diagonals reduce to x < y and (w-1-x) < y
        assert!(!SplitGeometry::DiagMain.region_contains(0, 0, 4, 4));
        assert!(SplitGeometry::DiagMain.region_contains(0, 1, 4, 4));
        assert!(!SplitGeometry::DiagMain.region_contains(2, 2, 4, 4));
        assert!(!SplitGeometry::DiagAnti.region_contains(3, 0, 4, 4));
        assert!(SplitGeometry::DiagAnti.region_contains(3, 1, 4, 4));
        assert!(!SplitGeometry::DiagAnti.region_contains(0, 2, 4, 4));
        // (0, 4) on a 5x5 lies exactly on the anti-diagonal: excluded
        assert!(!SplitGeometry::DiagAnti.region_contains(0, 4, 5, 5));
        assert!(SplitGeometry::DiagAnti.region_contains(1, 4, 5, 5));
    }

    #[test]
    fn geometry_names_round_trip() {
        for g in SplitGeometry::ALL {
            assert_eq!(g.as_str().parse::<SplitGeometry>().unwrap(), g);
        }
        assert!("diagonal".parse::<SplitGeometry>().is_err());
    }

    #[test]
    fn pair_construction_is_an_exact_composite() {
        let original = noise(24, 18, 7);
        let pair = make_pair(&original, SplitGeometry::Vertical, 2.0, 6).unwrap();
        let blurred = gaussian_blur(&original, 2.0, 6).unwrap();
        assert_eq!(pair.input_a.dimensions(), original.dimensions());
        for y in 0..18 {
            for x in 0..24 {
                if x < 12 {
                    assert_eq!(pair.input_a.get(x, y), original.get(x, y));
                    assert_eq!(pair.input_b.get(x, y), blurred.get(x, y));
                } else {
                    assert_eq!(pair.input_a.get(x, y), blurred.get(x, y));
                    assert_eq!(pair.input_b.get(x, y), original.get(x, y));
                }
                // complementarity: at most one input deviates from the original
                assert!(
                    pair.input_a.get(x, y) == original.get(x, y)
                        || pair.input_b.get(x, y) == original.get(x, y)
                );
            }
        }
    }

    #[test]
    fn pair_rejects_degenerate_dims() {
        let thin = GrayImage::constant(1, 8, 0.0).unwrap();
        assert!(matches!(
            make_pair(&thin, SplitGeometry::Vertical, 2.0, 6),
            Err(Error::ImageTooSmall { .. })
        ));
    }

    #[test]
    fn vanishing_sigma_degenerates_to_the_original() {
        // with sigma -> 0 the kernel underflows to [0, 1, 0], the blur is the
        // identity, and fusion trivially recovers the original bit-for-bit
        let original = noise(16, 16, 8);
        let pair = make_pair(&original, SplitGeometry::DiagMain, 1e-9, 1).unwrap();
        assert_eq!(pair.input_a, original);
        assert_eq!(pair.input_b, original);
        let fused = fuse_max_std(&[pair.input_a, pair.input_b], 2, TieBreak::LowestIndex).unwrap();
        assert_eq!(fused.image, original);
    }

    #[test]
    fn sharp_half_blocks_dominate_in_dispersion() {
        use crate::stats::{block_std_map, BlockGrid};
        let original = noise(64, 64, 9);
        let pair = make_pair(&original, SplitGeometry::Vertical, 2.0, 6).unwrap();
        let grid = BlockGrid::new(64, 64, 4).unwrap();
        let std_a = block_std_map(&pair.input_a, &grid).unwrap();
        let std_b = block_std_map(&pair.input_b, &grid).unwrap();
        // interior sharp-side blocks of input_a: fully left of the split and
        // at least one radius away from it
        for by in 0..grid.ny() {
            for bx in 0..grid.nx() {
                let x_end = (bx + 1) * 4;
                if x_end + 6 <= 32 {
                    assert!(
                        std_a.get(bx, by) >= std_b.get(bx, by),
                        "block ({bx},{by}): sharp {} < blurred {}",
                        std_a.get(bx, by),
                        std_b.get(bx, by)
                    );
                }
            }
        }
    }
}
