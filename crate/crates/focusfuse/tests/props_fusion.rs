//! Property tests for block-selection fusion: provenance, determinism under
//! reindexing, scale equivariance, and equivalence with a brute-force
//! reference.

use focusfuse::{fuse_max_std, BlockGrid, GrayImage, TieBreak};
use proptest::prelude::*;

fn stack(max_dim: usize) -> impl Strategy<Value = Vec<GrayImage>> {
    (1..=max_dim, 1..=max_dim, 2usize..=4).prop_flat_map(|(w, h, n)| {
        proptest::collection::vec(proptest::collection::vec(0u8..=255, w * h), n).prop_map(
            move |imgs| {
                imgs.into_iter()
                    .map(|v| {
                        GrayImage::new(w, h, v.into_iter().map(f64::from).collect()).unwrap()
                    })
                    .collect()
            },
        )
    })
}

/// Brute-force reference: same dispersion formula, but straight-line loops
/// instead of grids, gather buffers, parallel iterators, and block copies.
fn reference_fuse(images: &[GrayImage], k: usize, tie: TieBreak) -> GrayImage {
    let (w, h) = images[0].dimensions();
    let mut out = vec![0.0; w * h];
    let mut y0 = 0;
    while y0 < h {
        let bh = k.min(h - y0);
        let mut x0 = 0;
        while x0 < w {
            let bw = k.min(w - x0);
            let mut best = 0usize;
            let mut best_std = f64::NEG_INFINITY;
            for (idx, img) in images.iter().enumerate() {
                let mut vals = Vec::new();
                for y in y0..y0 + bh {
                    for x in x0..x0 + bw {
                        vals.push(img.get(x, y));
                    }
                }
                let std = if vals.len() < 2 {
                    0.0
                } else {
                    let mean = vals.iter().sum::<f64>() / vals.len() as f64;
                    let ss: f64 = vals.iter().map(|v| (v - mean) * (v - mean)).sum();
                    (ss / (vals.len() - 1) as f64).sqrt()
                };
                let wins = match tie {
                    TieBreak::LowestIndex => std > best_std,
                    TieBreak::HighestIndex => std >= best_std,
                };
                if wins {
                    best = idx;
                    best_std = std;
                }
            }
            for y in y0..y0 + bh {
                for x in x0..x0 + bw {
                    out[y * w + x] = images[best].get(x, y);
                }
            }
            x0 += k;
        }
        y0 += k;
    }
    GrayImage::new(w, h, out).unwrap()
}

proptest! {
    // every output block is a verbatim copy of the block the selection map
    // points at, and every selection index is a valid input index
    #[test]
    fn output_blocks_come_from_selected_inputs(
        images in stack(20),
        k in 1usize..=6,
    ) {
        let fused = fuse_max_std(&images, k, TieBreak::LowestIndex).unwrap();
        let (w, h) = images[0].dimensions();
        prop_assert_eq!(fused.image.dimensions(), (w, h));
        let grid = BlockGrid::new(w, h, k).unwrap();
        for (rect, &idx) in grid.rects().iter().zip(fused.selection.source_indices()) {
            prop_assert!(idx < images.len());
            for y in rect.y0..rect.y0 + rect.h {
                for x in rect.x0..rect.x0 + rect.w {
                    prop_assert_eq!(fused.image.get(x, y), images[idx].get(x, y));
                }
            }
        }
    }

    // a stack of copies fuses to the copy
    #[test]
    fn identical_stacks_are_fixed_points(img_stack in stack(16), k in 1usize..=5) {
        let img = img_stack[0].clone();
        let n = img_stack.len();
        let fused = fuse_max_std(&vec![img.clone(); n], k, TieBreak::LowestIndex).unwrap();
        prop_assert_eq!(fused.image, img);
    }

    // reversing the stack while flipping the tie rule must pick the same
    // source images, so the fused output is bit-identical
    #[test]
    fn stack_reversal_with_flipped_ties_matches(images in stack(16), k in 1usize..=5) {
        let forward = fuse_max_std(&images, k, TieBreak::LowestIndex).unwrap();
        let mut reversed = images.clone();
        reversed.reverse();
        let backward = fuse_max_std(&reversed, k, TieBreak::HighestIndex).unwrap();
        prop_assert_eq!(forward.image, backward.image);
    }

    // multiplying every input by a power of two scales all stds exactly,
    // preserving every comparison and tie: fuse(s*X) == s*fuse(X) bitwise
    #[test]
    fn pow2_scaling_equivariance(
        images in stack(16),
        k in 1usize..=5,
        scale in prop_oneof![Just(0.5f64), Just(2.0), Just(4.0)],
    ) {
        let scaled: Vec<GrayImage> = images
            .iter()
            .map(|im| {
                let (w, h) = im.dimensions();
                GrayImage::new(w, h, im.samples().iter().map(|v| v * scale).collect()).unwrap()
            })
            .collect();
        let plain = fuse_max_std(&images, k, TieBreak::LowestIndex).unwrap();
        let fused_scaled = fuse_max_std(&scaled, k, TieBreak::LowestIndex).unwrap();
        prop_assert_eq!(
            fused_scaled.selection.source_indices(),
            plain.selection.source_indices()
        );
        for (a, b) in fused_scaled.image.samples().iter().zip(plain.image.samples()) {
            prop_assert_eq!(*a, b * scale);
        }
    }

    // full equivalence with the straight-line reference, both tie rules
    #[test]
    fn matches_brute_force_reference(
        images in stack(20),
        k in prop_oneof![Just(1usize), Just(2), Just(3), Just(5)],
    ) {
        for tie in [TieBreak::LowestIndex, TieBreak::HighestIndex] {
            let fused = fuse_max_std(&images, k, tie).unwrap();
            let expected = reference_fuse(&images, k, tie);
            prop_assert_eq!(&fused.image, &expected);
        }
    }
}
