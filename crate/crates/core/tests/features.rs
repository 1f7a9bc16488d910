mod common;

use common::*;
use hwprint::corpus::{synthesize_batch, WordKind};
use hwprint::features::*;
use hwprint::imaging::{histogram, GrayImage};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type WindowStat = fn(&[u8]) -> f64;

fn assert_global_matches(img: &GrayImage) {
    let f = extract_features(img).to_array();
    let o = global_features_oracle(img);
    let sigma = o[1];
    // moments are compared on their natural scale (σ^n); the rest relative to themselves
    let floors = [0.0, 0.0, 0.0, sigma.powi(3), 0.0, 0.0];
    for i in 0..6 {
        assert!(
            close_rel(f[i], o[i], 1e-12, floors[i].max(f64::MIN_POSITIVE)),
            "f{} = {} vs oracle {} on {}x{}",
            i + 1,
            f[i],
            o[i],
            img.width(),
            img.height()
        );
    }
}

#[test]
fn global_features_match_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let (w, h) = (rng.gen_range(1..50), rng.gen_range(1..50));
        assert_global_matches(&random_image(&mut rng, w, h));
    }
}

#[test]
fn local_filters_match_window_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..40 {
        let (w, h) = (rng.gen_range(1..30), rng.gen_range(1..30));
        let img = random_image(&mut rng, w, h);
        let win = 2 * rng.gen_range(1..6) + 1;
        let cases: [(FilterKind, WindowStat); 3] = [
            (FilterKind::LocalStd(win), window_std),
            (FilterKind::LocalRange(win), window_range),
            (FilterKind::LocalEntropy(win), window_entropy),
        ];
        for (kind, stat) in cases {
            let got = local_filter(&img, kind).unwrap();
            let want = filter_oracle(&img, win, stat);
            for (a, b) in got.data.iter().zip(&want) {
                assert!((a - b).abs() <= 1e-9, "{kind:?}: {a} vs {b}");
            }
        }
    }
}

#[test]
fn closed_form_cases() {
    for v in [0u8, 1, 77, 254, 255] {
        let f = extract_features(&GrayImage::filled(7, 5, v)).to_array();
        assert_eq!(f, [v as f64 / 255.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0]);
    }

    let mut px = vec![0u8; 50];
    px.extend(vec![255u8; 50]);
    let g = global_features(&normalized_histogram(&GrayImage::new(10, 10, px).unwrap()));
    let got = [g.mean, g.std_dev, g.smoothness, g.third_moment, g.uniformity, g.entropy];
    for (a, b) in got.iter().zip([0.5, 0.5, 0.2, 0.0, 0.5, 1.0]) {
        assert!((a - b).abs() <= 1e-12, "{got:?}");
    }

    let all: Vec<u8> = (0..=255).collect();
    let g = global_features(&normalized_histogram(&GrayImage::new(16, 16, all).unwrap()));
    assert!((g.entropy - 8.0).abs() <= 1e-12);
    assert!((g.uniformity - 1.0 / 256.0).abs() <= 1e-12);

    let pair = GrayImage::new(2, 1, vec![0, 255]).unwrap();
    assert_eq!(extract_features(&pair).local_range, 255.0);
}

#[test]
fn central_moment_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..30 {
        let img = random_image(&mut rng, 13, 9);
        let h = normalized_histogram(&img);
        assert!((central_moment(&h, 0) - 1.0).abs() <= 1e-12);
        assert!(central_moment(&h, 1).abs() <= 1e-12);
        let g = global_features(&h);
        assert!((central_moment(&h, 2) - g.std_dev * g.std_dev).abs() <= 1e-12);
        let sum: f64 = h.probabilities().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12);
        let counts = histogram(&img);
        for (p, &c) in h.probabilities().iter().zip(counts.counts()) {
            assert_eq!(*p, c as f64 / counts.total() as f64);
        }
    }
    let mut px = vec![0u8; 2];
    px.extend([255u8; 2]);
    let h = normalized_histogram(&GrayImage::new(4, 1, px).unwrap());
    assert!((central_moment(&h, 2) - 0.25).abs() <= 1e-15);
}

#[test]
fn symmetric_histograms_have_zero_skew() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    for _ in 0..50 {
        let center = rng.gen_range(40..=215u8) as i32;
        let mut px = Vec::new();
        for _ in 0..rng.gen_range(1..20) {
            let d = rng.gen_range(0..40);
            let reps = rng.gen_range(1..5);
            for _ in 0..reps {
                px.push((center - d) as u8);
                px.push((center + d) as u8);
            }
        }
        let n = px.len();
        let g = global_features(&normalized_histogram(&GrayImage::new(n, 1, px).unwrap()));
        assert!(g.third_moment.abs() <= 1e-12, "{}", g.third_moment);
    }
}

#[test]
fn single_bin_iff_zero_entropy_iff_unit_uniformity() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    for _ in 0..200 {
        let (w, h) = (rng.gen_range(1..12), rng.gen_range(1..12));
        let img = random_image(&mut rng, w, h);
        let single = histogram(&img).occupied_levels() == 1;
        let g = global_features(&normalized_histogram(&img));
        assert_eq!(g.entropy == 0.0, single);
        assert_eq!(g.uniformity == 1.0, single);
    }
}

#[test]
fn class_means_differ_on_synthetic_words() {
    let mean = |kind| {
        let words = synthesize_batch(kind, 100, 2024).unwrap();
        let mut acc = [0.0; 2];
        for w in &words {
            let f = extract_features(w);
            acc[0] += f.std_dev / 100.0;
            acc[1] += f.local_std / 100.0;
        }
        acc
    };
    let (hand, printed) = (mean(WordKind::Handwritten), mean(WordKind::Printed));
    assert!(
        hand[1] > printed[1],
        "local std: handwritten {} printed {}",
        hand[1],
        printed[1]
    );
    assert!((hand[0] - printed[0]).abs() > 0.0);
}

#[test]
fn bad_windows_rejected() {
    let img = GrayImage::filled(4, 4, 9);
    for w in [0, 1, 2, 4] {
        let cfg = FeatureConfig {
            std_window: w,
            ..FeatureConfig::default()
        };
        assert!(extract_features_with(&img, &cfg).unwrap_err().is_config());
    }
}

fn gray_strategy() -> impl Strategy<Value = GrayImage> {
    (1usize..20, 1usize..20).prop_flat_map(|(w, h)| {
        proptest::collection::vec(any::<u8>(), w * h).prop_map(move |px| GrayImage::new(w, h, px).unwrap())
    })
}

proptest! {
    #[test]
    fn features_stay_in_range(img in gray_strategy()) {
        let f = extract_features(&img);
        prop_assert!(f.is_finite());
        prop_assert!((0.0..=1.0).contains(&f.mean));
        prop_assert!((0.0..=0.5).contains(&f.std_dev));
        prop_assert!((0.0..=0.2).contains(&f.smoothness));
        prop_assert!((-0.125..=0.125).contains(&f.third_moment));
        prop_assert!(f.uniformity > 0.0 && f.uniformity <= 1.0);
        prop_assert!((0.0..=8.0).contains(&f.entropy));
        prop_assert!(f.local_std >= 0.0);
        prop_assert!((0.0..=255.0).contains(&f.local_range));
        prop_assert!((0.0..=8.0).contains(&f.local_entropy));
    }

    #[test]
    fn histogram_features_ignore_pixel_order(img in gray_strategy(), seed in any::<u64>()) {
        let mut px = img.pixels().to_vec();
        px.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let shuffled = GrayImage::new(img.width(), img.height(), px).unwrap();
        let (a, b) = (extract_features(&img).to_array(), extract_features(&shuffled).to_array());
        prop_assert_eq!(&a[..6], &b[..6]);
    }

    #[test]
    fn identity_crop_is_exact(img in gray_strategy()) {
        prop_assert_eq!(extract_features(&img.crop(img.full_bbox()).unwrap()), extract_features(&img));
    }
}
