//! Statistical texture features of a word image.
//!
//! Six features come from the normalized intensity histogram (mean, standard
//! deviation, smoothness, third central moment, uniformity, entropy) with the
//! intensity axis rescaled to `[0, 1]`. Three more are the image-wide means of
//! sliding-window filters: local standard deviation, local range and local
//! entropy.

mod local;

pub use local::{local_filter, FilterKind, FloatImage};

use crate::error::Result;
use crate::imaging::{histogram, GrayImage, Histogram, LEVELS};

/// Number of features in a [`FeatureVector`].
pub const FEATURE_COUNT: usize = 9;

/// Per-level probabilities `p(r_i) = h(r_i) / N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedHistogram {
    p: [f64; LEVELS],
}

impl NormalizedHistogram {
    pub fn from_histogram(hist: &Histogram) -> Self {
        let n = hist.total() as f64;
        let mut p = [0.0; LEVELS];
        for (pi, &c) in p.iter_mut().zip(hist.counts()) {
            *pi = c as f64 / n;
        }
        NormalizedHistogram { p }
    }

    pub fn probabilities(&self) -> &[f64; LEVELS] {
        &self.p
    }

    /// Level `i` mapped onto `[0, 1]`.
    #[inline]
    pub fn level_value(i: usize) -> f64 {
        i as f64 / (LEVELS - 1) as f64
    }

    pub fn mean(&self) -> f64 {
        self.p.iter().enumerate().map(|(i, &p)| Self::level_value(i) * p).sum()
    }
}

pub fn normalized_histogram(crop: &GrayImage) -> NormalizedHistogram {
    NormalizedHistogram::from_histogram(&histogram(crop))
}

/// `n`-th central moment on the normalized intensity axis.
pub fn central_moment(h: &NormalizedHistogram, n: i32) -> f64 {
    let m = h.mean();
    h.p.iter()
        .enumerate()
        .map(|(i, &p)| (NormalizedHistogram::level_value(i) - m).powi(n) * p)
        .sum()
}

/// The six histogram features.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalFeatures {
    pub mean: f64,
    pub std_dev: f64,
    pub smoothness: f64,
    pub third_moment: f64,
    pub uniformity: f64,
    pub entropy: f64,
}

pub fn global_features(h: &NormalizedHistogram) -> GlobalFeatures {
    let mean = h.mean();
    let (mut m2, mut m3, mut uniformity, mut plogp) = (0.0, 0.0, 0.0, 0.0);
    for (i, &p) in h.p.iter().enumerate() {
        if p == 0.0 {
            continue;
        }
        let d = NormalizedHistogram::level_value(i) - mean;
        m2 += d * d * p;
        m3 += d * d * d * p;
        uniformity += p * p;
        plogp += p * p.log2();
    }
    GlobalFeatures {
        mean,
        std_dev: m2.sqrt(),
        smoothness: 1.0 - 1.0 / (1.0 + m2),
        third_moment: m3,
        uniformity,
        entropy: 0.0 - plogp,
    }
}

/// Texture descriptor of one word image.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FeatureVector {
    pub mean: f64,
    pub std_dev: f64,
    pub smoothness: f64,
    pub third_moment: f64,
    pub uniformity: f64,
    pub entropy: f64,
    pub local_std: f64,
    pub local_range: f64,
    pub local_entropy: f64,
}

impl FeatureVector {
    /// Column names, in [`FeatureVector::to_array`] order.
    pub const NAMES: [&'static str; FEATURE_COUNT] = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9"];

    pub fn to_array(&self) -> [f64; FEATURE_COUNT] {
        [
            self.mean,
            self.std_dev,
            self.smoothness,
            self.third_moment,
            self.uniformity,
            self.entropy,
            self.local_std,
            self.local_range,
            self.local_entropy,
        ]
    }

    pub fn from_array(a: [f64; FEATURE_COUNT]) -> Self {
        FeatureVector {
            mean: a[0],
            std_dev: a[1],
            smoothness: a[2],
            third_moment: a[3],
            uniformity: a[4],
            entropy: a[5],
            local_std: a[6],
            local_range: a[7],
            local_entropy: a[8],
        }
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }
}

impl From<[f64; FEATURE_COUNT]> for FeatureVector {
    fn from(a: [f64; FEATURE_COUNT]) -> Self {
        FeatureVector::from_array(a)
    }
}

/// Window sizes of the three local filters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FeatureConfig {
    pub std_window: usize,
    pub range_window: usize,
    pub entropy_window: usize,
}

impl Default for FeatureConfig {
    fn default() -> Self {
        FeatureConfig {
            std_window: 3,
            range_window: 3,
            entropy_window: 9,
        }
    }
}

/// All nine features with the default windows (3×3, 3×3, 9×9).
pub fn extract_features(crop: &GrayImage) -> FeatureVector {
    extract_features_with(crop, &FeatureConfig::default()).expect("default windows are valid")
}

pub fn extract_features_with(crop: &GrayImage, cfg: &FeatureConfig) -> Result<FeatureVector> {
    let g = global_features(&normalized_histogram(crop));
    let local_std = local_filter(crop, FilterKind::LocalStd(cfg.std_window))?.mean();
    let local_range = local_filter(crop, FilterKind::LocalRange(cfg.range_window))?.mean();
    let local_entropy = local_filter(crop, FilterKind::LocalEntropy(cfg.entropy_window))?.mean();
    Ok(FeatureVector {
        mean: g.mean,
        std_dev: g.std_dev,
        smoothness: g.smoothness,
        third_moment: g.third_moment,
        uniformity: g.uniformity,
        entropy: g.entropy,
        local_std,
        local_range,
        local_entropy,
    })
}
