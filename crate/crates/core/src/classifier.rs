//! k-nearest-neighbor classification over z-score standardized features.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_COUNT};

/// Scales below this are treated as zero variance.
const MIN_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Handwritten = 0,
    Printed = 1,
}

impl Label {
    pub const ALL: [Label; 2] = [Label::Handwritten, Label::Printed];

    pub fn code(self) -> usize {
        self as usize
    }

    pub fn from_code(code: usize) -> Option<Label> {
        Label::ALL.get(code).copied()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Label::Handwritten => "handwritten",
            Label::Printed => "printed",
        }
    }

    /// Capitalized name used in report tables.
    pub fn title(self) -> &'static str {
        match self {
            Label::Handwritten => "Handwritten",
            Label::Printed => "Printed",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "handwritten" => Ok(Label::Handwritten),
            "printed" => Ok(Label::Printed),
            other => Err(Error::Data(format!("unknown label `{other}`"))),
        }
    }
}

/// Per-feature affine normalization `(v - mean) / scale`.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: [f64; FEATURE_COUNT],
    pub scale: [f64; FEATURE_COUNT],
}

impl Standardizer {
    pub fn identity() -> Self {
        Standardizer {
            mean: [0.0; FEATURE_COUNT],
            scale: [1.0; FEATURE_COUNT],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.mean.iter().any(|m| !m.is_finite()) || self.scale.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return Err(Error::Data(
                "standardizer needs finite means and positive scales".into(),
            ));
        }
        Ok(())
    }

    pub fn apply(&self, v: &[f64; FEATURE_COUNT]) -> [f64; FEATURE_COUNT] {
        std::array::from_fn(|i| (v[i] - self.mean[i]) / self.scale[i])
    }

    pub fn invert(&self, v: &[f64; FEATURE_COUNT]) -> [f64; FEATURE_COUNT] {
        std::array::from_fn(|i| v[i] * self.scale[i] + self.mean[i])
    }
}

/// Per-feature mean and population standard deviation. Zero-variance
/// features get scale 1.
pub fn fit_standardizer(samples: &[FeatureVector]) -> Result<Standardizer> {
    if samples.is_empty() {
        return Err(Error::Data("cannot fit a standardizer to zero samples".into()));
    }
    let n = samples.len() as f64;
    let mut mean = [0.0; FEATURE_COUNT];
    for s in samples {
        for (m, v) in mean.iter_mut().zip(s.to_array()) {
            *m += v;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);

    let mut scale = [0.0; FEATURE_COUNT];
    for s in samples {
        for ((acc, v), m) in scale.iter_mut().zip(s.to_array()).zip(mean) {
            *acc += (v - m) * (v - m);
        }
    }
    for sd in scale.iter_mut() {
        *sd = (*sd / n).sqrt();
        if sd.is_nan() || *sd < MIN_SCALE {
            *sd = 1.0;
        }
    }
    Ok(Standardizer { mean, scale })
}

pub fn standardize(v: &FeatureVector, s: &Standardizer) -> FeatureVector {
    FeatureVector::from_array(s.apply(&v.to_array()))
}

pub fn unstandardize(v: &FeatureVector, s: &Standardizer) -> FeatureVector {
    FeatureVector::from_array(s.invert(&v.to_array()))
}

/// One of the k nearest training vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    /// Position in the training set.
    pub index: usize,
    pub label: Label,
    /// Euclidean distance in standardized feature space.
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub label: Label,
    /// Sorted by distance, then training index.
    pub neighbors: Vec<Neighbor>,
}

impl Prediction {
    pub fn nearest_distance(&self) -> f64 {
        self.neighbors[0].distance
    }
}

/// Instance-based classifier: the standardized training set plus its scaler.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    vectors: Vec<[f64; FEATURE_COUNT]>,
    labels: Vec<Label>,
    k: usize,
    standardizer: Standardizer,
}

fn check_k(k: usize, n: usize) -> Result<()> {
    if k == 0 || k.is_multiple_of(2) {
        return Err(Error::Config(format!("k must be odd and positive, got {k}")));
    }
    if k > n {
        return Err(Error::Config(format!("k = {k} exceeds the {n} training samples")));
    }
    Ok(())
}

impl KnnModel {
    /// Reassembles a model from already-standardized vectors.
    pub fn from_parts(
        standardizer: Standardizer,
        vectors: Vec<[f64; FEATURE_COUNT]>,
        labels: Vec<Label>,
        k: usize,
    ) -> Result<Self> {
        if vectors.len() != labels.len() {
            return Err(Error::Config(format!(
                "{} vectors but {} labels",
                vectors.len(),
                labels.len()
            )));
        }
        check_k(k, vectors.len())?;
        standardizer.validate()?;
        Ok(KnnModel {
            vectors,
            labels,
            k,
            standardizer,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn standardizer(&self) -> &Standardizer {
        &self.standardizer
    }

    /// Standardized training vectors.
    pub fn vectors(&self) -> &[[f64; FEATURE_COUNT]] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn predict(&self, query: &FeatureVector) -> Prediction {
        knn_predict(self, query)
    }
}

/// Fits the standardizer on `samples` and stores the standardized copies.
pub fn knn_fit(samples: &[FeatureVector], labels: &[Label], k: usize) -> Result<KnnModel> {
    if samples.len() != labels.len() {
        return Err(Error::Config(format!(
            "{} samples but {} labels",
            samples.len(),
            labels.len()
        )));
    }
    check_k(k, samples.len())?;
    let standardizer = fit_standardizer(samples)?;
    let vectors = samples.iter().map(|s| standardizer.apply(&s.to_array())).collect();
    Ok(KnnModel {
        vectors,
        labels: labels.to_vec(),
        k,
        standardizer,
    })
}

fn squared_distance(a: &[f64; FEATURE_COUNT], b: &[f64; FEATURE_COUNT]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Majority vote over the k nearest training vectors. Equal distances are
/// ordered by training index; a tied vote goes to the nearest neighbor's class.
pub fn knn_predict(model: &KnnModel, query: &FeatureVector) -> Prediction {
    let q = model.standardizer.apply(&query.to_array());
    let mut scored: Vec<(f64, usize)> = model
        .vectors
        .iter()
        .enumerate()
        .map(|(i, v)| (squared_distance(&q, v), i))
        .collect();
    let order = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
    let k = model.k;
    if k < scored.len() {
        scored.select_nth_unstable_by(k - 1, order);
        scored.truncate(k);
    }
    scored.sort_unstable_by(order);

    let neighbors: Vec<Neighbor> = scored
        .iter()
        .map(|&(d2, index)| Neighbor {
            index,
            label: model.labels[index],
            distance: d2.sqrt(),
        })
        .collect();

    let mut votes = [0usize; 2];
    for n in &neighbors {
        votes[n.label.code()] += 1;
    }
    let label = match votes[0].cmp(&votes[1]) {
        std::cmp::Ordering::Greater => Label::Handwritten,
        std::cmp::Ordering::Less => Label::Printed,
        std::cmp::Ordering::Equal => neighbors[0].label,
    };
    Prediction { label, neighbors }
}
