use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::classifier::{KnnModel, Label, Standardizer};
use crate::error::{Error, Result};
use crate::features::FEATURE_COUNT;

pub const MODEL_FORMAT_VERSION: u64 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    format_version: u64,
    k: usize,
    standardizer: StandardizerDoc,
    samples: Vec<SampleDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StandardizerDoc {
    mean: [f64; FEATURE_COUNT],
    scale: [f64; FEATURE_COUNT],
}

/// One training vector, already standardized.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleDoc {
    label: Label,
    features: [f64; FEATURE_COUNT],
}

pub fn model_to_json(model: &KnnModel) -> String {
    let s = model.standardizer();
    let doc = ModelDoc {
        format_version: MODEL_FORMAT_VERSION,
        k: model.k(),
        standardizer: StandardizerDoc {
            mean: s.mean,
            scale: s.scale,
        },
        samples: model
            .vectors()
            .iter()
            .zip(model.labels())
            .map(|(v, &label)| SampleDoc { label, features: *v })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("model is serializable")
}

pub fn model_from_json(text: &str) -> Result<KnnModel> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::ModelSchema(format!("invalid JSON: {e}")))?;
    let version = value
        .get("format_version")
        .ok_or_else(|| Error::ModelSchema("missing format_version".into()))?
        .as_u64()
        .ok_or_else(|| Error::ModelSchema("format_version must be a non-negative integer".into()))?;
    if version != MODEL_FORMAT_VERSION {
        return Err(Error::ModelVersion {
            found: version,
            expected: MODEL_FORMAT_VERSION,
        });
    }
    let doc: ModelDoc = serde_json::from_value(value).map_err(|e| Error::ModelSchema(e.to_string()))?;
    let standardizer = Standardizer {
        mean: doc.standardizer.mean,
        scale: doc.standardizer.scale,
    };
    let (vectors, labels) = doc.samples.into_iter().map(|s| (s.features, s.label)).unzip();
    KnnModel::from_parts(standardizer, vectors, labels, doc.k).map_err(|e| Error::ModelSchema(e.to_string()))
}

pub fn save_model(model: &KnnModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, model_to_json(model)).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<KnnModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    model_from_json(&text)
}
