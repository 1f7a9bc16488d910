//! Labeled word datasets: directory ingestion, feature CSV files, model
//! files and a synthetic word generator.

mod ingest;
mod model_file;
mod synth;
mod table;

pub use ingest::{ingest_directory, IngestedImage, Ingestion};
pub use model_file::{load_model, model_from_json, model_to_json, save_model, MODEL_FORMAT_VERSION};
pub use synth::{
    synthesize_batch, synthesize_page, synthesize_word, synthesize_word_detailed, PageLayout, SynthesisParams,
    SyntheticPage, SyntheticWord, WordKind,
};
pub use table::{features_from_csv, features_to_csv, read_features_csv, write_features_csv, FEATURE_CSV_HEADER};

use crate::classifier::Label;
use crate::features::FeatureVector;

/// A word's features with its class and where it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSample {
    /// Image path relative to the dataset root, `/`-separated.
    pub path: String,
    pub label: Label,
    /// Sub-collection name, e.g. the script of `handwritten/kannada/w1.png`.
    pub group: Option<String>,
    pub features: FeatureVector,
}

impl LabeledSample {
    pub fn new(path: impl Into<String>, label: Label, features: FeatureVector) -> Self {
        let path = path.into();
        let group = group_from_path(&path);
        LabeledSample {
            path,
            label,
            group,
            features,
        }
    }
}

/// Group encoded in a dataset path: the directory between the label
/// directory and the file, as in `printed/<group>/<file>`.
pub fn group_from_path(path: &str) -> Option<String> {
    let parts: Vec<&str> = path.split(['/', '\\']).filter(|p| !p.is_empty()).collect();
    let label_pos = parts
        .iter()
        .rposition(|p| p.parse::<Label>().is_ok_and(|l| l.as_str() == p.to_ascii_lowercase()))?;
    (parts.len() == label_pos + 3).then(|| parts[label_pos + 1].to_string())
}

/// Splits samples by group; ungrouped samples are omitted. Groups are sorted by name.
pub fn split_by_group(samples: &[LabeledSample]) -> Vec<(String, Vec<LabeledSample>)> {
    let mut groups: std::collections::BTreeMap<String, Vec<LabeledSample>> = Default::default();
    for s in samples {
        if let Some(g) = &s.group {
            groups.entry(g.clone()).or_default().push(s.clone());
        }
    }
    groups.into_iter().collect()
}
