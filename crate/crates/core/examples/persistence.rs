//! Feature tables and model files on disk.
//!
//! `cargo run --example persistence [out_dir]`
//!
//! Writes `features.csv` and `model.json`, reads both back and checks that
//! nothing changed.

use hwprint::corpus::{features_from_csv, features_to_csv, load_model, save_model, synthesize_batch, WordKind};
use hwprint::{extract_features, knn_fit, knn_predict, Label, LabeledSample};

fn main() -> hwprint::Result<()> {
    let dir = std::env::args().nth(1).map_or_else(std::env::temp_dir, Into::into);
    std::fs::create_dir_all(&dir).expect("create output directory");

    let mut samples = Vec::new();
    for (kind, label) in [
        (WordKind::Handwritten, Label::Handwritten),
        (WordKind::Printed, Label::Printed),
    ] {
        for (i, img) in synthesize_batch(kind, 25, 3)?.iter().enumerate() {
            samples.push(LabeledSample::new(
                format!("{label}/w{i:02}.png"),
                label,
                extract_features(img),
            ));
        }
    }

    let csv_path = dir.join("features.csv");
    features_to_csv(&samples, &csv_path)?;
    let reread = features_from_csv(&csv_path)?;
    println!(
        "{}: {} rows, identical after reload: {}",
        csv_path.display(),
        reread.len(),
        reread == samples
    );

    let vectors: Vec<_> = reread.iter().map(|s| s.features).collect();
    let labels: Vec<_> = reread.iter().map(|s| s.label).collect();
    let model = knn_fit(&vectors, &labels, 3)?;
    let model_path = dir.join("model.json");
    save_model(&model, &model_path)?;
    let loaded = load_model(&model_path)?;
    let same = vectors
        .iter()
        .all(|q| knn_predict(&model, q) == knn_predict(&loaded, q));
    println!("{}: identical predictions after reload: {same}", model_path.display());
    Ok(())
}
