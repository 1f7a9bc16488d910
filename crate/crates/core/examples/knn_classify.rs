//! Train a k-NN model on synthetic words and classify fresh ones.
//!
//! `cargo run --example knn_classify`

use hwprint::corpus::{synthesize_batch, WordKind};
use hwprint::{extract_features, knn_fit, knn_predict, FeatureVector, Label};

fn features(kind: WordKind, n: usize, seed: u64) -> hwprint::Result<Vec<FeatureVector>> {
    Ok(synthesize_batch(kind, n, seed)?.iter().map(extract_features).collect())
}

fn main() -> hwprint::Result<()> {
    let mut train = features(WordKind::Handwritten, 60, 1)?;
    let mut labels = vec![Label::Handwritten; train.len()];
    train.extend(features(WordKind::Printed, 60, 2)?);
    labels.resize(train.len(), Label::Printed);
    let model = knn_fit(&train, &labels, 5)?;
    println!("trained on {} words, k = {}", model.len(), model.k());

    for (kind, truth) in [
        (WordKind::Handwritten, Label::Handwritten),
        (WordKind::Printed, Label::Printed),
    ] {
        let queries = features(kind, 5, 99)?;
        for q in &queries {
            let p = knn_predict(&model, q);
            let votes: Vec<&str> = p.neighbors.iter().map(|n| n.label.as_str()).collect();
            println!(
                "truth {truth:<11} predicted {:<11} nearest {:.3}  votes {votes:?}",
                p.label,
                p.nearest_distance()
            );
        }
    }
    Ok(())
}
