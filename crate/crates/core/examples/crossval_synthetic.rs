//! Ten-fold cross-validation on synthetic words, printed as accuracy and
//! confusion tables.
//!
//! `cargo run --release --example crossval_synthetic [words_per_class]`

use hwprint::corpus::{synthesize_batch, WordKind};
use hwprint::evaluation::{format_report, ReportLayout};
use hwprint::{cross_validate, extract_features, CvParams, Label, LabeledSample};

fn main() -> hwprint::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(200, |s| s.parse().expect("word count"));
    let mut samples = Vec::new();
    for (kind, label) in [
        (WordKind::Handwritten, Label::Handwritten),
        (WordKind::Printed, Label::Printed),
    ] {
        for (i, img) in synthesize_batch(kind, n, 42)?.iter().enumerate() {
            samples.push(LabeledSample::new(
                format!("{label}/{i:04}.png"),
                label,
                extract_features(img),
            ));
        }
    }

    let reports = [1, 3, 5, 7]
        .into_iter()
        .map(|k| {
            cross_validate(
                &samples,
                &CvParams {
                    k,
                    ..CvParams::default()
                },
            )
        })
        .collect::<hwprint::Result<Vec<_>>>()?;
    println!("{}", format_report(ReportLayout::PerK(&reports)).text);
    println!("{}", format_report(ReportLayout::Confusion(&reports[2])).text);
    println!("k = 5 summary: {}", reports[2].summary());
    Ok(())
}
