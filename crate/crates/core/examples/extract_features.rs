//! The nine texture features of a few word images.
//!
//! `cargo run --example extract_features [word.png ...]`

use hwprint::corpus::{synthesize_word, SynthesisParams};
use hwprint::extract_features;
use hwprint::features::FeatureVector;
use hwprint::imaging::io::load_gray;

fn main() -> hwprint::Result<()> {
    let paths: Vec<String> = std::env::args().skip(1).collect();
    let words = if paths.is_empty() {
        vec![
            (
                "printed seed 1".to_string(),
                synthesize_word(&SynthesisParams::printed(1))?,
            ),
            (
                "printed seed 2".to_string(),
                synthesize_word(&SynthesisParams::printed(2))?,
            ),
            (
                "handwritten seed 1".to_string(),
                synthesize_word(&SynthesisParams::handwritten(1))?,
            ),
            (
                "handwritten seed 2".to_string(),
                synthesize_word(&SynthesisParams::handwritten(2))?,
            ),
        ]
    } else {
        paths
            .into_iter()
            .map(|p| load_gray(&p).map(|img| (p, img)))
            .collect::<Result<_, _>>()?
    };

    print!("{:<20}", "word");
    for name in FeatureVector::NAMES {
        print!("{name:>14}");
    }
    println!();
    for (name, img) in &words {
        print!("{name:<20}");
        for v in extract_features(img).to_array() {
            print!("{v:>14.5}");
        }
        println!();
    }
    Ok(())
}
