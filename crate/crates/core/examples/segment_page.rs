//! Word segmentation of a synthetic page with a ruling line.
//!
//! `cargo run --example segment_page [out_dir]`
//!
//! Twelve words are laid out in a 3x4 grid and a full-width rule is drawn
//! under the first row. The rule is removed during cleaning and the
//! recovered boxes are compared with the generator's ground truth.

use hwprint::corpus::{synthesize_page, PageLayout, SynthesisParams};
use hwprint::imaging::io::save_png;
use hwprint::{segment_words, SegmentationConfig};

fn main() -> hwprint::Result<()> {
    let words: Vec<_> = (0..12u64)
        .map(|i| {
            if i % 2 == 0 {
                SynthesisParams::printed(i)
            } else {
                SynthesisParams::handwritten(i)
            }
        })
        .collect();
    let layout = PageLayout::default();
    let synthetic = synthesize_page(&words, &layout)?;
    let mut page = synthetic.image.clone();

    // A 2-pixel rule inside the first row gap, spanning the whole page.
    let rule_y = synthetic
        .boxes
        .iter()
        .filter(|b| b.y_min == synthetic.boxes[0].y_min)
        .map(|b| b.y_max)
        .max()
        .unwrap()
        + 6;
    for y in rule_y..rule_y + 2 {
        for x in 0..page.width() {
            page.set(x, y, 30);
        }
    }

    let regions = segment_words(&page, &SegmentationConfig::default());
    let found: Vec<_> = regions.iter().map(|r| r.bbox).collect();
    println!("{} regions, ground truth {}", found.len(), synthetic.boxes.len());
    for (i, r) in regions.iter().enumerate() {
        let b = r.bbox;
        println!(
            "word {:2}: x {:3}..={:3}  y {:3}..={:3}",
            i + 1,
            b.x_min,
            b.x_max,
            b.y_min,
            b.y_max
        );
    }
    println!("boxes match ground truth: {}", found == synthetic.boxes);

    if let Some(dir) = std::env::args().nth(1) {
        std::fs::create_dir_all(&dir).expect("create output directory");
        save_png(&page, format!("{dir}/page.png"))?;
        for (i, r) in regions.iter().enumerate() {
            save_png(&r.crop, format!("{dir}/word_{:04}.png", i + 1))?;
        }
        println!("wrote page and crops to {dir}");
    }
    Ok(())
}
