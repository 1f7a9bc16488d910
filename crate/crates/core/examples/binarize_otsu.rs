//! Otsu thresholding of a page image.
//!
//! `cargo run --example binarize_otsu [page.png] [out.png]`
//!
//! Without arguments a synthetic page is used. The binary result is written
//! as black ink on white.

use hwprint::corpus::{synthesize_page, PageLayout, SynthesisParams};
use hwprint::imaging::io::{load_gray, save_png};
use hwprint::imaging::{binarize, histogram, otsu_threshold, Polarity};
use hwprint::GrayImage;

fn main() -> hwprint::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let page = match args.first() {
        Some(path) => load_gray(path)?,
        None => {
            let words: Vec<_> = (0..6).map(SynthesisParams::printed).collect();
            synthesize_page(&words, &PageLayout::default())?.image
        }
    };

    let hist = histogram(&page);
    let t = otsu_threshold(&hist);
    let bin = binarize(&page, t, Polarity::DarkIsForeground);
    println!(
        "{}x{} page, {} gray levels used, threshold {t}, {} ink pixels",
        page.width(),
        page.height(),
        hist.occupied_levels(),
        bin.count_foreground()
    );

    if let Some(out) = args.get(1) {
        let pixels = bin.pixels().iter().map(|&ink| if ink { 0 } else { 255 }).collect();
        save_png(&GrayImage::new(page.width(), page.height(), pixels)?, out)?;
        println!("wrote {out}");
    }
    Ok(())
}
