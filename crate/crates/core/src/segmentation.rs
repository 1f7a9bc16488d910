//! Page-to-word segmentation.
//!
//! The pipeline binarizes the page with Otsu's threshold, erases
//! punctuation-sized specks and long ruling lines, merges the glyphs of each
//! word by horizontal dilation, and reports one region per merged blob. Region
//! boxes are measured on the undilated ink.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::imaging::{
    binarize, dilate, histogram, label_components, otsu_threshold, BBox, BinaryImage, Connectivity, GrayImage,
    Polarity, StructuringElement,
};

#[derive(Debug, Clone, PartialEq)]
pub struct SegmentationConfig {
    /// Components with fewer ink pixels are treated as outliers.
    pub min_component_area: usize,
    /// Minimum elongation (long side / short side) of a ruling line.
    pub line_aspect_min: f64,
    /// Fraction of the page extent a ruling line must span.
    pub line_span_frac: f64,
    pub dilation_se: StructuringElement,
    /// Words with fewer ink pixels are dropped.
    pub min_word_area: usize,
}

impl Default for SegmentationConfig {
    fn default() -> Self {
        SegmentationConfig {
            min_component_area: 15,
            line_aspect_min: 10.0,
            line_span_frac: 0.5,
            dilation_se: StructuringElement::rect(7, 3).expect("odd sides"),
            min_word_area: 30,
        }
    }
}

impl SegmentationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_component_area < 1 {
            return Err(Error::Config("min_component_area must be >= 1".into()));
        }
        if self.line_aspect_min.is_nan() || self.line_aspect_min <= 1.0 {
            return Err(Error::Config("line_aspect_min must be > 1".into()));
        }
        if !(self.line_span_frac > 0.0 && self.line_span_frac <= 1.0) {
            return Err(Error::Config("line_span_frac must be in (0, 1]".into()));
        }
        Ok(())
    }

    /// Parses `key = value` lines. Blank lines and `#` comments are ignored;
    /// missing keys keep their defaults.
    ///
    /// Keys: `min_component_area`, `line_aspect_min`, `line_span_frac`,
    /// `dilation_width`, `dilation_height`, `min_word_area`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SegmentationConfig::default();
        let mut se_w = cfg.dilation_se.width();
        let mut se_h = cfg.dilation_se.height();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let lineno = idx + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {lineno}: expected `key = value`")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| Error::Config(format!("line {lineno}: {key}: {e}"));
            match key {
                "min_component_area" => cfg.min_component_area = value.parse().map_err(|e| bad(&e))?,
                "line_aspect_min" => cfg.line_aspect_min = value.parse().map_err(|e| bad(&e))?,
                "line_span_frac" => cfg.line_span_frac = value.parse().map_err(|e| bad(&e))?,
                "dilation_width" => se_w = value.parse().map_err(|e| bad(&e))?,
                "dilation_height" => se_h = value.parse().map_err(|e| bad(&e))?,
                "min_word_area" => cfg.min_word_area = value.parse().map_err(|e| bad(&e))?,
                _ => return Err(Error::Config(format!("line {lineno}: unknown key `{key}`"))),
            }
        }
        cfg.dilation_se = StructuringElement::rect(se_w, se_h)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    /// Renders the config in the format accepted by [`SegmentationConfig::parse`].
    pub fn to_text(&self) -> String {
        format!(
            "min_component_area = {}\nline_aspect_min = {}\nline_span_frac = {}\ndilation_width = {}\ndilation_height = {}\nmin_word_area = {}\n",
            self.min_component_area,
            self.line_aspect_min,
            self.line_span_frac,
            self.dilation_se.width(),
            self.dilation_se.height(),
            self.min_word_area
        )
    }
}

/// One segmented word: tight ink box on the page and the grayscale crop under it.
#[derive(Debug, Clone, PartialEq)]
pub struct WordRegion {
    pub bbox: BBox,
    pub crop: GrayImage,
}

/// Erases every 8-connected component with fewer than `min_area` pixels.
pub fn remove_small_components(bin: &BinaryImage, min_area: usize) -> BinaryImage {
    erase_components(bin, |c| c.area < min_area)
}

/// Erases elongated components spanning a large fraction of the page.
pub fn remove_long_lines(bin: &BinaryImage, cfg: &SegmentationConfig) -> BinaryImage {
    let (page_w, page_h) = (bin.width() as f64, bin.height() as f64);
    erase_components(bin, |c| {
        let (w, h) = (c.width() as f64, c.height() as f64);
        let aspect = (w / h).max(h / w);
        let (long_side, page_side) = if w >= h { (w, page_w) } else { (h, page_h) };
        aspect >= cfg.line_aspect_min && long_side >= cfg.line_span_frac * page_side
    })
}

fn erase_components(bin: &BinaryImage, erase: impl Fn(&crate::imaging::Component) -> bool) -> BinaryImage {
    let (labels, components) = label_components(bin, Connectivity::Eight);
    let doomed: Vec<bool> = std::iter::once(false).chain(components.iter().map(&erase)).collect();
    let pixels = labels.labels.iter().map(|&l| l != 0 && !doomed[l as usize]).collect();
    BinaryImage::new(bin.width(), bin.height(), pixels).expect("dimensions preserved")
}

/// Otsu binarization followed by outlier and ruling-line removal.
pub fn clean_page(page: &GrayImage, cfg: &SegmentationConfig) -> BinaryImage {
    let t = otsu_threshold(&histogram(page));
    let bin = binarize(page, t, Polarity::DarkIsForeground);
    let bin = remove_small_components(&bin, cfg.min_component_area);
    remove_long_lines(&bin, cfg)
}

/// Splits a page into word regions in reading order.
pub fn segment_words(page: &GrayImage, cfg: &SegmentationConfig) -> Vec<WordRegion> {
    let ink = clean_page(page, cfg);
    let merged = dilate(&ink, &cfg.dilation_se);
    let (labels, _) = label_components(&merged, Connectivity::Eight);

    // tight box and pixel count of the undilated ink under each merged blob
    let mut words: BTreeMap<u32, (BBox, usize)> = BTreeMap::new();
    for y in 0..ink.height() {
        for x in 0..ink.width() {
            if !ink.get(x, y) {
                continue;
            }
            let label = labels.get(x, y);
            words
                .entry(label)
                .and_modify(|(b, n)| {
                    b.include(x, y);
                    *n += 1;
                })
                .or_insert((BBox::point(x, y), 1));
        }
    }

    let mut boxes: Vec<BBox> = words
        .into_values()
        .filter(|&(_, area)| area >= cfg.min_word_area)
        .map(|(b, _)| b)
        .collect();
    boxes.sort_by_key(|b| (b.reading_key(), b.x_max, b.y_max));
    boxes
        .into_iter()
        .map(|bbox| WordRegion {
            bbox,
            crop: page.crop(bbox).expect("box inside page"),
        })
        .collect()
}
