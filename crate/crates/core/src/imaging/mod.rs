//! Raster primitives: grayscale and binary images, histograms, Otsu
//! thresholding, binary morphology and connected components.

mod components;
mod histogram;
pub mod io;
mod morphology;

pub use components::{connected_components, label_components, Component, Connectivity, LabelMap};
pub use histogram::{histogram, otsu_threshold, Histogram, LEVELS};
pub use morphology::{dilate, erode, open, StructuringElement};

use crate::error::{Error, Result};

/// Inclusive pixel rectangle `(x_min, y_min) ..= (x_max, y_max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BBox {
    pub x_min: usize,
    pub y_min: usize,
    pub x_max: usize,
    pub y_max: usize,
}

impl BBox {
    pub fn new(x_min: usize, y_min: usize, x_max: usize, y_max: usize) -> Self {
        debug_assert!(x_min <= x_max && y_min <= y_max);
        BBox {
            x_min,
            y_min,
            x_max,
            y_max,
        }
    }

    /// The 1×1 box around a single pixel.
    pub fn point(x: usize, y: usize) -> Self {
        BBox::new(x, y, x, y)
    }

    pub fn width(&self) -> usize {
        self.x_max - self.x_min + 1
    }

    pub fn height(&self) -> usize {
        self.y_max - self.y_min + 1
    }

    pub fn area(&self) -> usize {
        self.width() * self.height()
    }

    /// Grows the box to cover `(x, y)`.
    pub fn include(&mut self, x: usize, y: usize) {
        self.x_min = self.x_min.min(x);
        self.y_min = self.y_min.min(y);
        self.x_max = self.x_max.max(x);
        self.y_max = self.y_max.max(y);
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        (self.x_min..=self.x_max).contains(&x) && (self.y_min..=self.y_max).contains(&y)
    }

    pub fn fits_within(&self, width: usize, height: usize) -> bool {
        self.x_min <= self.x_max && self.y_min <= self.y_max && self.x_max < width && self.y_max < height
    }

    /// Reading-order key: top to bottom, then left to right.
    pub fn reading_key(&self) -> (usize, usize) {
        (self.y_min, self.x_min)
    }
}

/// Row-major 8-bit grayscale image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::Data(format!("empty image {width}x{height}")));
        }
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::Data(format!(
                "pixel buffer of length {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        Ok(GrayImage { width, height, pixels })
    }

    /// An image with every pixel set to `value`.
    ///
    /// # Panics
    /// If either dimension is zero.
    pub fn filled(width: usize, height: usize, value: u8) -> Self {
        assert!(width > 0 && height > 0, "image dimensions must be positive");
        GrayImage {
            width,
            height,
            pixels: vec![value; width * height],
        }
    }

    /// Builds an image from equal-length rows.
    pub fn from_rows(rows: &[&[u8]]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::Data("ragged rows".into()));
        }
        GrayImage::new(width, height, rows.concat())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: u8) {
        self.pixels[y * self.width + x] = value;
    }

    pub fn row(&self, y: usize) -> &[u8] {
        &self.pixels[y * self.width..(y + 1) * self.width]
    }

    pub fn full_bbox(&self) -> BBox {
        BBox::new(0, 0, self.width - 1, self.height - 1)
    }

    /// Copies the pixels under `bbox` into a new image.
    pub fn crop(&self, bbox: BBox) -> Result<GrayImage> {
        if !bbox.fits_within(self.width, self.height) {
            return Err(Error::Bounds {
                bbox: (bbox.x_min, bbox.y_min, bbox.x_max, bbox.y_max),
                width: self.width,
                height: self.height,
            });
        }
        let mut pixels = Vec::with_capacity(bbox.area());
        for y in bbox.y_min..=bbox.y_max {
            pixels.extend_from_slice(&self.row(y)[bbox.x_min..=bbox.x_max]);
        }
        Ok(GrayImage {
            width: bbox.width(),
            height: bbox.height(),
            pixels,
        })
    }
}

/// Free-function form of [`GrayImage::crop`].
pub fn crop(img: &GrayImage, bbox: BBox) -> Result<GrayImage> {
    img.crop(bbox)
}

/// Row-major boolean image; `true` is foreground (ink).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    width: usize,
    height: usize,
    pixels: Vec<bool>,
}

impl BinaryImage {
    pub fn new(width: usize, height: usize, pixels: Vec<bool>) -> Result<Self> {
        if width.checked_mul(height) != Some(pixels.len()) {
            return Err(Error::Data(format!(
                "pixel buffer of length {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        Ok(BinaryImage { width, height, pixels })
    }

    pub fn background(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            pixels: vec![false; width * height],
        }
    }

    pub fn foreground(width: usize, height: usize) -> Self {
        BinaryImage {
            width,
            height,
            pixels: vec![true; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[bool] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.pixels[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        self.pixels[y * self.width + x] = value;
    }

    pub fn count_foreground(&self) -> usize {
        self.pixels.iter().filter(|&&p| p).count()
    }

    /// True when every foreground pixel of `self` is also foreground in `other`.
    pub fn is_subset_of(&self, other: &BinaryImage) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.pixels.iter().zip(&other.pixels).all(|(&a, &b)| !a || b)
    }
}

/// Which side of the threshold counts as ink.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarity {
    /// `v <= t` is foreground: dark ink on light paper.
    #[default]
    DarkIsForeground,
    /// `v > t` is foreground.
    LightIsForeground,
}

pub fn binarize(img: &GrayImage, threshold: u8, polarity: Polarity) -> BinaryImage {
    let pixels = match polarity {
        Polarity::DarkIsForeground => img.pixels.iter().map(|&v| v <= threshold).collect(),
        Polarity::LightIsForeground => img.pixels.iter().map(|&v| v > threshold).collect(),
    };
    BinaryImage {
        width: img.width,
        height: img.height,
        pixels,
    }
}
