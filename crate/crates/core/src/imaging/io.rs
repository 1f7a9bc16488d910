//! PNG / PGM decoding and PNG encoding.

use std::path::Path;

use image::{DynamicImage, ImageFormat};

use super::GrayImage;
use crate::error::{Error, Result};

/// Luma of an sRGB triple, `round(0.299 R + 0.587 G + 0.114 B)`.
#[inline]
pub fn luminance(r: u8, g: u8, b: u8) -> u8 {
    ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
}

fn decode_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Decode {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// Reads an 8-bit grayscale image. Color inputs are reduced to luma.
pub fn load_gray(path: impl AsRef<Path>) -> Result<GrayImage> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_gray(&bytes).map_err(|e| decode_error(path, e))
}

/// Decodes PNG or PNM bytes (format sniffed from the header).
pub fn decode_gray(bytes: &[u8]) -> std::result::Result<GrayImage, String> {
    let format = image::guess_format(bytes).map_err(|e| e.to_string())?;
    if !matches!(format, ImageFormat::Png | ImageFormat::Pnm) {
        return Err(format!("unsupported image format {format:?}"));
    }
    let dynamic = image::load_from_memory_with_format(bytes, format).map_err(|e| e.to_string())?;
    let (w, h) = (dynamic.width() as usize, dynamic.height() as usize);
    let pixels = match dynamic {
        DynamicImage::ImageLuma8(buf) => buf.into_raw(),
        DynamicImage::ImageLumaA8(buf) => buf.pixels().map(|p| p.0[0]).collect(),
        gray @ (DynamicImage::ImageLuma16(_) | DynamicImage::ImageLumaA16(_)) => gray.to_luma8().into_raw(),
        other => other
            .to_rgb8()
            .pixels()
            .map(|p| luminance(p.0[0], p.0[1], p.0[2]))
            .collect(),
    };
    GrayImage::new(w, h, pixels).map_err(|e| e.to_string())
}

/// Writes an 8-bit grayscale PNG.
pub fn save_png(img: &GrayImage, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let buf = image::GrayImage::from_raw(img.width() as u32, img.height() as u32, img.pixels().to_vec())
        .expect("buffer matches dimensions");
    buf.save_with_format(path, ImageFormat::Png).map_err(|e| match e {
        image::ImageError::IoError(io) => Error::io(path, io),
        other => decode_error(path, other),
    })
}
