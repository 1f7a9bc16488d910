use super::BinaryImage;
use crate::error::{Error, Result};

/// Boolean window with its origin at the center cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuringElement {
    width: usize,
    height: usize,
    mask: Vec<bool>,
}

impl StructuringElement {
    /// A solid `width × height` rectangle. Both sides must be odd.
    pub fn rect(width: usize, height: usize) -> Result<Self> {
        Self::check_dims(width, height)?;
        Ok(StructuringElement {
            width,
            height,
            mask: vec![true; width * height],
        })
    }

    /// An arbitrary row-major mask. Both sides must be odd and the mask non-empty.
    pub fn from_mask(width: usize, height: usize, mask: Vec<bool>) -> Result<Self> {
        Self::check_dims(width, height)?;
        if mask.len() != width * height {
            return Err(Error::Config(format!(
                "mask length {} does not match {width}x{height}",
                mask.len()
            )));
        }
        if !mask.iter().any(|&m| m) {
            return Err(Error::Config("structuring element mask is empty".into()));
        }
        Ok(StructuringElement { width, height, mask })
    }

    fn check_dims(width: usize, height: usize) -> Result<()> {
        if width == 0 || height == 0 || width.is_multiple_of(2) || height.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "structuring element sides must be odd and positive, got {width}x{height}"
            )));
        }
        Ok(())
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn is_full_rect(&self) -> bool {
        self.mask.iter().all(|&m| m)
    }

    /// Offsets `(dx, dy)` of the active cells relative to the origin.
    pub fn offsets(&self) -> impl Iterator<Item = (isize, isize)> + '_ {
        let rx = (self.width / 2) as isize;
        let ry = (self.height / 2) as isize;
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(move |(i, _)| {
            let dx = (i % self.width) as isize - rx;
            let dy = (i / self.width) as isize - ry;
            (dx, dy)
        })
    }
}

/// Binary dilation; pixels outside the image are background.
pub fn dilate(bin: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    if se.is_full_rect() {
        let rows = map_lines(bin, se.width / 2, Axis::Row, LineOp::Any);
        map_lines(&rows, se.height / 2, Axis::Column, LineOp::Any)
    } else {
        // Reflected offsets keep opening anti-extensive for asymmetric masks.
        let offsets: Vec<_> = se.offsets().map(|(dx, dy)| (-dx, -dy)).collect();
        by_offsets(bin, &offsets, false)
    }
}

/// Binary erosion; pixels outside the image are background.
pub fn erode(bin: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    if se.is_full_rect() {
        let rows = map_lines(bin, se.width / 2, Axis::Row, LineOp::All);
        map_lines(&rows, se.height / 2, Axis::Column, LineOp::All)
    } else {
        let offsets: Vec<_> = se.offsets().collect();
        by_offsets(bin, &offsets, true)
    }
}

/// Erosion followed by dilation.
pub fn open(bin: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    dilate(&erode(bin, se), se)
}

#[derive(Clone, Copy)]
enum Axis {
    Row,
    Column,
}

#[derive(Clone, Copy)]
enum LineOp {
    Any,
    All,
}

/// 1-D window of radius `r` along every row or column, via prefix counts.
fn map_lines(bin: &BinaryImage, r: usize, axis: Axis, op: LineOp) -> BinaryImage {
    if r == 0 {
        return bin.clone();
    }
    let (w, h) = (bin.width(), bin.height());
    let (len, lines) = match axis {
        Axis::Row => (w, h),
        Axis::Column => (h, w),
    };
    let index = |line: usize, i: usize| match axis {
        Axis::Row => line * w + i,
        Axis::Column => i * w + line,
    };
    let src = bin.pixels();
    let mut out = vec![false; src.len()];
    let mut prefix = vec![0usize; len + 1];
    for line in 0..lines {
        for i in 0..len {
            prefix[i + 1] = prefix[i] + src[index(line, i)] as usize;
        }
        for i in 0..len {
            let lo = i.saturating_sub(r);
            let hi = (i + r).min(len - 1);
            let ones = prefix[hi + 1] - prefix[lo];
            out[index(line, i)] = match op {
                LineOp::Any => ones > 0,
                LineOp::All => ones == 2 * r + 1,
            };
        }
    }
    BinaryImage::new(w, h, out).expect("dimensions preserved")
}

fn by_offsets(bin: &BinaryImage, offsets: &[(isize, isize)], all: bool) -> BinaryImage {
    let (w, h) = (bin.width() as isize, bin.height() as isize);
    let at = |x: isize, y: isize| x >= 0 && y >= 0 && x < w && y < h && bin.get(x as usize, y as usize);
    let mut out = BinaryImage::background(bin.width(), bin.height());
    for y in 0..h {
        for x in 0..w {
            let mut hits = offsets.iter().map(|&(dx, dy)| at(x + dx, y + dy));
            let v = if all { hits.all(|b| b) } else { hits.any(|b| b) };
            out.set(x as usize, y as usize, v);
        }
    }
    out
}
