use crate::error::{Error, Result};
use crate::imaging::{GrayImage, LEVELS};

/// Sliding-window statistic with an odd square window side (>= 3).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    /// Sample standard deviation (divides by `n - 1`).
    LocalStd(usize),
    /// `max - min`, in raw levels.
    LocalRange(usize),
    /// Shannon entropy in bits of the window's 256-bin histogram.
    LocalEntropy(usize),
}

impl FilterKind {
    pub fn window(self) -> usize {
        match self {
            FilterKind::LocalStd(w) | FilterKind::LocalRange(w) | FilterKind::LocalEntropy(w) => w,
        }
    }

    pub fn validate(self) -> Result<()> {
        let w = self.window();
        if w < 3 || w.is_multiple_of(2) {
            return Err(Error::Config(format!("filter window must be odd and >= 3, got {w}")));
        }
        Ok(())
    }
}

/// Row-major real-valued image.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f64>,
}

impl FloatImage {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    pub fn mean(&self) -> f64 {
        self.data.iter().sum::<f64>() / self.data.len() as f64
    }
}

/// Applies a local filter; borders replicate the edge pixels.
pub fn local_filter(img: &GrayImage, kind: FilterKind) -> Result<FloatImage> {
    kind.validate()?;
    let r = kind.window() / 2;
    let data = match kind {
        FilterKind::LocalStd(_) => local_std(img, r),
        FilterKind::LocalRange(_) => local_range(img, r),
        FilterKind::LocalEntropy(_) => local_entropy(img, r),
    };
    Ok(FloatImage {
        width: img.width(),
        height: img.height(),
        data,
    })
}

/// Indices `clamp(i + d, 0, len - 1)` for `d` in `-r..=r`, for every `i`.
fn replicated(len: usize, r: usize) -> Vec<usize> {
    (0..len + 2 * r).map(|j| j.saturating_sub(r).min(len - 1)).collect()
}

/// Separable box sum with edge replication; exact in integers.
fn box_sum(values: &[u64], w: usize, h: usize, r: usize) -> Vec<u64> {
    let cols = replicated(w, r);
    let rows = replicated(h, r);
    let win = 2 * r + 1;

    let mut horiz = vec![0u64; w * h];
    for y in 0..h {
        let line = &values[y * w..(y + 1) * w];
        let mut acc: u64 = cols[..win].iter().map(|&c| line[c]).sum();
        horiz[y * w] = acc;
        for x in 1..w {
            acc = acc + line[cols[x + win - 1]] - line[cols[x - 1]];
            horiz[y * w + x] = acc;
        }
    }

    let mut out = vec![0u64; w * h];
    for x in 0..w {
        let mut acc: u64 = rows[..win].iter().map(|&ry| horiz[ry * w + x]).sum();
        out[x] = acc;
        for y in 1..h {
            acc = acc + horiz[rows[y + win - 1] * w + x] - horiz[rows[y - 1] * w + x];
            out[y * w + x] = acc;
        }
    }
    out
}

fn local_std(img: &GrayImage, r: usize) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let v: Vec<u64> = img.pixels().iter().map(|&p| p as u64).collect();
    let sq: Vec<u64> = v.iter().map(|&p| p * p).collect();
    let s1 = box_sum(&v, w, h, r);
    let s2 = box_sum(&sq, w, h, r);
    let n = ((2 * r + 1) * (2 * r + 1)) as u128;
    s1.iter()
        .zip(&s2)
        .map(|(&a, &b)| {
            // n * sum(v^2) - sum(v)^2 is exact and non-negative
            let num = n * b as u128 - (a as u128) * (a as u128);
            (num as f64 / (n * (n - 1)) as f64).sqrt()
        })
        .collect()
}

fn local_range(img: &GrayImage, r: usize) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let cols = replicated(w, r);
    let rows = replicated(h, r);
    let win = 2 * r + 1;

    let mut hmax = vec![0u8; w * h];
    let mut hmin = vec![0u8; w * h];
    for y in 0..h {
        let line = img.row(y);
        for x in 0..w {
            let window = cols[x..x + win].iter().map(|&c| line[c]);
            let (lo, hi) = window.fold((u8::MAX, u8::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));
            hmin[y * w + x] = lo;
            hmax[y * w + x] = hi;
        }
    }

    let mut out = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let ys = &rows[y..y + win];
            let hi = ys.iter().map(|&ry| hmax[ry * w + x]).max().unwrap();
            let lo = ys.iter().map(|&ry| hmin[ry * w + x]).min().unwrap();
            out[y * w + x] = (hi - lo) as f64;
        }
    }
    out
}

fn local_entropy(img: &GrayImage, r: usize) -> Vec<f64> {
    let (w, h) = (img.width(), img.height());
    let cols = replicated(w, r);
    let rows = replicated(h, r);
    let win = 2 * r + 1;
    let n = win * win;
    // c * log2(c) for every possible bin count
    let clogc: Vec<f64> = (0..=n)
        .map(|c| if c == 0 { 0.0 } else { c as f64 * (c as f64).log2() })
        .collect();
    let log_n = (n as f64).log2();

    let mut out = vec![0.0; w * h];
    let mut counts = [0usize; LEVELS];
    for y in 0..h {
        let window_rows = &rows[y..y + win];
        counts.fill(0);
        for &ry in window_rows {
            let line = img.row(ry);
            for &c in &cols[..win] {
                counts[line[c] as usize] += 1;
            }
        }
        // running sum of c*log2(c), rebuilt at the start of every row
        let mut s: f64 = counts.iter().map(|&c| clogc[c]).sum();
        let mut occupied = counts.iter().filter(|&&c| c > 0).count();
        let entropy = |s: f64, occupied: usize| {
            if occupied == 1 {
                0.0
            } else {
                (log_n - s / n as f64).max(0.0)
            }
        };
        out[y * w] = entropy(s, occupied);
        for x in 1..w {
            let leaving = cols[x - 1];
            let entering = cols[x + win - 1];
            for &ry in window_rows {
                let line = img.row(ry);
                let a = line[leaving] as usize;
                let b = line[entering] as usize;
                if a == b {
                    continue;
                }
                s += clogc[counts[a] - 1] - clogc[counts[a]];
                counts[a] -= 1;
                occupied -= (counts[a] == 0) as usize;
                s += clogc[counts[b] + 1] - clogc[counts[b]];
                occupied += (counts[b] == 0) as usize;
                counts[b] += 1;
            }
            out[y * w + x] = entropy(s, occupied);
        }
    }
    out
}
