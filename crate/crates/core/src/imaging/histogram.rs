use super::GrayImage;

/// Number of intensity levels of an 8-bit image.
pub const LEVELS: usize = 256;

/// Raw intensity counts of an 8-bit image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    counts: [u64; LEVELS],
    total: u64,
}

impl Histogram {
    /// Builds a histogram from explicit counts. Returns `None` if all counts are zero.
    pub fn from_counts(counts: [u64; LEVELS]) -> Option<Self> {
        let total: u64 = counts.iter().sum();
        (total > 0).then_some(Histogram { counts, total })
    }

    pub fn counts(&self) -> &[u64; LEVELS] {
        &self.counts
    }

    pub fn count(&self, level: u8) -> u64 {
        self.counts[level as usize]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Number of levels with a non-zero count.
    pub fn occupied_levels(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

pub fn histogram(img: &GrayImage) -> Histogram {
    let mut counts = [0u64; LEVELS];
    for &v in img.pixels() {
        counts[v as usize] += 1;
    }
    Histogram {
        counts,
        total: img.pixels().len() as u64,
    }
}

/// Otsu's global threshold.
///
/// Returns the level `t` maximizing the between-class variance
/// `w0 * w1 * (mu0 - mu1)^2`, where class 0 holds levels `<= t`. A class with
/// no mass contributes zero; ties go to the smallest `t`, so a single-level
/// histogram yields 0.
pub fn otsu_threshold(hist: &Histogram) -> u8 {
    let total = hist.total;
    let weighted_total: u64 = hist.counts.iter().enumerate().map(|(level, &c)| level as u64 * c).sum();
    let n = total as f64;

    // Class sums stay integral (exact) and are converted once per threshold.
    let mut count_below = 0u64;
    let mut sum_below = 0u64;
    let mut best_level = 0u8;
    let mut best_variance = 0.0f64;
    for (level, &c) in hist.counts.iter().enumerate() {
        count_below += c;
        sum_below += level as u64 * c;
        let count_above = total - count_below;
        if count_below == 0 || count_above == 0 {
            continue;
        }
        let w0 = count_below as f64 / n;
        let w1 = count_above as f64 / n;
        let mu0 = sum_below as f64 / count_below as f64;
        let mu1 = (weighted_total - sum_below) as f64 / count_above as f64;
        let variance = w0 * w1 * (mu0 - mu1) * (mu0 - mu1);
        if variance > best_variance {
            best_variance = variance;
            best_level = level as u8;
        }
    }
    best_level
}
