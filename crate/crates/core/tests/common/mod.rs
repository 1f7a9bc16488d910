//! Independent reference implementations shared by the integration tests.
//!
//! Everything here is written for clarity rather than speed and deliberately
//! avoids the library's own helpers.

#![allow(dead_code)]

use hwprint::classifier::Label;
use hwprint::imaging::{BinaryImage, GrayImage, StructuringElement};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random gray image drawn from one of several level distributions, so that
/// flat, few-level, bimodal and full-range inputs all show up.
pub fn random_image(rng: &mut ChaCha8Rng, width: usize, height: usize) -> GrayImage {
    let n = width * height;
    let pixels: Vec<u8> = match rng.gen_range(0..5) {
        0 => (0..n).map(|_| rng.gen()).collect(),
        1 => {
            let levels: Vec<u8> = (0..rng.gen_range(1..=4)).map(|_| rng.gen()).collect();
            (0..n).map(|_| levels[rng.gen_range(0..levels.len())]).collect()
        }
        2 => {
            let (a, b) = (rng.gen_range(0..80u8), rng.gen_range(170..=255u8));
            let spread = rng.gen_range(0..30u8);
            (0..n)
                .map(|_| {
                    let base = if rng.gen_bool(0.3) { a } else { b };
                    base.saturating_add(rng.gen_range(0..=spread))
                })
                .collect()
        }
        3 => (0..n)
            .map(|i| ((i % width) * 255 / width.max(1)) as u8 ^ rng.gen_range(0..4u8))
            .collect(),
        _ => {
            let v = rng.gen();
            vec![v; n]
        }
    };
    GrayImage::new(width, height, pixels).unwrap()
}

pub fn random_binary(rng: &mut ChaCha8Rng, width: usize, height: usize, density: f64) -> BinaryImage {
    let pixels = (0..width * height).map(|_| rng.gen_bool(density)).collect();
    BinaryImage::new(width, height, pixels).unwrap()
}

pub fn histogram_oracle(img: &GrayImage) -> [u64; 256] {
    let mut counts = [0u64; 256];
    for y in 0..img.height() {
        for x in 0..img.width() {
            counts[img.get(x, y) as usize] += 1;
        }
    }
    counts
}

/// Exhaustive threshold scan straight over the pixels: for every `t` the two
/// classes are rebuilt from scratch and the between-class variance is
/// computed in double precision. First maximum wins.
pub fn otsu_oracle(img: &GrayImage) -> u8 {
    let px = img.pixels();
    let n = px.len() as f64;
    let mut best = (0u8, 0.0f64);
    for t in 0..=255u8 {
        let (mut n0, mut s0, mut n1, mut s1) = (0.0, 0.0, 0.0, 0.0);
        for &v in px {
            if v <= t {
                n0 += 1.0;
                s0 += v as f64;
            } else {
                n1 += 1.0;
                s1 += v as f64;
            }
        }
        if n0 == 0.0 || n1 == 0.0 {
            continue;
        }
        let d = s0 / n0 - s1 / n1;
        let var = (n0 / n) * (n1 / n) * d * d;
        if var > best.1 {
            best = (t, var);
        }
    }
    best.0
}

fn fg(bin: &BinaryImage, x: isize, y: isize) -> bool {
    x >= 0 && y >= 0 && (x as usize) < bin.width() && (y as usize) < bin.height() && bin.get(x as usize, y as usize)
}

/// Dilation by scattering: every foreground pixel paints the element around it.
pub fn dilate_oracle(bin: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    let mut out = BinaryImage::background(bin.width(), bin.height());
    for y in 0..bin.height() as isize {
        for x in 0..bin.width() as isize {
            if !fg(bin, x, y) {
                continue;
            }
            for (dx, dy) in se.offsets() {
                let (tx, ty) = (x + dx, y + dy);
                if tx >= 0 && ty >= 0 && (tx as usize) < bin.width() && (ty as usize) < bin.height() {
                    out.set(tx as usize, ty as usize, true);
                }
            }
        }
    }
    out
}

/// Erosion by window scan: keep a pixel only if the element fits in the ink.
pub fn erode_oracle(bin: &BinaryImage, se: &StructuringElement) -> BinaryImage {
    let mut out = BinaryImage::background(bin.width(), bin.height());
    for y in 0..bin.height() as isize {
        for x in 0..bin.width() as isize {
            let keep = se.offsets().all(|(dx, dy)| fg(bin, x + dx, y + dy));
            out.set(x as usize, y as usize, keep);
        }
    }
    out
}

/// Components as sorted pixel lists, found by recursive flood fill.
pub fn components_oracle(bin: &BinaryImage, eight: bool) -> Vec<Vec<(usize, usize)>> {
    fn fill(bin: &BinaryImage, seen: &mut [bool], x: isize, y: isize, eight: bool, out: &mut Vec<(usize, usize)>) {
        if !fg(bin, x, y) || seen[y as usize * bin.width() + x as usize] {
            return;
        }
        seen[y as usize * bin.width() + x as usize] = true;
        out.push((x as usize, y as usize));
        for dy in -1..=1isize {
            for dx in -1..=1isize {
                if (dx, dy) != (0, 0) && (eight || dx == 0 || dy == 0) {
                    fill(bin, seen, x + dx, y + dy, eight, out);
                }
            }
        }
    }
    let mut seen = vec![false; bin.width() * bin.height()];
    let mut comps = Vec::new();
    for y in 0..bin.height() {
        for x in 0..bin.width() {
            let mut pixels = Vec::new();
            fill(bin, &mut seen, x as isize, y as isize, eight, &mut pixels);
            if !pixels.is_empty() {
                pixels.sort();
                comps.push(pixels);
            }
        }
    }
    comps.sort();
    comps
}

/// Neumaier-compensated sum, so the oracle itself adds no visible error.
pub fn exact_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        c += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + c
}

/// (m, σ, R, μ3, U, e) summed pixel by pixel on the normalized axis.
///
/// Central moments are accumulated exactly in integers: with `S` the level
/// sum, `z - m = (v·n - S) / (255·n)`, so each moment is rounded only once.
pub fn global_features_oracle(img: &GrayImage) -> [f64; 6] {
    let px = img.pixels();
    let n = px.len() as i128;
    let s: i128 = px.iter().map(|&v| v as i128).sum();
    let dev = |v: u8| v as i128 * n - s;
    let m2: i128 = px.iter().map(|&v| dev(v).pow(2)).sum();
    let m3: i128 = px.iter().map(|&v| dev(v).pow(3)).sum();
    let unit = 255.0 * n as f64;
    let nf = n as f64;
    let mean = s as f64 / unit;
    let mu2 = m2 as f64 / (unit * unit * nf);
    let mu3 = m3 as f64 / (unit * unit * unit * nf);
    let counts = histogram_oracle(img);
    let probs = counts.iter().filter(|&&c| c > 0).map(|&c| c as f64 / nf);
    let u = exact_sum(probs.clone().map(|p| p * p));
    let e = -exact_sum(probs.map(|p| p * p.log2()));
    [mean, mu2.sqrt(), 1.0 - 1.0 / (1.0 + mu2), mu3, u, e]
}

/// Levels of the `w`×`w` window centered at (x, y), edges replicated.
pub fn window(img: &GrayImage, x: usize, y: usize, w: usize) -> Vec<u8> {
    let r = (w / 2) as isize;
    let clamp = |v: isize, hi: usize| v.clamp(0, hi as isize - 1) as usize;
    let mut out = Vec::with_capacity(w * w);
    for dy in -r..=r {
        for dx in -r..=r {
            out.push(img.get(
                clamp(x as isize + dx, img.width()),
                clamp(y as isize + dy, img.height()),
            ));
        }
    }
    out
}

pub fn window_std(v: &[u8]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().map(|&a| a as f64).sum::<f64>() / n;
    (v.iter().map(|&a| (a as f64 - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

pub fn window_range(v: &[u8]) -> f64 {
    (*v.iter().max().unwrap() - *v.iter().min().unwrap()) as f64
}

pub fn window_entropy(v: &[u8]) -> f64 {
    let mut counts = [0usize; 256];
    for &a in v {
        counts[a as usize] += 1;
    }
    let n = v.len() as f64;
    -counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| (c as f64 / n) * (c as f64 / n).log2())
        .sum::<f64>()
}

/// Per-pixel brute-force filter image.
pub fn filter_oracle(img: &GrayImage, w: usize, stat: fn(&[u8]) -> f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(img.width() * img.height());
    for y in 0..img.height() {
        for x in 0..img.width() {
            out.push(stat(&window(img, x, y, w)));
        }
    }
    out
}

/// Two-pass population mean and std per feature, std < 1e-12 mapped to 1.
pub fn standardizer_oracle(rows: &[[f64; 9]]) -> ([f64; 9], [f64; 9]) {
    let n = rows.len() as f64;
    let mut mean = [0.0; 9];
    let mut scale = [0.0; 9];
    for j in 0..9 {
        mean[j] = exact_sum(rows.iter().map(|r| r[j])) / n;
        let var = exact_sum(rows.iter().map(|r| (r[j] - mean[j]).powi(2))) / n;
        scale[j] = if var.sqrt() < 1e-12 { 1.0 } else { var.sqrt() };
    }
    (mean, scale)
}

/// Full scan and stable sort by distance; returns (label, neighbor indices).
/// `train` and `query` must already be in the space distances are measured in.
pub fn knn_oracle(train: &[[f64; 9]], labels: &[Label], query: &[f64; 9], k: usize) -> (Label, Vec<usize>) {
    let mut d: Vec<(f64, usize)> = train
        .iter()
        .enumerate()
        .map(|(i, t)| {
            (
                t.iter().zip(query).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt(),
                i,
            )
        })
        .collect();
    d.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
    let nearest: Vec<usize> = d[..k].iter().map(|&(_, i)| i).collect();
    let printed = nearest.iter().filter(|&&i| labels[i] == Label::Printed).count();
    let label = match (2 * printed).cmp(&k) {
        std::cmp::Ordering::Greater => Label::Printed,
        std::cmp::Ordering::Less => Label::Handwritten,
        std::cmp::Ordering::Equal => labels[nearest[0]],
    };
    (label, nearest)
}

pub fn standardize_with(v: &[f64; 9], mean: &[f64; 9], scale: &[f64; 9]) -> [f64; 9] {
    std::array::from_fn(|j| (v[j] - mean[j]) / scale[j])
}

/// `|a - b| <= tol * max(|a|, |b|, floor)`.
pub fn close_rel(a: f64, b: f64, tol: f64, floor: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(floor)
}
