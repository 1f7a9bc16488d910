//! Seeded synthetic word images.
//!
//! Words are rows of pseudo-glyphs drawn as stroke polylines over a 3×3
//! lattice. Printed-like words use axis-aligned strokes, a square brush, one
//! stroke width and one ink level. Handwritten-like words jitter every vertex,
//! shear the word by a random slant, join glyphs with connecting strokes, and
//! vary stroke width and ink level along each stroke. No visual realism is
//! intended, only the stroke-regularity and intensity contrasts that the
//! texture features respond to.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::{BBox, GrayImage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WordKind {
    Printed,
    Handwritten,
}

impl WordKind {
    pub const ALL: [WordKind; 2] = [WordKind::Printed, WordKind::Handwritten];
}

impl std::str::FromStr for WordKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "printed" => Ok(WordKind::Printed),
            "handwritten" => Ok(WordKind::Handwritten),
            other => Err(Error::Config(format!("unknown word kind `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisParams {
    pub kind: WordKind,
    pub seed: u64,
    /// Canvas size in pixels.
    pub width: usize,
    pub height: usize,
    /// Stroke width range in pixels; sampled per vertex.
    pub stroke_width: (f64, f64),
    /// Maximum per-vertex displacement in pixels.
    pub baseline_jitter: f64,
    /// Maximum absolute horizontal shear (pixels of x per pixel of height).
    pub slant_jitter: f64,
    /// Ink level range; sampled per vertex.
    pub ink: (u8, u8),
    /// Paper level range; one level per word.
    pub paper: (u8, u8),
}

impl SynthesisParams {
    pub fn printed(seed: u64) -> Self {
        SynthesisParams {
            kind: WordKind::Printed,
            seed,
            width: 200,
            height: 48,
            stroke_width: (3.0, 3.0),
            baseline_jitter: 0.0,
            slant_jitter: 0.0,
            ink: (110, 110),
            paper: (255, 255),
        }
    }

    pub fn handwritten(seed: u64) -> Self {
        SynthesisParams {
            kind: WordKind::Handwritten,
            seed,
            width: 200,
            height: 48,
            stroke_width: (1.5, 3.5),
            baseline_jitter: 2.0,
            slant_jitter: 0.3,
            ink: (0, 90),
            paper: (245, 255),
        }
    }

    pub fn for_kind(kind: WordKind, seed: u64) -> Self {
        match kind {
            WordKind::Printed => Self::printed(seed),
            WordKind::Handwritten => Self::handwritten(seed),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (w0, w1) = self.stroke_width;
        if !(w0.is_finite() && w1.is_finite() && w0 >= 1.5 && w0 <= w1) {
            return Err(Error::Config(format!("invalid stroke width range {w0}..{w1}")));
        }
        if !(self.baseline_jitter >= 0.0 && self.baseline_jitter.is_finite()) {
            return Err(Error::Config("baseline_jitter must be finite and >= 0".into()));
        }
        if !(self.slant_jitter >= 0.0 && self.slant_jitter <= 1.0) {
            return Err(Error::Config("slant_jitter must be in [0, 1]".into()));
        }
        if self.ink.0 > self.ink.1 || self.paper.0 > self.paper.1 {
            return Err(Error::Config("empty ink or paper range".into()));
        }
        if self.ink.1 >= self.paper.0 {
            return Err(Error::Config("ink must be darker than paper".into()));
        }
        Ok(())
    }
}

/// A rendered word and the tight box of its ink pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticWord {
    pub image: GrayImage,
    pub ink_box: BBox,
    /// Row-major mask of painted pixels.
    pub ink_mask: Vec<bool>,
}

struct Canvas {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
    ink: Vec<bool>,
}

#[derive(Clone, Copy)]
struct Vertex {
    x: f64,
    y: f64,
    width: f64,
    ink: f64,
}

impl Canvas {
    fn stamp(&mut self, cx: f64, cy: f64, radius: f64, level: u8, square: bool) {
        let x_lo = (cx - radius).floor().max(0.0) as usize;
        let y_lo = (cy - radius).floor().max(0.0) as usize;
        let x_hi = ((cx + radius).ceil() as usize).min(self.width - 1);
        let y_hi = ((cy + radius).ceil() as usize).min(self.height - 1);
        for y in y_lo..=y_hi {
            for x in x_lo..=x_hi {
                let (dx, dy) = (x as f64 - cx, y as f64 - cy);
                let inside = if square {
                    dx.abs() <= radius && dy.abs() <= radius
                } else {
                    dx * dx + dy * dy <= radius * radius
                };
                if inside {
                    let i = y * self.width + x;
                    self.pixels[i] = self.pixels[i].min(level);
                    self.ink[i] = true;
                }
            }
        }
    }

    fn stroke(&mut self, a: Vertex, b: Vertex, square: bool) {
        let len = ((b.x - a.x).powi(2) + (b.y - a.y).powi(2)).sqrt();
        let steps = ((len / 0.25).ceil() as usize).max(1);
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let lerp = |p: f64, q: f64| p + (q - p) * t;
            let level = lerp(a.ink, b.ink).round().clamp(0.0, 255.0) as u8;
            self.stamp(
                lerp(a.x, b.x),
                lerp(a.y, b.y),
                lerp(a.width, b.width) / 2.0,
                level,
                square,
            );
        }
    }
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..=hi)
    } else {
        lo
    }
}

/// Lattice path of one glyph from the bottom-left to the bottom-right corner,
/// in unit coordinates (v = 1 is the baseline).
fn glyph_skeleton(rng: &mut ChaCha8Rng, axis_aligned: bool) -> Vec<(f64, f64)> {
    const STEPS: [f64; 3] = [0.0, 0.5, 1.0];
    let mut nodes = vec![(0.0, 1.0)];
    for _ in 0..rng.gen_range(2..=3) {
        let next = (STEPS[rng.gen_range(0..3)], STEPS[rng.gen_range(0..3)]);
        if nodes.last() != Some(&next) {
            nodes.push(next);
        }
    }
    if nodes.last() != Some(&(1.0, 1.0)) {
        nodes.push((1.0, 1.0));
    }
    if !axis_aligned {
        return nodes;
    }
    let mut path = vec![nodes[0]];
    for pair in nodes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a.0 != b.0 && a.1 != b.1 {
            path.push((b.0, a.1));
        }
        path.push(b);
    }
    path
}

pub fn synthesize_word(params: &SynthesisParams) -> Result<GrayImage> {
    synthesize_word_detailed(params).map(|w| w.image)
}

/// Renders one word; the output is a pure function of `params`.
pub fn synthesize_word_detailed(params: &SynthesisParams) -> Result<SyntheticWord> {
    params.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let printed = params.kind == WordKind::Printed;

    let margin = 2 + (params.baseline_jitter + params.stroke_width.1 / 2.0).ceil() as usize;
    let body_h = params.height.saturating_sub(2 * margin);
    let slant_room = (params.slant_jitter * body_h as f64).ceil() as usize;
    let glyph_w = (body_h as f64 * 0.5).round() as usize;
    let gap = 3usize;
    let usable_w = params.width.saturating_sub(2 * (margin + slant_room));
    if body_h < 6 || glyph_w < 3 || usable_w < glyph_w {
        return Err(Error::Config(format!(
            "canvas {}x{} is too small for one glyph",
            params.width, params.height
        )));
    }
    let fit = (usable_w + gap) / (glyph_w + gap);
    let glyphs = rng.gen_range(3..=8).min(fit);

    let paper = rng.gen_range(params.paper.0..=params.paper.1);
    let mut canvas = Canvas {
        width: params.width,
        height: params.height,
        pixels: vec![paper; params.width * params.height],
        ink: vec![false; params.width * params.height],
    };

    let slant = uniform(&mut rng, -params.slant_jitter, params.slant_jitter);
    let baseline = (margin + body_h - 1) as f64;
    let top = margin as f64;
    let x_start = (margin + slant_room) as f64;
    let jitter = params.baseline_jitter;

    let mut previous_end: Option<Vertex> = None;
    for g in 0..glyphs {
        let x0 = x_start + (g * (glyph_w + gap)) as f64;
        let skeleton = glyph_skeleton(&mut rng, printed && jitter == 0.0 && slant == 0.0);
        let vertices: Vec<Vertex> = skeleton
            .iter()
            .map(|&(u, v)| {
                let mut x = x0 + u * (glyph_w - 1) as f64 + uniform(&mut rng, -jitter, jitter);
                let mut y = top + v * (baseline - top) + uniform(&mut rng, -jitter, jitter);
                x += slant * (baseline - y);
                if printed {
                    x = x.round();
                    y = y.round();
                }
                Vertex {
                    x,
                    y,
                    width: uniform(&mut rng, params.stroke_width.0, params.stroke_width.1),
                    ink: uniform(&mut rng, params.ink.0 as f64, params.ink.1 as f64),
                }
            })
            .collect();
        if let (Some(end), false) = (previous_end, printed) {
            canvas.stroke(end, vertices[0], false);
        }
        for pair in vertices.windows(2) {
            canvas.stroke(pair[0], pair[1], printed);
        }
        previous_end = vertices.last().copied();
    }

    let mut ink_box: Option<BBox> = None;
    for y in 0..canvas.height {
        for x in 0..canvas.width {
            if canvas.ink[y * canvas.width + x] {
                ink_box.get_or_insert(BBox::point(x, y)).include(x, y);
            }
        }
    }
    Ok(SyntheticWord {
        image: GrayImage::new(canvas.width, canvas.height, canvas.pixels)?,
        ink_box: ink_box.expect("at least one glyph is drawn"),
        ink_mask: canvas.ink,
    })
}

/// `n` words of one kind with per-word seeds drawn from `seed`.
pub fn synthesize_batch(kind: WordKind, n: usize, seed: u64) -> Result<Vec<GrayImage>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| synthesize_word(&SynthesisParams::for_kind(kind, rng.gen())))
        .collect()
}

/// Grid placement of words on a white page.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PageLayout {
    pub columns: usize,
    /// Blank pixels between neighboring word canvases.
    pub gap_x: usize,
    pub gap_y: usize,
    pub margin: usize,
}

impl Default for PageLayout {
    fn default() -> Self {
        PageLayout {
            columns: 3,
            gap_x: 24,
            gap_y: 16,
            margin: 16,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticPage {
    pub image: GrayImage,
    /// Tight ink box of every word, sorted by `(y_min, x_min)`.
    pub boxes: Vec<BBox>,
}

/// Pastes rendered words row-major into a grid. The gaps should exceed the
/// segmentation dilation window so that every word stays a separate blob.
pub fn synthesize_page(words: &[SynthesisParams], layout: &PageLayout) -> Result<SyntheticPage> {
    if layout.columns == 0 {
        return Err(Error::Config("page layout needs at least one column".into()));
    }
    let rendered = words.iter().map(synthesize_word_detailed).collect::<Result<Vec<_>>>()?;
    let cell_w = rendered.iter().map(|w| w.image.width()).max().unwrap_or(0);
    let cell_h = rendered.iter().map(|w| w.image.height()).max().unwrap_or(0);
    let cols = layout.columns.min(rendered.len()).max(1);
    let rows = rendered.len().div_ceil(layout.columns);
    let span = |cells: usize, cell: usize, gap: usize| cells * cell + cells.saturating_sub(1) * gap;
    let page_w = (2 * layout.margin + span(cols, cell_w, layout.gap_x)).max(1);
    let page_h = (2 * layout.margin + span(rows, cell_h, layout.gap_y)).max(1);

    let mut page = GrayImage::filled(page_w, page_h, 255);
    let mut boxes = Vec::with_capacity(rendered.len());
    for (i, word) in rendered.iter().enumerate() {
        let ox = layout.margin + (i % layout.columns) * (cell_w + layout.gap_x);
        let oy = layout.margin + (i / layout.columns) * (cell_h + layout.gap_y);
        for y in 0..word.image.height() {
            for x in 0..word.image.width() {
                page.set(ox + x, oy + y, word.image.get(x, y));
            }
        }
        let b = word.ink_box;
        boxes.push(BBox::new(b.x_min + ox, b.y_min + oy, b.x_max + ox, b.y_max + oy));
    }
    boxes.sort_by_key(|b| (b.reading_key(), b.x_max, b.y_max));
    Ok(SyntheticPage { image: page, boxes })
}
