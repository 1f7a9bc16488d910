use super::{BBox, BinaryImage};

/// Pixel adjacency used for component labelling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    Four,
    #[default]
    Eight,
}

impl Connectivity {
    fn offsets(self) -> &'static [(isize, isize)] {
        match self {
            Connectivity::Four => &[(1, 0), (-1, 0), (0, 1), (0, -1)],
            Connectivity::Eight => &[(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)],
        }
    }
}

/// A connected set of foreground pixels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// 1-based id in raster discovery order; matches the values in [`LabelMap`].
    pub label: u32,
    pub bbox: BBox,
    /// Number of foreground pixels.
    pub area: usize,
}

impl Component {
    pub fn width(&self) -> usize {
        self.bbox.width()
    }

    pub fn height(&self) -> usize {
        self.bbox.height()
    }
}

/// Per-pixel component ids; 0 is background.
#[derive(Debug, Clone)]
pub struct LabelMap {
    pub width: usize,
    pub height: usize,
    pub labels: Vec<u32>,
}

impl LabelMap {
    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u32 {
        self.labels[y * self.width + x]
    }
}

/// Labels the foreground and returns the per-pixel map together with the
/// components in label order.
pub fn label_components(bin: &BinaryImage, connectivity: Connectivity) -> (LabelMap, Vec<Component>) {
    let (w, h) = (bin.width(), bin.height());
    let src = bin.pixels();
    let mut labels = vec![0u32; src.len()];
    let mut components = Vec::new();
    let mut stack = Vec::new();
    let offsets = connectivity.offsets();

    for start in 0..src.len() {
        if !src[start] || labels[start] != 0 {
            continue;
        }
        let label = components.len() as u32 + 1;
        let (sx, sy) = (start % w, start / w);
        let mut bbox = BBox::point(sx, sy);
        let mut area = 0usize;
        labels[start] = label;
        stack.push(start);
        while let Some(i) = stack.pop() {
            let (x, y) = (i % w, i / w);
            bbox.include(x, y);
            area += 1;
            for &(dx, dy) in offsets {
                let nx = x as isize + dx;
                let ny = y as isize + dy;
                if nx < 0 || ny < 0 || nx >= w as isize || ny >= h as isize {
                    continue;
                }
                let j = ny as usize * w + nx as usize;
                if src[j] && labels[j] == 0 {
                    labels[j] = label;
                    stack.push(j);
                }
            }
        }
        components.push(Component { label, bbox, area });
    }

    (
        LabelMap {
            width: w,
            height: h,
            labels,
        },
        components,
    )
}

/// Connected components sorted by `(y_min, x_min)`, then by label.
pub fn connected_components(bin: &BinaryImage, connectivity: Connectivity) -> Vec<Component> {
    let (_, mut components) = label_components(bin, connectivity);
    components.sort_by_key(|c| (c.bbox.reading_key(), c.label));
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_ascii(rows: &[&str]) -> BinaryImage {
        let w = rows[0].len();
        let pixels = rows.iter().flat_map(|r| r.bytes().map(|b| b == b'#')).collect();
        BinaryImage::new(w, rows.len(), pixels).unwrap()
    }

    #[test]
    fn two_disjoint_blobs() {
        let img = from_ascii(&["##....", "##....", "....##", "....##"]);
        let comps = connected_components(&img, Connectivity::Eight);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].bbox, BBox::new(0, 0, 1, 1));
        assert_eq!(comps[1].bbox, BBox::new(4, 2, 5, 3));
        assert!(comps.iter().all(|c| c.area == 4));
    }

    #[test]
    fn diagonal_depends_on_connectivity() {
        let img = from_ascii(&["#..", ".#.", "..#"]);
        assert_eq!(connected_components(&img, Connectivity::Eight).len(), 1);
        assert_eq!(connected_components(&img, Connectivity::Four).len(), 3);
    }

    #[test]
    fn background_has_no_components() {
        let img = BinaryImage::background(5, 5);
        assert!(connected_components(&img, Connectivity::Eight).is_empty());
    }

    #[test]
    fn sorted_by_reading_order() {
        // the second-discovered blob starts further left on a lower row
        let img = from_ascii(&["...#", "#...", "#..."]);
        let comps = connected_components(&img, Connectivity::Eight);
        assert_eq!(comps[0].bbox.reading_key(), (0, 3));
        assert_eq!(comps[1].bbox.reading_key(), (1, 0));
    }
}
