use std::fs;
use std::path::{Path, PathBuf};

use log::warn;

use super::group_from_path;
use crate::classifier::Label;
use crate::error::{Error, Result};
use crate::imaging::{io::load_gray, GrayImage};

/// One decoded word image from a dataset directory.
#[derive(Debug, Clone)]
pub struct IngestedImage {
    /// Path relative to the dataset root, `/`-separated.
    pub path: String,
    pub label: Label,
    pub group: Option<String>,
    pub image: GrayImage,
}

#[derive(Debug, Clone, Default)]
pub struct Ingestion {
    /// Sorted by path bytes.
    pub images: Vec<IngestedImage>,
    /// Files that could not be decoded, with the reason.
    pub skipped: Vec<(String, String)>,
    pub warnings: Vec<String>,
}

fn is_image_file(path: &Path) -> bool {
    path.extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("png") || e.eq_ignore_ascii_case("pgm"))
}

fn read_dir_sorted(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut entries = fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()
        .map_err(|e| Error::io(dir, e))?;
    entries.sort();
    Ok(entries)
}

/// Collects word images from `root/handwritten/` and `root/printed/`, each
/// optionally split one level deeper into group directories.
///
/// A missing or empty label directory only produces a warning; if both are
/// missing the call fails. Undecodable images are skipped and reported.
pub fn ingest_directory(root: impl AsRef<Path>) -> Result<Ingestion> {
    let root = root.as_ref();
    if !root.is_dir() {
        return Err(Error::Data(format!(
            "dataset root {} is not a directory",
            root.display()
        )));
    }

    let mut out = Ingestion::default();
    let mut candidates: Vec<(String, Label, PathBuf)> = Vec::new();
    let mut found_any = false;
    for label in Label::ALL {
        let dir = root.join(label.as_str());
        if !dir.is_dir() {
            out.warnings.push(format!("missing label directory {}", dir.display()));
            continue;
        }
        found_any = true;
        let before = candidates.len();
        for entry in read_dir_sorted(&dir)? {
            let name = entry
                .file_name()
                .map(|n| n.to_string_lossy().into_owned())
                .unwrap_or_default();
            if entry.is_dir() {
                for inner in read_dir_sorted(&entry)? {
                    if inner.is_file() && is_image_file(&inner) {
                        let file = inner.file_name().unwrap().to_string_lossy();
                        candidates.push((format!("{}/{name}/{file}", label.as_str()), label, inner));
                    }
                }
            } else if entry.is_file() && is_image_file(&entry) {
                candidates.push((format!("{}/{name}", label.as_str()), label, entry));
            }
        }
        if candidates.len() == before {
            out.warnings.push(format!("no images under {}", dir.display()));
        }
    }
    if !found_any {
        return Err(Error::Data(format!(
            "{} has neither a handwritten/ nor a printed/ directory",
            root.display()
        )));
    }

    candidates.sort_by(|a, b| a.0.as_bytes().cmp(b.0.as_bytes()));
    for (rel, label, full) in candidates {
        match load_gray(&full) {
            Ok(image) => out.images.push(IngestedImage {
                group: group_from_path(&rel),
                path: rel,
                label,
                image,
            }),
            Err(e) => {
                out.warnings.push(format!("skipping {rel}: {e}"));
                out.skipped.push((rel, e.to_string()));
            }
        }
    }
    for w in &out.warnings {
        warn!("{w}");
    }
    Ok(out)
}
