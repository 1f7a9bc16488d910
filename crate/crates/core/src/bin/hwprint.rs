//! Command-line front end. Exit codes: 0 success, 1 usage or configuration
//! error, 2 data error.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hwprint::classifier::knn_predict;
use hwprint::corpus::{
    features_from_csv, features_to_csv, ingest_directory, load_model, save_model, split_by_group, synthesize_batch,
    WordKind,
};
use hwprint::evaluation::{format_report, ReportLayout};
use hwprint::imaging::io::{load_gray, save_png};
use hwprint::{
    cross_validate, extract_features, knn_fit, segment_words, CvParams, CvReport, Error, LabeledSample,
    SegmentationConfig,
};

#[derive(Parser)]
#[command(name = "hwprint", version, about = "Handwritten/printed word classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Split a page into word crops plus boxes.csv.
    Segment {
        page: PathBuf,
        #[arg(long)]
        out_dir: PathBuf,
        /// `key = value` segmentation settings.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Extract features from a handwritten/ + printed/ dataset tree.
    Extract {
        root: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Fit a k-NN model on a feature table.
    Train {
        #[arg(long)]
        features: PathBuf,
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Classify word images with a saved model.
    Classify {
        #[arg(long)]
        model: PathBuf,
        #[arg(required = true)]
        images: Vec<PathBuf>,
    },
    /// K-fold cross-validation report.
    Crossval {
        #[arg(long)]
        features: PathBuf,
        /// Number of folds.
        #[arg(long = "K", default_value_t = 10)]
        folds: usize,
        /// Neighbour counts; a comma list gives one column per value.
        #[arg(long, value_delimiter = ',', default_value = "5")]
        k: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        stratified: bool,
        /// Also report each sample group separately.
        #[arg(long)]
        per_group: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write synthetic word images.
    Synth {
        #[arg(long)]
        kind: WordKind,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

fn create_dir(dir: &Path) -> Result<(), Error> {
    fs::create_dir_all(dir).map_err(|e| Error::Io {
        path: dir.to_path_buf(),
        source: e,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        source: e,
    })
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Segment { page, out_dir, config } => {
            let cfg = match config {
                Some(p) => SegmentationConfig::load(p)?,
                None => SegmentationConfig::default(),
            };
            let regions = segment_words(&load_gray(&page)?, &cfg);
            create_dir(&out_dir)?;
            let mut boxes = String::from("x_min,y_min,x_max,y_max\n");
            for (i, r) in regions.iter().enumerate() {
                save_png(&r.crop, out_dir.join(format!("word_{:04}.png", i + 1)))?;
                let b = r.bbox;
                writeln!(boxes, "{},{},{},{}", b.x_min, b.y_min, b.x_max, b.y_max).unwrap();
            }
            write_file(&out_dir.join("boxes.csv"), &boxes)?;
            println!("{} words written to {}", regions.len(), out_dir.display());
        }
        Command::Extract { root, out } => {
            let ingestion = ingest_directory(&root)?;
            if ingestion.images.is_empty() {
                return Err(Error::Data(format!("no readable images under {}", root.display())));
            }
            let samples: Vec<LabeledSample> = ingestion
                .images
                .iter()
                .map(|img| LabeledSample::new(img.path.clone(), img.label, extract_features(&img.image)))
                .collect();
            features_to_csv(&samples, &out)?;
            println!(
                "{} samples written to {} ({} skipped)",
                samples.len(),
                out.display(),
                ingestion.skipped.len()
            );
        }
        Command::Train { features, k, out } => {
            let samples = features_from_csv(&features)?;
            let vectors: Vec<_> = samples.iter().map(|s| s.features).collect();
            let labels: Vec<_> = samples.iter().map(|s| s.label).collect();
            save_model(&knn_fit(&vectors, &labels, k)?, &out)?;
            println!(
                "model with {} samples, k = {k}, written to {}",
                samples.len(),
                out.display()
            );
        }
        Command::Classify { model, images } => {
            let model = load_model(&model)?;
            println!("path,label,distance_to_nearest");
            for path in images {
                let p = knn_predict(&model, &extract_features(&load_gray(&path)?));
                println!("{},{},{}", path.display(), p.label, p.nearest_distance());
            }
        }
        Command::Crossval {
            features,
            folds,
            k,
            seed,
            stratified,
            per_group,
            csv,
        } => {
            let samples = features_from_csv(&features)?;
            let params = |k| CvParams {
                num_folds: folds,
                k,
                seed,
                stratified,
                parallel: true,
            };
            let per_k = k
                .iter()
                .map(|&k| cross_validate(&samples, &params(k)))
                .collect::<Result<Vec<CvReport>, _>>()?;
            let mut rendered = vec![
                format_report(ReportLayout::PerK(&per_k)),
                format_report(ReportLayout::Confusion(&per_k[0])),
            ];
            if per_group {
                let groups = split_by_group(&samples)
                    .into_iter()
                    .map(|(name, set)| cross_validate(&set, &params(k[0])).map(|r| (name, r)))
                    .collect::<Result<Vec<_>, _>>()?;
                if groups.is_empty() {
                    log::warn!("no grouped samples; per-group report skipped");
                } else {
                    rendered.push(format_report(ReportLayout::PerGroup(&groups)));
                }
            }
            let titles = [
                "Accuracy (%) per k".to_string(),
                format!("Confusion matrix, k = {} (rows: truth, columns: predicted)", k[0]),
                format!("Accuracy (%) per group, k = {}", k[0]),
            ];
            for (title, r) in titles.iter().zip(&rendered) {
                println!("{title}\n{}", r.text);
            }
            if let Some(path) = csv {
                let mut text = String::new();
                for (i, r) in rendered.iter().enumerate() {
                    // Keep one header line for the whole file.
                    let body = if i == 0 {
                        r.csv.as_str()
                    } else {
                        r.csv.split_once('\n').map_or("", |x| x.1)
                    };
                    text.push_str(body);
                }
                write_file(&path, &text)?;
            }
        }
        Command::Synth { kind, n, seed, out_dir } => {
            create_dir(&out_dir)?;
            let prefix = match kind {
                WordKind::Printed => "printed",
                WordKind::Handwritten => "handwritten",
            };
            for (i, img) in synthesize_batch(kind, n, seed)?.iter().enumerate() {
                save_png(img, out_dir.join(format!("{prefix}_{:04}.png", i + 1)))?;
            }
            println!("{n} {prefix} words written to {}", out_dir.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config() { 1 } else { 2 })
        }
    }
}
