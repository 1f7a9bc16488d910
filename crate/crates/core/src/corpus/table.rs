use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use super::LabeledSample;
use crate::classifier::Label;
use crate::error::{Error, Result};
use crate::features::{FeatureVector, FEATURE_COUNT};

pub const FEATURE_CSV_HEADER: [&str; 2 + FEATURE_COUNT] =
    ["path", "label", "f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9"];

/// 17 significant digits: enough to round-trip any f64.
fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_features_csv<W: Write>(samples: &[LabeledSample], writer: W) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::Data("refusing to write an empty feature table".into()));
    }
    let to_data = |e: csv::Error| Error::Data(e.to_string());
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(FEATURE_CSV_HEADER).map_err(to_data)?;
    for s in samples {
        if !s.features.is_finite() {
            return Err(Error::Data(format!("{}: non-finite feature value", s.path)));
        }
        let mut record = vec![s.path.clone(), s.label.as_str().to_string()];
        record.extend(s.features.to_array().iter().map(|&v| format_value(v)));
        w.write_record(&record).map_err(to_data)?;
    }
    w.flush().map_err(|e| Error::Data(e.to_string()))?;
    Ok(())
}

/// Parses a feature table. `source` only labels error messages.
pub fn read_features_csv<R: Read>(reader: R, source: &Path) -> Result<Vec<LabeledSample>> {
    let parse_err = |line: u64, message: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);

    let mut samples = Vec::new();
    let mut saw_header = false;
    for result in rdr.records() {
        let record = result.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if !saw_header {
            let fields: Vec<&str> = record.iter().map(str::trim).collect();
            if fields != FEATURE_CSV_HEADER {
                return Err(parse_err(
                    line,
                    format!("expected header `{}`", FEATURE_CSV_HEADER.join(",")),
                ));
            }
            saw_header = true;
            continue;
        }
        if record.len() != FEATURE_CSV_HEADER.len() {
            return Err(parse_err(
                line,
                format!("expected {} columns, found {}", FEATURE_CSV_HEADER.len(), record.len()),
            ));
        }
        let label: Label = record[1].parse().map_err(|e: Error| parse_err(line, e.to_string()))?;
        let mut values = [0.0; FEATURE_COUNT];
        for (i, v) in values.iter_mut().enumerate() {
            let field = record[2 + i].trim();
            *v = field
                .parse::<f64>()
                .map_err(|e| parse_err(line, format!("f{}: `{field}`: {e}", i + 1)))?;
            if !v.is_finite() {
                return Err(parse_err(line, format!("f{}: non-finite value", i + 1)));
            }
        }
        samples.push(LabeledSample::new(&record[0], label, FeatureVector::from_array(values)));
    }
    if !saw_header {
        return Err(parse_err(1, "missing header".into()));
    }
    Ok(samples)
}

pub fn features_to_csv(samples: &[LabeledSample], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_features_csv(samples, std::io::BufWriter::new(file))
}

pub fn features_from_csv(path: impl AsRef<Path>) -> Result<Vec<LabeledSample>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_features_csv(std::io::BufReader::new(file), path)
}
