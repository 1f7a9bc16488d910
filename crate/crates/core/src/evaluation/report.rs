use std::fmt::Write as _;

use super::CvReport;
use crate::classifier::Label;

/// Table shapes for cross-validation results.
#[derive(Debug, Clone, Copy)]
pub enum ReportLayout<'a> {
    /// One accuracy column per neighbor count `k`.
    PerK(&'a [CvReport]),
    /// Pooled confusion matrix with row totals.
    Confusion(&'a CvReport),
    /// One accuracy column per named sample group (e.g. script).
    PerGroup(&'a [(String, CvReport)]),
}

/// Fixed-width text table and its `class,metric,value` CSV twin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedReport {
    pub text: String,
    pub csv: String,
}

/// Formats hundredths of a percent as `NN.NN`.
pub fn format_percent(hundredths: u64) -> String {
    format!("{}.{:02}", hundredths / 100, hundredths % 100)
}

const ROW_HEADER_WIDTH: usize = 12;

struct Table {
    headings: Vec<String>,
    rows: Vec<(String, Vec<String>)>,
}

impl Table {
    fn render(&self) -> String {
        let widths: Vec<usize> = (0..self.headings.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|(_, cells)| cells[c].len())
                    .chain(std::iter::once(self.headings[c].len()))
                    .max()
                    .unwrap_or(0)
                    .max(6)
            })
            .collect();
        let mut out = String::new();
        let _ = write!(out, "{:<ROW_HEADER_WIDTH$}", "");
        for (h, w) in self.headings.iter().zip(&widths) {
            let _ = write!(out, "  {h:>w$}");
        }
        out.push('\n');
        for (name, cells) in &self.rows {
            let _ = write!(out, "{name:<ROW_HEADER_WIDTH$}");
            for (cell, w) in cells.iter().zip(&widths) {
                let _ = write!(out, "  {cell:>w$}");
            }
            out.push('\n');
        }
        out
    }
}

fn accuracy_cells(report: &CvReport) -> [String; 3] {
    let cm = &report.confusion;
    let cell = |h: Option<u64>| h.map_or_else(|| "-".to_string(), format_percent);
    [
        cell(cm.class_accuracy_hundredths(Label::Handwritten)),
        cell(cm.class_accuracy_hundredths(Label::Printed)),
        cell(cm.average_accuracy_hundredths()),
    ]
}

fn accuracy_table<'a>(columns: impl Iterator<Item = (String, &'a CvReport)>) -> (Table, Vec<[String; 3]>) {
    let mut headings = Vec::new();
    let mut cells = Vec::new();
    for (heading, report) in columns {
        headings.push(heading);
        cells.push(accuracy_cells(report));
    }
    let rows = ["Handwritten", "Printed", "Average"]
        .iter()
        .enumerate()
        .map(|(r, name)| (name.to_string(), cells.iter().map(|c| c[r].clone()).collect()))
        .collect();
    (Table { headings, rows }, cells)
}

fn csv_string(rows: impl IntoIterator<Item = [String; 3]>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["class", "metric", "value"]).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

fn accuracy_csv(metrics: &[String], cells: &[[String; 3]]) -> String {
    let classes = ["handwritten", "printed", "average"];
    let rows = metrics.iter().zip(cells).flat_map(|(metric, c)| {
        classes
            .iter()
            .zip(c.iter())
            .map(move |(class, v)| [class.to_string(), metric.clone(), v.clone()])
    });
    csv_string(rows)
}

/// Renders reports as a text table (two decimals, half-up) plus CSV rows.
pub fn format_report(layout: ReportLayout<'_>) -> RenderedReport {
    match layout {
        ReportLayout::PerK(reports) => {
            let (table, cells) = accuracy_table(reports.iter().map(|r| (format!("k = {}", r.k), r)));
            let metrics: Vec<String> = reports.iter().map(|r| format!("accuracy_k{}", r.k)).collect();
            RenderedReport {
                text: table.render(),
                csv: accuracy_csv(&metrics, &cells),
            }
        }
        ReportLayout::PerGroup(groups) => {
            let (table, cells) = accuracy_table(groups.iter().map(|(name, r)| (name.clone(), r)));
            let metrics: Vec<String> = groups.iter().map(|(name, _)| name.clone()).collect();
            RenderedReport {
                text: table.render(),
                csv: accuracy_csv(&metrics, &cells),
            }
        }
        ReportLayout::Confusion(report) => {
            let cm = &report.confusion;
            let headings = vec!["Handwritten".to_string(), "Printed".to_string(), "Total".to_string()];
            let rows: Vec<(String, Vec<String>)> = Label::ALL
                .iter()
                .map(|&t| {
                    let cells = vec![
                        cm.get(t, Label::Handwritten).to_string(),
                        cm.get(t, Label::Printed).to_string(),
                        cm.row_total(t).to_string(),
                    ];
                    (t.title().to_string(), cells)
                })
                .collect();
            let csv_rows = Label::ALL.iter().flat_map(|&t| {
                [
                    [
                        t.as_str().to_string(),
                        "predicted_handwritten".into(),
                        cm.get(t, Label::Handwritten).to_string(),
                    ],
                    [
                        t.as_str().to_string(),
                        "predicted_printed".into(),
                        cm.get(t, Label::Printed).to_string(),
                    ],
                    [t.as_str().to_string(), "total".into(), cm.row_total(t).to_string()],
                ]
            });
            RenderedReport {
                text: Table { headings, rows }.render(),
                csv: csv_string(csv_rows),
            }
        }
    }
}
