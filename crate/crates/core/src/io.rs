//! Dataset loaders and result documents.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::bench::BenchRow;
use crate::error::{domain, Error, Result};
use crate::kmeans::KMeansConfig;
use crate::measure::MeasureSpec;
use crate::series::{Dataset, TimeSeries};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

fn parse_field(path: &Path, line: usize, column: usize, field: &str) -> Result<f64> {
    let trimmed = field.trim();
    let value: f64 = trimmed.parse().map_err(|_| Error::Parse {
        path: path.to_owned(),
        line,
        message: format!("column {column}: `{trimmed}` is not a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            path: path.to_owned(),
            line,
            message: format!("column {column}: non-finite value `{trimmed}`"),
        });
    }
    Ok(value)
}

fn parse_error(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_owned(),
        line,
        message: message.into(),
    }
}

fn csv_line(record: &csv::StringRecord, fallback: usize) -> usize {
    record
        .position()
        .map_or(fallback, |p| usize::try_from(p.line()).unwrap_or(fallback))
}

/// Reads a UCR archive file: one series per row, `label<TAB>v1<TAB>…<TAB>vm`.
pub fn load_ucr_tsv(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    parse_ucr_tsv(open(path)?, path)
}

/// [`load_ucr_tsv`] over any reader; `path` is used in error messages only.
pub fn parse_ucr_tsv(reader: impl Read, path: &Path) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut series = Vec::new();
    let mut width = None;
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_error(path, idx + 1, e.to_string()))?;
        let line = csv_line(&record, idx + 1);
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() < 2 {
            return Err(parse_error(path, line, "expected a label followed by values"));
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(parse_error(
                    path,
                    line,
                    format!("row has {} values, expected {}", record.len() - 1, w - 1),
                ))
            }
            _ => {}
        }
        let label = record[0].trim().to_owned();
        let values = record
            .iter()
            .enumerate()
            .skip(1)
            .map(|(col, f)| parse_field(path, line, col + 1, f))
            .collect::<Result<Vec<_>>>()?;
        let id = series.len().to_string();
        series.push(TimeSeries::new(values)?.with_id(id).with_label(label));
    }
    if series.is_empty() {
        return Err(domain(format!("{}: no series found", path.display())));
    }
    Dataset::new(series)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CsvOptions {
    /// Skip the first row.
    pub header: bool,
    /// Treat the first column as the series identifier.
    pub id_column: bool,
}

/// Reads comma-separated numeric rows, one series per row, without labels.
pub fn load_csv_series(path: impl AsRef<Path>, options: CsvOptions) -> Result<Dataset> {
    let path = path.as_ref();
    parse_csv_series(open(path)?, path, options)
}

pub fn parse_csv_series(reader: impl Read, path: &Path, options: CsvOptions) -> Result<Dataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(options.header)
        .flexible(true)
        .from_reader(reader);
    let mut series = Vec::new();
    let mut width = None;
    let first_line = if options.header { 2 } else { 1 };
    for (idx, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| parse_error(path, idx + first_line, e.to_string()))?;
        let line = csv_line(&record, idx + first_line);
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        let skip = usize::from(options.id_column);
        if record.len() <= skip {
            return Err(parse_error(path, line, "row has no values"));
        }
        match width {
            None => width = Some(record.len()),
            Some(w) if w != record.len() => {
                return Err(parse_error(
                    path,
                    line,
                    format!("row has {} fields, expected {w}", record.len()),
                ))
            }
            _ => {}
        }
        let values = record
            .iter()
            .enumerate()
            .skip(skip)
            .map(|(col, f)| parse_field(path, line, col + 1, f))
            .collect::<Result<Vec<_>>>()?;
        let id = if options.id_column {
            record[0].trim().to_owned()
        } else {
            series.len().to_string()
        };
        series.push(TimeSeries::new(values)?.with_id(id));
    }
    if series.is_empty() {
        return Err(domain(format!("{}: no series found", path.display())));
    }
    Dataset::new(series)
}

/// Machine-readable output of one CLI run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub tool_version: String,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase")]
pub enum Payload {
    Dist(DistanceReport),
    Cluster(ClusterReport),
    Bench(BenchReport),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub measure: MeasureSpec,
    pub series_a: String,
    pub series_b: String,
    pub distance: f64,
    pub shift: usize,
    pub visited_cells: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_offset: Option<Vec<(usize, f64)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRow {
    pub id: String,
    pub cluster: usize,
    pub shift: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterReport {
    pub config: KMeansConfig,
    pub inertia: f64,
    pub iterations_run: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub accuracy: Option<f64>,
    pub assignments: Vec<AssignmentRow>,
    pub barycenters: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl ResultDocument {
    pub fn new(payload: Payload) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_owned(),
            payload,
        }
    }

    /// Serialized form, newline-terminated.
    ///
    /// Floats are written in their shortest round-trip representation.
    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("document serializes");
                s.push('\n');
                s
            }
            OutputFormat::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Dist(d) => {
                out.push_str("measure,radius,series_a,series_b,distance,shift,visited_cells\n");
                let radius = d.measure.radius().map(|r| r.to_string()).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{radius},{},{},{:?},{},{}",
                    d.measure.kind(),
                    csv_escape(&d.series_a),
                    csv_escape(&d.series_b),
                    d.distance,
                    d.shift,
                    d.visited_cells
                );
            }
            Payload::Cluster(c) => {
                out.push_str("series_id,cluster,shift\n");
                for row in &c.assignments {
                    let _ = writeln!(out, "{},{},{}", csv_escape(&row.id), row.cluster, row.shift);
                }
            }
            Payload::Bench(b) => {
                out.push_str("method,m,r,visited_cells,wall_time_ns\n");
                for row in &b.rows {
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{}",
                        row.method, row.m, row.r, row.visited_cells, row.wall_time_ns
                    );
                }
            }
        }
        out
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_owned()
    }
}

/// Writes `doc` to `path`.
pub fn write_result(doc: &ResultDocument, path: impl AsRef<Path>, format: OutputFormat) -> Result<()> {
    let path = path.as_ref();
    let io_err = |source| Error::Io {
        path: path.to_owned(),
        source,
    };
    let mut file = File::create(path).map_err(io_err)?;
    file.write_all(doc.render(format).as_bytes()).map_err(io_err)
}

/// Reads a JSON document written by [`write_result`].
pub fn read_result(path: impl AsRef<Path>) -> Result<ResultDocument> {
    let path = path.as_ref();
    serde_json::from_reader(open(path)?).map_err(|source| Error::Json {
        path: PathBuf::from(path),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> &'static Path {
        Path::new("mem")
    }

    #[test]
    fn ucr_row() {
        let d = parse_ucr_tsv("1\t0.5\t0.3\n".as_bytes(), p()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.series()[0].values(), &[0.5, 0.3]);
        assert_eq!(d.series()[0].label(), Some("1"));
    }

    #[test]
    fn ucr_errors() {
        let err = parse_ucr_tsv("1\t0.5\t0.3\n2\t0.1\n".as_bytes(), p()).unwrap_err();
        assert!(err.to_string().contains("mem:2"), "{err}");
        let err = parse_ucr_tsv("1\t0.5\tx\n".as_bytes(), p()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        assert!(matches!(parse_ucr_tsv("".as_bytes(), p()), Err(Error::Domain(_))));
    }

    #[test]
    fn csv_rows() {
        let d = parse_csv_series("0,1,2\n3,4,5".as_bytes(), p(), CsvOptions::default()).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d.length(), 3);
        assert!(!d.has_labels());

        let opts = CsvOptions {
            header: true,
            id_column: true,
        };
        let d = parse_csv_series("id,a,b\nx,1,2\ny,3,4\n".as_bytes(), p(), opts).unwrap();
        assert_eq!(d.series_id(1), "y");
        assert_eq!(d.series()[1].values(), &[3.0, 4.0]);
    }

    #[test]
    fn csv_ragged_row_names_line() {
        let err = parse_csv_series("0,1,2\n3,4\n".as_bytes(), p(), CsvOptions::default())
            .unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn distance_document_keys() {
        let doc = ResultDocument::new(Payload::Dist(DistanceReport {
            measure: MeasureSpec::shift_dtw(4),
            series_a: "a.csv".into(),
            series_b: "b.csv".into(),
            distance: 0.0,
            shift: 0,
            visited_cells: 10,
            per_offset: None,
        }));
        let v: serde_json::Value = serde_json::from_str(&doc.render(OutputFormat::Json)).unwrap();
        assert_eq!(v["command"], "dist");
        assert_eq!(v["distance"], 0.0);
        assert_eq!(v["shift"], 0);
        assert_eq!(v["visited_cells"], 10);
        assert_eq!(v["measure"]["kind"], "shiftdtw");
        assert!(v.get("per_offset").is_none());
        let csv = doc.render(OutputFormat::Csv);
        assert_eq!(csv.lines().nth(1).unwrap(), "shiftdtw,4,a.csv,b.csv,0.0,0,10");
    }

    #[test]
    fn cluster_csv_rows() {
        let doc = ResultDocument::new(Payload::Cluster(ClusterReport {
            config: KMeansConfig::new(2, MeasureSpec::euclidean()),
            inertia: 1.5,
            iterations_run: 2,
            accuracy: Some(1.0),
            assignments: vec![AssignmentRow {
                id: "s,1".into(),
                cluster: 1,
                shift: 3,
            }],
            barycenters: vec![vec![0.0]],
        }));
        assert_eq!(
            doc.render(OutputFormat::Csv),
            "series_id,cluster,shift\n\"s,1\",1,3\n"
        );
    }
}
