//! Monitoring tables in CSV form, the bundled Gropeni fixture and SVG plots.
//!
//! Input files have a header row whose first cell is the date column
//! (`Data` or `Date`) followed by one column per parameter. Dates are
//! `M/D/YYYY`. A cell holding only `*` or `-` is a missing value; missing
//! values are always written back as `*`.

mod svg;

use chrono::NaiveDate;
use thiserror::Error;

use crate::model::{
    build_series, format_date, parse_date, ModelError, Parameter, Sample, TimeSeries,
};

pub use svg::{render_svg, Layer, LayerKind, PlotSpec, SvgError};

/// Station name of the bundled table.
pub const GROPENI_STATION: &str = "Dunare-Gropeni";

/// Dissolved-oxygen campaign at Dunare-Gropeni, Sep 2003 to Jul 2004.
pub const GROPENI_CSV: &str = include_str!("../../data/gropeni.csv");

const DATE_HEADERS: [&str; 2] = ["Data", "Date"];
const MISSING_MARKERS: [&str; 2] = ["*", "-"];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IngestError {
    #[error("bad header: {0}")]
    HeaderMismatch(String),
    #[error("line {line}: expected {expected} cells, found {found}")]
    MalformedRow {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {source}")]
    MalformedDate { line: usize, source: ModelError },
    #[error("line {line}, column {column}: {text:?} is not a number")]
    MalformedNumber {
        line: usize,
        column: String,
        text: String,
    },
    #[error("date {0} appears more than once")]
    DuplicateDate(NaiveDate),
    #[error("unknown parameter {0:?}")]
    UnknownParameter(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

impl From<csv::Error> for IngestError {
    fn from(e: csv::Error) -> Self {
        IngestError::Csv(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub date: NaiveDate,
    /// One entry per dataset parameter, in header order.
    pub values: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    station: String,
    source: String,
    date_header: String,
    parameters: Vec<Parameter>,
    rows: Vec<Row>,
}

fn parse_number(text: &str) -> Option<f64> {
    let plausible = !text.is_empty()
        && text
            .bytes()
            .all(|b| b.is_ascii_digit() || matches!(b, b'.' | b'-' | b'+' | b'e' | b'E'));
    if !plausible {
        return None;
    }
    text.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parses CSV text into a dataset for `station`, sorted by date.
pub fn parse_csv(text: &str, station: &str, source: &str) -> Result<Dataset, IngestError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = reader.records();

    let header = match records.next() {
        Some(rec) => rec?,
        None => return Err(IngestError::HeaderMismatch("empty input".into())),
    };
    let date_header = header.get(0).unwrap_or_default().to_string();
    if !DATE_HEADERS.contains(&date_header.as_str()) {
        return Err(IngestError::HeaderMismatch(format!(
            "first column must be Data or Date, found {date_header:?}"
        )));
    }
    let parameters: Vec<Parameter> = header.iter().skip(1).map(Parameter::new).collect();
    if parameters.is_empty() {
        return Err(IngestError::HeaderMismatch("no parameter columns".into()));
    }
    for (i, p) in parameters.iter().enumerate() {
        if p.code().is_empty() {
            return Err(IngestError::HeaderMismatch(format!(
                "empty name in column {}",
                i + 2
            )));
        }
        if parameters[..i].contains(p) {
            return Err(IngestError::HeaderMismatch(format!("duplicate column {p}")));
        }
    }

    let width = parameters.len() + 1;
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.len() != width {
            return Err(IngestError::MalformedRow {
                line,
                expected: width,
                found: rec.len(),
            });
        }
        let date =
            parse_date(&rec[0]).map_err(|source| IngestError::MalformedDate { line, source })?;
        let values = rec
            .iter()
            .skip(1)
            .zip(&parameters)
            .map(|(cell, param)| {
                if MISSING_MARKERS.contains(&cell) {
                    Ok(None)
                } else {
                    parse_number(cell)
                        .map(Some)
                        .ok_or_else(|| IngestError::MalformedNumber {
                            line,
                            column: param.to_string(),
                            text: cell.to_string(),
                        })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(Row { date, values });
    }
    rows.sort_by_key(|r| r.date);
    if let Some(w) = rows.windows(2).find(|w| w[0].date == w[1].date) {
        return Err(IngestError::DuplicateDate(w[0].date));
    }
    Ok(Dataset {
        station: station.to_string(),
        source: source.to_string(),
        date_header,
        parameters,
        rows,
    })
}

impl Dataset {
    /// The bundled Dunare-Gropeni table.
    pub fn gropeni() -> Dataset {
        parse_csv(GROPENI_CSV, GROPENI_STATION, "fixture:gropeni").expect("bundled fixture parses")
    }

    pub fn station(&self) -> &str {
        &self.station
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn parameters(&self) -> &[Parameter] {
        &self.parameters
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    fn column(&self, parameter: &Parameter) -> Result<usize, IngestError> {
        self.parameters
            .iter()
            .position(|p| p == parameter)
            .ok_or_else(|| IngestError::UnknownParameter(parameter.to_string()))
    }

    pub fn value(&self, row: usize, parameter: &Parameter) -> Result<Option<f64>, IngestError> {
        Ok(self.rows[row].values[self.column(parameter)?])
    }

    pub fn samples(&self, parameter: &Parameter) -> Result<Vec<Sample>, IngestError> {
        let col = self.column(parameter)?;
        Ok(self
            .rows
            .iter()
            .map(|r| Sample {
                station: self.station.clone(),
                date: r.date,
                parameter: parameter.clone(),
                value: r.values[col],
            })
            .collect())
    }

    pub fn series(&self, parameter: &Parameter) -> Result<TimeSeries, IngestError> {
        let samples = self.samples(parameter)?;
        Ok(build_series(&samples, &self.station, parameter)?)
    }

    /// Number of absent cells across all rows and parameters.
    pub fn missing_count(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| &r.values)
            .filter(|v| v.is_none())
            .count()
    }

    /// CSV text that [`parse_csv`] reads back to an identical dataset.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let header = std::iter::once(self.date_header.clone())
            .chain(self.parameters.iter().map(|p| p.to_string()));
        writer.write_record(header).expect("in-memory write");
        for row in &self.rows {
            let cells = std::iter::once(format_date(row.date)).chain(
                row.values
                    .iter()
                    .map(|v| v.map_or_else(|| "*".to_string(), |x| x.to_string())),
            );
            writer.write_record(cells).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 csv")
    }
}
