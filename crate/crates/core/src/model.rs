//! Monitoring samples, time series and the calendar-to-day time axis.

use std::fmt;

use chrono::{Datelike, NaiveDate};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("malformed date {0:?}: expected M/D/YYYY")]
    MalformedDate(String),
    #[error("invalid calendar date {0:?}")]
    InvalidDate(String),
    #[error("duplicate timestamp {0}")]
    DuplicateTimestamp(NaiveDate),
    #[error("series has no present values")]
    EmptySeries,
    #[error("sample for {station}/{parameter} does not belong to the requested series")]
    ForeignSample { station: String, parameter: String },
    #[error("knot times must be strictly increasing (index {0})")]
    UnorderedKnots(usize),
    #[error("non-finite knot at index {0}")]
    NonFiniteKnot(usize),
}

/// Parses a `M/D/YYYY` date, with one or two digit month and day.
pub fn parse_date(text: &str) -> Result<NaiveDate, ModelError> {
    let malformed = || ModelError::MalformedDate(text.to_string());
    let mut parts = text.trim().split('/');
    let (Some(m), Some(d), Some(y), None) =
        (parts.next(), parts.next(), parts.next(), parts.next())
    else {
        return Err(malformed());
    };
    let digits = |s: &str, lo: usize, hi: usize| {
        (lo..=hi).contains(&s.len()) && s.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(m, 1, 2) || !digits(d, 1, 2) || !digits(y, 4, 4) {
        return Err(malformed());
    }
    // all-digit strings of bounded length cannot fail to parse
    let (m, d, y): (u32, u32, i32) = (m.parse().unwrap(), d.parse().unwrap(), y.parse().unwrap());
    NaiveDate::from_ymd_opt(y, m, d).ok_or_else(|| ModelError::InvalidDate(text.to_string()))
}

/// Formats a date the same way [`parse_date`] reads it (no zero padding).
pub fn format_date(date: NaiveDate) -> String {
    format!("{}/{}/{}", date.month(), date.day(), date.year())
}

/// Water-quality parameter code, matched case-sensitively.
///
/// Codes outside the built-in registry are accepted and report unit `"unknown"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Parameter(String);

impl Parameter {
    pub const REGISTRY: [(&'static str, &'static str); 6] = [
        ("temp", "°C"),
        ("pH", ""),
        ("OD", "mg/l"),
        ("CBO5", "mg/l"),
        ("CCO-Mn", "mg/l"),
        ("CCO-Cr", "mg/l"),
    ];

    pub fn new(code: impl Into<String>) -> Self {
        Parameter(code.into())
    }

    pub fn code(&self) -> &str {
        &self.0
    }

    pub fn is_registered(&self) -> bool {
        Self::REGISTRY.iter().any(|(c, _)| *c == self.0)
    }

    pub fn unit(&self) -> &'static str {
        Self::REGISTRY
            .iter()
            .find(|(c, _)| *c == self.0)
            .map_or("unknown", |(_, u)| *u)
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Parameter {
    fn from(code: &str) -> Self {
        Parameter::new(code)
    }
}

/// One dated measurement of one parameter at one station.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub station: String,
    pub date: NaiveDate,
    pub parameter: Parameter,
    /// `None` when the measurement is missing.
    pub value: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    /// Days since the series epoch.
    pub t: f64,
    pub y: f64,
}

/// Strictly time-ordered knots for one station and parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    station: String,
    parameter: Parameter,
    epoch: NaiveDate,
    knots: Vec<Knot>,
}

impl TimeSeries {
    /// Builds a series from explicit knots, checking ordering and finiteness.
    pub fn new(
        station: impl Into<String>,
        parameter: Parameter,
        epoch: NaiveDate,
        knots: Vec<Knot>,
    ) -> Result<Self, ModelError> {
        if knots.is_empty() {
            return Err(ModelError::EmptySeries);
        }
        for (i, k) in knots.iter().enumerate() {
            if !k.t.is_finite() || !k.y.is_finite() {
                return Err(ModelError::NonFiniteKnot(i));
            }
            if i > 0 && knots[i - 1].t >= k.t {
                return Err(ModelError::UnorderedKnots(i));
            }
        }
        Ok(TimeSeries {
            station: station.into(),
            parameter,
            epoch,
            knots,
        })
    }

    /// Synthetic series from `(t, y)` pairs, anchored at 1970-01-01.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self, ModelError> {
        let knots = points.iter().map(|&(t, y)| Knot { t, y }).collect();
        Self::new(
            "synthetic",
            Parameter::new("synthetic"),
            NaiveDate::from_ymd_opt(1970, 1, 1).unwrap(),
            knots,
        )
    }

    pub fn station(&self) -> &str {
        &self.station
    }

    pub fn parameter(&self) -> &Parameter {
        &self.parameter
    }

    pub fn epoch(&self) -> NaiveDate {
        self.epoch
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn len(&self) -> usize {
        self.knots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.knots.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.knots.iter().map(|k| k.t).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.knots.iter().map(|k| k.y).collect()
    }

    /// `(first t, last t)`.
    pub fn span(&self) -> (f64, f64) {
        (self.knots[0].t, self.knots[self.knots.len() - 1].t)
    }

    /// Calendar date of the day containing `t`.
    pub fn date_at(&self, t: f64) -> NaiveDate {
        self.epoch + chrono::Duration::days(t.floor() as i64)
    }

    /// Absolute day number of `t`, comparable across series with different epochs.
    pub(crate) fn absolute_day(&self, t: f64) -> f64 {
        f64::from(self.epoch.num_days_from_ce()) + t
    }

    /// Series with every `t` shifted by `dt` (same epoch).
    pub fn shifted(&self, dt: f64) -> Result<Self, ModelError> {
        let knots = self
            .knots
            .iter()
            .map(|k| Knot {
                t: k.t + dt,
                y: k.y,
            })
            .collect();
        Self::new(
            self.station.clone(),
            self.parameter.clone(),
            self.epoch,
            knots,
        )
    }

    /// Keeps the knots whose index satisfies `keep`.
    pub fn subset(&self, mut keep: impl FnMut(usize) -> bool) -> Result<Self, ModelError> {
        let knots = self
            .knots
            .iter()
            .enumerate()
            .filter(|(i, _)| keep(*i))
            .map(|(_, k)| *k)
            .collect();
        Self::new(
            self.station.clone(),
            self.parameter.clone(),
            self.epoch,
            knots,
        )
    }
}

/// Assembles the series for `station`/`parameter`: drops missing values,
/// sorts by date and measures `t` in days from the earliest retained date.
pub fn build_series(
    samples: &[Sample],
    station: &str,
    parameter: &Parameter,
) -> Result<TimeSeries, ModelError> {
    let mut present: Vec<(NaiveDate, f64)> = Vec::with_capacity(samples.len());
    for s in samples {
        if s.station != station || &s.parameter != parameter {
            return Err(ModelError::ForeignSample {
                station: s.station.clone(),
                parameter: s.parameter.to_string(),
            });
        }
        if let Some(v) = s.value {
            present.push((s.date, v));
        }
    }
    if present.is_empty() {
        return Err(ModelError::EmptySeries);
    }
    present.sort_by_key(|(d, _)| *d);
    if let Some(w) = present.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(ModelError::DuplicateTimestamp(w[0].0));
    }
    let epoch = present[0].0;
    let knots = present
        .into_iter()
        .map(|(d, y)| Knot {
            t: (d - epoch).num_days() as f64,
            y,
        })
        .collect();
    TimeSeries::new(station, parameter.clone(), epoch, knots)
}
