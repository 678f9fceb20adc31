//! Analysis of irregularly sampled water-quality series.
//!
//! The crate turns dated monitoring tables into [`model::TimeSeries`] on a
//! day axis, interpolates them with natural cubic splines, smoothing splines
//! or barycentric Lagrange polynomials ([`spline`]), fits polynomial trends
//! and correlations ([`regression`]), compares curves against a fixed
//! harmonic reference ([`harmonic`]) and reads/writes CSV and SVG
//! ([`ingest`]). The `wqa` binary exposes the same operations on the
//! command line.

pub mod cli;
pub mod harmonic;
pub mod ingest;
pub mod model;
pub mod numerics;
pub mod regression;
pub mod spline;

pub use model::{build_series, parse_date, Knot, Parameter, Sample, TimeSeries};
pub use spline::{CurveSamples, LagrangeModel, SplineModel};
