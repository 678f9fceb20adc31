//! Command-line front end (`wqa`).
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::harmonic::{
    compare_to_harmonic, fit_harmonic_scale, harmonic_curve, HarmonicSpec, IndexMap,
};
use crate::ingest::{parse_csv, render_svg, Dataset, Layer, PlotSpec};
use crate::model::{format_date, Parameter, TimeSeries};
use crate::regression::{pearson_with_count, trend_report};
use crate::spline::{
    dense_grid, fit_lagrange, fit_natural_spline, fit_smoothing_spline, spline_extrema,
    CurveSamples,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "wqa", version, about = "Water-quality time series analysis")]
pub struct Cli {
    /// Date format of input files (only M/D/YYYY is supported).
    #[arg(long, global = true, default_value = "M/D/YYYY", value_parser = ["M/D/YYYY"])]
    epoch_format: String,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fixture {
    Gropeni,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Spline,
    Lagrange,
    Smooth,
}

#[derive(Debug, Args)]
struct Source {
    /// CSV file with a Data/Date column followed by parameter columns.
    #[arg(long, required_unless_present = "fixture", conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Bundled dataset.
    #[arg(long, value_enum)]
    fixture: Option<Fixture>,
    /// Station name for --input files (defaults to the file stem).
    #[arg(long)]
    station: Option<String>,
}

#[derive(Debug, Args)]
struct Fit {
    #[arg(long, value_enum, default_value = "spline")]
    method: Method,
    /// Smoothing parameter, required with --method smooth.
    #[arg(long)]
    lambda: Option<f64>,
    /// Number of grid points across the knot span.
    #[arg(long, default_value_t = 1000)]
    resolution: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export a dense-grid interpolation as CSV (t_days,date,value).
    Interp {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param: String,
        #[command(flatten)]
        fit: Fit,
        #[arg(long)]
        out: PathBuf,
    },
    /// List interior maxima and minima of the natural spline.
    Extrema {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param: String,
    },
    /// Linear trend over the series span.
    Trend {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param: String,
    },
    /// Pearson correlation of two parameters on shared dates.
    Correlate {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param_a: String,
        #[arg(long)]
        param_b: String,
    },
    /// Compare the spline against the scaled harmonic reference curve.
    Harmonic {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param: String,
        #[arg(long, default_value_t = PI / 24.0)]
        angular_coeff: f64,
        #[arg(long, default_value_t = 4.0 / 3.0)]
        exponent: f64,
        #[arg(long, default_value_t = 1000)]
        resolution: usize,
    },
    /// Render the interpolated curve and knots as SVG.
    Plot {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        param: String,
        #[command(flatten)]
        fit: Fit,
        /// Overlay the fitted harmonic reference curve.
        #[arg(long)]
        harmonic: bool,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 500)]
        height: u32,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

fn data_err(e: impl std::fmt::Display) -> Failure {
    Failure::Data(e.to_string())
}

fn load(source: &Source) -> Result<Dataset, Failure> {
    match (&source.input, source.fixture) {
        (_, Some(Fixture::Gropeni)) => Ok(Dataset::gropeni()),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
            let station = source.station.clone().unwrap_or_else(|| {
                path.file_stem()
                    .map_or_else(|| "unknown".into(), |s| s.to_string_lossy().into_owned())
            });
            parse_csv(&text, &station, &path.display().to_string()).map_err(data_err)
        }
        (None, None) => Err(Failure::Usage(
            "one of --input or --fixture is required".into(),
        )),
    }
}

fn load_series(source: &Source, param: &str) -> Result<TimeSeries, Failure> {
    load(source)?
        .series(&Parameter::new(param))
        .map_err(data_err)
}

fn curve_for(series: &TimeSeries, fit: &Fit) -> Result<CurveSamples, Failure> {
    match fit.method {
        Method::Spline => {
            let model = fit_natural_spline(series).map_err(data_err)?;
            dense_grid(&model, fit.resolution).map_err(data_err)
        }
        Method::Smooth => {
            let lambda = fit
                .lambda
                .ok_or_else(|| Failure::Usage("--method smooth requires --lambda".into()))?;
            let model = fit_smoothing_spline(series, lambda).map_err(data_err)?;
            dense_grid(&model, fit.resolution).map_err(data_err)
        }
        Method::Lagrange => {
            let model = fit_lagrange(series).map_err(data_err)?;
            dense_grid(&model, fit.resolution).map_err(data_err)
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn execute(command: &Command, out: &mut String) -> Result<(), Failure> {
    match command {
        Command::Interp {
            source,
            param,
            fit,
            out: path,
        } => {
            let series = load_series(source, param)?;
            let curve = curve_for(&series, fit)?;
            let mut csv = String::from("t_days,date,value\n");
            for &(t, y) in curve.points() {
                let _ = writeln!(csv, "{t:.6},{},{y:.6}", format_date(series.date_at(t)));
            }
            write_file(path, &csv)?;
            let _ = writeln!(out, "wrote {} points to {}", curve.len(), path.display());
        }
        Command::Extrema { source, param } => {
            let series = load_series(source, param)?;
            let model = fit_natural_spline(&series).map_err(data_err)?;
            for e in spline_extrema(&model) {
                let _ = writeln!(
                    out,
                    "{} {:.6} {} {:.6}",
                    e.kind,
                    e.t,
                    format_date(series.date_at(e.t)),
                    e.y
                );
            }
        }
        Command::Trend { source, param } => {
            let series = load_series(source, param)?;
            let r = trend_report(&series).map_err(data_err)?;
            let _ = writeln!(
                out,
                "{:.9} {:.6} {} {}",
                r.slope, r.total_change, r.span_days, r.direction
            );
        }
        Command::Correlate {
            source,
            param_a,
            param_b,
        } => {
            let ds = load(source)?;
            let a = ds
                .series(&Parameter::new(param_a.as_str()))
                .map_err(data_err)?;
            let b = ds
                .series(&Parameter::new(param_b.as_str()))
                .map_err(data_err)?;
            let (r, n) = pearson_with_count(&a, &b).map_err(data_err)?;
            let _ = writeln!(out, "{r:.6} {n}");
        }
        Command::Harmonic {
            source,
            param,
            angular_coeff,
            exponent,
            resolution,
        } => {
            let series = load_series(source, param)?;
            let spec = HarmonicSpec::new(*angular_coeff, *exponent, 1.0, 0.0)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let model = fit_natural_spline(&series).map_err(data_err)?;
            let curve = dense_grid(&model, *resolution).map_err(data_err)?;
            let (lo, hi) = series.span();
            let map = IndexMap::reference(lo, hi).map_err(data_err)?;
            let fitted = fit_harmonic_scale(&curve, &spec, &map).map_err(data_err)?;
            let stats = compare_to_harmonic(&curve, &fitted, &map).map_err(data_err)?;
            let _ = writeln!(
                out,
                "{:.6} {:.6} {:.6}",
                stats.rmse, stats.max_abs_deviation, stats.argmax_t
            );
        }
        Command::Plot {
            source,
            param,
            fit,
            harmonic,
            width,
            height,
            out: path,
        } => {
            let series = load_series(source, param)?;
            let curve = curve_for(&series, fit)?;
            let mut layers = vec![Layer::curve(&curve, "blue", &curve.source().to_string())];
            if *harmonic {
                let (lo, hi) = series.span();
                let map = IndexMap::reference(lo, hi).map_err(data_err)?;
                let fitted = fit_harmonic_scale(&curve, &HarmonicSpec::reference(), &map)
                    .map_err(data_err)?;
                let reference = harmonic_curve(&curve.times(), &fitted, &map).map_err(data_err)?;
                layers.push(Layer::curve(&reference, "red", "harmonic"));
            }
            let knots = series.knots().iter().map(|k| (k.t, k.y)).collect();
            layers.push(Layer::markers(knots, "black", "data"));
            let spec = PlotSpec {
                width: *width,
                height: *height,
                title: format!("{} {}", series.station(), param),
                x_label: format!("days since {}", format_date(series.epoch())),
                y_label: format!("{param} ({})", series.parameter().unit()),
                layers,
            };
            let svg = render_svg(&spec).map_err(data_err)?;
            write_file(path, &svg)?;
            let _ = writeln!(out, "wrote {}", path.display());
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let mut out = String::new();
    match execute(&cli.command, &mut out) {
        Ok(()) => {
            let _ = stdout.write_all(out.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_DATA
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("wqa").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn trend_on_fixture() {
        let (code, out, _) = run_args(&["trend", "--fixture", "gropeni", "--param", "OD"]);
        assert_eq!(code, EXIT_OK);
        let fields: Vec<&str> = out.split_whitespace().collect();
        assert_eq!(fields.len(), 4);
        assert_eq!(fields[2], "308");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run_args(&["trend", "--param", "OD"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(
            run_args(&[
                "trend",
                "--fixture",
                "gropeni",
                "--param",
                "OD",
                "--epoch-format",
                "D.M.Y"
            ])
            .0,
            EXIT_USAGE
        );
        let (code, _, err) = run_args(&[
            "interp",
            "--fixture",
            "gropeni",
            "--param",
            "OD",
            "--method",
            "smooth",
            "--out",
            "/dev/null",
        ]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("--lambda"));
    }

    #[test]
    fn data_errors_exit_two() {
        assert_eq!(
            run_args(&["trend", "--fixture", "gropeni", "--param", "NO3-N"]).0,
            EXIT_DATA
        );
        assert_eq!(
            run_args(&["trend", "--input", "/nonexistent/file.csv", "--param", "OD"]).0,
            EXIT_DATA
        );
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("interp"));
    }
}
