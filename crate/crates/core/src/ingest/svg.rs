use std::fmt::Write as _;

use thiserror::Error;

use crate::spline::CurveSamples;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SvgError {
    #[error("plot has no layers or a layer has no points")]
    EmptyPlot,
    #[error("plot size must be positive, got {0}x{1}")]
    InvalidSize(u32, u32),
    #[error("layer {0} contains non-finite coordinates")]
    NonFinite(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum LayerKind {
    /// Drawn as one polyline.
    Curve(Vec<(f64, f64)>),
    /// Drawn as one circle per point.
    Markers(Vec<(f64, f64)>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub kind: LayerKind,
    pub color: String,
    pub label: String,
}

impl Layer {
    pub fn curve(samples: &CurveSamples, color: &str, label: &str) -> Self {
        Layer {
            kind: LayerKind::Curve(samples.points().to_vec()),
            color: color.to_string(),
            label: label.to_string(),
        }
    }

    pub fn markers(points: Vec<(f64, f64)>, color: &str, label: &str) -> Self {
        Layer {
            kind: LayerKind::Markers(points),
            color: color.to_string(),
            label: label.to_string(),
        }
    }

    fn points(&self) -> &[(f64, f64)] {
        match &self.kind {
            LayerKind::Curve(p) | LayerKind::Markers(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub layers: Vec<Layer>,
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Data range padded by 5% on each side; a zero-width range is widened to ±0.5.
fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let range = hi - lo;
    if range > 0.0 {
        (lo - 0.05 * range, hi + 0.05 * range)
    } else {
        (lo - 0.5, hi + 0.5)
    }
}

/// Renders the plot as standalone SVG 1.1. Output depends only on `spec`.
pub fn render_svg(spec: &PlotSpec) -> Result<String, SvgError> {
    if spec.width == 0 || spec.height == 0 {
        return Err(SvgError::InvalidSize(spec.width, spec.height));
    }
    if spec.layers.is_empty() || spec.layers.iter().any(|l| l.points().is_empty()) {
        return Err(SvgError::EmptyPlot);
    }
    if let Some(bad) = spec.layers.iter().find(|l| {
        l.points()
            .iter()
            .any(|(x, y)| !x.is_finite() || !y.is_finite())
    }) {
        return Err(SvgError::NonFinite(bad.label.clone()));
    }

    let all = spec.layers.iter().flat_map(|l| l.points());
    let (mut x_lo, mut x_hi, mut y_lo, mut y_hi) = (
        f64::INFINITY,
        f64::NEG_INFINITY,
        f64::INFINITY,
        f64::NEG_INFINITY,
    );
    for &(x, y) in all {
        x_lo = x_lo.min(x);
        x_hi = x_hi.max(x);
        y_lo = y_lo.min(y);
        y_hi = y_hi.max(y);
    }
    let (x_lo, x_hi) = padded(x_lo, x_hi);
    let (y_lo, y_hi) = padded(y_lo, y_hi);

    let (w, h) = (f64::from(spec.width), f64::from(spec.height));
    let (left, right, top, bottom) = (0.12 * w, 0.96 * w, 0.10 * h, 0.88 * h);
    let px = |x: f64| left + (x - x_lo) / (x_hi - x_lo) * (right - left);
    let py = |y: f64| bottom - (y - y_lo) / (y_hi - y_lo) * (bottom - top);

    let mut svg = String::new();
    // writes to a String cannot fail
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="white"/>"#,
        spec.width, spec.height
    );
    let _ = writeln!(
        svg,
        r#"<rect x="{left:.4}" y="{top:.4}" width="{:.4}" height="{:.4}" fill="none" stroke="black" stroke-width="1"/>"#,
        right - left,
        bottom - top
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.4}" y="{:.4}" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        0.5 * (left + right),
        0.6 * top,
        escape(&spec.title)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.4}" y="{:.4}" text-anchor="middle" font-family="sans-serif" font-size="11">{}</text>"#,
        0.5 * (left + right),
        h - 0.02 * h,
        escape(&spec.x_label)
    );
    let _ = writeln!(
        svg,
        r#"<text x="{:.4}" y="{:.4}" text-anchor="middle" font-family="sans-serif" font-size="11" transform="rotate(-90 {:.4} {:.4})">{}</text>"#,
        0.03 * w,
        0.5 * (top + bottom),
        0.03 * w,
        0.5 * (top + bottom),
        escape(&spec.y_label)
    );
    for (value, x, y, anchor) in [
        (x_lo, left, bottom + 0.05 * h, "start"),
        (x_hi, right, bottom + 0.05 * h, "end"),
    ] {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.4}" y="{y:.4}" text-anchor="{anchor}" font-family="sans-serif" font-size="10">{value:.4}</text>"#
        );
    }
    for (value, y) in [(y_lo, bottom), (y_hi, top)] {
        let _ = writeln!(
            svg,
            r#"<text x="{:.4}" y="{y:.4}" text-anchor="end" font-family="sans-serif" font-size="10">{value:.4}</text>"#,
            left - 0.01 * w
        );
    }

    for layer in &spec.layers {
        let color = escape(&layer.color);
        match &layer.kind {
            LayerKind::Curve(points) => {
                let coords: Vec<String> = points
                    .iter()
                    .map(|&(x, y)| format!("{:.4},{:.4}", px(x), py(y)))
                    .collect();
                let _ = writeln!(
                    svg,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    coords.join(" ")
                );
            }
            LayerKind::Markers(points) => {
                for &(x, y) in points {
                    let _ = writeln!(
                        svg,
                        r#"<circle cx="{:.4}" cy="{:.4}" r="3" fill="{color}"/>"#,
                        px(x),
                        py(y)
                    );
                }
            }
        }
    }

    for (i, layer) in spec.layers.iter().enumerate() {
        let y = top + 0.05 * h * (i as f64 + 1.0);
        let _ = writeln!(
            svg,
            r#"<text x="{:.4}" y="{y:.4}" text-anchor="end" font-family="sans-serif" font-size="11" fill="{}">{}</text>"#,
            right - 0.01 * w,
            escape(&layer.color),
            escape(&layer.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
