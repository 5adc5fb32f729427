//! Deterministic SVG rendering: measured samples as a scatter over
//! log-distance, one straight fit line per model per frequency.
//!
//! All four models are linear in log₁₀(distance) at a fixed frequency, so a
//! fit "curve" is exactly two endpoints. Lines span only the distance window
//! the data covers; the 1 m anchor is a model property, not a plotted one.
//! Every coordinate is formatted to fixed precision and every collection is
//! iterated in a fixed order, so identical inputs give identical bytes.

use std::fmt::Write as _;

use plm_core::{Dataset, DistanceM, FitResult, FrequencyGhz, ModelParams};
use thiserror::Error;

use crate::fmt::sig6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    #[error("cannot plot an empty dataset")]
    EmptyDataset,
    #[error("plot area {width}x{height} is too small to draw into")]
    DegenerateArea { width: u32, height: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotStyle {
    pub width: u32,
    pub height: u32,
    pub title: String,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            width: 720,
            height: 480,
            title: String::from("path loss vs distance"),
        }
    }
}

/// Fraction of the data span added on each side of both axes.
const PAD: f64 = 0.05;

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 18.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 50.0;

/// One color per frequency (cycled), one dash pattern per model.
const PALETTE: [&str; 6] = [
    "#1f6fb4", "#d94f35", "#3d9970", "#8e5bb0", "#c2882f", "#4ab0c8",
];

fn dash_for(params: &ModelParams) -> &'static str {
    match params {
        ModelParams::Fi(_) => "6 3",
        ModelParams::Ci(_) => "", // solid
        ModelParams::Abg(_) => "2 2",
        ModelParams::Cif(_) => "8 3 2 3",
    }
}

fn legend_label(fit: &FitResult) -> String {
    let name = fit.model.name();
    let sigma = fit.sigma_db;
    match &fit.params {
        ModelParams::Fi(p) => format!(
            "{name}: α={:.2} β={:.1} σ={sigma:.2} dB",
            p.alpha, p.beta_db
        ),
        ModelParams::Ci(p) => format!("{name}: n={:.2} σ={sigma:.2} dB", p.n),
        ModelParams::Abg(p) => format!(
            "{name}: α={:.2} β={:.1} γ={:.2} σ={sigma:.2} dB",
            p.alpha, p.beta_db, p.gamma
        ),
        ModelParams::Cif(p) => format!(
            "{name}: n={:.2} b={:.2} f0={} σ={sigma:.2} dB",
            p.n,
            p.b,
            sig6(p.f0.ghz())
        ),
    }
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
    inner_w: f64,
    inner_h: f64,
}

impl Frame {
    fn px(&self, log_d: f64) -> f64 {
        MARGIN_LEFT + (log_d - self.x_min) / (self.x_max - self.x_min) * self.inner_w
    }

    fn py(&self, pl: f64) -> f64 {
        // higher loss plots higher on the page, so invert the SVG axis
        MARGIN_TOP + (self.y_max - pl) / (self.y_max - self.y_min) * self.inner_h
    }
}

fn padded(min: f64, max: f64, fallback_pad: f64) -> (f64, f64) {
    let span = max - min;
    let pad = if span > 0.0 { span * PAD } else { fallback_pad };
    (min - pad, max + pad)
}

pub fn emit_plot(ds: &Dataset, fits: &[FitResult], style: &PlotStyle) -> Result<String, PlotError> {
    if ds.is_empty() {
        return Err(PlotError::EmptyDataset);
    }
    let inner_w = style.width as f64 - MARGIN_LEFT - MARGIN_RIGHT;
    let inner_h = style.height as f64 - MARGIN_TOP - MARGIN_BOTTOM;
    if inner_w < 50.0 || inner_h < 50.0 {
        return Err(PlotError::DegenerateArea {
            width: style.width,
            height: style.height,
        });
    }

    let (d_lo, d_hi) = ds.distance_range_m().expect("nonempty dataset");
    let (pl_lo, pl_hi) = ds
        .samples
        .iter()
        .map(|s| s.path_loss_db)
        .fold((f64::MAX, f64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)));

    let (x_min, x_max) = padded(d_lo.log10(), d_hi.log10(), 0.15);
    let (y_min, y_max) = padded(pl_lo, pl_hi, 1.0);
    let frame = Frame {
        x_min,
        x_max,
        y_min,
        y_max,
        inner_w,
        inner_h,
    };

    let freqs = ds.unique_frequencies();
    let color_of = |f: FrequencyGhz| -> &'static str {
        let idx = freqs.iter().position(|&x| x == f).unwrap_or(0);
        PALETTE[idx % PALETTE.len()]
    };

    let mut svg = String::with_capacity(4096);
    let _ = writeln!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif">"##,
        w = style.width,
        h = style.height
    );
    let _ = writeln!(
        svg,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        style.width, style.height
    );
    let _ = writeln!(
        svg,
        r##"<text x="{:.2}" y="24" font-size="15" fill="#222">{}</text>"##,
        MARGIN_LEFT,
        xml_escape(&style.title)
    );

    draw_axes(&mut svg, &frame, style);

    // scatter, in sample order
    for s in &ds.samples {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="{}" fill-opacity="0.65"/>"##,
            frame.px(s.dist.meters().log10()),
            frame.py(s.path_loss_db),
            color_of(s.freq)
        );
    }

    // fit lines: given fit order, frequencies ascending; endpoints carry the
    // exact model values so consumers can read them back without unscaling
    for fit in fits {
        for &f in &freqs {
            let pl_at = |d: f64| {
                let d = DistanceM::new(d).expect("endpoints come from valid samples");
                fit.params.path_loss_db(f, d)
            };
            let dash = dash_for(&fit.params);
            let dash_attr = if dash.is_empty() {
                String::new()
            } else {
                format!(r##" stroke-dasharray="{dash}""##)
            };
            let _ = writeln!(
                svg,
                r##"<line class="fit" data-model="{}" data-freq-ghz="{}" data-pl-min="{}" data-pl-max="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.8"{}/>"##,
                fit.model.token(),
                sig6(f.ghz()),
                sig6(pl_at(d_lo)),
                sig6(pl_at(d_hi)),
                frame.px(d_lo.log10()),
                frame.py(pl_at(d_lo)),
                frame.px(d_hi.log10()),
                frame.py(pl_at(d_hi)),
                color_of(f),
                dash_attr
            );
        }
    }

    draw_legend(&mut svg, &freqs, fits, &color_of);

    svg.push_str("</svg>\n");
    Ok(svg)
}

fn draw_axes(svg: &mut String, frame: &Frame, style: &PlotStyle) {
    let x0 = MARGIN_LEFT;
    let x1 = style.width as f64 - MARGIN_RIGHT;
    let y0 = MARGIN_TOP;
    let y1 = style.height as f64 - MARGIN_BOTTOM;
    let _ = writeln!(
        svg,
        r##"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444" stroke-width="1"/>"##,
        x1 - x0,
        y1 - y0
    );

    // x ticks at powers of ten inside the window; if the window is narrower
    // than a decade, fall back to its endpoints
    let mut xticks: Vec<f64> = (frame.x_min.ceil() as i64..=frame.x_max.floor() as i64)
        .map(|k| k as f64)
        .collect();
    if xticks.is_empty() {
        xticks = vec![frame.x_min, frame.x_max];
    }
    for &t in &xticks {
        let x = frame.px(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{x:.2}" y1="{y1:.2}" x2="{x:.2}" y2="{:.2}" stroke="#444" stroke-width="1"/>"##,
            y1 + 5.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{x:.2}" y="{:.2}" font-size="11" fill="#333" text-anchor="middle">{}</text>"##,
            y1 + 18.0,
            sig6(10f64.powf(t))
        );
    }

    // y ticks on a 5/10/20 dB lattice, whichever yields a handful of lines
    let span = frame.y_max - frame.y_min;
    let step = [5.0, 10.0, 20.0, 50.0]
        .into_iter()
        .find(|s| span / s <= 8.0)
        .unwrap_or(100.0);
    let mut t = (frame.y_min / step).ceil() * step;
    let mut yticks = Vec::new();
    while t <= frame.y_max {
        yticks.push(t);
        t += step;
    }
    if yticks.is_empty() {
        yticks = vec![frame.y_min, frame.y_max];
    }
    for &t in &yticks {
        let y = frame.py(t);
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{y:.2}" x2="{x0:.2}" y2="{y:.2}" stroke="#444" stroke-width="1"/>"##,
            x0 - 5.0
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.2}" y="{:.2}" font-size="11" fill="#333" text-anchor="end">{}</text>"##,
            x0 - 8.0,
            y + 3.5,
            sig6(t)
        );
    }

    let _ = writeln!(
        svg,
        r##"<text x="{:.2}" y="{:.2}" font-size="12" fill="#222" text-anchor="middle">distance (m), log scale</text>"##,
        (x0 + x1) / 2.0,
        style.height as f64 - 12.0
    );
    let _ = writeln!(
        svg,
        r##"<text x="16" y="{:.2}" font-size="12" fill="#222" text-anchor="middle" transform="rotate(-90 16 {:.2})">path loss (dB)</text>"##,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );
}

fn draw_legend(
    svg: &mut String,
    freqs: &[FrequencyGhz],
    fits: &[FitResult],
    color_of: &dyn Fn(FrequencyGhz) -> &'static str,
) {
    let x = MARGIN_LEFT + 10.0;
    let mut y = MARGIN_TOP + 16.0;
    for &f in freqs {
        let _ = writeln!(
            svg,
            r##"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"##,
            x,
            y - 3.5,
            color_of(f)
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.2}" y="{y:.2}" font-size="11" fill="#222">{} GHz</text>"##,
            x + 8.0,
            sig6(f.ghz())
        );
        y += 15.0;
    }
    for fit in fits {
        let dash = dash_for(&fit.params);
        let dash_attr = if dash.is_empty() {
            String::new()
        } else {
            format!(r##" stroke-dasharray="{dash}""##)
        };
        let _ = writeln!(
            svg,
            r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#555" stroke-width="1.8"{}/>"##,
            x - 4.0,
            y - 3.5,
            x + 16.0,
            y - 3.5,
            dash_attr
        );
        let _ = writeln!(
            svg,
            r##"<text x="{:.2}" y="{y:.2}" font-size="11" fill="#222">{}</text>"##,
            x + 22.0,
            xml_escape(&legend_label(fit))
        );
        y += 15.0;
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
