//! Minimal line plots of CSV columns as standalone SVG.
//!
//! Output depends only on the input data, so it can be compared byte for
//! byte.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 160.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PlotOptions {
    pub log_y: bool,
    pub title: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

/// Reads columns `x` and `ys` from a CSV file with a header row.
pub fn read_columns(csv_path: &Path, x: &str, ys: &[String]) -> Result<Vec<Series>> {
    let mut reader = csv::Reader::from_path(csv_path)?;
    let header = reader.headers()?.clone();
    let column = |name: &str| {
        header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    };
    let xi = column(x)?;
    let yi: Vec<usize> = ys.iter().map(|y| column(y)).collect::<Result<_>>()?;

    let mut series: Vec<Series> = ys
        .iter()
        .map(|y| Series {
            name: y.clone(),
            points: Vec::new(),
        })
        .collect();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let value = |i: usize| -> Result<f64> {
            let raw = record.get(i).unwrap_or("");
            raw.trim().parse::<f64>().map_err(|_| {
                Error::Structural(format!("{}: row {} has non-numeric `{raw}`", csv_path.display(), row + 1))
            })
        };
        let xv = value(xi)?;
        for (s, &i) in series.iter_mut().zip(&yi) {
            s.points.push((xv, value(i)?));
        }
    }
    if series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::EmptyData(csv_path.to_path_buf()));
    }
    Ok(series)
}

/// Plots columns of `csv_path` into `out`. Nothing is written on error.
pub fn plot_csv(csv_path: &Path, x: &str, ys: &[String], out: &Path, opts: &PlotOptions) -> Result<()> {
    if ys.is_empty() {
        return Err(Error::config("plot.y", "no columns to plot"));
    }
    let series = read_columns(csv_path, x, ys)?;
    let svg = render_svg(x, &series, opts).map_err(|e| match e {
        Error::EmptyData(_) => Error::EmptyData(csv_path.to_path_buf()),
        other => other,
    })?;
    std::fs::write(out, svg)?;
    Ok(())
}

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn fit(values: impl Iterator<Item = f64>, log: bool) -> Option<Self> {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for v in values {
            let v = if log { v.log10() } else { v };
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        if log {
            lo = lo.floor();
            hi = hi.ceil();
        }
        if hi - lo <= 0.0 {
            let pad = if lo == 0.0 { 1.0 } else { 0.5 * lo.abs() };
            lo -= pad;
            hi += pad;
        }
        Some(Self { lo, hi, log })
    }

    /// Position in `[0, 1]`.
    fn frac(&self, v: f64) -> f64 {
        let v = if self.log { v.log10() } else { v };
        (v - self.lo) / (self.hi - self.lo)
    }

    fn ticks(&self) -> Vec<(f64, String)> {
        if self.log {
            let decades = (self.hi - self.lo).round() as i64;
            let stride = (decades as usize).div_ceil(8).max(1) as i64;
            (0..=decades)
                .step_by(stride as usize)
                .map(|k| {
                    let e = self.lo as i64 + k;
                    ((e as f64 - self.lo) / (self.hi - self.lo), format!("1e{e}"))
                })
                .collect()
        } else {
            (0..TICKS)
                .map(|k| {
                    let f = k as f64 / (TICKS - 1) as f64;
                    (f, label(self.lo + f * (self.hi - self.lo)))
                })
                .collect()
        }
    }
}

fn label(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if (1e-2..1e4).contains(&v.abs()) {
        format!("{v:.3}")
    } else {
        format!("{v:.2e}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Renders `series` as SVG. With `log_y`, points with `y <= 0` are dropped.
pub fn render_svg(x_label: &str, series: &[Series], opts: &PlotOptions) -> Result<String> {
    let keep = |&(x, y): &(f64, f64)| x.is_finite() && y.is_finite() && (!opts.log_y || y > 0.0);
    let series: Vec<Series> = series
        .iter()
        .map(|s| Series {
            name: s.name.clone(),
            points: s.points.iter().copied().filter(keep).collect(),
        })
        .collect();
    let all = || series.iter().flat_map(|s| s.points.iter());
    let (Some(xa), Some(ya)) = (
        Axis::fit(all().map(|p| p.0), false),
        Axis::fit(all().map(|p| p.1), opts.log_y),
    ) else {
        return Err(Error::EmptyData("<series>".into()));
    };

    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + xa.frac(x) * pw;
    let py = |y: f64| TOP + (1.0 - ya.frac(y)) * ph;

    let mut s = String::new();
    // writing to a String cannot fail
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    if !opts.title.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + pw / 2.0,
            escape(&opts.title)
        );
    }
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for (f, text) in xa.ticks() {
        let x = LEFT + f * pw;
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#dddddd"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + ph,
            TOP + ph + 18.0,
            escape(&text)
        );
    }
    for (f, text) in ya.ticks() {
        let y = TOP + (1.0 - f) * ph;
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT + pw,
            LEFT - 6.0,
            y + 4.0,
            escape(&text)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 16.0,
        escape(x_label)
    );

    let y_label = series.iter().map(|s| s.name.as_str()).collect::<Vec<_>>().join(", ");
    let _ = writeln!(
        s,
        r#"<text x="20" y="{:.2}" text-anchor="middle" transform="rotate(-90 20 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape(&y_label)
    );

    for (k, ser) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let points: Vec<String> = ser.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        if !points.is_empty() {
            let _ = writeln!(
                s,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                points.join(" ")
            );
        }
        let ly = TOP + 16.0 + 18.0 * k as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(&ser.name)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series() -> Vec<Series> {
        vec![Series {
            name: "I".into(),
            points: vec![(0.0, 1e-6), (0.5, 1e-4), (1.0, 0.0)],
        }]
    }

    #[test]
    fn render_is_deterministic() {
        let opts = PlotOptions {
            log_y: true,
            title: "a < b".into(),
        };
        let a = render_svg("t", &series(), &opts).unwrap();
        assert_eq!(a, render_svg("t", &series(), &opts).unwrap());
        assert!(a.contains("a &lt; b"));
        assert!(a.contains("1e-6"));
        // the zero is dropped on the log axis
        assert_eq!(a.matches("polyline").count(), 1);
    }

    #[test]
    fn empty_input_errors() {
        let s = vec![Series {
            name: "y".into(),
            points: vec![(0.0, -1.0)],
        }];
        let opts = PlotOptions {
            log_y: true,
            ..Default::default()
        };
        assert!(matches!(render_svg("t", &s, &opts), Err(Error::EmptyData(_))));
    }
}
