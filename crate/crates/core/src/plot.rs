//! Static SVG line charts of log-regret curves from a results CSV.

use std::fmt::Write as _;
use std::fs::File;
use std::path::Path;

use crate::benchmark::{read_results_csv, ResultsRow};
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 55.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"];
const TICKS: usize = 5;

struct Series<'a> {
    label: &'a str,
    points: Vec<(f64, f64)>,
}

/// Groups rows by strategy in order of first appearance.
fn series(rows: &[ResultsRow]) -> Vec<Series<'_>> {
    let mut out: Vec<Series> = Vec::new();
    for r in rows {
        let p = (r.iteration as f64, r.log10_regret);
        match out.iter_mut().find(|s| s.label == r.strategy) {
            Some(s) => s.points.push(p),
            None => out.push(Series {
                label: &r.strategy,
                points: vec![p],
            }),
        }
    }
    for s in &mut out {
        s.points.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    out
}

fn padded_range(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo < 1e-9 {
        (lo - 0.5, hi + 0.5)
    } else {
        let pad = 0.05 * (hi - lo);
        (lo - pad, hi + pad)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// One polyline per strategy, x = iteration, y = log10 regret.
pub fn render_svg(rows: &[ResultsRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::MalformedResults("no data rows".into()));
    }
    if let Some(r) = rows.iter().find(|r| !r.log10_regret.is_finite()) {
        return Err(Error::MalformedResults(format!(
            "non-finite log10_regret for {} at iteration {}",
            r.strategy, r.iteration
        )));
    }
    let all = series(rows);
    let xs = rows.iter().map(|r| r.iteration as f64);
    let ys = rows.iter().map(|r| r.log10_regret);
    let (x0, x1) = padded_range(xs.clone().fold(f64::INFINITY, f64::min), xs.fold(f64::NEG_INFINITY, f64::max));
    let (y0, y1) = padded_range(ys.clone().fold(f64::INFINITY, f64::min), ys.fold(f64::NEG_INFINITY, f64::max));
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * plot_h;

    let mut svg = String::new();
    let w = &mut svg;
    // writing into a String cannot fail
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let title = escape(&rows[0].task);
    let _ = writeln!(w, r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{title}</text>"#, MARGIN_LEFT + plot_w / 2.0);
    let _ = writeln!(
        w,
        r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none" stroke="black"/>"#
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let bottom = MARGIN_TOP + plot_h;
        let _ = writeln!(w, r##"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="#444"/>"##, bottom + 5.0);
        let _ = writeln!(w, r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.0}</text>"#, bottom + 19.0);
        let _ = writeln!(
            w,
            r##"<line x1="{:.2}" y1="{py:.2}" x2="{MARGIN_LEFT}" y2="{py:.2}" stroke="#444"/>"##,
            MARGIN_LEFT - 5.0
        );
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.2}</text>"#, MARGIN_LEFT - 8.0, py + 4.0);
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">iteration</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">log10 regret</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );
    for (k, s) in all.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let label = escape(s.label);
        let _ = writeln!(
            w,
            r#"<polyline data-series="{label}" fill="none" stroke="{color}" stroke-width="2" points="{}"/>"#,
            pts.join(" ")
        );
        let ly = MARGIN_TOP + 12.0 + 20.0 * k as f64;
        let lx = WIDTH - MARGIN_RIGHT + 15.0;
        let _ = writeln!(
            w,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{color}" stroke-width="2"/>"#,
            lx + 24.0
        );
        let _ = writeln!(w, r#"<text x="{:.2}" y="{:.2}">{label}</text>"#, lx + 30.0, ly + 4.0);
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Reads a results CSV and writes its chart. No file is created on error.
pub fn plot_results(input: &Path, output: &Path) -> Result<()> {
    let rows = read_results_csv(File::open(input)?)?;
    let svg = render_svg(&rows)?;
    std::fs::write(output, svg)?;
    Ok(())
}
