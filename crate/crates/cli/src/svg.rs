//! Standalone SVG line plots of `E` along a sweep.

use gravent::experiments::SweepRow;
use gravent::Error;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 52.0;

pub struct Axes {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Text embedded verbatim in the document's `<metadata>` element.
    pub metadata: String,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".into() } else { s.into() }
}

/// Maximal runs of consecutive valid rows. Flagged gaps split the curve.
pub fn segments(rows: &[SweepRow]) -> Vec<&[SweepRow]> {
    rows.split(|r| !r.is_valid()).filter(|s| !s.is_empty()).collect()
}

pub fn emit_svg(rows: &[SweepRow], axes: &Axes) -> Result<String, Error> {
    if rows.len() < 2 {
        return Err(Error::EmptyData(rows.len()));
    }
    let x_min = rows.iter().map(|r| r.x).fold(f64::INFINITY, f64::min);
    let x_max = rows.iter().map(|r| r.x).fold(f64::NEG_INFINITY, f64::max);
    let span = if x_max > x_min { x_max - x_min } else { 1.0 };
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / span * plot_w;
    let py = |y: f64| TOP + (1.0 - y.clamp(0.0, 1.0)) * plot_h;

    let mut svg = String::new();
    svg.push_str(&format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str(&format!("<metadata>{}</metadata>\n", escape(&axes.metadata)));
    svg.push_str(&format!("<title>{}</title>\n", escape(&axes.title)));
    svg.push_str(&format!("<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"));
    svg.push_str(&format!(
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{plot_w}\" height=\"{plot_h}\" fill=\"none\" stroke=\"#444\"/>\n"
    ));
    svg.push_str("<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#222\">\n");
    for i in 0..=4 {
        let y = i as f64 / 4.0;
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" stroke=\"#ddd\"/>\n<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>\n",
            LEFT,
            py(y),
            LEFT + plot_w,
            py(y),
            LEFT - 6.0,
            py(y) + 4.0,
            tick_label(y)
        ));
        let x = x_min + span * i as f64 / 4.0;
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>\n",
            px(x),
            TOP + plot_h + 16.0,
            tick_label(x)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(&axes.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"16\" y=\"{:.2}\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 {:.2})\">{}</text>\n",
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(&axes.y_label)
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
        WIDTH / 2.0,
        escape(&axes.title)
    ));
    svg.push_str("</g>\n");
    for seg in segments(rows) {
        let points: Vec<String> = seg.iter().map(|r| format!("{:.2},{:.2}", px(r.x), py(r.e))).collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            points.join(" ")
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
