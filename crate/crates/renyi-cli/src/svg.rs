//! SVG 1.1 rendering of the two-order information diagram: the closed
//! boundary region with the diagonal dashed and the uniform points
//! marked. Fixed viewBox scaled to [0, log n] per axis; everything is
//! plain string building with pinned float precision, so identical input
//! yields a byte-identical file.

use renyi::{DiagramCurve, LogBase};

use crate::formats::base_suffix;

const PLOT: f64 = 480.0;
const MARGIN: f64 = 60.0;

fn fmt_coord(x: f64) -> String {
    format!("{x:.4}")
}

/// Render the boundary curve as a standalone SVG document.
pub fn curve_svg(curve: &DiagramCurve, base: LogBase) -> String {
    let scale = (curve.n as f64).ln() / base.ln();
    let x_px = |h: f64| MARGIN + (h / base.ln()) / scale * PLOT;
    let y_px = |h: f64| MARGIN + PLOT - (h / base.ln()) / scale * PLOT;

    let size = PLOT + 2.0 * MARGIN;
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         viewBox=\"0 0 {size} {size}\" width=\"{size}\" height=\"{size}\">\n"
    ));
    s.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{size}\" height=\"{size}\" fill=\"white\"/>\n"
    ));

    // Axes.
    s.push_str(&format!(
        "  <rect x=\"{m}\" y=\"{m}\" width=\"{p}\" height=\"{p}\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n",
        m = fmt_coord(MARGIN),
        p = fmt_coord(PLOT)
    ));

    // Diagonal, dashed.
    s.push_str(&format!(
        "  <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>\n",
        fmt_coord(MARGIN),
        fmt_coord(MARGIN + PLOT),
        fmt_coord(MARGIN + PLOT),
        fmt_coord(MARGIN)
    ));

    // Closed boundary region.
    let mut path = String::new();
    let mut first = true;
    for v in curve.vertices() {
        let cmd = if first { 'M' } else { 'L' };
        first = false;
        path.push_str(&format!(
            "{cmd}{},{} ",
            fmt_coord(x_px(v[0])),
            fmt_coord(y_px(v[1]))
        ));
    }
    path.push('Z');
    s.push_str(&format!(
        "  <path d=\"{path}\" fill=\"#dce6f2\" stroke=\"#1f4e79\" stroke-width=\"1.5\" fill-rule=\"evenodd\"/>\n"
    ));

    // Uniform-distribution points on the diagonal.
    for k in 1..=curve.n {
        let d = (k as f64).ln();
        s.push_str(&format!(
            "  <circle cx=\"{}\" cy=\"{}\" r=\"3\" fill=\"#1f4e79\"/>\n",
            fmt_coord(x_px(d)),
            fmt_coord(y_px(d))
        ));
    }

    // Axis labels in the chosen base.
    let unit = base_suffix(base);
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\">H_{} ({unit})</text>\n",
        fmt_coord(MARGIN + PLOT / 2.0 - 40.0),
        fmt_coord(MARGIN + PLOT + 36.0),
        curve.alpha1
    ));
    s.push_str(&format!(
        "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"14\" transform=\"rotate(-90 {x} {y})\">H_{} ({unit})</text>\n",
        fmt_coord(MARGIN - 36.0),
        fmt_coord(MARGIN + PLOT / 2.0 + 40.0),
        curve.alpha2,
        x = fmt_coord(MARGIN - 36.0),
        y = fmt_coord(MARGIN + PLOT / 2.0 + 40.0)
    ));

    // Tick marks at the uniform points.
    for k in 1..=curve.n {
        let d = (k as f64).ln() / base.ln();
        s.push_str(&format!(
            "  <text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            fmt_coord(x_px((k as f64).ln())),
            fmt_coord(MARGIN + PLOT + 16.0),
            trim_tick(d)
        ));
    }

    s.push_str("</svg>\n");
    s
}

fn trim_tick(v: f64) -> String {
    let s = format!("{v:.3}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
