//! Static SVG: xy, xz and yz orthographic projections side by side.

use std::fmt::Write;

const PANEL: f64 = 300.0;
const MARGIN: f64 = 20.0;

type Projection = (&'static str, fn(&[f64; 3]) -> (f64, f64));

const PROJECTIONS: [Projection; 3] =
    [("xy", |p| (p[0], p[1])), ("xz", |p| (p[0], p[2])), ("yz", |p| (p[1], p[2]))];

fn bounds(pts: &[(f64, f64)]) -> (f64, f64, f64) {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in pts.iter().filter(|p| p.0.is_finite() && p.1.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return (0.0, 0.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    ((x0 + x1) / 2.0, (y0 + y1) / 2.0, span)
}

fn polyline(out: &mut String, pts: &[(f64, f64)], map: impl Fn(f64, f64) -> (f64, f64), style: &str) {
    // Non-finite samples break the line.
    for run in pts.split(|p| !(p.0.is_finite() && p.1.is_finite())).filter(|r| r.len() > 1) {
        out.push_str("  <polyline fill=\"none\" ");
        out.push_str(style);
        out.push_str(" points=\"");
        for (i, &(x, y)) in run.iter().enumerate() {
            let (u, v) = map(x, y);
            if i > 0 {
                out.push(' ');
            }
            write!(out, "{u:.3},{v:.3}").unwrap();
        }
        out.push_str("\"/>\n");
    }
}

/// Three-panel SVG of `curve`, with `partner` overlaid in a second colour.
pub fn render(curve: &[[f64; 3]], partner: Option<&[[f64; 3]]>) -> String {
    let width = 3.0 * PANEL;
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{PANEL}\" viewBox=\"0 0 {width} {PANEL}\">"
    )
    .unwrap();
    for (k, (name, proj)) in PROJECTIONS.iter().enumerate() {
        let a: Vec<(f64, f64)> = curve.iter().map(proj).collect();
        let b: Vec<(f64, f64)> = partner.unwrap_or(&[]).iter().map(proj).collect();
        let all: Vec<(f64, f64)> = a.iter().chain(&b).copied().collect();
        let (cx, cy, span) = bounds(&all);
        let ox = k as f64 * PANEL;
        let scale = (PANEL - 2.0 * MARGIN) / span;
        let map = |x: f64, y: f64| (ox + PANEL / 2.0 + (x - cx) * scale, PANEL / 2.0 - (y - cy) * scale);
        writeln!(
            out,
            "  <rect x=\"{ox}\" y=\"0\" width=\"{PANEL}\" height=\"{PANEL}\" fill=\"white\" stroke=\"#999\"/>"
        )
        .unwrap();
        writeln!(out, "  <text x=\"{}\" y=\"14\" font-family=\"monospace\" font-size=\"12\">{name}</text>", ox + 6.0)
            .unwrap();
        polyline(&mut out, &a, map, "stroke=\"#1f4e9c\" stroke-width=\"1.2\"");
        polyline(&mut out, &b, map, "stroke=\"#c2410c\" stroke-width=\"1.2\" stroke-dasharray=\"4 2\"");
    }
    out.push_str("</svg>\n");
    out
}
