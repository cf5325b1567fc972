//! Minimal static SVG overlay of figure series.

use super::figure::{Figure, Style};
use std::fmt::Write;

const W: f64 = 720.0;
const H: f64 = 440.0;
const MARGIN: f64 = 50.0;

pub fn render(fig: &Figure) -> String {
    let pts = fig.series.iter().flat_map(|s| s.points.iter());
    let x_max = pts.clone().map(|p| p.0).fold(0.0, f64::max).max(1e-12);
    // the p3 singularity would flatten everything else
    let y_max = pts.map(|p| p.1).filter(|y| y.is_finite()).fold(0.0, f64::max).clamp(1e-12, 2.5);
    let sx = |x: f64| MARGIN + x / x_max * (W - 2.0 * MARGIN);
    let sy = |y: f64| H - MARGIN - y.clamp(0.0, y_max) / y_max * (H - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{MARGIN}" y="24" font-family="sans-serif" font-size="14">{}</text>"#, fig.title);
    let (x0, y0) = (sx(0.0), sy(0.0));
    let _ = writeln!(
        out,
        r#"<path d="M{x0:.1} {:.1} V{y0:.1} H{:.1}" stroke="black" fill="none"/>"#,
        sy(y_max),
        sx(x_max)
    );
    for i in 0..=(x_max.ceil() as usize) {
        let x = sx(i as f64);
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{i}</text>"#,
            y0 + 16.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="end">{y_max:.2}</text>"#,
        x0 - 4.0,
        sy(y_max) + 4.0
    );

    for s in &fig.series {
        match s.style {
            Style::Bars => {
                for &(c, d) in &s.points {
                    let (l, r) = (sx(c - s.width / 2.0), sx(c + s.width / 2.0));
                    let top = sy(d);
                    let _ = writeln!(
                        out,
                        r##"<rect x="{l:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="#6fa8dc" stroke="#3d85c6" stroke-width="0.5"/>"##,
                        r - l,
                        y0 - top
                    );
                }
            }
            style => {
                let (color, dash) = match style {
                    Style::Dashed => ("#38a169", r#" stroke-dasharray="6 4""#),
                    Style::Dotted => ("#1c4587", r#" stroke-dasharray="2 3""#),
                    _ => ("#cc0000", ""),
                };
                let path: Vec<String> = s
                    .points
                    .iter()
                    .filter(|p| p.1.is_finite())
                    .map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y)))
                    .collect();
                let _ = writeln!(
                    out,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.6"{dash}/>"#,
                    path.join(" ")
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
