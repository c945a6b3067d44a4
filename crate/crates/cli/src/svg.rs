//! SVG plots of nodal sets and eigencurves.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write;

use robin_core::nodal::Polyline;

const CURVE_COLOURS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn points_attr(points: impl Iterator<Item = (f64, f64)>) -> String {
    let mut s = String::new();
    for (x, y) in points {
        if !s.is_empty() {
            s.push(' ');
        }
        let _ = write!(s, "{x:.6},{y:.6}");
    }
    s
}

/// The square in its own coordinates with y pointing up, the zero level set
/// as polylines and the critical zeros as small circles.
pub fn nodal_svg(title: &str, lines: &[Polyline], critical: &[(f64, f64)]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="600" height="600">"#,
        -FRAC_PI_2, -FRAC_PI_2, PI, PI
    );
    let _ = writeln!(s, "<title>{}</title>", escape(title));
    let _ = writeln!(s, r#"<g transform="scale(1,-1)">"#);
    let _ = writeln!(
        s,
        r#"<rect x="{:.6}" y="{:.6}" width="{:.6}" height="{:.6}" fill="white" stroke="black" stroke-width="0.01"/>"#,
        -FRAC_PI_2, -FRAC_PI_2, PI, PI
    );
    for line in lines {
        let tag = if line.closed { "polygon" } else { "polyline" };
        let _ = writeln!(
            s,
            r#"<{tag} points="{}" fill="none" stroke="black" stroke-width="0.008"/>"#,
            points_attr(line.points.iter().copied())
        );
    }
    for &(x, y) in critical {
        let _ = writeln!(s, r#"<circle cx="{x:.6}" cy="{y:.6}" r="0.01" fill="red"/>"#);
    }
    s.push_str("</g>\n</svg>\n");
    s
}

/// One curve per labelled series of (h, λ) points, with crossings marked.
pub fn eigencurve_svg(curves: &[(String, Vec<(f64, f64)>)], crossings: &[(f64, f64)]) -> String {
    let all = curves.iter().flat_map(|c| c.1.iter()).chain(crossings.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all.filter(|p| p.0.is_finite() && p.1.is_finite()) {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if x1 <= x0 {
        x1 = x0 + 1.0;
    }
    if y1 <= y0 {
        y1 = y0 + 1.0;
    }
    let (w, h, pad) = (800.0, 600.0, 50.0);
    let px = |x: f64| pad + (x - x0) / (x1 - x0) * (w - 2.0 * pad);
    let py = |y: f64| h - pad - (y - y0) / (y1 - y0) * (h - 2.0 * pad);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w} {h}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="white" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    let _ = writeln!(
        s,
        r#"<text x="{pad}" y="{}" font-size="12">h = {x0:.4}</text>"#,
        h - pad / 3.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="12" text-anchor="end">h = {x1:.4}</text>"#,
        w - pad,
        h - pad / 3.0
    );
    let _ = writeln!(s, r#"<text x="5" y="{}" font-size="12">{y0:.3}</text>"#, h - pad);
    let _ = writeln!(s, r#"<text x="5" y="{}" font-size="12">{y1:.3}</text>"#, pad);
    for (i, (name, pts)) in curves.iter().enumerate() {
        let colour = CURVE_COLOURS[i % CURVE_COLOURS.len()];
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="1.5"/>"#,
            points_attr(pts.iter().map(|&(x, y)| (px(x), py(y))))
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="12" fill="{colour}">{}</text>"#,
            w - pad + 4.0,
            pad + 14.0 * (i as f64 + 1.0),
            escape(name)
        );
    }
    for &(x, y) in crossings {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.3}" cy="{:.3}" r="4" fill="none" stroke="black"/>"#,
            px(x),
            py(y)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodal_plot_has_square_lines_and_markers() {
        let line = Polyline {
            points: vec![(-1.0, 0.0), (1.0, 0.0)],
            closed: false,
        };
        let s = nodal_svg("(1,1)", &[line], &[(0.0, 0.0)]);
        assert!(s.contains(r#"viewBox="-1.570796 -1.570796 3.141593 3.141593""#));
        assert!(s.contains("<polyline points=\"-1.000000,0.000000 1.000000,0.000000\""));
        assert!(s.contains(r#"r="0.01""#));
        assert!(s.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn eigencurve_plot_maps_extremes_to_the_frame() {
        let curves = vec![("(0,2)".to_string(), vec![(-2.0, -1.0), (-1.0, 3.0)])];
        let s = eigencurve_svg(&curves, &[(-1.5, 1.0)]);
        assert!(s.contains("50.000000,550.000000 750.000000,50.000000"));
        assert!(s.contains("<circle"));
    }
}
