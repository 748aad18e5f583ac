//! Standalone SVG output for planar curves.
//!
//! Geometry is written in its own y-up coordinates inside a group whose
//! transform flips y, so the numbers in the file match the curve document.

use std::fmt::Write;

pub type Xy = [f64; 2];

#[derive(Debug, Clone, Default)]
pub struct Plot {
    pub curve: Vec<Xy>,
    pub polygon: Option<Vec<Xy>>,
    /// Corner-cutting levels, control points first.
    pub triangle: Option<(f64, Vec<Vec<Xy>>)>,
}

/// `[x0, y0, width, height]` of everything drawn, padded 5% per side.
pub fn view_box(plot: &Plot) -> [f64; 4] {
    let all = plot
        .curve
        .iter()
        .chain(plot.polygon.iter().flatten())
        .chain(plot.triangle.iter().flat_map(|(_, lv)| lv.iter().flatten()));
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for [x, y] in all {
        x0 = x0.min(*x);
        x1 = x1.max(*x);
        y0 = y0.min(*y);
        y1 = y1.max(*y);
    }
    if !x0.is_finite() {
        return [0.0, 0.0, 1.0, 1.0];
    }
    // a flat extent borrows the other one so the box never collapses
    let (w, h) = (x1 - x0, y1 - y0);
    let fallback = w.max(h).max(1e-9);
    let (w, h) = (if w > 0.0 { w } else { fallback }, if h > 0.0 { h } else { fallback });
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let (w, h) = (w * 1.1, h * 1.1);
    [cx - w / 2.0, cy - h / 2.0, w, h]
}

fn points(pts: &[Xy]) -> String {
    pts.iter().map(|[x, y]| format!("{x},{y}")).collect::<Vec<_>>().join(" ")
}

pub fn render(plot: &Plot) -> String {
    let [x0, y0, w, h] = view_box(plot);
    let width = 800.0;
    let height = (width * h / w).clamp(100.0, 2400.0);
    let radius = 0.006 * w.max(h);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {y0} {w} {h}" width="{width}" height="{height:.0}">"#
    );
    let _ = writeln!(
        s,
        r#"  <g transform="matrix(1 0 0 -1 0 {})" fill="none" stroke-linejoin="round" stroke-linecap="round">"#,
        2.0 * y0 + h
    );
    if let Some(poly) = &plot.polygon {
        let _ = writeln!(
            s,
            r##"    <polyline class="polygon" points="{}" stroke="#7a7a7a" stroke-width="1" stroke-dasharray="6 4" vector-effect="non-scaling-stroke"/>"##,
            points(poly)
        );
        for [x, y] in poly {
            let _ = writeln!(s, r##"    <circle class="control" cx="{x}" cy="{y}" r="{radius}" fill="#7a7a7a"/>"##);
        }
    }
    let _ = writeln!(
        s,
        r##"    <polyline class="curve" points="{}" stroke="#1f5fbf" stroke-width="2" vector-effect="non-scaling-stroke"/>"##,
        points(&plot.curve)
    );
    if let Some((t, levels)) = &plot.triangle {
        let _ = writeln!(s, r#"    <g class="triangle" data-t="{t}">"#);
        for (k, level) in levels.iter().enumerate().skip(1) {
            let _ = writeln!(
                s,
                r##"      <polyline class="level" data-level="{k}" points="{}" stroke="#c0392b" stroke-width="1" vector-effect="non-scaling-stroke"/>"##,
                points(level)
            );
            for [x, y] in level {
                let _ = writeln!(s, r##"      <circle cx="{x}" cy="{y}" r="{radius}" fill="#c0392b"/>"##);
            }
        }
        let _ = writeln!(s, "    </g>");
    }
    let _ = writeln!(s, "  </g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn view_box_pads_five_percent() {
        let plot = Plot { curve: vec![[0.0, 0.0], [10.0, 20.0]], ..Default::default() };
        let [x, y, w, h] = view_box(&plot);
        assert!((x + 0.5).abs() < 1e-12 && (y + 1.0).abs() < 1e-12);
        assert!((w - 11.0).abs() < 1e-12 && (h - 22.0).abs() < 1e-12);
    }

    #[test]
    fn flat_curves_get_a_box() {
        let plot = Plot { curve: vec![[0.0, 1.0], [4.0, 1.0]], ..Default::default() };
        let [_, _, w, h] = view_box(&plot);
        assert!(w > 0.0 && h > 0.0);
    }

    #[test]
    fn flip_maps_box_onto_itself() {
        let plot = Plot { curve: vec![[0.0, 2.0], [1.0, 3.0]], ..Default::default() };
        let svg = render(&plot);
        // y' = (2 y0 + h) - y maps [y0, y0 + h] onto itself
        let [_, y0, _, h] = view_box(&plot);
        assert!(svg.contains(&format!("matrix(1 0 0 -1 0 {})", 2.0 * y0 + h)));
        assert_eq!(svg.matches("<polyline").count(), 1);
    }
}
