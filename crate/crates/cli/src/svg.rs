//! SVG 1.1 rendering of planar figures into a fixed 512 x 512 view box.

use std::fmt::Write;

use kakeya_core::verify::{Figure, FigureItem, Role};

const SIZE: f64 = 512.0;
const PAD: f64 = 24.0;

fn style(role: Role) -> &'static str {
    match role {
        Role::Container => r##"fill="none" stroke="#222" stroke-width="2""##,
        Role::Placed => r##"fill="#4a7ab5" fill-opacity="0.35" stroke="#23527c" stroke-width="1.5""##,
        Role::Inball => r##"fill="none" stroke="#c0392b" stroke-width="1.5" stroke-dasharray="6 4""##,
    }
}

fn bounds(fig: &Figure) -> Option<(f64, f64, f64, f64)> {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    let mut grow = |x: f64, y: f64| {
        b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
    };
    for item in &fig.items {
        match item {
            FigureItem::Polygon { points, .. } => points.iter().for_each(|p| grow(p[0], p[1])),
            FigureItem::Circle { center, radius, .. } => {
                grow(center[0] - radius, center[1] - radius);
                grow(center[0] + radius, center[1] + radius);
            }
        }
    }
    b.0.is_finite().then_some(b)
}

/// Renders `fig`, scaling uniformly so everything fits with a small margin.
/// The y axis points up, as in the input coordinates.
pub fn render(fig: &Figure) -> String {
    let (x0, y0, x1, y1) = bounds(fig).unwrap_or((0.0, 0.0, 1.0, 1.0));
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let k = (SIZE - 2.0 * PAD) / span;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let map = |x: f64, y: f64| (SIZE / 2.0 + (x - cx) * k, SIZE / 2.0 - (y - cy) * k);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for item in &fig.items {
        match item {
            FigureItem::Polygon { role, points } => {
                let pts: Vec<String> = points
                    .iter()
                    .map(|p| {
                        let (x, y) = map(p[0], p[1]);
                        format!("{x:.3},{y:.3}")
                    })
                    .collect();
                if pts.len() < 3 {
                    let _ = writeln!(out, r#"  <polyline points="{}" {}/>"#, pts.join(" "), style(*role));
                } else {
                    let _ = writeln!(out, r#"  <polygon points="{}" {}/>"#, pts.join(" "), style(*role));
                }
            }
            FigureItem::Circle { role, center, radius } => {
                let (x, y) = map(center[0], center[1]);
                let _ = writeln!(out, r#"  <circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" {}/>"#, radius * k, style(*role));
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_fills_the_box() {
        let fig = Figure {
            items: vec![
                FigureItem::Polygon { role: Role::Container, points: vec![[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]] },
                FigureItem::Circle { role: Role::Inball, center: [0.5, 0.5], radius: 0.5 },
            ],
        };
        let s = render(&fig);
        assert!(s.contains(r#"viewBox="0 0 512 512""#));
        assert!(s.contains("24.000,488.000"));
        assert!(s.contains(r#"cx="256.000" cy="256.000" r="232.000""#));
    }
}
