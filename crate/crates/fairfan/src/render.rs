//! SVG drawings of planar instances: bumps as discs, regions as clipped
//! polygons with their boundaries.

use std::fmt::Write as _;

use fairfan_core::geometry::{ConvexRegion, Point};
use fairfan_core::measures::MeasureFamily;
use fairfan_core::partition::{ConvexPartition, Provenance};
use fairfan_core::rational::to_f64;

const SIZE: f64 = 640.0;
const PAD: f64 = 24.0;

type Poly = Vec<[f64; 2]>;

/// Sutherland–Hodgman clip of `poly` to `a·x ≤ b`.
fn clip(poly: &Poly, a: [f64; 2], b: f64) -> Poly {
    let inside = |p: &[f64; 2]| a[0] * p[0] + a[1] * p[1] <= b + 1e-12;
    let cross = |p: &[f64; 2], q: &[f64; 2]| {
        let fp = a[0] * p[0] + a[1] * p[1] - b;
        let fq = a[0] * q[0] + a[1] * q[1] - b;
        let t = fp / (fp - fq);
        [p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])]
    };
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        match (inside(p), inside(q)) {
            (true, true) => out.push(*q),
            (true, false) => out.push(cross(p, q)),
            (false, true) => {
                out.push(cross(p, q));
                out.push(*q);
            }
            (false, false) => {}
        }
    }
    out
}

fn region_polygon(region: &ConvexRegion, bbox: [f64; 4]) -> Poly {
    let [x0, y0, x1, y1] = bbox;
    let mut poly = vec![[x0, y0], [x1, y0], [x1, y1], [x0, y1]];
    for h in region.halfspaces() {
        let (a, b) = h.as_le();
        poly = clip(&poly, [to_f64(&a[0]), to_f64(&a[1])], to_f64(&b));
        if poly.is_empty() {
            break;
        }
    }
    poly
}

/// A distinct, stable colour per measure.
fn hue(j: usize) -> f64 {
    (j as f64 * 137.508) % 360.0
}

fn bounds(family: &MeasureFamily, extra: &[Point]) -> [f64; 4] {
    let pts: Vec<Vec<f64>> = family
        .measures()
        .iter()
        .flat_map(|mu| mu.atoms().iter().map(|a| a.point.to_f64()))
        .chain(extra.iter().map(Point::to_f64))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in &pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let margin = ((x1 - x0).max(y1 - y0) * 0.1).max(1.0);
    [x0 - margin, y0 - margin, x1 + margin, y1 + margin]
}

/// Renders a planar family and, optionally, a partition of the plane.
pub fn render_svg(family: &MeasureFamily, partition: Option<&ConvexPartition>, title: &str) -> Option<String> {
    if family.dim() != 2 {
        return None;
    }
    let apex: Vec<Point> = match partition.map(ConvexPartition::provenance) {
        Some(Provenance::Fan { apex, .. }) => vec![apex.basepoint.clone()],
        _ => Vec::new(),
    };
    let bbox = bounds(family, &apex);
    let scale = (SIZE - 2.0 * PAD) / (bbox[2] - bbox[0]).max(bbox[3] - bbox[1]);
    let sx = |x: f64| PAD + (x - bbox[0]) * scale;
    let sy = |y: f64| SIZE - PAD - (y - bbox[1]) * scale;
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(svg, "<title>{}</title>", escape(title));
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if let Some(p) = partition {
        for (i, region) in p.regions().iter().enumerate() {
            let poly = region_polygon(region, bbox);
            if poly.is_empty() {
                continue;
            }
            let pts: Vec<String> = poly.iter().map(|q| format!("{:.2},{:.2}", sx(q[0]), sy(q[1]))).collect();
            let shade = if i % 2 == 0 { "#f2f2f2" } else { "#e0e6ee" };
            let _ = writeln!(
                svg,
                r##"<polygon points="{}" fill="{shade}" stroke="#333" stroke-width="1.2"/>"##,
                pts.join(" ")
            );
        }
    }
    for (j, mu) in family.measures().iter().enumerate() {
        let r = (to_f64(mu.bump_radius()) * scale).max(3.0);
        for a in mu.atoms() {
            let p = a.point.to_f64();
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{r:.2}" fill="hsl({:.1},70%,45%)" fill-opacity="0.8"><title>{}</title></circle>"#,
                sx(p[0]),
                sy(p[1]),
                hue(j),
                escape(mu.label())
            );
        }
    }
    for a in &apex {
        let p = a.to_f64();
        let _ = writeln!(svg, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="black"/>"#, sx(p[0]), sy(p[1]));
    }
    svg.push_str("</svg>\n");
    Some(svg)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clipping_a_square() {
        let sq = vec![[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let half = clip(&sq, [1.0, 0.0], 1.0);
        let area: f64 = (0..half.len())
            .map(|i| {
                let (p, q) = (half[i], half[(i + 1) % half.len()]);
                p[0] * q[1] - q[0] * p[1]
            })
            .sum::<f64>()
            / 2.0;
        assert!((area - 2.0).abs() < 1e-9);
        assert!(clip(&sq, [1.0, 0.0], -1.0).is_empty());
    }

    #[test]
    fn only_planar_families_render() {
        let f = crate::generate::random_family(3, 3, 1).unwrap();
        assert!(render_svg(&f, None, "x").is_none());
        let f = crate::generate::random_family(2, 3, 1).unwrap();
        let svg = render_svg(&f, None, "a < b").unwrap();
        assert!(svg.contains("a &lt; b") && svg.ends_with("</svg>\n"));
    }
}
