use std::fmt::Write;

use convgeom::bodies::PlanarBody;
use convgeom::exact::QPoint;
use convgeom::planar::PlanarRepresentation;

const SIZE: f64 = 640.0;
const SCALE: f64 = 240.0;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"];

fn px(p: [f64; 2]) -> (f64, f64) {
    (SIZE / 2.0 + SCALE * p[0], SIZE / 2.0 - SCALE * p[1])
}

fn points_attr<I: IntoIterator<Item = [f64; 2]>>(pts: I) -> String {
    pts.into_iter()
        .map(|p| {
            let (x, y) = px(p);
            format!("{x:.4},{y:.4}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn qpoints(v: &[QPoint]) -> impl Iterator<Item = [f64; 2]> + '_ {
    v.iter().map(QPoint::to_f64)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Draws every element as a group holding `P¹` (filled), `P²` (outlined) and
/// `K(x)` (highlighted), over the direction rays of the frame.
pub fn render_svg(rep: &PlanarRepresentation) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="#ffffff"/>"##);
    let (cx, cy) = px([0.0, 0.0]);
    for (i, v) in rep.frame.directions().iter().enumerate() {
        let [x, y] = v.to_f64();
        let (ex, ey) = px([1.2 * x, 1.2 * y]);
        let (tx, ty) = px([1.28 * x, 1.28 * y]);
        let _ = writeln!(
            out,
            r##"<line class="ray" x1="{cx:.4}" y1="{cy:.4}" x2="{ex:.4}" y2="{ey:.4}" stroke="#999999" stroke-width="0.8" stroke-dasharray="4 3"/>"##
        );
        let _ = writeln!(
            out,
            r#"<text class="ray-label" x="{tx:.4}" y="{ty:.4}" font-size="12" text-anchor="middle">v{}</text>"#,
            i + 1
        );
    }
    let labels = rep.bodies.labels();
    for (k, (pair, body)) in rep.pairs.iter().zip(rep.bodies.bodies()).enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let label = escape(&labels[k]);
        let _ = writeln!(out, r#"<g class="element" id="element-{k}" data-label="{label}">"#);
        let _ = writeln!(
            out,
            r#"<polygon class="p1" points="{}" fill="{color}" fill-opacity="0.25" stroke="none"/>"#,
            points_attr(qpoints(&pair.f1))
        );
        let _ = writeln!(
            out,
            r#"<polygon class="p2" points="{}" fill="none" stroke="{color}" stroke-width="0.6"/>"#,
            points_attr(qpoints(&pair.f2))
        );
        let k_points: Vec<[f64; 2]> = match body {
            PlanarBody::Polygon(p) => p.approx_vertices().collect(),
            PlanarBody::Sampled(s) => s.vertices().to_vec(),
            _ => Vec::new(),
        };
        let tag = if matches!(body, PlanarBody::Sampled(_)) { "path" } else { "polygon" };
        if tag == "path" {
            let mut d = String::new();
            for (j, p) in k_points.iter().enumerate() {
                let (x, y) = px(*p);
                let _ = write!(d, "{}{x:.4},{y:.4} ", if j == 0 { "M" } else { "L" });
            }
            d.push('Z');
            let _ = writeln!(out, r#"<path class="k" d="{d}" fill="none" stroke="{color}" stroke-width="1.6"/>"#);
        } else {
            let _ = writeln!(
                out,
                r#"<polygon class="k" points="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#,
                points_attr(k_points)
            );
        }
        let ly = 20.0 + 16.0 * k as f64;
        let _ = writeln!(out, r#"<text class="label" x="12" y="{ly:.4}" font-size="13" fill="{color}">{label}</text>"#);
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}
