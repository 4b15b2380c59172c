//! Deterministic SVG pictures of tiling patches with optional direction and
//! polarisation overlays.
//!
//! Chart coordinates are integers. A triangular chart point `(x1, x2)` sits
//! at `(x1 - x2, √3 (x1 + x2))` up to a common factor, so every output number
//! is an integer times a fixed constant, formatted once with two decimals.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::polarisation::Polarisation;
use crate::tiling::{Chart, DirectionAssignment, TilingPatch, Vec2};

/// Which overlays to draw and the size of the picture in pixels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSpec {
    pub types: bool,
    pub directions: bool,
    pub long_edges: bool,
    pub polarisation: bool,
    pub width: u32,
    pub height: u32,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { types: true, directions: true, long_edges: true, polarisation: true, width: 600, height: 600 }
    }
}

impl RenderSpec {
    /// The bare tiling.
    pub fn bare() -> Self {
        RenderSpec { types: false, directions: false, long_edges: false, polarisation: false, ..Self::default() }
    }
}

const TYPE_COLOURS: [&str; 3] = ["#d62728", "#1f77b4", "#2ca02c"];
const UNIT: f64 = 20.0;

/// Plane position as integer multiples of `(UNIT, UNIT · yscale)`, doubled
/// so edge midpoints stay integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Pt(i64, i64);

fn plane(chart: Chart, p: Vec2) -> Pt {
    match chart {
        Chart::Square => Pt(2 * p[0], -2 * p[1]),
        Chart::Triangular => Pt(2 * (p[0] - p[1]), -2 * (p[0] + p[1])),
    }
}

fn mid(a: Pt, b: Pt) -> Pt {
    Pt((a.0 + b.0) / 2, (a.1 + b.1) / 2)
}

struct Frame {
    yscale: f64,
    unit: f64,
}

impl Frame {
    fn x(&self, p: Pt) -> String {
        format!("{:.2}", p.0 as f64 * self.unit)
    }

    fn y(&self, p: Pt) -> String {
        format!("{:.2}", p.1 as f64 * self.unit * self.yscale)
    }

    fn line(&self, out: &mut String, a: Pt, b: Pt, attrs: &str) {
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" {attrs}/>"#,
            self.x(a),
            self.y(a),
            self.x(b),
            self.y(b)
        );
    }
}

/// Renders `patch` as one lift of its cells around their reduced centres.
pub fn render_svg(
    patch: &TilingPatch,
    directions: Option<&DirectionAssignment>,
    polarisation: Option<&Polarisation>,
    spec: &RenderSpec,
) -> String {
    let chart = patch.chart;
    let frame = Frame {
        yscale: if chart == Chart::Triangular { 3f64.sqrt() } else { 1.0 },
        unit: UNIT / (2 * patch.scale) as f64,
    };
    let lifted: Vec<Vec<Pt>> = patch.cells.iter().map(|c| c.lift.iter().map(|&p| plane(chart, p)).collect()).collect();

    let all: Vec<Pt> = lifted.iter().flatten().copied().collect();
    let (min_x, max_x) = (all.iter().map(|p| p.0).min().unwrap_or(0), all.iter().map(|p| p.0).max().unwrap_or(0));
    let (min_y, max_y) = (all.iter().map(|p| p.1).min().unwrap_or(0), all.iter().map(|p| p.1).max().unwrap_or(0));
    let margin = 2 * patch.scale;
    let lo = Pt(min_x - margin, min_y - margin);
    let hi = Pt(max_x + margin, max_y + margin);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="{} {} {:.2} {:.2}">"#,
        spec.width,
        spec.height,
        frame.x(lo),
        frame.y(lo),
        (hi.0 - lo.0) as f64 * frame.unit,
        (hi.1 - lo.1) as f64 * frame.unit * frame.yscale,
    );
    out.push_str(concat!(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"5\" refY=\"5\" markerWidth=\"5\" ",
        "markerHeight=\"5\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#000\"/></marker></defs>\n"
    ));
    out.push_str("<g fill=\"none\" stroke-linecap=\"round\">\n");

    // Each edge drawn once per distinct plane segment.
    let mut drawn: BTreeSet<(Pt, Pt)> = BTreeSet::new();
    for (c, cell) in patch.cells.iter().enumerate() {
        let n = cell.size();
        for i in 0..n {
            let (a, b) = (lifted[c][i], lifted[c][(i + 1) % n]);
            if !drawn.insert((a.min(b), a.max(b))) {
                continue;
            }
            let e = cell.edges[i];
            let colour = if spec.types { TYPE_COLOURS[patch.edges[e].ty % 3] } else { "#000" };
            let long = spec.long_edges && directions.is_some_and(|d| d.length[e] > 1);
            if long {
                frame.line(&mut out, a, b, &format!(r#"stroke="{colour}" stroke-width="5""#));
                frame.line(&mut out, a, b, r##"stroke="#fff" stroke-width="1.5""##);
            } else {
                frame.line(&mut out, a, b, &format!(r#"stroke="{colour}" stroke-width="2""#));
            }
            if let (true, Some(d)) = (spec.directions, directions) {
                let (tail, head) = if d.ends(patch, e).0 == cell.boundary[i] { (a, b) } else { (b, a) };
                frame.line(&mut out, tail, mid(tail, head), r##"stroke="#000" stroke-width="0.8" marker-end="url(#arrow)""##);
            }
        }
    }

    if let (true, Some(l)) = (spec.polarisation, polarisation) {
        for (c, cell) in patch.cells.iter().enumerate() {
            let i = l.0[c];
            let (a, b) = (lifted[c][i], lifted[c][i + cell.m as usize]);
            frame.line(&mut out, a, b, r##"stroke="#555" stroke-width="1.2" stroke-dasharray="4 3""##);
        }
    }

    let vertices: BTreeSet<Pt> = all.into_iter().collect();
    for p in vertices {
        let _ = writeln!(out, r##"<circle cx="{}" cy="{}" r="2.5" fill="#000"/>"##, frame.x(p), frame.y(p));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polarisation::induced;
    use crate::tiling::{build_patch, consistent_directions, type_preserving_lattice, TriangleType};

    fn e333() -> TilingPatch {
        let tt = TriangleType::euclidean(3, 3, 3).unwrap();
        build_patch(tt, type_preserving_lattice(tt)).unwrap()
    }

    #[test]
    fn deterministic_and_well_formed() {
        let p = e333();
        let d = consistent_directions(&p, 1).remove(0);
        let l = induced(&p, &d).unwrap();
        let a = render_svg(&p, Some(&d), Some(&l), &RenderSpec::default());
        let b = render_svg(&p, Some(&d), Some(&l), &RenderSpec::default());
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("stroke-dasharray").count(), p.cells.len());
        assert!(a.contains("marker-end"));
    }

    #[test]
    fn bare_has_no_overlays() {
        let p = e333();
        let d = consistent_directions(&p, 2).into_iter().find(|d| d.length.iter().any(|&k| k > 1)).unwrap();
        let l = induced(&p, &d).unwrap();
        let svg = render_svg(&p, Some(&d), Some(&l), &RenderSpec::bare());
        assert!(!svg.contains("stroke-dasharray"));
        assert!(!svg.contains("marker-end=") && !svg.contains("#fff"));
        assert!(!TYPE_COLOURS.iter().any(|c| svg.contains(c)));
        let full = render_svg(&p, Some(&d), Some(&l), &RenderSpec::default());
        assert!(full.contains("#fff"));
    }

    #[test]
    fn every_vertex_drawn() {
        let p = e333();
        let svg = render_svg(&p, None, None, &RenderSpec::bare());
        // A lift shows each vertex at least once.
        assert!(svg.matches("<circle").count() >= p.vertices.len());
    }
}
