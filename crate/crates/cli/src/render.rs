//! Deterministic SVG drawings of a region, a plan and its simulation.

use std::fmt::Write;

use ovalsweep::geom::{ConvexRegion, Point2};
use ovalsweep::sweep::{SimulationResult, SweepPlan};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RenderSpec {
    /// Image width in pixels, at least 64.
    pub width_px: u32,
    /// Blank border as a fraction of the width.
    pub margin: f64,
    pub show_states: bool,
    pub show_vectors: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width_px: 640,
            margin: 0.06,
            show_states: true,
            show_vectors: true,
        }
    }
}

struct Frame {
    min: Point2,
    scale: f64,
    offset: f64,
    height: f64,
}

impl Frame {
    fn new(points: &[Point2], spec: &RenderSpec) -> Frame {
        let (mut min, mut max) = (points[0], points[0]);
        for p in points {
            min = Point2::new(min.x.min(p.x), min.y.min(p.y));
            max = Point2::new(max.x.max(p.x), max.y.max(p.y));
        }
        let width = spec.width_px as f64;
        let offset = spec.margin * width;
        let span = (max.x - min.x).max(max.y - min.y).max(1e-12);
        let scale = (width - 2.0 * offset) / span;
        let height = (max.y - min.y) * scale + 2.0 * offset;
        Frame { min, scale, offset, height }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            self.offset + (p.x - self.min.x) * self.scale,
            self.height - self.offset - (p.y - self.min.y) * self.scale,
        )
    }

    fn points(&self, pts: &[Point2]) -> String {
        let mut s = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{x:.3},{y:.3}");
        }
        s
    }
}

fn shape_element(out: &mut String, frame: &Frame, region: &ConvexRegion, attrs: &str) {
    match region.vertices() {
        [p] => {
            let (x, y) = frame.map(*p);
            let _ = writeln!(out, r#"  <circle {attrs} cx="{x:.3}" cy="{y:.3}" r="2.5"/>"#);
        }
        verts => {
            let _ = writeln!(
                out,
                r#"  <polygon {attrs} points="{}"/>"#,
                frame.points(verts)
            );
        }
    }
}

fn line_element(out: &mut String, frame: &Frame, a: Point2, b: Point2, attrs: &str) {
    let (x1, y1) = frame.map(a);
    let (x2, y2) = frame.map(b);
    let _ = writeln!(
        out,
        r#"  <line {attrs} x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}"/>"#
    );
}

/// Draws the region outline, and for a non-empty plan every simulation
/// state (initial included, later ones darker), each sweep's start and end
/// lines, and its vector as an arrow.
pub fn render(
    region: &ConvexRegion,
    plan: &SweepPlan,
    result: &SimulationResult,
    spec: &RenderSpec,
) -> String {
    let mut pts: Vec<Point2> = region.vertices().to_vec();
    for state in &result.states {
        pts.extend_from_slice(state.vertices());
    }
    let frame = Frame::new(&pts, spec);
    let reach = (frame.height.max(spec.width_px as f64)) / frame.scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h:.0}" viewBox="0 0 {w} {h:.3}">"#,
        w = spec.width_px,
        h = frame.height
    );
    out.push_str(concat!(
        "  <defs>\n",
        r#"    <marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto-start-reverse">"#,
        "\n",
        r##"      <path d="M0,0 L10,5 L0,10 z" fill="#c0392b"/>"##,
        "\n    </marker>\n  </defs>\n",
    ));
    shape_element(
        &mut out,
        &frame,
        region,
        r##"class="region" fill="#eef3f8" stroke="#1f3a5f" stroke-width="2""##,
    );
    if plan.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    if spec.show_states {
        let last = (result.states.len() - 1).max(1) as f64;
        for (i, state) in result.states.iter().enumerate() {
            let opacity = 0.25 + 0.75 * i as f64 / last;
            let attrs = format!(
                r##"class="state" data-index="{i}" fill="none" stroke="#1f3a5f" stroke-opacity="{opacity:.3}""##
            );
            shape_element(&mut out, &frame, state, &attrs);
        }
    }
    if spec.show_vectors {
        for (i, (sweep, state)) in plan.sweeps.iter().zip(&result.states).enumerate() {
            let along = sweep.line_direction();
            let start = sweep.start_point();
            // anchor the arrow where the start line passes the state's centre
            let c = state.centroid();
            let foot = start + along * (c - start).dot(along);
            for (class, base) in [("sweep-start", foot), ("sweep-end", foot + sweep.vector)] {
                let attrs = format!(
                    r##"class="{class}" data-index="{i}" stroke="#7f8c8d" stroke-dasharray="4 3""##
                );
                line_element(&mut out, &frame, base - along * reach, base + along * reach, &attrs);
            }
            let attrs = format!(
                r##"class="vector" data-index="{i}" stroke="#c0392b" stroke-width="1.5" marker-end="url(#arrow)""##
            );
            line_element(&mut out, &frame, foot, foot + sweep.vector, &attrs);
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Number of elements carrying `class="<name>"`.
pub fn count_class(svg: &str, name: &str) -> usize {
    svg.matches(&format!(r#"class="{name}""#)).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ovalsweep::geom::convex_hull;
    use ovalsweep::sweep::{plan_rectangle_2sweep, simulate};

    fn square() -> ConvexRegion {
        convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_a2_has_two_arrows() {
        let plan = plan_rectangle_2sweep(&square());
        let sim = simulate(&square(), &plan).unwrap();
        let svg = render(&square(), &plan, &sim, &RenderSpec::default());
        assert_eq!(count_class(&svg, "vector"), 2);
        assert_eq!(count_class(&svg, "state"), 3);
        assert_eq!(count_class(&svg, "region"), 1);
        assert_eq!(svg, render(&square(), &plan, &sim, &RenderSpec::default()));
        let bare = RenderSpec { show_states: false, show_vectors: false, ..RenderSpec::default() };
        let svg = render(&square(), &plan, &sim, &bare);
        assert_eq!(count_class(&svg, "vector") + count_class(&svg, "state"), 0);
    }

    #[test]
    fn empty_plan_draws_region_only() {
        let plan = SweepPlan::new(Vec::new(), None);
        let sim = simulate(&square(), &plan).unwrap();
        let svg = render(&square(), &plan, &sim, &RenderSpec::default());
        assert_eq!(count_class(&svg, "region"), 1);
        assert_eq!(count_class(&svg, "state") + count_class(&svg, "vector"), 0);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }
}
