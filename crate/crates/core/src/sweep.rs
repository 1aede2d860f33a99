//! Slanted sweeps and the planners built from them.
//!
//! A sweep places an infinite line, translates it by a vector `v` that need
//! not be normal to it, and lifts it. Every point the line passes over is
//! carried along to the end line; the cost is `|v|`. States are kept as a
//! single [`ConvexRegion`]; a sweep that would leave mass behind the start
//! line or produce a non-convex union is rejected.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::enclosure::{min_parallelogram, min_rectangle, EnclosureError, Parallelogram};
use crate::geom::{
    convex_hull_with, make_disk, make_reuleaux, make_trapezoid, polygon_area, reuleaux_corners,
    Angle, ConvexRegion, Degeneracy, GeomError, Point2, ToleranceConfig,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SweepError {
    #[error("sweep vector has zero length")]
    ZeroVector,
    #[error("start line cuts the region, leaving mass {depth:e} behind it")]
    RecedingMass { depth: f64 },
    #[error("sweep result is not convex (hull exceeds union by {gap:e} of area {hull_area:e})")]
    NonConvex { gap: f64, hull_area: f64 },
    #[error("edge index {index} out of range for {edges} edges")]
    BadEdge { index: usize, edges: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
}

impl SweepError {
    /// Whether the error reflects a state outside the simulator's model
    /// rather than bad input.
    pub fn is_model_violation(&self) -> bool {
        matches!(self, SweepError::RecedingMass { .. } | SweepError::NonConvex { .. })
    }
}

/// One slanted sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "SweepRecord", into = "SweepRecord")]
pub struct Sweep {
    /// Direction of the sweep line, in `[0, π)`.
    pub line_angle: Angle,
    /// Signed offset of the start line along the normal `line_angle + π/2`.
    pub start_offset: f64,
    pub vector: Point2,
}

#[derive(Serialize, Deserialize)]
struct SweepRecord {
    line_deg: f64,
    start_offset: f64,
    vector: Point2,
}

impl From<SweepRecord> for Sweep {
    fn from(r: SweepRecord) -> Self {
        Sweep::new(Angle::from_degrees(r.line_deg), r.start_offset, r.vector)
    }
}

impl From<Sweep> for SweepRecord {
    fn from(s: Sweep) -> Self {
        SweepRecord {
            line_deg: s.line_angle.degrees(),
            start_offset: s.start_offset,
            vector: s.vector,
        }
    }
}

impl Sweep {
    pub fn new(line_angle: Angle, start_offset: f64, vector: Point2) -> Sweep {
        let line_angle = line_angle.line_direction();
        Sweep {
            line_angle,
            start_offset,
            vector,
        }
    }

    /// Sweep whose start line passes through `point`.
    pub fn through(point: Point2, line_angle: Angle, vector: Point2) -> Sweep {
        let line_angle = line_angle.line_direction();
        let normal = (line_angle + FRAC_PI_2).unit();
        Sweep::new(line_angle, point.dot(normal), vector)
    }

    pub fn cost(&self) -> f64 {
        self.vector.norm()
    }

    /// Direction of the displacement vector.
    pub fn vector_angle(&self) -> Angle {
        Angle::from_radians(self.vector.angle())
    }

    pub fn line_direction(&self) -> Point2 {
        self.line_angle.unit()
    }

    /// `(n, c0, travel)`: unit normal with `v·n ≥ 0`, start offset along it,
    /// and how far the line advances along it.
    pub fn frame(&self) -> (Point2, f64, f64) {
        let n = (self.line_angle + FRAC_PI_2).unit();
        let t = self.vector.dot(n);
        if t < 0.0 {
            (-n, -self.start_offset, -t)
        } else {
            (n, self.start_offset, t)
        }
    }

    /// A point on the start line.
    pub fn start_point(&self) -> Point2 {
        let (n, c0, _) = self.frame();
        n * c0
    }

    /// A point on the end line.
    pub fn end_point(&self) -> Point2 {
        self.start_point() + self.vector
    }
}

/// An ordered sequence of sweeps with its total cost.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPlan {
    pub sweeps: Vec<Sweep>,
    #[serde(rename = "cost")]
    pub planned_cost: f64,
    pub target: Option<Point2>,
}

impl SweepPlan {
    pub fn new(sweeps: Vec<Sweep>, target: Option<Point2>) -> SweepPlan {
        let planned_cost = sweeps.iter().map(Sweep::cost).sum();
        SweepPlan {
            sweeps,
            planned_cost,
            target,
        }
    }

    pub fn len(&self) -> usize {
        self.sweeps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sweeps.is_empty()
    }

    /// `self` followed by `next`; the target is `next`'s.
    pub fn then(mut self, next: SweepPlan) -> SweepPlan {
        self.sweeps.extend(next.sweeps);
        SweepPlan::new(self.sweeps, next.target)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationResult {
    /// Initial region followed by the state after each sweep.
    pub states: Vec<ConvexRegion>,
    pub realized_cost: f64,
    pub final_point: Option<Point2>,
}

/// Applies one sweep with the default tolerances.
pub fn apply_sweep(state: &ConvexRegion, sweep: &Sweep) -> Result<ConvexRegion, SweepError> {
    apply_sweep_with(state, sweep, &ToleranceConfig::default())
}

/// Applies one sweep.
///
/// With `n` the unit normal facing the motion, the line starts at offset
/// `c0` and stops at `c1 = c0 + v·n`. A point at offset `o ∈ [c0, c1]` is
/// reached at time `t = (o − c0)/(v·n)` and lands at `p + (1 − t)·v`;
/// points beyond `c1` do not move. Points within `eps_geom` of the start
/// line count as touched at `t = 0`.
pub fn apply_sweep_with(
    state: &ConvexRegion,
    sweep: &Sweep,
    tol: &ToleranceConfig,
) -> Result<ConvexRegion, SweepError> {
    let v = sweep.vector;
    if v.norm() == 0.0 {
        return Err(SweepError::ZeroVector);
    }
    let (n, c0, travel) = sweep.frame();
    if travel <= tol.eps_geom {
        return apply_tangential(state, sweep, tol);
    }
    let (min_o, _) = state.projection_range(n);
    if min_o < c0 - tol.eps_geom {
        return Err(SweepError::RecedingMass { depth: c0 - min_o });
    }
    let c1 = c0 + travel;
    let verts = state.vertices();

    let kept = clip(verts, |p| p.dot(n) - c1);
    let touched = clip(verts, |p| c1 - p.dot(n));

    let along = sweep.line_direction();
    let mut image: Option<(Point2, f64, Point2, f64)> = None;
    for &p in &touched {
        let t = ((p.dot(n) - c0) / travel).clamp(0.0, 1.0);
        let q = p + v * (1.0 - t);
        let s = q.dot(along);
        image = Some(match image {
            None => (q, s, q, s),
            Some((lo, slo, hi, shi)) => {
                let (lo, slo) = if s < slo { (q, s) } else { (lo, slo) };
                let (hi, shi) = if s > shi { (q, s) } else { (hi, shi) };
                (lo, slo, hi, shi)
            }
        });
    }

    let mut pts = kept.clone();
    if let Some((lo, _, hi, _)) = image {
        pts.push(lo);
        pts.push(hi);
    }
    let result = convex_hull_with(&pts, tol.eps_geom)?;
    check_convex_union(&result, polygon_area(&kept), tol)?;
    Ok(result)
}

/// A sweep parallel to its own line only drags the points lying on it.
fn apply_tangential(
    state: &ConvexRegion,
    sweep: &Sweep,
    tol: &ToleranceConfig,
) -> Result<ConvexRegion, SweepError> {
    let (n, c0, _) = sweep.frame();
    let on_line: Vec<Point2> = state
        .vertices()
        .iter()
        .copied()
        .filter(|p| (p.dot(n) - c0).abs() <= tol.eps_geom)
        .collect();
    if on_line.is_empty() {
        return Ok(state.clone());
    }
    if on_line.len() == state.len() {
        return Ok(state.translate(sweep.vector));
    }
    let mut pts = state.vertices().to_vec();
    pts.extend(on_line.iter().map(|&p| p + sweep.vector));
    let result = convex_hull_with(&pts, tol.eps_geom)?;
    check_convex_union(&result, state.area(), tol)?;
    Ok(result)
}

fn check_convex_union(
    hull: &ConvexRegion,
    union_area: f64,
    tol: &ToleranceConfig,
) -> Result<(), SweepError> {
    let hull_area = hull.area();
    let gap = hull_area - union_area;
    // a strip of width eps_geom along the boundary absorbs rounding
    let slack = tol.eps_num * hull_area + tol.eps_geom * (hull.perimeter() + tol.eps_geom);
    if gap > slack {
        return Err(SweepError::NonConvex { gap, hull_area });
    }
    Ok(())
}

/// Part of a convex vertex cycle where `f ≥ 0` (`f` affine).
fn clip(verts: &[Point2], f: impl Fn(Point2) -> f64) -> Vec<Point2> {
    let n = verts.len();
    if n == 1 {
        return if f(verts[0]) >= 0.0 {
            verts.to_vec()
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        let (fa, fb) = (f(a), f(b));
        if fa >= 0.0 {
            out.push(a);
        }
        if (fa >= 0.0) != (fb >= 0.0) {
            out.push(a + (b - a) * (fa / (fa - fb)));
        }
    }
    out
}

/// Runs `plan` on `region` with the default tolerances.
pub fn simulate(region: &ConvexRegion, plan: &SweepPlan) -> Result<SimulationResult, SweepError> {
    simulate_with(region, plan, &ToleranceConfig::default())
}

pub fn simulate_with(
    region: &ConvexRegion,
    plan: &SweepPlan,
    tol: &ToleranceConfig,
) -> Result<SimulationResult, SweepError> {
    let mut states = Vec::with_capacity(plan.len() + 1);
    states.push(region.clone());
    for sweep in &plan.sweeps {
        let next = apply_sweep_with(states.last().expect("non-empty"), sweep, tol)?;
        states.push(next);
    }
    let final_point = states.last().and_then(ConvexRegion::as_point);
    Ok(SimulationResult {
        states,
        realized_cost: plan.sweeps.iter().map(Sweep::cost).sum(),
        final_point,
    })
}

/// Vertex-by-vertex plan of cost `perimeter − |s|`, where `s` is edge
/// `excluded_edge` (from vertex `e` to `e + 1`).
///
/// Walking clockwise from `A1 = v[e]` to `An = v[e + 1]`, sweep `i` starts
/// at `Ai` parallel to the diagonal `A(i+1)An` and moves by `Ai→A(i+1)`,
/// folding the triangle `Ai A(i+1) An` onto that diagonal. The last sweep
/// runs orthogonally along `A(n−1)An`. The region ends at `An`.
pub fn plan_fan(region: &ConvexRegion, excluded_edge: usize) -> Result<SweepPlan, SweepError> {
    region.require_polygon()?;
    let n = region.len();
    if excluded_edge >= n {
        return Err(SweepError::BadEdge {
            index: excluded_edge,
            edges: n,
        });
    }
    let label = |i: usize| region.vertex(excluded_edge + n + 1 - i);
    let last = label(n);
    let mut sweeps = Vec::with_capacity(n - 1);
    for i in 1..=n - 2 {
        let (a, b) = (label(i), label(i + 1));
        let diagonal = last - b;
        sweeps.push(Sweep::through(a, Angle::from_radians(diagonal.angle()), b - a));
    }
    let a = label(n - 1);
    let step = last - a;
    sweeps.push(Sweep::through(
        a,
        Angle::from_radians(step.angle() + FRAC_PI_2),
        step,
    ));
    Ok(SweepPlan::new(sweeps, Some(last)))
}

/// The fan that excludes the longest edge, which gives the cheapest fan.
pub fn plan_best_fan(region: &ConvexRegion) -> Result<SweepPlan, SweepError> {
    region.require_polygon()?;
    let longest = region
        .edges()
        .enumerate()
        .map(|(i, (a, b))| (i, a.distance(b)))
        .fold((0, f64::NEG_INFINITY), |acc, e| if e.1 > acc.1 { e } else { acc })
        .0;
    plan_fan(region, longest)
}

/// Two sweeps along the sides of `p`: the `u`-parallel line is pushed across
/// by the `v` side, then the resulting segment is pushed along `u`.
/// Sides shorter than `eps` are skipped.
pub fn plan_for_parallelogram(p: &Parallelogram, eps: f64) -> SweepPlan {
    let (su, sv) = (p.side_u(), p.side_v());
    let mut sweeps = Vec::with_capacity(2);
    if p.len_v > eps {
        sweeps.push(Sweep::through(p.anchor, p.dir_u, sv));
    }
    if p.len_u > eps {
        sweeps.push(Sweep::through(p.anchor + sv, p.dir_v, su));
    }
    SweepPlan::new(sweeps, Some(p.anchor + su + sv))
}

/// The 2-sweep plan along the minimum-perimeter enclosing rectangle.
pub fn plan_rectangle_2sweep(region: &ConvexRegion) -> SweepPlan {
    let rect = min_rectangle(region).shape.as_parallelogram();
    plan_for_parallelogram(&rect, ToleranceConfig::default().eps_geom)
}

/// The 2-sweep plan along the minimum-perimeter enclosing parallelogram.
pub fn plan_parallelogram_2sweep(region: &ConvexRegion) -> Result<SweepPlan, SweepError> {
    let para = min_parallelogram(region)?.shape.as_parallelogram();
    Ok(plan_for_parallelogram(&para, ToleranceConfig::default().eps_geom))
}

/// Plan for [`make_reuleaux`]`(n_per_arc)`: a vertical sweep from the top
/// corner down to the base, then the fan of the remaining cap with the base
/// excluded. Cost tends to `√3/2 + π/3` from below.
pub fn plan_reuleaux(n_per_arc: usize) -> Result<SweepPlan, SweepError> {
    if n_per_arc < 2 {
        return Err(GeomError::OutOfRange(format!("reuleaux plan needs n >= 2, got {n_per_arc}")).into());
    }
    let region = make_reuleaux(n_per_arc)?;
    let [top, ..] = reuleaux_corners();
    let first = Sweep::through(top, Angle::ZERO, Point2::new(0.0, -top.y));
    let cap = apply_sweep(&region, &first)?;
    let head = SweepPlan::new(vec![first], None);
    Ok(head.then(plan_best_fan(&cap)?))
}

/// Half of the centre angle of the cap left by [`plan_disk`]:
/// `2·arcsin(1/√5)`, where `sin α + (1 − cos α)/2 − α` peaks.
pub fn disk_cap_half_angle() -> f64 {
    2.0 * (1.0 / 5f64.sqrt()).asin()
}

/// Plan for [`make_disk`]`(n)`.
///
/// With the cap half-angle `α = 2·arcsin(1/√5)`, chord `a = sin α` and cap
/// height `h = (1 − cos α)/2`: one sweep from each vertical side of the
/// bounding square trims the disk to `|x| ≤ a/2` (total `1 − a`), a sweep up
/// from the bottom to the chord costs `1 − h`, and the fan on the cap costs
/// about `α`. The side sweeps go first so every state stays convex, and they
/// stop where the polygon meets the chord line rather than at `±a/2`.
pub fn plan_disk(n: usize) -> Result<SweepPlan, SweepError> {
    if n < 64 || n % 4 != 0 {
        return Err(GeomError::OutOfRange(format!(
            "disk plan needs n >= 64 and divisible by 4, got {n}"
        ))
        .into());
    }
    let region = make_disk(n)?;
    let alpha = disk_cap_half_angle();
    let chord_y = alpha.cos() / 2.0;
    let half_chord = clip(region.vertices(), |p| p.y - chord_y)
        .iter()
        .filter(|p| (p.y - chord_y).abs() <= 1e-12)
        .map(|p| p.x.abs())
        .fold(0.0, f64::max);
    let height = 0.5 - chord_y;
    let side = 0.5 - half_chord;
    let head = vec![
        Sweep::through(Point2::new(-0.5, 0.0), Angle::RIGHT, Point2::new(side, 0.0)),
        Sweep::through(Point2::new(0.5, 0.0), Angle::RIGHT, Point2::new(-side, 0.0)),
        Sweep::through(Point2::new(0.0, -0.5), Angle::ZERO, Point2::new(0.0, 1.0 - height)),
    ];
    let mut cap = region;
    for s in &head {
        cap = apply_sweep(&cap, s)?;
    }
    Ok(SweepPlan::new(head, None).then(plan_best_fan(&cap)?))
}

/// The 3-sweep fan on the trapezoid, base `BC` excluded; ends at `C`.
pub fn plan_trapezoid_3sweep(alpha: Angle, kappa: f64) -> Result<SweepPlan, SweepError> {
    let t = make_trapezoid(alpha, kappa)?;
    plan_fan(&t, 0)
}

/// Convex hull of `state` and its translate by `v`: every point of the next
/// state lies in here.
pub fn displacement_hull(state: &ConvexRegion, v: Point2) -> ConvexRegion {
    let mut pts = state.vertices().to_vec();
    pts.extend(state.vertices().iter().map(|&p| p + v));
    crate::geom::convex_hull(&pts).expect("finite vertices")
}

impl SimulationResult {
    pub fn final_state(&self) -> &ConvexRegion {
        self.states.last().expect("initial state always present")
    }

    pub fn reached_point(&self) -> bool {
        self.final_state().degeneracy() == Degeneracy::Point
    }
}
