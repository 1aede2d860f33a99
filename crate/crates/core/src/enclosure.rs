//! Minimum-perimeter enclosing rectangles and parallelograms.
//!
//! Both searches rely on the same fact: an optimal enclosure of a convex
//! polygon has a side flush with a polygon edge. For rectangles the
//! semiperimeter `w(β) + w(β + π/2)` is a single positive sinusoid between
//! caliper events, so interior stationary points are maxima and only edge
//! directions need evaluating. For parallelograms the first side direction
//! runs over the polygon edges and the second over caliper intervals, where
//! the semiperimeter is `(c0 + c1·cos φ + c2·sin φ) / sin φ` in the angle `φ`
//! between the two directions. Its derivative is `-(c1 + c0·cos φ) / sin²φ`,
//! so each interval has one closed-form minimiser `cos φ = -c1/c0`.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::geom::{line_direction_gap, Angle, ConvexRegion, Degeneracy, Point2, ToleranceConfig};
use crate::optimize::golden_section_min;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnclosureError {
    #[error("side directions are parallel (|sin| = {0:e})")]
    ParallelDirections(f64),
    #[error("a polygon is required, got a {0:?}")]
    Degenerate(Degeneracy),
    #[error("grid step must lie in (0, 5] degrees, got {0}")]
    BadGrid(f64),
}

/// Enclosing rectangle with sides along `axis` and `axis + π/2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Rectangle {
    pub axis: Angle,
    pub extent_u: f64,
    pub extent_v: f64,
    /// Corner with the smallest coordinates in the `(u, v)` frame.
    pub anchor: Point2,
    pub semiperimeter: f64,
}

impl Rectangle {
    /// Tightest rectangle around `region` with the given orientation.
    pub fn for_axis(region: &ConvexRegion, axis: Angle) -> Rectangle {
        let u = axis.unit();
        let v = u.perp();
        let (ulo, uhi) = region.projection_range(u);
        let (vlo, vhi) = region.projection_range(v);
        let extent_u = uhi - ulo;
        let extent_v = vhi - vlo;
        Rectangle {
            axis,
            extent_u,
            extent_v,
            anchor: u * ulo + v * vlo,
            semiperimeter: extent_u + extent_v,
        }
    }

    pub fn corners(&self) -> [Point2; 4] {
        self.to_parallelogram().corners()
    }

    pub fn to_parallelogram(&self) -> Parallelogram {
        Parallelogram {
            dir_u: self.axis,
            dir_v: self.axis + FRAC_PI_2,
            len_u: self.extent_u,
            len_v: self.extent_v,
            anchor: self.anchor,
            semiperimeter: self.semiperimeter,
        }
    }
}

/// Parallelogram spanned from `anchor` by `len_u` along `dir_u` and `len_v`
/// along `dir_v`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Parallelogram {
    pub dir_u: Angle,
    pub dir_v: Angle,
    pub len_u: f64,
    pub len_v: f64,
    pub anchor: Point2,
    pub semiperimeter: f64,
}

impl Parallelogram {
    pub fn side_u(&self) -> Point2 {
        self.dir_u.unit() * self.len_u
    }

    pub fn side_v(&self) -> Point2 {
        self.dir_v.unit() * self.len_v
    }

    /// Corners in order `anchor, +u, +u+v, +v`.
    pub fn corners(&self) -> [Point2; 4] {
        let (a, u, v) = (self.anchor, self.side_u(), self.side_v());
        [a, a + u, a + u + v, a + v]
    }

    /// Smallest signed distance from `p` to the four side lines, positive
    /// inside.
    pub fn signed_clearance(&self, p: Point2) -> f64 {
        let u = self.dir_u.unit();
        let v = self.dir_v.unit();
        // Normals pointing into the shape from the sides through the anchor.
        let nu = oriented_normal(u, v);
        let nv = oriented_normal(v, u);
        let hu = self.side_v().dot(nu);
        let hv = self.side_u().dot(nv);
        let du = (p - self.anchor).dot(nu);
        let dv = (p - self.anchor).dot(nv);
        du.min(hu - du).min(dv).min(hv - dv)
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        self.signed_clearance(p) >= -tol
    }

    /// Whether both parallelograms use the same pair of line directions.
    /// The minimal parallelogram for a direction pair is unique, so this
    /// identifies optima reached from different flush edges.
    pub fn same_directions(&self, other: &Parallelogram, angle_tol: f64) -> bool {
        let straight = line_direction_gap(self.dir_u, other.dir_u) <= angle_tol
            && line_direction_gap(self.dir_v, other.dir_v) <= angle_tol;
        let swapped = line_direction_gap(self.dir_u, other.dir_v) <= angle_tol
            && line_direction_gap(self.dir_v, other.dir_u) <= angle_tol;
        straight || swapped
    }
}

/// Unit normal to `dir` on the side `towards` points to.
fn oriented_normal(dir: Point2, towards: Point2) -> Point2 {
    let n = dir.perp();
    if n.dot(towards) < 0.0 {
        -n
    } else {
        n
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Enclosure {
    Rectangle(Rectangle),
    Parallelogram(Parallelogram),
}

impl Enclosure {
    pub fn semiperimeter(&self) -> f64 {
        match self {
            Enclosure::Rectangle(r) => r.semiperimeter,
            Enclosure::Parallelogram(p) => p.semiperimeter,
        }
    }

    pub fn as_parallelogram(&self) -> Parallelogram {
        match self {
            Enclosure::Rectangle(r) => r.to_parallelogram(),
            Enclosure::Parallelogram(p) => *p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnclosureResult {
    pub shape: Enclosure,
    /// Region edge lying in a side of `shape`.
    pub flush_edge_index: Option<usize>,
    pub candidates_examined: usize,
    /// Distinct enclosures within `eps_num` of the optimum, the returned one
    /// first.
    pub co_optima: Vec<Parallelogram>,
}

impl EnclosureResult {
    pub fn semiperimeter(&self) -> f64 {
        self.shape.semiperimeter()
    }
}

const DIRECTION_TOL: f64 = 1e-7;
const MAX_CO_OPTIMA: usize = 256;

/// The minimal parallelogram whose sides run along `theta_u` and `theta_v`.
///
/// With `s = |sin(θu − θv)|`, the side along `θu` spans the breadth between
/// the two supporting lines parallel to `θv`, so `len_u = w(θv + π/2) / s`,
/// and symmetrically for `len_v`.
pub fn parallelogram_for_directions(
    region: &ConvexRegion,
    theta_u: Angle,
    theta_v: Angle,
) -> Result<Parallelogram, EnclosureError> {
    let s = (theta_u - theta_v).sin().abs();
    if s <= ToleranceConfig::default().eps_geom {
        return Err(EnclosureError::ParallelDirections(s));
    }
    let u = theta_u.unit();
    let v = theta_v.unit();
    // Side-line normals, oriented so that walking along u (resp. v) from the
    // anchor crosses towards the far v-line (resp. u-line).
    let nu = oriented_normal(u, v);
    let nv = oriented_normal(v, u);
    let (a_lo, a_hi) = region.projection_range(nu);
    let (b_lo, b_hi) = region.projection_range(nv);

    // Corner where the low u-line meets the low v-line.
    let det = nu.cross(nv);
    let anchor = Point2::new(
        (a_lo * nv.y - b_lo * nu.y) / det,
        (nu.x * b_lo - nv.x * a_lo) / det,
    );
    let len_u = (b_hi - b_lo) / s;
    let len_v = (a_hi - a_lo) / s;
    Ok(Parallelogram {
        dir_u: theta_u,
        dir_v: theta_v,
        len_u,
        len_v,
        anchor,
        semiperimeter: len_u + len_v,
    })
}

/// Semiperimeters within this relative gap are treated as ties.
fn tie_tol(value: f64) -> f64 {
    if value.is_finite() {
        64.0 * f64::EPSILON * value.abs().max(1.0)
    } else {
        0.0
    }
}

/// Minimum-perimeter enclosing rectangle.
pub fn min_rectangle(region: &ConvexRegion) -> EnclosureResult {
    min_rectangle_with(region, &ToleranceConfig::default())
}

pub fn min_rectangle_with(region: &ConvexRegion, tol: &ToleranceConfig) -> EnclosureResult {
    if region.degeneracy() == Degeneracy::Point {
        let r = Rectangle::for_axis(region, Angle::ZERO);
        return EnclosureResult {
            shape: Enclosure::Rectangle(r),
            flush_edge_index: None,
            candidates_examined: 1,
            co_optima: vec![r.to_parallelogram()],
        };
    }
    let candidates: Vec<(usize, Rectangle)> = (0..region.edge_count())
        .into_par_iter()
        .map(|i| {
            let (a, b) = region.edge(i);
            let axis = Angle::from_radians((b - a).angle());
            (i, Rectangle::for_axis(region, axis))
        })
        .collect();

    let (best_i, best) = candidates
        .iter()
        .copied()
        .reduce(|acc, c| {
            if c.1.semiperimeter < acc.1.semiperimeter - tie_tol(acc.1.semiperimeter) {
                c
            } else {
                acc
            }
        })
        .expect("a non-point region has edges");

    let mut co_optima = vec![best.to_parallelogram()];
    for (_, r) in &candidates {
        if r.semiperimeter <= best.semiperimeter + tol.eps_num {
            push_distinct(&mut co_optima, r.to_parallelogram());
        }
    }
    EnclosureResult {
        shape: Enclosure::Rectangle(best),
        flush_edge_index: Some(best_i),
        candidates_examined: candidates.len(),
        co_optima,
    }
}

fn push_distinct(list: &mut Vec<Parallelogram>, p: Parallelogram) {
    if list.len() < MAX_CO_OPTIMA && !list.iter().any(|q| q.same_directions(&p, DIRECTION_TOL)) {
        list.push(p);
    }
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    semiperimeter: f64,
    edge: usize,
    phi: f64,
}

struct EdgeScan {
    best: Candidate,
    near: Vec<Candidate>,
    intervals: usize,
}

/// Minimum-perimeter enclosing parallelogram of a polygon.
pub fn min_parallelogram(region: &ConvexRegion) -> Result<EnclosureResult, EnclosureError> {
    min_parallelogram_with(region, &ToleranceConfig::default())
}

/// As [`min_parallelogram`], collecting every distinct optimum within
/// `tol.eps_num` into `co_optima`. Ties go to the smaller flush edge index,
/// then to the smaller angle between the two side directions.
pub fn min_parallelogram_with(
    region: &ConvexRegion,
    tol: &ToleranceConfig,
) -> Result<EnclosureResult, EnclosureError> {
    if !region.is_polygon() {
        return Err(EnclosureError::Degenerate(region.degeneracy()));
    }
    let n = region.len();
    let scans: Vec<EdgeScan> = (0..n)
        .into_par_iter()
        .map(|k| scan_flush_edge(region, k, tol.eps_num))
        .collect();

    let mut best = scans[0].best;
    for scan in &scans[1..] {
        let c = scan.best;
        if c.semiperimeter < best.semiperimeter - tie_tol(best.semiperimeter) {
            best = c;
        }
    }
    let shape = flush_parallelogram(region, best.edge, best.phi)?;

    let mut near: Vec<Candidate> = scans
        .iter()
        .flat_map(|s| s.near.iter().copied())
        .filter(|c| c.semiperimeter <= best.semiperimeter + tol.eps_num)
        .collect();
    near.sort_by(|a, b| {
        a.semiperimeter
            .total_cmp(&b.semiperimeter)
            .then(a.edge.cmp(&b.edge))
    });
    let mut co_optima = vec![shape];
    for c in near {
        if co_optima.len() >= MAX_CO_OPTIMA {
            break;
        }
        let p = flush_parallelogram(region, c.edge, c.phi)?;
        push_distinct(&mut co_optima, p);
    }

    Ok(EnclosureResult {
        shape: Enclosure::Parallelogram(shape),
        flush_edge_index: Some(best.edge),
        candidates_examined: scans.iter().map(|s| s.intervals).sum(),
        co_optima,
    })
}

fn flush_parallelogram(
    region: &ConvexRegion,
    edge: usize,
    phi: f64,
) -> Result<Parallelogram, EnclosureError> {
    let (a, b) = region.edge(edge);
    let theta_u = Angle::from_radians((b - a).angle());
    parallelogram_for_directions(region, theta_u, theta_u + phi)
}

/// Sweeps the second side direction through `(0, π)` with one side flush
/// with edge `k`.
fn scan_flush_edge(region: &ConvexRegion, k: usize, eps_num: f64) -> EdgeScan {
    let verts = region.vertices();
    let n = verts.len();
    let origin = verts[k];
    let u = (verts[(k + 1) % n] - origin) * (1.0 / (verts[(k + 1) % n] - origin).norm());
    let local = |p: Point2| {
        let d = p - origin;
        Point2::new(d.dot(u), d.dot(u.perp()))
    };
    let height = verts
        .iter()
        .map(|&p| local(p).y)
        .fold(f64::NEG_INFINITY, f64::max)
        - verts.iter().map(|&p| local(p).y).fold(f64::INFINITY, f64::min);

    // Edge directions relative to edge k, walking counterclockwise.
    // Edges turning by less than π move the lower caliper at φ = δ; the
    // others move the upper caliper at φ = δ − π.
    let mut lower_events: Vec<(f64, usize)> = Vec::with_capacity(n);
    let mut upper_events: Vec<(f64, usize)> = Vec::with_capacity(n);
    let mut last = 0.0f64;
    for step in 0..n {
        let j = (k + step) % n;
        let e = local(verts[(j + 1) % n]) - local(verts[j]);
        let mut delta = if step == 0 {
            0.0
        } else {
            e.y.atan2(e.x).rem_euclid(2.0 * PI)
        };
        delta = delta.max(last);
        last = delta;
        if delta < PI {
            lower_events.push((delta, j));
        } else {
            upper_events.push((delta - PI, j));
        }
    }

    let mut lower = k;
    let mut upper = upper_events.first().map_or(k, |&(_, j)| j);
    let mut best = Candidate {
        semiperimeter: f64::INFINITY,
        edge: k,
        phi: FRAC_PI_2,
    };
    let mut near: Vec<Candidate> = Vec::new();
    let mut intervals = 0usize;
    let mut lo = 0.0f64;
    let (mut ia, mut ib) = (0usize, 0usize);

    let mut eval = |lo: f64, hi: f64, upper: usize, lower: usize| {
        if hi <= lo {
            return;
        }
        intervals += 1;
        let d = local(verts[upper]) - local(verts[lower]);
        if let Some((phi, sp)) = interval_minimum(height, d.y, -d.x, lo, hi) {
            let c = Candidate {
                semiperimeter: sp,
                edge: k,
                phi,
            };
            if sp < best.semiperimeter - tie_tol(best.semiperimeter) {
                best = c;
                near.retain(|o| o.semiperimeter <= sp + eps_num);
            }
            if sp <= best.semiperimeter + eps_num {
                near.push(c);
            }
        }
    };

    loop {
        let next_a = lower_events.get(ia).copied();
        let next_b = upper_events.get(ib).copied();
        let (phi, j, is_lower) = match (next_a, next_b) {
            (None, None) => break,
            (Some(a), None) => (a.0, a.1, true),
            (None, Some(b)) => (b.0, b.1, false),
            (Some(a), Some(b)) => {
                if a.0 <= b.0 {
                    (a.0, a.1, true)
                } else {
                    (b.0, b.1, false)
                }
            }
        };
        let hi = phi.max(lo);
        eval(lo, hi, upper, lower);
        if is_lower {
            lower = (j + 1) % n;
            ia += 1;
        } else {
            upper = (j + 1) % n;
            ib += 1;
        }
        lo = hi;
    }
    eval(lo, PI, upper, lower);

    EdgeScan {
        best,
        near,
        intervals,
    }
}

/// Minimum of `(c0 + c1·cos φ + c2·sin φ) / sin φ` over `[lo, hi] ⊂ [0, π]`.
fn interval_minimum(c0: f64, c1: f64, c2: f64, lo: f64, hi: f64) -> Option<(f64, f64)> {
    let value = |phi: f64| {
        let (s, c) = phi.sin_cos();
        (c0 + c1 * c + c2 * s) / s
    };
    let phi = (-c1 / c0).clamp(-1.0, 1.0).acos().clamp(lo, hi);
    const GUARD: f64 = 1e-6;
    if phi.sin() >= GUARD {
        return Some((phi, value(phi)));
    }
    // Near-parallel sides: the closed form is unreliable, search directly.
    let (a, b) = (lo.max(GUARD), hi.min(PI - GUARD));
    if a > b {
        return None;
    }
    Some(golden_section_min(value, a, b, 1e-12))
}

/// Exhaustive oracle: scans both side directions on a `grid_deg` grid and
/// refines the best grid points by compass search down to 1e-9 rad. Makes
/// no flushness assumption.
pub fn brute_force_min_parallelogram(
    region: &ConvexRegion,
    grid_deg: f64,
) -> Result<Parallelogram, EnclosureError> {
    if !(grid_deg > 0.0 && grid_deg <= 5.0) {
        return Err(EnclosureError::BadGrid(grid_deg));
    }
    let m = (180.0 / grid_deg).round().max(2.0) as usize;
    let step = PI / m as f64;
    // breadth across lines of direction θ_i
    let across: Vec<f64> = (0..m)
        .map(|i| region.width(Angle::from_radians(i as f64 * step + FRAC_PI_2)))
        .collect();
    let sines: Vec<f64> = (0..m).map(|j| (j as f64 * step).sin()).collect();

    const STARTS: usize = 24;
    let mut grid: Vec<(f64, usize, usize)> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| {
            let across = &across;
            let sines = &sines;
            (1..m).map(move |j| ((across[i] + across[(i + j) % m]) / sines[j], i, j))
        })
        .collect();
    let keep = STARTS.min(grid.len());
    grid.select_nth_unstable_by(keep - 1, |a, b| a.0.total_cmp(&b.0));
    grid.truncate(keep);
    grid.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let objective = |tu: f64, tv: f64| {
        let s = (tv - tu).sin().abs();
        if s < 1e-12 {
            return f64::INFINITY;
        }
        (region.width(Angle::from_radians(tu + FRAC_PI_2))
            + region.width(Angle::from_radians(tv + FRAC_PI_2)))
            / s
    };

    let refined = grid
        .par_iter()
        .map(|&(_, i, j)| {
            let tu = i as f64 * step;
            compass_search(&objective, tu, tu + j as f64 * step, step)
        })
        .collect::<Vec<_>>();
    let (tu, tv, _) = refined
        .into_iter()
        .reduce(|a, b| if b.2 < a.2 { b } else { a })
        .expect("grid is non-empty");
    parallelogram_for_directions(region, Angle::from_radians(tu), Angle::from_radians(tv))
}

fn compass_search<F>(f: &F, mut x: f64, mut y: f64, mut step: f64) -> (f64, f64, f64)
where
    F: Fn(f64, f64) -> f64,
{
    const MOVES: [(f64, f64); 8] = [
        (1.0, 0.0),
        (-1.0, 0.0),
        (0.0, 1.0),
        (0.0, -1.0),
        (1.0, 1.0),
        (-1.0, -1.0),
        (1.0, -1.0),
        (-1.0, 1.0),
    ];
    let mut fx = f(x, y);
    while step > 1e-9 {
        let mut improved = false;
        for (dx, dy) in MOVES {
            let (nx, ny) = (x + dx * step, y + dy * step);
            let v = f(nx, ny);
            if v < fx {
                x = nx;
                y = ny;
                fx = v;
                improved = true;
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (x, y, fx)
}
