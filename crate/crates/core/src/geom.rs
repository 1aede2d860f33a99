//! Planar convex-polygon kernel.
//!
//! Every region handled by the crate is a [`ConvexRegion`]: a counterclockwise
//! vertex cycle that may collapse to a segment or a single point. Regions are
//! only ever produced by [`convex_hull`], so the strict-convexity and spacing
//! invariants hold by construction.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("no points given")]
    Empty,
    #[error("non-finite coordinate in point {index}")]
    NonFinite { index: usize },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("region is degenerate ({0:?}) where a polygon is required")]
    Degenerate(Degeneracy),
}

/// A point (or displacement) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Point at distance `r` from the origin in direction `theta`.
    #[inline]
    pub fn polar(r: f64, theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        Point2::new(r * c, r * s)
    }

    #[inline]
    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product; positive when `o` is
    /// counterclockwise from `self`.
    #[inline]
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    /// Direction of this vector as an angle in `(-π, π]`.
    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn rotate(self, theta: f64) -> Point2 {
        let (s, c) = theta.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Point2 {
    fn add_assign(&mut self, o: Point2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// An angle in radians.
///
/// Construction keeps the raw value; [`Angle::normalized`] maps it to
/// `[0, 2π)` and [`Angle::line_direction`] to `[0, π)` for undirected lines.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const RIGHT: Angle = Angle(FRAC_PI_2);

    pub const fn from_radians(theta: f64) -> Self {
        Angle(theta)
    }

    pub fn from_degrees(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    pub const fn radians(self) -> f64 {
        self.0
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn normalized(self) -> Angle {
        Angle(wrap(self.0, TAU))
    }

    /// Direction of an undirected line, in `[0, π)`.
    pub fn line_direction(self) -> Angle {
        Angle(wrap(self.0, PI))
    }

    /// Unit vector `(cos θ, sin θ)`.
    pub fn unit(self) -> Point2 {
        Point2::polar(1.0, self.0)
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }
}

impl Add<f64> for Angle {
    type Output = Angle;
    fn add(self, rad: f64) -> Angle {
        Angle(self.0 + rad)
    }
}

impl Sub for Angle {
    type Output = f64;
    fn sub(self, o: Angle) -> f64 {
        self.0 - o.0
    }
}

fn wrap(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    // rem_euclid can round up to exactly `period` for tiny negative inputs
    if r >= period {
        0.0
    } else {
        r
    }
}

/// Smallest distance between two undirected line directions.
pub fn line_direction_gap(a: Angle, b: Angle) -> f64 {
    let d = wrap(a.0 - b.0, PI);
    d.min(PI - d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Degeneracy {
    Point,
    Segment,
    Polygon,
}

/// Numerical tolerances shared by construction, comparison and the
/// approximation pipelines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Collinearity and vertex-spacing threshold (length units).
    pub eps_geom: f64,
    /// Threshold for comparisons in reports (co-optima, convexity gaps).
    pub eps_num: f64,
    /// Slack added to costs of polygonal stand-ins for curved figures.
    pub eps_approx: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            eps_geom: 1e-9,
            eps_num: 1e-6,
            eps_approx: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<(), GeomError> {
        let positive = [self.eps_geom, self.eps_num, self.eps_approx]
            .iter()
            .all(|e| e.is_finite() && *e > 0.0);
        if !positive {
            return Err(GeomError::OutOfRange(
                "tolerances must be finite and strictly positive".into(),
            ));
        }
        if self.eps_geom > self.eps_num {
            return Err(GeomError::OutOfRange("eps_geom must not exceed eps_num".into()));
        }
        Ok(())
    }

    pub fn with_eps_num(mut self, eps_num: f64) -> Self {
        self.eps_num = eps_num;
        self
    }
}

/// A convex region given by its counterclockwise vertex cycle.
///
/// In JSON it is `{"vertices": [[x, y], ...]}`; reading takes the convex
/// hull of the listed points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolygonRecord", into = "PolygonRecord")]
pub struct ConvexRegion {
    vertices: Vec<Point2>,
    degeneracy: Degeneracy,
}

#[derive(Serialize, Deserialize)]
struct PolygonRecord {
    vertices: Vec<Point2>,
}

impl TryFrom<PolygonRecord> for ConvexRegion {
    type Error = GeomError;

    fn try_from(r: PolygonRecord) -> Result<Self, GeomError> {
        convex_hull(&r.vertices)
    }
}

impl From<ConvexRegion> for PolygonRecord {
    fn from(c: ConvexRegion) -> Self {
        PolygonRecord { vertices: c.vertices }
    }
}

impl ConvexRegion {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn degeneracy(&self) -> Degeneracy {
        self.degeneracy
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_polygon(&self) -> bool {
        self.degeneracy == Degeneracy::Polygon
    }

    /// The single point, if the region has collapsed to one.
    pub fn as_point(&self) -> Option<Point2> {
        match self.degeneracy {
            Degeneracy::Point => Some(self.vertices[0]),
            _ => None,
        }
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Directed boundary edges `(start, end)`. A segment has two edges (there
    /// and back), a point none.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = match self.degeneracy {
            Degeneracy::Point => 0,
            _ => self.vertices.len(),
        };
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_count(&self) -> usize {
        match self.degeneracy {
            Degeneracy::Point => 0,
            _ => self.vertices.len(),
        }
    }

    /// Boundary length. A segment counts twice its length, since its
    /// boundary is traversed both ways.
    pub fn perimeter(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(b)).sum()
    }

    pub fn area(&self) -> f64 {
        if self.degeneracy != Degeneracy::Polygon {
            return 0.0;
        }
        polygon_area(&self.vertices)
    }

    /// Support function: max of `⟨p, (cos θ, sin θ)⟩` over the region.
    pub fn support(&self, theta: Angle) -> f64 {
        self.support_dir(theta.unit())
    }

    pub(crate) fn support_dir(&self, dir: Point2) -> f64 {
        self.vertices
            .iter()
            .map(|p| p.dot(dir))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// `(min, max)` of the projections onto `dir`.
    pub fn projection_range(&self, dir: Point2) -> (f64, f64) {
        self.vertices
            .iter()
            .map(|p| p.dot(dir))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| {
                (lo.min(x), hi.max(x))
            })
    }

    /// Breadth between the two supporting lines with normal direction `theta`.
    pub fn width(&self, theta: Angle) -> f64 {
        let (lo, hi) = self.projection_range(theta.unit());
        hi - lo
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let s = self.vertices.iter().fold(Point2::ORIGIN, |acc, &p| acc + p);
        s * (1.0 / n)
    }

    pub fn translate(&self, d: Point2) -> ConvexRegion {
        self.map_vertices(|p| p + d)
    }

    pub fn rotate(&self, theta: f64) -> ConvexRegion {
        self.map_vertices(|p| p.rotate(theta))
    }

    pub fn scale(&self, k: f64) -> ConvexRegion {
        assert!(k > 0.0, "scale factor must be positive");
        self.map_vertices(|p| p * k)
    }

    fn map_vertices(&self, f: impl Fn(Point2) -> Point2) -> ConvexRegion {
        let pts: Vec<Point2> = self.vertices.iter().map(|&p| f(p)).collect();
        convex_hull(&pts).expect("image of a non-empty finite region")
    }

    /// Whether `p` lies inside the region or within `tol` of it.
    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        match self.degeneracy {
            Degeneracy::Point => self.vertices[0].distance(p) <= tol,
            Degeneracy::Segment => {
                segment_distance(p, self.vertices[0], self.vertices[1]) <= tol
            }
            Degeneracy::Polygon => self.edges().all(|(a, b)| {
                let e = b - a;
                e.cross(p - a) / e.norm() >= -tol
            }),
        }
    }

    pub fn require_polygon(&self) -> Result<(), GeomError> {
        if self.is_polygon() {
            Ok(())
        } else {
            Err(GeomError::Degenerate(self.degeneracy))
        }
    }
}

pub(crate) fn polygon_area(pts: &[Point2]) -> f64 {
    let n = pts.len();
    if n < 3 {
        return 0.0;
    }
    let o = pts[0];
    let twice: f64 = (1..n - 1).map(|i| (pts[i] - o).cross(pts[i + 1] - o)).sum();
    0.5 * twice
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.distance(a);
    }
    let t = ((p - a).dot(ab) / len2).clamp(0.0, 1.0);
    p.distance(a + ab * t)
}

/// Convex hull with the default tolerances.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexRegion, GeomError> {
    convex_hull_with(points, ToleranceConfig::default().eps_geom)
}

/// Convex hull (monotone chain). Vertices within `eps` of the line through
/// their neighbours, or closer than `eps` to the previous vertex, are
/// dropped. The cycle starts at the lexicographically smallest vertex.
pub fn convex_hull_with(points: &[Point2], eps: f64) -> Result<ConvexRegion, GeomError> {
    if points.is_empty() {
        return Err(GeomError::Empty);
    }
    if let Some(index) = points.iter().position(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite { index });
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();

    if pts.len() == 1 {
        return Ok(ConvexRegion {
            vertices: pts,
            degeneracy: Degeneracy::Point,
        });
    }

    // b is kept between a and p only if it is strictly right of a→p by more
    // than eps (lower chain; the upper chain runs on reversed input).
    let keeps = |a: Point2, b: Point2, p: Point2| {
        let ap = p - a;
        (b - a).cross(ap) > eps * ap.norm()
    };
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && !keeps(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && !keeps(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    let hull = clean_cycle(hull, eps);
    let degeneracy = match hull.len() {
        1 => Degeneracy::Point,
        2 => Degeneracy::Segment,
        _ => Degeneracy::Polygon,
    };
    let mut region = ConvexRegion {
        vertices: hull,
        degeneracy,
    };
    canonicalize(&mut region);
    Ok(region)
}

/// Repeatedly drops vertices that are too close to their predecessor or
/// within `eps` of the chord through their neighbours.
fn clean_cycle(mut v: Vec<Point2>, eps: f64) -> Vec<Point2> {
    loop {
        let n = v.len();
        if n <= 1 {
            return v;
        }
        if n == 2 {
            if v[0].distance(v[1]) <= eps {
                v.truncate(1);
            }
            return v;
        }
        let drop = (0..n).find(|&i| {
            let prev = v[(i + n - 1) % n];
            let cur = v[i];
            let next = v[(i + 1) % n];
            if cur.distance(prev) <= eps {
                return true;
            }
            let chord = next - prev;
            let len = chord.norm();
            len <= eps || (cur - prev).cross(chord) <= eps * len
        });
        match drop {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

fn canonicalize(region: &mut ConvexRegion) {
    let v = &mut region.vertices;
    if let Some(start) = (0..v.len()).min_by(|&i, &j| {
        v[i].x
            .total_cmp(&v[j].x)
            .then(v[i].y.total_cmp(&v[j].y))
    }) {
        v.rotate_left(start);
    }
}

fn check_open_right_angle(alpha: Angle, what: &str) -> Result<(), GeomError> {
    let a = alpha.radians();
    if !(a > 0.0 && a < FRAC_PI_2) {
        return Err(GeomError::OutOfRange(format!(
            "{what} must lie strictly between 0 and 90 degrees, got {} degrees",
            alpha.degrees()
        )));
    }
    Ok(())
}

/// Isosceles trapezoid cut from the triangle with base `BC = [(-1,0), (1,0)]`
/// and base angles `alpha`: the top edge `EF` is parallel to `BC` with
/// `|EF| / |BC| = kappa`.
///
/// The counterclockwise cycle is `B, C, F, E`, so edge 0 is `BC`.
pub fn make_trapezoid(alpha: Angle, kappa: f64) -> Result<ConvexRegion, GeomError> {
    check_open_right_angle(alpha, "trapezoid base angle")?;
    if !(kappa > 0.0 && kappa < 1.0) {
        return Err(GeomError::OutOfRange(format!(
            "kappa must lie in (0, 1), got {kappa}"
        )));
    }
    let h = (1.0 - kappa) * alpha.radians().tan();
    let b = Point2::new(-1.0, 0.0);
    let c = Point2::new(1.0, 0.0);
    let f = Point2::new(kappa, h);
    let e = Point2::new(-kappa, h);
    let region = convex_hull(&[b, c, f, e])?;
    if region.len() != 4 {
        return Err(GeomError::OutOfRange(format!(
            "trapezoid with alpha={} deg, kappa={kappa} collapses below vertex spacing",
            alpha.degrees()
        )));
    }
    Ok(region)
}

/// Inscribed polygon of the width-1 Reuleaux triangle over the equilateral
/// triangle `B = (-1/2, 0)`, `C = (1/2, 0)`, `A = (0, √3/2)`. Each arc is cut
/// into `n_per_arc` equal pieces.
pub fn make_reuleaux(n_per_arc: usize) -> Result<ConvexRegion, GeomError> {
    if n_per_arc == 0 {
        return Err(GeomError::OutOfRange("n_per_arc must be at least 1".into()));
    }
    let [a, b, c] = reuleaux_corners();
    // (centre, first endpoint, start angle); each arc spans 60 degrees ccw.
    let arcs = [
        (a, b, 4.0 * PI / 3.0),
        (b, c, 0.0),
        (c, a, 2.0 * PI / 3.0),
    ];
    let step = (PI / 3.0) / n_per_arc as f64;
    let mut pts = Vec::with_capacity(3 * n_per_arc);
    for (centre, first, start) in arcs {
        pts.push(first);
        for k in 1..n_per_arc {
            pts.push(centre + Point2::polar(1.0, start + step * k as f64));
        }
    }
    convex_hull(&pts)
}

/// `[A, B, C]` of the Reuleaux construction.
pub fn reuleaux_corners() -> [Point2; 3] {
    [
        Point2::new(0.0, 3f64.sqrt() / 2.0),
        Point2::new(-0.5, 0.0),
        Point2::new(0.5, 0.0),
    ]
}

/// Regular `n`-gon inscribed in the circle of diameter 1 about the origin,
/// with a vertex at angle 0.
pub fn make_disk(n: usize) -> Result<ConvexRegion, GeomError> {
    if n < 3 {
        return Err(GeomError::OutOfRange(format!("disk needs n >= 3, got {n}")));
    }
    let pts: Vec<Point2> = (0..n)
        .map(|k| Point2::polar(0.5, TAU * k as f64 / n as f64))
        .collect();
    convex_hull(&pts)
}

/// Cap of the unit-diameter disk cut off by a chord subtending the centre
/// angle `2·alpha`. The chord lies on the x-axis, symmetric about the
/// origin, with the arc above it; the arc is split into `n` equal pieces.
///
/// Chord length is `sin α`, cap height `(1 − cos α)/2`, arc length `α`.
pub fn make_circular_cap(alpha: Angle, n: usize) -> Result<ConvexRegion, GeomError> {
    let a = alpha.radians();
    if !(a > 0.0 && a <= FRAC_PI_2) {
        return Err(GeomError::OutOfRange(format!(
            "cap half-angle must lie in (0, 90] degrees, got {} degrees",
            alpha.degrees()
        )));
    }
    if n == 0 {
        return Err(GeomError::OutOfRange("cap needs n >= 1".into()));
    }
    let centre = Point2::new(0.0, -a.cos() / 2.0);
    let half = a.sin() / 2.0;
    let mut pts = vec![Point2::new(half, 0.0), Point2::new(-half, 0.0)];
    let step = 2.0 * a / n as f64;
    pts.extend((1..n).map(|k| centre + Point2::polar(0.5, FRAC_PI_2 - a + step * k as f64)));
    convex_hull(&pts)
}

/// Real root of `x³ + x² + x − 1 = 0`, by radicals plus one Newton step.
pub fn trapezoid_cubic_root() -> f64 {
    let r = 297f64.sqrt();
    let x = ((r + 17.0).cbrt() - (r - 17.0).cbrt() - 1.0) / 3.0;
    let f = ((x + 1.0) * x + 1.0) * x - 1.0;
    let df = (3.0 * x + 2.0) * x + 1.0;
    x - f / df
}

/// Base angle of the balanced trapezoid: `arcsin` of [`trapezoid_cubic_root`].
pub fn solve_trapezoid_alpha() -> Angle {
    Angle::from_radians(trapezoid_cubic_root().asin())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn unit_square() -> ConvexRegion {
        convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn hull_of_single_point() {
        let r = convex_hull(&[Point2::new(0.0, 0.0)]).unwrap();
        assert_eq!(r.degeneracy(), Degeneracy::Point);
        assert_eq!(r.as_point(), Some(Point2::ORIGIN));
        assert_eq!(r.perimeter(), 0.0);
    }

    #[test]
    fn hull_drops_interior_point() {
        let r = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
            Point2::new(0.5, 0.5),
        ])
        .unwrap();
        assert_eq!(r.vertices(), unit_square().vertices());
        assert_eq!(r.len(), 4);
        assert_eq!(r.vertices()[0], Point2::ORIGIN);
        assert_eq!(r.vertices()[1], Point2::new(1.0, 0.0));
    }

    #[test]
    fn hull_errors() {
        assert_eq!(convex_hull(&[]), Err(GeomError::Empty));
        assert_eq!(
            convex_hull(&[Point2::new(0.0, 0.0), Point2::new(f64::NAN, 1.0)]),
            Err(GeomError::NonFinite { index: 1 })
        );
    }

    #[test]
    fn hull_collinear_gives_segment() {
        let r = convex_hull(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 1.0 + 1e-12),
        ])
        .unwrap();
        assert_eq!(r.degeneracy(), Degeneracy::Segment);
        assert!(close(r.perimeter(), 2.0 * 8f64.sqrt(), 1e-12));
        assert!(close(r.width(Angle::from_degrees(45.0)), 8f64.sqrt(), 1e-12));
    }

    #[test]
    fn square_support_and_width() {
        let sq = unit_square();
        assert!(close(sq.perimeter(), 4.0, 1e-15));
        assert!(close(sq.support(Angle::ZERO), 1.0, 1e-15));
        assert!(close(sq.support(Angle::from_degrees(45.0)), 2f64.sqrt(), 1e-15));
        assert!(close(sq.width(Angle::ZERO), 1.0, 1e-15));
        assert!(close(sq.area(), 1.0, 1e-15));
    }

    #[test]
    fn angle_normalization() {
        assert!(close(Angle::from_radians(-0.5).normalized().radians(), TAU - 0.5, 1e-15));
        assert!(close(Angle::from_radians(PI + 0.25).line_direction().radians(), 0.25, 1e-15));
        assert_eq!(Angle::from_radians(-1e-300).normalized().radians(), 0.0);
        assert!(close(line_direction_gap(Angle::from_radians(0.01), Angle::from_radians(PI - 0.01)), 0.02, 1e-15));
    }

    #[test]
    fn cubic_root_matches_paper_digits() {
        let x = trapezoid_cubic_root();
        assert!(close(x, 0.5436, 1e-4));
        assert!(((x + 1.0) * x + 1.0) * x - 1.0 < 1e-14);
        let alpha = solve_trapezoid_alpha();
        assert!(close(alpha.degrees(), 32.9351, 1e-4));
        let s = alpha.sin();
        assert!((s * s * s + s * s + s - 1.0).abs() < 1e-13);
    }

    #[test]
    fn cubic_root_agrees_with_newton_from_scratch() {
        let mut x = 0.5f64;
        for _ in 0..60 {
            x -= (((x + 1.0) * x + 1.0) * x - 1.0) / ((3.0 * x + 2.0) * x + 1.0);
        }
        assert!(close(trapezoid_cubic_root(), x, 1e-14));
    }

    #[test]
    fn trapezoid_layout() {
        let alpha = solve_trapezoid_alpha();
        let kappa = (2.0 * alpha.radians()).cos();
        assert!(close(kappa, 0.4088, 1e-4));
        let t = make_trapezoid(alpha, kappa).unwrap();
        let v = t.vertices();
        assert_eq!(v[0], Point2::new(-1.0, 0.0));
        assert_eq!(v[1], Point2::new(1.0, 0.0));
        let ef = v[2].distance(v[3]);
        assert!(close(ef, 2.0 * kappa, 1e-15));
        assert!(close(ef, 0.8176, 1e-4));
        let gap = v[2].y;
        assert!(close(gap, (1.0 - kappa) * alpha.radians().tan(), 1e-15));
        assert!(close(gap, 0.3829, 1e-4));
        // |BC| + |BE| + |EF| + |FC|
        let expected = 2.0 + 2.0 * kappa + 2.0 * (1.0 - kappa) / alpha.cos();
        assert!(close(t.perimeter(), expected, 1e-14));
        assert!(close(t.perimeter(), 4.2264, 1e-4));
    }

    #[test]
    fn trapezoid_rejects_bad_parameters() {
        assert!(make_trapezoid(Angle::from_degrees(0.0), 0.5).is_err());
        assert!(make_trapezoid(Angle::from_degrees(90.0), 0.5).is_err());
        assert!(make_trapezoid(Angle::from_degrees(45.0), 1.0).is_err());
        assert!(make_trapezoid(Angle::from_degrees(45.0), 0.0).is_err());
        // E and F collapse onto B and C
        assert!(make_trapezoid(Angle::from_degrees(45.0), 1.0 - 1e-12).is_err());
    }

    #[test]
    fn reuleaux_single_chord_is_triangle() {
        let r = make_reuleaux(1).unwrap();
        assert_eq!(r.len(), 3);
        assert!(close(r.perimeter(), 3.0, 1e-15));
    }

    #[test]
    fn reuleaux_contains_corners() {
        let r = make_reuleaux(16).unwrap();
        for c in reuleaux_corners() {
            assert!(r.vertices().contains(&c));
        }
        assert_eq!(r.len(), 48);
    }

    #[test]
    fn reuleaux_perimeter_and_width_converge() {
        let r = make_reuleaux(2048).unwrap();
        assert!(close(r.perimeter(), PI, 1e-5));
        assert!(r.perimeter() < PI);
        let min_w = (0..360)
            .map(|d| r.width(Angle::from_degrees(d as f64)))
            .fold(f64::INFINITY, f64::min);
        assert!(min_w >= 1.0 - 1e-5);
        let r512 = make_reuleaux(512).unwrap();
        let dev = (0..3600)
            .map(|d| (r512.width(Angle::from_degrees(d as f64 / 10.0)) - 1.0).abs())
            .fold(0.0, f64::max);
        assert!(dev <= 2e-3);
    }

    #[test]
    fn disk_generator() {
        let sq = make_disk(4).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(close(sq.vertices()[0].distance(sq.vertices()[2]), 1.0, 1e-15));
        let d = make_disk(4096).unwrap();
        assert!(close(d.perimeter(), PI, 1e-5));
        for k in 0..720 {
            let w = d.width(Angle::from_degrees(k as f64 * 0.5));
            assert!(close(w, 1.0, 1e-5));
        }
    }

    #[test]
    fn generator_perimeters_increase_towards_pi() {
        let mut last = 0.0;
        for n in [8, 16, 64, 256, 1024, 4096] {
            let p = make_disk(n).unwrap().perimeter();
            assert!(p > last && p < PI);
            last = p;
        }
        last = 0.0;
        for n in [1, 2, 8, 64, 512, 2048] {
            let p = make_reuleaux(n).unwrap().perimeter();
            assert!(p > last && p < PI);
            last = p;
        }
    }

    #[test]
    fn circular_cap_dimensions() {
        let alpha = Angle::from_radians(0.5f64.atan());
        let cap = make_circular_cap(alpha, 4096).unwrap();
        let (xlo, xhi) = cap.projection_range(Point2::new(1.0, 0.0));
        let (ylo, yhi) = cap.projection_range(Point2::new(0.0, 1.0));
        assert!(close(xhi - xlo, 0.44721, 1e-5));
        assert!(close(ylo, 0.0, 1e-15));
        assert!(close(yhi, 0.05279, 1e-5));
        let arc = cap.perimeter() - (xhi - xlo);
        assert!(close(arc, alpha.radians(), 1e-7));

        let half = make_circular_cap(Angle::RIGHT, 1024).unwrap();
        let (xlo, xhi) = half.projection_range(Point2::new(1.0, 0.0));
        assert!(close(xhi - xlo, 1.0, 1e-12));
        assert!(close(half.support(Angle::RIGHT), 0.5, 1e-12));

        assert!(make_circular_cap(Angle::ZERO, 8).is_err());
        assert!(make_circular_cap(Angle::from_degrees(91.0), 8).is_err());
    }

    #[test]
    fn contains_with_tolerance() {
        let sq = unit_square();
        assert!(sq.contains(Point2::new(0.5, 0.5), 0.0));
        assert!(sq.contains(Point2::new(1.0 + 1e-10, 0.5), 1e-9));
        assert!(!sq.contains(Point2::new(1.1, 0.5), 1e-9));
    }
}
