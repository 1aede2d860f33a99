//! Seeded random convex polygons for randomized checks.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{convex_hull, ConvexRegion, Point2};

/// Smallest and largest vertex counts produced.
pub const MIN_VERTICES: usize = 5;
pub const MAX_VERTICES: usize = 50;

/// A random convex polygon with 5 to 50 vertices.
///
/// Even draws sample sorted angles on a random ellipse, odd draws take the
/// hull of uniform points in a random box (retried until the vertex count is
/// in range). Both are rotated and translated at random.
pub fn random_convex_polygon(rng: &mut impl Rng) -> ConvexRegion {
    let region = if rng.gen_bool(0.5) {
        ellipse_polygon(rng)
    } else {
        loop {
            let r = point_cloud_hull(rng);
            if (MIN_VERTICES..=MAX_VERTICES).contains(&r.len()) {
                break r;
            }
        }
    };
    let shift = Point2::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
    region.rotate(rng.gen_range(0.0..TAU)).translate(shift)
}

fn ellipse_polygon(rng: &mut impl Rng) -> ConvexRegion {
    let k = rng.gen_range(MIN_VERTICES..=MAX_VERTICES);
    let (a, b) = (rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0));
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..TAU)).collect();
        angles.sort_by(f64::total_cmp);
        let pts: Vec<Point2> = angles
            .iter()
            .map(|&t| Point2::new(a * t.cos(), b * t.sin()))
            .collect();
        let hull = convex_hull(&pts).expect("finite points");
        if hull.len() == k {
            return hull;
        }
    }
}

fn point_cloud_hull(rng: &mut impl Rng) -> ConvexRegion {
    let count = rng.gen_range(8..200);
    let (w, h) = (rng.gen_range(0.3..3.0), rng.gen_range(0.3..3.0));
    let pts: Vec<Point2> = (0..count)
        .map(|_| Point2::new(rng.gen_range(0.0..w), rng.gen_range(0.0..h)))
        .collect();
    convex_hull(&pts).expect("finite points")
}

/// `count` polygons from a fixed seed.
pub fn random_corpus(seed: u64, count: usize) -> Vec<ConvexRegion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_convex_polygon(&mut rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_in_range() {
        let a = random_corpus(7, 60);
        assert_eq!(a, random_corpus(7, 60));
        for r in &a {
            assert!(r.is_polygon());
            assert!((MIN_VERTICES..=MAX_VERTICES).contains(&r.len()));
        }
        assert_ne!(a, random_corpus(8, 60));
    }
}
