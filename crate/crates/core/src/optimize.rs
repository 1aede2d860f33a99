//! One-dimensional search helpers.

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for the minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops once the bracket is narrower than `tol`; returns the best abscissa
/// seen and its value.
pub fn golden_section_min<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    assert!(lo <= hi, "empty bracket [{lo}, {hi}]");
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        // Bracket stops shrinking once it is a few ulps wide.
        if x1 >= x2 {
            break;
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let (x, v) = golden_section_min(|t| -f(t), lo, hi, tol);
    (x, -v)
}

/// Newton iteration on `g` with derivative `dg`, kept inside `[lo, hi]` by
/// bisection fallback. `g(lo)` and `g(hi)` must differ in sign.
pub fn safeguarded_newton<G, D>(g: G, dg: D, mut lo: f64, mut hi: f64, x0: f64) -> f64
where
    G: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let g_lo = g(lo);
    let mut x = x0.clamp(lo, hi);
    for _ in 0..100 {
        let gx = g(x);
        if gx == 0.0 {
            return x;
        }
        if (gx < 0.0) == (g_lo < 0.0) {
            lo = x;
        } else {
            hi = x;
        }
        let step = gx / dg(x);
        let next = x - step;
        x = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if step.abs() <= 4.0 * f64::EPSILON * x.abs().max(1.0) || hi - lo <= f64::EPSILON {
            break;
        }
    }
    x
}
