//! Lower bounds, approximation ratios and the counterexample evaluations.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enclosure::{
    min_parallelogram_with, parallelogram_for_directions, EnclosureError, Parallelogram,
};
use crate::geom::{
    make_circular_cap, make_trapezoid, Angle, ConvexRegion, GeomError, ToleranceConfig,
};
use crate::optimize::{golden_section_max, safeguarded_newton};
use crate::sweep::{
    apply_sweep_with, plan_best_fan, plan_parallelogram_2sweep, plan_rectangle_2sweep, Sweep,
    SweepError, SweepPlan,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("{0}")]
    OutOfRange(String),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Enclosure(#[from] EnclosureError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

/// `per/2`: every sweep of length `x` lowers the integral of the enclosing
/// rectangle semiperimeter over orientations in `[0, π/2)` by at most `2x`,
/// and that integral equals the perimeter.
pub fn lower_bound_half_perimeter(region: &ConvexRegion) -> f64 {
    region.perimeter() / 2.0
}

/// Midpoint-rule version of the same bound:
/// `½ ∫₀^{π/2} (w(β) + w(β + π/2)) dβ` with `m` nodes.
pub fn lower_bound_integral(region: &ConvexRegion, m: usize) -> Result<f64, AnalysisError> {
    if m < 16 {
        return Err(AnalysisError::OutOfRange(format!(
            "quadrature needs at least 16 nodes, got {m}"
        )));
    }
    let h = FRAC_PI_2 / m as f64;
    let sum: f64 = (0..m)
        .map(|k| {
            let beta = Angle::from_radians((k as f64 + 0.5) * h);
            region.width(beta) + region.width(beta + FRAC_PI_2)
        })
        .sum();
    Ok(0.5 * h * sum)
}

/// Upper bound from the cheapest available plan against the `per/2` bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub lower_bound: f64,
    pub upper_cost: f64,
    pub upper_planner: &'static str,
    pub upper_plan: SweepPlan,
    pub ratio: f64,
    /// Cost and ratio of the rectangle 2-sweep alone.
    pub rectangle_cost: f64,
    pub rectangle_ratio: f64,
    pub provenance: &'static str,
    pub tolerances: ToleranceConfig,
}

pub fn ratio_report(region: &ConvexRegion) -> Result<BoundsReport, AnalysisError> {
    ratio_report_with(region, &ToleranceConfig::default())
}

pub fn ratio_report_with(
    region: &ConvexRegion,
    tol: &ToleranceConfig,
) -> Result<BoundsReport, AnalysisError> {
    let lower = lower_bound_half_perimeter(region);
    let ratio_of = |c: f64| if lower > 0.0 { c / lower } else { 1.0 };
    let rect = plan_rectangle_2sweep(region);
    let mut candidates = vec![("rectangle-2sweep", rect.clone())];
    if region.is_polygon() {
        candidates.push(("parallelogram-2sweep", plan_parallelogram_2sweep(region)?));
        candidates.push(("fan", plan_best_fan(region)?));
    }
    let (name, best) = candidates
        .into_iter()
        .reduce(|a, b| if b.1.planned_cost < a.1.planned_cost { b } else { a })
        .expect("rectangle plan always present");
    Ok(BoundsReport {
        lower_bound: lower,
        upper_cost: best.planned_cost,
        upper_planner: name,
        ratio: ratio_of(best.planned_cost),
        upper_plan: best,
        rectangle_cost: rect.planned_cost,
        rectangle_ratio: ratio_of(rect.planned_cost),
        provenance: "four-over-pi",
        tolerances: *tol,
    })
}

/// Semiperimeter of the enclosing rectangle with one side at angle `beta`.
pub fn oriented_semiperimeter(region: &ConvexRegion, beta: Angle) -> f64 {
    region.width(beta) + region.width(beta + FRAC_PI_2)
}

/// Largest excess, over `beta_grid` orientations in `[0, π)`, of the drop in
/// oriented rectangle semiperimeter caused by `sweep` over the bound
/// `x·(|cos(α − β)| + |sin(α − β)|)`, where `x` and `α` are the length and
/// direction of the sweep vector. Non-positive when the bound holds.
pub fn check_sweep_reduction(
    state: &ConvexRegion,
    sweep: &Sweep,
    beta_grid: usize,
) -> Result<f64, AnalysisError> {
    check_sweep_reduction_with(state, sweep, beta_grid, &ToleranceConfig::default())
}

pub fn check_sweep_reduction_with(
    state: &ConvexRegion,
    sweep: &Sweep,
    beta_grid: usize,
    tol: &ToleranceConfig,
) -> Result<f64, AnalysisError> {
    if beta_grid == 0 {
        return Err(AnalysisError::OutOfRange("empty orientation grid".into()));
    }
    let next = apply_sweep_with(state, sweep, tol)?;
    let x = sweep.cost();
    let alpha = sweep.vector_angle().radians();
    let excess: Vec<f64> = (0..beta_grid)
        .into_par_iter()
        .map(|k| {
            let beta = Angle::from_radians(k as f64 * PI / beta_grid as f64);
            let drop = oriented_semiperimeter(state, beta) - oriented_semiperimeter(&next, beta);
            let d = alpha - beta.radians();
            drop - x * (d.cos().abs() + d.sin().abs())
        })
        .collect();
    Ok(excess.into_iter().fold(f64::NEG_INFINITY, f64::max))
}

/// `(1 + tan α + tan β) − (1/cos α + 1/cos β)` for an obtuse pair
/// `0 < α ≤ β < π/2`, `α + β > π/2`.
///
/// Evaluated as `1 − cos α/(1 + sin α) − cos β/(1 + sin β)`, which keeps full
/// relative accuracy when both angles approach `π/2`.
pub fn check_obtuse_inequality(alpha: Angle, beta: Angle) -> Result<f64, AnalysisError> {
    let (a, b) = (alpha.radians(), beta.radians());
    if !(a > 0.0 && a <= b && b < FRAC_PI_2 && a + b > FRAC_PI_2) {
        return Err(AnalysisError::OutOfRange(format!(
            "need 0 < alpha <= beta < 90 deg and alpha + beta > 90 deg, got ({}, {}) deg",
            alpha.degrees(),
            beta.degrees()
        )));
    }
    let term = |t: f64| t.cos() / (1.0 + t.sin());
    Ok(1.0 - term(a) - term(b))
}

/// `|2 + (1 − cos 2α)·tan α − 2/cos α|`: zero exactly when the rectangle
/// and the rhombus enclosing the balanced trapezoid tie.
pub fn eq4_residual(alpha: Angle) -> f64 {
    let a = alpha.radians();
    (2.0 + (1.0 - (2.0 * a).cos()) * a.tan() - 2.0 / a.cos()).abs()
}

#[derive(Clone, Debug, Serialize)]
pub struct TrapezoidReport {
    pub alpha: Angle,
    pub alpha_deg: f64,
    pub kappa: f64,
    pub two_sweep_min: f64,
    pub three_sweep_cost: f64,
    pub ratio: f64,
    pub eq4_residual: f64,
    pub co_optima_count: usize,
    pub co_optima: Vec<Parallelogram>,
    pub provenance: &'static str,
    pub tolerances: ToleranceConfig,
}

pub fn trapezoid_report(alpha: Angle, kappa: f64) -> Result<TrapezoidReport, AnalysisError> {
    trapezoid_report_with(alpha, kappa, &ToleranceConfig::default())
}

pub fn trapezoid_report_with(
    alpha: Angle,
    kappa: f64,
    tol: &ToleranceConfig,
) -> Result<TrapezoidReport, AnalysisError> {
    let t = make_trapezoid(alpha, kappa)?;
    let enc = min_parallelogram_with(&t, tol)?;
    let three = crate::sweep::plan_fan(&t, 0)?.planned_cost;
    let two = enc.semiperimeter();
    Ok(TrapezoidReport {
        alpha,
        alpha_deg: alpha.degrees(),
        kappa,
        two_sweep_min: two,
        three_sweep_cost: three,
        ratio: two / three,
        eq4_residual: eq4_residual(alpha),
        co_optima_count: enc.co_optima.len(),
        co_optima: enc.co_optima,
        provenance: "trapezoid-balance",
        tolerances: *tol,
    })
}

/// Ratio of the best 2-sweep to the 3-sweep fan on the trapezoid, or `None`
/// outside the valid parameter range.
pub fn trapezoid_ratio(alpha: f64, kappa: f64) -> Option<f64> {
    let t = make_trapezoid(Angle::from_radians(alpha), kappa).ok()?;
    let two = min_parallelogram_with(&t, &ToleranceConfig::default())
        .ok()?
        .semiperimeter();
    Some(two / (t.perimeter() - 2.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub alpha: Angle,
    pub alpha_deg: f64,
    pub kappa: f64,
    pub ratio: f64,
    pub evaluations: usize,
    pub provenance: &'static str,
    pub tolerances: ToleranceConfig,
}

/// Default search box: 25° to 45° by 0.2 to 0.6.
pub fn default_search_ranges() -> ((Angle, Angle), (f64, f64)) {
    (
        (Angle::from_degrees(25.0), Angle::from_degrees(45.0)),
        (0.2, 0.6),
    )
}

/// Bracket width at which the refinement stops, in radians and in κ.
pub const SEARCH_TOL: f64 = 1e-9;

/// Maximizes [`trapezoid_ratio`] on a `grid × grid` lattice over the box,
/// then refines. The maximum lies on a narrow ridge where two enclosing
/// parallelograms tie, so the refinement follows the ridge: each lattice row
/// gets its best `κ` by golden-section search, and between the neighbours of
/// the best row that profile is maximized over `α` the same way. Ties go to
/// the lowest index, so the result depends only on the inputs.
pub fn search_trapezoid(
    alpha_range: (Angle, Angle),
    kappa_range: (f64, f64),
    grid: usize,
) -> Result<SearchResult, AnalysisError> {
    let (a0, a1) = (alpha_range.0.radians(), alpha_range.1.radians());
    let (k0, k1) = kappa_range;
    if !(a0 > 0.0 && a0 < a1 && a1 < FRAC_PI_2) {
        return Err(AnalysisError::OutOfRange(format!(
            "alpha range must satisfy 0 < a < b < 90 deg, got ({}, {}) deg",
            alpha_range.0.degrees(),
            alpha_range.1.degrees()
        )));
    }
    if !(k0 > 0.0 && k0 < k1 && k1 < 1.0) {
        return Err(AnalysisError::OutOfRange(format!(
            "kappa range must satisfy 0 < c < d < 1, got ({k0}, {k1})"
        )));
    }
    if grid < 20 {
        return Err(AnalysisError::OutOfRange(format!(
            "grid needs at least 20 points per axis, got {grid}"
        )));
    }
    let step_a = (a1 - a0) / (grid - 1) as f64;
    let step_k = (k1 - k0) / (grid - 1) as f64;
    let score = |a: f64, k: f64| trapezoid_ratio(a, k).unwrap_or(f64::NEG_INFINITY);
    let lattice: Vec<f64> = (0..grid * grid)
        .into_par_iter()
        .map(|idx| score(a0 + (idx / grid) as f64 * step_a, k0 + (idx % grid) as f64 * step_k))
        .collect();
    let evaluations = AtomicUsize::new(lattice.len());
    let score = |a: f64, k: f64| {
        evaluations.fetch_add(1, Ordering::Relaxed);
        score(a, k)
    };
    let kappa_bracket = |lo: f64, hi: f64| ((lo - 2.0 * step_k).max(k0), (hi + 2.0 * step_k).min(k1));
    // best κ on each lattice row, refined along the row
    let rows: Vec<(f64, f64)> = (0..grid)
        .into_par_iter()
        .map(|i| {
            let row = &lattice[i * grid..(i + 1) * grid];
            let j = (0..grid)
                .reduce(|x, y| if row[y] > row[x] { y } else { x })
                .expect("non-empty row");
            let gk = k0 + j as f64 * step_k;
            let (lo, hi) = kappa_bracket(gk, gk);
            let a = a0 + i as f64 * step_a;
            golden_section_max(|k| score(a, k), lo, hi, SEARCH_TOL)
        })
        .collect();
    let top = (0..grid)
        .reduce(|x, y| if rows[y].1 > rows[x].1 { y } else { x })
        .expect("non-empty grid");
    let (lo_row, hi_row) = (top.saturating_sub(1), (top + 1).min(grid - 1));
    let ks = rows[lo_row..=hi_row].iter().map(|r| r.0);
    let (klo, khi) = kappa_bracket(
        ks.clone().fold(f64::INFINITY, f64::min),
        ks.fold(f64::NEG_INFINITY, f64::max),
    );
    let ridge = |a: f64| golden_section_max(|k| score(a, k), klo, khi, SEARCH_TOL);
    let (alo, ahi) = (a0 + lo_row as f64 * step_a, a0 + hi_row as f64 * step_a);
    let (a, _) = golden_section_max(|a| ridge(a).1, alo, ahi, SEARCH_TOL);
    let (k, best) = ridge(a);
    let (a, k, best) = if best >= rows[top].1 {
        (a, k, best)
    } else {
        (a0 + top as f64 * step_a, rows[top].0, rows[top].1)
    };
    let evaluations = evaluations.into_inner();
    let alpha = Angle::from_radians(a);
    Ok(SearchResult {
        alpha,
        alpha_deg: alpha.degrees(),
        kappa: k,
        ratio: best,
        evaluations,
        provenance: "trapezoid-search-1.0715",
        tolerances: ToleranceConfig::default(),
    })
}

/// Maximizes the ratio along the balanced family `κ = cos 2α` by a lattice
/// scan followed by golden-section search between the neighbours of the
/// best node.
pub fn search_balanced_trapezoid(
    alpha_range: (Angle, Angle),
    grid: usize,
) -> Result<SearchResult, AnalysisError> {
    let (a0, a1) = (alpha_range.0.radians(), alpha_range.1.radians());
    if !(a0 > 0.0 && a0 < a1 && a1 < PI / 4.0) || grid < 20 {
        return Err(AnalysisError::OutOfRange(format!(
            "balanced search needs 0 < a < b < 45 deg and grid >= 20, got ({}, {}) deg, grid {grid}",
            alpha_range.0.degrees(),
            alpha_range.1.degrees()
        )));
    }
    let score = |a: f64| trapezoid_ratio(a, (2.0 * a).cos()).unwrap_or(f64::NEG_INFINITY);
    let step = (a1 - a0) / (grid - 1) as f64;
    let values: Vec<f64> = (0..grid).into_par_iter().map(|i| score(a0 + i as f64 * step)).collect();
    let i = (0..grid)
        .reduce(|i, j| if values[j] > values[i] { j } else { i })
        .expect("non-empty grid");
    let lo = a0 + i.saturating_sub(1) as f64 * step;
    let hi = a0 + (i + 1).min(grid - 1) as f64 * step;
    let mut evaluations = grid;
    let (a, ratio) = golden_section_max(
        |t| {
            evaluations += 1;
            score(t)
        },
        lo,
        hi,
        1e-12,
    );
    let alpha = Angle::from_radians(a);
    Ok(SearchResult {
        alpha,
        alpha_deg: alpha.degrees(),
        kappa: (2.0 * a).cos(),
        ratio,
        evaluations,
        provenance: "trapezoid-balance",
        tolerances: ToleranceConfig::default(),
    })
}

/// `f(α) = sin α + (1 − cos α)/2 − α`: the saving of the disk plan with cap
/// half-angle `α` over the bounding-square cost of 2.
pub fn disk_saving(alpha: f64) -> f64 {
    alpha.sin() + (1.0 - alpha.cos()) / 2.0 - alpha
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DiskMaximizer {
    pub alpha_star: Angle,
    pub f_star: f64,
    /// Resulting disk plan cost in the limit, `2 − f_star`.
    pub plan_cost: f64,
    pub provenance: &'static str,
}

/// Maximizes [`disk_saving`] on `(0, π/2)`: golden-section search to 1e-12,
/// then Newton on `f'(α) = cos α + sin α / 2 − 1`, since `f` is too flat at
/// its peak for comparisons of `f` alone to pin `α` below about 1e-8.
pub fn disk_maximizer_check() -> DiskMaximizer {
    let (x0, _) = golden_section_max(disk_saving, 0.0, FRAC_PI_2, 1e-12);
    let df = |a: f64| a.cos() + a.sin() / 2.0 - 1.0;
    let ddf = |a: f64| a.cos() / 2.0 - a.sin();
    let a = safeguarded_newton(df, ddf, 0.5, 1.2, x0);
    let f_star = disk_saving(a);
    DiskMaximizer {
        alpha_star: Angle::from_radians(a),
        f_star,
        plan_cost: 2.0 - f_star,
        provenance: "disk-cap-angle",
    }
}

/// Numeric evidence on the circular cap with half-angle `arctan(1/2)`.
#[derive(Clone, Debug, Serialize)]
pub struct CapReport {
    pub alpha: Angle,
    pub n: usize,
    /// `|sin α + (1 − cos α)/2 − tan α|`.
    pub identity_residual: f64,
    /// `tan α`, the semiperimeter conjectured to be minimal.
    pub conjectured_semiperimeter: f64,
    /// Rectangle on the chord, measured on the polygon.
    pub chord_rectangle_semiperimeter: f64,
    /// Rhombus with the chord as diagonal, measured on the polygon.
    pub rhombus_semiperimeter: f64,
    pub min_parallelogram_semiperimeter: f64,
    pub min_parallelogram: Parallelogram,
    pub matches_chord_rectangle: bool,
    pub matches_rhombus: bool,
    pub fan_cost: f64,
    /// Numeric minimum parallelogram semiperimeter over the fan cost.
    pub ratio: f64,
    /// `tan α` over the fan cost.
    pub conjectured_ratio: f64,
    /// `1/(2·arctan(1/2))`.
    pub limit_ratio: f64,
    pub status: &'static str,
    pub provenance: &'static str,
    pub tolerances: ToleranceConfig,
}

pub fn cap_report(n: usize) -> Result<CapReport, AnalysisError> {
    cap_report_with(n, &ToleranceConfig::default())
}

pub fn cap_report_with(n: usize, tol: &ToleranceConfig) -> Result<CapReport, AnalysisError> {
    if n < 64 {
        return Err(AnalysisError::OutOfRange(format!(
            "cap report needs n >= 64, got {n}"
        )));
    }
    let a = 0.5f64.atan();
    let alpha = Angle::from_radians(a);
    let identity_residual = (a.sin() + (1.0 - a.cos()) / 2.0 - a.tan()).abs();
    let cap = make_circular_cap(alpha, n)?;
    let rect = parallelogram_for_directions(&cap, Angle::ZERO, Angle::RIGHT)?.semiperimeter;
    let rhombus =
        parallelogram_for_directions(&cap, alpha, Angle::from_radians(PI - a))?.semiperimeter;
    let enc = min_parallelogram_with(&cap, tol)?;
    let min = enc.semiperimeter();
    let fan = plan_best_fan(&cap)?.planned_cost;
    let close = |x: f64| (x - min).abs() <= tol.eps_num;
    Ok(CapReport {
        alpha,
        n,
        identity_residual,
        conjectured_semiperimeter: a.tan(),
        chord_rectangle_semiperimeter: rect,
        rhombus_semiperimeter: rhombus,
        min_parallelogram_semiperimeter: min,
        min_parallelogram: enc.shape.as_parallelogram(),
        matches_chord_rectangle: close(rect),
        matches_rhombus: close(rhombus),
        fan_cost: fan,
        ratio: min / fan,
        conjectured_ratio: a.tan() / fan,
        limit_ratio: 1.0 / (2.0 * a),
        status: "conjectural",
        provenance: "cap-conjecture",
        tolerances: *tol,
    })
}
