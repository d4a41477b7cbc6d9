//! The problem catalog.
//!
//! Each problem has a closed-form solver and a numeric solver that reaches
//! the same answer through golden-section search on a single variable, the
//! other variables being eliminated through the constraint.
//!
//! Numeric solvers take a tolerance relative to the natural length scale of
//! the problem (the fence length, the cube root of the volume, ...), so the
//! same setting works across many orders of magnitude.

mod can;
mod ellipse;
mod fence;

pub use can::{
    can_surface_area, can_volume, equivalence_ratio, solve_can, solve_can_dual,
    solve_can_dual_numeric, solve_can_numeric, CanSolution,
};
pub use ellipse::{
    containment_max, ellipse_fits, ellipse_lowest_point, intersect_ellipse_circle, max_a_for_b,
    solve_ellipse_semicircle, solve_ellipse_semicircle_radius, solve_rect_semicircle,
    solve_rect_semicircle_numeric, EllipseSolution, RectSemicircleSolution, B_MAX, B_MIN,
    CONTAINMENT_SLACK, FRONTIER_TOL, OUTER_TOL, TANGENCY_TOL, THETA_TOL,
};
pub use fence::{
    fence_area, fence_area_curve, solve_fence, solve_fence_numeric, FenceLayout, FenceSolution,
};

use crate::error::{Error, Result};
use crate::optimize::{GoldenSection, Method, DEFAULT_TOL};

/// Default relative tolerance for the numeric solvers.
pub const NUMERIC_REL_TOL: f64 = DEFAULT_TOL;

pub(crate) fn check_positive(name: &str, value: f64) -> Result<()> {
    if !(value > 0.0 && value.is_finite()) {
        return Err(Error::domain(format!(
            "{name} must be positive and finite, got {value}"
        )));
    }
    Ok(())
}

pub(crate) fn golden(rel_tol: f64, scale: f64) -> GoldenSection {
    GoldenSection::with_tol(rel_tol * scale.max(1.0))
}

/// Rectangle of fixed perimeter with the largest area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectangleSolution {
    pub x: f64,
    pub y: f64,
    pub area: f64,
    pub method: Method,
    pub evaluations: usize,
}

/// The square: `x = y = perimeter/4`.
pub fn solve_rectangle(perimeter: f64) -> Result<RectangleSolution> {
    check_positive("perimeter", perimeter)?;
    let side = perimeter / 4.0;
    Ok(RectangleSolution {
        x: side,
        y: side,
        area: side * side,
        method: Method::ClosedForm,
        evaluations: 1,
    })
}

/// Golden section over the width with `y = perimeter/2 − x`.
pub fn solve_rectangle_numeric(perimeter: f64, rel_tol: f64) -> Result<RectangleSolution> {
    check_positive("perimeter", perimeter)?;
    let half = perimeter / 2.0;
    let sol = golden(rel_tol, perimeter).maximize(|x| x * (half - x), 0.0, half)?;
    let x = sol.argmin;
    let y = half - x;
    Ok(RectangleSolution {
        x,
        y,
        area: x * y,
        method: Method::GoldenSection,
        evaluations: sol.evaluations,
    })
}

/// Box of fixed volume with the smallest surface area.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxSolution {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub surface_area: f64,
    pub method: Method,
    pub evaluations: usize,
}

pub fn box_surface_area(x: f64, y: f64, z: f64) -> f64 {
    2.0 * (x * y + y * z + x * z)
}

/// The cube of the given volume.
pub fn solve_box(volume: f64) -> Result<BoxSolution> {
    check_positive("volume", volume)?;
    let side = volume.cbrt();
    Ok(BoxSolution {
        x: side,
        y: side,
        z: side,
        surface_area: box_surface_area(side, side, side),
        method: Method::ClosedForm,
        evaluations: 1,
    })
}

/// Nested golden section: the outer search runs over `x`, the inner one over
/// `y`, and `z = volume/(x·y)`.
pub fn solve_box_numeric(volume: f64, rel_tol: f64) -> Result<BoxSolution> {
    check_positive("volume", volume)?;
    let scale = volume.cbrt();
    let (lo, hi) = (scale * 1e-2, scale * 1e2);
    let search = golden(rel_tol, scale);

    let mut evaluations = 0;
    let mut failure = None;
    let mut inner = |x: f64| -> (f64, f64) {
        match search.minimize(|y| box_surface_area(x, y, volume / (x * y)), lo, hi) {
            Ok(sol) => {
                evaluations += sol.evaluations;
                (sol.argmin, sol.value)
            }
            Err(e) => {
                failure.get_or_insert(e);
                (f64::NAN, f64::INFINITY)
            }
        }
    };
    let outer = search.minimize(|x| inner(x).1, lo, hi)?;
    let x = outer.argmin;
    let (y, _) = inner(x);
    if let Some(e) = failure {
        return Err(e);
    }
    let z = volume / (x * y);
    Ok(BoxSolution {
        x,
        y,
        z,
        surface_area: box_surface_area(x, y, z),
        method: Method::GoldenSection,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_examples() {
        let s = 7.25;
        let sol = solve_rectangle(4.0 * s).unwrap();
        assert_eq!((sol.x, sol.y), (s, s));
        let sol = solve_rectangle(40.0).unwrap();
        assert_eq!((sol.x, sol.y, sol.area), (10.0, 10.0, 100.0));
        let sol = solve_rectangle(2400.0).unwrap();
        assert_eq!((sol.x, sol.y, sol.area), (600.0, 600.0, 360000.0));
        assert!(solve_rectangle(0.0).is_err());
        assert!(solve_rectangle(-3.0).is_err());
    }

    #[test]
    fn rectangle_numeric_agrees() {
        for p in [0.01, 1.0, 40.0, 2400.0, 1e6] {
            let closed = solve_rectangle(p).unwrap();
            let num = solve_rectangle_numeric(p, NUMERIC_REL_TOL).unwrap();
            assert!(
                (num.x - closed.x).abs() <= 1e-6 * closed.x.max(1.0),
                "P = {p}"
            );
            assert!(
                (num.y - closed.y).abs() <= 1e-6 * closed.y.max(1.0),
                "P = {p}"
            );
        }
    }

    #[test]
    fn box_examples() {
        let sol = solve_box(8.0).unwrap();
        assert_eq!(
            (sol.x, sol.y, sol.z, sol.surface_area),
            (2.0, 2.0, 2.0, 24.0)
        );
        let sol = solve_box(1.0).unwrap();
        assert_eq!((sol.x, sol.surface_area), (1.0, 6.0));
        let sol = solve_box(1000.0).unwrap();
        assert!((sol.x - 10.0).abs() < 1e-12 && (sol.surface_area - 600.0).abs() < 1e-9);
        assert!(solve_box(-1.0).is_err());
    }

    #[test]
    fn box_numeric_agrees() {
        for v in [1e-3, 1.0, 8.0, 1000.0, 1e6] {
            let closed = solve_box(v).unwrap();
            let num = solve_box_numeric(v, NUMERIC_REL_TOL).unwrap();
            let tol = 1e-6 * closed.x.max(1.0);
            assert!((num.x - closed.x).abs() <= tol, "V = {v}: {num:?}");
            assert!((num.y - closed.y).abs() <= tol, "V = {v}: {num:?}");
            assert!((num.z - closed.z).abs() <= tol, "V = {v}: {num:?}");
            assert_eq!(num.method, Method::GoldenSection);
        }
    }
}
