//! Shapes inscribed in the upper half of the unit disk.
//!
//! The ellipse family is `x²/a² + (y − b)²/b² = 1`: centered on the y-axis at
//! height `b`, so its lowest point touches the diameter at the origin. It is
//! inscribed when every point `(a·cos θ, b + b·sin θ)` lies in the unit disk,
//! i.e. when `g(θ) = a²cos²θ + b²(1 + sin θ)²` never exceeds 1.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{check_positive, golden};
use crate::error::{Error, Result};
use crate::geometry::Point2;
use crate::optimize::{
    bisect_boundary, grid_refine_max, GoldenSection, Method, Solution1D, DEFAULT_GRID_N,
};

/// Containment slack on `max g`.
pub const CONTAINMENT_SLACK: f64 = 1e-12;
/// Tolerance on θ when polishing the maximum of `g`.
pub const THETA_TOL: f64 = 1e-10;
/// Bracket width at which the frontier bisection stops.
///
/// The outer search maximizes `a(b)·b`, which is flat at the optimum, so any
/// jitter in `a(b)` is amplified to roughly its square root in `b`. Bisecting
/// down to the float spacing keeps that jitter near machine precision.
pub const FRONTIER_TOL: f64 = 1e-15;
/// Tolerance on `b` for the outer area maximization.
pub const OUTER_TOL: f64 = 1e-8;
pub const B_MIN: f64 = 1e-4;
/// The top of the ellipse sits at `2b`, which must stay below the arc.
pub const B_MAX: f64 = 0.5;
/// Normalized discriminant below which the ellipse and circle are treated as
/// tangent.
pub const TANGENCY_TOL: f64 = 1e-10;

/// Largest rectangle with its base on the diameter of a semicircle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectSemicircleSolution {
    pub half_width: f64,
    pub height: f64,
    pub area: f64,
    pub method: Method,
    pub evaluations: usize,
}

impl RectSemicircleSolution {
    /// The two corners on the arc, left to right.
    pub fn upper_vertices(&self) -> [Point2; 2] {
        [
            Point2::new(-self.half_width, self.height),
            Point2::new(self.half_width, self.height),
        ]
    }
}

pub fn solve_rect_semicircle(radius: f64) -> Result<RectSemicircleSolution> {
    check_positive("radius", radius)?;
    let side = radius / 2f64.sqrt();
    Ok(RectSemicircleSolution {
        half_width: side,
        height: side,
        area: 2.0 * side * side,
        method: Method::ClosedForm,
        evaluations: 1,
    })
}

/// Golden section on `2x·√(R² − x²)`.
pub fn solve_rect_semicircle_numeric(radius: f64, rel_tol: f64) -> Result<RectSemicircleSolution> {
    check_positive("radius", radius)?;
    let height = |x: f64| (radius * radius - x * x).max(0.0).sqrt();
    let sol = golden(rel_tol, radius).maximize(|x| 2.0 * x * height(x), 0.0, radius)?;
    let x = sol.argmin;
    Ok(RectSemicircleSolution {
        half_width: x,
        height: height(x),
        area: sol.value,
        method: Method::GoldenSection,
        evaluations: sol.evaluations,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct EllipseSolution {
    /// Horizontal semi-axis.
    pub a: f64,
    /// Vertical semi-axis.
    pub b: f64,
    pub area: f64,
    /// Points where the ellipse meets the arc, sorted by x.
    pub contacts: Vec<Point2>,
    pub method: Method,
    pub evaluations: usize,
}

fn check_axes(a: f64, b: f64) -> Result<()> {
    check_positive("semi-axis a", a)?;
    check_positive("semi-axis b", b)
}

/// Lowest point of the ellipse, from the parameterization at θ = −π/2.
pub fn ellipse_lowest_point(a: f64, b: f64) -> Point2 {
    let theta = -FRAC_PI_2;
    Point2::new(a * theta.cos(), b + b * theta.sin())
}

/// Maximum over θ ∈ [−π/2, 3π/2] of the squared distance from the origin to
/// the ellipse point at parameter θ.
pub fn containment_max(a: f64, b: f64) -> Result<Solution1D> {
    check_axes(a, b)?;
    let g = |theta: f64| {
        let (s, c) = theta.sin_cos();
        let x = a * c;
        let y = b * (1.0 + s);
        x * x + y * y
    };
    grid_refine_max(g, -FRAC_PI_2, 3.0 * FRAC_PI_2, DEFAULT_GRID_N, THETA_TOL)
}

/// Whether the ellipse lies in the closed upper half-disk.
///
/// Only the disk needs testing: the lowest point is the origin, so the
/// ellipse never dips below the diameter.
pub fn ellipse_fits(a: f64, b: f64) -> Result<bool> {
    let max = containment_max(a, b)?;
    debug_assert!(ellipse_lowest_point(a, b).y.abs() <= 1e-15 * b);
    Ok(max.value <= 1.0 + CONTAINMENT_SLACK)
}

/// The widest ellipse of height `2b` that still fits.
pub fn max_a_for_b(b: f64) -> Result<f64> {
    check_positive("semi-axis b", b)?;
    if b >= 1.0 {
        return Err(Error::domain(format!(
            "semi-axis b must be below 1, got {b}"
        )));
    }
    let mut failure = None;
    let mut fits = |a: f64| match ellipse_fits(a, b) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            false
        }
    };
    let tiny = b * 1e-9;
    if !fits(tiny) {
        return Err(Error::Infeasible(format!(
            "no ellipse with b = {b} fits in the unit half-disk (top point at {})",
            2.0 * b
        )));
    }
    // a slightly above 1 can never fit: the point at θ = 0 is at distance √(a² + b²)
    let a = bisect_boundary(&mut fits, tiny, 1.0 + 1e-6, FRONTIER_TOL)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(a),
    }
}

/// The largest-area ellipse in the unit upper half-disk.
pub fn solve_ellipse_semicircle() -> Result<EllipseSolution> {
    let mut failure = None;
    let mut calls = 0;
    let mut area = |b: f64| {
        calls += 1;
        match max_a_for_b(b) {
            Ok(a) => PI * a * b,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NEG_INFINITY
            }
        }
    };
    let outer = GoldenSection::with_tol(OUTER_TOL).maximize(&mut area, B_MIN, B_MAX)?;
    if let Some(e) = failure {
        return Err(e);
    }
    let b = outer.argmin;
    let a = max_a_for_b(b)?;
    Ok(EllipseSolution {
        a,
        b,
        area: PI * a * b,
        contacts: intersect_ellipse_circle(a, b)?,
        method: Method::GoldenSection,
        evaluations: calls + 1,
    })
}

/// The unit solution scaled to a semicircle of the given radius.
pub fn solve_ellipse_semicircle_radius(radius: f64) -> Result<EllipseSolution> {
    check_positive("radius", radius)?;
    let unit = solve_ellipse_semicircle()?;
    Ok(EllipseSolution {
        a: unit.a * radius,
        b: unit.b * radius,
        area: unit.area * radius * radius,
        contacts: unit
            .contacts
            .iter()
            .map(|p| Point2::new(p.x * radius, p.y * radius))
            .collect(),
        ..unit
    })
}

/// Points where the ellipse meets the unit circle with `0 ≤ y ≤ 1`.
///
/// Substituting `x² = 1 − y²` into the ellipse gives
/// `(a² − b²)·y² − 2a²b·y + b² = 0`, whose discriminant is
/// `4b²·(a⁴ − a² + b²)`. A near-zero discriminant is a tangency and yields the
/// double root. Returns no points, one point on the y-axis, or mirrored pairs.
pub fn intersect_ellipse_circle(a: f64, b: f64) -> Result<Vec<Point2>> {
    check_axes(a, b)?;
    let (a2, b2) = (a * a, b * b);
    let quad = a2 - b2;
    let lin = -2.0 * a2 * b;
    let disc = a2 * a2 - a2 + b2;

    let mut ys = Vec::with_capacity(2);
    if quad.abs() <= 1e-15 * (a2 + b2) {
        ys.push(-b2 / lin);
    } else if disc.abs() <= TANGENCY_TOL {
        ys.push(-lin / (2.0 * quad));
    } else if disc > 0.0 {
        // q = −(B + sign(B)·√Δ)/2 avoids cancellation
        let sqrt_disc = 2.0 * b * disc.sqrt();
        let q = -0.5 * (lin - sqrt_disc);
        ys.push(q / quad);
        ys.push(b2 / q);
    }

    let mut points = Vec::new();
    for y in ys {
        if !(-1e-12..=1.0 + 1e-12).contains(&y) {
            continue;
        }
        let y = y.clamp(0.0, 1.0);
        let x2 = 1.0 - y * y;
        if x2 <= 1e-12 {
            points.push(Point2::new(0.0, y));
        } else {
            let x = x2.sqrt();
            points.push(Point2::new(-x, y));
            points.push(Point2::new(x, y));
        }
    }
    points.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    points.dedup_by(|p, q| p.distance(*q) <= 1e-12);
    Ok(points)
}
