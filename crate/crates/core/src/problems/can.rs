//! Cans and prisms whose base is a circle or a regular polygon.
//!
//! With base area `c·r²` and base perimeter `2c·r`, volume and surface area
//! are `c·r²·h` and `2c·r² + 2c·r·h`. Both scale with `c`, so every base shape
//! shares the optimum `h = 2r`.

use super::{check_positive, golden};
use crate::error::{Error, Result};
use crate::geometry::{area_coefficient, Shape};
use crate::optimize::Method;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanSolution {
    pub base: Shape,
    /// Inradius of the base.
    pub r: f64,
    pub h: f64,
    pub surface_area: f64,
    pub volume: f64,
    pub method: Method,
    pub evaluations: usize,
}

impl CanSolution {
    fn new(base: Shape, c: f64, r: f64, h: f64, method: Method, evaluations: usize) -> Self {
        CanSolution {
            base,
            r,
            h,
            surface_area: surface_area_with(c, r, h),
            volume: c * r * r * h,
            method,
            evaluations,
        }
    }
}

fn surface_area_with(c: f64, r: f64, h: f64) -> f64 {
    2.0 * c * r * r + 2.0 * c * r * h
}

pub fn can_volume(base: Shape, r: f64, h: f64) -> Result<f64> {
    check_positive("height", h)?;
    Ok(crate::geometry::area(base, r)? * h)
}

/// Top, bottom and side: `2·A(r) + P(r)·h`.
pub fn can_surface_area(base: Shape, r: f64, h: f64) -> Result<f64> {
    check_positive("height", h)?;
    Ok(2.0 * crate::geometry::area(base, r)? + crate::geometry::perimeter(base, r)? * h)
}

/// Minimum surface area at fixed volume: `r = (V/2c)^{1/3}`, `h = V/(c·r²)`.
pub fn solve_can(volume: f64, base: Shape) -> Result<CanSolution> {
    check_positive("volume", volume)?;
    let c = area_coefficient(base)?;
    let r = (volume / (2.0 * c)).cbrt();
    let h = volume / (c * r * r);
    Ok(CanSolution::new(base, c, r, h, Method::ClosedForm, 1))
}

/// Golden section on `SA(r) = 2c·r² + 2V/r`, height from the volume constraint.
pub fn solve_can_numeric(volume: f64, base: Shape, rel_tol: f64) -> Result<CanSolution> {
    check_positive("volume", volume)?;
    let c = area_coefficient(base)?;
    let scale = volume.cbrt();
    let sol = golden(rel_tol, scale).minimize(
        |r| 2.0 * c * r * r + 2.0 * volume / r,
        scale * 1e-3,
        scale * 10.0,
    )?;
    let r = sol.argmin;
    let h = volume / (c * r * r);
    Ok(CanSolution::new(
        base,
        c,
        r,
        h,
        Method::GoldenSection,
        sol.evaluations,
    ))
}

/// Maximum volume at fixed surface area: `r = √(SA/6c)`, `h = 2r`.
pub fn solve_can_dual(surface_area: f64, base: Shape) -> Result<CanSolution> {
    check_positive("surface area", surface_area)?;
    let c = area_coefficient(base)?;
    let r = (surface_area / (6.0 * c)).sqrt();
    let h = height_for_surface_area(c, surface_area, r);
    Ok(CanSolution::new(base, c, r, h, Method::ClosedForm, 1))
}

fn height_for_surface_area(c: f64, surface_area: f64, r: f64) -> f64 {
    (surface_area - 2.0 * c * r * r) / (2.0 * c * r)
}

/// Golden section on `V(r) = SA·r/2 − c·r³` over `r ∈ (0, √(SA/2c))`.
pub fn solve_can_dual_numeric(surface_area: f64, base: Shape, rel_tol: f64) -> Result<CanSolution> {
    check_positive("surface area", surface_area)?;
    let c = area_coefficient(base)?;
    let r_max = (surface_area / (2.0 * c)).sqrt();
    let sol = golden(rel_tol, r_max).maximize(
        |r| surface_area * r / 2.0 - c * r * r * r,
        r_max * 1e-9,
        r_max,
    )?;
    let r = sol.argmin;
    let h = height_for_surface_area(c, surface_area, r);
    if h.is_nan() || h <= 0.0 {
        return Err(Error::Infeasible(format!("no positive height at r = {r}")));
    }
    Ok(CanSolution::new(
        base,
        c,
        r,
        h,
        Method::GoldenSection,
        sol.evaluations,
    ))
}

/// `c/π`: how much larger a prism's volume and surface area are than those of
/// the circular can with the same `r` and `h`.
pub fn equivalence_ratio(base: Shape) -> Result<f64> {
    Ok(area_coefficient(base)? / PI)
}
