//! Rectangular field fenced on all sides and split into pens by parallel
//! partitions.
//!
//! The search variable is `L`, the combined length of the vertical runs. The
//! enclosed area `(L/v)·((F − L)/h)` is a downward parabola in `L` with roots
//! `0` and `F`, so the optimum spends exactly half the fence on vertical runs
//! whatever the number of partitions.

use super::{check_positive, golden};
use crate::error::{Error, Result};
use crate::optimize::{quadratic_vertex, Method};

/// Counts of parallel fence runs, outer boundary included. The plain
/// rectangle is `v_segments = h_segments = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FenceLayout {
    pub v_segments: u32,
    pub h_segments: u32,
}

impl FenceLayout {
    pub fn new(v_segments: u32, h_segments: u32) -> Result<Self> {
        FenceLayout {
            v_segments,
            h_segments,
        }
        .validate()
    }

    pub fn validate(self) -> Result<Self> {
        if self.v_segments < 2 || self.h_segments < 2 {
            return Err(Error::domain(format!(
                "a fenced rectangle needs at least 2 runs each way, got v = {}, h = {}",
                self.v_segments, self.h_segments
            )));
        }
        Ok(self)
    }

    fn counts(self) -> (f64, f64) {
        (f64::from(self.v_segments), f64::from(self.h_segments))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FenceSolution {
    /// Length of one vertical run.
    pub x: f64,
    /// Length of one horizontal run.
    pub y: f64,
    pub vertical_total: f64,
    pub horizontal_total: f64,
    pub area: f64,
    pub method: Method,
    pub evaluations: usize,
}

impl FenceSolution {
    fn from_vertical_total(total: f64, layout: FenceLayout, vertical: f64) -> Self {
        let (v, h) = layout.counts();
        let x = vertical / v;
        let y = (total - vertical) / h;
        FenceSolution {
            x,
            y,
            vertical_total: v * x,
            horizontal_total: h * y,
            area: x * y,
            method: Method::ClosedForm,
            evaluations: 1,
        }
    }
}

/// Enclosed area when `vertical` of the `total` fence goes to vertical runs.
pub fn fence_area(total: f64, layout: FenceLayout, vertical: f64) -> f64 {
    let (v, h) = layout.counts();
    (vertical / v) * ((total - vertical) / h)
}

fn check(total: f64, layout: FenceLayout) -> Result<()> {
    check_positive("total fence", total)?;
    layout.validate()?;
    Ok(())
}

pub fn solve_fence(total: f64, layout: FenceLayout) -> Result<FenceSolution> {
    check(total, layout)?;
    let vertical = quadratic_vertex(0.0, total);
    Ok(FenceSolution::from_vertical_total(total, layout, vertical))
}

/// Golden section over `L ∈ [0, F]`.
pub fn solve_fence_numeric(total: f64, layout: FenceLayout, rel_tol: f64) -> Result<FenceSolution> {
    check(total, layout)?;
    let sol = golden(rel_tol, total).maximize(|l| fence_area(total, layout, l), 0.0, total)?;
    Ok(FenceSolution {
        method: Method::GoldenSection,
        evaluations: sol.evaluations,
        ..FenceSolution::from_vertical_total(total, layout, sol.argmin)
    })
}

/// `(L, area)` samples at `n_points` uniform values of `L` in `[0, F]`.
pub fn fence_area_curve(
    total: f64,
    layout: FenceLayout,
    n_points: usize,
) -> Result<Vec<(f64, f64)>> {
    check(total, layout)?;
    if n_points < 2 {
        return Err(Error::domain(format!(
            "a curve needs at least 2 points, got {n_points}"
        )));
    }
    let last = n_points - 1;
    Ok((0..n_points)
        .map(|i| {
            // the last sample is pinned so the far root is exact
            let l = if i == last {
                total
            } else {
                total * i as f64 / last as f64
            };
            (l, fence_area(total, layout, l))
        })
        .collect())
}
