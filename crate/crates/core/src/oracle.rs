//! Brute-force ground truth.
//!
//! Exhaustive grid evaluation followed by a few rounds of local re-gridding.
//! Nothing here calls into [`crate::optimize`] or [`crate::problems`]; the
//! catalog objectives below are written out again from the geometry
//! formulas so that agreement with the solvers is an independent check.
//!
//! Near a smooth minimum many grid points are indistinguishable in floating
//! point (the objective is flat to within rounding over a band of relative
//! width around `√ε`). The reported resolution therefore covers both the grid
//! spacing and the width of that band.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::geometry::{area_coefficient, Shape};

pub const DEFAULT_POINTS: usize = 100_000;
pub const DEFAULT_REFINE_ROUNDS: usize = 2;

/// Values within this many ulps-worth of relative distance from the incumbent
/// count as ties when sizing the flat band.
const BAND_EPS: f64 = 16.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    /// Each round re-grids a ±1-cell neighbourhood of the incumbent.
    pub refine_rounds: usize,
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize, refine_rounds: usize) -> Result<Self> {
        GridSpec {
            lo,
            hi,
            points,
            refine_rounds,
        }
        .validate()
    }

    pub fn with_defaults(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, DEFAULT_POINTS, DEFAULT_REFINE_ROUNDS)
    }

    pub fn validate(self) -> Result<Self> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo >= self.hi {
            return Err(Error::domain(format!(
                "grid needs finite lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.points < 3 {
            return Err(Error::domain(format!(
                "grid needs at least 3 points, got {}",
                self.points
            )));
        }
        Ok(self)
    }

    /// Upper bound on the final grid spacing:
    /// `2·(hi − lo)/points^(refine_rounds + 1)`.
    pub fn nominal_resolution(&self) -> f64 {
        2.0 * (self.hi - self.lo) / (self.points as f64).powi(self.refine_rounds as i32 + 1)
    }

    fn refined_points(&self) -> usize {
        2 * (self.points - 1) + 1
    }
}

/// Uniform nodes on `[lo, hi]` with both ends included exactly.
#[derive(Debug, Clone, Copy)]
struct Axis {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Axis {
    fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.n - 1) as f64
    }

    fn node(&self, i: usize) -> f64 {
        if i == self.n - 1 {
            self.hi
        } else {
            self.lo + self.spacing() * i as f64
        }
    }

    /// Window spanning the nodes `first..=last` plus one cell either side,
    /// clipped to the original range.
    fn window(&self, first: usize, last: usize, bounds: (f64, f64), n: usize) -> Axis {
        let s = self.spacing();
        Axis {
            lo: (self.node(first) - s).max(bounds.0),
            hi: (self.node(last) + s).min(bounds.1),
            n,
        }
    }
}

fn tie_threshold(best: f64) -> f64 {
    best + BAND_EPS * best.abs()
}

fn finite_or_err(value: f64, at: &[f64]) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite {
            at: at.to_vec(),
            value,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteMin {
    pub argmin: f64,
    pub value: f64,
    /// Final grid spacing plus the width of the band of ties.
    pub resolution: f64,
    pub spacing: f64,
    pub evaluations: usize,
}

/// Exhaustive 1D minimization. Ties go to the smallest argument.
pub fn brute_min<F>(mut f: F, grid: GridSpec) -> Result<BruteMin>
where
    F: FnMut(f64) -> f64,
{
    let grid = grid.validate()?;
    let bounds = (grid.lo, grid.hi);
    let mut axis = Axis {
        lo: grid.lo,
        hi: grid.hi,
        n: grid.points,
    };
    let mut evaluations = 0;
    let mut values = Vec::with_capacity(grid.refined_points());

    for round in 0..=grid.refine_rounds {
        values.clear();
        for i in 0..axis.n {
            let x = axis.node(i);
            values.push(finite_or_err(f(x), &[x])?);
        }
        evaluations += axis.n;

        let mut best = 0;
        for (i, v) in values.iter().enumerate() {
            if *v < values[best] {
                best = i;
            }
        }
        let cut = tie_threshold(values[best]);
        let first = values.iter().position(|v| *v <= cut).unwrap_or(best);
        let last = values.iter().rposition(|v| *v <= cut).unwrap_or(best);

        if round == grid.refine_rounds || axis.spacing() == 0.0 {
            let spacing = axis.spacing();
            return Ok(BruteMin {
                argmin: axis.node(best),
                value: values[best],
                resolution: spacing + (axis.node(last) - axis.node(first)),
                spacing,
                evaluations,
            });
        }
        axis = axis.window(first, last, bounds, grid.refined_points());
    }
    unreachable!("the last round always returns")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteMin2 {
    pub x: f64,
    pub y: f64,
    pub value: f64,
    pub resolution_x: f64,
    pub resolution_y: f64,
    pub evaluations: usize,
}

/// Exhaustive 2D minimization over the product grid. Ties go to the smallest
/// `x`, then the smallest `y`.
pub fn brute_min_2d<F>(mut f: F, grid_x: GridSpec, grid_y: GridSpec) -> Result<BruteMin2>
where
    F: FnMut(f64, f64) -> f64,
{
    let (grid_x, grid_y) = (grid_x.validate()?, grid_y.validate()?);
    let rounds = grid_x.refine_rounds.max(grid_y.refine_rounds);
    let mut ax = Axis {
        lo: grid_x.lo,
        hi: grid_x.hi,
        n: grid_x.points,
    };
    let mut ay = Axis {
        lo: grid_y.lo,
        hi: grid_y.hi,
        n: grid_y.points,
    };
    let mut evaluations = 0;
    let mut values = Vec::new();

    for round in 0..=rounds {
        values.clear();
        let mut best = (0, 0, f64::INFINITY);
        for i in 0..ax.n {
            let x = ax.node(i);
            for j in 0..ay.n {
                let y = ay.node(j);
                let v = finite_or_err(f(x, y), &[x, y])?;
                if v < best.2 {
                    best = (i, j, v);
                }
                values.push(v);
            }
        }
        evaluations += ax.n * ay.n;

        let cut = tie_threshold(best.2);
        let (mut i0, mut i1, mut j0, mut j1) = (best.0, best.0, best.1, best.1);
        for (k, v) in values.iter().enumerate() {
            if *v <= cut {
                let (i, j) = (k / ay.n, k % ay.n);
                i0 = i0.min(i);
                i1 = i1.max(i);
                j0 = j0.min(j);
                j1 = j1.max(j);
            }
        }

        if round == rounds {
            return Ok(BruteMin2 {
                x: ax.node(best.0),
                y: ay.node(best.1),
                value: best.2,
                resolution_x: ax.spacing() + (ax.node(i1) - ax.node(i0)),
                resolution_y: ay.spacing() + (ay.node(j1) - ay.node(j0)),
                evaluations,
            });
        }
        ax = ax.window(i0, i1, (grid_x.lo, grid_x.hi), grid_x.refined_points());
        ay = ay.window(j0, j1, (grid_y.lo, grid_y.hi), grid_y.refined_points());
    }
    unreachable!("the last round always returns")
}

// Catalog objectives, restated from the geometry.

/// Rectangle of perimeter `p`: the optimal width.
pub fn rectangle(perimeter: f64) -> Result<BruteMin> {
    let half = perimeter / 2.0;
    brute_min(|x| -(x * (half - x)), GridSpec::with_defaults(0.0, half)?)
}

/// Box of volume `v`: the optimal `(x, y)` with `z = v/(x·y)`.
pub fn cuboid(volume: f64, points: usize) -> Result<BruteMin2> {
    let s = volume.cbrt();
    let grid = GridSpec::new(s / 4.0, s * 4.0, points, DEFAULT_REFINE_ROUNDS)?;
    brute_min_2d(
        |x, y| {
            let z = volume / (x * y);
            2.0 * (x * y + y * z + x * z)
        },
        grid,
        grid,
    )
}

/// Partitioned fence: the optimal total length of the vertical runs.
pub fn fence(total: f64, v_segments: u32, h_segments: u32) -> Result<BruteMin> {
    let (v, h) = (f64::from(v_segments), f64::from(h_segments));
    brute_min(
        |l| -((l / v) * ((total - l) / h)),
        GridSpec::with_defaults(0.0, total)?,
    )
}

/// Minimum-surface can: the optimal inradius.
pub fn can(volume: f64, base: Shape) -> Result<BruteMin> {
    let c = area_coefficient(base)?;
    let s = volume.cbrt();
    brute_min(
        |r| 2.0 * c * r * r + 2.0 * volume / r,
        GridSpec::with_defaults(s * 1e-2, s * 4.0)?,
    )
}

/// Maximum-volume can: the optimal inradius.
pub fn can_dual(surface_area: f64, base: Shape) -> Result<BruteMin> {
    let c = area_coefficient(base)?;
    let r_max = (surface_area / (2.0 * c)).sqrt();
    brute_min(
        |r| -(c * r * r * (surface_area - 2.0 * c * r * r) / (2.0 * c * r)),
        GridSpec::with_defaults(r_max * 1e-6, r_max)?,
    )
}

/// Rectangle in a semicircle: the optimal half-width.
pub fn rect_semicircle(radius: f64) -> Result<BruteMin> {
    brute_min(
        |x| -(2.0 * x * (radius * radius - x * x).max(0.0).sqrt()),
        GridSpec::with_defaults(0.0, radius)?,
    )
}

/// Exact containment of the ellipse `x²/a² + (y − b)²/b² = 1` in the unit
/// half-disk.
///
/// With `s = sin θ` the squared distance of the ellipse point from the origin
/// is the quadratic `(b² − a²)s² + 2b²s + a² + b²` on `s ∈ [−1, 1]`, whose
/// maximum is at an end point or at the vertex.
pub fn ellipse_contained(a: f64, b: f64) -> bool {
    let (a2, b2) = (a * a, b * b);
    let q = |s: f64| (b2 - a2) * s * s + 2.0 * b2 * s + a2 + b2;
    let mut max = q(-1.0).max(q(1.0));
    if a2 > b2 {
        let vertex = b2 / (a2 - b2);
        if vertex <= 1.0 {
            max = max.max(q(vertex));
        }
    }
    max <= 1.0 + 1e-12
}

/// Widest `a` with the ellipse contained, for `0 < b ≤ 1/2`, from the
/// tangency condition `a² + b² + b⁴/(a² − b²) = 1`.
pub fn ellipse_frontier(b: f64) -> f64 {
    let b2 = b * b;
    let gap = ((1.0 - 2.0 * b2) + (1.0 - 4.0 * b2).max(0.0).sqrt()) / 2.0;
    (b2 + gap).sqrt()
}

/// Largest ellipse in the unit half-disk, searched over `b` along the exact
/// frontier. Returns the optimal `b`.
pub fn ellipse_semicircle(b_min: f64, b_max: f64) -> Result<BruteMin> {
    brute_min(
        |b| -(PI * ellipse_frontier(b) * b),
        GridSpec::with_defaults(b_min, b_max)?,
    )
}

/// Joint scan over `(a, b)` with exact containment, making no use of the
/// frontier.
///
/// Coarse: area changes only quadratically along the frontier but linearly
/// across it, so the best feasible grid point can sit about `√spacing` away
/// from the optimum, well outside the reported resolution.
pub fn ellipse_semicircle_2d(points: usize) -> Result<BruteMin2> {
    let gx = GridSpec::new(0.5, 1.0, points, DEFAULT_REFINE_ROUNDS)?;
    let gy = GridSpec::new(0.2, 0.5, points, DEFAULT_REFINE_ROUNDS)?;
    brute_min_2d(
        |a, b| {
            if ellipse_contained(a, b) {
                -PI * a * b
            } else {
                0.0
            }
        },
        gx,
        gy,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(1.0, 1.0, 10, 0).is_err());
        assert!(GridSpec::new(0.0, 1.0, 2, 0).is_err());
        assert!(GridSpec::new(0.0, f64::NAN, 10, 0).is_err());
        assert!(GridSpec::new(0.0, 1.0, 3, 0).is_ok());
    }

    #[test]
    fn abs_value() {
        let sol = brute_min(
            |x| (x - 1.0).abs(),
            GridSpec::new(0.0, 2.0, 10_001, 0).unwrap(),
        )
        .unwrap();
        assert!((sol.argmin - 1.0).abs() <= 2e-4);
        assert_eq!(sol.evaluations, 10_001);
    }

    #[test]
    fn textbook_can_surface() {
        let grid = GridSpec::new(0.5, 20.0, 100_000, 2).unwrap();
        let sol = brute_min(|r| 2.0 * PI * r * r + 2000.0 / r, grid).unwrap();
        assert!((sol.argmin - 5.4192607905).abs() <= 1e-6, "{sol:?}");
        // the flat band around the minimum is wider than the nominal spacing
        assert!(sol.resolution <= 1e-6);
    }

    #[test]
    fn fence_vertex() {
        let sol = fence(2400.0, 4, 2).unwrap();
        assert!(
            (sol.argmin - 1200.0).abs() <= 4.0 * sol.resolution,
            "{sol:?}"
        );
        assert!((sol.argmin - 1200.0).abs() <= 1e-3);
    }

    #[test]
    fn resolution_bound() {
        for (points, rounds) in [(101, 0), (1001, 1), (100_000, 2), (50, 3)] {
            let grid = GridSpec::new(-3.0, 5.0, points, rounds).unwrap();
            let sol = brute_min(|x| (x - 0.123).abs(), grid).unwrap();
            assert!(
                sol.spacing <= grid.nominal_resolution(),
                "{points} {rounds}"
            );
            assert!((sol.argmin - 0.123).abs() <= sol.resolution);
        }
    }

    #[test]
    fn non_finite_is_an_error() {
        let grid = GridSpec::new(0.0, 1.0, 11, 0).unwrap();
        let err = brute_min(|r| 1.0 / r, grid).unwrap_err();
        assert_eq!(
            err,
            Error::NonFinite {
                at: vec![0.0],
                value: f64::INFINITY
            }
        );
        let err = brute_min_2d(|x, y| (x - y).ln(), grid, grid).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }

    #[test]
    fn ties_pick_smallest_argument() {
        let grid = GridSpec::new(0.0, 1.0, 11, 0).unwrap();
        let sol = brute_min(|_| 5.0, grid).unwrap();
        assert_eq!(sol.argmin, 0.0);
        let sol = brute_min_2d(|x, _| (x - 0.5).abs(), grid, grid).unwrap();
        assert_eq!((sol.x, sol.y), (0.5, 0.0));
    }

    #[test]
    fn two_dimensional_examples() {
        let sol = cuboid(8.0, 1000).unwrap();
        assert!((sol.x - 2.0).abs() <= 4.0 * sol.resolution_x, "{sol:?}");
        assert!((sol.y - 2.0).abs() <= 4.0 * sol.resolution_y, "{sol:?}");

        let g = GridSpec::new(-1.0, 1.0, 201, 1).unwrap();
        let sol = brute_min_2d(|x, y| x * x + y * y, g, g).unwrap();
        assert!(sol.x.abs() <= 1e-12 && sol.y.abs() <= 1e-12, "{sol:?}");
    }

    #[test]
    fn joint_ellipse_scan() {
        let sol = ellipse_semicircle_2d(400).unwrap();
        assert!((sol.x - 0.8165).abs() <= 1e-2, "{sol:?}");
        assert!((sol.y - 0.4714).abs() <= 1e-2, "{sol:?}");
        assert!(
            (-sol.value - PI * 12f64.sqrt() / 9.0).abs() <= 1e-3,
            "{sol:?}"
        );
    }

    #[test]
    fn exact_containment() {
        let (a, b) = (6f64.sqrt() / 3.0, 2f64.sqrt() / 3.0);
        assert!(ellipse_contained(a, b));
        assert!(!ellipse_contained(a + 1e-9, b));
        assert!(!ellipse_contained(0.9, 0.9));
        assert!(ellipse_contained(0.1, 0.1));
        assert!((ellipse_frontier(b) - a).abs() <= 1e-15);
        assert!((ellipse_frontier(0.5) - std::f64::consts::FRAC_1_SQRT_2).abs() <= 1e-15);
    }

    #[test]
    fn frontier_is_the_containment_boundary() {
        for k in 1..50 {
            let b = 0.01 * f64::from(k);
            let a = ellipse_frontier(b);
            assert!(ellipse_contained(a * (1.0 - 1e-9), b), "b = {b}");
            assert!(!ellipse_contained(a * (1.0 + 1e-9), b), "b = {b}");
        }
    }
}
