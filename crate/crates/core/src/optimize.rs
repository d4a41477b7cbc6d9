//! One-dimensional numeric machinery shared by the problem catalog.
//!
//! Golden-section search shrinks a bracket by the inverse golden ratio each
//! iteration and reuses one interior point, so every iteration costs a single
//! function evaluation:
//!
//! ```text
//!         lo        c    d         hi
//! iter k  +---------+----+---------+
//!         lo   c    d    hi
//! iter k+1+----+----+----+            (kept [lo, d] because f(c) <= f(d))
//! ```

use std::fmt;

use crate::error::{Error, Result};

/// Absolute tolerance on the argument used when a caller has no better choice.
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 500;
/// Grid size for [`grid_refine_max`] when locating containment maxima.
pub const DEFAULT_GRID_N: usize = 2048;

/// `1/φ = (√5 − 1)/2`.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    GoldenSection,
    ClosedForm,
    GridRefine,
    Bisection,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::GoldenSection => "golden_section",
            Method::ClosedForm => "closed_form",
            Method::GridRefine => "grid_refine",
            Method::Bisection => "bisection",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a one-dimensional search. For maximizers `argmin` holds the
/// maximizer and `value` the maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Solution1D {
    pub argmin: f64,
    pub value: f64,
    pub evaluations: usize,
    /// Width of the final bracket.
    pub achieved_interval: f64,
    pub method: Method,
}

/// Golden-section minimizer settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenSection {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for GoldenSection {
    fn default() -> Self {
        GoldenSection {
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

impl GoldenSection {
    pub fn with_tol(tol: f64) -> Self {
        GoldenSection {
            tol,
            ..Self::default()
        }
    }

    /// Minimize `f` on `[lo, hi]`, assuming it is unimodal there.
    ///
    /// On an exact tie between the two interior points the lower half of the
    /// bracket is kept.
    pub fn minimize<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<Solution1D>
    where
        F: FnMut(f64) -> f64,
    {
        check_interval(lo, hi)?;
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::domain(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }

        let (mut a, mut b) = (lo, hi);
        let mut c = b - INV_PHI * (b - a);
        let mut d = a + INV_PHI * (b - a);
        let mut fc = f(c);
        let mut fd = f(d);
        let mut evaluations = 2;
        let mut iterations = 0;

        while b - a > self.tol {
            if iterations == self.max_iter {
                return Err(Error::Convergence {
                    iterations,
                    width: b - a,
                });
            }
            iterations += 1;
            if fc <= fd {
                b = d;
                d = c;
                fd = fc;
                c = b - INV_PHI * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + INV_PHI * (b - a);
                fd = f(d);
            }
            evaluations += 1;
        }

        let argmin = a + (b - a) / 2.0;
        let value = f(argmin);
        Ok(Solution1D {
            argmin,
            value,
            evaluations: evaluations + 1,
            achieved_interval: b - a,
            method: Method::GoldenSection,
        })
    }

    /// Maximize `f` on `[lo, hi]`; the returned `value` is the maximum.
    pub fn maximize<F>(&self, mut f: F, lo: f64, hi: f64) -> Result<Solution1D>
    where
        F: FnMut(f64) -> f64,
    {
        let mut sol = self.minimize(|x| -f(x), lo, hi)?;
        sol.value = -sol.value;
        Ok(sol)
    }
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::domain(format!(
            "need finite lo < hi, got [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Golden-section minimization with the default iteration cap.
pub fn golden_section_min<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<Solution1D>
where
    F: FnMut(f64) -> f64,
{
    GoldenSection::with_tol(tol).minimize(f, lo, hi)
}

/// The vertex of a parabola lies halfway between its roots.
pub fn quadratic_vertex(root1: f64, root2: f64) -> f64 {
    root1 + (root2 - root1) / 2.0
}

/// Locate the point where a monotone predicate switches from `true` (at `lo`)
/// to `false` (at `hi`).
///
/// Bisection stops once the bracket is no wider than `tol` or can no longer be
/// split in floating point; the midpoint of the last bracket is returned.
pub fn bisect_boundary<P>(mut pred: P, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    P: FnMut(f64) -> bool,
{
    check_interval(lo, hi)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if !pred(lo) {
        return Err(Error::Bracket(format!(
            "predicate is false at the lower end {lo}"
        )));
    }
    if pred(hi) {
        return Err(Error::Bracket(format!(
            "predicate is true at the upper end {hi}"
        )));
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let mid = a + (b - a) / 2.0;
        if mid <= a || mid >= b {
            break;
        }
        if pred(mid) {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(a + (b - a) / 2.0)
}

/// Symmetric difference quotient `(f(x+h) − f(x−h)) / 2h`.
pub fn central_diff<F>(f: F, x: f64, h: f64) -> f64
where
    F: Fn(f64) -> f64,
{
    (f(x + h) - f(x - h)) / (2.0 * h)
}

/// Maximize a possibly multi-bump `f` by sampling `grid_n` uniform points on
/// `[lo, hi]` and polishing the best sample with golden section inside its
/// neighbouring cells.
pub fn grid_refine_max<F>(mut f: F, lo: f64, hi: f64, grid_n: usize, tol: f64) -> Result<Solution1D>
where
    F: FnMut(f64) -> f64,
{
    check_interval(lo, hi)?;
    if grid_n < 3 {
        return Err(Error::domain(format!(
            "grid needs at least 3 points, got {grid_n}"
        )));
    }
    let step = (hi - lo) / (grid_n - 1) as f64;
    let node = |i: usize| {
        if i == grid_n - 1 {
            hi
        } else {
            lo + step * i as f64
        }
    };

    let mut best = (0, f64::NEG_INFINITY);
    for i in 0..grid_n {
        let v = f(node(i));
        if v > best.1 {
            best = (i, v);
        }
    }
    let (i, grid_value) = best;
    let grid_arg = node(i);
    let a = node(i.saturating_sub(1));
    let b = node((i + 1).min(grid_n - 1));

    let polished = GoldenSection::with_tol(tol).maximize(&mut f, a, b)?;
    let evaluations = grid_n + polished.evaluations;
    let (argmin, value) = if polished.value >= grid_value {
        (polished.argmin, polished.value)
    } else {
        (grid_arg, grid_value)
    };
    Ok(Solution1D {
        argmin,
        value,
        evaluations,
        achieved_interval: polished.achieved_interval,
        method: Method::GridRefine,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn golden_section_examples() {
        let sol = golden_section_min(|x| (x - 2.0).powi(2), 0.0, 5.0, 1e-10).unwrap();
        assert!((sol.argmin - 2.0).abs() <= 1e-10);
        assert!(sol.achieved_interval <= 1e-10);
        assert_eq!(sol.method, Method::GoldenSection);

        let can = golden_section_min(|r| 2.0 * PI * r * r + 2000.0 / r, 0.1, 50.0, 1e-10).unwrap();
        assert!((can.argmin - 5.4192607905).abs() <= 1e-6, "{}", can.argmin);

        // grid oracle: 10^7 points on [0.1, 50], best at 7.93700...
        let prism = golden_section_min(|x| 2.0 * x * x + 2000.0 / x, 0.1, 50.0, 1e-10).unwrap();
        assert!((prism.argmin - 7.937005259840998).abs() <= 1e-6);
    }

    #[test]
    fn golden_section_rejects_bad_input() {
        assert!(matches!(
            golden_section_min(|x| x, 1.0, 1.0, 1e-6),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            golden_section_min(|x| x, 2.0, 1.0, 1e-6),
            Err(Error::Domain(_))
        ));
        assert!(golden_section_min(|x| x, 0.0, 1.0, 0.0).is_err());
        assert!(golden_section_min(|x| x, 0.0, f64::INFINITY, 1e-3).is_err());
    }

    #[test]
    fn golden_section_hits_iteration_cap() {
        let gs = GoldenSection {
            tol: 1e-12,
            max_iter: 10,
        };
        let err = gs.minimize(|x| x * x, -1.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::Convergence { iterations: 10, .. }));
        // tolerance below the float spacing near 1e6 can never be met
        let err = golden_section_min(|x| (x - 1e6).powi(2), 1e6 - 1.0, 1e6 + 1.0, 1e-12);
        assert!(matches!(err, Err(Error::Convergence { .. })));
    }

    #[test]
    fn golden_section_ties_keep_lower_side() {
        let sol = golden_section_min(|_| 1.0, 0.0, 1.0, 1e-9).unwrap();
        assert!(sol.argmin < 1e-8);
    }

    #[test]
    fn golden_section_is_deterministic() {
        let f = |x: f64| (x - 0.3).powi(2) + x.sin();
        let a = golden_section_min(f, -2.0, 2.0, 1e-10).unwrap();
        let b = golden_section_min(f, -2.0, 2.0, 1e-10).unwrap();
        assert_eq!(a.argmin.to_bits(), b.argmin.to_bits());
        assert_eq!(a, b);
    }

    #[test]
    fn quadratic_vertex_examples() {
        assert_eq!(quadratic_vertex(0.0, 2400.0), 1200.0);
        assert_eq!(quadratic_vertex(-3.5, 3.5), 0.0);
        assert_eq!(quadratic_vertex(3.0, 5.0), 4.0);
        assert_eq!(quadratic_vertex(7.0, 7.0), 7.0);
    }

    #[test]
    fn bisect_examples() {
        let x = bisect_boundary(|x| x <= 1.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((x - 1.0).abs() <= 1e-12);
        let x = bisect_boundary(|x| x * x <= 2.0, 0.0, 2.0, 1e-12).unwrap();
        assert!((x - 2f64.sqrt()).abs() <= 1e-12);
    }

    #[test]
    fn bisect_bracket_errors() {
        assert!(matches!(
            bisect_boundary(|x| x > 5.0, 0.0, 2.0, 1e-9),
            Err(Error::Bracket(_))
        ));
        assert!(matches!(
            bisect_boundary(|x| x < 5.0, 0.0, 2.0, 1e-9),
            Err(Error::Bracket(_))
        ));
    }

    #[test]
    fn central_diff_examples() {
        let d = central_diff(|r| PI * r * r, 3.0, 1e-6);
        assert!((d - 6.0 * PI).abs() <= 1e-8);
        assert_eq!(central_diff(|_| 4.2, 17.0, 1e-3), 0.0);
        let d = central_diff(|r| 4.0 * r * r, 2.0, 1e-6);
        assert!((d - 16.0).abs() <= 1e-8);
    }

    #[test]
    fn grid_refine_examples() {
        let sol = grid_refine_max(f64::sin, 0.0, PI, 64, 1e-10).unwrap();
        assert!((sol.argmin - PI / 2.0).abs() <= 1e-7);
        assert!((sol.value - 1.0).abs() <= 1e-15);
        assert_eq!(sol.method, Method::GridRefine);

        let q = |s: f64| 8.0 / 9.0 + 4.0 * s / 9.0 - 4.0 * s * s / 9.0;
        let sol = grid_refine_max(q, -1.0, 1.0, DEFAULT_GRID_N, 1e-10).unwrap();
        assert!((sol.argmin - 0.5).abs() <= 1e-7);
        assert!((sol.value - 1.0).abs() <= 1e-15);

        let sol = grid_refine_max(|_| 3.0, -1.0, 1.0, 16, 1e-10).unwrap();
        assert_eq!(sol.value, 3.0);
        assert!(sol.evaluations >= 16);
    }

    #[test]
    fn grid_refine_finds_global_of_two_bumps() {
        // the right bump is higher but narrower
        let f = |x: f64| (-(x + 1.0).powi(2) * 4.0).exp() + 1.2 * (-(x - 1.0).powi(2) * 50.0).exp();
        let sol = grid_refine_max(f, -3.0, 3.0, 2048, 1e-10).unwrap();
        assert!((sol.argmin - 1.0).abs() < 1e-3, "{}", sol.argmin);
        assert!(grid_refine_max(f, -3.0, 3.0, 2, 1e-10).is_err());
    }
}
