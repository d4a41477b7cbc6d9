//! Invariant suites.
//!
//! Each suite sweeps one structural property over many inputs and reports the
//! worst residual against a fixed tolerance.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{self, area_coefficient, Shape};
use crate::optimize::central_diff;
use crate::oracle;
use crate::problems::{self, FenceLayout, NUMERIC_REL_TOL};

/// Seed for the randomized fence instances.
pub const FENCE_SEED: u64 = 0x5eed_fe4c_e000_0002;
pub const FENCE_INSTANCES: usize = 200;
pub const CAN_VOLUMES: [f64; 4] = [1e-3, 1.0, 1e3, 1e6];
pub const SCALE_FACTORS: [f64; 3] = [0.5, 2.0, 10.0];

/// Circle, triangle through dodecagon, and the 100-gon.
pub fn test_bases() -> Vec<Shape> {
    std::iter::once(Shape::Circle)
        .chain((3..=12).map(Shape::RegularPolygon))
        .chain(std::iter::once(Shape::RegularPolygon(100)))
        .collect()
}

/// Inradii `10^k` for 61 values of `k` evenly spaced in `[−3, 3]`.
pub fn radius_sweep() -> Vec<f64> {
    (0..=60)
        .map(|k| 10f64.powf(-3.0 + f64::from(k) / 10.0))
        .collect()
}

/// Distance in units in the last place between two finite doubles of the
/// same sign.
pub fn ulps_between(a: f64, b: f64) -> u64 {
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 {
            i64::MIN - bits
        } else {
            bits
        }
    };
    key(a).abs_diff(key(b))
}

fn rel_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

/// Relative difference with unit floor on the scale, used when comparing a
/// numeric path with its closed form.
fn scaled_err(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Derivative,
    HalfSplit,
    H2r,
    Duality,
    Equivalence,
    Coincidence,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Derivative,
        Suite::HalfSplit,
        Suite::H2r,
        Suite::Duality,
        Suite::Equivalence,
        Suite::Coincidence,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Derivative => "derivative",
            Suite::HalfSplit => "half-split",
            Suite::H2r => "h2r",
            Suite::Duality => "duality",
            Suite::Equivalence => "equivalence",
            Suite::Coincidence => "coincidence",
            Suite::Oracle => "oracle",
        }
    }

    pub fn run(self) -> Result<Vec<Check>> {
        match self {
            Suite::Derivative => derivative(),
            Suite::HalfSplit => half_split(),
            Suite::H2r => h2r(),
            Suite::Duality => duality(),
            Suite::Equivalence => equivalence(),
            Suite::Coincidence => coincidence(),
            Suite::Oracle => oracle_agreement(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one invariant over its whole sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub worst: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.worst.is_finite() && self.worst <= self.tolerance
    }
}

/// Accumulates the worst residual of one invariant.
struct Tally {
    suite: Suite,
    name: &'static str,
    tolerance: f64,
    cases: usize,
    worst: f64,
}

impl Tally {
    fn new(suite: Suite, name: &'static str, tolerance: f64) -> Self {
        Tally {
            suite,
            name,
            tolerance,
            cases: 0,
            worst: 0.0,
        }
    }

    fn record(&mut self, residual: f64) {
        self.cases += 1;
        // NaN poisons the check
        if residual.is_nan() || residual > self.worst {
            self.worst = if residual.is_nan() {
                f64::INFINITY
            } else {
                residual
            };
        }
    }

    fn finish(self) -> Check {
        Check {
            suite: self.suite,
            name: self.name.to_string(),
            cases: self.cases,
            worst: self.worst,
            tolerance: self.tolerance,
        }
    }
}

pub fn run(suites: &[Suite]) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for suite in suites {
        checks.extend(suite.run()?);
    }
    Ok(checks)
}

pub fn run_all() -> Result<Vec<Check>> {
    run(&Suite::ALL)
}

fn derivative() -> Result<Vec<Check>> {
    let suite = Suite::Derivative;
    let mut slope = Tally::new(suite, "perimeter equals d(area)/dr (relative)", 1e-6);
    let mut ratio = Tally::new(suite, "area/perimeter equals r/2 (ulps)", 4.0);
    let mut scaling = Tally::new(
        suite,
        "area and perimeter scale as k^2 and k (relative)",
        1e-12,
    );
    for base in test_bases() {
        for r in radius_sweep() {
            let area = |r: f64| geometry::area(base, r).unwrap_or(f64::NAN);
            let p = geometry::perimeter(base, r)?;
            slope.record(rel_err(central_diff(area, r, r * 1e-6), p));
            ratio.record(ulps_between(geometry::area(base, r)? / p, r / 2.0) as f64);
        }
        for k in SCALE_FACTORS {
            for r in [1e-2, 1.0, 37.5] {
                let (a, p) = (geometry::area(base, r)?, geometry::perimeter(base, r)?);
                scaling.record(rel_err(geometry::area(base, k * r)?, k * k * a));
                scaling.record(rel_err(geometry::perimeter(base, k * r)?, k * p));
            }
        }
    }

    let mut shoelace = Tally::new(
        suite,
        "area coefficient equals shoelace area, n = 3..64",
        1e-12,
    );
    for n in 3..=64 {
        let oracle = geometry::shoelace_area(&geometry::polygon_vertices(n, 1.0)?)?;
        shoelace.record((area_coefficient(Shape::RegularPolygon(n))? - oracle).abs());
    }

    // residual: amount by which c fails to drop from n to n + 1, or to stay above π
    let mut monotone = Tally::new(suite, "area coefficient decreases toward pi", 0.0);
    let mut prev = area_coefficient(Shape::RegularPolygon(3))?;
    for n in 4..=1000 {
        let c = area_coefficient(Shape::RegularPolygon(n))?;
        monotone.record((c - prev).max(PI - c).max(0.0));
        prev = c;
    }

    Ok(vec![
        slope.finish(),
        ratio.finish(),
        scaling.finish(),
        shoelace.finish(),
        monotone.finish(),
    ])
}

/// `(F, v_segments, h_segments)` with `F ∈ [1, 10⁶]` and counts in `2..=50`.
pub fn random_fences(count: usize, seed: u64) -> Vec<(f64, FenceLayout)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let total = rng.gen_range(1.0..=1e6);
            let layout = FenceLayout {
                v_segments: rng.gen_range(2..=50),
                h_segments: rng.gen_range(2..=50),
            };
            (total, layout)
        })
        .collect()
}

fn half_split() -> Result<Vec<Check>> {
    let suite = Suite::HalfSplit;
    let mut split = Tally::new(suite, "half the fence is vertical (deficit / F)", 1e-9);
    let mut budget = Tally::new(
        suite,
        "vertical + horizontal uses the whole fence (/ F)",
        1e-9,
    );
    for (total, layout) in random_fences(FENCE_INSTANCES, FENCE_SEED) {
        let sol = problems::solve_fence(total, layout)?;
        split.record((sol.vertical_total - total / 2.0).abs() / total);
        split.record((sol.horizontal_total - total / 2.0).abs() / total);
        budget.record((sol.vertical_total + sol.horizontal_total - total).abs() / total);
    }

    let mut classic = Tally::new(suite, "2400 ft with two partitions gives 300 x 600", 1e-6);
    let sol = problems::solve_fence(2400.0, FenceLayout::new(4, 2)?)?;
    classic.record((sol.x - 300.0).abs());
    classic.record((sol.y - 600.0).abs());

    Ok(vec![split.finish(), budget.finish(), classic.finish()])
}

fn h2r() -> Result<Vec<Check>> {
    let suite = Suite::H2r;
    let mut shape = Tally::new(suite, "optimal can has h = 2r (|h/r - 2|)", 1e-6);
    let mut scaling = Tally::new(
        suite,
        "r scales with the cube root of the volume (relative)",
        1e-9,
    );
    for base in test_bases() {
        for volume in CAN_VOLUMES {
            let sol = problems::solve_can(volume, base)?;
            shape.record((sol.h / sol.r - 2.0).abs());
            for k in SCALE_FACTORS {
                let scaled = problems::solve_can(k * k * k * volume, base)?;
                scaling.record(rel_err(scaled.r, k * sol.r));
            }
        }
    }

    let mut textbook = Tally::new(suite, "1000 cm^3 can has r = (500/pi)^(1/3), h = 2r", 1e-6);
    let sol = problems::solve_can(1000.0, Shape::Circle)?;
    let r = (500.0 / PI).cbrt();
    textbook.record((sol.r - r).abs());
    textbook.record((sol.h - 2.0 * r).abs());

    Ok(vec![shape.finish(), scaling.finish(), textbook.finish()])
}

fn duality() -> Result<Vec<Check>> {
    let suite = Suite::Duality;
    let mut round_trip = Tally::new(
        suite,
        "max volume at the min-area can's surface recovers V (relative)",
        1e-6,
    );
    let mut shape = Tally::new(suite, "dual optimum has h = 2r (|h/r - 2|)", 1e-6);
    for base in test_bases() {
        for volume in CAN_VOLUMES {
            let sa = problems::solve_can(volume, base)?.surface_area;
            let dual = problems::solve_can_dual(sa, base)?;
            round_trip.record(rel_err(dual.volume, volume));
            shape.record((dual.h / dual.r - 2.0).abs());
        }
    }
    Ok(vec![round_trip.finish(), shape.finish()])
}

fn equivalence() -> Result<Vec<Check>> {
    let suite = Suite::Equivalence;
    let mut volume = Tally::new(
        suite,
        "prism volume = (c/pi) x can volume (relative)",
        1e-12,
    );
    let mut surface = Tally::new(
        suite,
        "prism surface = (c/pi) x can surface (relative)",
        1e-12,
    );
    for base in test_bases() {
        let ratio = problems::equivalence_ratio(base)?;
        for (r, h) in [(1.0, 1.0), (0.25, 3.0), (5.4, 10.8), (120.0, 0.5)] {
            let can_v = problems::can_volume(Shape::Circle, r, h)?;
            let can_sa = problems::can_surface_area(Shape::Circle, r, h)?;
            volume.record(rel_err(problems::can_volume(base, r, h)?, ratio * can_v));
            surface.record(rel_err(
                problems::can_surface_area(base, r, h)?,
                ratio * can_sa,
            ));
        }
    }
    let mut square = Tally::new(suite, "square prism ratio is 4/pi (relative)", 1e-12);
    square.record(rel_err(
        problems::equivalence_ratio(Shape::SQUARE)?,
        4.0 / PI,
    ));
    Ok(vec![volume.finish(), surface.finish(), square.finish()])
}

fn coincidence() -> Result<Vec<Check>> {
    let suite = Suite::Coincidence;
    let sol = problems::solve_ellipse_semicircle()?;
    let rect = problems::solve_rect_semicircle(1.0)?;

    let mut axes = Tally::new(suite, "optimal ellipse has a = sqrt6/3, b = sqrt2/3", 1e-6);
    axes.record((sol.a - 6f64.sqrt() / 3.0).abs());
    axes.record((sol.b - 2f64.sqrt() / 3.0).abs());

    let mut contacts = Tally::new(suite, "contact points are (+-sqrt2/2, sqrt2/2)", 1e-6);
    let mut vertices = Tally::new(
        suite,
        "contact points are the optimal rectangle's corners",
        1e-6,
    );
    let mut on_curves = Tally::new(
        suite,
        "contact points lie on the circle and the ellipse",
        1e-9,
    );
    if sol.contacts.len() != 2 {
        contacts.record(f64::INFINITY);
        vertices.record(f64::INFINITY);
    }
    for (p, corner) in sol.contacts.iter().zip(rect.upper_vertices()) {
        contacts.record(
            (p.x.abs() - FRAC_1_SQRT_2)
                .abs()
                .max((p.y - FRAC_1_SQRT_2).abs()),
        );
        vertices.record((p.x - corner.x).abs().max((p.y - corner.y).abs()));
        on_curves.record((p.x * p.x + p.y * p.y - 1.0).abs());
        let on_ellipse =
            p.x * p.x / (sol.a * sol.a) + (p.y - sol.b).powi(2) / (sol.b * sol.b) - 1.0;
        on_curves.record(on_ellipse.abs());
    }
    Ok(vec![
        axes.finish(),
        contacts.finish(),
        vertices.finish(),
        on_curves.finish(),
    ])
}

/// Deviation from the oracle in units of four times its resolution.
fn oracle_units(solver: f64, oracle: f64, resolution: f64) -> f64 {
    (solver - oracle).abs() / (4.0 * resolution)
}

fn oracle_agreement() -> Result<Vec<Check>> {
    let suite = Suite::Oracle;
    let mut agree = Tally::new(
        suite,
        "solvers agree with brute force (deviation / 4 x resolution)",
        1.0,
    );
    let mut numeric = Tally::new(
        suite,
        "numeric paths agree with closed forms (relative)",
        1e-6,
    );

    for p in [1.0, 40.0, 2400.0] {
        let closed = problems::solve_rectangle(p)?;
        let brute = oracle::rectangle(p)?;
        agree.record(oracle_units(closed.x, brute.argmin, brute.resolution));
        let num = problems::solve_rectangle_numeric(p, NUMERIC_REL_TOL)?;
        numeric.record(scaled_err(num.x, closed.x).max(scaled_err(num.y, closed.y)));
    }

    for v in [1.0, 8.0, 1000.0] {
        let closed = problems::solve_box(v)?;
        let brute = oracle::cuboid(v, 600)?;
        agree.record(oracle_units(closed.x, brute.x, brute.resolution_x));
        agree.record(oracle_units(closed.y, brute.y, brute.resolution_y));
        let num = problems::solve_box_numeric(v, NUMERIC_REL_TOL)?;
        for (n, c) in [(num.x, closed.x), (num.y, closed.y), (num.z, closed.z)] {
            numeric.record(scaled_err(n, c));
        }
    }

    for (total, layout) in [
        (2400.0, (4, 2)),
        (1200.0, (3, 2)),
        (100.0, (2, 2)),
        (5e5, (17, 41)),
    ] {
        let layout = FenceLayout::new(layout.0, layout.1)?;
        let closed = problems::solve_fence(total, layout)?;
        let brute = oracle::fence(total, layout.v_segments, layout.h_segments)?;
        agree.record(oracle_units(
            closed.vertical_total,
            brute.argmin,
            brute.resolution,
        ));
        let num = problems::solve_fence_numeric(total, layout, NUMERIC_REL_TOL)?;
        numeric.record(scaled_err(num.x, closed.x).max(scaled_err(num.y, closed.y)));
    }

    for base in [
        Shape::Circle,
        Shape::RegularPolygon(3),
        Shape::SQUARE,
        Shape::RegularPolygon(7),
    ] {
        for volume in [1.0, 1000.0] {
            let closed = problems::solve_can(volume, base)?;
            let brute = oracle::can(volume, base)?;
            agree.record(oracle_units(closed.r, brute.argmin, brute.resolution));
            let num = problems::solve_can_numeric(volume, base, NUMERIC_REL_TOL)?;
            numeric.record(scaled_err(num.r, closed.r).max(scaled_err(num.h, closed.h)));

            let sa = closed.surface_area;
            let dual = problems::solve_can_dual(sa, base)?;
            let brute = oracle::can_dual(sa, base)?;
            agree.record(oracle_units(dual.r, brute.argmin, brute.resolution));
            let num = problems::solve_can_dual_numeric(sa, base, NUMERIC_REL_TOL)?;
            numeric.record(scaled_err(num.r, dual.r).max(scaled_err(num.h, dual.h)));
        }
    }

    for radius in [1.0, 2.0, 10.0] {
        let closed = problems::solve_rect_semicircle(radius)?;
        let brute = oracle::rect_semicircle(radius)?;
        agree.record(oracle_units(
            closed.half_width,
            brute.argmin,
            brute.resolution,
        ));
        let num = problems::solve_rect_semicircle_numeric(radius, NUMERIC_REL_TOL)?;
        numeric.record(scaled_err(num.half_width, closed.half_width));
    }

    let ellipse = problems::solve_ellipse_semicircle()?;
    let brute = oracle::ellipse_semicircle(problems::B_MIN, problems::B_MAX)?;
    agree.record(oracle_units(ellipse.b, brute.argmin, brute.resolution));
    let brute_a = oracle::ellipse_frontier(brute.argmin);
    // along the frontier |da/db| = √3 at the optimum
    agree.record(oracle_units(ellipse.a, brute_a, 2.0 * brute.resolution));

    Ok(vec![agree.finish(), numeric.finish()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ulps() {
        assert_eq!(ulps_between(1.0, 1.0), 0);
        assert_eq!(ulps_between(1.0, f64::from_bits(1.0f64.to_bits() + 3)), 3);
        assert_eq!(ulps_between(-0.0, 0.0), 0);
        assert_eq!(ulps_between(f64::from_bits(1), -f64::from_bits(1)), 2);
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn fence_instances_are_reproducible() {
        let a = random_fences(200, FENCE_SEED);
        assert_eq!(a, random_fences(200, FENCE_SEED));
        assert!(a.iter().all(|(f, l)| (1.0..=1e6).contains(f)
            && (2..=50).contains(&l.v_segments)
            && (2..=50).contains(&l.h_segments)));
    }

    #[test]
    fn nan_residual_fails() {
        let mut t = Tally::new(Suite::Oracle, "x", 1.0);
        t.record(0.5);
        t.record(f64::NAN);
        assert!(!t.finish().passed());
    }
}
