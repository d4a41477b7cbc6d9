//! Circles and regular polygons parameterized by their inradius.
//!
//! The area of any of these shapes is `c·r²` for a constant `c` that depends
//! only on the shape, and the perimeter is `2c·r`, the derivative of the area
//! with respect to `r`.

use std::f64::consts::PI;
use std::fmt;

use crate::error::{Error, Result};

/// Base shape of a can or prism.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    Circle,
    /// Regular polygon with the given number of sides (at least 3).
    RegularPolygon(u32),
}

impl Shape {
    pub const SQUARE: Shape = Shape::RegularPolygon(4);

    /// Validated polygon constructor.
    pub fn polygon(sides: u32) -> Result<Self> {
        check_sides(sides)?;
        Ok(Shape::RegularPolygon(sides))
    }

    pub fn validate(self) -> Result<Self> {
        if let Shape::RegularPolygon(n) = self {
            check_sides(n)?;
        }
        Ok(self)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Circle => f.write_str("circle"),
            Shape::RegularPolygon(n) => write!(f, "{n}-gon"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

fn check_sides(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::domain(format!(
            "a regular polygon needs at least 3 sides, got {n}"
        )));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!(
            "inradius must be positive and finite, got {r}"
        )));
    }
    Ok(())
}

/// The constant `c` with `area = c·r²`: `π` for the circle, `n·tan(π/n)`
/// for the regular n-gon.
pub fn area_coefficient(shape: Shape) -> Result<f64> {
    match shape {
        Shape::Circle => Ok(PI),
        Shape::RegularPolygon(n) => {
            check_sides(n)?;
            let n = f64::from(n);
            Ok(n * (PI / n).tan())
        }
    }
}

pub fn area(shape: Shape, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(area_coefficient(shape)? * r * r)
}

pub fn perimeter(shape: Shape, r: f64) -> Result<f64> {
    check_radius(r)?;
    Ok(2.0 * area_coefficient(shape)? * r)
}

/// Vertices of the regular n-gon with inradius `r` centered at the origin,
/// counterclockwise, with the midpoint of the first edge on the positive
/// x-axis.
pub fn polygon_vertices(n: u32, r: f64) -> Result<Vec<Point2>> {
    check_sides(n)?;
    check_radius(r)?;
    let step = PI / f64::from(n);
    let circumradius = r / step.cos();
    Ok((0..n)
        .map(|k| {
            let angle = f64::from(2 * k) * step - step;
            Point2::new(circumradius * angle.cos(), circumradius * angle.sin())
        })
        .collect())
}

/// Area enclosed by a simple polygon given in order (either orientation).
pub fn shoelace_area(pts: &[Point2]) -> Result<f64> {
    if pts.len() < 3 {
        return Err(Error::domain(format!(
            "shoelace area needs at least 3 points, got {}",
            pts.len()
        )));
    }
    let twice: f64 = pts
        .iter()
        .zip(pts.iter().cycle().skip(1))
        .map(|(p, q)| p.x * q.y - q.x * p.y)
        .sum();
    Ok(twice.abs() / 2.0)
}

/// Sum of edge lengths of a closed polygon.
pub fn polyline_perimeter(pts: &[Point2]) -> f64 {
    pts.iter()
        .zip(pts.iter().cycle().skip(1))
        .map(|(p, q)| p.distance(*q))
        .sum()
}
