use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use optishape_core::verify::Suite;
use optishape_core::Shape;

/// Geometric optimization catalog: solve, verify, and export curves.
#[derive(Debug, Parser)]
#[command(name = "optishape", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one catalog problem and print a report.
    Solve(SolveArgs),
    /// Run the invariant suites.
    Verify(VerifyArgs),
    /// Emit `L,area` rows for plotting.
    Curve(CurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Rectangle,
    Box,
    Fence,
    Can,
    CanDual,
    RectSemicircle,
    EllipseSemicircle,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Rectangle => "rectangle",
            Problem::Box => "box",
            Problem::Fence => "fence",
            Problem::Can => "can",
            Problem::CanDual => "can-dual",
            Problem::RectSemicircle => "rect-semicircle",
            Problem::EllipseSemicircle => "ellipse-semicircle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Fence,
}

/// Problem parameters. All optional here; each problem checks the ones it
/// needs and rejects the rest.
#[derive(Debug, Clone, Default, Args)]
pub struct Params {
    /// Total fence length (the perimeter, for `rectangle`).
    #[arg(long, allow_negative_numbers = true)]
    pub fence: Option<f64>,
    /// Number of vertical runs.
    #[arg(long)]
    pub v_segments: Option<u32>,
    /// Number of horizontal runs.
    #[arg(long)]
    pub h_segments: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    pub volume: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub surface_area: Option<f64>,
    /// `circle` or a side count n >= 3.
    #[arg(long, value_parser = parse_base)]
    pub base: Option<Shape>,
    /// Semicircle radius.
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(value_enum)]
    pub problem: Problem,
    #[command(flatten)]
    pub params: Params,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Largest residual accepted for a successful run.
    #[arg(long, default_value_t = 1e-6, value_parser = parse_tol)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Run only these suites (repeatable).
    #[arg(long = "suite", value_name = "NAME", value_parser = parse_suite)]
    pub suites: Vec<Suite>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CurveArgs {
    #[arg(value_enum)]
    pub kind: CurveKind,
    #[arg(long, allow_negative_numbers = true)]
    pub fence: f64,
    #[arg(long, default_value_t = 4)]
    pub v_segments: u32,
    #[arg(long, default_value_t = 2)]
    pub h_segments: u32,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn parse_base(s: &str) -> Result<Shape, String> {
    if s.eq_ignore_ascii_case("circle") {
        return Ok(Shape::Circle);
    }
    let n: u32 = s
        .parse()
        .map_err(|_| format!("expected `circle` or a side count, got {s:?}"))?;
    Shape::polygon(n).map_err(|e| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        _ => Err(format!("tolerance must be a positive number, got {s:?}")),
    }
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Suite::ALL.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?} (expected one of {})", names.join(", "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn bases() {
        assert_eq!(parse_base("circle"), Ok(Shape::Circle));
        assert_eq!(parse_base("6"), Ok(Shape::RegularPolygon(6)));
        assert!(parse_base("2").is_err());
        assert!(parse_base("hexagon").is_err());
    }

    #[test]
    fn problem_names_match_value_enum() {
        for p in Problem::value_variants() {
            let pv = p.to_possible_value().unwrap();
            assert_eq!(pv.get_name(), p.name());
        }
    }

    #[test]
    fn parses_solve() {
        let cli = Cli::try_parse_from([
            "optishape",
            "solve",
            "fence",
            "--fence",
            "2400",
            "--v-segments",
            "4",
        ])
        .unwrap();
        let Command::Solve(args) = cli.command else {
            panic!()
        };
        assert_eq!(args.problem, Problem::Fence);
        assert_eq!(args.params.fence, Some(2400.0));
        assert_eq!(args.params.h_segments, None);
        assert_eq!(args.tol, 1e-6);
    }

    #[test]
    fn negative_values_reach_the_solver() {
        let cli = Cli::try_parse_from(["optishape", "solve", "can", "--volume", "-1"]).unwrap();
        let Command::Solve(args) = cli.command else {
            panic!()
        };
        assert_eq!(args.params.volume, Some(-1.0));
    }
}
