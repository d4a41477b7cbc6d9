use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::time::Instant;

use optishape_core::geometry::area_coefficient;
use optishape_core::problems::{self, FenceLayout, NUMERIC_REL_TOL};
use optishape_core::verify::{self, Check, Suite};
use optishape_core::{Error, Shape};

use crate::args::{Cli, Command, CurveArgs, Format, Params, Problem, SolveArgs, VerifyArgs};
use crate::json::Json;
use crate::report::{align, text_number, InputValue, RunReport, Status};

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSOLVED: i32 = 3;
pub const EXIT_IO: i32 = 4;

const DEFAULT_V_SEGMENTS: u32 = 4;
const DEFAULT_H_SEGMENTS: u32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or arguments outside a problem's domain.
    Usage(String),
    /// The problem could not be solved, or a residual exceeded its tolerance.
    Unsolved(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Unsolved(_) => EXIT_UNSOLVED,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Unsolved(msg) => write!(f, "{msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => CliError::Usage(e.to_string()),
            _ => CliError::Unsolved(e.to_string()),
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Solve(args) => cmd_solve(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Curve(args) => cmd_curve(args, out),
    }
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = solve_report(args)?;
    let text = match args.format {
        Format::Json => report.render_json(),
        Format::Text => report.render_text(),
    };
    out.write_all(text.as_bytes())?;
    out.flush()?;
    match &report.diagnostic {
        Some(d) => Err(CliError::Unsolved(d.clone())),
        None => Ok(()),
    }
}

/// Builds the report for `solve`. Failures of the solver itself come back as
/// an infeasible report with a diagnostic; only usage errors are `Err`.
pub fn solve_report(args: &SolveArgs) -> Result<RunReport, CliError> {
    let started = Instant::now();
    let inputs = inputs_for(args.problem, &args.params)?;
    let mut report = RunReport {
        problem: args.problem.name().to_string(),
        inputs,
        solution: Vec::new(),
        method: String::new(),
        residuals: Vec::new(),
        tolerance: args.tol,
        status: Status::Ok,
        diagnostic: None,
        elapsed_seconds: 0.0,
    };
    match solve(args.problem, &args.params) {
        Ok(solved) => {
            report.solution = solved.solution;
            report.method = solved.method.to_string();
            report.residuals = solved.residuals;
            let over = report
                .worst_residual()
                .filter(|(_, worst)| *worst > args.tol)
                .map(|(name, worst)| {
                    format!(
                        "residual {name} = {worst:e} exceeds tolerance {:e}",
                        args.tol
                    )
                });
            if over.is_some() {
                report.status = Status::Infeasible;
                report.diagnostic = over;
            }
        }
        Err(e @ Error::Domain(_)) => return Err(e.into()),
        Err(e) => {
            report.status = Status::Infeasible;
            report.method = "none".to_string();
            report.diagnostic = Some(e.to_string());
        }
    }
    report.elapsed_seconds = started.elapsed().as_secs_f64();
    Ok(report)
}

struct Solved {
    solution: Vec<(String, f64)>,
    method: &'static str,
    residuals: Vec<(String, f64)>,
}

fn named(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

/// `|got − want| / max(1, |want|)`.
fn gap(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs()
}

fn require(value: Option<f64>, flag: &str, problem: Problem) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("`solve {}` needs --{flag}", problem.name())))
}

/// Checks that only the flags relevant to `problem` were given and returns
/// them, with defaults filled in, as report inputs.
fn inputs_for(problem: Problem, p: &Params) -> Result<Vec<(String, InputValue)>, CliError> {
    let given: [(&str, bool); 7] = [
        ("fence", p.fence.is_some()),
        ("v-segments", p.v_segments.is_some()),
        ("h-segments", p.h_segments.is_some()),
        ("volume", p.volume.is_some()),
        ("surface-area", p.surface_area.is_some()),
        ("base", p.base.is_some()),
        ("radius", p.radius.is_some()),
    ];
    let allowed: &[&str] = match problem {
        Problem::Rectangle => &["fence"],
        Problem::Box => &["volume"],
        Problem::Fence => &["fence", "v-segments", "h-segments"],
        Problem::Can => &["volume", "base"],
        Problem::CanDual => &["surface-area", "base"],
        Problem::RectSemicircle | Problem::EllipseSemicircle => &["radius"],
    };
    if let Some((flag, _)) = given
        .iter()
        .find(|(flag, set)| *set && !allowed.contains(flag))
    {
        return Err(CliError::Usage(format!(
            "--{flag} does not apply to `solve {}`",
            problem.name()
        )));
    }
    let base = p.base.unwrap_or(Shape::Circle);
    let num = |k: &str, v: f64| (k.to_string(), InputValue::Num(v));
    let inputs = match problem {
        Problem::Rectangle => vec![num("perimeter", require(p.fence, "fence", problem)?)],
        Problem::Box => vec![num("volume", require(p.volume, "volume", problem)?)],
        Problem::Fence => vec![
            num("fence", require(p.fence, "fence", problem)?),
            num(
                "v_segments",
                p.v_segments.unwrap_or(DEFAULT_V_SEGMENTS) as f64,
            ),
            num(
                "h_segments",
                p.h_segments.unwrap_or(DEFAULT_H_SEGMENTS) as f64,
            ),
        ],
        Problem::Can => vec![
            num("volume", require(p.volume, "volume", problem)?),
            ("base".to_string(), InputValue::Text(base.to_string())),
        ],
        Problem::CanDual => vec![
            num(
                "surface_area",
                require(p.surface_area, "surface-area", problem)?,
            ),
            ("base".to_string(), InputValue::Text(base.to_string())),
        ],
        Problem::RectSemicircle | Problem::EllipseSemicircle => {
            vec![num("radius", p.radius.unwrap_or(1.0))]
        }
    };
    Ok(inputs)
}

fn solve(problem: Problem, p: &Params) -> optishape_core::Result<Solved> {
    let base = p.base.unwrap_or(Shape::Circle);
    let radius = p.radius.unwrap_or(1.0);
    // presence was checked by inputs_for
    let fence = p.fence.unwrap_or(f64::NAN);
    let volume = p.volume.unwrap_or(f64::NAN);
    let surface = p.surface_area.unwrap_or(f64::NAN);
    let solved = match problem {
        Problem::Rectangle => {
            let s = problems::solve_rectangle(fence)?;
            let n = problems::solve_rectangle_numeric(fence, NUMERIC_REL_TOL)?;
            Solved {
                solution: named(&[("x", s.x), ("y", s.y), ("area", s.area)]),
                method: s.method.as_str(),
                residuals: named(&[
                    ("square_deficit", (s.x - s.y).abs() / fence),
                    ("numeric_gap", gap(n.x, s.x)),
                ]),
            }
        }
        Problem::Box => {
            let s = problems::solve_box(volume)?;
            let n = problems::solve_box_numeric(volume, NUMERIC_REL_TOL)?;
            let side = volume.cbrt();
            Solved {
                solution: named(&[
                    ("x", s.x),
                    ("y", s.y),
                    ("z", s.z),
                    ("surface_area", s.surface_area),
                ]),
                method: s.method.as_str(),
                residuals: named(&[
                    (
                        "cube_deficit",
                        ((s.x - s.z).abs().max((s.y - s.z).abs())) / side,
                    ),
                    (
                        "numeric_gap",
                        gap(n.x, s.x).max(gap(n.y, s.y)).max(gap(n.z, s.z)),
                    ),
                ]),
            }
        }
        Problem::Fence => {
            let layout = FenceLayout::new(
                p.v_segments.unwrap_or(DEFAULT_V_SEGMENTS),
                p.h_segments.unwrap_or(DEFAULT_H_SEGMENTS),
            )?;
            let s = problems::solve_fence(fence, layout)?;
            let n = problems::solve_fence_numeric(fence, layout, NUMERIC_REL_TOL)?;
            Solved {
                solution: named(&[
                    ("x", s.x),
                    ("y", s.y),
                    ("vertical_total", s.vertical_total),
                    ("horizontal_total", s.horizontal_total),
                    ("area", s.area),
                ]),
                method: s.method.as_str(),
                residuals: named(&[
                    (
                        "half_split_deficit",
                        (s.vertical_total - fence / 2.0).abs() / fence,
                    ),
                    ("numeric_gap", gap(n.vertical_total, s.vertical_total)),
                ]),
            }
        }
        Problem::Can => {
            let s = problems::solve_can(volume, base)?;
            let n = problems::solve_can_numeric(volume, base, NUMERIC_REL_TOL)?;
            can_solved(&s, &n, rel(s.volume, volume))?
        }
        Problem::CanDual => {
            let s = problems::solve_can_dual(surface, base)?;
            let n = problems::solve_can_dual_numeric(surface, base, NUMERIC_REL_TOL)?;
            can_solved(&s, &n, rel(s.surface_area, surface))?
        }
        Problem::RectSemicircle => {
            let s = problems::solve_rect_semicircle(radius)?;
            let n = problems::solve_rect_semicircle_numeric(radius, NUMERIC_REL_TOL)?;
            Solved {
                solution: named(&[
                    ("half_width", s.half_width),
                    ("height", s.height),
                    ("area", s.area),
                ]),
                method: s.method.as_str(),
                residuals: named(&[
                    ("vertex_off_arc", rel(s.half_width.hypot(s.height), radius)),
                    ("numeric_gap", gap(n.half_width, s.half_width)),
                ]),
            }
        }
        Problem::EllipseSemicircle => {
            let s = problems::solve_ellipse_semicircle_radius(radius)?;
            let rect = problems::solve_rect_semicircle(radius)?;
            let vertices = rect.upper_vertices();
            let contact_gap = if s.contacts.len() == 2 {
                s.contacts
                    .iter()
                    .map(|c| {
                        vertices
                            .iter()
                            .map(|v| c.distance(*v))
                            .fold(f64::INFINITY, f64::min)
                    })
                    .fold(0.0, f64::max)
                    / radius
            } else {
                f64::INFINITY
            };
            let mut solution = named(&[("a", s.a), ("b", s.b), ("area", s.area)]);
            for (i, c) in s.contacts.iter().enumerate() {
                solution.push((format!("contact_{}_x", i + 1), c.x));
                solution.push((format!("contact_{}_y", i + 1), c.y));
            }
            let closed_a = 6f64.sqrt() / 3.0 * radius;
            let closed_b = 2f64.sqrt() / 3.0 * radius;
            Solved {
                solution,
                method: s.method.as_str(),
                residuals: named(&[
                    (
                        "closed_form_gap",
                        gap(s.a, closed_a).max(gap(s.b, closed_b)),
                    ),
                    ("contact_vs_rectangle", contact_gap),
                ]),
            }
        }
    };
    Ok(solved)
}

fn can_solved(
    s: &problems::CanSolution,
    n: &problems::CanSolution,
    constraint_error: f64,
) -> optishape_core::Result<Solved> {
    // the prism over the same r and h is the circular can scaled by c/π
    let ratio = area_coefficient(s.base)? / std::f64::consts::PI;
    let circle_volume = problems::can_volume(Shape::Circle, s.r, s.h)?;
    Ok(Solved {
        solution: named(&[
            ("r", s.r),
            ("h", s.h),
            ("surface_area", s.surface_area),
            ("volume", s.volume),
        ]),
        method: s.method.as_str(),
        residuals: named(&[
            ("h_over_r_minus_2", (s.h / s.r - 2.0).abs()),
            ("constraint_error", constraint_error),
            (
                "equivalence_ratio_error",
                rel(s.volume / circle_volume, ratio),
            ),
            ("numeric_gap", gap(n.r, s.r).max(gap(n.h, s.h))),
        ]),
    })
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let suites: Vec<Suite> = if args.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        let mut s = args.suites.clone();
        s.sort();
        s.dedup();
        s
    };
    let started = Instant::now();
    let checks = verify::run(&suites)?;
    let elapsed = started.elapsed().as_secs_f64();
    let failed = checks.iter().filter(|c| !c.passed()).count();
    let text = match args.format {
        Format::Json => verify_json(&suites, &checks, elapsed).render(),
        Format::Text => verify_text(&checks, elapsed),
    };
    out.write_all(text.as_bytes())?;
    out.flush()?;
    if failed > 0 {
        return Err(CliError::Unsolved(format!(
            "{failed} of {} checks failed",
            checks.len()
        )));
    }
    Ok(())
}

fn verify_json(suites: &[Suite], checks: &[Check], elapsed: f64) -> Json {
    let items = checks
        .iter()
        .map(|c| {
            Json::obj([
                ("suite", Json::from(c.suite.name())),
                ("name", Json::from(c.name.as_str())),
                ("passed", Json::from(c.passed())),
                ("cases", Json::Num(c.cases as f64)),
                ("worst", Json::Num(c.worst)),
                ("tolerance", Json::Num(c.tolerance)),
            ])
        })
        .collect();
    Json::obj([
        ("passed", Json::from(checks.iter().all(Check::passed))),
        (
            "suites",
            Json::Arr(suites.iter().map(|s| Json::from(s.name())).collect()),
        ),
        ("checks", Json::Arr(items)),
        ("elapsed_seconds", Json::Num(elapsed)),
    ])
}

fn verify_text(checks: &[Check], elapsed: f64) -> String {
    let rows: Vec<(String, String)> = checks
        .iter()
        .map(|c| {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            (
                format!("{verdict}  {:<11}  {}", c.suite.name(), c.name),
                format!(
                    "worst {} <= {} ({} cases)",
                    text_number(c.worst),
                    text_number(c.tolerance),
                    c.cases
                ),
            )
        })
        .collect();
    let passed = checks.iter().filter(|c| c.passed()).count();
    let mut text = align(&rows);
    text.push_str(&format!(
        "{passed}/{} checks passed in {elapsed:.3} s\n",
        checks.len()
    ));
    text
}

pub fn cmd_curve(args: &CurveArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let layout = FenceLayout::new(args.v_segments, args.h_segments)?;
    let rows = problems::fence_area_curve(args.fence, layout, args.points)?;
    match &args.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| {
                CliError::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display())))
            })?;
            let mut w = BufWriter::new(file);
            write_csv(&rows, &mut w)?;
            w.flush()?;
        }
        None => {
            write_csv(&rows, out)?;
            out.flush()?;
        }
    }
    Ok(())
}

/// `L,area` header then one row per point, shortest round-trip formatting.
pub fn write_csv(rows: &[(f64, f64)], w: &mut dyn Write) -> io::Result<()> {
    w.write_all(b"L,area\n")?;
    for (l, area) in rows {
        writeln!(w, "{l},{area}")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::args::CurveKind;

    fn solve_args(problem: Problem, params: Params) -> SolveArgs {
        SolveArgs {
            problem,
            params,
            format: Format::Json,
            tol: 1e-6,
        }
    }

    #[test]
    fn fence_report() {
        let params = Params {
            fence: Some(2400.0),
            ..Params::default()
        };
        let report = solve_report(&solve_args(Problem::Fence, params)).unwrap();
        assert_eq!(report.status, Status::Ok);
        assert!((report.solution_value("x").unwrap() - 300.0).abs() <= 1e-6);
        assert!((report.solution_value("y").unwrap() - 600.0).abs() <= 1e-6);
    }

    #[test]
    fn every_problem_passes_default_tolerance() {
        let cases = [
            (
                Problem::Rectangle,
                Params {
                    fence: Some(40.0),
                    ..Params::default()
                },
            ),
            (
                Problem::Box,
                Params {
                    volume: Some(1000.0),
                    ..Params::default()
                },
            ),
            (
                Problem::Can,
                Params {
                    volume: Some(1e6),
                    base: Some(Shape::RegularPolygon(7)),
                    ..Params::default()
                },
            ),
            (
                Problem::CanDual,
                Params {
                    surface_area: Some(300.0),
                    ..Params::default()
                },
            ),
            (
                Problem::RectSemicircle,
                Params {
                    radius: Some(3.0),
                    ..Params::default()
                },
            ),
            (Problem::EllipseSemicircle, Params::default()),
        ];
        for (problem, params) in cases {
            let report = solve_report(&solve_args(problem, params)).unwrap();
            assert_eq!(report.status, Status::Ok, "{report:?}");
            assert!(report.diagnostic.is_none());
        }
    }

    #[test]
    fn tight_tolerance_is_reported() {
        let params = Params {
            volume: Some(1000.0),
            ..Params::default()
        };
        let mut args = solve_args(Problem::Can, params);
        args.tol = 1e-300;
        let mut sink = Vec::new();
        let report = solve_report(&args).unwrap();
        if report.worst_residual().unwrap().1 > 1e-300 {
            let err = cmd_solve(&args, &mut sink).unwrap_err();
            assert_eq!(err.exit_code(), EXIT_UNSOLVED);
            assert!(String::from_utf8(sink).unwrap().contains("\"diagnostic\""));
        }
    }

    #[test]
    fn flags_are_checked() {
        let stray = Params {
            fence: Some(1.0),
            volume: Some(1.0),
            ..Params::default()
        };
        let err = solve_report(&solve_args(Problem::Box, stray)).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let err = solve_report(&solve_args(Problem::Can, Params::default())).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
        let negative = Params {
            volume: Some(-1.0),
            ..Params::default()
        };
        let err = solve_report(&solve_args(Problem::Can, negative)).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn three_point_curve() {
        let args = CurveArgs {
            kind: CurveKind::Fence,
            fence: 2400.0,
            v_segments: 4,
            h_segments: 2,
            points: 3,
            out: None,
        };
        let mut buf = Vec::new();
        cmd_curve(&args, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "L,area\n0,0\n1200,180000\n2400,0\n"
        );
    }
}
