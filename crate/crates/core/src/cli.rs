//! Command-line front end. [`run`] parses arguments, executes one subcommand
//! and returns the process exit status: 0 on success, 1 when a check fails,
//! 2 on input errors.

use crate::error::{Error, Result};
use crate::generators::parse_spec;
use crate::geom::{BBox, Vec2};
use crate::graphcheck::{
    boundary_marking, cusp_parity_check, directional_densities, extract_graph, is_regular,
    ANGULAR_TOL,
};
use crate::io::{self, parse_list, to_canonical_json};
use crate::relaxsolve::{
    bm_compare, inpaint_scenario, minimize, ConstraintSet, InpaintOptions, SolveOptions,
};
use crate::varifold::{CurveSystem, Verdict};
use crate::winding::reconstruct_set;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

const LONG_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (file format ", "1", ")");

#[derive(Parser, Debug)]
#[command(name = "elastic-varifolds", version, long_version = LONG_VERSION)]
#[command(
    about = "Elastic energies, checks and relaxation scenarios for systems of closed planar curves"
)]
pub struct Cli {
    /// Worker threads for parallel evaluation.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Input {
    /// Curve JSON file.
    #[arg(long, conflicts_with = "gen")]
    pub input: Option<PathBuf>,
    /// Built-in generator, e.g. `circle:1,2048` or `figbm:32`.
    #[arg(long = "gen")]
    pub gen: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Mass, elastic energy and total energy.
    Energy {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Energy report JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Hölder chain, density bound and graph regularity.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Verdict JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monotonicity profile `A(r)` at p = 2.
    Monotonicity {
        #[command(flatten)]
        input: Input,
        /// Profile center `x,y`; defaults to the bounding-box center.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
        #[arg(long, default_value_t = 200)]
        radii: usize,
        /// Largest radius; defaults to ten times the system diameter.
        #[arg(long)]
        r_max: Option<f64>,
        /// CSV with header `r,A`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Parity reconstruction of the enclosed set as a PGM raster.
    Reconstruct {
        #[command(flatten)]
        input: Input,
        /// `x0,y0,x1,y1`; defaults to the padded bounding box.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        /// `NX,NY`.
        #[arg(long, default_value = "256,256")]
        res: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Planar multigraph, directional densities and regularity.
    Graph {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        snap_tol: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Cusp parity of the halved graph.
    Cusps {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        snap_tol: Option<f64>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Gradient descent on `λ·L + E_p` over the free nodes.
    Minimize {
        #[command(flatten)]
        input: Input,
        /// Freeze JSON: `{"frozen": [[bool, ...], ...]}` or `{"clamp": {...}}`.
        #[arg(long)]
        freeze: Option<PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        #[arg(long, default_value_t = 0.1)]
        lambda: f64,
        #[arg(long, default_value_t = 20000)]
        iters: usize,
        #[arg(long, default_value_t = 1e-8)]
        grad_tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// CSV with header `iter,energy,grad_norm,step`.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Completions of two touching squares inside the unit disc.
    Inpaint {
        #[arg(long, default_value_t = 0.2)]
        lambda: f64,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
        /// Nodes per unit length near the disc.
        #[arg(long, default_value_t = 64)]
        res: usize,
        #[arg(long, default_value_t = 0.5)]
        corner_radius: f64,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-petal cross against arc and loop completions.
    BmCompare {
        #[arg(long, default_value_t = 64)]
        res: usize,
        #[arg(long, default_value_t = 2000)]
        iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG figure with multiplicity-colored strokes.
    Render {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 600.0)]
        width: f64,
    },
}

/// Parses `argv` (including the program name) and runs the command, writing
/// the human summary to stdout.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.max(1))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| execute(&cli.command, &mut buf));
    let _ = out.write_all(&buf);
    match result {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

/// Six significant digits.
fn g6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn load(input: &Input) -> Result<CurveSystem> {
    match (&input.input, &input.gen) {
        (Some(path), None) => io::load_system(path),
        (None, Some(spec)) => parse_spec(spec),
        _ => Err(Error::InvalidParameter(
            "exactly one of --input or --gen is required".into(),
        )),
    }
}

fn check_paths(inputs: &[&Option<PathBuf>], outputs: &[&Option<PathBuf>]) -> Result<()> {
    for p in inputs.iter().filter_map(|p| p.as_ref()) {
        if !p.is_file() {
            return Err(Error::InvalidParameter(format!(
                "input file not found: {}",
                p.display()
            )));
        }
    }
    for p in outputs.iter().filter_map(|p| p.as_ref()) {
        let dir = p
            .parent()
            .filter(|d| !d.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        if !dir.is_dir() {
            return Err(Error::InvalidParameter(format!(
                "output directory not found: {}",
                dir.display()
            )));
        }
    }
    Ok(())
}

fn write_opt(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn print_verdicts(out: &mut dyn Write, verdicts: &[Verdict]) -> Result<()> {
    for v in verdicts {
        writeln!(
            out,
            "{:<24} {}  lhs {}  rhs {}",
            v.name,
            if v.pass { "pass" } else { "FAIL" },
            g6(v.lhs),
            g6(v.rhs)
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    verdicts: &'a [Verdict],
    regularity: &'a crate::graphcheck::RegularityVerdict,
}

#[derive(Serialize)]
struct GraphOutput<'a> {
    graph: &'a crate::graphcheck::PlanarGraph,
    directional: Vec<crate::graphcheck::VertexDirectionalReport>,
    regularity: crate::graphcheck::RegularityVerdict,
    cusps: crate::graphcheck::CuspReport,
}

#[derive(Serialize)]
struct MinimizeOutput<'a> {
    status: crate::relaxsolve::SolveStatus,
    iterations: usize,
    report: &'a crate::varifold::EnergyReport,
}

fn execute(cmd: &Command, out: &mut dyn Write) -> Result<bool> {
    match cmd {
        Command::Energy {
            input,
            p,
            lambda,
            out: path,
        } => {
            check_paths(&[&input.input], &[path])?;
            let s = load(input)?;
            let r = s.energy_report(*p, *lambda)?;
            writeln!(out, "mass    {}", g6(r.mass))?;
            writeln!(out, "E_{}     {}", g6(*p), g6(r.elastic))?;
            writeln!(out, "F_{}     {}", g6(*p), g6(r.mass + r.elastic))?;
            writeln!(out, "total   {}  (lambda {})", g6(r.total), g6(*lambda))?;
            write_opt(path, &to_canonical_json(&r))?;
            Ok(true)
        }
        Command::Check {
            input,
            p,
            out: path,
        } => {
            check_paths(&[&input.input], &[path])?;
            let s = load(input)?;
            let mut verdicts = s.holder_chain_check(*p)?;
            let samples = s.sample_on_curve(16);
            verdicts.extend(s.density_bound_check(&samples, 1e-6 * s.diameter())?);
            let regularity = is_regular(&extract_graph(&s, None)?, ANGULAR_TOL)?;
            let (density, chain): (Vec<Verdict>, Vec<Verdict>) = verdicts
                .iter()
                .cloned()
                .partition(|v| v.name.starts_with("density"));
            print_verdicts(out, &chain)?;
            let failed = density.iter().filter(|v| !v.pass).count();
            let worst = density
                .iter()
                .map(|v| v.lhs - v.rhs)
                .fold(f64::NEG_INFINITY, f64::max);
            writeln!(
                out,
                "{:<24} {}  {} samples, {} failing, max lhs-rhs {}",
                "density_bound",
                if failed == 0 { "pass" } else { "FAIL" },
                density.len(),
                failed,
                g6(worst)
            )?;
            writeln!(out, "{}", regularity.message)?;
            write_opt(
                path,
                &to_canonical_json(&CheckOutput {
                    verdicts: &verdicts,
                    regularity: &regularity,
                }),
            )?;
            Ok(verdicts.iter().all(|v| v.pass) && regularity.regular)
        }
        Command::Monotonicity {
            input,
            center,
            radii,
            r_max,
            out: path,
        } => {
            check_paths(&[&input.input], &[path])?;
            let s = load(input)?;
            let c = match center {
                Some(t) => {
                    let v = parse_list::<f64>(t, 2, "--center")?;
                    Vec2::new(v[0], v[1])
                }
                None => {
                    let b = s.bbox();
                    (b.min + b.max) * 0.5
                }
            };
            let r_max = r_max.unwrap_or(10.0 * s.diameter());
            if *radii < 2 || !(r_max > 0.0) {
                return Err(Error::InvalidParameter(
                    "need at least 2 radii and a positive --r-max".into(),
                ));
            }
            let rs: Vec<f64> = (1..=*radii)
                .map(|k| r_max * k as f64 / *radii as f64)
                .collect();
            let prof = s.monotonicity_profile(c, &rs)?;
            let v = prof.verdict();
            writeln!(
                out,
                "A(r_max)  {}  limit (mass+E_2)/2  {}",
                g6(*prof.values.last().unwrap()),
                g6(prof.limit_estimate)
            )?;
            print_verdicts(out, std::slice::from_ref(&v))?;
            write_opt(path, &io::monotonicity_csv(&prof))?;
            Ok(v.pass)
        }
        Command::Reconstruct {
            input,
            bbox,
            res,
            out: path,
        } => {
            check_paths(&[&input.input], &[&Some(path.clone())])?;
            let s = load(input)?;
            let r = parse_list::<usize>(res, 2, "--res")?;
            let bb = match bbox {
                Some(t) => {
                    let v = parse_list::<f64>(t, 4, "--bbox")?;
                    BBox {
                        min: Vec2::new(v[0], v[1]),
                        max: Vec2::new(v[2], v[3]),
                    }
                }
                None => {
                    let b = s.bbox();
                    let m = 0.05 * s.diameter();
                    BBox {
                        min: b.min - Vec2::new(m, m),
                        max: b.max + Vec2::new(m, m),
                    }
                }
            };
            let grid = reconstruct_set(&s, bb, r[0], r[1])?;
            std::fs::write(path, grid.to_pgm())?;
            std::fs::write(path.with_extension("json"), to_canonical_json(&grid.meta()))?;
            writeln!(out, "inside area    {}", g6(grid.inside_area()))?;
            writeln!(out, "area estimate  {}", g6(grid.area_estimate()))?;
            Ok(true)
        }
        Command::Graph {
            input,
            snap_tol,
            report,
        }
        | Command::Cusps {
            input,
            snap_tol,
            report,
        } => {
            check_paths(&[&input.input], &[report])?;
            let s = load(input)?;
            let g = extract_graph(&s, *snap_tol)?;
            let directional = (0..g.vertices.len())
                .map(|v| directional_densities(&g, v, ANGULAR_TOL))
                .collect::<Result<Vec<_>>>()?;
            let regularity = is_regular(&g, ANGULAR_TOL)?;
            let cusps = cusp_parity_check(&g, &boundary_marking(&s, &g), ANGULAR_TOL)?;
            let ok = if matches!(cmd, Command::Graph { .. }) {
                writeln!(
                    out,
                    "vertices {}  edges {}",
                    g.vertices.len(),
                    g.edges.len()
                )?;
                for (k, e) in g.edges.iter().enumerate() {
                    writeln!(
                        out,
                        "edge {k}: {:?} -> {:?}  multiplicity {}",
                        e.a, e.b, e.multiplicity
                    )?;
                }
                writeln!(out, "{}", regularity.message)?;
                regularity.regular
            } else if !cusps.regular {
                writeln!(out, "rejected: {}", regularity.message)?;
                false
            } else {
                writeln!(
                    out,
                    "odd vertices of the halved graph: {}",
                    cusps.odd_vertices.len()
                )?;
                for q in &cusps.odd_positions {
                    writeln!(out, "  cusp at ({}, {})", g6(q.x), g6(q.y))?;
                }
                writeln!(out, "even count: {}", cusps.even_count)?;
                cusps.even_count
            };
            write_opt(
                report,
                &to_canonical_json(&GraphOutput {
                    graph: &g,
                    directional,
                    regularity,
                    cusps,
                }),
            )?;
            Ok(ok)
        }
        Command::Minimize {
            input,
            freeze,
            p,
            lambda,
            iters,
            grad_tol,
            out: path,
            trace,
        } => {
            check_paths(&[&input.input, freeze], &[path, trace])?;
            let s = load(input)?;
            let constraints = match freeze {
                Some(f) => io::load_constraints(f, &s)?,
                None => ConstraintSet::free(&s),
            };
            let mut opts = SolveOptions::new(*p, *lambda);
            opts.max_iters = *iters;
            opts.grad_tol = *grad_tol;
            let r = minimize(&s, &constraints, &opts)?;
            writeln!(
                out,
                "status {:?} after {} iterations",
                r.status, r.iterations
            )?;
            writeln!(
                out,
                "energy {} -> {}",
                g6(r.trace[0].energy),
                g6(r.report.total)
            )?;
            if let Some(o) = path {
                io::save_system(&r.system, o)?;
                let side = o.with_extension("report.json");
                let rep = MinimizeOutput {
                    status: r.status,
                    iterations: r.iterations,
                    report: &r.report,
                };
                std::fs::write(side, to_canonical_json(&rep))?;
            }
            write_opt(trace, &io::trace_csv(&r.trace))?;
            Ok(true)
        }
        Command::Inpaint {
            lambda,
            p,
            res,
            corner_radius,
            iters,
            out: path,
        } => {
            check_paths(&[], &[path])?;
            let mut o = InpaintOptions::new(*lambda, *p);
            o.per_unit = *res;
            o.corner_radius = *corner_radius;
            o.max_iters = *iters;
            let r = inpaint_scenario(&o)?;
            writeln!(
                out,
                "cross {}  (4λ = {})",
                g6(r.cross.energy),
                g6(4.0 * lambda)
            )?;
            for c in &r.others {
                writeln!(
                    out,
                    "{:<22} {}  per connection {}  bound {}",
                    c.name,
                    g6(c.energy),
                    g6(c.per_connection),
                    c.lower_bound.map_or("-".into(), g6)
                )?;
            }
            writeln!(out, "cross wins: {}", r.cross_wins)?;
            write_opt(path, &to_canonical_json(&r))?;
            Ok(r.cross_wins && r.others.iter().all(|c| c.bound_holds))
        }
        Command::BmCompare {
            res,
            iters,
            out: path,
        } => {
            check_paths(&[], &[path])?;
            let r = bm_compare(*res, *iters)?;
            writeln!(out, "cross inside B_1 {}", g6(r.cross_inside))?;
            for c in r.arcs.iter().chain(&r.loops) {
                writeln!(
                    out,
                    "{:<10} per connection {}  bound {}",
                    c.name,
                    g6(c.per_connection),
                    c.lower_bound.map_or("-".into(), g6)
                )?;
            }
            writeln!(out, "cross cheapest: {}", r.cross_cheapest)?;
            write_opt(path, &to_canonical_json(&r))?;
            Ok(r.cross_cheapest && r.arcs.iter().chain(&r.loops).all(|c| c.bound_holds))
        }
        Command::Render {
            input,
            out: path,
            width,
        } => {
            check_paths(&[&input.input], &[&Some(path.clone())])?;
            if !(*width > 0.0) {
                return Err(Error::InvalidParameter("--width must be positive".into()));
            }
            let s = load(input)?;
            std::fs::write(path, io::render_svg(&s, *width))?;
            writeln!(out, "wrote {}", path.display())?;
            Ok(true)
        }
    }
}
