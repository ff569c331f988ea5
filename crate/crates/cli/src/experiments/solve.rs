use std::f64::consts::LN_2;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;
use std::time::Instant;

use arcbie_core::assembly::{assemble_all, assemble_n, assemble_s, rhs_dirichlet, rhs_neumann};
use arcbie_core::cheb::Basis;
use arcbie_core::curve::Curve;
use arcbie_core::gmres::{gmres, SolveReport};
use arcbie_core::operator::OperatorMat;
use arcbie_core::sqrtm::{build_p1, build_p2};
use arcbie_core::C64;
use nalgebra::DMatrix;
use serde_json::json;

use super::{complex_json, elapsed_row};
use crate::config::{Config, Preconditioner, Problem};
use crate::report::{Cell, Report};
use crate::CliError;

/// System matrix and right-hand side: `S` with Dirichlet data or `N` with
/// Neumann data.
pub fn build_problem(
    curve: &Curve,
    k: f64,
    n: usize,
    m: usize,
    problem: Problem,
    dir: [f64; 2],
) -> Result<(OperatorMat, Vec<C64>), CliError> {
    Ok(match problem {
        Problem::Dirichlet => (assemble_s(curve, k, n, m)?, rhs_dirichlet(curve, k, dir, n).coeffs),
        Problem::Neumann => (assemble_n(curve, k, n, m)?, rhs_neumann(curve, k, dir, n).coeffs),
    })
}

fn laplace_diag(problem: Problem, n: usize) -> OperatorMat {
    let (basis, d): (Basis, Vec<f64>) = match problem {
        Problem::Dirichlet => {
            let d = (0..n).map(|j| if j == 0 { 2.0 / LN_2 } else { 2.0 * j as f64 }).collect();
            (Basis::T, d)
        }
        Problem::Neumann => (Basis::U, (0..n).map(|j| 2.0 / (j + 1) as f64).collect()),
    };
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, d.into_iter().map(|v| C64::new(v, 0.0))));
    OperatorMat::new(diag, basis, basis)
}

pub fn build_preconditioner(
    curve: &Curve,
    k: f64,
    n: usize,
    problem: Problem,
    pre: Preconditioner,
) -> Result<Option<OperatorMat>, CliError> {
    Ok(match (pre, problem) {
        (Preconditioner::None, _) => None,
        (Preconditioner::LaplaceDiag, p) => Some(laplace_diag(p, n)),
        (Preconditioner::Parametrix, Problem::Dirichlet) => Some(build_p1(curve, k, n)?),
        (Preconditioner::Parametrix, Problem::Neumann) => Some(build_p2(curve, k, n)?),
    })
}

pub fn solve_once(
    a: &OperatorMat,
    b: &[C64],
    p: Option<&OperatorMat>,
    tol: f64,
    maxit: usize,
) -> SolveReport {
    let apply_a = |x: &[C64]| a.apply(x);
    match p {
        Some(p) => {
            let apply_p = |x: &[C64]| p.apply(x);
            gmres(&apply_a, Some(&apply_p), b, tol, maxit)
        }
        None => gmres(&apply_a, None, b, tol, maxit),
    }
}

fn dump(op: &OperatorMat, dir: &Path, name: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    op.dump_csv(BufWriter::new(File::create(dir.join(name))?))?;
    Ok(())
}

/// One preconditioned solve with the configured curve, wavenumber and size.
/// With `dump_matrices` set the system matrix and preconditioner are written
/// to `dump_dir`.
pub fn solve(cfg: &Config, dump_dir: Option<&Path>) -> Result<Report, CliError> {
    let start = Instant::now();
    let curve = cfg.curve.build()?;
    let n = cfg.n;
    let cell = Cell::new("solve", &curve.id(), cfg.k, n);
    let (a, b) = build_problem(&curve, cfg.k, n, cfg.quad(n), cfg.problem, cfg.direction)?;
    let p = build_preconditioner(&curve, cfg.k, n, cfg.problem, cfg.preconditioner)?;
    let rep = solve_once(&a, &b, p.as_ref(), cfg.tolerance, cfg.maxit.unwrap_or(n));

    if cfg.dump_matrices {
        let dir = dump_dir.unwrap_or(Path::new("."));
        dump(&a, dir, "system.csv")?;
        if let Some(p) = &p {
            dump(p, dir, "preconditioner.csv")?;
        }
    }

    let mut r = Report::default();
    r.rows.push(cell.info("iterations", rep.iterations as f64));
    r.rows.push(cell.info("final residual", rep.residual_history.last().copied().unwrap_or(1.0)));
    r.rows.push(cell.flag("converged", rep.converged));
    r.rows.push(elapsed_row(&cell, start));
    r.details.insert(
        "solve".into(),
        json!({
            "problem": cfg.problem,
            "preconditioner": cfg.preconditioner.name(),
            "iterations": rep.iterations,
            "residual_history": rep.residual_history,
            "converged": rep.converged,
            "stagnated": rep.stagnated,
            "wall_time_s": rep.wall_time_s,
            "solution": complex_json(&rep.solution),
        }),
    );
    Ok(r)
}

/// Iteration counts over `ks x ns x preconditioners` for both problems.
///
/// For each wavenumber and problem, checks that the parametrix needs at most
/// `iteration_ratio` times the unpreconditioned count at every size, and that
/// its count varies by at most `iteration_spread` across sizes.
pub fn bench(cfg: &Config) -> Result<Report, CliError> {
    let curve = cfg.curve.build()?;
    let th = &cfg.thresholds;
    let mut r = Report::default();
    let mut details = Vec::new();
    for &k in &cfg.ks {
        for problem in [Problem::Dirichlet, Problem::Neumann] {
            let mut counts: Vec<(usize, Preconditioner, usize, bool)> = Vec::new();
            for &n in &cfg.ns {
                let start = Instant::now();
                let cell = Cell::new(&format!("bench-{}", name(problem)), &curve.id(), k, n);
                let ops = assemble_all(&curve, k, n, cfg.quad(n))?;
                let (a, b) = match problem {
                    Problem::Dirichlet => (&ops.s, rhs_dirichlet(&curve, k, cfg.direction, n).coeffs),
                    Problem::Neumann => (&ops.n, rhs_neumann(&curve, k, cfg.direction, n).coeffs),
                };
                for &pre in &cfg.preconditioners {
                    let p = build_preconditioner(&curve, k, n, problem, pre)?;
                    let rep = solve_once(a, &b, p.as_ref(), cfg.tolerance, cfg.maxit.unwrap_or(n));
                    log::info!("{} k = {k} N = {n} {}: {} iterations", name(problem), pre.name(), rep.iterations);
                    r.rows.push(cell.info(&format!("iterations {}", pre.name()), rep.iterations as f64));
                    r.rows.push(cell.flag(&format!("converged {}", pre.name()), rep.converged));
                    details.push(json!({
                        "problem": name(problem),
                        "k": k,
                        "N": n,
                        "preconditioner": pre.name(),
                        "iterations": rep.iterations,
                        "converged": rep.converged,
                        "stagnated": rep.stagnated,
                        "residual_history": rep.residual_history,
                        "wall_time_s": rep.wall_time_s,
                    }));
                    counts.push((n, pre, rep.iterations, rep.converged));
                }
                r.rows.push(elapsed_row(&cell, start));
            }
            let find = |n: usize, pre: Preconditioner| {
                counts.iter().find(|c| c.0 == n && c.1 == pre).map(|c| c.2)
            };
            let largest = cfg.ns.iter().copied().max().unwrap_or(cfg.n);
            for &n in &cfg.ns {
                if let (Some(p), Some(none)) = (find(n, Preconditioner::Parametrix), find(n, Preconditioner::None)) {
                    let cell = Cell::new(&format!("bench-{}", name(problem)), &curve.id(), k, n);
                    r.rows.push(cell.at_most("iteration ratio parametrix/none", p as f64 / none as f64, th.iteration_ratio));
                }
            }
            let par: Vec<usize> = cfg.ns.iter().filter_map(|&n| find(n, Preconditioner::Parametrix)).collect();
            if par.len() > 1 {
                let spread = par.iter().max().unwrap() - par.iter().min().unwrap();
                let cell = Cell::new(&format!("bench-{}", name(problem)), &curve.id(), k, largest);
                r.rows.push(cell.at_most("iteration spread parametrix", spread as f64, th.iteration_spread as f64));
            }
        }
    }
    r.details.insert("runs".into(), serde_json::Value::Array(details));
    Ok(r)
}

fn name(p: Problem) -> &'static str {
    match p {
        Problem::Dirichlet => "dirichlet",
        Problem::Neumann => "neumann",
    }
}
