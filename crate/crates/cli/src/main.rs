//! `spheroidal-ga` command-line entry point.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use spheroidal_ga::ga::Mv;
use spheroidal_ga::harmonics::{
    laplace_residual, HarmonicMode, Kind, LaplaceStats, ModeGrid, Parity,
};
use spheroidal_ga::monogenic::{
    cauchy_kernel, fd_gradient_nd, qm_correction_search, qm_gradient, render_cylindrical,
};
use spheroidal_ga::projection::{project, ProjectionCase};
use spheroidal_ga::spheroidal::{invert, position, Case, CartesianPoint, SpheroidalPoint};
use spheroidal_ga::suites::{run_suite, RunConfig, Suite};

#[derive(Parser, Debug)]
#[command(name = "spheroidal-ga", version, about = "Spheroidal geometric-algebra verification and data emitters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run verification suites and write a JSON report.
    Verify(VerifyArgs),
    /// Convert between spheroidal and Cartesian coordinates.
    Transform(TransformArgs),
    /// Emit spheroidal-graphic projection data.
    Project(ProjectArgs),
    /// Tabulate a separated harmonic and its Laplace residual.
    Harmonic(HarmonicArgs),
    /// Inspect a quasi-monogenic field and search for a correction.
    Qm(QmArgs),
    /// Scan the finite-difference monogenicity residual of the Cauchy kernel.
    Kernel(KernelArgs),
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// identities, identities-grad, brackets, jx2, laplacian-equiv,
    /// monogenic, harmonics, coordinates, projection or all.
    #[arg(long)]
    suite: String,
    /// Tolerance override as key=value; repeatable.
    #[arg(long = "tolerance", value_name = "KEY=VALUE")]
    tolerances: Vec<String>,
    #[arg(long)]
    fd_step: Option<f64>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, env = "SPHEROIDAL_GA_SEED", default_value_t = 42)]
    seed: u64,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[arg(long, default_value = "prolate")]
    case: Case,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    /// Fill eta, theta, phi from x0, x1, x2 instead of the reverse.
    #[arg(long)]
    inverse: bool,
    /// Input CSV with header case,mu,eta,theta,phi,x0,x1,x2; empty case and
    /// mu cells fall back to the flags. Without it a coordinate grid is
    /// emitted.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Points per coordinate for the default grid.
    #[arg(long, default_value_t = 8)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    /// Bounding case, 1 (oblate) or 3 (prolate).
    #[arg(long)]
    case: u8,
    #[arg(long)]
    nu: f64,
    /// Points per angle.
    #[arg(long, default_value_t = 64)]
    grid: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct HarmonicArgs {
    #[arg(long)]
    case: Case,
    #[arg(long)]
    kind: Kind,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    m: u32,
    #[arg(long, default_value = "cos")]
    parity: Parity,
    /// Points per coordinate.
    #[arg(long, default_value_t = 6)]
    grid: usize,
    #[arg(long, default_value_t = 1.0)]
    mu: f64,
    #[arg(long, default_value_t = 1e-5)]
    tolerance: f64,
    /// CSV path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Residual summary path; stderr when absent.
    #[arg(long)]
    summary: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QmArgs {
    #[arg(long)]
    k: u32,
    /// Largest total degree of correction terms; defaults to k.
    #[arg(long)]
    scan_max_degree: Option<u32>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct KernelArgs {
    /// Number of spatial dimensions; the kernel lives in n + 1.
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Pole, comma separated with n + 1 components.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    y: Vec<f64>,
    /// Points per axis of the (x0, x1) scan plane.
    #[arg(long, default_value_t = 21)]
    grid: usize,
    #[arg(long, default_value_t = 1e-3)]
    fd_step: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(anyhow::Error),
    Runtime(anyhow::Error),
    /// A check ran and did not pass; output was already written.
    Check,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(anyhow!("{e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Transform(a) => cmd_transform(a),
        Command::Project(a) => cmd_project(a),
        Command::Harmonic(a) => cmd_harmonic(a),
        Command::Qm(a) => cmd_qm(a),
        Command::Kernel(a) => cmd_kernel(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(e)) => {
            eprintln!("usage error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn sink(path: Option<&Path>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_json(path: Option<&Path>, value: &impl Serialize) -> anyhow::Result<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let suite: Suite = a.suite.parse().map_err(usage)?;
    let mut cfg = RunConfig::with_seed(a.seed);
    cfg.samples = a.samples;
    cfg.fd_step = a.fd_step;
    for t in &a.tolerances {
        let (k, v) = t
            .split_once('=')
            .ok_or_else(|| usage(format!("tolerance `{t}` is not KEY=VALUE")))?;
        let v: f64 = v.trim().parse().map_err(|_| usage(format!("tolerance `{t}` has a bad value")))?;
        cfg.set_tolerance(k.trim(), v).map_err(usage)?;
    }
    cfg.validate().map_err(usage)?;
    let report = run_suite(suite, &cfg).map_err(usage)?;
    write_json(a.out.as_deref(), &report)?;
    for e in report.failures() {
        eprintln!(
            "FAIL {}: max error {:e} > {:e} at {:?}",
            e.identity_name,
            e.max_abs_error,
            e.tolerance,
            e.worst_point.as_deref().unwrap_or(&[])
        );
    }
    if report.pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

const TRANSFORM_HEADER: [&str; 8] = ["case", "mu", "eta", "theta", "phi", "x0", "x1", "x2"];

#[derive(Clone, Debug, Default)]
struct TransformRow {
    case: Option<Case>,
    mu: Option<f64>,
    coords: [Option<f64>; 6],
}

fn read_transform_rows(reader: impl Read) -> Result<Vec<TransformRow>, Failure> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let header = rdr.headers().map_err(|e| Failure::Runtime(e.into()))?.clone();
    let idx: Vec<Option<usize>> = TRANSFORM_HEADER
        .iter()
        .map(|name| header.iter().position(|h| h == *name))
        .collect();
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Failure::Runtime(e.into()))?;
        let cell = |i: usize| idx[i].and_then(|j| rec.get(j)).filter(|s| !s.is_empty());
        let num = |i: usize| -> Result<Option<f64>, Failure> {
            cell(i)
                .map(|s| s.parse::<f64>())
                .transpose()
                .map_err(|_| usage(format!("row {}: bad `{}` value", line + 1, TRANSFORM_HEADER[i])))
        };
        let case = cell(0).map(str::parse::<Case>).transpose().map_err(usage)?;
        let mut coords = [None; 6];
        for (k, c) in coords.iter_mut().enumerate() {
            *c = num(k + 2)?;
        }
        rows.push(TransformRow {
            case,
            mu: num(1)?,
            coords,
        });
    }
    Ok(rows)
}

fn default_transform_grid(case: Case, mu: f64, g: usize) -> Vec<TransformRow> {
    let g = g.max(2);
    let lin = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (g - 1) as f64;
    let mut rows = Vec::new();
    for i in 0..g {
        for j in 0..g {
            for k in 0..g {
                let coords = [
                    Some(lin(0.1, 2.0, i)),
                    Some(lin(0.05, std::f64::consts::PI - 0.05, j)),
                    Some(2.0 * std::f64::consts::PI * k as f64 / g as f64),
                    None,
                    None,
                    None,
                ];
                rows.push(TransformRow {
                    case: Some(case),
                    mu: Some(mu),
                    coords,
                });
            }
        }
    }
    rows
}

fn cmd_transform(a: TransformArgs) -> Result<(), Failure> {
    if !(a.mu > 0.0) {
        return Err(usage(format!("mu = {} must be > 0", a.mu)));
    }
    let rows = match &a.input {
        Some(p) => read_transform_rows(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )?,
        None if a.inverse => return Err(usage("--inverse needs --in")),
        None => default_transform_grid(a.case, a.mu, a.grid),
    };
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(TRANSFORM_HEADER).map_err(|e| Failure::Runtime(e.into()))?;
    for (line, row) in rows.iter().enumerate() {
        let case = row.case.unwrap_or(a.case);
        let mu = row.mu.unwrap_or(a.mu);
        let need = |k: usize| {
            row.coords[k].ok_or_else(|| {
                usage(format!("row {}: missing `{}`", line + 1, TRANSFORM_HEADER[k + 2]))
            })
        };
        let p = if a.inverse {
            let x = CartesianPoint::new(need(3)?, need(4)?, need(5)?);
            invert(&x, mu, case).map_err(|e| usage(format!("row {}: {e}", line + 1)))?
        } else {
            SpheroidalPoint::new(case, mu, need(0)?, need(1)?, need(2)?)
                .map_err(|e| usage(format!("row {}: {e}", line + 1)))?
        };
        let x = position(&p);
        let fields = [
            case.to_string(),
            mu.to_string(),
            p.eta.to_string(),
            p.theta.to_string(),
            p.phi.to_string(),
            x.0[0].to_string(),
            x.0[1].to_string(),
            x.0[2].to_string(),
        ];
        w.write_record(&fields).map_err(|e| Failure::Runtime(e.into()))?;
    }
    w.flush().map_err(|e| Failure::Runtime(e.into()))?;
    Ok(())
}

fn cmd_project(a: ProjectArgs) -> Result<(), Failure> {
    let case = ProjectionCase::from_id(a.case).map_err(usage)?;
    let spheroid = case.spheroid(a.nu).map_err(usage)?;
    if a.grid == 0 {
        return Err(usage("grid must be > 0"));
    }
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(["theta", "phi", "t", "phi_out"]).map_err(|e| Failure::Runtime(e.into()))?;
    let pi = std::f64::consts::PI;
    for i in 0..a.grid {
        // theta = pi is the projection pole
        let theta = pi * i as f64 / a.grid as f64;
        for j in 0..a.grid {
            let phi = 2.0 * pi * j as f64 / a.grid as f64;
            let x = spheroid.point(theta, phi).map_err(|e| Failure::Runtime(e.into()))?;
            let t = project(&x, a.nu, case).map_err(|e| Failure::Runtime(e.into()))?;
            w.write_record(&[theta, phi, t.t, t.phi].map(|v| v.to_string()))
                .map_err(|e| Failure::Runtime(e.into()))?;
        }
    }
    w.flush().map_err(|e| Failure::Runtime(e.into()))?;
    Ok(())
}

#[derive(Serialize)]
struct HarmonicSummary {
    schema: u32,
    mode: String,
    case: Case,
    kind: Kind,
    n: u32,
    m: u32,
    parity: Parity,
    separation_constant: f64,
    residual: LaplaceStats,
    tolerance: f64,
    pass: bool,
}

fn cmd_harmonic(a: HarmonicArgs) -> Result<(), Failure> {
    let mode = HarmonicMode::new(a.n, a.m, a.parity, a.kind, a.case).map_err(usage)?;
    if a.grid == 0 || !(a.mu > 0.0) || !(a.tolerance > 0.0) {
        return Err(usage("grid, mu and tolerance must be positive"));
    }
    let base = match a.kind {
        Kind::Interior => ModeGrid::default(),
        Kind::Exterior => ModeGrid {
            eta: (0.5, 2.0),
            ..ModeGrid::default()
        },
    };
    let grid = ModeGrid {
        mu: a.mu,
        counts: [a.grid; 3],
        ..base
    };
    let sol = spheroidal_ga::harmonics::SeparatedSolution::new(mode, grid.eta.1)
        .map_err(|e| Failure::Runtime(e.into()))?;
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(["eta", "theta", "phi", "x0", "x1", "x2", "U"])
        .map_err(|e| Failure::Runtime(e.into()))?;
    for p in grid.points(a.case).map_err(|e| Failure::Runtime(e.into()))? {
        let x = position(&p);
        let u = sol.eval(&p).map_err(|e| Failure::Runtime(e.into()))?;
        w.write_record(&[p.eta, p.theta, p.phi, x.0[0], x.0[1], x.0[2], u].map(|v| v.to_string()))
            .map_err(|e| Failure::Runtime(e.into()))?;
    }
    w.flush().map_err(|e| Failure::Runtime(e.into()))?;
    drop(w);

    let residual = laplace_residual(mode, &grid);
    let pass = residual.max <= a.tolerance;
    let summary = HarmonicSummary {
        schema: 1,
        mode: mode.to_string(),
        case: a.case,
        kind: a.kind,
        n: a.n,
        m: a.m,
        parity: a.parity,
        separation_constant: mode.separation_constant(),
        residual,
        tolerance: a.tolerance,
        pass,
    };
    match &a.summary {
        Some(p) => write_json(Some(p), &summary)?,
        None => eprintln!("{}", serde_json::to_string(&summary).map_err(anyhow::Error::from)?),
    }
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

#[derive(Serialize)]
struct QmSummary {
    k: u32,
    curl_free: bool,
    gradient_poly: String,
    correction_found: bool,
    correction: String,
    scan_max_degree: u32,
    nullity: usize,
}

fn cmd_qm(a: QmArgs) -> Result<(), Failure> {
    if a.k == 0 {
        return Err(usage("k must be >= 1"));
    }
    let max_degree = a.scan_max_degree.unwrap_or(a.k);
    let search = qm_correction_search(a.k, max_degree).map_err(usage)?;
    let g = qm_gradient(a.k);
    let summary = QmSummary {
        k: a.k,
        curl_free: g.grade_project(1).is_zero() && g.grade_project(2).is_zero(),
        gradient_poly: render_cylindrical(&g),
        correction_found: search.found,
        correction: search.correction_text(),
        scan_max_degree: max_degree,
        nullity: search.nullity,
    };
    write_json(a.out.as_deref(), &summary)?;
    Ok(())
}

fn cmd_kernel(a: KernelArgs) -> Result<(), Failure> {
    let dim = a.n + 1;
    if a.n == 0 || dim > 6 {
        return Err(usage(format!("n = {} must be in 1..=5", a.n)));
    }
    let y = if a.y.is_empty() { vec![0.0; dim] } else { a.y.clone() };
    if y.len() != dim {
        return Err(usage(format!("--y needs {dim} components, got {}", y.len())));
    }
    if a.grid < 2 || !(a.fd_step > 0.0) {
        return Err(usage("grid must be >= 2 and fd-step > 0"));
    }
    let ymv = Mv::vector(dim, &y);
    let mut header: Vec<String> = (0..dim).map(|i| format!("x{i}")).collect();
    header.extend(["abs_g", "div_residual", "curl_residual"].map(String::from));
    let mut w = csv::Writer::from_writer(sink(a.out.as_deref())?);
    w.write_record(&header).map_err(|e| Failure::Runtime(e.into()))?;
    for i in 0..a.grid {
        for j in 0..a.grid {
            let mut x = y.clone();
            x[0] += -2.0 + 4.0 * i as f64 / (a.grid - 1) as f64;
            x[1] += -2.0 + 4.0 * j as f64 / (a.grid - 1) as f64;
            if dim > 2 {
                // keep the scan plane off the pole
                x[2] += 0.1;
            }
            let xmv = Mv::vector(dim, &x);
            let r = (&xmv - &ymv).norm();
            let Ok(g) = cauchy_kernel(&xmv, &ymv) else {
                continue;
            };
            let yc = ymv.clone();
            let f = move |p: &[f64]| cauchy_kernel(&Mv::vector(p.len(), p), &yc);
            let scale = g.norm() / r;
            let (div, curl) = match fd_gradient_nd(&f, &x, a.fd_step * r) {
                Ok(grad) => (
                    grad.grade_project(0).norm() / scale,
                    grad.grade_project(2).norm() / scale,
                ),
                Err(_) => (f64::NAN, f64::NAN),
            };
            let mut rec: Vec<String> = x.iter().map(f64::to_string).collect();
            rec.extend([g.norm(), div, curl].map(|v| v.to_string()));
            w.write_record(&rec).map_err(|e| Failure::Runtime(e.into()))?;
        }
    }
    w.flush().map_err(|e| Failure::Runtime(e.into()))?;
    Ok(())
}
