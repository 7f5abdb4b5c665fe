//! Command-line front end: configuration parsing, the five commands and the
//! solution, curve and report writers.
//!
//! Exit codes: 0 success, 1 configuration error, 2 no convergence or failed
//! verification, 3 internal error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::contour::{boundary_curves, BoundaryCurve, FourierPair, Mode, PatchConfig};
use crate::error::{Error, Result};
use crate::oracle::{identity_suite, jacobian_check, stationarity_at_speed, stationarity_residual};
use crate::solver::{continuation, eps_ladder, fitted_order, recheck, Diagnostics, Solution, SolveOptions};
use crate::spectral::{b_grid, invertible_b_scan};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 1;
pub const EXIT_NO_CONVERGENCE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "vstates", version, about = "Co-rotating and travelling doubly connected alpha-patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Configuration file (TOML with [patch], [solver], [output] sections).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Also write SVG renderings of the boundary curves.
    #[arg(long, global = true)]
    pub svg: bool,
    /// Output directory (overrides `out_dir` of the configuration).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Solution file to check (verify).
    #[arg(long, global = true)]
    pub solution: Option<PathBuf>,
    /// Permit |eps| above 0.2 d min(1, b).
    #[arg(long, global = true)]
    pub allow_large_eps: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Solve at a single eps.
    Solve,
    /// Solve along a list of eps values and fit the speed-error order.
    Sweep,
    /// Scan b for invertibility of the linearization.
    Regions,
    /// Re-check a solution file with the independent oracles.
    Verify,
    /// Run the kernel-identity suite.
    Identities,
}

/// A single `eps` or a list of them.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum EpsSpec {
    One(f64),
    Many(Vec<f64>),
}

impl EpsSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            EpsSpec::One(v) => vec![*v],
            EpsSpec::Many(v) => v.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct PatchSection {
    pub alpha: f64,
    #[serde(default = "default_n_fold")]
    pub n_fold: usize,
    pub gamma: f64,
    pub b: f64,
    #[serde(default = "default_d")]
    pub d: f64,
    pub eps: EpsSpec,
    #[serde(default = "default_mode")]
    pub mode: String,
}

fn default_n_fold() -> usize {
    2
}
fn default_d() -> f64 {
    1.0
}
fn default_mode() -> String {
    "corotating".into()
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub order_j: Option<usize>,
    pub grid_m: Option<usize>,
    pub tol: Option<f64>,
    pub max_iter: Option<usize>,
    pub fd_step: Option<f64>,
    pub continuation_steps: Option<usize>,
    pub allow_large_eps: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RegionsSection {
    #[serde(default = "default_b_min")]
    pub b_min: f64,
    #[serde(default = "default_b_max")]
    pub b_max: f64,
    #[serde(default = "default_b_step")]
    pub b_step: f64,
    #[serde(default = "default_j_max")]
    pub j_max: usize,
}

fn default_b_min() -> f64 {
    0.001
}
fn default_b_max() -> f64 {
    0.99
}
fn default_b_step() -> f64 {
    0.001
}
fn default_j_max() -> usize {
    64
}

impl Default for RegionsSection {
    fn default() -> Self {
        RegionsSection { b_min: default_b_min(), b_max: default_b_max(), b_step: default_b_step(), j_max: default_j_max() }
    }
}

/// Parsed configuration file.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub patch: PatchSection,
    pub solver: Option<SolverSection>,
    #[serde(default)]
    pub output: OutputSection,
    pub regions: Option<RegionsSection>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| Error::config("config", e.to_string()))?;
        cfg.geometry(None)?;
        cfg.options()?;
        if let Some(r) = &cfg.regions {
            if !(r.b_step > 0.0 && r.b_step <= 1e-3) {
                return Err(Error::config("regions.b_step", format!("{} must lie in (0, 1e-3]", r.b_step)));
            }
            if !(r.b_min > 0.0 && r.b_min < r.b_max && r.b_max < 1.0) {
                return Err(Error::config("regions.b_min", "need 0 < b_min < b_max < 1"));
            }
            if r.j_max < 2 {
                return Err(Error::config("regions.j_max", "must be >= 2"));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("config", format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn mode(&self) -> Result<Mode> {
        self.patch.mode.parse()
    }

    /// Patch parameters at `eps` for a solve; rejects parameter sets whose
    /// linearization is not invertible on the linked spaces.
    pub fn patch_config(&self, eps: Option<f64>) -> Result<PatchConfig> {
        let cfg = self.geometry(eps)?;
        if cfg.alpha == 0.0 && cfg.gamma == 0.0 {
            return Err(Error::config(
                "patch.gamma",
                "gamma = 0 with alpha = 0: the linearized operator is not an isomorphism on the linked space",
            ));
        }
        Ok(cfg)
    }

    /// Validated patch parameters at `eps` (the first configured one if `None`).
    pub fn geometry(&self, eps: Option<f64>) -> Result<PatchConfig> {
        let values = self.patch.eps.values();
        let eps = match (eps, values.first()) {
            (Some(e), _) => e,
            (None, Some(&e)) => e,
            (None, None) => return Err(Error::config("patch.eps", "empty eps list")),
        };
        let p = &self.patch;
        let cfg = match self.mode()? {
            Mode::Corotating => PatchConfig::corotating(p.alpha, p.n_fold, p.gamma, p.b, p.d, eps),
            Mode::Travelling => PatchConfig::travelling(p.alpha, p.gamma, p.b, p.d, eps),
        };
        cfg.validate().map_err(|e| match e {
            Error::Config { field, detail } => Error::config(format!("patch.{field}"), detail),
            other => other,
        })?;
        Ok(cfg)
    }

    pub fn options(&self) -> Result<SolveOptions> {
        let mut o = SolveOptions::default();
        if let Some(s) = &self.solver {
            o.order_j = s.order_j.unwrap_or(o.order_j);
            o.grid_m = s.grid_m.unwrap_or(o.grid_m);
            o.tol = s.tol.unwrap_or(o.tol);
            o.max_iter = s.max_iter.unwrap_or(o.max_iter);
            o.fd_step = s.fd_step.unwrap_or(o.fd_step);
            o.continuation_steps = s.continuation_steps.unwrap_or(o.continuation_steps);
            o.allow_large_eps = s.allow_large_eps.unwrap_or(false);
        }
        o.validate().map_err(|e| match e {
            Error::Config { field, detail } => Error::config(format!("solver.{field}"), detail),
            other => other,
        })?;
        Ok(o)
    }
}

/// On-disk form of a [`Solution`].
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct SolutionFile {
    pub metadata: Metadata,
    pub coefficients: Coefficients,
    pub scalars: Scalars,
    pub diagnostics: DiagnosticsRecord,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Metadata {
    pub alpha: f64,
    pub n_fold: usize,
    pub gamma: f64,
    pub b: f64,
    pub d: f64,
    pub eps: f64,
    pub mode: String,
    pub order_j: usize,
    pub grid_m: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub fd_step: f64,
    pub tool_version: String,
    pub created_unix: u64,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Coefficients {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct Scalars {
    pub speed: f64,
    pub speed_star: f64,
    pub residual_norm: f64,
    pub iters: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct DiagnosticsRecord {
    pub discarded: f64,
    pub clearance: f64,
    pub circulation: Vec<f64>,
    pub history: Vec<f64>,
    pub quadratic_constant: Option<f64>,
    pub certified: bool,
}

impl SolutionFile {
    pub fn from_solution(sol: &Solution, opts: &SolveOptions) -> Self {
        let c = &sol.config;
        let created_unix = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let dg = &sol.diagnostics;
        SolutionFile {
            metadata: Metadata {
                alpha: c.alpha,
                n_fold: c.n_fold,
                gamma: c.gamma,
                b: c.b,
                d: c.d,
                eps: c.eps,
                mode: c.mode.as_str().into(),
                order_j: opts.order_j,
                grid_m: opts.grid_m,
                tol: opts.tol,
                max_iter: opts.max_iter,
                fd_step: opts.fd_step,
                tool_version: env!("CARGO_PKG_VERSION").into(),
                created_unix,
            },
            coefficients: Coefficients { a: sol.f.a.clone(), b: sol.f.b.clone() },
            scalars: Scalars {
                speed: sol.speed,
                speed_star: sol.speed_star,
                residual_norm: sol.residual_norm,
                iters: sol.newton_iters,
                converged: sol.converged,
            },
            diagnostics: DiagnosticsRecord {
                discarded: dg.discarded,
                clearance: dg.clearance,
                circulation: dg.circulation.clone(),
                history: dg.history.clone(),
                quadratic_constant: dg.quadratic_constant,
                certified: dg.certified,
            },
        }
    }

    pub fn to_solution(&self) -> Result<(Solution, SolveOptions)> {
        let m = &self.metadata;
        let mode: Mode = m.mode.parse()?;
        let config = match mode {
            Mode::Corotating => PatchConfig::corotating(m.alpha, m.n_fold, m.gamma, m.b, m.d, m.eps),
            Mode::Travelling => PatchConfig::travelling(m.alpha, m.gamma, m.b, m.d, m.eps),
        };
        config.validate()?;
        let (a, b) = (&self.coefficients.a, &self.coefficients.b);
        if a.len() != b.len() || a.len() != m.order_j {
            return Err(Error::SizeMismatch { expected: m.order_j, found: a.len().min(b.len()) });
        }
        let opts = SolveOptions {
            order_j: m.order_j,
            grid_m: m.grid_m,
            tol: m.tol,
            max_iter: m.max_iter,
            fd_step: m.fd_step,
            ..Default::default()
        };
        let d = &self.diagnostics;
        let sol = Solution {
            config,
            f: FourierPair { a: a.clone(), b: b.clone() },
            speed: self.scalars.speed,
            speed_star: self.scalars.speed_star,
            residual_norm: self.scalars.residual_norm,
            newton_iters: self.scalars.iters,
            converged: self.scalars.converged,
            diagnostics: Diagnostics {
                discarded: d.discarded,
                clearance: d.clearance,
                circulation: d.circulation.clone(),
                history: d.history.clone(),
                quadratic_constant: d.quadratic_constant,
                certified: d.certified,
            },
        };
        Ok((sol, opts))
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = toml::to_string(self).map_err(|e| Error::domain("solution file", e.to_string()))?;
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config("solution", format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| Error::config("solution", e.to_string()))
    }
}

/// `component,copy,x,y` rows for the given interface family.
pub fn curves_csv(curves: &[BoundaryCurve], component: usize) -> String {
    let mut s = String::from("component,copy,x,y\n");
    for c in curves.iter().filter(|c| c.component == component) {
        for p in &c.points {
            let _ = writeln!(s, "{},{},{:e},{:e}", c.component, c.copy, p[0], p[1]);
        }
    }
    s
}

/// Closed polylines of all curves.
pub fn curves_svg(curves: &[BoundaryCurve]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in curves.iter().flat_map(|c| &c.points) {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0);
    let (w, h) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);
    let mut s = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n",
        x0 - pad,
        -(y1 + pad),
        w,
        h
    );
    for c in curves {
        let pts: Vec<String> = c.points.iter().chain(c.points.first()).map(|p| format!("{},{}", p[0], -p[1])).collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"{}\" points=\"{}\"/>",
            1e-3 * w,
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    s
}

struct Context {
    out: PathBuf,
    svg: bool,
}

fn write_solution_files(ctx: &Context, sol: &Solution, opts: &SolveOptions, stem: &str) -> Result<()> {
    std::fs::create_dir_all(&ctx.out)?;
    SolutionFile::from_solution(sol, opts).write(&ctx.out.join(format!("{stem}.toml")))?;
    let curves = boundary_curves(&sol.config, &sol.f, opts.grid_m)?;
    std::fs::write(ctx.out.join(format!("{stem}_outer.csv")), curves_csv(&curves, 1))?;
    std::fs::write(ctx.out.join(format!("{stem}_inner.csv")), curves_csv(&curves, 2))?;
    if ctx.svg {
        std::fs::write(ctx.out.join(format!("{stem}.svg")), curves_svg(&curves))?;
    }
    Ok(())
}

fn summary(sol: &Solution) -> String {
    format!(
        "eps = {:e}: speed = {:.15e} (point-vortex {:.15e}), residual = {:.3e}, iterations = {}, converged = {}",
        sol.config.eps, sol.speed, sol.speed_star, sol.residual_norm, sol.newton_iters, sol.converged
    )
}

fn require_config(cli: &Cli) -> Result<RunConfig> {
    match &cli.config {
        Some(p) => RunConfig::load(p),
        None => Err(Error::config("--config", "this command needs a configuration file")),
    }
}

fn context(cli: &Cli, cfg: Option<&RunConfig>) -> Context {
    let out = cli
        .out
        .clone()
        .or_else(|| cfg.and_then(|c| c.output.out_dir.clone()))
        .unwrap_or_else(|| PathBuf::from("."));
    Context { out, svg: cli.svg }
}

fn cmd_solve(cli: &Cli) -> Result<()> {
    let rc = require_config(cli)?;
    let values = rc.patch.eps.values();
    if values.len() != 1 {
        return Err(Error::config("patch.eps", "solve takes a single eps; use sweep for a list"));
    }
    let cfg = rc.patch_config(None)?;
    let mut opts = rc.options()?;
    opts.allow_large_eps |= cli.allow_large_eps;
    let ctx = context(cli, Some(&rc));
    let path = continuation(&cfg, &eps_ladder(cfg.eps, opts.continuation_steps), &opts);
    match path.failure {
        None => {
            let sol = path.solutions.last().expect("non-empty continuation path");
            write_solution_files(&ctx, sol, &opts, "solution")?;
            println!("{}", summary(sol));
            Ok(())
        }
        Some((_, Error::NotConverged { iters, residual, best })) => {
            write_solution_files(&ctx, &best, &opts, "solution")?;
            println!("{}", summary(&best));
            Err(Error::NotConverged { iters, residual, best })
        }
        Some((_, e)) => Err(e),
    }
}

fn cmd_sweep(cli: &Cli) -> Result<()> {
    let rc = require_config(cli)?;
    let mut values = rc.patch.eps.values();
    if values.is_empty() {
        return Err(Error::config("patch.eps", "empty eps list"));
    }
    values.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let cfg = rc.patch_config(Some(values[0]))?;
    let mut opts = rc.options()?;
    opts.allow_large_eps |= cli.allow_large_eps;
    let ctx = context(cli, Some(&rc));
    std::fs::create_dir_all(&ctx.out)?;
    let path = continuation(&cfg, &values, &opts);
    let mut csv = String::from("eps,speed,speed_error,fitted_order\n");
    let (mut es, mut errs) = (Vec::new(), Vec::new());
    for (k, sol) in path.solutions.iter().enumerate() {
        es.push(sol.config.eps);
        errs.push((sol.speed - sol.speed_star).abs());
        let local = if k > 0 { fitted_order(&es[k - 1..], &errs[k - 1..]) } else { None };
        let _ = writeln!(
            csv,
            "{:e},{:.17e},{:.6e},{}",
            sol.config.eps,
            sol.speed,
            errs[k],
            local.map(|v| format!("{v:.4}")).unwrap_or_default()
        );
        write_solution_files(&ctx, sol, &opts, &format!("solution_{k:02}"))?;
        println!("{}", summary(sol));
    }
    std::fs::write(ctx.out.join("sweep.csv"), csv)?;
    if let Some(order) = fitted_order(&es, &errs) {
        println!("fitted order of |speed - speed*|: {order:.4}");
    }
    match path.failure {
        None => Ok(()),
        Some((_, e)) => Err(e),
    }
}

fn cmd_regions(cli: &Cli) -> Result<()> {
    let rc = require_config(cli)?;
    let r = rc.regions.clone().unwrap_or_default();
    let p = &rc.patch;
    let grid = b_grid(r.b_min, r.b_max, r.b_step);
    let scan = invertible_b_scan(p.alpha, p.gamma, r.j_max, &grid)?;
    let ctx = context(cli, Some(&rc));
    std::fs::create_dir_all(&ctx.out)?;
    let mut csv = String::from("b,min_det,admissible,certified\n");
    for row in &scan.rows {
        let _ = writeln!(csv, "{},{:e},{},{}", row.b, row.min_det, row.admissible, row.certified);
    }
    std::fs::write(ctx.out.join("regions.csv"), csv)?;
    if scan.intervals.is_empty() {
        println!("no admissible b on the grid");
    }
    for (lo, hi) in &scan.intervals {
        println!("admissible b in [{lo}, {hi}]");
    }
    Ok(())
}

fn cmd_verify(cli: &Cli) -> Result<bool> {
    let path = cli.solution.clone().ok_or_else(|| Error::config("--solution", "verify needs a solution file"))?;
    let (sol, opts) = SolutionFile::read(&path)?.to_solution()?;
    let mut ok = true;
    let mut line = |name: &str, pass: bool, detail: String| {
        ok &= pass;
        println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    };
    let fresh = recheck(&sol, opts.grid_m)?;
    line(
        "residual",
        fresh <= 2.0 * opts.tol && (fresh - sol.residual_norm).abs() <= 1e-12,
        format!("recomputed {fresh:.3e}, recorded {:.3e}", sol.residual_norm),
    );
    let defect = sol.f.link_defect(&sol.config);
    line("link", defect.abs() <= 1e-14, format!("a1 - (1-gamma) b^2 b1 = {defect:e}"));
    let ids = identity_suite(&[0.3, 0.5, 0.7], 8)?;
    line("identities", ids.max_asserted_error() <= 1e-10, format!("max error {:.3e}", ids.max_asserted_error()));
    for e in ids.discrepancies() {
        println!(
            "NOTE {} b = {:?} m = {}: quadrature {:.12e}, stated {:.12e}",
            e.kind.as_str(),
            e.b,
            e.m,
            e.numeric,
            e.closed_form
        );
    }
    let jc = jacobian_check(&sol.config.with_eps(1e-5), 8, 64)?;
    line(
        "linearization",
        jc.max_error() <= 1e-3,
        format!("max relative error {:.3e}, off-block {:.3e}", jc.max_error(), jc.off_block),
    );
    if sol.config.alpha < 1.0 && sol.config.eps != 0.0 {
        let st = stationarity_residual(&sol, 64)?;
        line("stationarity", st.max < 1e-4, format!("max defect {:.3e}, rms {:.3e}", st.max, st.rms));
        let wrong = stationarity_at_speed(&sol.config, &sol.f, 2.0 * sol.speed, 16)?;
        line("sensitivity", wrong.max >= 10.0 * st.max, format!("doubled-speed defect {:.3e}", wrong.max));
    } else {
        println!("SKIP stationarity: area quadrature needs 0 <= alpha < 1 and eps != 0");
    }
    Ok(ok)
}

fn cmd_identities(cli: &Cli) -> Result<()> {
    let report = identity_suite(&[0.3, 0.5, 0.7], 8)?;
    let mut csv = String::from("kind,b,m,numeric,closed_form,error,asserted\n");
    for e in &report.entries {
        let b = e.b.map(|v| v.to_string()).unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{:.17e},{:.17e},{:.3e},{}",
            e.kind.as_str(),
            b,
            e.m,
            e.numeric,
            e.closed_form,
            e.error,
            e.asserted
        );
    }
    print!("{csv}");
    if let Some(out) = &cli.out {
        std::fs::create_dir_all(out)?;
        std::fs::write(out.join("identities.csv"), &csv)?;
    }
    println!("max asserted error: {:.3e}", report.max_asserted_error());
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config { .. } => EXIT_CONFIG,
        Error::NotConverged { .. } | Error::NonConvergence { .. } | Error::SingularJacobian { .. } => {
            EXIT_NO_CONVERGENCE
        }
        _ => EXIT_INTERNAL,
    }
}

/// Runs one parsed command and returns its exit code.
pub fn execute(cli: &Cli) -> u8 {
    let result = match cli.command {
        Command::Solve => cmd_solve(cli),
        Command::Sweep => cmd_sweep(cli),
        Command::Regions => cmd_regions(cli),
        Command::Identities => cmd_identities(cli),
        Command::Verify => match cmd_verify(cli) {
            Ok(true) => Ok(()),
            Ok(false) => return EXIT_NO_CONVERGENCE,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("vstates: {e}");
            exit_code(&e)
        }
    }
}

/// Parses arguments and runs the command.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => ExitCode::from(execute(&cli)),
        Err(e) => {
            let _ = e.print();
            ExitCode::from(if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[patch]
alpha = 0.0
n_fold = 2
gamma = 0.5
b = 0.5
d = 1.0
eps = 0.02
mode = "corotating"

[solver]
order_j = 8
grid_m = 64
"#;

    #[test]
    fn parses_scalar_and_list_eps() {
        let rc = RunConfig::parse(BASE).unwrap();
        assert_eq!(rc.patch.eps.values(), vec![0.02]);
        assert_eq!(rc.options().unwrap().order_j, 8);
        let rc = RunConfig::parse(&BASE.replace("eps = 0.02", "eps = [0.01, 0.02]")).unwrap();
        assert_eq!(rc.patch.eps.values(), vec![0.01, 0.02]);
    }

    #[test]
    fn rejects_bad_fields() {
        let e = RunConfig::parse(&BASE.replace("gamma = 0.5", "gamma = -3.0")).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "patch.gamma"), "{e}");
        let rc = RunConfig::parse(&BASE.replace("gamma = 0.5", "gamma = 0.0")).unwrap();
        assert!(rc.patch_config(None).unwrap_err().to_string().contains("isomorphism"));
        let e = RunConfig::parse(&BASE.replace("d = 1.0", "dd = 1.0")).unwrap_err();
        assert!(e.to_string().contains("dd"), "{e}");
        let e = RunConfig::parse(&BASE.replace("grid_m = 64", "grid_m = 10")).unwrap_err();
        assert!(matches!(&e, Error::Config { field, .. } if field == "solver.order_j"), "{e}");
    }

    #[test]
    fn csv_header_and_rows() {
        let cfg = PatchConfig::corotating(0.0, 3, 0.5, 0.5, 1.0, 0.05);
        let curves = boundary_curves(&cfg, &FourierPair::zeros(2), 16).unwrap();
        let csv = curves_csv(&curves, 1);
        assert!(csv.starts_with("component,copy,x,y\n"));
        assert_eq!(csv.lines().count(), 1 + 3 * 16);
        assert!(curves_svg(&curves).matches("<polyline").count() == 6);
    }
}
