//! Speed selection, Newton iteration on the linked Fourier coefficients and
//! continuation in `ε`.
//!
//! Unknowns are `(b_1, a_2..a_J, b_2..b_J)` with `a_1 = (1-γ)b² b_1`; equations
//! are `(d_1, c_2..c_J, d_2..d_J)` after the speed has been chosen so that
//! `c_1 = (1-γ)b² d_1`.

use nalgebra::{DMatrix, DVector};

use crate::contour::{
    circulation, polyline_clearance, radius_profiles, residual_parts, sine_project, FourierPair, Mode,
    PatchConfig, ResidualParts,
};
use crate::error::{Error, Result};
use crate::quadrature::PeriodicGrid;
use crate::spectral::{omega_star, w_star, BlockSet};

/// Discretization and iteration controls.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub order_j: usize,
    pub grid_m: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub continuation_steps: usize,
    pub fd_step: f64,
    /// Lift the `|ε| <= 0.2 d min(1, b)` guard.
    pub allow_large_eps: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            order_j: 32,
            grid_m: 256,
            tol: 1e-9,
            max_iter: 20,
            continuation_steps: 1,
            fd_step: 1e-7,
            allow_large_eps: false,
        }
    }
}

impl SolveOptions {
    pub fn validate(&self) -> Result<()> {
        if self.order_j == 0 || 2 * self.order_j >= self.grid_m {
            return Err(Error::config(
                "order_j",
                format!("J = {} must satisfy 1 <= J < M/2 = {}", self.order_j, self.grid_m / 2),
            ));
        }
        if !(self.tol > 0.0) {
            return Err(Error::config("tol", format!("{} must be positive", self.tol)));
        }
        if !(1e-8..=1e-5).contains(&self.fd_step) {
            return Err(Error::config("fd_step", format!("{} outside [1e-8, 1e-5]", self.fd_step)));
        }
        if self.continuation_steps == 0 {
            return Err(Error::config("continuation_steps", "must be >= 1"));
        }
        PeriodicGrid::new(self.grid_m).map(|_| ())
    }
}

/// Quantities recorded alongside a solution.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagnostics {
    /// RMS of the residual content outside the retained sine modes.
    pub discarded: f64,
    /// Minimum distance between component 0 and its copies.
    pub clearance: f64,
    pub circulation: Vec<f64>,
    /// Reduced sup-residual before each step and after the last one.
    pub history: Vec<f64>,
    /// `max r_{k+1}/r_k²` over the recorded tail with `r_k < 1e-4`.
    pub quadratic_constant: Option<f64>,
    /// Whether the analytic tail conditions certify the linear theory.
    pub certified: bool,
}

/// A computed patch configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub config: PatchConfig,
    pub f: FourierPair,
    pub speed: f64,
    pub speed_star: f64,
    pub residual_norm: f64,
    pub newton_iters: usize,
    pub converged: bool,
    pub diagnostics: Diagnostics,
}

/// Point-vortex speed of the configuration (`Ω*` or `W*`).
pub fn speed_star(cfg: &PatchConfig) -> Result<f64> {
    match cfg.mode {
        Mode::Corotating => omega_star(cfg.alpha, cfg.n_fold, cfg.d),
        Mode::Travelling => w_star(cfg.alpha, cfg.d),
    }
}

/// The linear relation `link(speed) = offset + speed * slope`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpeedFit {
    pub speed: f64,
    pub offset: f64,
    pub slope: f64,
}

fn link_functional(cfg: &PatchConfig, g1: &[f64], g2: &[f64]) -> f64 {
    let (c, _) = sine_project(g1, 1);
    let (d, _) = sine_project(g2, 1);
    c[0] - cfg.link() * d[0]
}

fn fit_speed(cfg: &PatchConfig, parts: &ResidualParts) -> Result<SpeedFit> {
    let offset = link_functional(cfg, &parts.base[0], &parts.base[1]);
    let slope = link_functional(cfg, &parts.rate[0], &parts.rate[1]);
    if !(slope.abs() > 1e-14 * (1.0 + offset.abs())) {
        return Err(Error::DegenerateSlope { offset, slope });
    }
    Ok(SpeedFit { speed: -offset / slope, offset, slope })
}

/// Speed for which the first sine modes satisfy `c_1 = (1-γ)b² d_1`.
pub fn speed_select(cfg: &PatchConfig, f: &FourierPair, grid: &PeriodicGrid) -> Result<SpeedFit> {
    fit_speed(cfg, &residual_parts(cfg, f, grid)?)
}

/// Reduced residual at one iterate.
#[derive(Debug, Clone)]
pub struct ReducedResidual {
    pub values: Vec<f64>,
    pub speed: f64,
    pub discarded: f64,
}

impl ReducedResidual {
    pub fn sup(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Reduced coordinates `(b_1, a_2..a_J, b_2..b_J)` of a linked pair.
pub fn to_reduced(f: &FourierPair) -> Vec<f64> {
    let j = f.order();
    let mut u = Vec::with_capacity(2 * j - 1);
    u.push(f.b[0]);
    u.extend_from_slice(&f.a[1..]);
    u.extend_from_slice(&f.b[1..]);
    u
}

/// Linked pair from reduced coordinates.
pub fn from_reduced(cfg: &PatchConfig, u: &[f64], order: usize) -> FourierPair {
    let mut f = FourierPair::zeros(order);
    f.b[0] = u[0];
    f.a[0] = cfg.link() * u[0];
    f.a[1..].copy_from_slice(&u[1..order]);
    f.b[1..].copy_from_slice(&u[order..2 * order - 1]);
    f
}

/// Residual `(d_1, c_2..c_J, d_2..d_J)` with the speed selected.
pub fn reduced_residual(cfg: &PatchConfig, f: &FourierPair, grid: &PeriodicGrid) -> Result<ReducedResidual> {
    let order = f.order();
    let parts = residual_parts(cfg, f, grid)?;
    let fit = fit_speed(cfg, &parts)?;
    let (g1, g2) = parts.at_speed(fit.speed);
    let (c, r1) = sine_project(&g1, order);
    let (d, r2) = sine_project(&g2, order);
    let mut values = Vec::with_capacity(2 * order - 1);
    values.push(d[0]);
    values.extend_from_slice(&c[1..]);
    values.extend_from_slice(&d[1..]);
    Ok(ReducedResidual { values, speed: fit.speed, discarded: r1.max(r2) })
}

/// Residual and forward-difference Jacobian in reduced coordinates.
#[derive(Debug, Clone)]
pub struct System {
    pub residual: ReducedResidual,
    pub jacobian: DMatrix<f64>,
}

fn fd_jacobian(
    cfg: &PatchConfig,
    u: &[f64],
    base: &ReducedResidual,
    order: usize,
    grid: &PeriodicGrid,
    fd_step: f64,
) -> Result<DMatrix<f64>> {
    let n = u.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut up = u.to_vec();
    for k in 0..n {
        let h = fd_step * u[k].abs().max(1.0);
        up[k] = u[k] + h;
        let r = reduced_residual(cfg, &from_reduced(cfg, &up, order), grid)?;
        up[k] = u[k];
        for (row, (a, b)) in r.values.iter().zip(&base.values).enumerate() {
            jac[(row, k)] = (a - b) / h;
        }
    }
    Ok(jac)
}

/// Residual and Jacobian at `f` (the first mode of `f` is re-linked).
pub fn assemble_system(cfg: &PatchConfig, f: &FourierPair, opts: &SolveOptions) -> Result<System> {
    opts.validate()?;
    if f.order() != opts.order_j {
        return Err(Error::SizeMismatch { expected: opts.order_j, found: f.order() });
    }
    let grid = PeriodicGrid::new(opts.grid_m)?;
    let u = to_reduced(f);
    let linked = from_reduced(cfg, &u, opts.order_j);
    let residual = reduced_residual(cfg, &linked, &grid)?;
    let jacobian = fd_jacobian(cfg, &u, &residual, opts.order_j, &grid, opts.fd_step)?;
    Ok(System { residual, jacobian })
}

fn check_admissible(cfg: &PatchConfig, opts: &SolveOptions) -> Result<BlockSet> {
    cfg.validate()?;
    opts.validate()?;
    if cfg.alpha == 0.0 && cfg.gamma == 0.0 {
        return Err(Error::config(
            "gamma",
            "gamma = 0 with alpha = 0: the linearized operator is not an isomorphism on the linked space",
        ));
    }
    let limit = 0.2 * cfg.d * cfg.b.min(1.0);
    if cfg.eps.abs() > limit && !opts.allow_large_eps {
        return Err(Error::config(
            "eps",
            format!("|eps| = {} exceeds 0.2 d min(1, b) = {limit}; pass the override to proceed", cfg.eps.abs()),
        ));
    }
    let blocks = BlockSet::new(cfg.alpha, cfg.gamma, cfg.b, opts.order_j.max(64))?;
    for blk in blocks.blocks.iter().skip(1) {
        if blk.det().abs() <= 1e-10 {
            return Err(Error::SingularBlock { j: blk.j, det: blk.det() });
        }
    }
    BlockSet::new(cfg.alpha, cfg.gamma, cfg.b, opts.order_j)
}

fn block_step(blocks: &BlockSet, cfg: &PatchConfig, r: &ReducedResidual) -> Result<FourierPair> {
    let order = blocks.order();
    let mut sine = crate::contour::SineResidual::zeros(order);
    sine.d[0] = r.values[0];
    sine.c[0] = cfg.link() * r.values[0];
    sine.c[1..].copy_from_slice(&r.values[1..order]);
    sine.d[1..].copy_from_slice(&r.values[order..]);
    blocks.precondition(&sine)
}

fn lu_step(jac: &DMatrix<f64>, r: &ReducedResidual, iter: usize) -> Result<Vec<f64>> {
    let rhs = DVector::from_column_slice(&r.values);
    let lu = jac.clone().lu();
    let sol = lu.solve(&rhs).ok_or(Error::SingularJacobian { iter })?;
    if sol.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularJacobian { iter });
    }
    Ok(sol.iter().map(|v| -v).collect())
}

fn finish(
    cfg: &PatchConfig,
    f: FourierPair,
    r: &ReducedResidual,
    iters: usize,
    history: Vec<f64>,
    grid: &PeriodicGrid,
    opts: &SolveOptions,
) -> Result<Solution> {
    let prof = radius_profiles(cfg, &f, grid)?;
    let quadratic_constant = history
        .windows(2)
        .filter(|w| w[0] < 1e-4 && w[0] > 0.0 && w[1] > 0.0)
        .map(|w| w[1] / (w[0] * w[0]))
        .reduce(f64::max);
    let certified = crate::spectral::invertible_b_scan(cfg.alpha, cfg.gamma, 64, &[cfg.b])?.rows[0].certified;
    let residual_norm = r.sup();
    Ok(Solution {
        config: *cfg,
        speed: r.speed,
        speed_star: speed_star(cfg)?,
        residual_norm,
        newton_iters: iters,
        converged: residual_norm <= opts.tol,
        diagnostics: Diagnostics {
            discarded: r.discarded,
            clearance: polyline_clearance(cfg, &prof, grid),
            circulation: circulation(cfg, &f),
            history,
            quadratic_constant,
            certified,
        },
        f,
    })
}

/// Damped Newton iteration from `init`.
///
/// Each iteration first tries a chord step with the last Jacobian (or the
/// `ε = 0` block inverse before any Jacobian exists) and keeps it when the
/// residual contracts by 5x; otherwise a fresh forward-difference Jacobian is
/// built and its step is halved up to six times until the residual decreases.
pub fn newton_solve(cfg: &PatchConfig, init: &FourierPair, opts: &SolveOptions) -> Result<Solution> {
    let blocks = check_admissible(cfg, opts)?;
    if init.order() != opts.order_j || init.b.len() != opts.order_j {
        return Err(Error::SizeMismatch { expected: opts.order_j, found: init.order() });
    }
    let order = opts.order_j;
    if cfg.eps == 0.0 {
        let f = FourierPair::zeros(order);
        let s = speed_star(cfg)?;
        return Ok(Solution {
            config: *cfg,
            f: f.clone(),
            speed: s,
            speed_star: s,
            residual_norm: 0.0,
            newton_iters: 0,
            converged: true,
            diagnostics: Diagnostics {
                circulation: circulation(cfg, &f),
                history: vec![0.0],
                certified: true,
                ..Default::default()
            },
        });
    }
    let grid = PeriodicGrid::new(opts.grid_m)?;
    let mut u = to_reduced(init);
    let mut r = reduced_residual(cfg, &from_reduced(cfg, &u, order), &grid)?;
    let mut history = vec![r.sup()];
    let mut jac: Option<DMatrix<f64>> = None;
    let mut iters = 0;
    while r.sup() > opts.tol && iters < opts.max_iter {
        let cur = r.sup();
        let chord = match &jac {
            Some(m) => Some(lu_step(m, &r, iters)?),
            None => block_step(&blocks, cfg, &r).ok().map(|d| to_reduced(&d)),
        };
        let mut accepted = false;
        if let Some(step) = chord {
            let trial: Vec<f64> = u.iter().zip(&step).map(|(a, s)| a + s).collect();
            if let Ok(rt) = reduced_residual(cfg, &from_reduced(cfg, &trial, order), &grid) {
                if rt.sup() <= 0.2 * cur {
                    u = trial;
                    r = rt;
                    accepted = true;
                }
            }
        }
        if !accepted {
            let m = fd_jacobian(cfg, &u, &r, order, &grid, opts.fd_step)?;
            let step = lu_step(&m, &r, iters)?;
            jac = Some(m);
            let mut scale = 1.0;
            for _ in 0..=6 {
                let trial: Vec<f64> = u.iter().zip(&step).map(|(a, s)| a + scale * s).collect();
                if let Ok(rt) = reduced_residual(cfg, &from_reduced(cfg, &trial, order), &grid) {
                    if rt.sup() < cur {
                        u = trial;
                        r = rt;
                        accepted = true;
                        break;
                    }
                }
                scale *= 0.5;
            }
        }
        iters += 1;
        history.push(r.sup());
        if !accepted {
            break;
        }
    }
    let sol = finish(cfg, from_reduced(cfg, &u, order), &r, iters, history, &grid, opts)?;
    if sol.converged {
        Ok(sol)
    } else {
        Err(Error::NotConverged { iters, residual: sol.residual_norm, best: Box::new(sol) })
    }
}

/// Reduced sup-residual of a solution re-evaluated on a fresh grid of size `m`.
pub fn recheck(sol: &Solution, m: usize) -> Result<f64> {
    if sol.config.eps == 0.0 {
        return Ok(0.0);
    }
    Ok(reduced_residual(&sol.config, &sol.f, &PeriodicGrid::new(m)?)?.sup())
}

/// `n` equally spaced values `ε_max/n, 2ε_max/n, ..., ε_max`.
pub fn eps_ladder(eps_max: f64, n: usize) -> Vec<f64> {
    (1..=n).map(|k| eps_max * k as f64 / n as f64).collect()
}

/// Solutions along a path in `ε`; stops at the first failure.
#[derive(Debug)]
pub struct ContinuationPath {
    pub solutions: Vec<Solution>,
    pub failure: Option<(f64, Error)>,
}

/// Solves at each `ε` in turn, seeding every step with the previous solution.
pub fn continuation(cfg: &PatchConfig, eps_values: &[f64], opts: &SolveOptions) -> ContinuationPath {
    let mut seed = FourierPair::zeros(opts.order_j);
    let mut solutions = Vec::new();
    for &eps in eps_values {
        match newton_solve(&cfg.with_eps(eps), &seed, opts) {
            Ok(sol) => {
                seed = sol.f.clone();
                solutions.push(sol);
            }
            Err(e) => return ContinuationPath { solutions, failure: Some((eps, e)) },
        }
    }
    ContinuationPath { solutions, failure: None }
}

/// Coefficients describing the same configuration with `ε` replaced by `-ε`.
///
/// `-ε R(x) e(x) = ε R(x) e(x + π)`, so the reflected parameterization is a
/// half-turn reparameterization of the same boundary: mode `j` picks up
/// `(-1)^{j+1}` and the speed is unchanged.
pub fn mirror_coefficients(f: &FourierPair) -> FourierPair {
    let flip = |c: &[f64]| -> Vec<f64> {
        c.iter().enumerate().map(|(k, v)| if k % 2 == 0 { *v } else { -*v }).collect()
    };
    FourierPair { a: flip(&f.a), b: flip(&f.b) }
}

/// Least-squares slope of `log|speed - speed*|` against `log ε`.
pub fn fitted_order(eps: &[f64], speed_error: &[f64]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = eps
        .iter()
        .zip(speed_error)
        .filter(|(e, s)| e.abs() > 0.0 && s.abs() > 0.0)
        .map(|(e, s)| (e.abs().ln(), s.abs().ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}
