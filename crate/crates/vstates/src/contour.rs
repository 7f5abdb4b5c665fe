//! Contour-dynamics residuals of the co-rotating and travelling problems.
//!
//! Component 0 has interfaces `z_i(x) = ε R_i(x) (cos x, sin x)` with
//! `R_1 = 1 + δ f_1`, `R_2 = b + δ f_2` and `δ = ε|ε|^α`. Co-rotating copies are
//! `d e_1 + Q_{2πn/N}(z - d e_1)`; the travelling partner is the mirror image
//! about `x_1 = d` with opposite strength. The residual of interface `i` is
//! `π(1-b²+γb²)/(ε R_i)` times the frame-corrected normal velocity, evaluated
//! through the boundary-integral form of the velocity.
//!
//! Same-component integrals are rewritten as `(K(D) - K(D_0))/δ` plus a
//! remainder, where `D_0` is the unperturbed distance. The odd leading parts
//! integrate to zero exactly, so the residual stays well conditioned as
//! `ε → 0` and the singular self-interaction reduces to a product quadrature
//! against a cofactor that vanishes on the diagonal.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::{singular_fourier_weights, PeriodicGrid};
use crate::specialfn::c_alpha;

/// Co-rotating `N`-fold configuration or travelling mirror pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Corotating,
    Travelling,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Corotating => "corotating",
            Mode::Travelling => "travelling",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "corotating" => Ok(Mode::Corotating),
            "travelling" | "traveling" => Ok(Mode::Travelling),
            other => Err(Error::config("mode", format!("unknown mode {other:?}"))),
        }
    }
}

/// Physical and geometric parameters of one problem instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatchConfig {
    pub alpha: f64,
    pub n_fold: usize,
    pub gamma: f64,
    pub b: f64,
    pub d: f64,
    pub eps: f64,
    pub mode: Mode,
}

impl PatchConfig {
    pub fn corotating(alpha: f64, n_fold: usize, gamma: f64, b: f64, d: f64, eps: f64) -> Self {
        PatchConfig { alpha, n_fold, gamma, b, d, eps, mode: Mode::Corotating }
    }

    pub fn travelling(alpha: f64, gamma: f64, b: f64, d: f64, eps: f64) -> Self {
        PatchConfig { alpha, n_fold: 2, gamma, b, d, eps, mode: Mode::Travelling }
    }

    pub fn with_eps(&self, eps: f64) -> Self {
        PatchConfig { eps, ..*self }
    }

    /// `1 - b² + γ b²`, the normalization denominator.
    pub fn kappa(&self) -> f64 {
        1.0 - self.b * self.b + self.gamma * self.b * self.b
    }

    /// Perturbation amplitude `δ = ε |ε|^α`.
    pub fn delta(&self) -> f64 {
        self.eps * self.eps.abs().powf(self.alpha)
    }

    /// `(1-γ) b²`, the first-mode link factor.
    pub fn link(&self) -> f64 {
        (1.0 - self.gamma) * self.b * self.b
    }

    /// Number of rotated copies besides component 0.
    pub fn copies(&self) -> usize {
        match self.mode {
            Mode::Corotating => self.n_fold - 1,
            Mode::Travelling => 1,
        }
    }

    /// Rotation angle and strength sign of copy `n` (`1 <= n <= copies`).
    pub fn copy_geometry(&self, n: usize) -> (f64, f64) {
        match self.mode {
            Mode::Corotating => (2.0 * PI * n as f64 / self.n_fold as f64, 1.0),
            Mode::Travelling => (PI, -1.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..2.0).contains(&self.alpha) {
            return Err(Error::config("alpha", format!("{} outside [0, 2)", self.alpha)));
        }
        if self.mode == Mode::Corotating && self.n_fold < 2 {
            return Err(Error::config("n_fold", format!("{} must be >= 2", self.n_fold)));
        }
        if !(self.b > 0.0 && self.b < 1.0) {
            return Err(Error::config("b", format!("{} outside (0, 1)", self.b)));
        }
        if self.b > 0.97 {
            return Err(Error::config("b", format!("{} above the supported bound 0.97", self.b)));
        }
        if !(self.d > 0.0) || !self.d.is_finite() {
            return Err(Error::config("d", format!("{} must be positive", self.d)));
        }
        if !self.gamma.is_finite() {
            return Err(Error::config("gamma", "must be finite"));
        }
        if self.kappa().abs() < 1e-12 {
            return Err(Error::config(
                "gamma",
                format!("1 - b^2 + gamma b^2 = {} vanishes (normalization undefined)", self.kappa()),
            ));
        }
        if !self.eps.is_finite() {
            return Err(Error::config("eps", "must be finite"));
        }
        Ok(())
    }
}

/// Cosine coefficients `f_1 = Σ a_j cos(jx)`, `f_2 = Σ b_j cos(jx)`, `j = 1..J`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPair {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl FourierPair {
    pub fn zeros(order: usize) -> Self {
        FourierPair { a: vec![0.0; order], b: vec![0.0; order] }
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a_1 - (1-γ) b² b_1`.
    pub fn link_defect(&self, cfg: &PatchConfig) -> f64 {
        match (self.a.first(), self.b.first()) {
            (Some(a1), Some(b1)) => a1 - cfg.link() * b1,
            _ => 0.0,
        }
    }

    /// Sets `a_1` so the pair satisfies the first-mode link exactly.
    pub fn enforce_link(&mut self, cfg: &PatchConfig) {
        if let (Some(a1), Some(b1)) = (self.a.first_mut(), self.b.first()) {
            *a1 = cfg.link() * b1;
        }
    }

    fn coeffs(&self, i: usize) -> &[f64] {
        if i == 0 {
            &self.a
        } else {
            &self.b
        }
    }
}

/// Sine coefficients `c_j` (interface 1) and `d_j` (interface 2), `j = 1..J`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineResidual {
    pub c: Vec<f64>,
    pub d: Vec<f64>,
}

impl SineResidual {
    pub fn zeros(order: usize) -> Self {
        SineResidual { c: vec![0.0; order], d: vec![0.0; order] }
    }

    pub fn order(&self) -> usize {
        self.c.len()
    }

    /// `c_1 - (1-γ) b² d_1`.
    pub fn link_defect(&self, cfg: &PatchConfig) -> f64 {
        match (self.c.first(), self.d.first()) {
            (Some(c1), Some(d1)) => c1 - cfg.link() * d1,
            _ => 0.0,
        }
    }

    pub fn sup_norm(&self) -> f64 {
        self.c.iter().chain(&self.d).fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// Radii and derivatives of both interfaces sampled on a grid.
#[derive(Debug, Clone)]
pub struct Profiles {
    pub r: [Vec<f64>; 2],
    pub rp: [Vec<f64>; 2],
    pub f: [Vec<f64>; 2],
    pub fp: [Vec<f64>; 2],
}

fn cosine_series(coeffs: &[f64], x: f64) -> (f64, f64) {
    let (mut v, mut dv) = (0.0, 0.0);
    for (k, c) in coeffs.iter().enumerate() {
        let j = (k + 1) as f64;
        let (s, co) = (j * x).sin_cos();
        v += c * co;
        dv -= c * j * s;
    }
    (v, dv)
}

/// `R_i`, `R_i'` on the grid, plus the raw `f_i`, `f_i'`.
pub fn radius_profiles(cfg: &PatchConfig, f: &FourierPair, grid: &PeriodicGrid) -> Result<Profiles> {
    let delta = cfg.delta();
    let base = [1.0, cfg.b];
    let mut out = Profiles {
        r: [Vec::new(), Vec::new()],
        rp: [Vec::new(), Vec::new()],
        f: [Vec::new(), Vec::new()],
        fp: [Vec::new(), Vec::new()],
    };
    for i in 0..2 {
        for &x in grid.nodes() {
            let (v, dv) = cosine_series(f.coeffs(i), x);
            let r = base[i] + delta * v;
            if !(r > 0.0) {
                return Err(Error::RadiusNonPositive { component: i + 1, x, value: r });
            }
            out.r[i].push(r);
            out.rp[i].push(delta * dv);
            out.f[i].push(v);
            out.fp[i].push(dv);
        }
    }
    for (k, &x) in grid.nodes().iter().enumerate() {
        if out.r[1][k] >= out.r[0][k] {
            return Err(Error::RadiusNonPositive {
                component: 2,
                x,
                value: out.r[0][k] - out.r[1][k],
            });
        }
    }
    Ok(out)
}

/// Residual split `G_i = base_i + speed * rate_i` (affine in the speed).
#[derive(Debug, Clone)]
pub struct ResidualParts {
    pub base: [Vec<f64>; 2],
    pub rate: [Vec<f64>; 2],
}

impl ResidualParts {
    pub fn at_speed(&self, speed: f64) -> (Vec<f64>, Vec<f64>) {
        let combine = |i: usize| -> Vec<f64> {
            self.base[i].iter().zip(&self.rate[i]).map(|(b, r)| b + speed * r).collect()
        };
        (combine(0), combine(1))
    }
}

/// Lower bound on the distance between component 0 and its copies.
pub fn clearance_bound(cfg: &PatchConfig, prof: &Profiles) -> f64 {
    let rmax = prof.r[0].iter().fold(0.0f64, |m, &v| m.max(v)) * cfg.eps.abs();
    (1..=cfg.copies())
        .map(|n| {
            let (beta, _) = cfg.copy_geometry(n);
            cfg.d * (2.0 * (1.0 - beta.cos())).sqrt() - 2.0 * rmax
        })
        .fold(f64::INFINITY, f64::min)
}

/// Minimum distance between the sampled outer interfaces of component 0 and
/// its copies; zero when the closed polylines cross.
pub fn polyline_clearance(cfg: &PatchConfig, prof: &Profiles, grid: &PeriodicGrid) -> f64 {
    let pts: Vec<(f64, f64)> = grid
        .nodes()
        .iter()
        .zip(&prof.r[0])
        .map(|(&x, &r)| (cfg.eps * r * x.cos(), cfg.eps * r * x.sin()))
        .collect();
    let m = pts.len();
    let mut best = f64::INFINITY;
    for n in 1..=cfg.copies() {
        let (beta, _) = cfg.copy_geometry(n);
        let (cb, sb) = (beta.cos(), beta.sin());
        let moved: Vec<(f64, f64)> = pts
            .iter()
            .map(|q| {
                let (qx, qy) = (q.0 - cfg.d, q.1);
                (cfg.d + cb * qx - sb * qy, sb * qx + cb * qy)
            })
            .collect();
        for (k, p) in pts.iter().enumerate() {
            let p2 = pts[(k + 1) % m];
            for (l, r) in moved.iter().enumerate() {
                best = best.min((p.0 - r.0).hypot(p.1 - r.1));
                if segments_cross(*p, p2, *r, moved[(l + 1) % m]) {
                    return 0.0;
                }
            }
        }
    }
    best
}

fn segments_cross(p1: (f64, f64), p2: (f64, f64), q1: (f64, f64), q2: (f64, f64)) -> bool {
    let orient = |a: (f64, f64), b: (f64, f64), c: (f64, f64)| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn check_clearance(cfg: &PatchConfig, prof: &Profiles, grid: &PeriodicGrid) -> Result<()> {
    let required = 1e-3 * cfg.d;
    if clearance_bound(cfg, prof) > required {
        return Ok(());
    }
    let clearance = polyline_clearance(cfg, prof, grid);
    if clearance > required {
        Ok(())
    } else {
        Err(Error::Overlap { clearance, required })
    }
}

struct Tables {
    sin: Vec<f64>,
    cos: Vec<f64>,
    sin2: Vec<f64>,
}

impl Tables {
    fn new(m: usize) -> Self {
        let h = 2.0 * PI / m as f64;
        let sin = (0..m).map(|n| (n as f64 * h).sin()).collect();
        let cos = (0..m).map(|n| (n as f64 * h).cos()).collect();
        let sin2 = (0..m)
            .map(|n| {
                let s = (0.5 * n as f64 * h).sin();
                4.0 * s * s
            })
            .collect();
        Tables { sin, cos, sin2 }
    }
}

struct Evaluator<'a> {
    cfg: &'a PatchConfig,
    prof: &'a Profiles,
    nodes: &'a [f64],
    tables: Tables,
    kernel: Vec<f64>,
    pref: f64,
}

impl<'a> Evaluator<'a> {
    fn m(&self) -> usize {
        self.nodes.len()
    }

    /// `⨍` of interface `i` against itself, without the `1/R_i` prefactor.
    fn self_term(&self, i: usize, k: usize) -> f64 {
        let m = self.m();
        let (alpha, delta) = (self.cfg.alpha, self.cfg.delta());
        let rho = if i == 0 { 1.0 } else { self.cfg.b };
        let (f, fp) = (&self.prof.f[i], &self.prof.fp[i]);
        let (fx, fxp) = (f[k], fp[k]);
        let rho2 = rho * rho;
        let ln_rho2 = 2.0 * rho.ln();
        let mut sing = 0.0;
        let mut smooth = 0.0;
        for l in 0..m {
            if l == k {
                continue;
            }
            let n = (k + m - l) % m;
            let (s, c, s2) = (self.tables.sin[n], self.tables.cos[n], self.tables.sin2[n]);
            let (fy, fyp) = (f[l], fp[l]);
            let diff = fx - fy;
            let q = delta * diff * diff / (rho2 * s2) + (fx + fy) / rho + delta * fx * fy / rho2;
            let ptil = (rho * (fx + fy) + delta * (fx * fy + fxp * fyp)) * s
                + (rho * (fyp - fxp) + delta * (fx * fyp - fxp * fy)) * c;
            let lq = (delta * q).ln_1p();
            if alpha == 0.0 {
                sing += self.kernel[n] * ptil;
                smooth += -rho2 * s * lq / delta - (ln_rho2 + lq) * ptil;
            } else {
                let e = -0.5 * alpha * lq;
                let cof = rho2 * s * e.exp_m1() / delta + e.exp() * ptil;
                sing += self.kernel[n] * cof;
            }
        }
        if alpha == 0.0 {
            sing + smooth / m as f64
        } else {
            rho.powf(-alpha) * sing
        }
    }

    /// `⨍` of interface `i` against interface `j != i` of the same component.
    fn cross_term(&self, i: usize, j: usize, k: usize) -> f64 {
        let m = self.m();
        let (alpha, delta) = (self.cfg.alpha, self.cfg.delta());
        let base = [1.0, self.cfg.b];
        let (ri, rj) = (base[i], base[j]);
        let (fx, fxp) = (self.prof.f[i][k], self.prof.fp[i][k]);
        let mut acc = 0.0;
        for l in 0..m {
            let n = (k + m - l) % m;
            let (s, c, s2) = (self.tables.sin[n], self.tables.cos[n], self.tables.sin2[n]);
            let (fy, fyp) = (self.prof.f[j][l], self.prof.fp[j][l]);
            let diff = fx - fy;
            let d0 = (ri - rj) * (ri - rj) + ri * rj * s2;
            let dt = 2.0 * (ri - rj) * diff + delta * diff * diff + (ri * fy + rj * fx + delta * fx * fy) * s2;
            let lq = (delta * dt / d0).ln_1p();
            let ptil = (ri * fy + rj * fx + delta * (fx * fy + fxp * fyp)) * s
                + (ri * fyp - rj * fxp + delta * (fx * fyp - fxp * fy)) * c;
            acc += if alpha == 0.0 {
                -ri * rj * s * lq / delta + (-(d0.ln()) - lq) * ptil
            } else {
                let k0 = d0.powf(-0.5 * alpha);
                let e = -0.5 * alpha * lq;
                k0 * (ri * rj * s * e.exp_m1() / delta + e.exp() * ptil)
            };
        }
        acc / m as f64
    }

    /// `⨍` of interface `i` of component 0 against interface `j` of a copy
    /// rotated by `beta`, with the constant far-field part removed.
    fn copy_term(&self, i: usize, j: usize, beta: f64, k: usize) -> f64 {
        let m = self.m();
        let (alpha, eps, d) = (self.cfg.alpha, self.cfg.eps, self.cfg.d);
        let (cb, sb) = (beta.cos(), beta.sin());
        let (cx, cy) = (d * (cb - 1.0), d * sb);
        let a = cx * cx + cy * cy;
        let ka = a.powf(-0.5 * alpha);
        let x = self.nodes[k];
        let (sx, cxx) = x.sin_cos();
        let (rx, rxp) = (self.prof.r[i][k], self.prof.rp[i][k]);
        let mut acc = 0.0;
        for l in 0..m {
            let n = (k + m - l) % m;
            let (s0, c0) = (self.tables.sin[n], self.tables.cos[n]);
            let (ry, ryp) = (self.prof.r[j][l], self.prof.rp[j][l]);
            let y = self.nodes[l];
            let (sy, cy_) = y.sin_cos();
            let (eyx, eyy) = (cy_ * cb - sy * sb, sy * cb + cy_ * sb);
            let (vx, vy) = (rx * cxx - ry * eyx, rx * sx - ry * eyy);
            let lt = (eps * (2.0 * (cx * vx + cy * vy) + eps * (vx * vx + vy * vy)) / a).ln_1p();
            let kdiff = if alpha == 0.0 {
                -0.5 * lt / eps
            } else {
                ka * (-0.5 * alpha * lt).exp_m1() / eps
            };
            let sn = s0 * cb - c0 * sb;
            let cs = c0 * cb + s0 * sb;
            let p = (rx * ry + rxp * ryp) * sn + (rx * ryp - rxp * ry) * cs;
            acc += kdiff * p;
        }
        acc / m as f64
    }

    fn base(&self, i: usize, k: usize) -> f64 {
        let g1 = self.cfg.gamma - 1.0;
        let j = 1 - i;
        let same = if i == 0 {
            self.pref * self.self_term(0, k) + g1 * self.pref * self.cross_term(0, 1, k)
        } else {
            self.pref * self.cross_term(1, 0, k) + g1 * self.pref * self.self_term(1, k)
        };
        let _ = j;
        let copy_pref = if self.cfg.alpha == 0.0 { 1.0 } else { self.pref };
        let mut copies = 0.0;
        for n in 1..=self.cfg.copies() {
            let (beta, sign) = self.cfg.copy_geometry(n);
            copies += sign * (self.copy_term(i, 0, beta, k) + g1 * self.copy_term(i, 1, beta, k));
        }
        (same + copy_pref * copies) / self.prof.r[i][k]
    }

    fn rate(&self, i: usize, k: usize) -> f64 {
        let x = self.nodes[k];
        let (s, c) = x.sin_cos();
        let (r, rp) = (self.prof.r[i][k], self.prof.rp[i][k]);
        let kap = PI * self.cfg.kappa();
        match self.cfg.mode {
            Mode::Corotating => kap * (self.cfg.eps * rp - self.cfg.d * rp * c / r + self.cfg.d * s),
            Mode::Travelling => -kap * (s - rp * c / r),
        }
    }
}

/// Both affine parts of the residual on the grid.
pub fn residual_parts(cfg: &PatchConfig, f: &FourierPair, grid: &PeriodicGrid) -> Result<ResidualParts> {
    cfg.validate()?;
    if cfg.eps == 0.0 {
        return Err(Error::domain("residual", "eps = 0 is served by the linear theory"));
    }
    let prof = radius_profiles(cfg, f, grid)?;
    check_clearance(cfg, &prof, grid)?;
    let weights = singular_fourier_weights(cfg.alpha, grid.size())?;
    let pref = if cfg.alpha == 0.0 { 0.5 } else { c_alpha(cfg.alpha)? };
    let ev = Evaluator {
        cfg,
        prof: &prof,
        nodes: grid.nodes(),
        tables: Tables::new(grid.size()),
        kernel: weights.kernel().to_vec(),
        pref,
    };
    let m = grid.size();
    let mut parts = ResidualParts { base: [vec![0.0; m], vec![0.0; m]], rate: [vec![0.0; m], vec![0.0; m]] };
    for i in 0..2 {
        for k in 0..m {
            parts.base[i][k] = ev.base(i, k);
            parts.rate[i][k] = ev.rate(i, k);
        }
    }
    Ok(parts)
}

/// Co-rotating residual `(G_1, G_2)` at angular velocity `omega`.
pub fn corotating_residual(
    cfg: &PatchConfig,
    f: &FourierPair,
    omega: f64,
    grid: &PeriodicGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if cfg.mode != Mode::Corotating {
        return Err(Error::domain("corotating_residual", "config is not co-rotating"));
    }
    Ok(residual_parts(cfg, f, grid)?.at_speed(omega))
}

/// Travelling residual `(H_1, H_2)` at speed `w`.
pub fn travelling_residual(
    cfg: &PatchConfig,
    f: &FourierPair,
    w: f64,
    grid: &PeriodicGrid,
) -> Result<(Vec<f64>, Vec<f64>)> {
    if cfg.mode != Mode::Travelling {
        return Err(Error::domain("travelling_residual", "config is not travelling"));
    }
    Ok(residual_parts(cfg, f, grid)?.at_speed(w))
}

/// Sine coefficients `2⨍ g sin(jx)` for `j = 1..J` and the RMS of what the
/// truncated sine series leaves behind (cosine and high-mode content).
pub fn sine_project(values: &[f64], order: usize) -> (Vec<f64>, f64) {
    let m = values.len();
    let h = 2.0 * PI / m as f64;
    let coeffs: Vec<f64> = (1..=order)
        .map(|j| {
            2.0 * values
                .iter()
                .enumerate()
                .map(|(k, v)| v * (j as f64 * k as f64 * h).sin())
                .sum::<f64>()
                / m as f64
        })
        .collect();
    let mut ss = 0.0;
    for (k, v) in values.iter().enumerate() {
        let x = k as f64 * h;
        let fit: f64 = coeffs.iter().enumerate().map(|(j, c)| c * ((j + 1) as f64 * x).sin()).sum();
        ss += (v - fit).powi(2);
    }
    (coeffs, (ss / m as f64).sqrt())
}

/// Largest cosine coefficient `|2⨍ g cos(jx)|`, `j = 0..M/2` (the `j = 0` term
/// is the plain mean).
pub fn cosine_leakage(values: &[f64]) -> f64 {
    let m = values.len();
    let h = 2.0 * PI / m as f64;
    (0..=m / 2)
        .map(|j| {
            let s: f64 = values
                .iter()
                .enumerate()
                .map(|(k, v)| v * (j as f64 * k as f64 * h).cos())
                .sum::<f64>()
                / m as f64;
            if j == 0 {
                s.abs()
            } else {
                2.0 * s.abs()
            }
        })
        .fold(0.0, f64::max)
}

/// Circulation of each component: `(⨍R_1² - (1-γ)⨍R_2²)/(1-b²+γb²)` with sign.
pub fn circulation(cfg: &PatchConfig, f: &FourierPair) -> Vec<f64> {
    let delta = cfg.delta();
    let energy = |c: &[f64]| 0.5 * c.iter().map(|v| v * v).sum::<f64>();
    let r1 = 1.0 + delta * delta * energy(&f.a);
    let r2 = cfg.b * cfg.b + delta * delta * energy(&f.b);
    let value = (r1 - (1.0 - cfg.gamma) * r2) / cfg.kappa();
    match cfg.mode {
        Mode::Corotating => vec![value; cfg.n_fold],
        Mode::Travelling => vec![value, -value],
    }
}

/// Sampled interface of one component copy.
#[derive(Debug, Clone)]
pub struct BoundaryCurve {
    /// 1 for the outer interface, 2 for the inner one.
    pub component: usize,
    /// Copy index (0 is the reference component centred at the origin).
    pub copy: usize,
    pub points: Vec<[f64; 2]>,
}

/// All interfaces of all copies, in the frame where component 0 is centred at
/// the origin and the configuration is symmetric about `(d, 0)`.
pub fn boundary_curves(cfg: &PatchConfig, f: &FourierPair, samples: usize) -> Result<Vec<BoundaryCurve>> {
    let grid = PeriodicGrid::new(samples)?;
    let prof = radius_profiles(cfg, f, &grid)?;
    let mut out = Vec::new();
    for copy in 0..=cfg.copies() {
        let (beta, _) = if copy == 0 { (0.0, 1.0) } else { cfg.copy_geometry(copy) };
        let (cb, sb) = (beta.cos(), beta.sin());
        for i in 0..2 {
            let points = grid
                .nodes()
                .iter()
                .zip(&prof.r[i])
                .map(|(&x, &r)| {
                    let (px, py) = (cfg.eps * r * x.cos() - cfg.d, cfg.eps * r * x.sin());
                    [cfg.d + cb * px - sb * py, sb * px + cb * py]
                })
                .collect();
            out.push(BoundaryCurve { component: i + 1, copy, points });
        }
    }
    Ok(out)
}
