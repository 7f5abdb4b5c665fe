//! Linear theory at `ε = 0`: point-vortex speeds, the mode-wise blocks of the
//! linearized residual, determinant scans and the block preconditioner.

use std::f64::consts::PI;

use crate::contour::{FourierPair, SineResidual};
use crate::error::{Error, Result};
use crate::specialfn::{c_alpha, lambda_coeff, theta_coeff};

/// Angular velocity of `N` unit point vortices on the circle of radius `d`.
pub fn omega_star(alpha: f64, n_fold: usize, d: f64) -> Result<f64> {
    let amp = if alpha == 0.0 { 1.0 } else { alpha * c_alpha(alpha)? };
    let mut sum = 0.0;
    for n in 1..n_fold {
        let beta = 2.0 * PI * n as f64 / n_fold as f64;
        let (s, c) = beta.sin_cos();
        let dist2 = (c - 1.0).powi(2) + s * s;
        sum += (1.0 - c) / (2.0 * PI * dist2.powf(1.0 + 0.5 * alpha));
    }
    Ok(amp * sum / d.powf(2.0 + alpha))
}

/// Translation speed of a unit point-vortex pair at separation `2d`.
pub fn w_star(alpha: f64, d: f64) -> Result<f64> {
    if alpha == 0.0 {
        Ok(1.0 / (4.0 * PI * d))
    } else {
        Ok(alpha * c_alpha(alpha)? / (2.0 * PI * (2.0 * d).powf(1.0 + alpha)))
    }
}

/// The 2×2 block coupling mode `j` of both interfaces, with its prefactor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBlock {
    pub j: usize,
    pub entries: [[f64; 2]; 2],
    pub scale: f64,
}

impl SpectralBlock {
    pub fn det(&self) -> f64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// `scale · M_j · (a, b)ᵀ`.
    pub fn apply(&self, a: f64, b: f64) -> (f64, f64) {
        let m = &self.entries;
        (self.scale * (m[0][0] * a + m[0][1] * b), self.scale * (m[1][0] * a + m[1][1] * b))
    }

    /// Inverse of [`SpectralBlock::apply`].
    pub fn solve(&self, c: f64, d: f64) -> Result<(f64, f64)> {
        let det = self.det();
        if det.abs() <= 1e-14 * self.norm().powi(2) {
            return Err(Error::SingularBlock { j: self.j, det });
        }
        let m = &self.entries;
        let s = self.scale * det;
        Ok(((m[1][1] * c - m[0][1] * d) / s, (m[0][0] * d - m[1][0] * c) / s))
    }

    fn norm(&self) -> f64 {
        self.entries.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs())).max(f64::MIN_POSITIVE)
    }
}

/// Block `M_j` of the linearized residual.
pub fn m_block(alpha: f64, gamma: f64, b: f64, j: usize) -> Result<SpectralBlock> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain("m_block", format!("b = {b} outside (0, 1)")));
    }
    if j == 0 {
        return Err(Error::domain("m_block", "mode index must be >= 1"));
    }
    let g1 = gamma - 1.0;
    let jf = j as f64;
    if alpha == 0.0 {
        let entries = [
            [jf - 1.0 + g1 * jf * b * b, -g1 * b.powi(j as i32 + 1)],
            [-b.powi(j as i32 - 1), g1 * (jf - 1.0) + jf],
        ];
        return Ok(SpectralBlock { j, entries, scale: 0.5 });
    }
    let th = theta_coeff(alpha, j)?;
    let l1 = lambda_coeff(alpha, b, 1)?;
    let lj = if j == 1 { l1 } else { lambda_coeff(alpha, b, j)? };
    let entries = [
        [th + g1 * b * b * l1, -g1 * b * b * lj],
        [-lj, g1 * b.powf(-alpha) * th + l1],
    ];
    Ok(SpectralBlock { j, entries, scale: jf })
}

/// The displayed closed-form determinant at `α = 0`.
pub fn det_polynomial(gamma: f64, b: f64, j: usize) -> f64 {
    let jf = j as f64;
    let p = 1.0 + (gamma - 1.0) * b * b;
    gamma * p * jf * jf + ((1.0 - gamma) * p - gamma) * jf + gamma - 1.0 + (1.0 - gamma) * b.powi(2 * j as i32)
}

/// `det(M_j)` for `j = 2..=j_max`.
pub fn det_profile(alpha: f64, gamma: f64, b: f64, j_max: usize) -> Result<Vec<f64>> {
    if j_max < 2 {
        return Err(Error::domain("det_profile", "j_max must be >= 2"));
    }
    (2..=j_max).map(|j| Ok(m_block(alpha, gamma, b, j)?.det())).collect()
}

/// Blocks `M_1..M_J` for one parameter triple.
#[derive(Debug, Clone)]
pub struct BlockSet {
    pub alpha: f64,
    pub gamma: f64,
    pub b: f64,
    pub blocks: Vec<SpectralBlock>,
}

impl BlockSet {
    pub fn new(alpha: f64, gamma: f64, b: f64, order: usize) -> Result<Self> {
        let blocks = (1..=order).map(|j| m_block(alpha, gamma, b, j)).collect::<Result<_>>()?;
        Ok(BlockSet { alpha, gamma, b, blocks })
    }

    pub fn order(&self) -> usize {
        self.blocks.len()
    }

    fn link(&self) -> f64 {
        (1.0 - self.gamma) * self.b * self.b
    }

    /// Mode-wise `scale_j M_j (a_j, b_j)ᵀ`.
    pub fn apply(&self, h: &FourierPair) -> Result<SineResidual> {
        if h.order() != self.order() || h.b.len() != self.order() {
            return Err(Error::SizeMismatch { expected: self.order(), found: h.order() });
        }
        let mut r = SineResidual::zeros(self.order());
        for (k, blk) in self.blocks.iter().enumerate() {
            let (c, d) = blk.apply(h.a[k], h.b[k]);
            r.c[k] = c;
            r.d[k] = d;
        }
        Ok(r)
    }

    /// Inverse of [`BlockSet::apply`] on sine pairs satisfying the first-mode
    /// link; the output satisfies the cosine link exactly.
    pub fn precondition(&self, r: &SineResidual) -> Result<FourierPair> {
        if r.order() != self.order() || r.d.len() != self.order() {
            return Err(Error::SizeMismatch { expected: self.order(), found: r.order() });
        }
        let mut f = FourierPair::zeros(self.order());
        if self.order() == 0 {
            return Ok(f);
        }
        let link = self.link();
        let defect = r.c[0] - link * r.d[0];
        if defect.abs() > 1e-8 * (1.0 + r.sup_norm()) {
            return Err(Error::LinkViolation { defect });
        }
        let b1 = &self.blocks[0];
        let s = b1.scale * b1.entries[1][1];
        let k = r.d[0] / ((1.0 - link) * s);
        f.a[0] = link * k;
        f.b[0] = k;
        for (idx, blk) in self.blocks.iter().enumerate().skip(1) {
            let (a, b) = blk.solve(r.c[idx], r.d[idx])?;
            f.a[idx] = a;
            f.b[idx] = b;
        }
        Ok(f)
    }
}

/// `scale_j M_j (a_j, b_j)ᵀ` for every mode of `h`.
pub fn linearized_apply(alpha: f64, gamma: f64, b: f64, h: &FourierPair) -> Result<SineResidual> {
    BlockSet::new(alpha, gamma, b, h.order())?.apply(h)
}

/// Mode-wise inverse of [`linearized_apply`] on the linked sine space.
pub fn block_precondition(alpha: f64, gamma: f64, b: f64, r: &SineResidual) -> Result<FourierPair> {
    BlockSet::new(alpha, gamma, b, r.order())?.precondition(r)
}

/// The three sufficient inequalities that bound `det(M_j)` away from zero for
/// every `j >= 2` when `α > 0` and the ratio is taken at `b`.
pub fn sufficient_conditions(alpha: f64, gamma: f64, b: f64) -> Result<bool> {
    let th2 = theta_coeff(alpha, 2)?;
    let l1 = lambda_coeff(alpha, b, 1)?;
    let w = (1.0 - gamma) * b.powf(-alpha);
    Ok(0.5 * th2 >= b * b * l1 && 0.25 * w * th2 >= l1 && w * th2 * th2 / 8.0 >= 3.0 * b * b * l1 * l1)
}

/// One grid point of a determinant scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub b: f64,
    pub min_det: f64,
    /// Nonzero determinants up to `j_max` and certified tail.
    pub admissible: bool,
    /// Analytic tail control holds (the `j > j_max` modes are covered).
    pub certified: bool,
}

/// Result of [`invertible_b_scan`].
#[derive(Debug, Clone)]
pub struct RegionScan {
    pub rows: Vec<RegionRow>,
    pub intervals: Vec<(f64, f64)>,
}

/// Classifies every `b` of the grid and merges consecutive admissible points
/// into intervals.
pub fn invertible_b_scan(alpha: f64, gamma: f64, j_max: usize, b_grid: &[f64]) -> Result<RegionScan> {
    let mut rows = Vec::with_capacity(b_grid.len());
    for &b in b_grid {
        let dets = det_profile(alpha, gamma, b, j_max)?;
        let min_det = dets.iter().copied().fold(f64::INFINITY, |m, v| if v.abs() < m.abs() { v } else { m });
        let nonsingular = min_det.abs() > 1e-10;
        let certified = if alpha == 0.0 {
            gamma != 0.0 && ((gamma > 0.0 && gamma < 1.0 && b < 0.5f64.sqrt()) || gamma >= 1.0)
        } else {
            gamma < 1.0 && sufficient_conditions(alpha, gamma, b)?
        };
        let admissible = nonsingular && certified;
        rows.push(RegionRow { b, min_det, admissible, certified });
    }
    let mut intervals = Vec::new();
    let mut start: Option<f64> = None;
    let mut last = 0.0;
    for row in &rows {
        match (row.admissible, start) {
            (true, None) => start = Some(row.b),
            (false, Some(s)) => {
                intervals.push((s, last));
                start = None;
            }
            _ => {}
        }
        last = row.b;
    }
    if let Some(s) = start {
        intervals.push((s, last));
    }
    Ok(RegionScan { rows, intervals })
}

/// Uniform grid `lo, lo + step, ..., <= hi`.
pub fn b_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| ((lo + k as f64 * step) * 1e12).round() / 1e12).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_vortex_speeds() {
        assert!((omega_star(0.0, 2, 1.0).unwrap() - 1.0 / (4.0 * PI)).abs() < 1e-15);
        for n in 3..=6 {
            let v = omega_star(0.0, n, 1.0).unwrap();
            assert!((v - (n - 1) as f64 / (4.0 * PI)).abs() < 1e-13);
        }
        let a = 0.5;
        let expect = a * c_alpha(a).unwrap() * 2.0 / (2.0 * PI * 4f64.powf(1.0 + a / 2.0));
        assert!((omega_star(a, 2, 1.0).unwrap() - expect).abs() < 1e-15);
        assert!((w_star(0.0, 2.0).unwrap() - 1.0 / (8.0 * PI)).abs() < 1e-16);
        assert!((w_star(1.0, 1.0).unwrap() - 1.0 / (8.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn block_examples() {
        let m = m_block(0.0, 0.5, 0.5, 2).unwrap();
        let e = [[0.75, 0.0625], [-0.5, 1.5]];
        for r in 0..2 {
            for c in 0..2 {
                assert!((m.entries[r][c] - e[r][c]).abs() < 1e-15);
            }
        }
        assert!((m.det() - 1.15625).abs() < 1e-14);
        for &alpha in &[0.0, 0.5, 1.0, 1.5] {
            let m1 = m_block(alpha, 0.3, 0.4, 1).unwrap();
            assert!(m1.det().abs() < 1e-14, "alpha = {alpha}");
        }
        let m1 = m_block(0.0, 0.3, 0.4, 1).unwrap();
        assert!((m1.entries[0][0] + 0.7 * 0.16).abs() < 1e-15);
        assert!((m1.entries[0][1] - 0.7 * 0.16).abs() < 1e-15);
    }

    #[test]
    fn determinant_polynomial_matches() {
        for &(g, b) in &[(0.5, 0.5), (2.0, 0.9), (-0.3, 0.2), (0.1, 0.69)] {
            for j in 2..20 {
                let d = m_block(0.0, g, b, j).unwrap().det();
                assert!((d - det_polynomial(g, b, j)).abs() < 1e-12 * (1.0 + d.abs()));
            }
        }
    }

    #[test]
    fn determinant_signs() {
        assert!(det_profile(0.0, 0.5, 0.5, 8).unwrap().iter().all(|&d| d > 0.0));
        assert!(det_profile(0.0, 2.0, 0.9, 8).unwrap().iter().all(|&d| d > 0.0));
        assert!(det_profile(0.5, 0.0, 0.1, 8).unwrap().iter().all(|&d| d < 0.0));
    }

    #[test]
    fn precondition_inverts_apply() {
        for &(alpha, g, b) in &[(0.0, 0.5, 0.5), (0.5, 0.0, 0.3), (1.5, 0.0, 0.2)] {
            let set = BlockSet::new(alpha, g, b, 6).unwrap();
            let mut h = FourierPair { a: vec![0.0, 0.3, -0.2, 0.1, 0.05, -0.01], b: vec![0.7, -0.1, 0.2, 0.0, 0.3, 0.02] };
            h.enforce_link(&crate::contour::PatchConfig::corotating(alpha, 2, g, b, 1.0, 0.1));
            let r = set.apply(&h).unwrap();
            assert!((r.c[0] - (1.0 - g) * b * b * r.d[0]).abs() < 1e-14);
            let back = set.precondition(&r).unwrap();
            for k in 0..6 {
                assert!((back.a[k] - h.a[k]).abs() < 1e-12);
                assert!((back.b[k] - h.b[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn precondition_rejects_link_violation() {
        let mut r = SineResidual::zeros(3);
        r.d[0] = 1.0;
        r.c[0] = 0.5 * 0.25 + 1e-3;
        assert!(matches!(block_precondition(0.0, 0.5, 0.5, &r), Err(Error::LinkViolation { .. })));
    }

    #[test]
    fn euler_regions() {
        let grid = b_grid(0.001, 0.7, 0.001);
        let scan = invertible_b_scan(0.0, 0.5, 64, &grid).unwrap();
        assert_eq!(scan.intervals.len(), 1);
        assert!(scan.intervals[0].0 <= 0.0011 && scan.intervals[0].1 >= 0.699);
        let scan = invertible_b_scan(0.0, 0.0, 64, &grid).unwrap();
        assert!(scan.intervals.is_empty());
    }
}
