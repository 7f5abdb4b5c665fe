//! Periodic quadrature: trapezoid mean values on uniform grids, Fourier-side
//! product-quadrature weights for the singular factor `(4 sin²(t/2))^{-α/2}`
//! (and its logarithmic `α = 0` analogue), and a slow adaptive oracle.

use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::specialfn::{gamma_fn, gamma_ratio};

/// Environment variable naming a directory for persisted singular weights.
pub const CACHE_ENV: &str = "VSTATES_CACHE_DIR";

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Uniform grid `x_k = 2πk/M` on the circle.
#[derive(Debug, Clone)]
pub struct PeriodicGrid {
    nodes: Vec<f64>,
}

impl PeriodicGrid {
    pub fn new(m: usize) -> Result<Self> {
        if m < 4 || m % 2 != 0 {
            return Err(Error::domain("PeriodicGrid", format!("M = {m} must be even and >= 4")));
        }
        let h = 2.0 * PI / m as f64;
        Ok(PeriodicGrid { nodes: (0..m).map(|k| k as f64 * h).collect() })
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.nodes.len() as f64
    }

    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Vec<f64> {
        self.nodes.iter().map(|&x| f(x)).collect()
    }
}

/// Trapezoid approximation of the mean value `⨍ g`.
pub fn mean_integral(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

/// Fourier-side weights of a periodic even kernel `k(t)`:
/// `w_m = ⨍ e^{imt} k(t) dt`, stored for `m = 0..M-1` with `w_{M-m} = w_m`.
///
/// For `α = 0` the kernel is `log(1/(4 sin²(t/2)))`; for `α ∈ (0,2)` it is
/// `(4 sin²(t/2))^{-α/2}`, read as a Hadamard finite part when `α >= 1`.
#[derive(Debug, Clone)]
pub struct SingularWeights {
    pub alpha: f64,
    pub m: usize,
    pub weights: Vec<f64>,
    kernel: Vec<f64>,
}

impl SingularWeights {
    fn from_half(alpha: f64, m: usize, half: &[f64]) -> Self {
        let mut weights = vec![0.0; m];
        for (k, w) in weights.iter_mut().enumerate() {
            *w = half[k.min(m - k)];
        }
        let mut buf: Vec<Complex<f64>> = weights.iter().map(|&w| Complex::new(w, 0.0)).collect();
        FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
        let kernel = buf.iter().map(|c| c.re / m as f64).collect();
        SingularWeights { alpha, m, weights, kernel }
    }

    /// Physical-space convolution weights `W_n = (1/M) Σ_m w_m e^{2πimn/M}`,
    /// so that `⨍ k(x_k - y) g(y) dy ≈ Σ_l W_{(k-l) mod M} g(y_l)`.
    pub fn kernel(&self) -> &[f64] {
        &self.kernel
    }
}

/// Weights for `log(1/(4 sin²(t/2)))`: `w_0 = 0`, `w_m = 1/|m|`.
pub fn log_fourier_weights(m: usize) -> SingularWeights {
    let half: Vec<f64> = (0..=m / 2).map(|k| if k == 0 { 0.0 } else { 1.0 / k as f64 }).collect();
    SingularWeights::from_half(0.0, m, &half)
}

/// Closed form of `⨍ e^{imt} (4 sin²(t/2))^{-α/2} dt` (analytic continuation in
/// `α`, equal to the Hadamard finite part for `α ∈ (1,2)`); `α ≠ 1`.
pub fn singular_weight_closed_form(alpha: f64, m: usize) -> Result<f64> {
    let h = alpha / 2.0;
    let mf = m as f64;
    Ok(gamma_fn(1.0 - alpha)? * (PI * h).sin() / PI * gamma_ratio(mf + h, mf + 1.0 - h)?)
}

type CacheKey = (i64, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<SingularWeights>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<SingularWeights>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cache_key(alpha: f64, m: usize) -> CacheKey {
    ((alpha * 1e12).round() as i64, m)
}

fn disk_path(alpha: f64, m: usize) -> Option<PathBuf> {
    let dir = std::env::var_os(CACHE_ENV)?;
    Some(PathBuf::from(dir).join(format!("weights_a{alpha:.12}_m{m}.txt")))
}

fn read_disk(alpha: f64, m: usize) -> Option<Vec<f64>> {
    let text = std::fs::read_to_string(disk_path(alpha, m)?).ok()?;
    let half: Vec<f64> = text.lines().filter_map(|l| l.trim().parse().ok()).collect();
    (half.len() == m / 2 + 1).then_some(half)
}

fn write_disk(alpha: f64, m: usize, half: &[f64]) {
    if let Some(path) = disk_path(alpha, m) {
        if let Some(dir) = path.parent() {
            let _ = std::fs::create_dir_all(dir);
        }
        let body: String = half.iter().map(|w| format!("{w:e}\n")).collect();
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        if std::fs::write(&tmp, body).is_ok() {
            let _ = std::fs::rename(&tmp, &path);
        }
    }
}

/// Product-quadrature weights for the singular factor, cached per `(α, M)`.
///
/// `α = 0` returns the analytic logarithmic weights. For `α ∈ (0,2)` the
/// coefficients come from graded Gauss-Legendre quadrature of
/// `w_0 - (2/π) ∫_0^π k(t) sin²(mt/2) dt`, with `w_0` the finite part.
pub fn singular_fourier_weights(alpha: f64, m: usize) -> Result<Arc<SingularWeights>> {
    if !(0.0..2.0).contains(&alpha) {
        return Err(Error::domain("singular_fourier_weights", format!("alpha = {alpha}")));
    }
    PeriodicGrid::new(m)?;
    let key = cache_key(alpha, m);
    if let Some(w) = cache().lock().expect("weight cache poisoned").get(&key) {
        return Ok(w.clone());
    }
    let weights = if alpha == 0.0 {
        log_fourier_weights(m)
    } else if let Some(half) = read_disk(alpha, m) {
        SingularWeights::from_half(alpha, m, &half)
    } else {
        let half = compute_half_weights(alpha, m)?;
        write_disk(alpha, m, &half);
        SingularWeights::from_half(alpha, m, &half)
    };
    let arc = Arc::new(weights);
    cache().lock().expect("weight cache poisoned").entry(key).or_insert(arc.clone());
    Ok(arc)
}

fn sinc_minus_one(t: f64) -> f64 {
    if t < 0.1 {
        let t2 = t * t;
        t2 * (-1.0 / 24.0 + t2 * (1.0 / 1920.0 - t2 / 322_560.0))
    } else {
        2.0 * (0.5 * t).sin() / t - 1.0
    }
}

/// Nodes and weights on `(0, π]`: dyadic panels toward 0 plus uniform panels.
fn graded_rule(m: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    let (gx, gw) = gauss_legendre(order);
    let h0 = PI / m as f64;
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut push = |a: f64, b: f64| {
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (x, w) in gx.iter().zip(&gw) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    };
    let mut hi = h0;
    for _ in 0..64 {
        push(0.5 * hi, hi);
        hi *= 0.5;
    }
    for k in 1..m {
        push(k as f64 * h0, (k + 1) as f64 * h0);
    }
    (nodes, weights)
}

fn half_weights_with(alpha: f64, m: usize, order: usize) -> Vec<f64> {
    let (nodes, wts) = graded_rule(m, order);
    let kern: Vec<f64> = nodes
        .iter()
        .map(|&t| (-alpha * (1.0 + sinc_minus_one(t)).ln()).exp() * t.powf(-alpha))
        .collect();
    let excess: f64 = nodes
        .iter()
        .zip(&wts)
        .map(|(&t, &w)| {
            let ln_s = sinc_minus_one(t).ln_1p();
            w * t.powf(-alpha) * (-alpha * ln_s).exp_m1()
        })
        .sum();
    let fp = if alpha == 1.0 { PI.ln() } else { PI.powf(1.0 - alpha) / (1.0 - alpha) };
    let w0 = (excess + fp) / PI;
    let mut half = Vec::with_capacity(m / 2 + 1);
    half.push(w0);
    for k in 1..=m / 2 {
        let kf = k as f64;
        let s: f64 = nodes
            .iter()
            .zip(&wts)
            .zip(&kern)
            .map(|((&t, &w), &kv)| {
                let s = (0.5 * kf * t).sin();
                w * kv * s * s
            })
            .sum();
        half.push(w0 - 2.0 / PI * s);
    }
    half
}

fn compute_half_weights(alpha: f64, m: usize) -> Result<Vec<f64>> {
    let fine = half_weights_with(alpha, m, 20);
    let coarse = half_weights_with(alpha, m, 14);
    let bound = fine
        .iter()
        .zip(&coarse)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if bound > 1e-11 {
        return Err(Error::NonConvergence { op: "singular_fourier_weights", bound });
    }
    Ok(fine)
}

/// `x ↦ ⨍ k(x - y) g(y) dy` on the grid via the Fourier multiplier `w_m`.
pub fn convolve_singular(weights: &SingularWeights, values: &[f64]) -> Result<Vec<f64>> {
    let m = weights.m;
    if values.len() != m {
        return Err(Error::SizeMismatch { expected: m, found: values.len() });
    }
    let mut planner = FftPlanner::new();
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(m).process(&mut buf);
    for (c, w) in buf.iter_mut().zip(&weights.weights) {
        *c *= *w / m as f64;
    }
    planner.plan_fft_inverse(m).process(&mut buf);
    Ok(buf.iter().map(|c| c.re).collect())
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Gauss-Kronrod 7/15 estimate on `[a, b]`: `(integral, error estimate)`.
pub fn gauss_kronrod(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let (v, e) = gauss_kronrod_vec(&|x| [f(x)], a, b);
    (v[0], e)
}

/// Componentwise Gauss-Kronrod 7/15 estimate; the error is the largest
/// componentwise Kronrod-Gauss difference.
pub fn gauss_kronrod_vec<const N: usize>(f: &impl Fn(f64) -> [f64; N], a: f64, b: f64) -> ([f64; N], f64) {
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    let fc = f(c);
    let mut k = [0.0; N];
    let mut g = [0.0; N];
    for n in 0..N {
        k[n] = WGK[7] * fc[n];
        g[n] = WG[3] * fc[n];
    }
    for i in 0..7 {
        let dx = h * XGK[i];
        let (l, r) = (f(c - dx), f(c + dx));
        for n in 0..N {
            let s = l[n] + r[n];
            k[n] += WGK[i] * s;
            if i % 2 == 1 {
                g[n] += WG[i / 2] * s;
            }
        }
    }
    let err = (0..N).map(|n| ((k[n] - g[n]) * h).abs()).fold(0.0, f64::max);
    (k.map(|v| v * h), err)
}

struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    err: f64,
}

impl<const N: usize> PartialEq for Panel<N> {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl<const N: usize> Eq for Panel<N> {}
impl<const N: usize> PartialOrd for Panel<N> {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl<const N: usize> Ord for Panel<N> {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`, starting
/// from the given breakpoints. Returns the integral within `tol` (absolute).
pub fn adaptive_integrate(
    f: &impl Fn(f64) -> f64,
    breakpoints: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<f64> {
    Ok(adaptive_integrate_vec(&|x| [f(x)], breakpoints, tol, max_panels)?[0])
}

/// Vector-valued [`adaptive_integrate`]; panels are refined by their largest
/// componentwise error.
pub fn adaptive_integrate_vec<const N: usize>(
    f: &impl Fn(f64) -> [f64; N],
    breakpoints: &[f64],
    tol: f64,
    max_panels: usize,
) -> Result<[f64; N]> {
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = ([0.0; N], 0.0);
    for w in breakpoints.windows(2) {
        let (v, e) = gauss_kronrod_vec(f, w[0], w[1]);
        for n in 0..N {
            total[n] += v[n];
        }
        err += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, err: e });
    }
    let mut count = heap.len();
    while err > tol {
        if count >= max_panels {
            return Err(Error::NonConvergence { op: "adaptive quadrature", bound: err });
        }
        let p = heap.pop().expect("non-empty panel heap");
        let mid = 0.5 * (p.a + p.b);
        if mid <= p.a || mid >= p.b {
            return Err(Error::NonConvergence { op: "adaptive quadrature", bound: err });
        }
        let (v1, e1) = gauss_kronrod_vec(f, p.a, mid);
        let (v2, e2) = gauss_kronrod_vec(f, mid, p.b);
        for n in 0..N {
            total[n] += v1[n] + v2[n] - p.value[n];
        }
        err += e1 + e2 - p.err;
        heap.push(Panel { a: p.a, b: mid, value: v1, err: e1 });
        heap.push(Panel { a: mid, b: p.b, value: v2, err: e2 });
        count += 1;
    }
    Ok(total)
}

/// Slow reference value of `⨍ g(y) dy` over one period, with dyadic grading
/// toward an optional integrable singularity.
pub fn adaptive_oracle(
    integrand: impl Fn(f64) -> f64,
    singular_at: Option<f64>,
    tol: f64,
) -> Result<f64> {
    let y0 = singular_at.unwrap_or(0.0);
    let mut br = Vec::new();
    if singular_at.is_some() {
        br.push(0.0);
        for k in (0..48).rev() {
            br.push(PI * 0.5f64.powi(k + 1));
        }
        br.push(PI);
        for k in 0..48 {
            br.push(2.0 * PI - PI * 0.5f64.powi(k + 1));
        }
        br.push(2.0 * PI);
    } else {
        br.extend((0..=16).map(|k| k as f64 * PI / 8.0));
    }
    let g = |t: f64| integrand(y0 + t);
    Ok(adaptive_integrate(&g, &br, tol * 2.0 * PI, 200_000)? / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mean_integral_examples() {
        let grid = PeriodicGrid::new(64).unwrap();
        assert!((mean_integral(&grid.sample(|_| 2.5)) - 2.5).abs() < 1e-15);
        assert!(mean_integral(&grid.sample(|x| (3.0 * x).cos())).abs() < 1e-14);
        let grid = PeriodicGrid::new(256).unwrap();
        let v = grid.sample(|y| 1.0 / (1.0 - y.cos() + 0.25));
        assert!((mean_integral(&v) - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn grid_rejects_odd_size() {
        assert!(PeriodicGrid::new(63).is_err());
    }

    #[test]
    fn weights_match_closed_form() {
        for &a in &[0.3, 0.5, 1.5, 1.8] {
            let w = singular_fourier_weights(a, 128).unwrap();
            for m in [0, 1, 2, 7, 33, 64] {
                let c = singular_weight_closed_form(a, m).unwrap();
                assert!((w.weights[m] - c).abs() < 1e-11 * c.abs().max(1.0), "a {a} m {m}");
            }
        }
    }

    #[test]
    fn critical_weight_differences() {
        let w = singular_fourier_weights(1.0, 64).unwrap();
        for m in 1..20 {
            let expect: f64 = -(1..=m).map(|l| 1.0 / (2 * l - 1) as f64).sum::<f64>() * 2.0 / PI;
            assert!((w.weights[m] - w.weights[0] - expect).abs() < 1e-11);
        }
    }

    #[test]
    fn weights_are_symmetric() {
        let w = singular_fourier_weights(0.7, 32).unwrap();
        for m in 1..32 {
            assert_eq!(w.weights[m], w.weights[32 - m]);
        }
    }

    #[test]
    fn convolution_acts_diagonally() {
        let w = singular_fourier_weights(0.5, 64).unwrap();
        let grid = PeriodicGrid::new(64).unwrap();
        let ones = convolve_singular(&w, &grid.sample(|_| 1.0)).unwrap();
        assert!(ones.iter().all(|v| (v - w.weights[0]).abs() < 1e-13));
        let c2 = convolve_singular(&w, &grid.sample(|y| (2.0 * y).cos())).unwrap();
        for (x, v) in grid.nodes().iter().zip(&c2) {
            assert!((v - w.weights[2] * (2.0 * x).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn kernel_matches_fft_convolution() {
        let w = singular_fourier_weights(1.5, 32).unwrap();
        let grid = PeriodicGrid::new(32).unwrap();
        let g = grid.sample(|y| (y.sin() + 0.3 * (3.0 * y).cos()).exp());
        let via_fft = convolve_singular(&w, &g).unwrap();
        for k in 0..32 {
            let direct: f64 = (0..32).map(|l| w.kernel()[(k + 32 - l) % 32] * g[l]).sum();
            assert!((direct - via_fft[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_log_identity() {
        let v = adaptive_oracle(|y| (1.0 / (0.5 * y).sin().powi(2)).ln(), Some(0.0), 1e-12).unwrap();
        assert!((v - 2.0 * 2f64.ln()).abs() < 1e-10);
        let v = adaptive_oracle(
            |y| (3.0 * y).cos() * (1.0 / (0.5 * y).sin().powi(2)).ln(),
            Some(0.0),
            1e-12,
        )
        .unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-10);
        assert!((adaptive_oracle(|_| 1.0, None, 1e-12).unwrap() - 1.0).abs() < 1e-14);
    }
}
