//! Gamma-family functions, the Gauss hypergeometric series, Bessel functions
//! of the first kind, and the spectral coefficients `Θ_j`, `Λ_j(b)` of the
//! generalized SQG self- and cross-interaction kernels.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Regime of the kernel exponent `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaKind {
    /// `α = 0`, logarithmic (Euler) kernel.
    Zero,
    /// `0 < α < 1`.
    SubCritical,
    /// `α = 1` (SQG).
    Critical,
    /// `1 < α < 2`.
    SuperCritical,
}

impl AlphaKind {
    pub fn classify(alpha: f64) -> Result<Self> {
        if !(0.0..2.0).contains(&alpha) {
            return Err(Error::domain("alpha", format!("alpha = {alpha} outside [0, 2)")));
        }
        Ok(if alpha == 0.0 {
            AlphaKind::Zero
        } else if alpha < 1.0 {
            AlphaKind::SubCritical
        } else if alpha == 1.0 {
            AlphaKind::Critical
        } else {
            AlphaKind::SuperCritical
        })
    }
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos_sum(x: f64) -> f64 {
    let mut s = LANCZOS[0];
    for (k, c) in LANCZOS.iter().enumerate().skip(1) {
        s += c / (x + k as f64);
    }
    s
}

/// Euler Gamma function.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.round() {
        return Err(Error::Pole { op: "gamma", x });
    }
    if x < 0.5 {
        let s = (PI * x).sin();
        return Ok(PI / (s * gamma_fn(1.0 - x)?));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok((2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * lanczos_sum(z))
}

/// Natural logarithm of `Γ(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Err(Error::domain("ln_gamma", format!("x = {x} must be positive")));
    }
    if x < 0.5 {
        return Ok((PI / (PI * x).sin()).ln() - ln_gamma(1.0 - x)?);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok(0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln())
}

/// `Γ(a) / Γ(b)` without overflow for large arguments.
pub fn gamma_ratio(a: f64, b: f64) -> Result<f64> {
    if a < 150.0 && b < 150.0 {
        Ok(gamma_fn(a)? / gamma_fn(b)?)
    } else {
        Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
    }
}

/// Rising factorial `(x)_j = x (x+1) ... (x+j-1)`.
pub fn pochhammer(x: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, k| acc * (x + k as f64))
}

const F21_MAX_TERMS: usize = 2_000_000;

/// Gauss hypergeometric series `₂F₁(a, b; c; z)` for `0 <= z < 1`.
///
/// Accuracy degrades as `z -> 1` when `c - a - b <= 0`; callers keep `z <= 0.97`.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    if c <= 0.0 && c == c.round() {
        return Err(Error::Pole { op: "gauss_2f1 (c)", x: c });
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain("gauss_2f1", format!("z = {z} outside [0, 1)")));
    }
    let mut sum = 1.0;
    let mut term = 1.0;
    for k in 0..F21_MAX_TERMS {
        let kf = k as f64;
        let ratio = (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        term *= ratio;
        sum += term;
        if term.abs() < 1e-16 * sum.abs() && ratio.abs() < 1.0 {
            return Ok(sum);
        }
        if term == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { op: "gauss_2f1", bound: (term / sum).abs() })
}

/// Kernel constant `C_α = Γ(α/2) / (2^{1-α} Γ((2-α)/2))` for `0 < α < 2`.
pub fn c_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain("c_alpha", format!("alpha = {alpha} outside (0, 2)")));
    }
    Ok(gamma_fn(alpha / 2.0)? / (2f64.powf(1.0 - alpha) * gamma_fn(1.0 - alpha / 2.0)?))
}

/// Self-interaction coefficient `Θ_j` for `0 < α < 2`.
///
/// The difference of the two Gamma ratios is telescoped as
/// `(1-α) Σ_{l=2}^{j} r_{l-1}/(l-α/2)` with `r_l = Γ(l+α/2)/Γ(1+l-α/2)`, which
/// cancels the pole of `Γ(1-α)` analytically. At `α = 1` this is the two-sided
/// limit `(2/π) Σ_{l=2}^{j} 1/(2l-1)`.
pub fn theta_coeff(alpha: f64, j: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain("theta_coeff", format!("alpha = {alpha} outside (0, 2)")));
    }
    if j == 0 {
        return Err(Error::domain("theta_coeff", "mode index must be >= 1"));
    }
    let h = alpha / 2.0;
    let pref = 2f64.powf(alpha - 1.0) * gamma_fn(2.0 - alpha)? / gamma_fn(1.0 - h)?.powi(2);
    let mut r = gamma_ratio(1.0 + h, 2.0 - h)?;
    let mut sum = 0.0;
    for l in 2..=j {
        let lf = l as f64;
        sum += r / (lf - h);
        r *= (lf - 1.0 + h) / (lf - h);
    }
    Ok(pref * sum)
}

/// `Θ_j` straight from the two Gamma ratios; undefined at `α = 1`.
pub fn theta_coeff_direct(alpha: f64, j: usize) -> Result<f64> {
    if alpha == 1.0 {
        return Err(Error::Pole { op: "theta_coeff_direct", x: alpha });
    }
    let h = alpha / 2.0;
    let pref = 2f64.powf(alpha - 1.0) * gamma_fn(1.0 - alpha)? / gamma_fn(1.0 - h)?.powi(2);
    let jf = j as f64;
    Ok(pref * (gamma_ratio(1.0 + h, 2.0 - h)? - gamma_ratio(jf + h, 1.0 + jf - h)?))
}

/// Cross-interaction coefficient `Λ_j(b)` via the hypergeometric closed form.
pub fn lambda_coeff(alpha: f64, b: f64, j: usize) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain("lambda_coeff", format!("b = {b} outside (0, 1)")));
    }
    let c = c_alpha(alpha)?;
    let h = alpha / 2.0;
    let poch_over_fact = (0..j).fold(1.0, |acc, k| acc * (h + k as f64) / (k as f64 + 1.0));
    let jf = j as f64;
    Ok(c * poch_over_fact * b.powi(j as i32 - 1) * gauss_2f1(h, jf + h, jf + 1.0, b * b)?)
}

const BESSEL_SERIES_MAX: f64 = 12.0;

/// Bessel function of the first kind `J_n(x)` for integer order `n`.
pub fn bessel_j(n: usize, x: f64) -> f64 {
    if x < 0.0 {
        let v = bessel_j(n, -x);
        return if n % 2 == 0 { v } else { -v };
    }
    if x <= BESSEL_SERIES_MAX {
        return bessel_j_series(n, x);
    }
    bessel_j_large(n, x)
}

/// `J_n(x)` for large `x`: Hankel expansions of `J_0`, `J_1` and forward
/// recurrence (stable while `n < x`).
pub fn bessel_j_large(n: usize, x: f64) -> f64 {
    if (n as f64) < x {
        let j0 = bessel_j_asymptotic(0, x);
        if n == 0 {
            return j0;
        }
        let mut prev = j0;
        let mut cur = bessel_j_asymptotic(1, x);
        for k in 1..n {
            let next = 2.0 * k as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    } else {
        bessel_j_asymptotic(n, x)
    }
}

/// Ascending series of `J_n(x)`.
pub fn bessel_j_series(n: usize, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = (1..=n).fold(1.0, |acc, k| acc * half / k as f64);
    let mut sum = term;
    let q = -half * half;
    for k in 1..400 {
        term *= q / (k as f64 * (k + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// Coefficients `a_k(n)` of the Hankel expansion, `k = 0..count`.
pub fn hankel_coefficients(n: usize, count: usize) -> Vec<f64> {
    let mu = 4.0 * (n * n) as f64;
    let mut out = Vec::with_capacity(count);
    let mut a = 1.0;
    out.push(a);
    for k in 1..count {
        let odd = (2 * k - 1) as f64;
        a *= (mu - odd * odd) / (k as f64 * 8.0);
        out.push(a);
    }
    out
}

/// Large-argument Hankel expansion of `J_n(x)`, summed to its smallest term.
pub fn bessel_j_asymptotic(n: usize, x: f64) -> f64 {
    let coeffs = hankel_coefficients(n, 60);
    let (mut p, mut q) = (0.0, 0.0);
    let mut last = f64::INFINITY;
    for (k, a) in coeffs.iter().enumerate() {
        let term = a / x.powi(k as i32);
        if term.abs() > last && k > 2 {
            break;
        }
        last = term.abs();
        match k % 4 {
            0 => p += term,
            1 => q += term,
            2 => p -= term,
            _ => q -= term,
        }
        if term.abs() < 1e-17 {
            break;
        }
    }
    let chi = x - (n as f64) * PI / 2.0 - PI / 4.0;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

#[derive(Clone, Copy)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
    fn scale(self, s: f64) -> C64 {
        C64::new(self.re * s, self.im * s)
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
    fn cis(t: f64) -> C64 {
        C64::new(t.cos(), t.sin())
    }
    fn i_pow(k: usize) -> C64 {
        match k % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        }
    }
}

/// `∫_T^∞ t^s e^{iωt} dt` for `s < 0` by its integration-by-parts series.
fn oscillatory_tail(s: f64, omega: f64, t0: f64) -> (C64, f64) {
    let iw_t = C64::new(0.0, omega * t0);
    let inv = {
        let d = iw_t.re * iw_t.re + iw_t.im * iw_t.im;
        C64::new(iw_t.re / d, -iw_t.im / d)
    };
    let mut term = C64::new(1.0, 0.0);
    let mut sum = term;
    let mut last = 1.0;
    for m in 1..200 {
        term = term.mul(inv).scale(-(s - m as f64 + 1.0));
        let mag = term.abs();
        if mag > last {
            break;
        }
        sum = sum.add(term);
        last = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let lead = C64::cis(omega * t0).scale(t0.powf(s)).mul(C64::new(0.0, 1.0 / omega));
    (lead.mul(sum), last * t0.powf(s) / omega.abs())
}

/// Independent route to `Λ_j(b) = (1/b) ∫_0^∞ J_j(bt) J_j(t) t^{α-1} dt`.
///
/// The integral is taken by Gauss-Legendre panels up to `T`, beyond which the
/// product of the two Hankel expansions is integrated term by term.
pub fn lambda_bessel_oracle(alpha: f64, b: f64, j: usize) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::domain("lambda_bessel_oracle", format!("alpha = {alpha} outside (0, 2)")));
    }
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::domain("lambda_bessel_oracle", format!("b = {b} outside (0, 1)")));
    }
    let t_end = (40.0 / b).max(40.0 / (1.0 - b)).max(60.0).ceil();
    let integrand = |t: f64| bessel_j(j, b * t) * bessel_j(j, t) * t.powf(alpha - 1.0);

    let (gx, gw) = gauss_legendre(24);
    let mut body = 0.0;
    let panel = |a: f64, c: f64| -> f64 {
        let (mid, half) = (0.5 * (a + c), 0.5 * (c - a));
        gx.iter().zip(&gw).map(|(x, w)| w * half * integrand(mid + half * x)).sum()
    };
    let mut hi = 1.0;
    for _ in 0..60 {
        body += panel(0.5 * hi, hi);
        hi *= 0.5;
    }
    let mut a = 1.0;
    while a < t_end {
        let c = (a + 1.0).min(t_end);
        body += panel(a, c);
        a = c;
    }

    let coeffs = hankel_coefficients(j, 40);
    let phase = C64::cis(-(j as f64) * PI - PI / 2.0);
    let mut tail = C64::new(0.0, 0.0);
    let mut bound = 0.0;
    let mut prev_mag = f64::INFINITY;
    for p in 0..36 {
        let mut sum_plus = C64::new(0.0, 0.0);
        let mut sum_minus = C64::new(0.0, 0.0);
        for k in 0..=p {
            let l = p - k;
            let base = coeffs[k] * coeffs[l] * b.powi(-(k as i32));
            sum_plus = sum_plus.add(C64::i_pow(k + l).scale(base));
            sum_minus = sum_minus.add(C64::i_pow(k).mul(C64::i_pow(3 * l)).scale(base));
        }
        let s = alpha - 2.0 - p as f64;
        let (ip, ep) = oscillatory_tail(s, 1.0 + b, t_end);
        let (im, em) = oscillatory_tail(s, b - 1.0, t_end);
        let contrib = sum_plus.mul(phase).mul(ip).add(sum_minus.mul(im));
        let mag = contrib.abs();
        bound = mag + sum_plus.abs() * ep + sum_minus.abs() * em;
        if mag > prev_mag && p > 4 {
            break;
        }
        tail = tail.add(contrib);
        prev_mag = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let scale = 1.0 / (PI * b.sqrt());
    let bound = bound * scale / b;
    if bound > 1e-9 {
        return Err(Error::NonConvergence { op: "lambda_bessel_oracle tail", bound });
    }
    Ok((body + scale * tail.re) / b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_known_values() {
        assert!((gamma_fn(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_fn(1.0).unwrap() - 1.0).abs() < 1e-15);
        let g45 = 3.5 * 2.5 * 1.5 * 0.5 * PI.sqrt();
        assert!((gamma_fn(4.5).unwrap() / g45 - 1.0).abs() < 1e-13);
        assert!(gamma_fn(0.0).is_err());
        assert!(gamma_fn(-3.0).is_err());
        let gm = gamma_fn(-0.5).unwrap();
        assert!((gm + 2.0 * PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn gamma_matches_factorials() {
        let mut fact = 1.0f64;
        for n in 1..45 {
            if n > 1 {
                fact *= (n - 1) as f64;
            }
            let g = gamma_fn(n as f64).unwrap();
            assert!((g / fact - 1.0).abs() < 1e-13, "n = {n}");
            assert!((ln_gamma(n as f64).unwrap() - fact.ln()).abs() < 1e-12 * fact.ln().max(1.0));
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(0.5, 0), 1.0);
        assert!((pochhammer(0.5, 3) - 1.875).abs() < 1e-15);
        assert_eq!(pochhammer(2.0, 4), 120.0);
    }

    #[test]
    fn hypergeometric_examples() {
        assert_eq!(gauss_2f1(0.3, 0.7, 1.1, 0.0).unwrap(), 1.0);
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!((v - 2f64.ln() / 0.5).abs() < 1e-14);
        assert!(gauss_2f1(1.0, 1.0, -2.0, 0.5).is_err());
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0).is_err());
    }

    #[test]
    fn c_alpha_examples() {
        assert!((c_alpha(1.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(c_alpha(0.0).is_err());
        let v = c_alpha(1.5).unwrap();
        let expect = gamma_fn(0.75).unwrap() * 2f64.sqrt() / gamma_fn(0.25).unwrap();
        assert!((v - expect).abs() < 1e-14);
    }

    #[test]
    fn theta_first_mode_vanishes() {
        for &a in &[0.1, 0.5, 1.0, 1.3, 1.9] {
            assert_eq!(theta_coeff(a, 1).unwrap(), 0.0);
        }
    }

    #[test]
    fn theta_telescoped_matches_direct() {
        for &a in &[0.25, 0.5, 0.9, 1.2, 1.5, 1.8] {
            for j in [2, 3, 7, 20, 64] {
                let t = theta_coeff(a, j).unwrap();
                let d = theta_coeff_direct(a, j).unwrap();
                assert!((t - d).abs() < 1e-12 * d.abs().max(1.0), "alpha {a} j {j}");
            }
        }
    }

    #[test]
    fn theta_critical_is_two_sided_limit() {
        for j in [2, 5, 17] {
            let avg = 0.5
                * (theta_coeff_direct(1.0 - 1e-6, j).unwrap()
                    + theta_coeff_direct(1.0 + 1e-6, j).unwrap());
            let exact: f64 =
                (2..=j).map(|l| 1.0 / (2 * l - 1) as f64).sum::<f64>() * 2.0 / PI;
            assert!((theta_coeff(1.0, j).unwrap() - exact).abs() < 1e-14);
            assert!((avg - exact).abs() < 1e-8);
        }
    }

    #[test]
    fn bessel_series_and_asymptotic_agree_at_switch() {
        for n in 0..6 {
            for &x in &[11.0, 12.0, 13.0] {
                let s = bessel_j_series(n, x);
                let a = bessel_j_large(n, x);
                assert!((s - a).abs() < 1e-9, "n {n} x {x}: {s} vs {a}");
            }
        }
    }

    #[test]
    fn bessel_zero_of_j0() {
        assert!(bessel_j(0, 2.404_825_557_695_773).abs() < 1e-14);
        assert!(bessel_j(1, 3.831_705_970_207_512_4).abs() < 1e-14);
        assert!(bessel_j(0, 14.930_917_708_487_786).abs() < 1e-13);
    }

    #[test]
    fn lambda_routes_agree() {
        for &(a, b, j) in &[(0.5, 0.5, 1), (1.0, 0.3, 3), (1.5, 0.2, 2)] {
            let hyp = lambda_coeff(a, b, j).unwrap();
            let bes = lambda_bessel_oracle(a, b, j).unwrap();
            assert!((hyp - bes).abs() < 1e-8, "{a} {b} {j}: {hyp} vs {bes}");
        }
    }

    #[test]
    fn lambda_small_b_scaling() {
        let l1 = lambda_coeff(0.5, 1e-3, 2).unwrap();
        let l2 = lambda_coeff(0.5, 2e-3, 2).unwrap();
        assert!((l2 / l1 - 2.0).abs() < 1e-5);
    }

    #[test]
    fn alpha_kind_classification() {
        assert_eq!(AlphaKind::classify(0.0).unwrap(), AlphaKind::Zero);
        assert_eq!(AlphaKind::classify(0.5).unwrap(), AlphaKind::SubCritical);
        assert_eq!(AlphaKind::classify(1.0).unwrap(), AlphaKind::Critical);
        assert_eq!(AlphaKind::classify(1.5).unwrap(), AlphaKind::SuperCritical);
        assert!(AlphaKind::classify(2.0).is_err());
        assert!(AlphaKind::classify(-0.1).is_err());
    }
}
