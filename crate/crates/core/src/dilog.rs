//! Dilogarithm, Bloch-Wigner function and Lobachevsky function.
//!
//! `Li2` is evaluated with the Bernoulli series in `u = -ln(1 - z)` after
//! moving `z` into `|z| <= 1, Re z <= 1/2` with the inversion and reflection
//! formulas. On that region `|u| < 1.3`, so the series reaches double
//! precision in about 25 terms.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

const BERNOULLI_TABLE_LEN: usize = 128;
const PI2_6: f64 = PI * PI / 6.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilogConfig {
    /// Relative truncation tolerance for the series.
    pub series_tol: f64,
    /// Term cap. The accelerated series stop far earlier; the plain
    /// Lobachevsky sine series runs to this cap.
    pub max_terms: usize,
}

impl Default for DilogConfig {
    fn default() -> Self {
        DilogConfig {
            series_tol: 1e-15,
            max_terms: 1_000_000,
        }
    }
}

/// `B_0, B_1, ...` with `B_1 = -1/2`, from the tangent numbers
/// `T_k = 1, 2, 16, 272, ...` via `B_2k = (-1)^(k-1) 2k T_k / (4^k (4^k - 1))`.
fn bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = BERNOULLI_TABLE_LEN / 2;
        // Brent-Harvey in-place recurrence; only integer multiply-adds
        let mut t: Vec<BigInt> = vec![BigInt::zero(); n + 1];
        t[1] = BigInt::one();
        for k in 2..=n {
            t[k] = &t[k - 1] * (k - 1);
        }
        for k in 2..=n {
            for j in k..=n {
                t[j] = &t[j - 1] * (j - k) + &t[j] * (j - k + 2);
            }
        }
        let mut table = vec![0.0; BERNOULLI_TABLE_LEN];
        table[0] = 1.0;
        table[1] = -0.5;
        for (k, tk) in t.iter().enumerate().skip(1) {
            if 2 * k >= BERNOULLI_TABLE_LEN {
                break;
            }
            let four_k = 4f64.powi(k as i32);
            let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
            let tk = tk.to_f64().unwrap_or(f64::NAN);
            table[2 * k] = sign * (2 * k) as f64 * tk / four_k / (four_k - 1.0);
        }
        table
    })
}

fn is_infinite(z: Complex64) -> bool {
    z.re.is_infinite() || z.im.is_infinite()
}

/// Principal branch of `Li2(z)` for finite `z`.
pub fn li2(z: Complex64) -> Complex64 {
    li2_with(z, &DilogConfig::default())
}

pub fn li2_with(z: Complex64, cfg: &DilogConfig) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Complex64::new(PI2_6, 0.0);
    }
    if z.norm_sqr() > 1.0 {
        let l = (-z).ln();
        return -li2_with(z.inv(), cfg) - PI2_6 - 0.5 * l * l;
    }
    if z.re > 0.5 {
        let w = Complex64::new(1.0, 0.0) - z;
        return PI2_6 - z.ln() * w.ln() - li2_bernoulli(w, cfg);
    }
    li2_bernoulli(z, cfg)
}

/// `Li2(z) = sum_n B_n u^(n+1) / (n+1)!` with `u = -ln(1 - z)`.
fn li2_bernoulli(z: Complex64, cfg: &DilogConfig) -> Complex64 {
    let b = bernoulli();
    let u = -(Complex64::new(1.0, 0.0) - z).ln();
    let cap = cfg.max_terms.min(b.len());
    // power = u^(n+1) / (n+1)!
    let mut power = u;
    let mut sum = u * b[0];
    for (n, &bn) in b.iter().enumerate().take(cap).skip(1) {
        power = power * u / (n as f64 + 1.0);
        if bn == 0.0 {
            continue;
        }
        let term = power * bn;
        sum += term;
        if term.norm() <= cfg.series_tol * sum.norm() {
            break;
        }
    }
    sum
}

/// Bloch-Wigner dilogarithm `D(z) = Im Li2(z) + arg(1 - z) ln|z|`.
///
/// Exactly zero at `0`, `1`, infinity and on the real axis.
pub fn bloch_wigner(z: Complex64) -> f64 {
    bloch_wigner_with(z, &DilogConfig::default())
}

pub fn bloch_wigner_with(z: Complex64, cfg: &DilogConfig) -> f64 {
    if is_infinite(z) || z.im == 0.0 || z.re.is_nan() || z.im.is_nan() {
        return 0.0;
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    li2_with(z, cfg).im + one_minus.arg() * z.norm().ln()
}

/// `v3 = D(e^{i pi / 3})`, the volume of the regular ideal tetrahedron.
pub fn v3() -> f64 {
    static V3: OnceLock<f64> = OnceLock::new();
    *V3.get_or_init(|| bloch_wigner(Complex64::from_polar(1.0, PI / 3.0)))
}

/// Clausen function `Cl2(phi) = sum sin(n phi) / n^2`, through its
/// Bernoulli expansion around the origin after reducing `phi` to `[-pi, pi]`.
pub fn clausen2(phi: f64) -> f64 {
    clausen2_with(phi, &DilogConfig::default())
}

pub fn clausen2_with(phi: f64, cfg: &DilogConfig) -> f64 {
    let two_pi = 2.0 * PI;
    let mut t = phi.rem_euclid(two_pi);
    if t > PI {
        t -= two_pi;
    }
    if t == 0.0 {
        return 0.0;
    }
    let b = bernoulli();
    // Cl2(t) = t - t ln|t| + sum_k |B_2k| t^(2k+1) / (2k (2k+1)!)
    let mut sum = t - t * t.abs().ln();
    let t2 = t * t;
    let mut power = t; // t^(2k+1) / (2k+1)!
    for k in 1..cfg.max_terms.min(b.len() / 2) {
        let n = 2 * k;
        power *= t2 / ((n as f64) * (n as f64 + 1.0));
        let term = b[n].abs() * power / n as f64;
        sum += term;
        if term.abs() <= cfg.series_tol * sum.abs() {
            break;
        }
    }
    sum
}

/// Lobachevsky function `L(theta) = 1/2 Cl2(2 theta)`: odd, pi-periodic.
pub fn lobachevsky(theta: f64) -> f64 {
    lobachevsky_with(theta, &DilogConfig::default())
}

pub fn lobachevsky_with(theta: f64, cfg: &DilogConfig) -> f64 {
    0.5 * clausen2_with(2.0 * theta, cfg)
}

/// Partial sum `1/2 sum_{n <= max_terms} sin(2 n theta) / n^2` of the
/// defining series, with compensated summation. Slow; used as a reference.
pub fn lobachevsky_series(theta: f64, cfg: &DilogConfig) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=cfg.max_terms {
        let nf = n as f64;
        let term = (2.0 * nf * theta).sin() / (nf * nf);
        // Neumaier
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    0.5 * (sum + comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from a 40-digit evaluation of Im Li2.
    const V3: f64 = 1.014_941_606_409_653_6;
    const CATALAN: f64 = 0.915_965_594_177_219;

    /// Direct power series, valid for |z| < 1.
    fn li2_power_series(z: Complex64) -> Complex64 {
        let mut sum = Complex64::new(0.0, 0.0);
        let mut zn = Complex64::new(1.0, 0.0);
        for n in 1..4000 {
            zn *= z;
            sum += zn / ((n * n) as f64);
        }
        sum
    }

    #[test]
    fn bernoulli_values() {
        let b = bernoulli();
        assert_eq!(b[0], 1.0);
        assert_eq!(b[1], -0.5);
        assert!((b[2] - 1.0 / 6.0).abs() < 1e-17);
        assert_eq!(b[3], 0.0);
        assert!((b[4] + 1.0 / 30.0).abs() < 1e-17);
        assert!((b[12] + 691.0 / 2730.0).abs() < 1e-15);
    }

    #[test]
    fn bernoulli_table_matches_exact_recurrence() {
        use num_rational::BigRational;
        // sum_{k=0}^{m} C(m+1, k) B_k = 0
        let mut exact = vec![BigRational::one()];
        for m in 1..60usize {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, b) in exact.iter().enumerate() {
                acc += b * BigRational::from_integer(binom.clone());
                binom = binom * (m + 1 - k) / (k + 1);
            }
            exact.push(-acc / BigRational::from_integer(binom));
        }
        let table = bernoulli();
        for (n, b) in exact.iter().enumerate() {
            let b = b.to_f64().unwrap();
            assert!(
                (table[n] - b).abs() <= 4.0 * f64::EPSILON * b.abs(),
                "B_{n}: {} vs {b}",
                table[n]
            );
        }
    }

    #[test]
    fn li2_matches_power_series_inside_disk() {
        for &(re, im) in &[
            (0.3, 0.2),
            (-0.7, 0.1),
            (0.6, -0.5),
            (0.0, 0.8),
            (-0.5, -0.6),
        ] {
            let z = Complex64::new(re, im);
            let a = li2(z);
            let b = li2_power_series(z);
            assert!((a - b).norm() < 1e-13, "z = {z}: {a} vs {b}");
        }
    }

    #[test]
    fn special_values() {
        assert_eq!(bloch_wigner(Complex64::new(0.5, 0.0)), 0.0);
        assert_eq!(bloch_wigner(Complex64::new(0.0, 0.0)), 0.0);
        assert_eq!(bloch_wigner(Complex64::new(1.0, 0.0)), 0.0);
        assert_eq!(bloch_wigner(Complex64::new(f64::INFINITY, 0.0)), 0.0);
        assert!((bloch_wigner(Complex64::new(0.0, 1.0)) - CATALAN).abs() < 1e-12);
        assert!((v3() - V3).abs() < 1e-14);
        assert_eq!(v3(), bloch_wigner(Complex64::from_polar(1.0, PI / 3.0)));
        assert!(v3() > 1.0 && v3() < 1.02);
    }

    #[test]
    fn li2_at_one_and_minus_one() {
        assert!((li2(Complex64::new(-1.0, 0.0)).re + PI * PI / 12.0).abs() < 1e-15);
        assert!((li2(Complex64::new(1.0, 0.0)).re - PI2_6).abs() < 1e-15);
    }

    #[test]
    fn lobachevsky_values() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI / 2.0).abs() < 1e-15);
        let j = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
        assert!((2.0 * lobachevsky(PI / 3.0) - bloch_wigner(j)).abs() < 1e-10);
        // odd and pi-periodic
        for &t in &[0.1, 0.7, 1.3, 2.9] {
            assert!((lobachevsky(-t) + lobachevsky(t)).abs() < 1e-15);
            assert!((lobachevsky(t + PI) - lobachevsky(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn accelerated_lobachevsky_matches_plain_series() {
        let cfg = DilogConfig::default();
        for k in 1..12 {
            let theta = k as f64 * 0.27;
            let fast = lobachevsky(theta);
            let slow = lobachevsky_series(theta, &cfg);
            assert!(
                (fast - slow).abs() < 1e-10,
                "theta {theta}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn lobachevsky_term_doubling_is_stable() {
        let small = DilogConfig {
            series_tol: 1e-15,
            max_terms: 32,
        };
        let large = DilogConfig {
            series_tol: 1e-15,
            max_terms: 64,
        };
        for k in 0..40 {
            let theta = -1.5 + k as f64 * 0.077;
            let a = lobachevsky_with(theta, &small);
            let b = lobachevsky_with(theta, &large);
            assert!((a - b).abs() < 1e-15, "theta {theta}");
        }
    }

    #[test]
    fn loose_tolerance_degrades_accuracy() {
        let sloppy = DilogConfig {
            series_tol: 1e-1,
            max_terms: 1_000_000,
        };
        let z = Complex64::from_polar(1.0, PI / 3.0);
        assert!((bloch_wigner_with(z, &sloppy) - V3).abs() > 1e-9);
    }
}
