//! Simultaneous root finding (Aberth-Ehrlich) with Newton polishing.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{FromPrimitive, One, ToPrimitive, Zero};
use thiserror::Error;

use crate::polyseq::IntPoly;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RootError {
    #[error(
        "NoConvergence: worst relative residual {worst_residual:e} after {iterations} iterations"
    )]
    NoConvergence {
        worst_residual: f64,
        iterations: usize,
    },
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
}

/// `n * 2^-shift` rounded to f64, without overflowing on huge `n`.
fn scaled_to_f64(n: &BigInt, shift: u64) -> f64 {
    let excess = n.bits().saturating_sub(64);
    let head = (n >> excess).to_f64().unwrap_or(0.0);
    head * 2f64.powf(excess as f64 - shift as f64)
}

/// What the solver needs to know about a polynomial with real coefficients.
pub trait PolyEval {
    fn degree(&self) -> usize;
    /// Coefficients lowest degree first; only used for the root bound.
    fn coefficients(&self) -> Vec<f64>;
    /// `P(x) / P'(x)`.
    fn newton_correction(&self, x: Complex64) -> Complex64;
    /// `|P(x)| / max_k |a_k|`.
    fn relative_residual(&self, x: Complex64) -> f64;
}

impl PolyEval for IntPoly {
    fn degree(&self) -> usize {
        IntPoly::degree(self).unwrap_or(0)
    }

    fn coefficients(&self) -> Vec<f64> {
        self.to_f64()
    }

    fn newton_correction(&self, x: Complex64) -> Complex64 {
        let c = self.to_f64();
        let zero = Complex64::new(0.0, 0.0);
        let (p, d) = c
            .iter()
            .rev()
            .fold((zero, zero), |(p, d), &a| (p * x + a, d * x + p));
        p / d
    }

    fn relative_residual(&self, x: Complex64) -> f64 {
        self.eval_complex(x).norm() / self.max_abs_coeff()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootOptions {
    pub tol_residual: f64,
    pub max_iterations: usize,
    pub polish_iterations: usize,
    pub cluster_radius: f64,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            tol_residual: 1e-12,
            max_iterations: 500,
            polish_iterations: 50,
            cluster_radius: 1e-8,
        }
    }
}

/// Roots within `radius` of each other, reported together.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub representative: Complex64,
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub poly_degree: usize,
    pub iterations: usize,
}

impl RootSet {
    pub fn worst_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Largest distance from a conjugated root to its nearest root.
    pub fn conjugation_defect(&self) -> f64 {
        self.closure_defect(|z| z.conj())
    }

    /// Largest distance from a negated root to its nearest root.
    pub fn negation_defect(&self) -> f64 {
        self.closure_defect(|z| -z)
    }

    fn closure_defect(&self, map: impl Fn(Complex64) -> Complex64) -> f64 {
        self.roots
            .iter()
            .map(|&z| {
                let w = map(z);
                self.roots
                    .iter()
                    .map(|&r| (r - w).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }

    /// Coefficients (lowest first) of `prod (x - r)`.
    ///
    /// The product is expanded exactly over the Gaussian integers after
    /// rounding each root to a multiple of `2^-FIXED_BITS`; a plain f64
    /// expansion loses everything to cancellation once the degree passes ~60.
    pub fn monic_coefficients(&self) -> Vec<Complex64> {
        const FIXED_BITS: u32 = 64;
        let to_fixed = |v: f64| -> BigInt {
            BigInt::from_f64((v * 2f64.powi(FIXED_BITS as i32)).round()).unwrap_or_default()
        };
        // c[k] = (re, im), all scaled by 2^(FIXED_BITS * deg)
        let mut c: Vec<(BigInt, BigInt)> = vec![(BigInt::one(), BigInt::zero())];
        let unit = BigInt::one() << FIXED_BITS;
        for &r in &self.roots {
            let (rr, ri) = (to_fixed(r.re), to_fixed(r.im));
            let mut next = vec![(BigInt::zero(), BigInt::zero()); c.len() + 1];
            for (k, (a, b)) in c.iter().enumerate() {
                next[k + 1].0 += a * &unit;
                next[k + 1].1 += b * &unit;
                next[k].0 -= a * &rr - b * &ri;
                next[k].1 -= a * &ri + b * &rr;
            }
            c = next;
        }
        let shift = FIXED_BITS as u64 * self.roots.len() as u64;
        c.iter()
            .map(|(a, b)| Complex64::new(scaled_to_f64(a, shift), scaled_to_f64(b, shift)))
            .collect()
    }

    /// Group roots closer than `radius` (single linkage).
    pub fn clusters(&self, radius: f64) -> Vec<RootCluster> {
        let n = self.roots.len();
        let mut label: Vec<usize> = (0..n).collect();
        fn find(label: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while label[r] != r {
                r = label[r];
            }
            label[i] = r;
            r
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if (self.roots[i] - self.roots[j]).norm() <= radius {
                    let (a, b) = (find(&mut label, i), find(&mut label, j));
                    label[a.max(b)] = a.min(b);
                }
            }
        }
        let mut out: Vec<RootCluster> = Vec::new();
        let mut index_of = vec![usize::MAX; n];
        for i in 0..n {
            let r = find(&mut label, i);
            if index_of[r] == usize::MAX {
                index_of[r] = out.len();
                out.push(RootCluster {
                    representative: Complex64::new(0.0, 0.0),
                    members: Vec::new(),
                });
            }
            out[index_of[r]].members.push(i);
        }
        for c in &mut out {
            let sum: Complex64 = c.members.iter().map(|&i| self.roots[i]).sum();
            c.representative = sum / c.members.len() as f64;
        }
        out
    }
}

/// Fujiwara's bound on the moduli of the roots.
pub fn fujiwara_bound(coeffs: &[f64]) -> f64 {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    (1..=n)
        .map(|k| {
            let mut ratio = coeffs[n - k].abs() / lead;
            if k == n {
                ratio /= 2.0;
            }
            ratio.powf(1.0 / k as f64)
        })
        .fold(0.0, f64::max)
        * 2.0
}

pub fn find_roots(poly: &IntPoly) -> Result<RootSet, RootError> {
    find_roots_with(poly, &RootOptions::default())
}

/// All roots of a real polynomial.
pub fn find_roots_with<E: PolyEval + ?Sized>(
    poly: &E,
    opts: &RootOptions,
) -> Result<RootSet, RootError> {
    let n = poly.degree();
    if n == 0 {
        return Err(RootError::ConstantPolynomial);
    }
    let coeffs = poly.coefficients();
    let radius = fujiwara_bound(&coeffs).max(f64::MIN_POSITIVE);
    // rotation by an irrational angle keeps guesses off symmetry axes
    let offset = 0.5 * std::f64::consts::SQRT_2;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + offset))
        .collect();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < opts.max_iterations {
        iterations += 1;
        let mut worst_step = 0.0f64;
        for k in 0..n {
            let newton = poly.newton_correction(z[k]);
            if !newton.is_finite() {
                // landed on a critical point: nudge and retry next sweep
                z[k] *= Complex64::from_polar(1.0 + 1e-7, 1e-7);
                worst_step = f64::INFINITY;
                continue;
            }
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| (z[k] - z[j]).inv())
                .sum();
            let step = newton / (Complex64::new(1.0, 0.0) - newton * repulsion);
            if step.is_finite() {
                z[k] -= step;
                worst_step = worst_step.max(step.norm() / z[k].norm().max(1.0));
            }
        }
        if worst_step <= 1e-14 {
            converged = true;
            break;
        }
    }

    for root in z.iter_mut() {
        polish(poly, root, opts.polish_iterations);
    }
    symmetrize_conjugates(&mut z, opts.cluster_radius);

    let residuals: Vec<f64> = z.iter().map(|&x| poly.relative_residual(x)).collect();
    let worst = residuals.iter().copied().fold(0.0, f64::max);
    if !converged && (worst.is_nan() || worst > opts.tol_residual) {
        return Err(RootError::NoConvergence {
            worst_residual: worst,
            iterations,
        });
    }
    Ok(RootSet {
        roots: z,
        residuals,
        poly_degree: n,
        iterations,
    })
}

/// Newton iterations while the correction keeps shrinking.
fn polish<E: PolyEval + ?Sized>(poly: &E, root: &mut Complex64, max_steps: usize) {
    let mut last = f64::INFINITY;
    for _ in 0..max_steps {
        let step = poly.newton_correction(*root);
        let size = step.norm();
        if !step.is_finite() || size >= last {
            break;
        }
        *root -= step;
        last = size;
        if size <= f64::EPSILON * root.norm() {
            break;
        }
    }
}

/// Real coefficients force conjugate pairs; make the pairing exact so that
/// quantities odd under conjugation cancel exactly.
fn symmetrize_conjugates(z: &mut [Complex64], radius: f64) {
    let n = z.len();
    let mut paired = vec![false; n];
    for i in 0..n {
        if paired[i] || z[i].im <= 0.0 {
            continue;
        }
        let target = z[i].conj();
        let partner = (0..n)
            .filter(|&j| j != i && !paired[j] && z[j].im < 0.0)
            .min_by(|&a, &b| (z[a] - target).norm().total_cmp(&(z[b] - target).norm()));
        if let Some(j) = partner {
            if (z[j] - target).norm() <= radius * z[i].norm().max(1.0) {
                let mid = 0.5 * (z[i] + z[j].conj());
                z[i] = mid;
                z[j] = mid.conj();
                paired[i] = true;
                paired[j] = true;
            }
        }
    }
    for i in 0..n {
        if !paired[i] && z[i].im.abs() <= radius * z[i].norm().max(1.0) {
            z[i].im = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(set: &RootSet, w: Complex64, tol: f64) -> bool {
        set.roots.iter().any(|&r| (r - w).norm() < tol)
    }

    #[test]
    fn quadratic() {
        let set = find_roots(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert!(contains(&set, Complex64::new(0.0, 1.0), 1e-14));
        assert!(contains(&set, Complex64::new(0.0, -1.0), 1e-14));
    }

    #[test]
    fn twelfth_roots_of_unity() {
        let set = find_roots(&IntPoly::from_i64(&[1, 0, -1, 0, 1])).unwrap();
        for k in [1.0, -1.0, 5.0, -5.0] {
            let w = Complex64::from_polar(1.0, k * PI / 6.0);
            assert!(contains(&set, w, 1e-13), "missing e^(i {k} pi/6)");
        }
        assert!(set.worst_residual() < 1e-14);
        assert!(set.conjugation_defect() < 1e-15);
    }

    #[test]
    fn real_and_repeated_roots() {
        // (x - 1)(x + 2)(x - 3)
        let set = find_roots(&IntPoly::from_i64(&[6, -5, -2, 1])).unwrap();
        for r in [1.0, -2.0, 3.0] {
            assert!(contains(&set, Complex64::new(r, 0.0), 1e-12));
        }
        // (x - 1)^2 (x + 1): the double root forms one cluster
        let set = find_roots(&IntPoly::from_i64(&[1, -1, -1, 1])).unwrap();
        let clusters = set.clusters(1e-6);
        assert_eq!(clusters.len(), 2);
        assert!(clusters
            .iter()
            .any(|c| c.members.len() == 2
                && (c.representative - Complex64::new(1.0, 0.0)).norm() < 1e-7));
    }

    #[test]
    fn fujiwara_bounds_roots() {
        let c = [6.0, -5.0, -2.0, 1.0];
        assert!(fujiwara_bound(&c) >= 3.0);
    }

    #[test]
    fn constant_rejected() {
        assert_eq!(
            find_roots(&IntPoly::constant(3)),
            Err(RootError::ConstantPolynomial)
        );
    }

    #[test]
    fn reconstruction() {
        let poly = IntPoly::from_i64(&[1, 0, 2, 0, 1, 0, 1]);
        let set = find_roots(&poly).unwrap();
        let c = set.monic_coefficients();
        for (k, a) in poly.to_f64().iter().enumerate() {
            assert!((c[k] - a).norm() < 1e-12);
        }
    }
}
