//! Points of the complex projective line in homogeneous coordinates, Möbius
//! maps acting on them, and the cross-ratio.

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// `(a : b)`, kept scaled so that `max(|a|, |b|) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectivePoint {
    a: Complex64,
    b: Complex64,
}

impl ProjectivePoint {
    /// Panics on `(0, 0)` or non-finite input.
    pub fn new(a: Complex64, b: Complex64) -> Self {
        let m = a.norm().max(b.norm());
        assert!(
            m > 0.0 && m.is_finite(),
            "invalid homogeneous pair ({a}, {b})"
        );
        ProjectivePoint { a: a / m, b: b / m }
    }

    pub fn infinity() -> Self {
        ProjectivePoint { a: ONE, b: ZERO }
    }

    pub fn zero() -> Self {
        ProjectivePoint { a: ZERO, b: ONE }
    }

    pub fn finite(z: Complex64) -> Self {
        Self::new(z, ONE)
    }

    pub fn coords(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }

    /// `a / b`; infinite when `b = 0`.
    pub fn to_complex(&self) -> Complex64 {
        if self.b == ZERO {
            Complex64::new(f64::INFINITY, 0.0)
        } else {
            self.a / self.b
        }
    }

    /// Chordal distance on the Riemann sphere, in `[0, 1]`.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let n1 = (self.a.norm_sqr() + self.b.norm_sqr()).sqrt();
        let n2 = (other.a.norm_sqr() + other.b.norm_sqr()).sqrt();
        det(self, other).norm() / (n1 * n2)
    }

    pub fn coincides(&self, other: &ProjectivePoint, tol: f64) -> bool {
        self.distance(other) <= tol
    }
}

/// `a_1 b_2 - a_2 b_1`; equals `z_1 - z_2` for finite points `(z, 1)`.
pub fn det(p: &ProjectivePoint, q: &ProjectivePoint) -> Complex64 {
    p.a * q.b - q.a * p.b
}

/// 2x2 complex matrix acting by fractional linear transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    pub m11: Complex64,
    pub m12: Complex64,
    pub m21: Complex64,
    pub m22: Complex64,
}

impl MobiusMap {
    pub fn identity() -> Self {
        MobiusMap {
            m11: ONE,
            m12: ZERO,
            m21: ZERO,
            m22: ONE,
        }
    }

    /// `u = [[1, x], [0, 1]]`, i.e. `z -> z + x`.
    pub fn u(x: Complex64) -> Self {
        MobiusMap {
            m11: ONE,
            m12: x,
            m21: ZERO,
            m22: ONE,
        }
    }

    /// `v = [[1, 0], [x, 1]]`, i.e. `z -> 1 / (x + 1/z)`.
    pub fn v(x: Complex64) -> Self {
        MobiusMap {
            m11: ONE,
            m12: ZERO,
            m21: x,
            m22: ONE,
        }
    }

    pub fn det(&self) -> Complex64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn inverse(&self) -> Self {
        MobiusMap {
            m11: self.m22,
            m12: -self.m12,
            m21: -self.m21,
            m22: self.m11,
        }
    }

    pub fn compose(&self, rhs: &MobiusMap) -> Self {
        MobiusMap {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }

    /// Same map with the largest entry scaled to modulus one.
    pub fn normalized(&self) -> Self {
        let m = self
            .m11
            .norm()
            .max(self.m12.norm())
            .max(self.m21.norm())
            .max(self.m22.norm());
        MobiusMap {
            m11: self.m11 / m,
            m12: self.m12 / m,
            m21: self.m21 / m,
            m22: self.m22 / m,
        }
    }

    pub fn apply(&self, p: &ProjectivePoint) -> ProjectivePoint {
        let (a, b) = p.coords();
        ProjectivePoint::new(self.m11 * a + self.m12 * b, self.m21 * a + self.m22 * b)
    }
}

/// A cross-ratio, or the marker for a tuple with repeated points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CrossRatio {
    Value(Complex64),
    Degenerate,
}

impl CrossRatio {
    pub fn value(&self) -> Option<Complex64> {
        match self {
            CrossRatio::Value(z) => Some(*z),
            CrossRatio::Degenerate => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, CrossRatio::Degenerate)
    }
}

/// Default chordal tolerance below which two points count as equal.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// `[z0 : z1 : z2 : z3] = (z0 - z2)(z1 - z3) / ((z0 - z3)(z1 - z2))`.
pub fn cross_ratio(
    p0: &ProjectivePoint,
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    p3: &ProjectivePoint,
) -> CrossRatio {
    cross_ratio_with_tol(p0, p1, p2, p3, DEGENERACY_TOL)
}

pub fn cross_ratio_with_tol(
    p0: &ProjectivePoint,
    p1: &ProjectivePoint,
    p2: &ProjectivePoint,
    p3: &ProjectivePoint,
    tol: f64,
) -> CrossRatio {
    let pts = [p0, p1, p2, p3];
    for i in 0..4 {
        for j in (i + 1)..4 {
            if pts[i].coincides(pts[j], tol) {
                return CrossRatio::Degenerate;
            }
        }
    }
    let num = det(p0, p2) * det(p1, p3);
    let den = det(p0, p3) * det(p1, p2);
    CrossRatio::Value(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn normalization_of_cross_ratio() {
        let z = c(0.3, -1.7);
        let r = cross_ratio(
            &ProjectivePoint::infinity(),
            &ProjectivePoint::zero(),
            &ProjectivePoint::finite(c(1.0, 0.0)),
            &ProjectivePoint::finite(z),
        );
        assert!((r.value().unwrap() - z).norm() < 1e-15);
    }

    #[test]
    fn figure_eight_cross_ratios() {
        let x = Complex64::from_polar(1.0, PI / 6.0);
        let i = c(0.0, 1.0);
        let expected = Complex64::from_polar(1.0, -PI / 3.0);
        let r = cross_ratio(
            &ProjectivePoint::zero(),
            &ProjectivePoint::finite(-x.inv()),
            &ProjectivePoint::infinity(),
            &ProjectivePoint::finite(i),
        );
        assert!((r.value().unwrap() - expected).norm() < 1e-14);
        let r = cross_ratio(
            &ProjectivePoint::finite((x - i).inv()),
            &ProjectivePoint::infinity(),
            &ProjectivePoint::finite(i),
            &ProjectivePoint::zero(),
        );
        assert!((r.value().unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn repeated_points_are_degenerate() {
        let a = ProjectivePoint::finite(c(2.0, 1.0));
        let b = ProjectivePoint::finite(c(-1.0, 0.5));
        let scaled = ProjectivePoint::new(c(4.0, 2.0), c(2.0, 0.0));
        assert!(cross_ratio(&a, &b, &scaled, &ProjectivePoint::zero()).is_degenerate());
        assert!(cross_ratio(
            &a,
            &ProjectivePoint::infinity(),
            &ProjectivePoint::infinity(),
            &b
        )
        .is_degenerate());
    }

    #[test]
    fn generators_act_as_expected() {
        let x = c(0.4, 1.1);
        let z = c(0.7, 0.2);
        let p = ProjectivePoint::finite(z);
        let uz = MobiusMap::u(x).apply(&p).to_complex();
        assert!((uz - (z + x)).norm() < 1e-15);
        let vz = MobiusMap::v(x).apply(&p).to_complex();
        assert!((vz - (x + z.inv()).inv()).norm() < 1e-14);
        assert!(MobiusMap::v(x)
            .apply(&ProjectivePoint::zero())
            .coincides(&ProjectivePoint::zero(), 0.0));
        let back = MobiusMap::v(x)
            .inverse()
            .apply(&ProjectivePoint::infinity())
            .to_complex();
        assert!((back + x.inv()).norm() < 1e-15);
        assert_eq!(MobiusMap::u(x).det(), ONE);
    }
}
