//! Integer polynomials and the convergents `P_n / Q_n` of
//! `eps_1 x + 1/(eps_2 x + 1/(... + 1/(eps_n x)))`.
//!
//! Convergents follow the three-term recurrence
//! `P_n = eps_n x P_{n-1} + P_{n-2}` (same for `Q`) seeded with
//! `P_0 = 1, P_{-1} = 0, Q_0 = 0, Q_{-1} = 1`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::knotparams::BridgeParams;
use crate::roots::PolyEval;

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. Never stores trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(vec![BigInt::from(c)])
    }

    /// `c * x^k`
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::from(c);
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }

    /// True when every nonzero coefficient sits in a degree of the given parity.
    pub fn has_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k % 2 == parity % 2)
    }

    /// Horner evaluation in double precision.
    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.to_f64()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Exact evaluation at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * BigInt::from(k))
                .collect(),
        )
    }

    /// Coefficients as a bracketed list, lowest degree first.
    pub fn coeff_list(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(", "))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }
}

/// The pair `(P_n, Q_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentPair {
    pub n: usize,
    pub p: IntPoly,
    pub q: IntPoly,
}

/// Convergents for an arbitrary sign list `signs[0] = eps_1, ...`.
pub fn convergents_from_signs(signs: &[i8]) -> Vec<ConvergentPair> {
    let mut out = Vec::with_capacity(signs.len());
    let (mut p_prev, mut p_cur) = (IntPoly::zero(), IntPoly::one());
    let (mut q_prev, mut q_cur) = (IntPoly::one(), IntPoly::zero());
    for (i, &eps) in signs.iter().enumerate() {
        let e = BigInt::from(eps);
        let p_next = &p_cur.shift(1).scale(&e) + &p_prev;
        let q_next = &q_cur.shift(1).scale(&e) + &q_prev;
        p_prev = std::mem::replace(&mut p_cur, p_next);
        q_prev = std::mem::replace(&mut q_cur, q_next);
        out.push(ConvergentPair {
            n: i + 1,
            p: p_cur.clone(),
            q: q_cur.clone(),
        });
    }
    out
}

/// `(P_n, Q_n)` for `n = 1..=n_max`.
pub fn convergents(params: &BridgeParams, n_max: usize) -> Vec<ConvergentPair> {
    let signs: Vec<i8> = (1..=n_max as i64).map(|n| params.epsilon(n)).collect();
    convergents_from_signs(&signs)
}

/// `P_{p-1}`, whose roots parametrize the parabolic representations.
pub fn riley_poly(params: &BridgeParams) -> IntPoly {
    let n = params.p() as usize - 1;
    convergents(params, n).pop().expect("p >= 3").p
}

/// Numerical evaluation of the convergents at a complex point by running the
/// recurrence itself. Unlike Horner on the expanded integer coefficients this
/// stays accurate when the coefficients are huge and alternate in sign.
#[derive(Debug, Clone)]
pub struct ConvergentRecurrence {
    signs: Vec<i8>,
}

// Rescale the state once magnitudes pass 2^RESCALE_BITS.
const RESCALE_BITS: i32 = 400;

impl ConvergentRecurrence {
    pub fn new(params: &BridgeParams, n_max: usize) -> Self {
        let signs = (1..=n_max as i64).map(|n| params.epsilon(n)).collect();
        ConvergentRecurrence { signs }
    }

    pub fn from_signs(signs: Vec<i8>) -> Self {
        ConvergentRecurrence { signs }
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Homogeneous pairs `(P_n(x), Q_n(x))` for `n = 0..=len`, each scaled
    /// so that the larger coordinate has modulus one.
    pub fn pairs(&self, x: Complex64) -> Vec<(Complex64, Complex64)> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let mut out = Vec::with_capacity(self.signs.len() + 1);
        out.push((one, zero));
        let (mut p_prev, mut p_cur) = (zero, one);
        let (mut q_prev, mut q_cur) = (one, zero);
        for &eps in &self.signs {
            let ex = x * f64::from(eps);
            let p_next = ex * p_cur + p_prev;
            let q_next = ex * q_cur + q_prev;
            p_prev = p_cur;
            q_prev = q_cur;
            p_cur = p_next;
            q_cur = q_next;
            let m = p_cur.norm().max(q_cur.norm());
            if m > 0.0 && m.is_finite() {
                out.push((p_cur / m, q_cur / m));
            } else {
                out.push((p_cur, q_cur));
            }
            let big = p_cur
                .norm()
                .max(p_prev.norm())
                .max(q_cur.norm())
                .max(q_prev.norm());
            if big > 2f64.powi(RESCALE_BITS) {
                let s = 2f64.powi(-RESCALE_BITS);
                p_prev *= s;
                p_cur *= s;
                q_prev *= s;
                q_cur *= s;
            }
        }
        out
    }

    /// `(P(x), P'(x), log2 scale)` for the last numerator `P = P_len`; the
    /// true values are the returned ones times `2^scale`.
    pub fn eval_last_with_derivative(&self, x: Complex64) -> (Complex64, Complex64, i32) {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let (mut p_prev, mut p_cur) = (zero, one);
        let (mut d_prev, mut d_cur) = (zero, zero);
        let mut scale = 0i32;
        for &eps in &self.signs {
            let e = f64::from(eps);
            let p_next = x * e * p_cur + p_prev;
            let d_next = p_cur * e + x * e * d_cur + d_prev;
            p_prev = p_cur;
            d_prev = d_cur;
            p_cur = p_next;
            d_cur = d_next;
            let big = p_cur.norm().max(d_cur.norm());
            if big > 2f64.powi(RESCALE_BITS) {
                let s = 2f64.powi(-RESCALE_BITS);
                p_prev *= s;
                p_cur *= s;
                d_prev *= s;
                d_cur *= s;
                scale += RESCALE_BITS;
            }
        }
        (p_cur, d_cur, scale)
    }
}

/// Root-finding view of `P_{p-1}` that evaluates through the recurrence.
#[derive(Debug, Clone)]
pub struct RileyEvaluator {
    recurrence: ConvergentRecurrence,
    poly: IntPoly,
    coeff_scale: f64,
}

impl RileyEvaluator {
    pub fn new(params: &BridgeParams) -> Self {
        let n = params.p() as usize - 1;
        let poly = riley_poly(params);
        let coeff_scale = poly.max_abs_coeff();
        RileyEvaluator {
            recurrence: ConvergentRecurrence::new(params, n),
            poly,
            coeff_scale,
        }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }
}

impl PolyEval for RileyEvaluator {
    fn degree(&self) -> usize {
        self.recurrence.len()
    }

    fn coefficients(&self) -> Vec<f64> {
        self.poly.to_f64()
    }

    fn newton_correction(&self, x: Complex64) -> Complex64 {
        let (p, d, _) = self.recurrence.eval_last_with_derivative(x);
        p / d
    }

    fn relative_residual(&self, x: Complex64) -> f64 {
        let (p, _, scale) = self.recurrence.eval_last_with_derivative(x);
        p.norm() * 2f64.powi(scale) / self.coeff_scale
    }
}
