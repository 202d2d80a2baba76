//! Two-bridge knot parameters.
//!
//! A two-bridge knot `K(p,q)` is indexed by coprime odd integers `0 < q < p`.
//! Everything downstream is driven by the sign sequence
//! `eps(n) = (-1)^floor(n q / p)` and by the odd integer `ell` in `(0, 2p)`
//! with `ell * q = -1 (mod 2p)`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use thiserror::Error;

use crate::dilog;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("NotOdd: p = {p} and q = {q} must both be odd")]
    NotOdd { p: i64, q: i64 },
    #[error("NotCoprime: gcd({p}, {q}) = {gcd}")]
    NotCoprime { p: i64, q: i64, gcd: i64 },
    #[error("OutOfRange: need 0 < q < p, got p = {p}, q = {q}")]
    OutOfRange { p: i64, q: i64 },
}

impl ParamError {
    /// Short machine-friendly name of the failed validation.
    pub fn name(&self) -> &'static str {
        match self {
            ParamError::NotOdd { .. } => "NotOdd",
            ParamError::NotCoprime { .. } => "NotCoprime",
            ParamError::OutOfRange { .. } => "OutOfRange",
        }
    }
}

/// Validated `(p, q)` together with the derived shift `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BridgeParams {
    p: u64,
    q: u64,
    ell: u64,
}

impl BridgeParams {
    pub fn new(p: i64, q: i64) -> Result<Self, ParamError> {
        make_params(p, q)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    /// Number of syllable pairs `(p - 1) / 2`.
    pub fn half(&self) -> usize {
        ((self.p - 1) / 2) as usize
    }

    /// `(-1)^floor(n q / p)` for any integer `n`, by exact integer division.
    pub fn epsilon(&self, n: i64) -> i8 {
        let num = i128::from(n) * i128::from(self.q);
        let floor = num.div_euclid(i128::from(self.p));
        if floor.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// A torus knot `K(p,1)`; not hyperbolic.
    pub fn is_torus(&self) -> bool {
        self.q == 1
    }
}

impl fmt::Display for BridgeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K({},{})", self.p, self.q)
    }
}

/// Validate `(p, q)` and compute `ell`.
pub fn make_params(p: i64, q: i64) -> Result<BridgeParams, ParamError> {
    if q <= 0 || q >= p {
        return Err(ParamError::OutOfRange { p, q });
    }
    if p % 2 == 0 || q % 2 == 0 {
        return Err(ParamError::NotOdd { p, q });
    }
    let gcd = p.gcd(&q);
    if gcd != 1 {
        return Err(ParamError::NotCoprime { p, q, gcd });
    }
    let (p, q) = (p as u64, q as u64);
    let two_p = 2 * p;
    let inv = mod_inverse(q, two_p).expect("q is a unit mod 2p once odd and coprime to p");
    let ell = (two_p - inv) % two_p;
    debug_assert_eq!((ell * q) % two_p, two_p - 1);
    Ok(BridgeParams { p, q, ell })
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Signs `eps(1), ..., eps(n_max)`, stored 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignSequence {
    signs: Vec<i8>,
}

impl SignSequence {
    /// `eps(n)` for `1 <= n <= len`.
    pub fn get(&self, n: usize) -> i8 {
        assert!(
            n >= 1 && n <= self.signs.len(),
            "sign index {n} out of range"
        );
        self.signs[n - 1]
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.signs
    }

    /// Space separated `+`/`-` rendering, e.g. `+ + - - + +`.
    pub fn to_plus_minus(&self) -> String {
        self.signs
            .iter()
            .map(|&s| if s > 0 { "+" } else { "-" })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

pub fn epsilon_sequence(params: &BridgeParams, n_max: usize) -> SignSequence {
    let signs = (1..=n_max as i64).map(|n| params.epsilon(n)).collect();
    SignSequence { signs }
}

/// Positive continued fraction `a_1 + 1/(a_2 + ... + 1/a_n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CFExpansion {
    pub terms: Vec<u64>,
    pub value_num: u64,
    pub value_den: u64,
}

impl CFExpansion {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluate the expansion back to a reduced fraction `(num, den)`.
    pub fn evaluate(&self) -> (u128, u128) {
        let mut num: u128 = 1;
        let mut den: u128 = 0;
        for &a in self.terms.iter().rev() {
            let next = u128::from(a) * num + den;
            den = num;
            num = next;
        }
        (num, den)
    }

    /// Conway notation for the alternating diagram, e.g. `C(2 3)`.
    pub fn conway_notation(&self) -> String {
        let inner: Vec<String> = self.terms.iter().map(|a| a.to_string()).collect();
        format!("C({})", inner.join(" "))
    }
}

impl fmt::Display for CFExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.terms.iter().map(|a| a.to_string()).collect();
        write!(f, "[{}]", inner.join(", "))
    }
}

/// Euclidean expansion of `p/q`; canonical, so the last term is at least 2
/// whenever there is more than one term.
pub fn cf_positive(p: i64, q: i64) -> Result<CFExpansion, ParamError> {
    if q <= 0 || q >= p {
        return Err(ParamError::OutOfRange { p, q });
    }
    let gcd = p.gcd(&q);
    if gcd != 1 {
        return Err(ParamError::NotCoprime { p, q, gcd });
    }
    let (mut a, mut b) = (p as u64, q as u64);
    let mut terms = Vec::new();
    while b != 0 {
        terms.push(a / b);
        let r = a % b;
        a = b;
        b = r;
    }
    Ok(CFExpansion {
        terms,
        value_num: p as u64,
        value_den: q as u64,
    })
}

/// Lower and upper volume bounds in terms of the continued fraction depth:
/// `v3 (n - 2) / 2 <= V <= 16 v3 (n - 1)`.
pub fn lackenby_bounds(cf: &CFExpansion) -> (f64, f64) {
    let v3 = dilog::v3();
    let n = cf.len() as f64;
    (v3 * (n - 2.0) / 2.0, 16.0 * v3 * (n - 1.0))
}

/// All `(p, q')` with `q'` odd in `(0, p)`, coprime to `p` and congruent to
/// `+-q^(+-1) mod p`. These parametrize the same knot up to orientation.
pub fn equivalent_params(params: &BridgeParams) -> BTreeSet<(u64, u64)> {
    let p = params.p();
    let q = params.q() % p;
    let mut out = BTreeSet::new();
    let mut candidates = vec![q, (p - q) % p];
    if let Some(inv) = mod_inverse(q, p) {
        candidates.push(inv);
        candidates.push((p - inv) % p);
    }
    for c in candidates {
        if c > 0 && c < p && c % 2 == 1 && c.gcd(&p) == 1 {
            out.insert((p, c));
        }
    }
    out
}
