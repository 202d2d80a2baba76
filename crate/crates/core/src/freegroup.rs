//! Words in the free group `F = <u, v>`, its integral group ring and Fox
//! derivatives. Everything here is exact.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::knotparams::BridgeParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    U,
    V,
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Gen::U => "u",
            Gen::V => "v",
        })
    }
}

/// A freely reduced word, stored as syllables `(generator, exponent)`.
/// Adjacent syllables never share a generator and no exponent is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    syllables: Vec<(Gen, i64)>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(g: Gen) -> Self {
        Word {
            syllables: vec![(g, 1)],
        }
    }

    pub fn power(g: Gen, e: i64) -> Self {
        reduce(&[(g, e)])
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllables(&self) -> &[(Gen, i64)] {
        &self.syllables
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.syllables
            .iter()
            .map(|&(_, e)| e.unsigned_abs() as usize)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn exponent_sum(&self, g: Gen) -> i64 {
        self.syllables
            .iter()
            .filter(|&&(h, _)| h == g)
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn inverse(&self) -> Self {
        Word {
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    /// `x*`: the letters written in reverse order, exponents kept.
    pub fn reverse_star(&self) -> Self {
        Word {
            syllables: self.syllables.iter().rev().copied().collect(),
        }
    }

    fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }
}

/// `a b a^-1 b^-1`
pub fn commutator(a: &Word, b: &Word) -> Word {
    &(&(a * b) * &a.inverse()) * &b.inverse()
}

/// Freely reduce a sequence of signed syllables. Cancellation is done with
/// a stack, so the result does not depend on the order of cancellations.
pub fn reduce(raw: &[(Gen, i64)]) -> Word {
    let mut w = Word::identity();
    for &(g, e) in raw {
        w.push(g, e);
    }
    w
}

pub fn reverse_star(x: &Word) -> Word {
    x.reverse_star()
}

impl Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut out = self.clone();
        for &(g, e) in &rhs.syllables {
            out.push(g, e);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for (i, &(g, e)) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                write!(f, "{g}")?;
            } else {
                write!(f, "{g}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Finite formal sum of reduced words with nonzero integer coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, i64>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(w, 1);
        GroupRingElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, i64> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Augmentation: the sum of coefficients.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn add_term(&mut self, w: Word, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                let sum = slot
                    .get()
                    .checked_add(c)
                    .expect("group ring coefficient overflow");
                if sum == 0 {
                    slot.remove();
                } else {
                    *slot.get_mut() = sum;
                }
            }
        }
    }

    /// `w * self`
    pub fn left_mul_word(&self, w: &Word) -> Self {
        let mut out = Self::zero();
        for (x, &c) in &self.terms {
            out.add_term(w * x, c);
        }
        out
    }
}

impl Add for &GroupRingElement {
    type Output = GroupRingElement;
    fn add(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, &c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Neg for &GroupRingElement {
    type Output = GroupRingElement;
    fn neg(self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, &c)| (w.clone(), -c)).collect(),
        }
    }
}

impl Sub for &GroupRingElement {
    type Output = GroupRingElement;
    fn sub(self, rhs: &GroupRingElement) -> GroupRingElement {
        self + &(-rhs)
    }
}

impl Mul for &GroupRingElement {
    type Output = GroupRingElement;
    fn mul(self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let c = x.checked_mul(y).expect("group ring coefficient overflow");
                out.add_term(a * b, c);
            }
        }
        out
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (w, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "[{w}]")?;
        }
        Ok(())
    }
}

/// Fox derivative `d f / d gen` in `Z[F]`.
pub fn fox_derivative(f: &Word, gen: Gen) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = Word::identity();
    for &(g, e) in f.syllables() {
        if g == gen {
            // d(x^e) = 1 + x + ... + x^(e-1)          for e > 0
            //        = -(x^-1 + x^-2 + ... + x^e)     for e < 0
            if e > 0 {
                for j in 0..e {
                    out.add_term(&prefix * &Word::power(g, j), 1);
                }
            } else {
                for j in 1..=-e {
                    out.add_term(&prefix * &Word::power(g, -j), -1);
                }
            }
        }
        prefix.push(g, e);
    }
    out
}

/// `f - 1 = (df/du)(u - 1) + (df/dv)(v - 1)` in `Z[F]`.
pub fn check_fundamental_formula(f: &Word) -> bool {
    let one = GroupRingElement::one();
    let lhs = &GroupRingElement::from_word(f.clone()) - &one;
    let mut rhs = GroupRingElement::zero();
    for g in [Gen::U, Gen::V] {
        let x_minus_one = &GroupRingElement::from_word(Word::gen(g)) - &one;
        rhs = &rhs + &(&fox_derivative(f, g) * &x_minus_one);
    }
    lhs == rhs
}

/// The words of the two-bridge presentation `<u, v | w u = v w>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PresentationWords {
    pub w: Word,
    pub w_star: Word,
    pub r: Word,
    pub g: Word,
    pub l: Word,
}

/// `prod_{i = from}^{to} x_i^{eps_i}` with `x_i = u` for even `i` and `v`
/// for odd `i`, or the other way round when `odd_is_u`.
fn alternating_word(params: &BridgeParams, from: i64, to: i64, odd_is_u: bool) -> Word {
    let raw: Vec<(Gen, i64)> = (from..=to)
        .map(|i| {
            let is_u = (i.rem_euclid(2) == 1) == odd_is_u;
            let g = if is_u { Gen::U } else { Gen::V };
            (g, i64::from(params.epsilon(i)))
        })
        .collect();
    reduce(&raw)
}

pub fn build_presentation(params: &BridgeParams) -> PresentationWords {
    let p = params.p() as i64;
    let ell = params.ell() as i64;
    // w = u^e1 v^e2 ... u^e(p-2) v^e(p-1)
    let w = alternating_word(params, 1, p - 1, true);
    // g = u^e0 v^e1 ... u^e(ell-1) v^e(ell)
    let g = alternating_word(params, 0, ell, false);
    let u = Word::gen(Gen::U);
    let v = Word::gen(Gen::V);
    let r = &(&(&w * &u) * &w.inverse()) * &v.inverse();
    let w_star = w.reverse_star();
    let l = &w_star * &w;
    PresentationWords { w, w_star, r, g, l }
}

/// `u w* v^-1 (w*)^-1 = g r g^-1`
pub fn check_lemma_2_1(words: &PresentationWords) -> bool {
    let u = Word::gen(Gen::U);
    let v_inv = Word::power(Gen::V, -1);
    let lhs = &(&(&u * &words.w_star) * &v_inv) * &words.w_star.inverse();
    let rhs = &(&words.g * &words.r) * &words.g.inverse();
    lhs == rhs
}

/// `[l, u] = [w*, r][r, g]`
pub fn check_lemma_2_2(words: &PresentationWords) -> bool {
    let u = Word::gen(Gen::U);
    let lhs = commutator(&words.l, &u);
    let rhs = &commutator(&words.w_star, &words.r) * &commutator(&words.r, &words.g);
    lhs == rhs
}
