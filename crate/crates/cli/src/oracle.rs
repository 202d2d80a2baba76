//! Reference computations that share no code with the library: rational
//! functions over `Q` for the continued fractions, and a series for
//! Catalan's constant.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use twobridge::polyseq::IntPoly;

/// Polynomial over `Q`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly(Vec<BigRational>);

impl QPoly {
    fn normalized(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|a| a.is_zero()) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn zero() -> Self {
        QPoly(Vec::new())
    }

    pub fn constant(a: BigRational) -> Self {
        Self::normalized(vec![a])
    }

    /// `s x` for a sign `s`.
    pub fn signed_x(s: i8) -> Self {
        Self::normalized(vec![
            BigRational::zero(),
            BigRational::from_integer(BigInt::from(s)),
        ])
    }

    pub fn from_int(p: &IntPoly) -> Self {
        Self::normalized(
            p.coeffs()
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn leading(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let n = self.0.len().max(o.0.len());
        let c = (0..n)
            .map(|i| {
                let a = self.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                let b = o.0.get(i).cloned().unwrap_or_else(BigRational::zero);
                a + b
            })
            .collect();
        Self::normalized(c)
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut c = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::normalized(c)
    }

    pub fn scale(&self, k: &BigRational) -> QPoly {
        Self::normalized(self.0.iter().map(|a| a * k).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![BigRational::zero(); self.0.len().saturating_sub(d.degree())];
        let dl = d.leading();
        while rem.len() >= d.0.len() && !rem.is_empty() {
            let shift = rem.len() - d.0.len();
            let k = rem.last().unwrap() / dl;
            for (i, b) in d.0.iter().enumerate() {
                rem[shift + i] -= &k * b;
            }
            quot[shift] = k;
            while rem.last().is_some_and(|a| a.is_zero()) {
                rem.pop();
            }
        }
        (Self::normalized(quot), Self::normalized(rem))
    }

    pub fn monic(&self) -> QPoly {
        let l = self.leading().clone();
        self.scale(&(BigRational::one() / l))
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// A reduced fraction `num / den` with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    pub num: QPoly,
    pub den: QPoly,
}

impl RationalFunction {
    pub fn new(num: QPoly, den: QPoly) -> Self {
        let g = QPoly::gcd(&num, &den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let l = BigRational::one() / den.leading().clone();
        RationalFunction {
            num: num.scale(&l),
            den: den.scale(&l),
        }
    }

    /// `a + 1 / self`
    pub fn add_reciprocal_to(&self, a: &QPoly) -> Self {
        RationalFunction::new(a.mul(&self.num).add(&self.den), self.num.clone())
    }
}

/// `e_1 x + 1/(e_2 x + 1/(... + 1/(e_n x)))`, folded from the inside out.
pub fn continued_fraction(signs: &[i8]) -> RationalFunction {
    let (&last, rest) = signs.split_last().expect("at least one term");
    let mut f = RationalFunction::new(QPoly::signed_x(last), QPoly::constant(BigRational::one()));
    for &s in rest.iter().rev() {
        f = f.add_reciprocal_to(&QPoly::signed_x(s));
    }
    f
}

/// True when `p / q` equals `f` with `p` and `q` sharing no factor, i.e.
/// `(p, q) = c (num, den)` for a nonzero rational `c`.
pub fn matches_pair(f: &RationalFunction, p: &IntPoly, q: &IntPoly) -> bool {
    let (p, q) = (QPoly::from_int(p), QPoly::from_int(q));
    if q.is_zero() {
        return false;
    }
    let c = q.leading().clone();
    f.den.scale(&c) == q && f.num.scale(&c) == p
}

/// Catalan's constant from the binomial series
/// `G = (pi/8) ln(2 + sqrt 3) + (3/8) sum 1 / ((2k+1)^2 C(2k, k))`.
pub fn catalan() -> f64 {
    let mut sum = 0.0;
    let mut binom = 1.0f64;
    for k in 0..60 {
        let odd = (2 * k + 1) as f64;
        sum += 1.0 / (odd * odd * binom);
        // C(2k+2, k+1) = C(2k, k) (2k+1)(2k+2) / (k+1)^2
        binom *= odd * (2.0 * k as f64 + 2.0) / ((k as f64 + 1.0) * (k as f64 + 1.0));
    }
    PI / 8.0 * (2.0 + 3f64.sqrt()).ln() + 3.0 / 8.0 * sum
}
