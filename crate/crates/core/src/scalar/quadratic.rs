//! Elements `a + b·√t` of a real quadratic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    radicand: u64,
    a: Rational,
    b: Rational,
}

/// Largest `s` with `s² | n`, and `n / s²`.
fn split_square(n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, rest)
}

/// Canonicalizes `a + b·√t_raw` by pulling square factors out of the radicand.
pub fn normalize_quadratic(t_raw: u64, a: Rational, b: Rational) -> QuadElem {
    assert!(t_raw >= 1, "radicand must be positive");
    let (s, t) = split_square(t_raw);
    let b = &b * &Rational::from_int(s as i64);
    if t == 1 {
        QuadElem { radicand: 1, a: &a + &b, b: Rational::zero() }
    } else if b.is_zero() {
        QuadElem { radicand: 1, a, b }
    } else {
        QuadElem { radicand: t, a, b }
    }
}

/// `c·√(p/q)` for a nonnegative rational `p/q`, as `(rational coefficient, radicand)`.
pub fn sqrt_of_rational(x: &Rational) -> Option<QuadElem> {
    if x.is_negative() {
        return None;
    }
    // √(p/q) = √(p·q) / q
    let pq: BigInt = x.numer() * x.denom();
    let pq = pq.to_u64()?;
    if pq == 0 {
        return Some(QuadElem::from_rational(Rational::zero()));
    }
    let inv_q = Rational::from_bigints(BigInt::one(), x.denom());
    Some(normalize_quadratic(pq, Rational::zero(), inv_q))
}

impl QuadElem {
    pub fn from_rational(a: Rational) -> Self {
        QuadElem { radicand: 1, a, b: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    /// Direct constructor; `t` must already be square-free.
    pub fn new(t: u64, a: Rational, b: Rational) -> Self {
        normalize_quadratic(t, a, b)
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    /// Quadratic fields here are real, so conjugation is the identity.
    pub fn conjugate(&self) -> Self {
        self.clone()
    }

    pub fn squared_modulus(&self) -> Self {
        self * self
    }

    fn canonical(self) -> Self {
        if self.b.is_zero() {
            QuadElem { radicand: 1, ..self }
        } else {
            self
        }
    }

    fn common_radicand(&self, other: &Self) -> u64 {
        match (self.radicand, other.radicand) {
            (1, t) | (t, 1) => t,
            (s, t) if s == t => s,
            (s, t) => panic!("incompatible quadratic radicands {s} and {t}"),
        }
    }

    /// Whether the two elements can be combined without leaving Q(√t).
    pub fn compatible(&self, other: &Self) -> bool {
        self.radicand == 1 || other.radicand == 1 || self.radicand == other.radicand
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadElem { radicand: self.radicand, a: &self.a * q, b: &self.b * q }.canonical()
    }

    /// Sign of the real number `a + b√t`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return if sa == 0 { sb } else { sa };
        }
        // opposite signs: compare a² with b²t
        let a2 = &self.a * &self.a;
        let b2t = &(&self.b * &self.b) * &Rational::from_int(self.radicand as i64);
        match a2.cmp(&b2t) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Approximate value, for display only.
    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
        f(&self.a) + f(&self.b) * (self.radicand as f64).sqrt()
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        let t = self.common_radicand(rhs);
        QuadElem { radicand: t, a: &self.a + &rhs.a, b: &self.b + &rhs.b }.canonical()
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        let t = self.common_radicand(rhs);
        QuadElem { radicand: t, a: &self.a - &rhs.a, b: &self.b - &rhs.b }.canonical()
    }
}

impl<'a> Mul<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn mul(self, rhs: &QuadElem) -> QuadElem {
        let t = self.common_radicand(rhs);
        let tq = Rational::from_int(t as i64);
        let a = &(&self.a * &rhs.a) + &(&(&self.b * &rhs.b) * &tq);
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        QuadElem { radicand: t, a, b }.canonical()
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem { radicand: self.radicand, a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}√{}", self.b, self.radicand)
        } else {
            write!(f, "{} + {}√{}", self.a, self.b, self.radicand)
        }
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
