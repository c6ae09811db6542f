//! Elements of the cyclotomic field Q(ζ_m).
//!
//! An element is stored in the power basis `1, ζ, …, ζ^{φ(m)-1}`, i.e. as the
//! unique residue of a polynomial modulo the m-th cyclotomic polynomial Φ_m.
//! Two elements of the same order are equal iff their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_integer::Integer;

use super::rational::Rational;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n_rem = n;
    let mut result = n;
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= n_rem as u64 {
        if n_rem.is_multiple_of(p) {
            while n_rem.is_multiple_of(p) {
                n_rem /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n_rem > 1 {
        result -= result / n_rem;
    }
    result
}

/// Exact division of `num` by the monic polynomial `den` (ascending coefficients).
/// Panics if the division leaves a remainder.
fn exact_div_monic(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        assert!(rem.iter().all(Rational::is_zero), "inexact polynomial division");
        return vec![Rational::zero()];
    }
    let mut quot = vec![Rational::zero(); rem.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &(&c * dj);
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Rational::is_zero), "inexact polynomial division");
    quot
}

fn compute_cyclotomic_poly(m: u32, memo: &mut HashMap<u32, Vec<Rational>>) -> Vec<Rational> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut poly = vec![Rational::zero(); m as usize + 1];
    poly[0] = Rational::from_int(-1);
    poly[m as usize] = Rational::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = compute_cyclotomic_poly(d, memo);
        poly = exact_div_monic(&poly, &phi_d);
    }
    memo.insert(m, poly.clone());
    poly
}

/// The m-th cyclotomic polynomial, ascending coefficients, built as
/// `(x^m - 1) / Π_{d | m, d < m} Φ_d(x)`.
pub fn cyclotomic_poly(m: u32) -> Vec<Rational> {
    assert!(m >= 1, "cyclotomic order must be positive");
    compute_cyclotomic_poly(m, &mut HashMap::new())
}

/// Per-order reduction data: `powers[e]` holds `x^e mod Φ_m` for `0 <= e < m`.
#[derive(Debug)]
pub(crate) struct CycloContext {
    pub degree: usize,
    pub powers: Vec<Vec<Rational>>,
}

impl CycloContext {
    fn build(m: u32) -> Self {
        let phi = cyclotomic_poly(m);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(m as usize);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..m {
            powers.push(cur.clone());
            // multiply by x and fold the overflow term back with Φ_m
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for i in 0..degree {
                    cur[i] -= &(&top * &phi[i]);
                }
            }
        }
        CycloContext { degree, powers }
    }

    /// Reduce a raw polynomial (ascending, any length) to canonical form.
    pub fn reduce(&self, m: u32, raw: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.degree];
        for (e, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = e % m as usize;
            if e < self.degree {
                out[e] += c;
            } else {
                for (o, p) in out.iter_mut().zip(&self.powers[e]) {
                    if !p.is_zero() {
                        *o += &(c * p);
                    }
                }
            }
        }
        out
    }
}

pub(crate) fn context(m: u32) -> Arc<CycloContext> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloContext>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = cache.lock().expect("cyclotomic cache poisoned").get(&m) {
        return ctx.clone();
    }
    let ctx = Arc::new(CycloContext::build(m));
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .entry(m)
        .or_insert(ctx)
        .clone()
}

/// An element of Q(ζ_m) in canonical reduced form.
#[derive(Clone)]
pub struct CycloElem {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "cyclotomic order must be positive");
        CycloElem {
            order,
            coeffs: vec![Rational::zero(); totient(order) as usize],
        }
    }

    pub fn from_rational(order: u32, q: Rational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, Rational::one())
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rational(order, Rational::from_int(n))
    }

    /// ζ_m^e for any integer exponent.
    pub fn root_of_unity(order: u32, exponent: i64) -> Self {
        reduce_cyclotomic(&[(exponent, Rational::one())], order)
    }

    /// Builds an element directly from canonical coefficients.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), totient(order) as usize, "coefficient count must equal φ(m)");
        CycloElem { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// The rational value, when the element lies in Q.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Nonzero (exponent, coefficient) pairs of the canonical form.
    pub fn terms(&self) -> Vec<(u32, Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i as u32, c.clone()))
            .collect()
    }

    /// Re-express at order `target`, which must be a multiple of the current order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(target.is_multiple_of(self.order), "lift target must be a multiple of the order");
        let scale = (target / self.order) as i64;
        let terms: Vec<(i64, Rational)> = self
            .terms()
            .into_iter()
            .map(|(e, c)| (e as i64 * scale, c))
            .collect();
        reduce_cyclotomic(&terms, target)
    }

    /// Complex conjugate: ζ ↦ ζ^{m-1}.
    pub fn conjugate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return self.clone();
        }
        let m = self.order as i64;
        let terms: Vec<(i64, Rational)> = self
            .terms()
            .into_iter()
            .map(|(e, c)| ((m - e as i64) % m, c))
            .collect();
        reduce_cyclotomic(&terms, self.order)
    }

    pub fn squared_modulus(&self) -> Self {
        self * &self.conjugate()
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// The exponent `e` with `self == ζ_m^e`, if the element is a root of unity
    /// of order dividing m (or its negative when m is odd: -ζ is then a 2m-th root
    /// and is reported as `None`).
    pub fn root_exponent(&self) -> Option<u32> {
        let ctx = context(self.order);
        (0..self.order).find(|&e| ctx.powers[e as usize] == self.coeffs)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }
}

/// Least common multiple of two orders.
pub fn lcm_order(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// Re-express both elements at order lcm(m₁, m₂).
pub fn lift_to_common_order(x: &CycloElem, y: &CycloElem) -> (CycloElem, CycloElem) {
    let m = lcm_order(x.order, y.order);
    (x.lift(m), y.lift(m))
}

/// Canonical form of `Σ c·ζ_m^e` for arbitrary integer exponents.
pub fn reduce_cyclotomic(raw: &[(i64, Rational)], m: u32) -> CycloElem {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut dense = vec![Rational::zero(); m as usize];
    for (e, c) in raw {
        let idx = e.rem_euclid(m as i64) as usize;
        dense[idx] += c;
    }
    let coeffs = if m <= 2 {
        // φ(m) = 1: ζ_1 = 1, ζ_2 = -1.
        let mut v = dense[0].clone();
        if m == 2 {
            v -= &dense[1];
        }
        vec![v]
    } else {
        context(m).reduce(m, &dense)
    };
    CycloElem { order: m, coeffs }
}

/// Multiply two canonical coefficient vectors of order `m`.
pub(crate) fn mul_coeffs(m: u32, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.len() == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut raw = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                raw[i + j] += &(x * y);
            }
        }
    }
    context(m).reduce(m, &raw)
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = lift_to_common_order(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for CycloElem {}

impl<'a> Add<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        if self.order != rhs.order {
            let (a, b) = lift_to_common_order(self, rhs);
            return &a + &b;
        }
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        if self.order != rhs.order {
            let (a, b) = lift_to_common_order(self, rhs);
            return &a - &b;
        }
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloElem> for &'a CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        if self.order != rhs.order {
            let (a, b) = lift_to_common_order(self, rhs);
            return &a * &b;
        }
        CycloElem {
            order: self.order,
            coeffs: mul_coeffs(self.order, &self.coeffs, &rhs.coeffs),
        }
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                _ if c.is_one() => write!(f, "ζ{}^{}", self.order, e)?,
                _ => write!(f, "({c})·ζ{}^{}", self.order, e)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[m={}] {}", self.order, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_poly(105).contains(&q(-2)));
        for m in 1..40 {
            assert_eq!(cyclotomic_poly(m).len() as u32 - 1, totient(m));
        }
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let z = reduce_cyclotomic(&[(2, q(1))], 4);
        assert_eq!(z.coeffs(), &ints(&[-1, 0])[..]);
        assert_eq!(z.to_rational(), Some(q(-1)));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let z = reduce_cyclotomic(&[(0, q(1)), (1, q(1)), (2, q(1))], 3);
        assert!(z.is_zero());
    }

    #[test]
    fn zeta6_minimal_polynomial() {
        // Oracle: Φ_6 = (x^6 - 1) / (Φ_1 Φ_2 Φ_3) computed by hand is x^2 - x + 1,
        // so ζ_6 satisfies z^2 - z + 1 = 0 and z itself is the basis vector x.
        let z = CycloElem::root_of_unity(6, 1);
        assert_eq!(z.coeffs(), &ints(&[0, 1])[..]);
        let z2 = &z * &z;
        let lhs = &(&z2 - &z) + &CycloElem::one(6);
        assert!(lhs.is_zero());
    }

    #[test]
    fn conjugation_examples() {
        let i = CycloElem::root_of_unity(4, 1);
        assert_eq!(i.conjugate(), -&i);
        let minus_one = CycloElem::from_int(2, -1);
        assert_eq!(minus_one.conjugate(), minus_one);
    }

    #[test]
    fn squared_modulus_examples() {
        assert_eq!(CycloElem::root_of_unity(16, 5).squared_modulus(), CycloElem::one(16));
        // (1 + i)(1 - i) = 2
        let z = reduce_cyclotomic(&[(0, q(1)), (1, q(1))], 4);
        assert_eq!(z.squared_modulus().to_rational(), Some(q(2)));
    }

    #[test]
    fn lifting_examples() {
        let a = CycloElem::from_int(2, -1);
        let b = CycloElem::root_of_unity(3, 1);
        let (la, lb) = lift_to_common_order(&a, &b);
        assert_eq!((la.order(), lb.order()), (6, 6));
        assert_eq!(la, a);
        assert_eq!(lb, CycloElem::root_of_unity(6, 2));

        let i = CycloElem::root_of_unity(4, 1);
        let (x, y) = lift_to_common_order(&i, &i);
        assert_eq!((x.order(), y.order()), (4, 4));
        assert_eq!(x.coeffs(), i.coeffs());

        let (x, y) = lift_to_common_order(&CycloElem::root_of_unity(2, 1), &CycloElem::root_of_unity(8, 1));
        assert_eq!(x, CycloElem::root_of_unity(8, 4));
        assert_eq!(y.root_exponent(), Some(1));
        assert_eq!(x.order(), 8);
    }

    #[test]
    fn root_exponent_detection() {
        for e in 0..12 {
            assert_eq!(CycloElem::root_of_unity(12, e).root_exponent(), Some(e as u32));
        }
        let two = CycloElem::from_int(12, 2);
        assert_eq!(two.root_exponent(), None);
    }

    fn arb_elem(m: u32) -> impl Strategy<Value = CycloElem> {
        prop::collection::vec((0i64..(2 * m as i64), -5i64..6), 0..6).prop_map(move |terms| {
            let t: Vec<(i64, Rational)> = terms.into_iter().map(|(e, c)| (e, q(c))).collect();
            reduce_cyclotomic(&t, m)
        })
    }

    fn arb_triple() -> impl Strategy<Value = (CycloElem, CycloElem, CycloElem)> {
        (1u32..=24).prop_flat_map(|m| (arb_elem(m), arb_elem(m), arb_elem(m)))
    }

    proptest! {
        #[test]
        fn ring_axioms((a, b, c) in arb_triple()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism((a, b, _c) in arb_triple()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
            let sm = a.squared_modulus();
            prop_assert_eq!(sm.conjugate(), sm);
        }

        #[test]
        fn full_turn_is_one(m in 1u32..60) {
            prop_assert_eq!(reduce_cyclotomic(&[(m as i64, q(1))], m), CycloElem::one(m));
            prop_assert_eq!(reduce_cyclotomic(&[(0, q(1))], m), CycloElem::one(m));
        }

        #[test]
        fn roots_of_unity_are_unimodular(m in 1u32..40, e in -100i64..100) {
            prop_assert_eq!(CycloElem::root_of_unity(m, e).squared_modulus(), CycloElem::one(m));
        }

        #[test]
        fn lifting_preserves_products(a in arb_elem(6), b in arb_elem(4)) {
            let (la, lb) = lift_to_common_order(&a, &b);
            prop_assert_eq!(la.lift(24), a.lift(24));
            prop_assert_eq!(&la * &lb, &a.lift(12) * &b.lift(12));
        }
    }
}
