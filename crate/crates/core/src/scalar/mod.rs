//! Exact scalar domains: cyclotomic fields Q(ζ_m) and real quadratic fields Q(√t).

pub mod cyclotomic;
pub mod matrix;
pub mod quadratic;
pub mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

pub use cyclotomic::{lift_to_common_order, reduce_cyclotomic, CycloElem};
pub use matrix::{mat_mul_adjoint, ExactMatrix, ProductMode};
pub use quadratic::{normalize_quadratic, sqrt_of_rational, QuadElem};
pub use rational::Rational;

/// The field a matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Domain {
    Cyclotomic { order: u32 },
    Quadratic { radicand: u64 },
}

impl Domain {
    /// Q itself, as the cyclotomic field of order 1.
    pub const RATIONAL: Domain = Domain::Cyclotomic { order: 1 };
    /// Q(ζ_2) = Q, the conventional home of ±1 matrices.
    pub const REAL_SIGNS: Domain = Domain::Cyclotomic { order: 2 };

    /// Smallest domain containing both, or `None` for mixed kinds or
    /// different radicands.
    pub fn unify(self, other: Domain) -> Option<Domain> {
        use Domain::*;
        match (self, other) {
            (Cyclotomic { order: a }, Cyclotomic { order: b }) => Some(Cyclotomic {
                order: cyclotomic::lcm_order(a, b),
            }),
            (Quadratic { radicand: 1 }, q @ Quadratic { .. }) | (q @ Quadratic { .. }, Quadratic { radicand: 1 }) => Some(q),
            (Quadratic { radicand: s }, Quadratic { radicand: t }) if s == t => Some(self),
            _ => None,
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Domain::Cyclotomic { order } => Scalar::Cyclo(CycloElem::zero(order)),
            Domain::Quadratic { .. } => Scalar::Quad(QuadElem::zero()),
        }
    }

    pub fn one(self) -> Scalar {
        self.rational(Rational::one())
    }

    pub fn rational(self, q: Rational) -> Scalar {
        match self {
            Domain::Cyclotomic { order } => Scalar::Cyclo(CycloElem::from_rational(order, q)),
            Domain::Quadratic { .. } => Scalar::Quad(QuadElem::from_rational(q)),
        }
    }

    pub fn int(self, n: i64) -> Scalar {
        self.rational(Rational::from_int(n))
    }

    /// Number of rational coordinates per element.
    pub fn degree(self) -> usize {
        match self {
            Domain::Cyclotomic { order } => cyclotomic::totient(order) as usize,
            Domain::Quadratic { radicand: 1 } => 1,
            Domain::Quadratic { .. } => 2,
        }
    }

    /// Whether every element of the domain is real.
    pub fn is_real(self) -> bool {
        match self {
            Domain::Cyclotomic { order } => order <= 2,
            Domain::Quadratic { .. } => true,
        }
    }

    /// Re-express a scalar in this domain. Panics if the scalar does not embed.
    pub fn coerce(self, s: &Scalar) -> Scalar {
        match (self, s) {
            (Domain::Cyclotomic { order }, Scalar::Cyclo(z)) => {
                if z.order() == order {
                    s.clone()
                } else {
                    Scalar::Cyclo(z.lift(order))
                }
            }
            (Domain::Quadratic { radicand }, Scalar::Quad(z)) => {
                assert!(z.radicand() == 1 || z.radicand() == radicand, "radicand mismatch");
                s.clone()
            }
            (Domain::Quadratic { .. }, Scalar::Cyclo(z)) => {
                let q = z.to_rational().expect("only rational cyclotomic scalars embed in a quadratic field");
                Scalar::Quad(QuadElem::from_rational(q))
            }
            (Domain::Cyclotomic { order }, Scalar::Quad(z)) => {
                let q = z.to_rational().expect("only rational quadratic scalars embed in a cyclotomic field");
                Scalar::Cyclo(CycloElem::from_rational(order, q))
            }
        }
    }

    pub fn describe(self) -> String {
        match self {
            Domain::Cyclotomic { order } => format!("Q(ζ_{order})"),
            Domain::Quadratic { radicand: 1 } => "Q".to_string(),
            Domain::Quadratic { radicand } => format!("Q(√{radicand})"),
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A matrix entry: an element of one of the two supported domains.
#[derive(Clone, PartialEq, Eq)]
pub enum Scalar {
    Cyclo(CycloElem),
    Quad(QuadElem),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Cyclo(z) => z.is_zero(),
            Scalar::Quad(z) => z.is_zero(),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        match self {
            Scalar::Cyclo(z) => z.to_rational(),
            Scalar::Quad(z) => z.to_rational(),
        }
    }

    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Cyclo(z) => Scalar::Cyclo(z.conjugate()),
            Scalar::Quad(z) => Scalar::Quad(z.conjugate()),
        }
    }

    /// `z · conj(z)`; for the real quadratic domain this is `z²`.
    pub fn squared_modulus(&self) -> Scalar {
        match self {
            Scalar::Cyclo(z) => Scalar::Cyclo(z.squared_modulus()),
            Scalar::Quad(z) => Scalar::Quad(z.squared_modulus()),
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.squared_modulus().to_rational().is_some_and(|q| q.is_one())
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        match self {
            Scalar::Cyclo(z) => Scalar::Cyclo(z.scale(q)),
            Scalar::Quad(z) => Scalar::Quad(z.scale(q)),
        }
    }

    /// True when the scalar is a single root of unity ζ_m^e.
    pub fn is_root_of_unity(&self) -> bool {
        match self {
            Scalar::Cyclo(z) => z.root_exponent().is_some(),
            Scalar::Quad(z) => z.to_rational().is_some_and(|q| q.abs().is_one()),
        }
    }

    pub fn as_cyclo(&self) -> Option<&CycloElem> {
        match self {
            Scalar::Cyclo(z) => Some(z),
            Scalar::Quad(_) => None,
        }
    }

    pub fn as_quad(&self) -> Option<&QuadElem> {
        match self {
            Scalar::Quad(z) => Some(z),
            Scalar::Cyclo(_) => None,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::Cyclo(a + b),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::Quad(a + b),
            _ => panic!("mixed cyclotomic/quadratic arithmetic"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::Cyclo(a - b),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::Quad(a - b),
            _ => panic!("mixed cyclotomic/quadratic arithmetic"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Cyclo(a), Scalar::Cyclo(b)) => Scalar::Cyclo(a * b),
            (Scalar::Quad(a), Scalar::Quad(b)) => Scalar::Quad(a * b),
            _ => panic!("mixed cyclotomic/quadratic arithmetic"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Cyclo(a) => Scalar::Cyclo(-a),
            Scalar::Quad(a) => Scalar::Quad(-a),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(z) => fmt::Display::fmt(z, f),
            Scalar::Quad(z) => fmt::Display::fmt(z, f),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Cyclo(z) => fmt::Debug::fmt(z, f),
            Scalar::Quad(z) => fmt::Debug::fmt(z, f),
        }
    }
}
