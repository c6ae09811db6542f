//! Real and complex Hadamard matrices: Sylvester, Paley, DFT, character tables.

use crate::scalar::{CycloElem, Domain, ExactMatrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HadamardError {
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("entry ({0},{1}) is not unimodular")]
    NonFlat(usize, usize),
    #[error("M·M* ≠ nI at ({0},{1})")]
    NotOrthogonal(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not 3 mod 4")]
    WrongResidue(u64),
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("no Hadamard recipe of size {n}; tried {attempted:?}")]
    NoRecipe { n: usize, attempted: Vec<String> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HadamardKind {
    Real,
    Complex,
}

/// A verified Hadamard matrix over a cyclotomic domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HadamardMatrix {
    body: ExactMatrix,
    kind: HadamardKind,
}

impl HadamardMatrix {
    pub fn size(&self) -> usize {
        self.body.rows()
    }

    pub fn body(&self) -> &ExactMatrix {
        &self.body
    }

    pub fn into_matrix(self) -> ExactMatrix {
        self.body
    }

    pub fn kind(&self) -> HadamardKind {
        self.kind
    }

    pub fn is_real(&self) -> bool {
        self.kind == HadamardKind::Real
    }

    /// Column `l` as an n×1 matrix.
    pub fn column(&self, l: usize) -> ExactMatrix {
        self.body.select_cols(&[l])
    }
}

/// Checks unimodular entries and M·M* = nI; real matrices are re-homed at order 2.
pub fn verify_hadamard(m: &ExactMatrix) -> Result<HadamardMatrix, HadamardError> {
    let (r, c) = m.shape();
    if r != c {
        return Err(HadamardError::NotSquare(r, c));
    }
    if let Domain::Quadratic { .. } = m.domain() {
        if m.entries().iter().any(|e| e.to_rational().is_none()) {
            let k = m.entries().iter().position(|e| e.to_rational().is_none()).unwrap();
            return Err(HadamardError::NonFlat(k / c, k % c));
        }
    }
    for i in 0..r {
        for j in 0..c {
            if !m.get(i, j).is_unimodular() {
                return Err(HadamardError::NonFlat(i, j));
            }
        }
    }
    let real = m.entries().iter().all(|e| e.to_rational().is_some());
    let body = if real {
        m.lift_to(Domain::REAL_SIGNS).unwrap_or_else(|_| m.simplify_domain())
    } else {
        m.clone()
    };
    let body = if real && body.domain() != Domain::REAL_SIGNS {
        ExactMatrix::from_fn(Domain::REAL_SIGNS, r, c, |i, j| Domain::REAL_SIGNS.rational(m.get(i, j).to_rational().unwrap()))
    } else {
        body
    };
    let gram = body.mul_adjoint(&body).expect("square");
    let n = Rational::from_int(r as i64);
    for i in 0..r {
        for j in 0..c {
            let e = gram.get(i, j).to_rational();
            let ok = if i == j { e.as_ref() == Some(&n) } else { e.is_some_and(|q| q.is_zero()) };
            if !ok {
                return Err(HadamardError::NotOrthogonal(i, j));
            }
        }
    }
    let kind = if real { HadamardKind::Real } else { HadamardKind::Complex };
    Ok(HadamardMatrix { body, kind })
}

/// H₀ = [1], H_{e+1} = [[H, H], [H, −H]].
pub fn sylvester(e: u32) -> HadamardMatrix {
    let n = 1usize << e;
    let vals: Vec<i64> = (0..n * n)
        .map(|k| if ((k / n) & (k % n)).count_ones().is_multiple_of(2) { 1 } else { -1 })
        .collect();
    let body = ExactMatrix::from_ints(Domain::REAL_SIGNS, n, n, &vals);
    verify_hadamard(&body).expect("Sylvester construction is Hadamard")
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Quadratic character of GF(q) by Euler's criterion.
fn legendre(a: u64, q: u64) -> i64 {
    match pow_mod(a % q, (q - 1) / 2, q) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Paley's first construction for a prime q ≡ 3 (mod 4), size q + 1.
pub fn paley_one(q: u64) -> Result<HadamardMatrix, HadamardError> {
    if !is_prime(q) {
        return Err(HadamardError::NotPrime(q));
    }
    if q % 4 != 3 {
        return Err(HadamardError::WrongResidue(q));
    }
    let n = (q + 1) as usize;
    let mut vals = vec![1i64; n * n];
    for i in 1..n {
        for j in 1..n {
            vals[i * n + j] = if i == j {
                -1
            } else {
                legendre((i as u64 + q - j as u64) % q, q)
            };
        }
    }
    verify_hadamard(&ExactMatrix::from_ints(Domain::REAL_SIGNS, n, n, &vals))
}

/// F(j, k) = ζ_n^{jk}, 0-based.
pub fn dft(n: usize) -> HadamardMatrix {
    assert!(n >= 1, "DFT size must be positive");
    let order = n as u32;
    let body = ExactMatrix::from_fn(Domain::Cyclotomic { order }, n, n, |j, k| {
        Scalar::Cyclo(CycloElem::root_of_unity(order, ((j * k) % n) as i64))
    });
    verify_hadamard(&body).expect("DFT is a complex Hadamard matrix")
}

/// Kronecker product, re-verified.
pub fn kron(h1: &HadamardMatrix, h2: &HadamardMatrix) -> Result<HadamardMatrix, HadamardError> {
    let body = h1.body.kron(&h2.body).expect("cyclotomic domains always unify");
    verify_hadamard(&body)
}

/// Finite abelian group Z_{m₁} × … × Z_{m_k}, elements in mixed-radix order
/// with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self, HadamardError> {
        if orders.is_empty() || orders.iter().any(|&m| m < 2) {
            return Err(HadamardError::BadGroup(format!("cyclic factors must be ≥ 2, got {orders:?}")));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn factors(&self) -> &[u32] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&m| m as usize).product()
    }

    /// lcm of the factor orders.
    pub fn exponent(&self) -> u32 {
        self.orders.iter().fold(1, |acc, &m| crate::scalar::cyclotomic::lcm_order(acc, m))
    }

    pub fn digits(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0; self.orders.len()];
        for (slot, &m) in out.iter_mut().zip(&self.orders).rev() {
            *slot = (index % m as usize) as u32;
            index /= m as usize;
        }
        out
    }

    pub fn index(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .zip(&self.orders)
            .fold(0, |acc, (&d, &m)| acc * m as usize + (d % m) as usize)
    }

    /// Index of g − h.
    pub fn sub(&self, g: usize, h: usize) -> usize {
        let (a, b) = (self.digits(g), self.digits(h));
        let diff: Vec<u32> = a
            .iter()
            .zip(&b)
            .zip(&self.orders)
            .map(|((&x, &y), &m)| (x + m - y) % m)
            .collect();
        self.index(&diff)
    }
}

/// Rows are characters, columns are elements: entry ζ_m^{Σ aᵢgᵢ(m/mᵢ)}.
pub fn char_table(g: &AbelianGroup) -> HadamardMatrix {
    let n = g.order();
    let m = g.exponent();
    let digits: Vec<Vec<u32>> = (0..n).map(|i| g.digits(i)).collect();
    let body = ExactMatrix::from_fn(Domain::Cyclotomic { order: m }, n, n, |a, x| {
        let e: u64 = digits[a]
            .iter()
            .zip(&digits[x])
            .zip(g.factors())
            .map(|((&ai, &gi), &mi)| ai as u64 * gi as u64 * (m / mi) as u64)
            .sum();
        Scalar::Cyclo(CycloElem::root_of_unity(m, (e % m as u64) as i64))
    });
    verify_hadamard(&body).expect("character tables are Hadamard")
}

/// Splits `m` into Paley sizes q+1, largest first.
fn paley_factors(m: usize) -> Option<Vec<u64>> {
    if m == 1 {
        return Some(Vec::new());
    }
    let mut cands: Vec<usize> = (4..=m).filter(|s| m.is_multiple_of(*s)).collect();
    cands.reverse();
    for s in cands {
        let q = (s - 1) as u64;
        if is_prime(q) && q % 4 == 3 {
            if let Some(mut rest) = paley_factors(m / s) {
                rest.insert(0, q);
                return Some(rest);
            }
        }
    }
    None
}

/// Deterministic recipe search: the largest power of two 2ᵃ such that n/2ᵃ
/// splits into Paley sizes, combined as sylvester(a) ⊗ paley(q₁) ⊗ ….
pub fn hadamard_of_size(n: usize) -> Result<HadamardMatrix, HadamardError> {
    hadamard_recipe(n).map(|(_, h)| h)
}

/// Same as [`hadamard_of_size`], also returning (sylvester exponent, Paley primes).
pub fn hadamard_recipe(n: usize) -> Result<((u32, Vec<u64>), HadamardMatrix), HadamardError> {
    if n == 0 {
        return Err(HadamardError::NoRecipe { n, attempted: vec![] });
    }
    let mut attempted = Vec::new();
    let twos = n.trailing_zeros();
    for a in (0..=twos).rev() {
        let rest = n >> a;
        attempted.push(format!("sylvester({a}) x paley-product({rest})"));
        if let Some(qs) = paley_factors(rest) {
            let mut h = sylvester(a);
            for &q in &qs {
                h = kron(&h, &paley_one(q)?)?;
            }
            return Ok(((a, qs), h));
        }
    }
    Err(HadamardError::NoRecipe { n, attempted })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sylvester_small() {
        assert_eq!(sylvester(0).body().to_i64_entries().unwrap(), vec![1]);
        let h2 = sylvester(2);
        assert_eq!(
            h2.body().select_rows(&[1, 2, 3]).to_i64_entries().unwrap(),
            vec![1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1]
        );
        assert_eq!(sylvester(4).size(), 16);
        assert_eq!(kron(&sylvester(1), &sylvester(1)).unwrap(), sylvester(2));
    }

    #[test]
    fn paley_examples() {
        assert_eq!(paley_one(3).unwrap().size(), 4);
        assert_eq!(paley_one(11).unwrap().size(), 12);
        assert_eq!(paley_one(5), Err(HadamardError::WrongResidue(5)));
        assert_eq!(paley_one(15), Err(HadamardError::NotPrime(15)));
        assert_eq!(kron(&paley_one(3).unwrap(), &sylvester(1)).unwrap().size(), 8);
    }

    #[test]
    fn dft_examples() {
        assert_eq!(dft(2).body().to_i64_entries().unwrap(), vec![1, 1, 1, -1]);
        assert!(dft(2).is_real());
        let f3 = dft(3);
        assert_eq!(f3.kind(), HadamardKind::Complex);
        let w = Scalar::Cyclo(CycloElem::root_of_unity(3, 1));
        let w2 = Scalar::Cyclo(CycloElem::root_of_unity(3, 2));
        assert_eq!(f3.body().get(1, 1), &w);
        assert_eq!(f3.body().get(1, 2), &w2);
        assert_eq!(f3.body().get(2, 2), &w);
        let f6 = kron(&dft(2), &dft(3)).unwrap();
        assert_eq!(f6.body().domain(), Domain::Cyclotomic { order: 6 });
    }

    #[test]
    fn verify_rejects() {
        let i2 = ExactMatrix::identity(Domain::REAL_SIGNS, 2);
        assert!(matches!(verify_hadamard(&i2), Err(HadamardError::NonFlat(0, 1))));
        let j2 = ExactMatrix::ones(Domain::REAL_SIGNS, 2, 2);
        assert!(matches!(verify_hadamard(&j2), Err(HadamardError::NotOrthogonal(0, 1))));
    }

    #[test]
    fn character_tables() {
        let z2_4 = AbelianGroup::new(vec![2, 2, 2, 2]).unwrap();
        assert_eq!(char_table(&z2_4), sylvester(4));
        assert_eq!(char_table(&AbelianGroup::new(vec![3]).unwrap()), dft(3));
        assert_eq!(char_table(&AbelianGroup::new(vec![2, 2]).unwrap()), sylvester(2));
        let g = AbelianGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.digits(5), vec![1, 2]);
        assert_eq!(g.index(&[1, 2]), 5);
        assert_eq!(g.sub(0, 5), g.index(&[1, 1]));
    }

    #[test]
    fn recipe_search() {
        assert_eq!(hadamard_recipe(12).unwrap().0, (0, vec![11]));
        assert_eq!(hadamard_recipe(24).unwrap().0, (1, vec![11]));
        assert_eq!(hadamard_recipe(4).unwrap().0, (2, vec![]));
        assert_eq!(hadamard_of_size(1).unwrap().size(), 1);
        assert!(matches!(hadamard_of_size(6), Err(HadamardError::NoRecipe { .. })));
        assert!(matches!(hadamard_of_size(3), Err(HadamardError::NoRecipe { .. })));
        assert!(matches!(hadamard_of_size(92), Err(HadamardError::NoRecipe { .. })));
    }
}
