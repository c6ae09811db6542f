//! Frames, Gram matrices and exact ETF certification.

use crate::hadamard::{verify_hadamard, HadamardError, HadamardMatrix};
use crate::scalar::matrix::MatrixError;
use crate::scalar::{Domain, ExactMatrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FrameError {
    #[error("frame must satisfy n ≥ d ≥ 1, got {d}x{n}")]
    BadShape { d: usize, n: usize },
    #[error("column {0} is zero")]
    ZeroColumn(usize),
    #[error("row weights: expected {expected} positive weights, got {got}")]
    BadWeights { expected: usize, got: usize },
    #[error("unequal norms: ‖φ_{j}‖² = {got}, ‖φ_0‖² = {expected}")]
    UnequalNorms { j: usize, got: String, expected: String },
    #[error("not tight: frame operator deviates from αI at ({0},{1})")]
    NotTight(usize, usize),
    #[error("equiangularity violated at ({j},{j2}): |⟨φ_{j},φ_{j2}⟩|² = {got}, expected {expected}")]
    NotEquiangular { j: usize, j2: usize, got: String, expected: String },
    #[error("Welch equality violated: γ²/β² = {ratio}, bound {bound}")]
    WelchViolated { ratio: Rational, bound: Rational },
    #[error("{0} is not rational")]
    Irrational(&'static str),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible scalar domains {0} and {1}")]
    DomainMismatch(Domain, Domain),
    #[error("complement tightness constant {got} differs from α = {expected}")]
    AlphaMismatch { got: String, expected: Rational },
    #[error("Naimark identity Φ̃*Φ̃ = αI − Φ*Φ fails at ({0},{1})")]
    NaimarkIdentity(usize, usize),
    #[error("{0} frame is not flat")]
    NotFlat(&'static str),
    #[error("{0} is not a perfect square")]
    NotSquareN(usize),
    #[error("d = {d} ≠ (n − √n)/2 for n = {n}")]
    ParameterGate { d: usize, n: usize },
    #[error("matrix is not self-adjoint at ({0},{1})")]
    NotSelfAdjoint(usize, usize),
    #[error("diagonal entry {0} is not 1")]
    NotUnitDiagonal(usize),
    #[error("G² ≠ 2√n·G at ({0},{1})")]
    EigenIdentity(usize, usize),
    #[error("trace(G) = {got}, expected {expected}")]
    Trace { got: String, expected: String },
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Synthesis operator with optional positive rational row weights; the
/// frame it represents is diag(√w)·S.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    synthesis: ExactMatrix,
    row_weights: Option<Vec<Rational>>,
}

impl Frame {
    pub fn new(synthesis: ExactMatrix) -> Result<Self, FrameError> {
        Self::weighted(synthesis, None)
    }

    pub fn weighted(synthesis: ExactMatrix, row_weights: Option<Vec<Rational>>) -> Result<Self, FrameError> {
        let (d, n) = synthesis.shape();
        if d == 0 || n < d {
            return Err(FrameError::BadShape { d, n });
        }
        let row_weights = match row_weights {
            Some(w) if w.len() != d || w.iter().any(|x| !x.is_positive()) => {
                return Err(FrameError::BadWeights { expected: d, got: w.len() });
            }
            Some(w) if w.iter().all(Rational::is_one) => None,
            other => other,
        };
        for j in 0..n {
            if (0..d).all(|i| synthesis.get(i, j).is_zero()) {
                return Err(FrameError::ZeroColumn(j));
            }
        }
        Ok(Frame { synthesis, row_weights })
    }

    pub fn d(&self) -> usize {
        self.synthesis.rows()
    }

    pub fn n(&self) -> usize {
        self.synthesis.cols()
    }

    pub fn synthesis(&self) -> &ExactMatrix {
        &self.synthesis
    }

    pub fn row_weights(&self) -> Option<&[Rational]> {
        self.row_weights.as_deref()
    }

    pub fn domain(&self) -> Domain {
        self.synthesis.domain()
    }

    fn weight(&self, i: usize) -> Rational {
        self.row_weights.as_ref().map_or_else(Rational::one, |w| w[i].clone())
    }

    /// diag(w)·S
    fn weighted_synthesis(&self) -> ExactMatrix {
        match &self.row_weights {
            None => self.synthesis.clone(),
            Some(w) => {
                let s = &self.synthesis;
                ExactMatrix::from_fn(s.domain(), s.rows(), s.cols(), |i, j| s.get(i, j).scale(&w[i]))
            }
        }
    }

    /// Every entry of diag(√w)·S is unimodular.
    pub fn is_flat(&self) -> bool {
        (0..self.d()).all(|i| {
            let w = self.weight(i);
            self.synthesis
                .row(i)
                .iter()
                .all(|e| e.squared_modulus().to_rational().is_some_and(|m| (&m * &w).is_one()))
        })
    }

    /// α when ΦΦ* = αI.
    pub fn tightness_constant(&self) -> Result<Rational, FrameError> {
        let s = &self.synthesis;
        let op = s.mul_adjoint(s)?;
        let alpha = op
            .get(0, 0)
            .to_rational()
            .ok_or(FrameError::Irrational("frame operator diagonal"))?;
        let alpha = &alpha * &self.weight(0);
        for i in 0..op.rows() {
            for j in 0..op.cols() {
                let e = op.get(i, j);
                let ok = if i == j {
                    e.to_rational().is_some_and(|q| &q * &self.weight(i) == alpha)
                } else {
                    e.is_zero()
                };
                if !ok {
                    return Err(FrameError::NotTight(i, j));
                }
            }
        }
        Ok(alpha)
    }
}

/// Exact Φ*Φ (with weights: S*·diag(w)·S).
pub fn gram(f: &Frame) -> ExactMatrix {
    f.synthesis.adjoint_mul(&f.weighted_synthesis()).expect("same domain")
}

/// (n − d)/(d(n − 1)).
pub fn welch_bound_sq(d: usize, n: usize) -> Rational {
    assert!(n >= d && d >= 1 && n > 1, "welch_bound_sq needs n ≥ d ≥ 1, n > 1");
    Rational::new((n - d) as i64, (d * (n - 1)) as i64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtfCertificate {
    pub d: usize,
    pub n: usize,
    pub beta: Rational,
    pub alpha: Rational,
    pub gamma_sq: Rational,
    pub welch_equality: bool,
    pub flat: bool,
    pub domain: Domain,
}

impl EtfCertificate {
    /// γ²·d(n−1) = β²·(n−d), cross-multiplied.
    pub fn welch_cross_check(&self) -> bool {
        let lhs = &self.gamma_sq * &Rational::from_int((self.d * (self.n - 1)) as i64);
        let rhs = &(&self.beta * &self.beta) * &Rational::from_int((self.n - self.d) as i64);
        lhs == rhs
    }
}

fn off_diagonal_moduli(g: &ExactMatrix) -> Result<Option<(usize, usize, Rational)>, FrameError> {
    // Returns the first off-diagonal squared modulus that differs from (0,1)'s.
    let n = g.rows();
    if n < 2 {
        return Ok(None);
    }
    if let Some(vals) = g.to_i64_entries() {
        let g01 = vals[1] as i128 * vals[1] as i128;
        for j in 0..n {
            for j2 in j + 1..n {
                let v = vals[j * n + j2] as i128;
                if v * v != g01 {
                    return Ok(Some((j, j2, Rational::from_i128(v * v, 1))));
                }
            }
        }
        return Ok(None);
    }
    let first = g.get(0, 1).squared_modulus();
    for j in 0..n {
        for j2 in j + 1..n {
            let m = g.get(j, j2).squared_modulus();
            if m != first {
                let q = m.to_rational().ok_or(FrameError::Irrational("|⟨φ_j,φ_j'⟩|²"))?;
                return Ok(Some((j, j2, q)));
            }
        }
    }
    Ok(None)
}

/// Norms, tightness, equiangularity and Welch equality, all exact.
pub fn certify_etf(f: &Frame) -> Result<EtfCertificate, FrameError> {
    let (d, n) = (f.d(), f.n());
    let g = gram(f);
    let b0 = g.get(0, 0).clone();
    for j in 1..n {
        if *g.get(j, j) != b0 {
            return Err(FrameError::UnequalNorms {
                j,
                got: g.get(j, j).to_string(),
                expected: b0.to_string(),
            });
        }
    }
    let beta = b0.to_rational().ok_or(FrameError::Irrational("β"))?;
    let gamma_sq = if n < 2 {
        Rational::zero()
    } else {
        let first = g.get(0, 1).squared_modulus();
        let gsq = first.to_rational().ok_or(FrameError::Irrational("γ²"))?;
        if let Some((j, j2, got)) = off_diagonal_moduli(&g)? {
            return Err(FrameError::NotEquiangular {
                j,
                j2,
                got: got.to_string(),
                expected: gsq.to_string(),
            });
        }
        gsq
    };
    let alpha = f.tightness_constant()?;
    if alpha != &(&beta * &Rational::from_int(n as i64)) / &Rational::from_int(d as i64) {
        return Err(FrameError::NotTight(0, 0));
    }
    if n > 1 {
        let ratio = &gamma_sq / &(&beta * &beta);
        let bound = welch_bound_sq(d, n);
        if ratio != bound {
            return Err(FrameError::WelchViolated { ratio, bound });
        }
    }
    Ok(EtfCertificate {
        d,
        n,
        beta,
        alpha,
        gamma_sq,
        welch_equality: true,
        flat: f.is_flat(),
        domain: f.domain(),
    })
}

/// A d×n frame and an (n−d)×n Naimark complement sharing α.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NaimarkPair {
    pub primary: Frame,
    pub complement: Frame,
    pub alpha: Rational,
}

impl NaimarkPair {
    /// The same pair with roles exchanged.
    pub fn swapped(&self) -> NaimarkPair {
        NaimarkPair {
            primary: self.complement.clone(),
            complement: self.primary.clone(),
            alpha: self.alpha.clone(),
        }
    }
}

/// Checks Φ̃Φ̃* = αI and Φ̃*Φ̃ = αI − Φ*Φ with α from Φ.
pub fn verify_naimark_pair(p: &Frame, c: &Frame) -> Result<NaimarkPair, FrameError> {
    if p.n() != c.n() || p.d() + c.d() != p.n() {
        return Err(FrameError::DimensionMismatch(format!(
            "primary {}x{}, complement {}x{}",
            p.d(),
            p.n(),
            c.d(),
            c.n()
        )));
    }
    if p.domain().unify(c.domain()).is_none() {
        return Err(FrameError::DomainMismatch(p.domain(), c.domain()));
    }
    let alpha = p.tightness_constant()?;
    let ca = c.tightness_constant()?;
    if ca != alpha {
        return Err(FrameError::AlphaMismatch { got: ca.to_string(), expected: alpha });
    }
    let gp = gram(p);
    let gc = gram(c);
    let sum = gp.add(&gc)?;
    for i in 0..sum.rows() {
        for j in 0..sum.cols() {
            let e = sum.get(i, j);
            let ok = if i == j {
                e.to_rational().as_ref() == Some(&alpha)
            } else {
                e.is_zero()
            };
            if !ok {
                return Err(FrameError::NaimarkIdentity(i, j));
            }
        }
    }
    Ok(NaimarkPair { primary: p.clone(), complement: c.clone(), alpha })
}

/// Stacks a flat pair into its containing Hadamard matrix.
pub fn certify_hadamard_etf(pair: &NaimarkPair) -> Result<HadamardMatrix, FrameError> {
    if pair.primary.row_weights.is_some() || !pair.primary.is_flat() {
        return Err(FrameError::NotFlat("primary"));
    }
    if pair.complement.row_weights.is_some() || !pair.complement.is_flat() {
        return Err(FrameError::NotFlat("complement"));
    }
    let stacked = ExactMatrix::vstack(&[pair.primary.synthesis(), pair.complement.synthesis()])?;
    Ok(verify_hadamard(&stacked)?)
}

fn integer_sqrt(n: usize) -> Option<usize> {
    let s = (n as f64).sqrt().round() as usize;
    (s.saturating_sub(1)..=s + 1).find(|t| t * t == n)
}

fn check_self_adjoint(h: &ExactMatrix) -> Result<(), FrameError> {
    if let Some((i, j)) = h.first_difference(&h.adjoint()) {
        return Err(FrameError::NotSelfAdjoint(i, j));
    }
    Ok(())
}

/// H = √n·I − c·Φ*Φ with c = (√n − 1)/β.
pub fn gram_to_hadamard(f: &Frame) -> Result<HadamardMatrix, FrameError> {
    let cert = certify_etf(f)?;
    let n = cert.n;
    let s = integer_sqrt(n).ok_or(FrameError::NotSquareN(n))?;
    if 2 * cert.d + s != n {
        return Err(FrameError::ParameterGate { d: cert.d, n });
    }
    let c = &Rational::from_int(s as i64 - 1) / &cert.beta;
    let g = gram(f);
    let dom = g.domain();
    let h = ExactMatrix::identity(dom, n).scale(&Rational::from_int(s as i64)).sub(&g.scale(&c))?;
    for i in 0..n {
        if !h.get(i, i).to_rational().is_some_and(|q| q.is_one()) {
            return Err(FrameError::NotUnitDiagonal(i));
        }
    }
    check_self_adjoint(&h)?;
    Ok(verify_hadamard(&h)?)
}

/// G = √n·I − H for a self-adjoint unit-diagonal Hadamard H; returns (G, d).
pub fn hadamard_to_gram(h: &ExactMatrix) -> Result<(ExactMatrix, usize), FrameError> {
    let (r, c) = h.shape();
    if r != c {
        return Err(HadamardError::NotSquare(r, c).into());
    }
    check_self_adjoint(h)?;
    for i in 0..r {
        if !h.get(i, i).to_rational().is_some_and(|q| q.is_one()) {
            return Err(FrameError::NotUnitDiagonal(i));
        }
    }
    verify_hadamard(h)?;
    let n = r;
    let s = integer_sqrt(n).ok_or(FrameError::NotSquareN(n))?;
    let dom = h.domain();
    let sq = Rational::from_int(s as i64);
    let g = ExactMatrix::identity(dom, n).scale(&sq).sub(h)?;
    let g2 = g.mul(&g)?;
    let rhs = g.scale(&(&sq * &Rational::from_int(2)));
    if let Some((i, j)) = g2.first_difference(&rhs) {
        return Err(FrameError::EigenIdentity(i, j));
    }
    let tr = g.trace();
    let expected: Scalar = dom.int((n * (s - 1)) as i64);
    if tr != expected {
        return Err(FrameError::Trace { got: tr.to_string(), expected: expected.to_string() });
    }
    if (n - s) % 2 != 0 {
        return Err(FrameError::ParameterGate { d: 0, n });
    }
    Ok((g, (n - s) / 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hadamard::sylvester;

    fn simplex() -> Frame {
        Frame::new(ExactMatrix::from_int_rows(
            Domain::REAL_SIGNS,
            &[vec![1, -1, 1, -1], vec![1, 1, -1, -1], vec![1, -1, -1, 1]],
        ))
        .unwrap()
    }

    fn ones_row() -> Frame {
        Frame::new(ExactMatrix::ones(Domain::REAL_SIGNS, 1, 4)).unwrap()
    }

    #[test]
    fn welch_values() {
        assert_eq!(welch_bound_sq(6, 16), Rational::new(1, 9));
        assert_eq!(welch_bound_sq(3, 4), Rational::new(1, 9));
        assert_eq!(welch_bound_sq(5, 5), Rational::zero());
    }

    #[test]
    fn simplex_certificate() {
        let g = gram(&simplex());
        assert_eq!(g.get(0, 0), &Domain::REAL_SIGNS.int(3));
        assert_eq!(g.get(0, 1), &Domain::REAL_SIGNS.int(-1));
        let c = certify_etf(&simplex()).unwrap();
        assert_eq!((c.beta.clone(), c.alpha.clone(), c.gamma_sq.clone()), (3.into(), 4.into(), 1.into()));
        assert!(c.flat && c.welch_equality && c.welch_cross_check());
    }

    #[test]
    fn single_column() {
        let f = Frame::new(ExactMatrix::from_int_rows(Domain::RATIONAL, &[vec![2]])).unwrap();
        assert_eq!(gram(&f).get(0, 0), &Domain::RATIONAL.int(4));
        assert_eq!(certify_etf(&f).unwrap().beta, 4.into());
    }

    #[test]
    fn failures_are_distinguished() {
        let m = ExactMatrix::from_int_rows(Domain::RATIONAL, &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(matches!(certify_etf(&Frame::new(m).unwrap()), Err(FrameError::UnequalNorms { j: 2, .. })));
        let m = ExactMatrix::from_int_rows(Domain::RATIONAL, &[vec![1, 1, 1], vec![0, 0, 0]]);
        assert!(matches!(certify_etf(&Frame::new(m).unwrap()), Err(FrameError::NotTight(..))));
        // tight, equal norms, two distinct angles
        let m = ExactMatrix::from_int_rows(Domain::RATIONAL, &[vec![1, 0, 1, 0], vec![0, 1, 0, 1]]);
        assert!(matches!(certify_etf(&Frame::new(m).unwrap()), Err(FrameError::NotEquiangular { .. })));
        assert!(matches!(
            Frame::new(ExactMatrix::zeros(Domain::RATIONAL, 1, 2)),
            Err(FrameError::ZeroColumn(0))
        ));
    }

    #[test]
    fn naimark_simplex_pair() {
        let pair = verify_naimark_pair(&ones_row(), &simplex()).unwrap();
        assert_eq!(pair.alpha, 4.into());
        assert_eq!(certify_hadamard_etf(&pair).unwrap().body().select_rows(&[1, 2, 3]), *simplex().synthesis());
        assert_eq!(certify_etf(&pair.complement).unwrap().beta, &pair.alpha - &certify_etf(&pair.primary).unwrap().beta);
        assert!(matches!(verify_naimark_pair(&simplex(), &simplex()), Err(FrameError::DimensionMismatch(_))));
        let h = sylvester(1);
        let a = Frame::new(h.body().select_rows(&[0])).unwrap();
        let b = Frame::new(h.body().select_rows(&[0])).unwrap();
        assert!(matches!(verify_naimark_pair(&a, &b), Err(FrameError::NaimarkIdentity(0, 1))));
    }

    #[test]
    fn weighted_rows() {
        // [1 1 1 1] with weight 2 against a scaled simplex: α = 8
        let p = Frame::weighted(ExactMatrix::ones(Domain::RATIONAL, 1, 4), Some(vec![2.into()])).unwrap();
        assert_eq!(p.tightness_constant().unwrap(), 8.into());
        assert!(!p.is_flat());
        let c = Frame::weighted(simplex().synthesis().clone(), Some(vec![2.into(); 3])).unwrap();
        let pair = verify_naimark_pair(&p, &c).unwrap();
        assert_eq!(pair.alpha, 8.into());
        assert!(matches!(certify_hadamard_etf(&pair), Err(FrameError::NotFlat("primary"))));
    }

    #[test]
    fn gram_hadamard_round_trip() {
        assert!(matches!(gram_to_hadamard(&simplex()), Err(FrameError::ParameterGate { d: 3, n: 4 })));
        let h = gram_to_hadamard(&ones_row()).unwrap();
        let (g, d) = hadamard_to_gram(h.body()).unwrap();
        assert_eq!(d, 1);
        assert_eq!(g, gram(&ones_row()));
        assert!(matches!(
            hadamard_to_gram(&ExactMatrix::identity(Domain::REAL_SIGNS, 4)),
            Err(FrameError::Hadamard(_))
        ));
    }
}
