//! ETF constructions: simplices, harmonic frames, Steiner and Kirkman frames, tensor products.

use crate::design::{lift_permutation, round_robin_resolution, Design, DesignError, PermutationLift};
use crate::frame::{certify_etf, verify_naimark_pair, Frame, FrameError, NaimarkPair};
use crate::hadamard::{char_table, hadamard_of_size, kron, sylvester, AbelianGroup, HadamardError, HadamardMatrix};
use crate::scalar::matrix::MatrixError;
use crate::scalar::{Domain, ExactMatrix, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("design is not resolvable with blocks ordered by parallel class")]
    NotResolvable,
    #[error("parameter gate failed: {0}")]
    Gate(String),
    #[error("not a difference set: g = {g} occurs {got} times, expected {expected}")]
    NotDifferenceSet { g: usize, got: usize, expected: usize },
    #[error("invalid subset: {0}")]
    BadSubset(String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    Hadamard(#[from] HadamardError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Deletes one row of a Hadamard matrix of size d + 1.
pub fn flat_regular_simplex(h: &HadamardMatrix, drop_row: usize) -> Result<Frame, ConstructError> {
    let n = h.size();
    if drop_row >= n || n < 2 {
        return Err(ConstructError::SizeMismatch(format!("row {drop_row} of a size-{n} matrix")));
    }
    let keep: Vec<usize> = (0..n).filter(|&i| i != drop_row).collect();
    Ok(Frame::new(h.body().select_rows(&keep))?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceSet {
    pub group: AbelianGroup,
    pub subset: Vec<usize>,
    pub lambda: usize,
}

/// Exhaustive difference count over the nonzero elements.
pub fn verify_difference_set(group: &AbelianGroup, subset: &[usize]) -> Result<DifferenceSet, ConstructError> {
    let n = group.order();
    if subset.is_empty() || subset.len() >= n {
        return Err(ConstructError::BadSubset(format!("need 0 < |D| < {n}, got {}", subset.len())));
    }
    if let Some(&bad) = subset.iter().find(|&&x| x >= n) {
        return Err(ConstructError::BadSubset(format!("element {bad} outside a group of order {n}")));
    }
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(ConstructError::BadSubset("repeated element".into()));
    }
    let mut counts = vec![0usize; n];
    for &a in subset {
        for &b in subset {
            counts[group.sub(a, b)] += 1;
        }
    }
    let lambda = counts[1];
    if let Some(g) = (1..n).find(|&g| counts[g] != lambda) {
        return Err(ConstructError::NotDifferenceSet { g, got: counts[g], expected: lambda });
    }
    Ok(DifferenceSet { group: group.clone(), subset: subset.to_vec(), lambda })
}

/// Character-table rows: D in listed order, then the rest in element order.
pub fn harmonic_etf(ds: &DifferenceSet) -> Result<NaimarkPair, ConstructError> {
    let table = char_table(&ds.group);
    let rest: Vec<usize> = (0..ds.group.order()).filter(|g| !ds.subset.contains(g)).collect();
    let p = Frame::new(table.body().select_rows(&ds.subset))?;
    let c = Frame::new(table.body().select_rows(&rest))?;
    Ok(verify_naimark_pair(&p, &c)?)
}

/// Inputs to the Steiner construction. `l` is 1-based; `g_column` is the
/// column of G set aside as g₂, the other r columns (in order) forming G₁.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerInputs {
    pub design: Design,
    pub lift: PermutationLift,
    pub f: HadamardMatrix,
    pub g: HadamardMatrix,
    pub g_column: usize,
    pub l: usize,
}

impl SteinerInputs {
    pub fn new(design: Design, f: HadamardMatrix, g: HadamardMatrix) -> Result<Self, ConstructError> {
        let p = design.params();
        if p.lambda != 1 {
            return Err(ConstructError::SizeMismatch(format!("Steiner construction needs λ = 1, got {}", p.lambda)));
        }
        if f.size() != p.k {
            return Err(ConstructError::SizeMismatch(format!("F has size {}, k = {}", f.size(), p.k)));
        }
        if g.size() != p.r + 1 {
            return Err(ConstructError::SizeMismatch(format!("G has size {}, r + 1 = {}", g.size(), p.r + 1)));
        }
        let lift = lift_permutation(&design);
        Ok(SteinerInputs { design, lift, f, g, g_column: p.r, l: 1 })
    }

    pub fn with_g_column(mut self, c: usize) -> Result<Self, ConstructError> {
        if c >= self.g.size() {
            return Err(ConstructError::SizeMismatch(format!("g column {c} of a size-{} matrix", self.g.size())));
        }
        self.g_column = c;
        Ok(self)
    }

    pub fn with_l(mut self, l: usize) -> Result<Self, ConstructError> {
        if l == 0 || l > self.f.size() {
            return Err(ConstructError::SizeMismatch(format!("l = {l} outside 1..={}", self.f.size())));
        }
        self.l = l;
        Ok(self)
    }

    fn domain(&self) -> Domain {
        self.f.body().domain().unify(self.g.body().domain()).expect("cyclotomic")
    }

    fn g1_columns(&self) -> Vec<usize> {
        (0..self.g.size()).filter(|&c| c != self.g_column).collect()
    }

    /// (I_b ⊗ f_l*) Π (I_v ⊗ G₁*) for a 1-based l.
    pub fn phi(&self, l: usize) -> ExactMatrix {
        let dom = self.domain();
        let p = self.design.params();
        let w = p.r + 1;
        let g1 = self.g1_columns();
        let gb = self.g.body();
        let mut m = ExactMatrix::zeros(dom, p.b, p.v * w);
        for i in 0..p.b {
            for q in 0..p.k {
                let (j, col) = self.lift.image(i, q);
                let f = dom.coerce(&self.f.body().get(q, l - 1).conjugate());
                for s in 0..w {
                    let gs = dom.coerce(&gb.get(s, g1[col]).conjugate());
                    m.set(i, j * w + s, &f * &gs);
                }
            }
        }
        m
    }

    /// I_v ⊗ g₂*.
    pub fn g2_block(&self) -> ExactMatrix {
        let dom = self.domain();
        let g2 = self.g.body().select_cols(&[self.g_column]).adjoint().lift_to(dom).expect("same family");
        ExactMatrix::identity(dom, self.design.params().v).kron(&g2).expect("same domain")
    }
}

/// Φ_l from the inputs' l.
pub fn steiner_etf(inputs: &SteinerInputs) -> Result<Frame, ConstructError> {
    Ok(Frame::new(inputs.phi(inputs.l))?)
}

/// Φ_l with complement [Φ_{l'} (l' ≠ l); √k(I_v⊗g₂*)]; a non-square k is
/// carried as a row weight on the last v rows.
pub fn steiner_naimark(inputs: &SteinerInputs) -> Result<NaimarkPair, ConstructError> {
    let k = inputs.design.params().k;
    let primary = Frame::new(inputs.phi(inputs.l))?;
    let others: Vec<ExactMatrix> = (1..=k).filter(|&l| l != inputs.l).map(|l| inputs.phi(l)).collect();
    let g2 = inputs.g2_block();
    let root = Rational::from_int(k as i64).sqrt_exact();
    let (last, last_weight) = match &root {
        Some(s) => (g2.scale(s), Rational::one()),
        None => (g2, Rational::from_int(k as i64)),
    };
    let mut parts: Vec<&ExactMatrix> = others.iter().collect();
    parts.push(&last);
    let stacked = ExactMatrix::vstack(&parts)?;
    let head = stacked.rows() - last.rows();
    let weights = (0..stacked.rows())
        .map(|i| if i < head { Rational::one() } else { last_weight.clone() })
        .collect();
    let complement = Frame::weighted(stacked, Some(weights))?;
    Ok(verify_naimark_pair(&primary, &complement)?)
}

/// Φ_l Φ_{l'}* for all l, l' must be 0 off the diagonal and k(r+1)I on it.
pub fn steiner_orthogonality(inputs: &SteinerInputs) -> Result<(), ConstructError> {
    let p = inputs.design.params();
    let phis: Vec<ExactMatrix> = (1..=p.k).map(|l| inputs.phi(l)).collect();
    let alpha = Rational::from_int((p.k * (p.r + 1)) as i64);
    for (a, pa) in phis.iter().enumerate() {
        for (b, pb) in phis.iter().enumerate() {
            let prod = pa.mul_adjoint(pb)?;
            let want = if a == b {
                ExactMatrix::identity(prod.domain(), p.b).scale(&alpha)
            } else {
                ExactMatrix::zeros(prod.domain(), p.b, p.b)
            };
            if prod != want {
                return Err(ConstructError::Gate(format!("Φ_{}Φ_{}* has the wrong value", a + 1, b + 1)));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KirkmanInputs {
    pub steiner: SteinerInputs,
    pub e: HadamardMatrix,
}

impl KirkmanInputs {
    pub fn new(steiner: SteinerInputs, e: HadamardMatrix) -> Result<Self, ConstructError> {
        let p = steiner.design.params();
        if steiner.design.parallel_classes().is_none() || !steiner.design.ordered_by_class() {
            return Err(ConstructError::NotResolvable);
        }
        if !p.v.is_multiple_of(p.k) || e.size() != p.v / p.k {
            return Err(ConstructError::SizeMismatch(format!("E has size {}, v/k = {}/{}", e.size(), p.v, p.k)));
        }
        Ok(KirkmanInputs { steiner, e })
    }

    fn i_r_kron_e(&self) -> ExactMatrix {
        let r = self.steiner.design.params().r;
        let dom = self.e.body().domain();
        ExactMatrix::identity(dom, r).kron(self.e.body()).expect("same domain")
    }

    /// Ψ_l = (I_r ⊗ E) Φ_l.
    pub fn psi(&self, l: usize) -> ExactMatrix {
        self.i_r_kron_e().mul(&self.steiner.phi(l)).expect("b rows")
    }
}

/// Flat pair: Ψ_l and [Ψ_{l'} (l' ≠ l); (E⊗F)(I_v⊗g₂*)].
pub fn kirkman_etf(inputs: &KirkmanInputs) -> Result<NaimarkPair, ConstructError> {
    let s = &inputs.steiner;
    let k = s.design.params().k;
    let primary = Frame::new(inputs.psi(s.l))?;
    let ef = inputs.e.body().kron(s.f.body())?;
    let tail = ef.mul(&s.g2_block())?;
    let mut rows: Vec<ExactMatrix> = (1..=k).filter(|&l| l != s.l).map(|l| inputs.psi(l)).collect();
    rows.push(tail);
    let refs: Vec<&ExactMatrix> = rows.iter().collect();
    let complement = Frame::new(ExactMatrix::vstack(&refs)?)?;
    Ok(verify_naimark_pair(&primary, &complement)?)
}

/// Round-robin design on 2u points, E = Hadamard of size u, F = sylvester(1), G = E ⊗ F.
pub fn kirkman_from_u(u: usize) -> Result<KirkmanInputs, ConstructError> {
    let e = hadamard_of_size(u)?;
    let f = sylvester(1);
    let g = kron(&e, &f)?;
    let design = round_robin_resolution(2 * u)?;
    KirkmanInputs::new(SteinerInputs::new(design, f, g)?, e)
}

fn integer_sqrt(n: usize) -> Option<usize> {
    Rational::from_int(n as i64).sqrt_exact().and_then(|s| s.to_i64()).map(|s| s as usize)
}

fn tensor_gate(pair: &NaimarkPair, side: &str) -> Result<(usize, usize), ConstructError> {
    let (d, n) = (pair.primary.d(), pair.primary.n());
    let s = integer_sqrt(n).ok_or_else(|| ConstructError::Gate(format!("{side}: √{n} is not an integer")))?;
    if 2 * d + s != n {
        return Err(ConstructError::Gate(format!("{side}: d = {d} ≠ (n − √n)/2 for n = {n}")));
    }
    if pair.primary.row_weights().is_some() || pair.complement.row_weights().is_some() {
        return Err(ConstructError::Gate(format!("{side}: weighted rows")));
    }
    let bp = certify_etf(&pair.primary)?.beta;
    let bc = certify_etf(&pair.complement)?.beta;
    if bp != Rational::from_int(d as i64) || bc != Rational::from_int((n - d) as i64) {
        return Err(ConstructError::Gate(format!(
            "{side}: squared norms {bp} and {bc}, expected {d} and {}",
            n - d
        )));
    }
    Ok((d, n))
}

/// Primary [Φ⊗Ψ̃; Φ̃⊗Ψ], complement [Φ⊗Ψ; Φ̃⊗Ψ̃].
pub fn tensor_etf(p1: &NaimarkPair, p2: &NaimarkPair) -> Result<NaimarkPair, ConstructError> {
    tensor_gate(p1, "left")?;
    tensor_gate(p2, "right")?;
    let (a, at) = (p1.primary.synthesis(), p1.complement.synthesis());
    let (b, bt) = (p2.primary.synthesis(), p2.complement.synthesis());
    let primary = ExactMatrix::vstack(&[&a.kron(bt)?, &at.kron(b)?])?;
    let complement = ExactMatrix::vstack(&[&a.kron(b)?, &at.kron(bt)?])?;
    let pair = verify_naimark_pair(&Frame::new(primary)?, &Frame::new(complement)?)?;
    certify_etf(&pair.primary)?;
    certify_etf(&pair.complement)?;
    Ok(pair)
}

/// True when every entry is a single root of unity.
pub fn is_unital(m: &ExactMatrix) -> bool {
    m.entries().iter().all(Scalar::is_root_of_unity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{certify_hadamard_etf, gram};
    use crate::hadamard::dft;

    #[test]
    fn simplex_from_sylvester() {
        let f = flat_regular_simplex(&sylvester(2), 0).unwrap();
        assert_eq!(
            f.synthesis().to_i64_entries().unwrap(),
            vec![1, -1, 1, -1, 1, 1, -1, -1, 1, -1, -1, 1]
        );
        let c = certify_etf(&flat_regular_simplex(&dft(3), 0).unwrap()).unwrap();
        assert_eq!((c.d, c.n, c.beta.clone()), (2, 3, 2.into()));
        assert!(c.flat);
    }

    #[test]
    fn difference_sets() {
        let z7 = AbelianGroup::new(vec![7]).unwrap();
        assert_eq!(verify_difference_set(&z7, &[1, 2, 4]).unwrap().lambda, 1);
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        assert!(matches!(
            verify_difference_set(&z4, &[0, 1]),
            Err(ConstructError::NotDifferenceSet { .. })
        ));
        let z2 = AbelianGroup::new(vec![2]).unwrap();
        let pair = harmonic_etf(&verify_difference_set(&z2, &[0]).unwrap()).unwrap();
        assert_eq!((pair.primary.d(), pair.primary.n()), (1, 2));
        let pair = harmonic_etf(&verify_difference_set(&z7, &[1, 2, 4]).unwrap()).unwrap();
        let c = certify_etf(&pair.primary).unwrap();
        assert_eq!(c.gamma_sq / (&c.beta * &c.beta), Rational::new(2, 9));
        assert!(is_unital(pair.primary.synthesis()));
    }

    #[test]
    fn fano_steiner_pair() {
        let inputs = SteinerInputs::new(crate::design::fano_plane(), dft(3), sylvester(2)).unwrap();
        let f = steiner_etf(&inputs).unwrap();
        assert!(f.synthesis().entries().iter().all(|e| e.to_rational().is_some()));
        let c = certify_etf(&f).unwrap();
        assert_eq!((c.d, c.n, c.beta.clone(), c.alpha.clone()), (7, 28, 3.into(), 12.into()));
        let pair = steiner_naimark(&inputs).unwrap();
        assert_eq!(pair.complement.d(), 21);
        certify_etf(&pair.complement).unwrap();
        steiner_orthogonality(&inputs).unwrap();
    }

    #[test]
    fn kirkman_u2() {
        let k = kirkman_from_u(2).unwrap();
        let pair = kirkman_etf(&k).unwrap();
        assert_eq!((pair.primary.d(), pair.complement.d()), (6, 10));
        let h = certify_hadamard_etf(&pair).unwrap();
        assert_eq!(h.size(), 16);
        assert!(matches!(kirkman_from_u(3), Err(ConstructError::Hadamard(_))));
    }

    #[test]
    fn tensor_gates() {
        let ones = Frame::new(ExactMatrix::ones(Domain::REAL_SIGNS, 1, 4)).unwrap();
        let simplex = flat_regular_simplex(&sylvester(2), 0).unwrap();
        let pair = verify_naimark_pair(&ones, &simplex).unwrap();
        let t = tensor_etf(&pair, &pair).unwrap();
        assert_eq!((t.primary.d(), t.primary.n()), (6, 16));
        let g = gram(&t.primary);
        assert_eq!(g.get(0, 0), &Domain::REAL_SIGNS.int(6));
        assert!(matches!(tensor_etf(&pair.swapped(), &pair), Err(ConstructError::Gate(_))));
    }
}
