//! Block designs, the permutation lift, quasi-symmetric designs and their
//! strongly regular block graphs.

use std::collections::BTreeSet;

use crate::scalar::{Domain, ExactMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DesignError {
    #[error("entry ({0},{1}) is not 0 or 1")]
    NotBinary(usize, usize),
    #[error("degenerate design: {0}")]
    Degenerate(String),
    #[error("row {row} has {got} ones, expected {expected}")]
    RowSum { row: usize, expected: usize, got: usize },
    #[error("column {col} has {got} ones, expected {expected}")]
    ColumnSum { col: usize, expected: usize, got: usize },
    #[error("vertices {0} and {1} share {got} blocks, expected {expected}", got = .2, expected = .3)]
    Unbalanced(usize, usize, usize, usize),
    #[error("parameter relation violated: {0}")]
    Relation(String),
    #[error("v = {0} must be even and at least 4")]
    OddVertexCount(usize),
    #[error("invalid parallel class {class}: {reason}")]
    ParallelClass { class: usize, reason: String },
    #[error("b = v = {0}: symmetric design, not quasi-symmetric")]
    Symmetric(usize),
    #[error("block intersections take {0:?}, expected exactly two values")]
    IntersectionSizes(Vec<usize>),
    #[error("graph is not regular at vertex {0}")]
    NotRegular(usize),
    #[error("adjacency matrix must be symmetric 0/1 with zero diagonal (fails at ({0},{1}))")]
    BadAdjacency(usize, usize),
    #[error("graph is complete or empty")]
    CompleteOrEmpty,
    #[error("A² = (c−μ)A + (a−μ)I + μJ fails at ({0},{1})")]
    SrgIdentity(usize, usize),
    #[error("{0} is not an integer")]
    NonIntegral(&'static str),
    #[error("condition a = 2μ fails: a = {a}, μ = {mu}")]
    NotEtfGraph { a: i64, mu: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DesignParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub r: usize,
    pub b: usize,
}

impl DesignParams {
    pub fn new(v: usize, k: usize, lambda: usize, r: usize, b: usize) -> Self {
        DesignParams { v, k, lambda, r, b }
    }

    /// Checks v > k > 0, b > 0, bk = vr, (v−1)λ = r(k−1), λ < r < b.
    pub fn validate(&self) -> Result<(), DesignError> {
        let DesignParams { v, k, lambda, r, b } = *self;
        if !(v > k && k > 0 && b > 0) {
            return Err(DesignError::Degenerate(format!("need v > k > 0 and b > 0, got v={v}, k={k}, b={b}")));
        }
        if b * k != v * r {
            return Err(DesignError::Relation(format!("bk = {} but vr = {}", b * k, v * r)));
        }
        if (v - 1) * lambda != r * (k - 1) {
            return Err(DesignError::Relation(format!("(v−1)λ = {} but r(k−1) = {}", (v - 1) * lambda, r * (k - 1))));
        }
        if !(lambda < r && r < b) {
            return Err(DesignError::Relation(format!("need λ < r < b, got λ={lambda}, r={r}, b={b}")));
        }
        Ok(())
    }

    /// Fisher's inequality b ≥ v (reported, never enforced).
    pub fn fisher_holds(&self) -> bool {
        self.b >= self.v
    }
}

/// A BIBD with 0-based blocks and optional resolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Design {
    params: DesignParams,
    blocks: Vec<Vec<usize>>,
    parallel_classes: Option<Vec<Vec<usize>>>,
}

fn incidence_from_blocks(v: usize, blocks: &[Vec<usize>]) -> ExactMatrix {
    let mut vals = vec![0i64; blocks.len() * v];
    for (i, blk) in blocks.iter().enumerate() {
        for &j in blk {
            vals[i * v + j] = 1;
        }
    }
    ExactMatrix::from_ints(Domain::RATIONAL, blocks.len(), v, &vals)
}

fn binary_rows(x: &ExactMatrix) -> Result<Vec<Vec<u8>>, DesignError> {
    let vals = x.to_i64_entries();
    let mut out = vec![vec![0u8; x.cols()]; x.rows()];
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            let e = vals.as_ref().map(|v| v[i * x.cols() + j]);
            match e {
                Some(0) => {}
                Some(1) => out[i][j] = 1,
                _ => return Err(DesignError::NotBinary(i, j)),
            }
        }
    }
    Ok(out)
}

/// Verifies the three incidence identities and returns the parameters.
pub fn verify_bibd(x: &ExactMatrix) -> Result<DesignParams, DesignError> {
    let bits = binary_rows(x)?;
    let (b, v) = x.shape();
    if b == 0 || v < 2 {
        return Err(DesignError::Degenerate(format!("need b > 0 and v > 1, got b={b}, v={v}")));
    }
    let k = bits[0].iter().filter(|&&e| e == 1).count();
    for (i, row) in bits.iter().enumerate() {
        let s = row.iter().filter(|&&e| e == 1).count();
        if s != k {
            return Err(DesignError::RowSum { row: i, expected: k, got: s });
        }
    }
    let col_sum = |j: usize| bits.iter().filter(|row| row[j] == 1).count();
    let r = col_sum(0);
    for j in 1..v {
        let s = col_sum(j);
        if s != r {
            return Err(DesignError::ColumnSum { col: j, expected: r, got: s });
        }
    }
    if k == v || k == 0 {
        return Err(DesignError::Degenerate(format!("block size k = {k} with v = {v}")));
    }
    // XᵀX = (r−λ)I + λJ, read off and checked exactly
    let gram = x.adjoint_mul(x).expect("shapes agree");
    let lambda = gram.get(0, 1).to_rational().and_then(|q| q.to_i64()).unwrap_or(-1);
    if lambda < 0 {
        return Err(DesignError::Unbalanced(0, 1, 0, 0));
    }
    let lambda = lambda as usize;
    for j in 0..v {
        for j2 in 0..v {
            let want = if j == j2 { r } else { lambda };
            let got = gram.get(j, j2).to_rational().and_then(|q| q.to_i64()).unwrap_or(-1);
            if got != want as i64 {
                return Err(DesignError::Unbalanced(j, j2, got.max(0) as usize, want));
            }
        }
    }
    let params = DesignParams { v, k, lambda, r, b };
    params.validate()?;
    Ok(params)
}

impl Design {
    /// Builds and verifies a design from 0-based blocks.
    pub fn from_blocks(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let mut blocks = blocks;
        for blk in blocks.iter_mut() {
            blk.sort_unstable();
            if blk.windows(2).any(|w| w[0] == w[1]) || blk.iter().any(|&p| p >= v) {
                return Err(DesignError::Degenerate(format!("block {blk:?} repeats or exceeds v = {v}")));
            }
        }
        let params = verify_bibd(&incidence_from_blocks(v, &blocks))?;
        Ok(Design { params, blocks, parallel_classes: None })
    }

    pub fn from_incidence(x: &ExactMatrix) -> Result<Self, DesignError> {
        let params = verify_bibd(x)?;
        let bits = binary_rows(x)?;
        let blocks = bits
            .iter()
            .map(|row| (0..row.len()).filter(|&j| row[j] == 1).collect())
            .collect();
        Ok(Design { params, blocks, parallel_classes: None })
    }

    /// Attaches a resolution after checking each class partitions the vertices.
    pub fn with_parallel_classes(mut self, classes: Vec<Vec<usize>>) -> Result<Self, DesignError> {
        let per_class = self.params.v / self.params.k;
        if classes.len() != self.params.r {
            return Err(DesignError::ParallelClass {
                class: classes.len(),
                reason: format!("expected {} classes", self.params.r),
            });
        }
        let mut used = BTreeSet::new();
        for (c, class) in classes.iter().enumerate() {
            if class.len() != per_class {
                return Err(DesignError::ParallelClass { class: c, reason: format!("has {} blocks, expected {per_class}", class.len()) });
            }
            let mut seen = vec![false; self.params.v];
            for &bi in class {
                if bi >= self.params.b || !used.insert(bi) {
                    return Err(DesignError::ParallelClass { class: c, reason: format!("block {bi} invalid or reused") });
                }
                for &p in &self.blocks[bi] {
                    if seen[p] {
                        return Err(DesignError::ParallelClass { class: c, reason: format!("vertex {p} covered twice") });
                    }
                    seen[p] = true;
                }
            }
            if let Some(p) = seen.iter().position(|s| !s) {
                return Err(DesignError::ParallelClass { class: c, reason: format!("vertex {p} uncovered") });
            }
        }
        self.parallel_classes = Some(classes);
        Ok(self)
    }

    pub fn params(&self) -> DesignParams {
        self.params
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn parallel_classes(&self) -> Option<&[Vec<usize>]> {
        self.parallel_classes.as_deref()
    }

    /// True when blocks are stored class by class, as the Kirkman construction needs.
    pub fn ordered_by_class(&self) -> bool {
        match &self.parallel_classes {
            None => false,
            Some(classes) => {
                let per = self.params.v / self.params.k;
                classes
                    .iter()
                    .enumerate()
                    .all(|(c, class)| class.iter().copied().eq(c * per..(c + 1) * per))
            }
        }
    }

    /// The b×v incidence matrix X.
    pub fn incidence(&self) -> ExactMatrix {
        incidence_from_blocks(self.params.v, &self.blocks)
    }
}

/// All 2-subsets of a v-set, lexicographic.
pub fn all_pairs_design(v: usize) -> Result<Design, DesignError> {
    if v < 3 {
        return Err(DesignError::Degenerate(format!("all-pairs design needs v ≥ 3, got {v}")));
    }
    let mut blocks = Vec::with_capacity(v * (v - 1) / 2);
    for a in 0..v {
        for b in a + 1..v {
            blocks.push(vec![a, b]);
        }
    }
    Design::from_blocks(v, blocks)
}

/// The circle-method schedule: class p pairs vertex v with p and p±i mod (v−1).
pub fn round_robin_resolution(v: usize) -> Result<Design, DesignError> {
    if v < 4 || v % 2 == 1 {
        return Err(DesignError::OddVertexCount(v));
    }
    let m = v - 1;
    // 1-based residue in 1..=m, then 0-based vertex
    let label = |x: isize| -> usize {
        let r = x.rem_euclid(m as isize) as usize;
        if r == 0 { m - 1 } else { r - 1 }
    };
    let mut blocks = Vec::with_capacity(v * m / 2);
    let mut classes = Vec::with_capacity(m);
    for p in 1..=m {
        let start = blocks.len();
        blocks.push(vec![v - 1, p - 1]);
        for i in 1..v / 2 {
            blocks.push(vec![label((p + i) as isize), label(p as isize - i as isize)]);
        }
        classes.push((start..blocks.len()).collect());
    }
    Design::from_blocks(v, blocks)?.with_parallel_classes(classes)
}

/// The Fano plane with blocks 123, 145, 167, 246, 257, 347, 356.
pub fn fano_plane() -> Design {
    let blocks = [[1, 2, 3], [1, 4, 5], [1, 6, 7], [2, 4, 6], [2, 5, 7], [3, 4, 7], [3, 5, 6]];
    Design::from_blocks(7, blocks.iter().map(|b| b.iter().map(|&p| p - 1).collect()).collect())
        .expect("Fano plane is a BIBD")
}

/// Complementary design with incidence J − X.
pub fn complement_design(d: &Design) -> Result<Design, DesignError> {
    let DesignParams { v, k, lambda, r, b } = d.params;
    let k2 = v - k;
    if k2 == 0 || k2 >= v {
        return Err(DesignError::Degenerate(format!("complement block size {k2} with v = {v}")));
    }
    let blocks = d
        .blocks
        .iter()
        .map(|blk| (0..v).filter(|p| !blk.contains(p)).collect())
        .collect();
    let out = Design::from_blocks(v, blocks)?;
    let want = DesignParams { v, k: k2, lambda: b + lambda - 2 * r, r: b - r, b };
    if out.params != want {
        return Err(DesignError::Relation(format!("complement has {:?}, expected {:?}", out.params, want)));
    }
    Ok(out)
}

/// The lift Π as a bijection (i, p) ↦ (j, q), all 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationLift {
    pub b: usize,
    pub k: usize,
    pub v: usize,
    pub r: usize,
    forward: Vec<(usize, usize)>,
}

impl PermutationLift {
    /// Image of row (i, p): the p-th one of block i sits at (j, q).
    pub fn image(&self, i: usize, p: usize) -> (usize, usize) {
        self.forward[i * self.k + p]
    }

    /// Preimage of column (j, q).
    pub fn preimage(&self, j: usize, q: usize) -> (usize, usize) {
        let pos = self
            .forward
            .iter()
            .position(|&jq| jq == (j, q))
            .expect("lift is a bijection");
        (pos / self.k, pos % self.k)
    }

    pub fn is_bijection(&self) -> bool {
        let set: BTreeSet<_> = self.forward.iter().collect();
        set.len() == self.b * self.k && self.forward.iter().all(|&(j, q)| j < self.v && q < self.r)
    }

    /// The bk×vr permutation matrix.
    pub fn matrix(&self) -> ExactMatrix {
        let n = self.b * self.k;
        let mut vals = vec![0i64; n * n];
        for (row, &(j, q)) in self.forward.iter().enumerate() {
            vals[row * n + j * self.r + q] = 1;
        }
        ExactMatrix::from_ints(Domain::RATIONAL, n, n, &vals)
    }

    /// (I_b ⊗ 𝟙_kᵀ) Π (I_v ⊗ 𝟙_r), which must equal X.
    pub fn recompose(&self) -> ExactMatrix {
        let d = Domain::RATIONAL;
        let left = ExactMatrix::identity(d, self.b).kron(&ExactMatrix::ones(d, 1, self.k)).unwrap();
        let right = ExactMatrix::identity(d, self.v).kron(&ExactMatrix::ones(d, self.r, 1)).unwrap();
        left.mul(&self.matrix()).unwrap().mul(&right).unwrap()
    }
}

/// Π(i,j)(p,q) = 1 iff X(i,j) is the p-th one in row i and the q-th one in column j.
pub fn lift_permutation(d: &Design) -> PermutationLift {
    let DesignParams { v, k, r, b, .. } = d.params;
    let mut seen_in_col = vec![0usize; v];
    let mut forward = Vec::with_capacity(b * k);
    for blk in &d.blocks {
        for &j in blk {
            forward.push((j, seen_in_col[j]));
            seen_in_col[j] += 1;
        }
    }
    PermutationLift { b, k, v, r, forward }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsdCertificate {
    pub params: DesignParams,
    pub x: usize,
    pub y: usize,
    pub incidence: ExactMatrix,
    pub block_graph: ExactMatrix,
}

impl QsdCertificate {
    /// Parameter tuple (v, k, λ, r, b, x, y).
    pub fn tuple(&self) -> [usize; 7] {
        let p = self.params;
        [p.v, p.k, p.lambda, p.r, p.b, self.x, self.y]
    }
}

/// k(r−1)(x+y−1) − xy(b−1) = k(k−1)(λ−1), over the integers.
pub fn qsd_relation_holds(p: &DesignParams, x: usize, y: usize) -> bool {
    let (k, r, b, l) = (p.k as i128, p.r as i128, p.b as i128, p.lambda as i128);
    let (x, y) = (x as i128, y as i128);
    k * (r - 1) * (x + y - 1) - x * y * (b - 1) == k * (k - 1) * (l - 1)
}

pub fn verify_qsd(d: &Design) -> Result<QsdCertificate, DesignError> {
    let p = d.params;
    if p.b == p.v {
        return Err(DesignError::Symmetric(p.b));
    }
    if p.b < p.v {
        return Err(DesignError::Degenerate(format!("b = {} < v = {}", p.b, p.v)));
    }
    let x_mat = d.incidence();
    let xxt = x_mat.mul_adjoint(&x_mat).expect("shapes agree");
    let size = |i: usize, i2: usize| xxt.get(i, i2).to_rational().and_then(|q| q.to_i64()).unwrap() as usize;
    let mut sizes = BTreeSet::new();
    for i in 0..p.b {
        for i2 in i + 1..p.b {
            sizes.insert(size(i, i2));
        }
    }
    let sizes: Vec<usize> = sizes.into_iter().collect();
    if sizes.len() != 2 {
        return Err(DesignError::IntersectionSizes(sizes));
    }
    let (x, y) = (sizes[0], sizes[1]);
    let adj: Vec<i64> = (0..p.b * p.b)
        .map(|e| {
            let (i, i2) = (e / p.b, e % p.b);
            (i != i2 && size(i, i2) == y) as i64
        })
        .collect();
    let a = ExactMatrix::from_ints(Domain::RATIONAL, p.b, p.b, &adj);
    // XXᵀ = (k−x)I + (y−x)A + xJ
    let dom = Domain::RATIONAL;
    let rhs = ExactMatrix::identity(dom, p.b)
        .scale(&Rational::from_int((p.k - x) as i64))
        .add(&a.scale(&Rational::from_int((y - x) as i64)))
        .and_then(|m| m.add(&ExactMatrix::ones(dom, p.b, p.b).scale(&Rational::from_int(x as i64))))
        .expect("shapes agree");
    if let Some((i, j)) = xxt.first_difference(&rhs) {
        return Err(DesignError::Relation(format!("XXᵀ identity fails at ({i},{j})")));
    }
    if !qsd_relation_holds(&p, x, y) {
        return Err(DesignError::Relation("k(r−1)(x+y−1) − xy(b−1) ≠ k(k−1)(λ−1)".into()));
    }
    Ok(QsdCertificate { params: p, x, y, incidence: x_mat, block_graph: a })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SrgParams {
    pub b: i64,
    pub a: i64,
    pub c: i64,
    pub mu: i64,
    /// Restricted eigenvalues, when rational.
    pub theta: Option<(Rational, Rational)>,
}

impl SrgParams {
    /// a(a−c−1) = μ(b−a−1)
    pub fn relation_holds(&self) -> bool {
        self.a * (self.a - self.c - 1) == self.mu * (self.b - self.a - 1)
    }
}

fn int_of(q: &Rational, what: &'static str) -> Result<i64, DesignError> {
    if q.is_integer() {
        q.to_i64().ok_or(DesignError::NonIntegral(what))
    } else {
        Err(DesignError::NonIntegral(what))
    }
}

/// SRG parameters of the block graph, from the design parameters alone.
pub fn srg_params_from_qsd(cert: &QsdCertificate) -> Result<SrgParams, DesignError> {
    srg_params_from_tuple(cert.params, cert.x, cert.y)
}

/// Same as [`srg_params_from_qsd`] for a bare parameter tuple.
pub fn srg_params_from_tuple(p: DesignParams, x: usize, y: usize) -> Result<SrgParams, DesignError> {
    if y <= x {
        return Err(DesignError::Relation(format!("need y > x, got x={x}, y={y}")));
    }
    let q = |n: i64| Rational::from_int(n);
    let (k, r, b, l) = (p.k as i64, p.r as i64, p.b as i64, p.lambda as i64);
    let (x, y) = (x as i64, y as i64);
    let yx = q(y - x);
    let a = &q(k * (r - 1) - x * (b - 1)) / &yx;
    let t1 = &q((r - l) - (k - x)) / &yx;
    let t2 = -(&q(k - x) / &yx);
    let prod = &t1 * &t2;
    let c = &(&(&a + &t1) + &t2) + &prod;
    let mu = &a + &prod;
    let out = SrgParams {
        b,
        a: int_of(&a, "a")?,
        c: int_of(&c, "c")?,
        mu: int_of(&mu, "μ")?,
        theta: Some((t1, t2)),
    };
    if !out.relation_holds() {
        return Err(DesignError::Relation("a(a−c−1) ≠ μ(b−a−1)".into()));
    }
    Ok(out)
}

/// Checks A𝟙 = a𝟙 and A² = (c−μ)A + (a−μ)I + μJ exactly.
pub fn verify_srg(adj: &ExactMatrix) -> Result<SrgParams, DesignError> {
    let n = adj.rows();
    if adj.cols() != n || n < 2 {
        return Err(DesignError::BadAdjacency(0, 0));
    }
    let vals = adj.to_i64_entries().ok_or(DesignError::BadAdjacency(0, 0))?;
    let at = |i: usize, j: usize| vals[i * n + j];
    for i in 0..n {
        for j in 0..n {
            let e = at(i, j);
            if !(e == 0 || e == 1) || e != at(j, i) || (i == j && e != 0) {
                return Err(DesignError::BadAdjacency(i, j));
            }
        }
    }
    let deg = |i: usize| (0..n).map(|j| at(i, j)).sum::<i64>();
    let a = deg(0);
    if let Some(i) = (1..n).find(|&i| deg(i) != a) {
        return Err(DesignError::NotRegular(i));
    }
    if a == 0 || a == n as i64 - 1 {
        return Err(DesignError::CompleteOrEmpty);
    }
    let sq = adj.mul(adj).expect("square");
    let sq_at = |i: usize, j: usize| sq.get(i, j).to_rational().and_then(|q| q.to_i64()).unwrap();
    let mut c = None;
    let mut mu = None;
    for i in 0..n {
        for j in i + 1..n {
            if at(i, j) == 1 {
                c.get_or_insert(sq_at(i, j));
            } else {
                mu.get_or_insert(sq_at(i, j));
            }
        }
    }
    let (c, mu) = (c.unwrap(), mu.unwrap());
    let dom = Domain::RATIONAL;
    let rhs = adj
        .scale(&Rational::from_int(c - mu))
        .add(&ExactMatrix::identity(dom, n).scale(&Rational::from_int(a - mu)))
        .and_then(|m| m.add(&ExactMatrix::ones(dom, n, n).scale(&Rational::from_int(mu))))
        .expect("shapes agree");
    if let Some((i, j)) = sq.first_difference(&rhs) {
        return Err(DesignError::SrgIdentity(i, j));
    }
    // eigenvalues solve θ² − (c−μ)θ − (a−μ) = 0
    let disc = Rational::from_int((c - mu) * (c - mu) + 4 * (a - mu));
    let theta = disc.sqrt_exact().map(|s| {
        let half = Rational::new(1, 2);
        let cm = Rational::from_int(c - mu);
        (&(&cm + &s) * &half, &(&cm - &s) * &half)
    });
    Ok(SrgParams { b: n as i64, a, c, mu, theta })
}

/// (d, n) of the real ETF attached to an SRG with a = 2μ.
pub fn etf_params_from_srg(p: &SrgParams) -> Result<(usize, usize), DesignError> {
    if p.a != 2 * p.mu {
        return Err(DesignError::NotEtfGraph { a: p.a, mu: p.mu });
    }
    let n = p.b + 1;
    let t = p.b - 2 * p.a - 1;
    let ratio = if t == 0 {
        Rational::zero()
    } else {
        let s = Rational::from_int(t * t + 4 * p.b)
            .sqrt_exact()
            .ok_or(DesignError::NonIntegral("√((b−2a−1)²+4b)"))?;
        &Rational::from_int(t) / &s
    };
    let d = &Rational::new(n, 2) * &(&Rational::one() + &ratio);
    let d = int_of(&d, "d")?;
    Ok((d as usize, n as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq23() -> ExactMatrix {
        ExactMatrix::from_int_rows(
            Domain::RATIONAL,
            &[vec![1, 1, 0, 0], vec![0, 0, 1, 1], vec![1, 0, 1, 0], vec![0, 1, 0, 1], vec![1, 0, 0, 1], vec![0, 1, 1, 0]],
        )
    }

    #[test]
    fn verify_bibd_examples() {
        assert_eq!(verify_bibd(&eq23()).unwrap(), DesignParams::new(4, 2, 1, 3, 6));
        assert_eq!(fano_plane().params(), DesignParams::new(7, 3, 1, 3, 7));
        let j = ExactMatrix::ones(Domain::RATIONAL, 3, 3);
        assert!(matches!(verify_bibd(&j), Err(DesignError::Degenerate(_))));
        let mut bad = eq23();
        bad.set(0, 0, Domain::RATIONAL.int(2));
        assert_eq!(verify_bibd(&bad), Err(DesignError::NotBinary(0, 0)));
    }

    #[test]
    fn all_pairs_parameters() {
        let d = all_pairs_design(4).unwrap();
        assert_eq!(d.blocks(), &[vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(all_pairs_design(3).unwrap().params(), DesignParams::new(3, 2, 1, 2, 3));
        assert_eq!(all_pairs_design(6).unwrap().params(), DesignParams::new(6, 2, 1, 5, 15));
    }

    #[test]
    fn round_robin_v4_matches_hand_enumeration() {
        let d = round_robin_resolution(4).unwrap();
        let as_sets: Vec<BTreeSet<usize>> = d.blocks().iter().map(|b| b.iter().map(|p| p + 1).collect()).collect();
        let want: Vec<BTreeSet<usize>> = [[4, 1], [2, 3], [4, 2], [3, 1], [4, 3], [1, 2]]
            .iter()
            .map(|b| b.iter().copied().collect())
            .collect();
        assert_eq!(as_sets, want);
        assert!(d.ordered_by_class());
        assert_eq!(round_robin_resolution(5), Err(DesignError::OddVertexCount(5)));
        let d6 = round_robin_resolution(6).unwrap();
        assert_eq!(d6.parallel_classes().unwrap().len(), 5);
    }

    #[test]
    fn fano_blocks_meet_once() {
        let f = fano_plane();
        for (i, a) in f.blocks().iter().enumerate() {
            for bb in &f.blocks()[i + 1..] {
                assert_eq!(a.iter().filter(|p| bb.contains(p)).count(), 1);
            }
        }
        let x = f.incidence();
        let xxt = x.mul_adjoint(&x).unwrap();
        for i in 0..7 {
            assert_eq!(xxt.get(i, i).to_rational(), Some(Rational::from_int(3)));
        }
    }

    #[test]
    fn lift_recomposes() {
        for d in [Design::from_incidence(&eq23()).unwrap(), fano_plane(), all_pairs_design(6).unwrap()] {
            let lift = lift_permutation(&d);
            assert!(lift.is_bijection());
            assert_eq!(lift.recompose(), d.incidence());
            let (i, p) = lift.preimage(0, 0);
            assert_eq!(lift.image(i, p), (0, 0));
        }
    }

    #[test]
    fn qsd_and_srg_chain() {
        let d = all_pairs_design(6).unwrap();
        let cert = verify_qsd(&d).unwrap();
        assert_eq!(cert.tuple(), [6, 2, 1, 5, 15, 0, 1]);
        let from_params = srg_params_from_qsd(&cert).unwrap();
        let from_graph = verify_srg(&cert.block_graph).unwrap();
        assert_eq!((from_params.b, from_params.a, from_params.c, from_params.mu), (15, 8, 4, 4));
        assert_eq!(from_params.theta, Some((Rational::from_int(2), Rational::from_int(-2))));
        assert_eq!(from_graph, from_params);
        assert_eq!(etf_params_from_srg(&from_params).unwrap(), (6, 16));
        assert!(matches!(verify_qsd(&fano_plane()), Err(DesignError::Symmetric(7))));
    }

    #[test]
    fn srg_examples() {
        let c5 = ExactMatrix::from_fn(Domain::RATIONAL, 5, 5, |i, j| {
            Domain::RATIONAL.int(((i + 5 - j) % 5 == 1 || (j + 5 - i) % 5 == 1) as i64)
        });
        let p = verify_srg(&c5).unwrap();
        assert_eq!((p.b, p.a, p.c, p.mu), (5, 2, 0, 1));
        assert_eq!(p.theta, None);
        assert_eq!(etf_params_from_srg(&p).unwrap(), (3, 6));
        let k4 = ExactMatrix::from_fn(Domain::RATIONAL, 4, 4, |i, j| Domain::RATIONAL.int((i != j) as i64));
        assert_eq!(verify_srg(&k4), Err(DesignError::CompleteOrEmpty));
        let p35 = srg_params_from_tuple(DesignParams::new(15, 3, 1, 7, 35), 0, 1).unwrap();
        assert_eq!((p35.b, p35.a, p35.c, p35.mu), (35, 18, 9, 9));
        assert_eq!(etf_params_from_srg(&p35).unwrap(), (15, 36));
    }

    #[test]
    fn complements() {
        let d = all_pairs_design(6).unwrap();
        let c = complement_design(&d).unwrap();
        assert_eq!(c.params(), DesignParams::new(6, 4, 6, 10, 15));
        assert_eq!(complement_design(&c).unwrap().blocks(), d.blocks());
        let cc = verify_qsd(&c).unwrap();
        // v − 2k + {x, y} with v=6, k=2, (x,y)=(0,1)
        assert_eq!((cc.x, cc.y), (2, 3));
    }
}
