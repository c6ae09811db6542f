//! Dense exact matrices and their products.

use std::fmt;

use num_integer::Integer;

use super::cyclotomic::{self, CycloElem};
use super::quadratic::QuadElem;
use super::rational::Rational;
use super::{Domain, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("incompatible domains {0} and {1}")]
    IncompatibleDomains(Domain, Domain),
    #[error("expected {expected} entries, got {got}")]
    EntryCount { expected: usize, got: usize },
    #[error("entry {0} does not belong to {1}")]
    ForeignEntry(String, Domain),
}

/// Which operand of a product is conjugate-transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductMode {
    /// `A·B`
    Plain,
    /// `A·B*`
    RightAdjoint,
    /// `A*·B`
    LeftAdjoint,
}

/// A dense row-major matrix whose entries all live in one [`Domain`].
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    domain: Domain,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

fn fits(domain: Domain, s: &Scalar) -> bool {
    match (domain, s) {
        (Domain::Cyclotomic { order }, Scalar::Cyclo(z)) => z.order() == order,
        (Domain::Quadratic { radicand }, Scalar::Quad(z)) => z.radicand() == 1 || z.radicand() == radicand,
        _ => false,
    }
}

impl ExactMatrix {
    pub fn new(domain: Domain, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount { expected: rows * cols, got: entries.len() });
        }
        let mut entries = entries;
        for e in entries.iter_mut() {
            if !fits(domain, e) {
                let embeds = match (domain, &*e) {
                    (Domain::Cyclotomic { order }, Scalar::Cyclo(z)) => order % z.order() == 0,
                    _ => e.to_rational().is_some(),
                };
                if !embeds {
                    return Err(MatrixError::ForeignEntry(e.to_string(), domain));
                }
                *e = domain.coerce(e);
            }
        }
        Ok(ExactMatrix { domain, rows, cols, entries })
    }

    pub fn from_fn(domain: Domain, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = f(i, j);
                entries.push(if fits(domain, &s) { s } else { domain.coerce(&s) });
            }
        }
        ExactMatrix { domain, rows, cols, entries }
    }

    pub fn zeros(domain: Domain, rows: usize, cols: usize) -> Self {
        ExactMatrix { domain, rows, cols, entries: vec![domain.zero(); rows * cols] }
    }

    pub fn identity(domain: Domain, n: usize) -> Self {
        let one = domain.one();
        let zero = domain.zero();
        Self::from_fn(domain, n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    /// All-ones matrix `J`.
    pub fn ones(domain: Domain, rows: usize, cols: usize) -> Self {
        ExactMatrix { domain, rows, cols, entries: vec![domain.one(); rows * cols] }
    }

    /// Integer matrix from row-major values.
    pub fn from_ints(domain: Domain, rows: usize, cols: usize, values: &[i64]) -> Self {
        assert_eq!(values.len(), rows * cols, "value count must match shape");
        ExactMatrix {
            domain,
            rows,
            cols,
            entries: values.iter().map(|&v| domain.int(v)).collect(),
        }
    }

    /// Integer matrix from nested rows; panics on ragged input.
    pub fn from_int_rows(domain: Domain, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_ints(domain, rows.len(), cols, &flat)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        let value = if fits(self.domain, &value) { value } else { self.domain.coerce(&value) };
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self::from_fn(self.domain, self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.domain, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn conjugate(&self) -> Self {
        if self.domain.is_real() {
            return self.clone();
        }
        self.map(Scalar::conjugate)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        if self.domain.is_real() {
            return self.transpose();
        }
        Self::from_fn(self.domain, self.cols, self.rows, |i, j| self.get(j, i).conjugate())
    }

    pub fn scale(&self, q: &Rational) -> Self {
        self.map(|s| s.scale(q))
    }

    pub fn scale_by(&self, c: &Scalar) -> Result<Self, MatrixError> {
        let (a, c) = self.with_scalar(c)?;
        Ok(a.map(|s| s * &c))
    }

    pub fn neg(&self) -> Self {
        self.map(|s| -s)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn with_scalar(&self, c: &Scalar) -> Result<(ExactMatrix, Scalar), MatrixError> {
        let cd = scalar_domain(c);
        let dom = self
            .domain
            .unify(cd)
            .ok_or(MatrixError::IncompatibleDomains(self.domain, cd))?;
        Ok((self.lift_to(dom)?, dom.coerce(c)))
    }

    /// Re-express the matrix in a larger domain.
    pub fn lift_to(&self, domain: Domain) -> Result<Self, MatrixError> {
        if domain == self.domain {
            return Ok(self.clone());
        }
        match self.domain.unify(domain) {
            Some(d) if d == domain => Ok(ExactMatrix {
                domain,
                rows: self.rows,
                cols: self.cols,
                entries: self.entries.iter().map(|e| domain.coerce(e)).collect(),
            }),
            _ => {
                // Rational-valued matrices embed anywhere.
                if self.entries.iter().all(|e| e.to_rational().is_some()) {
                    Ok(ExactMatrix {
                        domain,
                        rows: self.rows,
                        cols: self.cols,
                        entries: self.entries.iter().map(|e| domain.coerce(e)).collect(),
                    })
                } else {
                    Err(MatrixError::IncompatibleDomains(self.domain, domain))
                }
            }
        }
    }

    /// Smallest domain holding every entry: cyclotomic orders shrink to 1 or 2
    /// when all entries are rational, quadratic radicands collapse to 1.
    pub fn simplify_domain(&self) -> Self {
        if self.entries.iter().all(|e| e.to_rational().is_some()) {
            let target = match self.domain {
                Domain::Cyclotomic { order } if order <= 2 => return self.clone(),
                Domain::Cyclotomic { .. } => Domain::REAL_SIGNS,
                Domain::Quadratic { .. } => Domain::Quadratic { radicand: 1 },
            };
            return ExactMatrix {
                domain: target,
                rows: self.rows,
                cols: self.cols,
                entries: self.entries.iter().map(|e| target.coerce(e)).collect(),
            };
        }
        self.clone()
    }

    fn unify_pair(&self, other: &Self) -> Result<(ExactMatrix, ExactMatrix), MatrixError> {
        let dom = match self.domain.unify(other.domain) {
            Some(d) => d,
            None => {
                // quadratic vs cyclotomic: allowed only when one side is rational
                if other.entries.iter().all(|e| e.to_rational().is_some()) {
                    self.domain
                } else if self.entries.iter().all(|e| e.to_rational().is_some()) {
                    other.domain
                } else {
                    return Err(MatrixError::IncompatibleDomains(self.domain, other.domain));
                }
            }
        };
        Ok((self.lift_to(dom)?, other.lift_to(dom)?))
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<(), MatrixError> {
        if self.shape() != other.shape() {
            return Err(MatrixError::DimensionMismatch { op, left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other, "add")?;
        let (a, b) = self.unify_pair(other)?;
        Ok(ExactMatrix {
            domain: a.domain,
            rows: a.rows,
            cols: a.cols,
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.check_same_shape(other, "sub")?;
        let (a, b) = self.unify_pair(other)?;
        Ok(ExactMatrix {
            domain: a.domain,
            rows: a.rows,
            cols: a.cols,
            entries: a.entries.iter().zip(&b.entries).map(|(x, y)| x - y).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, MatrixError> {
        mat_mul_adjoint(self, other, ProductMode::Plain)
    }

    /// `self · other*`
    pub fn mul_adjoint(&self, other: &Self) -> Result<Self, MatrixError> {
        mat_mul_adjoint(self, other, ProductMode::RightAdjoint)
    }

    /// `self* · other`
    pub fn adjoint_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        mat_mul_adjoint(self, other, ProductMode::LeftAdjoint)
    }

    pub fn kron(&self, other: &Self) -> Result<Self, MatrixError> {
        let (a, b) = self.unify_pair(other)?;
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for i1 in 0..a.rows {
            for i2 in 0..b.rows {
                for j1 in 0..a.cols {
                    let x = a.get(i1, j1);
                    for j2 in 0..b.cols {
                        entries.push(x * b.get(i2, j2));
                    }
                }
            }
        }
        Ok(ExactMatrix { domain: a.domain, rows, cols, entries })
    }

    /// Stack matrices vertically (all must share the column count).
    pub fn vstack(parts: &[&ExactMatrix]) -> Result<Self, MatrixError> {
        let first = parts.first().expect("vstack of nothing");
        let mut dom = first.domain;
        for p in parts {
            if p.cols != first.cols {
                return Err(MatrixError::DimensionMismatch { op: "vstack", left: first.shape(), right: p.shape() });
            }
            dom = dom.unify(p.domain).ok_or(MatrixError::IncompatibleDomains(dom, p.domain))?;
        }
        let mut entries = Vec::new();
        let mut rows = 0;
        for p in parts {
            entries.extend(p.lift_to(dom)?.entries);
            rows += p.rows;
        }
        Ok(ExactMatrix { domain: dom, rows, cols: first.cols, entries })
    }

    /// Concatenate matrices horizontally (all must share the row count).
    pub fn hstack(parts: &[&ExactMatrix]) -> Result<Self, MatrixError> {
        let ts: Vec<ExactMatrix> = parts.iter().map(|p| p.transpose()).collect();
        let refs: Vec<&ExactMatrix> = ts.iter().collect();
        Self::vstack(&refs)
            .map(|m| m.transpose())
            .map_err(|e| match e {
                MatrixError::DimensionMismatch { left, right, .. } => MatrixError::DimensionMismatch {
                    op: "hstack",
                    left: (left.1, left.0),
                    right: (right.1, right.0),
                },
                other => other,
            })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            entries.extend_from_slice(self.row(i));
        }
        ExactMatrix { domain: self.domain, rows: idx.len(), cols: self.cols, entries }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        Self::from_fn(self.domain, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Returns `c` when the matrix equals `c·I`.
    pub fn scalar_identity_factor(&self) -> Option<Scalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if i == j {
                    if *e != c {
                        return None;
                    }
                } else if !e.is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// First position where `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.rows * self.cols)
            .find(|&k| self.entries[k] != other.entries[k])
            .map(|k| (k / self.cols, k % self.cols))
    }

    /// Row-major integer values when every entry is a rational integer fitting i64.
    pub fn to_i64_entries(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|e| e.to_rational().and_then(|q| if q.is_integer() { q.to_i64() } else { None }))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.to_i64_entries().is_some()
    }

    pub fn is_flat(&self) -> bool {
        self.entries.iter().all(Scalar::is_unimodular)
    }

    pub fn trace(&self) -> Scalar {
        let mut acc = self.domain.zero();
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }
}

pub(crate) fn scalar_domain(s: &Scalar) -> Domain {
    match s {
        Scalar::Cyclo(z) => Domain::Cyclotomic { order: z.order() },
        Scalar::Quad(z) => Domain::Quadratic { radicand: z.radicand() },
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.domain)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// product kernels

/// Coefficient slots of an entry in the domain's basis.
fn slots(domain: Domain, s: &Scalar) -> Vec<Rational> {
    match (domain, s) {
        (Domain::Cyclotomic { .. }, Scalar::Cyclo(z)) => z.coeffs().to_vec(),
        (Domain::Quadratic { radicand: 1 }, Scalar::Quad(z)) => vec![z.rational_part().clone()],
        (Domain::Quadratic { .. }, Scalar::Quad(z)) => vec![z.rational_part().clone(), z.surd_part().clone()],
        _ => unreachable!("entry outside its matrix domain"),
    }
}

/// Integer coefficients scaled by a common denominator.
struct IntPacked {
    den: i64,
    max_abs: u64,
    data: Vec<i64>,
}

const INT_LIMIT: u64 = 1 << 40;

fn pack_int(coeffs: &[Rational]) -> Option<IntPacked> {
    let mut den: i64 = 1;
    for c in coeffs {
        let (_, d) = c.to_i64_pair()?;
        if d != 1 {
            den = den.checked_mul(d / den.gcd(&d))?;
            if den as u64 > INT_LIMIT {
                return None;
            }
        }
    }
    let mut data = Vec::with_capacity(coeffs.len());
    let mut max_abs = 0u64;
    for c in coeffs {
        let (n, d) = c.to_i64_pair()?;
        let v = n.checked_mul(den / d)?;
        let a = v.unsigned_abs();
        if a > INT_LIMIT {
            return None;
        }
        max_abs = max_abs.max(a);
        data.push(v);
    }
    Some(IntPacked { den, max_abs, data })
}

/// Turns an accumulated raw product polynomial into a canonical entry.
fn finish(domain: Domain, raw: Vec<Rational>) -> Scalar {
    match domain {
        Domain::Cyclotomic { order } => {
            if raw.len() == 1 {
                Scalar::Cyclo(CycloElem::from_coeffs(order, raw))
            } else {
                let coeffs = cyclotomic::context(order).reduce(order, &raw);
                Scalar::Cyclo(CycloElem::from_coeffs(order, coeffs))
            }
        }
        Domain::Quadratic { radicand } => {
            if raw.len() == 1 {
                Scalar::Quad(QuadElem::from_rational(raw.into_iter().next().unwrap()))
            } else {
                // (a + b s)(c + e s) with s² = t
                let t = Rational::from_int(radicand as i64);
                let a = &raw[0] + &(&raw[2] * &t);
                Scalar::Quad(QuadElem::new(radicand, a, raw[1].clone()))
            }
        }
    }
}

/// Exact `A·B`, `A·B*` or `A*·B` after lifting both operands to a common domain.
pub fn mat_mul_adjoint(a: &ExactMatrix, b: &ExactMatrix, mode: ProductMode) -> Result<ExactMatrix, MatrixError> {
    let (a, b) = a.unify_pair(b)?;
    // Reduce every mode to left · right with `right` stored column-major.
    let (left, right_t) = match mode {
        ProductMode::Plain => (a, b.transpose()),
        ProductMode::RightAdjoint => (a, b.conjugate()),
        ProductMode::LeftAdjoint => (a.adjoint(), b.transpose()),
    };
    if left.cols != right_t.cols {
        let right_shape = match mode {
            ProductMode::RightAdjoint => (right_t.cols, right_t.rows),
            _ => (right_t.cols, right_t.rows),
        };
        return Err(MatrixError::DimensionMismatch { op: "product", left: left.shape(), right: right_shape });
    }
    Ok(product_rows_by_rows(&left, &right_t))
}

/// `out(i,j) = Σ_k L(i,k)·R(j,k)`.
fn product_rows_by_rows(l: &ExactMatrix, r: &ExactMatrix) -> ExactMatrix {
    let domain = l.domain;
    let deg = domain.degree();
    let inner = l.cols;
    let (rows, cols) = (l.rows, r.rows);
    let lc: Vec<Rational> = l.entries.iter().flat_map(|e| slots(domain, e)).collect();
    let rc: Vec<Rational> = r.entries.iter().flat_map(|e| slots(domain, e)).collect();
    let raw_len = 2 * deg - 1;

    if let (Some(lp), Some(rp)) = (pack_int(&lc), pack_int(&rc)) {
        let den = lp.den as i128 * rp.den as i128;
        let bound = (lp.max_abs as u128) * (rp.max_abs as u128) * (inner as u128) * (deg as u128);
        let mut entries = Vec::with_capacity(rows * cols);
        if deg == 1 && bound < (1u128 << 62) {
            for i in 0..rows {
                let li = &lp.data[i * inner..(i + 1) * inner];
                for j in 0..cols {
                    let rj = &rp.data[j * inner..(j + 1) * inner];
                    let s: i64 = li.iter().zip(rj).map(|(x, y)| x * y).sum();
                    entries.push(finish(domain, vec![Rational::from_i128(s as i128, den)]));
                }
            }
        } else {
            let mut raw = vec![0i128; raw_len];
            for i in 0..rows {
                let li = &lp.data[i * inner * deg..(i + 1) * inner * deg];
                for j in 0..cols {
                    let rj = &rp.data[j * inner * deg..(j + 1) * inner * deg];
                    raw.iter_mut().for_each(|x| *x = 0);
                    for k in 0..inner {
                        let x = &li[k * deg..(k + 1) * deg];
                        let y = &rj[k * deg..(k + 1) * deg];
                        for (s, &xs) in x.iter().enumerate() {
                            if xs == 0 {
                                continue;
                            }
                            for (t, &yt) in y.iter().enumerate() {
                                raw[s + t] += xs as i128 * yt as i128;
                            }
                        }
                    }
                    let coeffs = raw.iter().map(|&v| Rational::from_i128(v, den)).collect();
                    entries.push(finish(domain, coeffs));
                }
            }
        }
        return ExactMatrix { domain, rows, cols, entries };
    }

    let mut entries = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let mut raw = vec![Rational::zero(); raw_len];
            for k in 0..inner {
                let x = &lc[(i * inner + k) * deg..(i * inner + k + 1) * deg];
                let y = &rc[(j * inner + k) * deg..(j * inner + k + 1) * deg];
                for (s, xs) in x.iter().enumerate() {
                    if xs.is_zero() {
                        continue;
                    }
                    for (t, yt) in y.iter().enumerate() {
                        if !yt.is_zero() {
                            raw[s + t] += &(xs * yt);
                        }
                    }
                }
            }
            entries.push(finish(domain, raw));
        }
    }
    ExactMatrix { domain, rows, cols, entries }
}
