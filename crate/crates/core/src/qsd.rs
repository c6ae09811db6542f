//! Quasi-symmetric designs and real ETFs, in both directions; flat-ETF feasibility.

use crate::design::{srg_params_from_tuple, verify_qsd, Design, DesignError, DesignParams, QsdCertificate};
use crate::frame::{certify_etf, gram, EtfCertificate, Frame, FrameError};
use crate::scalar::{sqrt_of_rational, Domain, ExactMatrix, QuadElem, Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QsdError {
    #[error("parameter relation fails for {slot}: expected {expected}, got {got}")]
    Mismatch { slot: &'static str, expected: String, got: String },
    #[error("w = √({0}) is irrational")]
    IrrationalW(Rational),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("frame is not real and flat")]
    NotRealFlat,
    #[error("n = d + 1 is the regular-simplex regime (d = {d}, n = {n})")]
    SimplexRegime { d: usize, n: usize },
    #[error("u = {0} must be even and at least 2")]
    OddU(usize),
    #[error("slot {0} is not an integer")]
    NonIntegralSlot(&'static str),
    #[error("precondition failed: {0}")]
    Gate(String),
    #[error("(x, y) test and the a = 2μ test disagree")]
    Disagreement,
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A QSD parameter tuple (v, k, λ, r, b, x, y).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QsdParams {
    pub design: DesignParams,
    pub x: usize,
    pub y: usize,
}

impl QsdParams {
    pub fn new(v: usize, k: usize, lambda: usize, r: usize, b: usize, x: usize, y: usize) -> Self {
        QsdParams { design: DesignParams::new(v, k, lambda, r, b), x, y }
    }

    pub fn tuple(&self) -> [usize; 7] {
        let p = self.design;
        [p.v, p.k, p.lambda, p.r, p.b, self.x, self.y]
    }

    /// k(r−1)(x+y−1) − xy(b−1) = k(k−1)(λ−1)
    pub fn relation_holds(&self) -> bool {
        crate::design::qsd_relation_holds(&self.design, self.x, self.y)
    }
}

fn q(n: usize) -> Rational {
    Rational::from_int(n as i64)
}

/// Checks w, r, λ, x, y against the ETF relations; returns w.
pub fn check_etf_relations(p: &QsdParams) -> Result<Rational, QsdError> {
    let DesignParams { v, k, lambda, r, b } = p.design;
    if v < 2 || b <= v {
        return Err(QsdError::Degenerate(format!("need b > v > 1, got v = {v}, b = {b}")));
    }
    if k == 0 || k >= v {
        return Err(QsdError::Degenerate(format!("need 0 < k < v, got k = {k}")));
    }
    let w_sq = &q(v * (b + 1 - v)) / &q(b);
    let w = w_sq.sqrt_exact().ok_or_else(|| QsdError::IrrationalW(w_sq.clone()))?;
    let check = |slot: &'static str, expected: Rational, got: usize| {
        if expected == q(got) {
            Ok(())
        } else {
            Err(QsdError::Mismatch { slot, expected: expected.to_string(), got: got.to_string() })
        }
    };
    check("r", &q(b * k) / &q(v), r)?;
    check("λ", &q(r * (k - 1)) / &q(v - 1), lambda)?;
    if r <= lambda {
        return Err(QsdError::Degenerate(format!("r = {r} ≤ λ = {lambda}")));
    }
    let rl = q(r - lambda);
    let bp1 = q(b + 1);
    let x = &q(k) - &(&(&(&q(v) + &w) * &rl) / &bp1);
    let y = &q(k) - &(&(&(&q(v) - &w) * &rl) / &bp1);
    check("x", x, p.x)?;
    check("y", y, p.y)?;
    Ok(w)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// Scalars tying a QSD to its ETF [𝟙 | δJ + εXᵀ].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsdEtfLink {
    pub params: QsdParams,
    pub w: Rational,
    pub delta: QuadElem,
    pub epsilon: QuadElem,
    pub branch: Branch,
}

impl QsdEtfLink {
    /// (δ, ε) = (1, −2): the frame is flat.
    pub fn is_flat_case(&self) -> bool {
        self.delta == QuadElem::one() && self.epsilon == QuadElem::from_rational(Rational::from_int(-2))
    }
}

/// δ = (w ± k·√((b+1)/(r−λ)))/v, ε = ∓√((b+1)/(r−λ)).
pub fn link_scalars(p: &QsdParams, branch: Branch) -> Result<QsdEtfLink, QsdError> {
    let w = check_etf_relations(p)?;
    let DesignParams { v, k, lambda, r, b } = p.design;
    let root = sqrt_of_rational(&(&q(b + 1) / &q(r - lambda))).expect("positive radicand");
    let sign = match branch {
        Branch::Plus => Rational::one(),
        Branch::Minus => Rational::from_int(-1),
    };
    let signed = root.scale(&sign);
    let delta = (&QuadElem::from_rational(w.clone()) + &signed.scale(&q(k))).scale(&q(v).recip());
    let epsilon = -&signed;
    Ok(QsdEtfLink { params: *p, w, delta, epsilon, branch })
}

/// The v×(b+1) ETF [𝟙 | δJ + εXᵀ] of a certified QSD.
pub fn etf_from_qsd(cert: &QsdCertificate, branch: Branch) -> Result<(Frame, QsdEtfLink), QsdError> {
    let p = QsdParams { design: cert.params, x: cert.x, y: cert.y };
    let link = link_scalars(&p, branch)?;
    let DesignParams { v, b, .. } = p.design;
    let t = link.delta.radicand().max(link.epsilon.radicand());
    let dom = if t == 1 { Domain::REAL_SIGNS } else { Domain::Quadratic { radicand: t } };
    let x = incidence_of_cert(cert)?;
    let lift = |e: QuadElem| -> Scalar {
        match dom {
            Domain::Quadratic { .. } => Scalar::Quad(e),
            _ => dom.rational(e.to_rational().expect("rational case")),
        }
    };
    let de = &link.delta + &link.epsilon;
    let m = ExactMatrix::from_fn(dom, v, b + 1, |i, j| {
        if j == 0 {
            dom.one()
        } else if x[(j - 1) * v + i] {
            lift(de.clone())
        } else {
            lift(link.delta.clone())
        }
    });
    let frame = Frame::new(m)?;
    certify_etf(&frame)?;
    let g = gram(&frame);
    let w = dom.rational(link.w.clone());
    if let Some(j) = (1..b + 1).find(|&j| *g.get(0, j) != w) {
        return Err(QsdError::Mismatch {
            slot: "⟨φ_1,φ_j⟩",
            expected: link.w.to_string(),
            got: format!("{} at j = {j}", g.get(0, j)),
        });
    }
    Ok((frame, link))
}

fn incidence_of_cert(cert: &QsdCertificate) -> Result<Vec<bool>, QsdError> {
    Ok(cert.incidence.entries().iter().map(|e| !e.is_zero()).collect())
}

/// Row and column signs that put a ±1 matrix in the form [𝟙 | …] with
/// nonnegative inner products against the first column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSigning {
    pub matrix: ExactMatrix,
    pub row_signs: Vec<i8>,
    pub col_signs: Vec<i8>,
}

pub fn canonical_sign(m: &ExactMatrix) -> Result<CanonicalSigning, QsdError> {
    let (d, n) = m.shape();
    let vals = m.to_i64_entries().filter(|v| v.iter().all(|&e| e == 1 || e == -1)).ok_or(QsdError::NotRealFlat)?;
    let row_signs: Vec<i8> = (0..d).map(|i| vals[i * n] as i8).collect();
    let col_signs: Vec<i8> = (0..n)
        .map(|j| {
            let ip: i64 = (0..d).map(|i| row_signs[i] as i64 * vals[i * n + j]).sum();
            if ip < 0 { -1 } else { 1 }
        })
        .collect();
    let out: Vec<i64> = (0..d * n)
        .map(|e| vals[e] * row_signs[e / n] as i64 * col_signs[e % n] as i64)
        .collect();
    Ok(CanonicalSigning { matrix: ExactMatrix::from_ints(Domain::REAL_SIGNS, d, n, &out), row_signs, col_signs })
}

/// What a real flat ETF yields: the QSD behind its canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatQsd {
    pub certificate: QsdCertificate,
    pub w: usize,
    pub signing: CanonicalSigning,
}

/// Canonically signs, reads X from Φ = [𝟙 | J − 2Xᵀ] and verifies the QSD.
pub fn qsd_from_flat_etf(f: &Frame) -> Result<FlatQsd, QsdError> {
    let (d, n) = (f.d(), f.n());
    if n == d + 1 {
        return Err(QsdError::SimplexRegime { d, n });
    }
    if d < 2 || n < d + 2 {
        return Err(QsdError::Gate(format!("need n − 1 > d > 1, got d = {d}, n = {n}")));
    }
    let cert: EtfCertificate = certify_etf(f)?;
    if !cert.flat || f.row_weights().is_some() {
        return Err(QsdError::NotRealFlat);
    }
    let signing = canonical_sign(f.synthesis())?;
    let w_sq = &q(d * (n - d)) / &q(n - 1);
    let w = w_sq
        .sqrt_exact()
        .filter(Rational::is_integer)
        .and_then(|w| w.to_i64())
        .ok_or(QsdError::NonIntegralSlot("w"))? as usize;
    if d % 2 != 0 || !w.is_multiple_of(2) || n % 16 != 0 {
        return Err(QsdError::Gate(format!("d = {d}, w = {w} must be even and 16 | n = {n}")));
    }
    let (v, b) = (d, n - 1);
    let k = (v - w) / 2;
    let (x, y) = ((v - 3 * w) / 4, (v - w) / 4);
    if 4 * x != v - 3 * w || 4 * y != v - w {
        return Err(QsdError::NonIntegralSlot("x or y"));
    }
    let s = signing.matrix.to_i64_entries().expect("signs");
    let xt: Vec<i64> = (0..b * v)
        .map(|e| {
            let (j, i) = (e / v, e % v);
            (1 - s[i * n + j + 1]) / 2
        })
        .collect();
    let design = Design::from_incidence(&ExactMatrix::from_ints(Domain::RATIONAL, b, v, &xt))?;
    let qsd = verify_qsd(&design)?;
    let r = b * k / v;
    let want = QsdParams::new(v, k, r * (k - 1) / (v - 1), r, b, x, y);
    let got = QsdParams { design: qsd.params, x: qsd.x, y: qsd.y };
    if got != want {
        return Err(QsdError::Mismatch {
            slot: "QSD parameters",
            expected: format!("{:?}", want.tuple()),
            got: format!("{:?}", got.tuple()),
        });
    }
    Ok(FlatQsd { certificate: qsd, w, signing })
}

/// The two QSD families (A, B) attached to an even u ≥ 2.
pub fn corollary42_params(u: usize) -> Result<(QsdParams, QsdParams), QsdError> {
    if u < 2 || !u.is_multiple_of(2) {
        return Err(QsdError::OddU(u));
    }
    let a = QsdParams::new(2 * u * u - u, u * u - u, u * u - u - 1, 2 * u * u - u - 1, 4 * u * u - 1, u * (u - 2) / 2, u * (u - 1) / 2);
    let b = QsdParams::new(2 * u * u + u, u * u, u * u - u, 2 * u * u - u, 4 * u * u - 1, u * (u - 1) / 2, u * u / 2);
    Ok((a, b))
}

fn exact_div(num: i128, den: i128, slot: &'static str) -> Result<usize, QsdError> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(QsdError::NonIntegralSlot(slot));
    }
    Ok((num / den) as usize)
}

/// QSD parameters and w from RBIBD(v̂, k̂, r̂, b̂).
pub fn corollary43_params(vh: usize, kh: usize, rh: usize, bh: usize) -> Result<(QsdParams, usize), QsdError> {
    if kh < 2 || vh * rh != bh * kh {
        return Err(QsdError::Gate(format!("need k̂ ≥ 2 and v̂r̂ = b̂k̂, got ({vh},{kh},{rh},{bh})")));
    }
    let (v, k, r) = (vh as i128, kh as i128, rh as i128);
    let out = QsdParams::new(
        bh,
        exact_div(v * (r - 1), 2 * k, "k")?,
        exact_div(v * (r - 1) - 2 * k, 4, "λ")?,
        exact_div((r - 1) * (v + k - 1), 2, "r")?,
        exact_div(r * (v + k - 1), 1, "b")?,
        exact_div(v * (r - 3), 4 * k, "x")?,
        exact_div(v * (r - 1), 4 * k, "y")?,
    );
    Ok((out, exact_div(v, k, "w")?))
}

/// One of the three radicals of the flatness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radical {
    pub radicand: Rational,
    pub value: Option<u64>,
}

impl Radical {
    fn of(radicand: Rational) -> Self {
        let value = radicand
            .sqrt_exact()
            .filter(Rational::is_integer)
            .and_then(|s| s.to_i64())
            .map(|s| s as u64);
        Radical { radicand, value }
    }

    pub fn is_integer(&self) -> bool {
        self.value.is_some()
    }

    pub fn is_odd(&self) -> bool {
        self.value.is_some_and(|v| v % 2 == 1)
    }

    pub fn is_even(&self) -> bool {
        self.value.is_some_and(|v| v % 2 == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub d: usize,
    pub n: usize,
    pub q1: Radical,
    pub q2: Radical,
    pub w: Radical,
    pub n_mod_16: usize,
    pub pass: bool,
}

/// Necessary conditions for a real flat ETF with parameters (d, n).
pub fn flat_feasibility(d: usize, n: usize) -> Result<FeasibilityReport, QsdError> {
    if !(d > 1 && n > d + 1) {
        return Err(QsdError::Gate(format!("need n − 1 > d > 1, got d = {d}, n = {n}")));
    }
    let q1 = Radical::of(&q(d * (n - 1)) / &q(n - d));
    let q2 = Radical::of(&q((n - d) * (n - 1)) / &q(d));
    let w = Radical::of(&q(d * (n - d)) / &q(n - 1));
    let pass = q1.is_odd() && q2.is_odd() && w.is_even() && n.is_multiple_of(16);
    Ok(FeasibilityReport { d, n, q1, q2, w, n_mod_16: n % 16, pass })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtfKind {
    Flat,
    Hadamard,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GerzonReport {
    pub checks: Vec<(String, bool)>,
}

impl GerzonReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn violated(&self) -> Option<&str> {
        self.checks.iter().find(|(_, ok)| !ok).map(|(s, _)| s.as_str())
    }
}

/// Upper and (for Hadamard ETFs) lower bounds on n, as integer inequalities.
pub fn gerzon_bounds(d: usize, n: usize, field: Field, kind: EtfKind) -> Result<GerzonReport, QsdError> {
    if !(d > 1 && n > d + 1) {
        return Err(QsdError::Gate(format!("need 1 < d < n − 1, got d = {d}, n = {n}")));
    }
    let (d, n) = (d as i128, n as i128);
    let mut checks = Vec::new();
    match field {
        Field::Complex => {
            if kind == EtfKind::Hadamard {
                let t = n - d - 1;
                checks.push(("n ≥ d + √d + 1".to_string(), t >= 0 && t * t >= d));
            }
            checks.push(("n ≤ d² − d + 1".to_string(), n <= d * d - d + 1));
        }
        Field::Real => {
            if kind == EtfKind::Hadamard {
                let t = 2 * n - 2 * d - 3;
                checks.push(("n ≥ d + √(2d + 1/4) + 3/2".to_string(), t >= 0 && t * t > 8 * d));
            }
            checks.push(("n ≤ d²/2 − d/2 + 1".to_string(), 2 * n <= d * d - d + 2));
        }
    }
    Ok(GerzonReport { checks })
}

/// The parameter test, cross-checked against a = 2μ for the block graph.
pub fn qsd_params_give_etf(p: &QsdParams) -> Result<bool, QsdError> {
    let by_params = check_etf_relations(p).is_ok();
    let by_graph = srg_params_from_tuple(p.design, p.x, p.y).map(|s| s.a == 2 * s.mu).unwrap_or(false);
    if by_params != by_graph {
        return Err(QsdError::Disagreement);
    }
    Ok(by_params)
}

pub fn qsd_gives_etf(cert: &QsdCertificate) -> Result<bool, QsdError> {
    qsd_params_give_etf(&QsdParams { design: cert.params, x: cert.x, y: cert.y })
}
