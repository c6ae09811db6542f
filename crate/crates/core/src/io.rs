//! Canonical JSON and CSV encodings for matrices, designs, certificates and reports.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::design::Design;
use crate::frame::{EtfCertificate, Frame};
use crate::qsd::{FeasibilityReport, GerzonReport, Radical};
use crate::scalar::{reduce_cyclotomic, Domain, ExactMatrix, QuadElem, Rational, Scalar};

pub const MATRIX_SCHEMA: &str = "etf-forge/matrix/v1";
pub const DESIGN_SCHEMA: &str = "etf-forge/design/v1";
pub const CERTIFICATE_SCHEMA: &str = "etf-forge/certificate/v1";
pub const FEASIBILITY_SCHEMA: &str = "etf-forge/feasibility/v1";
pub const GERZON_SCHEMA: &str = "etf-forge/gerzon/v1";
pub const RECIPE_SCHEMA: &str = "etf-forge/recipe/v1";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("expected schema {expected}, found {found}")]
    Schema { expected: &'static str, found: String },
    #[error("bad field `{0}`")]
    Field(String),
    #[error("{0}")]
    Invalid(String),
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value, IoError> {
    v.get(name).ok_or_else(|| IoError::Field(name.to_string()))
}

fn usize_field(v: &Value, name: &str) -> Result<usize, IoError> {
    field(v, name)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| IoError::Field(name.to_string()))
}

fn check_schema(v: &Value, expected: &'static str) -> Result<(), IoError> {
    match v.get("schema").and_then(Value::as_str) {
        Some(s) if s == expected => Ok(()),
        other => Err(IoError::Schema { expected, found: other.unwrap_or("nothing").to_string() }),
    }
}

/// Sorted keys, no whitespace, trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("Value always serializes");
    s.push('\n');
    s
}

pub fn parse_json(text: &str) -> Result<Value, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Json(e.to_string()))
}

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn int_from_json(v: &Value) -> Result<BigInt, IoError> {
    if let Some(x) = v.as_i64() {
        return Ok(BigInt::from(x));
    }
    v.as_str()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| IoError::Invalid(format!("not an integer: {v}")))
}

/// [num, den]
pub fn rational_to_json(q: &Rational) -> Value {
    json!([int_to_json(&q.numer()), int_to_json(&q.denom())])
}

pub fn rational_from_json(v: &Value) -> Result<Rational, IoError> {
    match v.as_array().map(Vec::as_slice) {
        Some([n, d]) => {
            let d = int_from_json(d)?;
            if d == BigInt::from(0) {
                return Err(IoError::Invalid("zero denominator".into()));
            }
            Ok(Rational::from_bigints(int_from_json(n)?, d))
        }
        _ => Err(IoError::Invalid(format!("not a rational: {v}"))),
    }
}

pub fn domain_to_json(d: Domain) -> Value {
    serde_json::to_value(d).expect("Domain serializes")
}

pub fn domain_from_json(v: &Value) -> Result<Domain, IoError> {
    serde_json::from_value(v.clone()).map_err(|e| IoError::Field(format!("domain: {e}")))
}

/// Cyclotomic: [[exp, num, den], …]; quadratic: [a_num, a_den, b_num, b_den].
pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Cyclo(z) => Value::Array(
            z.terms()
                .iter()
                .map(|(e, c)| json!([e, int_to_json(&c.numer()), int_to_json(&c.denom())]))
                .collect(),
        ),
        Scalar::Quad(z) => {
            let (a, b) = (z.rational_part(), z.surd_part());
            json!([int_to_json(&a.numer()), int_to_json(&a.denom()), int_to_json(&b.numer()), int_to_json(&b.denom())])
        }
    }
}

pub fn scalar_from_json(v: &Value, dom: Domain) -> Result<Scalar, IoError> {
    let arr = v.as_array().ok_or_else(|| IoError::Invalid(format!("entry is not an array: {v}")))?;
    match dom {
        Domain::Cyclotomic { order } => {
            let mut raw = Vec::with_capacity(arr.len());
            for t in arr {
                match t.as_array().map(Vec::as_slice) {
                    Some([e, n, d]) => {
                        let e = e.as_i64().ok_or_else(|| IoError::Invalid(format!("bad exponent {e}")))?;
                        raw.push((e, rational_from_json(&json!([n, d]))?));
                    }
                    _ => return Err(IoError::Invalid(format!("bad cyclotomic term {t}"))),
                }
            }
            Ok(Scalar::Cyclo(reduce_cyclotomic(&raw, order)))
        }
        Domain::Quadratic { radicand } => match arr.as_slice() {
            [an, ad, bn, bd] => {
                let a = rational_from_json(&json!([an, ad]))?;
                let b = rational_from_json(&json!([bn, bd]))?;
                if radicand == 1 && !b.is_zero() {
                    return Err(IoError::Invalid("surd part in Q".into()));
                }
                Ok(Scalar::Quad(QuadElem::new(radicand, a, b)))
            }
            _ => Err(IoError::Invalid(format!("bad quadratic entry {v}"))),
        },
    }
}

pub fn matrix_to_json(m: &ExactMatrix, row_weights: Option<&[Rational]>) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(MATRIX_SCHEMA));
    obj.insert("domain".into(), domain_to_json(m.domain()));
    obj.insert("rows".into(), json!(m.rows()));
    obj.insert("cols".into(), json!(m.cols()));
    obj.insert("entries".into(), Value::Array(m.entries().iter().map(scalar_to_json).collect()));
    if let Some(w) = row_weights {
        obj.insert("row_weights".into(), Value::Array(w.iter().map(rational_to_json).collect()));
    }
    Value::Object(obj)
}

pub fn matrix_from_json(v: &Value) -> Result<(ExactMatrix, Option<Vec<Rational>>), IoError> {
    check_schema(v, MATRIX_SCHEMA)?;
    let dom = domain_from_json(field(v, "domain")?)?;
    let (rows, cols) = (usize_field(v, "rows")?, usize_field(v, "cols")?);
    let entries = field(v, "entries")?.as_array().ok_or_else(|| IoError::Field("entries".into()))?;
    let parsed = entries.iter().map(|e| scalar_from_json(e, dom)).collect::<Result<Vec<_>, _>>()?;
    let m = ExactMatrix::new(dom, rows, cols, parsed).map_err(|e| IoError::Invalid(e.to_string()))?;
    let weights = match v.get("row_weights") {
        None => None,
        Some(w) => Some(
            w.as_array()
                .ok_or_else(|| IoError::Field("row_weights".into()))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok((m, weights))
}

pub fn frame_to_json(f: &Frame) -> Value {
    matrix_to_json(f.synthesis(), f.row_weights())
}

pub fn frame_from_json(v: &Value) -> Result<Frame, IoError> {
    let (m, w) = matrix_from_json(v)?;
    Frame::weighted(m, w).map_err(|e| IoError::Invalid(e.to_string()))
}

/// Vertices and parallel-class block indices are 1-based on disk.
pub fn design_to_json(d: &Design) -> Value {
    let mut obj = Map::new();
    obj.insert("schema".into(), json!(DESIGN_SCHEMA));
    obj.insert("v".into(), json!(d.params().v));
    let blocks: Vec<Vec<usize>> = d.blocks().iter().map(|b| b.iter().map(|p| p + 1).collect()).collect();
    obj.insert("blocks".into(), json!(blocks));
    if let Some(cls) = d.parallel_classes() {
        let cls: Vec<Vec<usize>> = cls.iter().map(|c| c.iter().map(|i| i + 1).collect()).collect();
        obj.insert("parallel_classes".into(), json!(cls));
    }
    Value::Object(obj)
}

fn one_based_lists(v: &Value, name: &str) -> Result<Vec<Vec<usize>>, IoError> {
    let lists: Vec<Vec<usize>> =
        serde_json::from_value(v.clone()).map_err(|_| IoError::Field(name.to_string()))?;
    if lists.iter().flatten().any(|&x| x == 0) {
        return Err(IoError::Invalid(format!("{name} are 1-based")));
    }
    Ok(lists.into_iter().map(|l| l.into_iter().map(|x| x - 1).collect()).collect())
}

pub fn design_from_json(v: &Value) -> Result<Design, IoError> {
    check_schema(v, DESIGN_SCHEMA)?;
    let n = usize_field(v, "v")?;
    let blocks = one_based_lists(field(v, "blocks")?, "blocks")?;
    let d = Design::from_blocks(n, blocks).map_err(|e| IoError::Invalid(e.to_string()))?;
    match v.get("parallel_classes") {
        None => Ok(d),
        Some(c) => d
            .with_parallel_classes(one_based_lists(c, "parallel_classes")?)
            .map_err(|e| IoError::Invalid(e.to_string())),
    }
}

pub fn certificate_to_json(c: &EtfCertificate) -> Value {
    json!({
        "schema": CERTIFICATE_SCHEMA,
        "d": c.d,
        "n": c.n,
        "beta": rational_to_json(&c.beta),
        "alpha": rational_to_json(&c.alpha),
        "gamma_sq": rational_to_json(&c.gamma_sq),
        "welch_equality": c.welch_equality,
        "flat": c.flat,
        "domain": domain_to_json(c.domain),
    })
}

pub fn certificate_from_json(v: &Value) -> Result<EtfCertificate, IoError> {
    check_schema(v, CERTIFICATE_SCHEMA)?;
    let flag = |name: &str| field(v, name)?.as_bool().ok_or_else(|| IoError::Field(name.to_string()));
    Ok(EtfCertificate {
        d: usize_field(v, "d")?,
        n: usize_field(v, "n")?,
        beta: rational_from_json(field(v, "beta")?)?,
        alpha: rational_from_json(field(v, "alpha")?)?,
        gamma_sq: rational_from_json(field(v, "gamma_sq")?)?,
        welch_equality: flag("welch_equality")?,
        flat: flag("flat")?,
        domain: domain_from_json(field(v, "domain")?)?,
    })
}

fn radical_to_json(r: &Radical, parity: &str, want_odd: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("integer".into(), json!(r.is_integer()));
    obj.insert("value".into(), r.value.map_or(Value::Null, |x| json!(x)));
    obj.insert("radicand".into(), rational_to_json(&r.radicand));
    obj.insert(parity.into(), json!(if want_odd { r.is_odd() } else { r.is_even() }));
    Value::Object(obj)
}

fn radical_from_json(v: &Value) -> Result<Radical, IoError> {
    let radicand = rational_from_json(field(v, "radicand")?)?;
    let value = match field(v, "value")? {
        Value::Null => None,
        x => Some(x.as_u64().ok_or_else(|| IoError::Field("value".into()))?),
    };
    Ok(Radical { radicand, value })
}

pub fn feasibility_to_json(r: &FeasibilityReport) -> Value {
    json!({
        "schema": FEASIBILITY_SCHEMA,
        "d": r.d,
        "n": r.n,
        "q1": radical_to_json(&r.q1, "odd", true),
        "q2": radical_to_json(&r.q2, "odd", true),
        "w": radical_to_json(&r.w, "even", false),
        "n_mod_16": r.n_mod_16,
        "verdict": if r.pass { "pass" } else { "fail" },
    })
}

pub fn feasibility_from_json(v: &Value) -> Result<FeasibilityReport, IoError> {
    check_schema(v, FEASIBILITY_SCHEMA)?;
    let pass = match field(v, "verdict")?.as_str() {
        Some("pass") => true,
        Some("fail") => false,
        _ => return Err(IoError::Field("verdict".into())),
    };
    Ok(FeasibilityReport {
        d: usize_field(v, "d")?,
        n: usize_field(v, "n")?,
        q1: radical_from_json(field(v, "q1")?)?,
        q2: radical_from_json(field(v, "q2")?)?,
        w: radical_from_json(field(v, "w")?)?,
        n_mod_16: usize_field(v, "n_mod_16")?,
        pass,
    })
}

pub fn gerzon_to_json(d: usize, n: usize, field_name: &str, kind: &str, r: &GerzonReport) -> Value {
    let checks: Vec<Value> = r.checks.iter().map(|(b, ok)| json!({"bound": b, "holds": ok})).collect();
    json!({
        "schema": GERZON_SCHEMA,
        "d": d,
        "n": n,
        "field": field_name,
        "kind": kind,
        "checks": checks,
        "verdict": if r.pass() { "pass" } else { "fail" },
    })
}

/// Comma-separated rows, one line per row, for rational-integer matrices.
pub fn matrix_to_csv(m: &ExactMatrix) -> Option<String> {
    let vals = m.to_i64_entries()?;
    let mut out = String::new();
    for row in vals.chunks(m.cols()) {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::CycloElem;

    #[test]
    fn big_numbers_become_strings() {
        let q = Rational::from_bigints(BigInt::from(10).pow(30), BigInt::from(7));
        let v = rational_to_json(&q);
        assert!(v[0].is_string() && v[1].is_i64());
        assert_eq!(rational_from_json(&v).unwrap(), q);
    }

    #[test]
    fn matrix_round_trip() {
        let dom = Domain::Cyclotomic { order: 12 };
        let m = ExactMatrix::from_fn(dom, 2, 3, |i, j| Scalar::Cyclo(CycloElem::root_of_unity(12, (i * 5 + j * 7) as i64)));
        let text = canonical_json(&matrix_to_json(&m, Some(&[Rational::one(), Rational::new(3, 2)])));
        let (back, w) = matrix_from_json(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(back, m);
        assert_eq!(w.unwrap()[1], Rational::new(3, 2));
        assert_eq!(canonical_json(&matrix_to_json(&back, Some(&[Rational::one(), Rational::new(3, 2)]))), text);
        assert!(text.starts_with("{\"cols\":3,\"domain\":{"));
    }

    #[test]
    fn quadratic_entries() {
        let dom = Domain::Quadratic { radicand: 6 };
        let m = ExactMatrix::from_fn(dom, 1, 2, |_, j| Scalar::Quad(QuadElem::new(6, Rational::new(1, 5), Rational::from_int(j as i64))));
        let v = matrix_to_json(&m, None);
        assert_eq!(v["entries"][1], json!([1, 5, 1, 1]));
        assert_eq!(matrix_from_json(&v).unwrap().0, m);
    }

    #[test]
    fn schema_mismatch() {
        let v = json!({"schema": "etf-forge/design/v1"});
        assert!(matches!(matrix_from_json(&v), Err(IoError::Schema { .. })));
    }

    #[test]
    fn csv_output() {
        let m = ExactMatrix::from_int_rows(Domain::REAL_SIGNS, &[vec![1, -1], vec![0, 2]]);
        assert_eq!(matrix_to_csv(&m).unwrap(), "1,-1\n0,2\n");
    }
}
