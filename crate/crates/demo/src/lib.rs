//! WebAssembly bindings for the browser demo. Every function returns a JSON string.

use etf_forge::construct::{harmonic_etf, kirkman_etf, kirkman_from_u, verify_difference_set};
use etf_forge::frame::{certify_etf, certify_hadamard_etf, Frame, NaimarkPair};
use etf_forge::hadamard::AbelianGroup;
use etf_forge::io::{certificate_to_json, feasibility_to_json, gerzon_to_json};
use etf_forge::qsd::{flat_feasibility, gerzon_bounds, qsd_from_flat_etf, EtfKind, Field};
use etf_forge::Domain;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest u the page offers; n = 4u².
pub const MAX_U: usize = 8;

/// Entries as exponents of ζ_m, so the page can colour by phase.
fn phases(f: &Frame) -> Result<Value, String> {
    let m = f.synthesis();
    let order = match m.domain() {
        Domain::Cyclotomic { order } => order,
        other => return Err(format!("cannot draw entries of {other}")),
    };
    let mut rows = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let row: Option<Vec<u32>> = m.row(i).iter().map(|s| s.as_cyclo().and_then(|z| z.root_exponent())).collect();
        rows.push(row.ok_or("entries are not roots of unity")?);
    }
    Ok(json!({"order": order, "rows": rows}))
}

fn describe(f: &Frame) -> Result<Value, String> {
    let c = certify_etf(f).map_err(|e| e.to_string())?;
    Ok(json!({"certificate": certificate_to_json(&c), "matrix": phases(f)?}))
}

fn pair_json(pair: &NaimarkPair) -> Result<Value, String> {
    let hadamard = certify_hadamard_etf(pair).map(|h| h.size()).ok();
    Ok(json!({
        "primary": describe(&pair.primary)?,
        "complement": describe(&pair.complement)?,
        "hadamard_size": hadamard,
    }))
}

pub fn kirkman_json(u: usize) -> Result<String, String> {
    if u > MAX_U {
        return Err(format!("u ≤ {MAX_U} in the browser"));
    }
    let inputs = kirkman_from_u(u).map_err(|e| e.to_string())?;
    let pair = kirkman_etf(&inputs).map_err(|e| e.to_string())?;
    let mut out = pair_json(&pair)?;
    let qsd = qsd_from_flat_etf(&pair.primary).map_err(|e| e.to_string())?;
    out["qsd"] = json!(qsd.certificate.tuple());
    Ok(out.to_string())
}

pub fn feasibility_json(d: usize, n: usize) -> Result<String, String> {
    let report = flat_feasibility(d, n).map_err(|e| e.to_string())?;
    let gerzon: Vec<Value> = [(Field::Real, "real"), (Field::Complex, "complex")]
        .into_iter()
        .map(|(field, name)| {
            gerzon_bounds(d, n, field, EtfKind::Flat).map(|g| gerzon_to_json(d, n, name, "flat", &g))
        })
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    Ok(json!({"feasibility": feasibility_to_json(&report), "gerzon": gerzon}).to_string())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| format!("bad {what} entry `{}`", x.trim())))
        .collect()
}

pub fn harmonic_json(group: &str, subset: &str) -> Result<String, String> {
    let orders: Vec<u32> = parse_list(group, "group")?;
    let g = AbelianGroup::new(orders).map_err(|e| e.to_string())?;
    if g.order() > 256 {
        return Err("group order ≤ 256 in the browser".into());
    }
    let ds = verify_difference_set(&g, &parse_list(subset, "subset")?).map_err(|e| e.to_string())?;
    let pair = harmonic_etf(&ds).map_err(|e| e.to_string())?;
    let mut out = pair_json(&pair)?;
    out["lambda"] = json!(ds.lambda);
    Ok(out.to_string())
}

#[wasm_bindgen]
pub fn kirkman(u: usize) -> Result<String, JsError> {
    kirkman_json(u).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn feasibility(d: usize, n: usize) -> Result<String, JsError> {
    feasibility_json(d, n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn harmonic(group: &str, subset: &str) -> Result<String, JsError> {
    harmonic_json(group, subset).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn kirkman_u2() {
        let v = parse(&kirkman_json(2).unwrap());
        assert_eq!(v["primary"]["certificate"]["d"], 6);
        assert_eq!(v["complement"]["certificate"]["d"], 10);
        assert_eq!(v["hadamard_size"], 16);
        assert_eq!(v["qsd"], json!([6, 2, 1, 5, 15, 0, 1]));
        assert_eq!(v["primary"]["matrix"]["order"], 2);
        assert!(kirkman_json(3).is_err());
        assert!(kirkman_json(MAX_U + 2).is_err());
    }

    #[test]
    fn feasibility_verdicts() {
        let v = parse(&feasibility_json(15, 36).unwrap());
        assert_eq!(v["feasibility"]["verdict"], "fail");
        let v = parse(&feasibility_json(6, 16).unwrap());
        assert_eq!(v["feasibility"]["verdict"], "pass");
        assert_eq!(v["gerzon"][0]["verdict"], "pass");
        assert!(feasibility_json(6, 7).is_err());
    }

    #[test]
    fn harmonic_cases() {
        let v = parse(&harmonic_json("2,2,2,2", "1,5,2,10,3,15").unwrap());
        assert_eq!(v["lambda"], 2);
        assert_eq!(v["hadamard_size"], 16);
        let v = parse(&harmonic_json("7", "1,2,4").unwrap());
        assert_eq!(v["primary"]["matrix"]["order"], 7);
        assert!(harmonic_json("7", "1,2,3").is_err());
        assert!(harmonic_json("x", "1").is_err());
    }
}
