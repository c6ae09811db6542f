use std::path::PathBuf;

use clap::Subcommand;
use etf_forge::design::{etf_params_from_srg, verify_bibd, verify_qsd, verify_srg, Design};
use etf_forge::frame::{certify_etf, verify_naimark_pair};
use etf_forge::hadamard::verify_hadamard;
use etf_forge::io::{
    canonical_json, certificate_to_json, design_from_json, frame_from_json, matrix_from_json, rational_to_json,
    DESIGN_SCHEMA,
};
use etf_forge::qsd::qsd_gives_etf;
use serde_json::{json, Value};

use crate::{read_json, Fail};

#[derive(Subcommand)]
pub enum VerifyCommand {
    /// Matrix JSON: unit-free ETF certificate.
    Etf { file: PathBuf },
    /// Matrix JSON: H H* = nI with unimodular entries.
    Hadamard { file: PathBuf },
    /// Design JSON or b×v incidence matrix JSON.
    Bibd { file: PathBuf },
    /// Design JSON or incidence matrix JSON: block intersection numbers.
    Qsd { file: PathBuf },
    /// Adjacency matrix JSON.
    Srg { file: PathBuf },
    /// Two matrix JSON files: Φ̃*Φ̃ = αI − Φ*Φ.
    NaimarkPair { primary: PathBuf, complement: PathBuf },
}

fn load_design(file: &std::path::Path) -> Result<Design, Fail> {
    let v = read_json(file)?;
    if v.get("schema").and_then(Value::as_str) == Some(DESIGN_SCHEMA) {
        Ok(design_from_json(&v)?)
    } else {
        let (x, _) = matrix_from_json(&v)?;
        Ok(Design::from_incidence(&x)?)
    }
}

fn params_json(p: &etf_forge::design::DesignParams) -> Value {
    json!({"v": p.v, "k": p.k, "lambda": p.lambda, "r": p.r, "b": p.b})
}

pub fn run(cmd: VerifyCommand) -> Result<(), Fail> {
    let report = match cmd {
        VerifyCommand::Etf { file } => {
            let f = frame_from_json(&read_json(&file)?)?;
            certificate_to_json(&certify_etf(&f)?)
        }
        VerifyCommand::Hadamard { file } => {
            let (m, _) = matrix_from_json(&read_json(&file)?)?;
            let h = verify_hadamard(&m)?;
            json!({"hadamard": true, "size": h.size(), "real": h.is_real(), "domain": m.domain().to_string()})
        }
        VerifyCommand::Bibd { file } => {
            let d = load_design(&file)?;
            let p = verify_bibd(&d.incidence())?;
            json!({"bibd": params_json(&p), "resolvable": d.parallel_classes().is_some()})
        }
        VerifyCommand::Qsd { file } => {
            let cert = verify_qsd(&load_design(&file)?)?;
            json!({
                "qsd": params_json(&cert.params),
                "x": cert.x,
                "y": cert.y,
                "gives_etf": qsd_gives_etf(&cert)?,
            })
        }
        VerifyCommand::Srg { file } => {
            let (adj, _) = matrix_from_json(&read_json(&file)?)?;
            let s = verify_srg(&adj)?;
            let etf = etf_params_from_srg(&s).ok().map(|(d, n)| json!({"d": d, "n": n}));
            json!({
                "srg": {"v": s.b, "k": s.a, "lambda": s.c, "mu": s.mu},
                "eigenvalues": s.theta.as_ref().map(|(a, b)| json!([rational_to_json(a), rational_to_json(b)])),
                "etf": etf,
            })
        }
        VerifyCommand::NaimarkPair { primary, complement } => {
            let p = frame_from_json(&read_json(&primary)?)?;
            let c = frame_from_json(&read_json(&complement)?)?;
            let pair = verify_naimark_pair(&p, &c)?;
            json!({
                "alpha": rational_to_json(&pair.alpha),
                "primary": certificate_to_json(&certify_etf(&pair.primary)?),
                "complement": certificate_to_json(&certify_etf(&pair.complement)?),
            })
        }
    };
    print!("{}", canonical_json(&report));
    Ok(())
}
