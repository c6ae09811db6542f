//! Append-only catalog: `records.jsonl` plus one payload directory per record.

use std::fs::{self, OpenOptions};
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::thread::sleep;
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use clap::{Args, Subcommand};
use etf_forge::design::verify_qsd;
use etf_forge::frame::{certify_etf, verify_naimark_pair, Frame};
use etf_forge::io::{canonical_json, certificate_to_json, frame_from_json, frame_to_json, parse_json};
use etf_forge::recipe::Recipe;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::construct::load_recipe;
use crate::{ensure_dir, read_json, write_file, Fail};

const DEFAULT_DIR: &str = "etf-forge-catalog";
const LOG: &str = "records.jsonl";
const LOCK: &str = "lock";

#[derive(Args)]
pub struct CatalogArgs {
    #[command(subcommand)]
    command: CatalogCommand,
    /// Catalog directory (default: $ETF_FORGE_CATALOG, then ./etf-forge-catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// Re-certify a recipe (file or construct output directory) and record it.
    Add { recipe: PathBuf },
    /// One row per record, ordered by id.
    List {
        /// Re-verify every payload first.
        #[arg(long)]
        audit: bool,
    },
    /// Print a record and its recipe; any unique id prefix works.
    Show { id: String },
    /// Re-verify every payload against its record.
    Audit,
}

pub fn recipe_id(recipe: &Recipe) -> String {
    format!("{:x}", Sha256::digest(recipe.canonical().as_bytes()))
}

struct Catalog {
    root: PathBuf,
}

/// Held while appending; removed on drop.
struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

impl Catalog {
    fn open(explicit: Option<PathBuf>) -> Catalog {
        let root = explicit
            .or_else(|| std::env::var_os("ETF_FORGE_CATALOG").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_DIR));
        Catalog { root }
    }

    fn payload_dir(&self, id: &str) -> PathBuf {
        self.root.join("payloads").join(id)
    }

    fn lock(&self) -> Result<LockGuard, Fail> {
        ensure_dir(&self.root)?;
        let path = self.root.join(LOCK);
        for _ in 0..100 {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(LockGuard(path));
                }
                Err(e) if e.kind() == ErrorKind::AlreadyExists => sleep(Duration::from_millis(50)),
                Err(e) => return Err(Fail::Domain(format!("{}: {e}", path.display()))),
            }
        }
        Err(Fail::Domain(format!("catalog is locked by another writer ({})", path.display())))
    }

    fn records(&self) -> Result<Vec<Value>, Fail> {
        let path = self.root.join(LOG);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Fail::Usage(format!("{}: {e}", path.display()))),
        };
        let mut out = Vec::new();
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            out.push(parse_json(line).map_err(|e| Fail::Usage(format!("{LOG} line {}: {e}", i + 1)))?);
        }
        out.sort_by(|a, b| id_of(a).cmp(id_of(b)));
        Ok(out)
    }

    fn find(&self, prefix: &str) -> Result<Value, Fail> {
        let hits: Vec<Value> = self.records()?.into_iter().filter(|r| id_of(r).starts_with(prefix)).collect();
        match hits.len() {
            1 => Ok(hits.into_iter().next().expect("one hit")),
            0 => Err(Fail::Domain(format!("no record with id {prefix}"))),
            _ => Err(Fail::Usage(format!("id prefix {prefix} is ambiguous"))),
        }
    }

    fn add(&self, recipe: &Recipe) -> Result<(String, bool), Fail> {
        let id = recipe_id(recipe);
        let built = recipe.build()?;
        let primary_cert = certify_etf(&built.primary)?;
        let complement_cert = built.complement().map(certify_etf).transpose()?;

        let _guard = self.lock()?;
        if self.records()?.iter().any(|r| id_of(r) == id) {
            return Ok((id, false));
        }
        let dir = ensure_dir(&self.payload_dir(&id))?;
        write_file(&dir.join("recipe.json"), &recipe.canonical())?;
        write_file(&dir.join("primary.json"), &canonical_json(&frame_to_json(&built.primary)))?;
        if let Some(c) = built.complement() {
            write_file(&dir.join("complement.json"), &canonical_json(&frame_to_json(c)))?;
        }
        let mut params = json!({"d": primary_cert.d, "n": primary_cert.n});
        if let Recipe::Qsd { design, .. } = recipe {
            params["qsd"] = json!(verify_qsd(&design.build()?)?.tuple());
        }
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let record = json!({
            "id": id,
            "kind": recipe.kind(),
            "params": params,
            "certificate": certificate_to_json(&primary_cert),
            "complement_certificate": complement_cert.as_ref().map(certificate_to_json),
            "created_at": created,
            "payload": format!("payloads/{id}"),
        });
        let log = self.root.join(LOG);
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&log)
            .map_err(|e| Fail::Domain(format!("{}: {e}", log.display())))?;
        f.write_all(canonical_json(&record).as_bytes())
            .and_then(|_| f.sync_all())
            .map_err(|e| Fail::Domain(format!("{}: {e}", log.display())))?;
        Ok((id, true))
    }

    fn load_frame(&self, path: &Path) -> Result<Frame, String> {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let v = parse_json(&text).map_err(|e| e.to_string())?;
        frame_from_json(&v).map_err(|e| e.to_string())
    }

    /// `Err` names what no longer matches.
    fn audit_one(&self, record: &Value) -> Result<(), String> {
        let id = id_of(record);
        let dir = self.payload_dir(id);
        let recipe_text =
            fs::read_to_string(dir.join("recipe.json")).map_err(|e| format!("recipe.json: {e}"))?;
        let recipe = parse_json(&recipe_text)
            .and_then(|v| Recipe::from_json(&v))
            .map_err(|e| format!("recipe.json: {e}"))?;
        if recipe_id(&recipe) != id {
            return Err("recipe hash does not match id".into());
        }
        let primary = self.load_frame(&dir.join("primary.json"))?;
        let cert = certify_etf(&primary).map_err(|e| format!("primary: {e}"))?;
        if certificate_to_json(&cert) != record["certificate"] {
            return Err("primary certificate differs from the record".into());
        }
        match &record["complement_certificate"] {
            Value::Null => Ok(()),
            want => {
                let c = self.load_frame(&dir.join("complement.json"))?;
                let cc = certify_etf(&c).map_err(|e| format!("complement: {e}"))?;
                if &certificate_to_json(&cc) != want {
                    return Err("complement certificate differs from the record".into());
                }
                verify_naimark_pair(&primary, &c).map(|_| ()).map_err(|e| format!("Naimark pair: {e}"))
            }
        }
    }

    fn audit(&self) -> Result<(), Fail> {
        let records = self.records()?;
        let mut bad = Vec::new();
        for r in &records {
            if let Err(e) = self.audit_one(r) {
                println!("FAIL {}: {e}", id_of(r));
                bad.push(id_of(r).to_string());
            }
        }
        if bad.is_empty() {
            println!("audit: {} record(s) verified", records.len());
            Ok(())
        } else {
            Err(Fail::Domain(format!("audit failed for {}", bad.join(", "))))
        }
    }
}

fn id_of(r: &Value) -> &str {
    r["id"].as_str().unwrap_or("")
}

fn params_cell(r: &Value) -> String {
    let p = &r["params"];
    let mut s = format!("d={} n={}", p["d"], p["n"]);
    if let Some(t) = p["qsd"].as_array() {
        let t: Vec<String> = t.iter().map(Value::to_string).collect();
        s.push_str(&format!(" qsd=({})", t.join(",")));
    }
    s
}

pub fn run(args: CatalogArgs) -> Result<(), Fail> {
    let cat = Catalog::open(args.catalog);
    match args.command {
        CatalogCommand::Add { recipe } => {
            let recipe = load_recipe(&recipe)?;
            let (id, fresh) = cat.add(&recipe)?;
            println!("{} {id}", if fresh { "added" } else { "present" });
            Ok(())
        }
        CatalogCommand::List { audit } => {
            if audit {
                cat.audit()?;
            }
            for r in cat.records()? {
                println!("{}  {:<8}  {}", id_of(&r), r["kind"].as_str().unwrap_or("?"), params_cell(&r));
            }
            Ok(())
        }
        CatalogCommand::Show { id } => {
            let r = cat.find(&id)?;
            let recipe = read_json(&cat.payload_dir(id_of(&r)).join("recipe.json"))?;
            print!("{}", canonical_json(&json!({"record": r, "recipe": recipe})));
            Ok(())
        }
        CatalogCommand::Audit => cat.audit(),
    }
}
