mod catalog;
mod construct;
mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use etf_forge::io::{canonical_json, feasibility_to_json, gerzon_to_json, parse_json, IoError};
use etf_forge::qsd::{flat_feasibility, gerzon_bounds, EtfKind, Field};
use serde_json::Value;

/// Exact construction and certification of equiangular tight frames.
#[derive(Parser)]
#[command(name = "etf-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a certified ETF (and its Naimark complement when there is one).
    Construct(construct::ConstructArgs),
    /// Check a file and print its certificate.
    #[command(subcommand)]
    Verify(verify::VerifyCommand),
    /// Necessary conditions for a real flat ETF, plus the Gerzon bounds.
    Feasibility { d: usize, n: usize },
    /// Persistent store of certified artifacts.
    Catalog(catalog::CatalogArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Exit 2 for bad input, 1 for a mathematical or domain failure.
#[derive(Debug)]
pub enum Fail {
    Usage(String),
    Domain(String),
}

impl Fail {
    fn code(&self) -> u8 {
        match self {
            Fail::Usage(_) => 2,
            Fail::Domain(_) => 1,
        }
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::Usage(m) | Fail::Domain(m) => f.write_str(m),
        }
    }
}

impl From<etf_forge::Error> for Fail {
    fn from(e: etf_forge::Error) -> Self {
        match e {
            etf_forge::Error::Io(e) => Fail::Usage(e.to_string()),
            e => Fail::Domain(e.to_string()),
        }
    }
}

impl From<IoError> for Fail {
    fn from(e: IoError) -> Self {
        Fail::Usage(e.to_string())
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Self {
                Fail::from(etf_forge::Error::from(e))
            }
        }
    )*};
}

domain_from!(
    etf_forge::frame::FrameError,
    etf_forge::design::DesignError,
    etf_forge::hadamard::HadamardError,
    etf_forge::construct::ConstructError,
    etf_forge::qsd::QsdError
);

pub fn read_json(path: &Path) -> Result<Value, Fail> {
    let text = fs::read_to_string(path).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_json(&text)?)
}

pub fn write_file(path: &Path, text: &str) -> Result<(), Fail> {
    fs::write(path, text).map_err(|e| Fail::Domain(format!("{}: {e}", path.display())))
}

pub fn ensure_dir(path: &Path) -> Result<PathBuf, Fail> {
    fs::create_dir_all(path).map_err(|e| Fail::Domain(format!("{}: {e}", path.display())))?;
    Ok(path.to_path_buf())
}

fn feasibility(d: usize, n: usize) -> Result<(), Fail> {
    if !(d > 1 && n > d + 1) {
        let hint = if n == d + 1 {
            "n = d + 1 is the regular-simplex regime; the test applies only to 1 < d < n − 1"
        } else {
            "need 1 < d < n − 1"
        };
        return Err(Fail::Usage(format!("(d, n) = ({d}, {n}): {hint}")));
    }
    let report = flat_feasibility(d, n)?;
    let gerzon = gerzon_bounds(d, n, Field::Real, EtfKind::Flat)?;
    print!("{}", canonical_json(&feasibility_to_json(&report)));
    print!("{}", canonical_json(&gerzon_to_json(d, n, "real", "flat", &gerzon)));
    match (report.pass, gerzon.violated()) {
        (true, None) => Ok(()),
        (false, _) => Err(Fail::Domain(format!("no real flat ETF with (d, n) = ({d}, {n})"))),
        (true, Some(b)) => Err(Fail::Domain(format!("Gerzon bound violated: {b}"))),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => construct::run(args),
        Command::Verify(cmd) => verify::run(cmd),
        Command::Feasibility { d, n } => feasibility(d, n),
        Command::Catalog(args) => catalog::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
