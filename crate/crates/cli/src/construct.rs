use std::path::{Path, PathBuf};

use clap::{Args, Subcommand};
use etf_forge::frame::{certify_etf, Frame};
use etf_forge::io::{canonical_json, certificate_to_json, frame_to_json, matrix_to_csv};
use etf_forge::recipe::{BranchSpec, DesignSpec, HadamardSpec, Recipe};

use crate::{ensure_dir, read_json, write_file, Fail, Format};

#[derive(Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    kind: Kind,
    /// Directory for primary.json, complement.json, certificates, CSV and recipe.json.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Format of the primary matrix on stdout when --out is absent.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Exchange primary and complement.
    #[arg(long, global = true)]
    swap: bool,
}

#[derive(Subcommand)]
enum Kind {
    /// A Hadamard matrix with one row removed.
    Simplex {
        /// e.g. sylvester:2, paley:11, dft:5, size:12, group:2,2, dft:2*paley:3
        #[arg(long)]
        hadamard: String,
        #[arg(long, default_value_t = 0)]
        drop_row: usize,
    },
    /// Characters of a finite abelian group restricted to a difference set.
    Harmonic {
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<u32>,
        /// Mixed-radix element indices, 0-based.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<usize>,
    },
    /// Steiner ETF from a BIBD with λ = 1.
    Steiner {
        /// fano, all-pairs:V, round-robin:V, or a design JSON file
        #[arg(long)]
        design: String,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Column of G held back for the complement (default: last).
        #[arg(long)]
        g_column: Option<usize>,
        /// Which column of F to use, 1-based.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Real flat Kirkman ETFs (u(2u−1), 4u²) and (u(2u+1), 4u²).
    Kirkman {
        #[arg(long)]
        u: usize,
    },
    /// Tensor product of two Naimark pairs, each given by a recipe file or output directory.
    Tensor {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// ETF from a quasi-symmetric design.
    QsdToEtf {
        #[arg(long)]
        design: String,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

pub fn parse_design(s: &str) -> Result<DesignSpec, Fail> {
    let num = |a: &str| a.parse::<usize>().map_err(|_| Fail::Usage(format!("bad design `{s}`")));
    match s.split_once(':') {
        None if s == "fano" => Ok(DesignSpec::Fano),
        Some(("all-pairs", v)) => Ok(DesignSpec::AllPairs { v: num(v)? }),
        Some(("round-robin", v)) => Ok(DesignSpec::RoundRobin { v: num(v)? }),
        Some(("complement", rest)) => Ok(DesignSpec::Complement { of: Box::new(parse_design(rest)?) }),
        _ => Ok(DesignSpec::Inline { design: read_json(Path::new(s))? }),
    }
}

fn parse_hadamard(s: &str) -> Result<HadamardSpec, Fail> {
    Ok(HadamardSpec::parse(s)?)
}

/// A recipe file, or a directory holding recipe.json.
pub fn load_recipe(path: &Path) -> Result<Recipe, Fail> {
    let file = if path.is_dir() { path.join("recipe.json") } else { path.to_path_buf() };
    Ok(Recipe::from_json(&read_json(&file)?)?)
}

fn recipe_of(kind: Kind) -> Result<Recipe, Fail> {
    Ok(match kind {
        Kind::Simplex { hadamard, drop_row } => Recipe::Simplex { hadamard: parse_hadamard(&hadamard)?, drop_row },
        Kind::Harmonic { group, subset } => Recipe::Harmonic { group, subset },
        Kind::Steiner { design, f, g, g_column, l } => Recipe::Steiner {
            design: parse_design(&design)?,
            f: parse_hadamard(&f)?,
            g: parse_hadamard(&g)?,
            g_column,
            l,
        },
        Kind::Kirkman { u } => Recipe::Kirkman { u },
        Kind::Tensor { left, right } => {
            Recipe::Tensor { left: Box::new(load_recipe(&left)?), right: Box::new(load_recipe(&right)?) }
        }
        Kind::QsdToEtf { design, branch } => Recipe::Qsd {
            design: parse_design(&design)?,
            branch: match branch {
                BranchArg::Plus => BranchSpec::Plus,
                BranchArg::Minus => BranchSpec::Minus,
            },
        },
    })
}

fn csv_of(f: &Frame) -> Option<String> {
    if f.row_weights().is_some() {
        return None;
    }
    matrix_to_csv(f.synthesis())
}

fn summary(name: &str, f: &Frame) -> Result<String, Fail> {
    let c = certify_etf(f)?;
    Ok(format!(
        "{name}: (d, n) = ({}, {}), β = {}, γ² = {}, {}, {}",
        c.d,
        c.n,
        c.beta,
        c.gamma_sq,
        if c.flat { "flat" } else { "not flat" },
        c.domain
    ))
}

fn write_frame(dir: &Path, name: &str, f: &Frame) -> Result<(), Fail> {
    let cert = certify_etf(f)?;
    write_file(&dir.join(format!("{name}.json")), &canonical_json(&frame_to_json(f)))?;
    write_file(&dir.join(format!("{name}.certificate.json")), &canonical_json(&certificate_to_json(&cert)))?;
    if let Some(csv) = csv_of(f) {
        write_file(&dir.join(format!("{name}.csv")), &csv)?;
    }
    Ok(())
}

pub fn run(args: ConstructArgs) -> Result<(), Fail> {
    let mut recipe = recipe_of(args.kind)?;
    if args.swap {
        recipe = Recipe::Swap { of: Box::new(recipe) };
    }
    let built = recipe.build()?;
    // certify everything before anything is written
    let mut lines = vec![summary("primary", &built.primary)?];
    if let Some(c) = built.complement() {
        lines.push(summary("complement", c)?);
    }
    match args.out {
        Some(dir) => {
            let dir = ensure_dir(&dir)?;
            write_frame(&dir, "primary", &built.primary)?;
            if let Some(c) = built.complement() {
                write_frame(&dir, "complement", c)?;
            }
            write_file(&dir.join("recipe.json"), &recipe.canonical())?;
            for l in lines {
                println!("{l}");
            }
            println!("wrote {}", dir.display());
        }
        None => {
            for l in lines {
                eprintln!("{l}");
            }
            match args.format {
                Format::Json => print!("{}", canonical_json(&frame_to_json(&built.primary))),
                Format::Csv => print!(
                    "{}",
                    csv_of(&built.primary)
                        .ok_or_else(|| Fail::Usage("matrix is not a plain integer matrix; use --format json".into()))?
                ),
            }
        }
    }
    Ok(())
}
