//! Replayable construction recipes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::construct::{
    flat_regular_simplex, harmonic_etf, kirkman_etf, kirkman_from_u, steiner_naimark, tensor_etf,
    verify_difference_set, SteinerInputs,
};
use crate::design::{all_pairs_design, complement_design, fano_plane, round_robin_resolution, verify_qsd, Design};
use crate::frame::{verify_naimark_pair, Frame, NaimarkPair};
use crate::hadamard::{char_table, dft, hadamard_of_size, kron, paley_one, sylvester, AbelianGroup, HadamardMatrix};
use crate::io::{canonical_json, design_from_json, design_to_json, frame_from_json, IoError, RECIPE_SCHEMA};
use crate::qsd::{etf_from_qsd, Branch};
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HadamardSpec {
    Sylvester { e: u32 },
    Paley { q: u64 },
    Dft { n: usize },
    OfSize { n: usize },
    CharTable { group: Vec<u32> },
    Kron { parts: Vec<HadamardSpec> },
}

impl HadamardSpec {
    pub fn build(&self) -> Result<HadamardMatrix, Error> {
        Ok(match self {
            HadamardSpec::Sylvester { e } => sylvester(*e),
            HadamardSpec::Paley { q } => paley_one(*q)?,
            HadamardSpec::Dft { n } => dft(*n),
            HadamardSpec::OfSize { n } => hadamard_of_size(*n)?,
            HadamardSpec::CharTable { group } => char_table(&AbelianGroup::new(group.clone())?),
            HadamardSpec::Kron { parts } => {
                let mut it = parts.iter();
                let first = it.next().ok_or_else(|| IoError::Invalid("empty Kronecker product".into()))?;
                let mut h = first.build()?;
                for p in it {
                    h = kron(&h, &p.build()?)?;
                }
                h
            }
        })
    }

    /// `sylvester:2`, `paley:11`, `dft:3`, `size:12`, `group:2,2`, or `a*b` for a product.
    pub fn parse(s: &str) -> Result<Self, IoError> {
        if s.contains('*') {
            let parts = s.split('*').map(Self::parse).collect::<Result<Vec<_>, _>>()?;
            return Ok(HadamardSpec::Kron { parts });
        }
        let bad = || IoError::Invalid(format!("bad Hadamard spec `{s}`"));
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        Ok(match name {
            "sylvester" => HadamardSpec::Sylvester { e: arg.parse().map_err(|_| bad())? },
            "paley" => HadamardSpec::Paley { q: arg.parse().map_err(|_| bad())? },
            "dft" => HadamardSpec::Dft { n: arg.parse().map_err(|_| bad())? },
            "size" => HadamardSpec::OfSize { n: arg.parse().map_err(|_| bad())? },
            "group" => HadamardSpec::CharTable {
                group: arg.split(',').map(|x| x.trim().parse()).collect::<Result<_, _>>().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DesignSpec {
    AllPairs { v: usize },
    RoundRobin { v: usize },
    Fano,
    /// A design JSON document (1-based).
    Inline { design: Value },
    Complement { of: Box<DesignSpec> },
}

impl DesignSpec {
    pub fn build(&self) -> Result<Design, Error> {
        Ok(match self {
            DesignSpec::AllPairs { v } => all_pairs_design(*v)?,
            DesignSpec::RoundRobin { v } => round_robin_resolution(*v)?,
            DesignSpec::Fano => fano_plane(),
            DesignSpec::Inline { design } => design_from_json(design)?,
            DesignSpec::Complement { of } => complement_design(&of.build()?)?,
        })
    }

    pub fn inline(d: &Design) -> Self {
        DesignSpec::Inline { design: design_to_json(d) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchSpec {
    Plus,
    Minus,
}

impl From<BranchSpec> for Branch {
    fn from(b: BranchSpec) -> Branch {
        match b {
            BranchSpec::Plus => Branch::Plus,
            BranchSpec::Minus => Branch::Minus,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "inputs", rename_all = "snake_case")]
pub enum Recipe {
    /// Hadamard matrix minus one row; the dropped row is the complement.
    Simplex { hadamard: HadamardSpec, drop_row: usize },
    Harmonic { group: Vec<u32>, subset: Vec<usize> },
    Steiner {
        design: DesignSpec,
        f: HadamardSpec,
        g: HadamardSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        g_column: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        l: Option<usize>,
    },
    Kirkman { u: usize },
    Tensor { left: Box<Recipe>, right: Box<Recipe> },
    Qsd { design: DesignSpec, branch: BranchSpec },
    /// The same pair with primary and complement exchanged.
    Swap { of: Box<Recipe> },
    /// Literal matrix documents.
    Frames {
        primary: Value,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        complement: Option<Value>,
    },
}

/// A constructed frame, with its Naimark complement when the recipe gives one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Built {
    pub primary: Frame,
    pub pair: Option<NaimarkPair>,
}

impl Built {
    fn from_pair(pair: NaimarkPair) -> Self {
        Built { primary: pair.primary.clone(), pair: Some(pair) }
    }

    pub fn complement(&self) -> Option<&Frame> {
        self.pair.as_ref().map(|p| &p.complement)
    }

    pub fn require_pair(&self) -> Result<&NaimarkPair, Error> {
        self.pair
            .as_ref()
            .ok_or_else(|| IoError::Invalid("recipe gives no Naimark complement".into()).into())
    }
}

impl Recipe {
    pub fn kind(&self) -> &'static str {
        match self {
            Recipe::Simplex { .. } => "simplex",
            Recipe::Harmonic { .. } => "harmonic",
            Recipe::Steiner { .. } => "steiner",
            Recipe::Kirkman { .. } => "kirkman",
            Recipe::Tensor { .. } => "tensor",
            Recipe::Qsd { .. } => "qsd",
            Recipe::Swap { .. } => "swap",
            Recipe::Frames { .. } => "frames",
        }
    }

    pub fn build(&self) -> Result<Built, Error> {
        match self {
            Recipe::Simplex { hadamard, drop_row } => {
                let h = hadamard.build()?;
                let p = flat_regular_simplex(&h, *drop_row)?;
                let c = Frame::new(h.body().select_rows(&[*drop_row]))?;
                Ok(Built::from_pair(verify_naimark_pair(&p, &c)?))
            }
            Recipe::Harmonic { group, subset } => {
                let ds = verify_difference_set(&AbelianGroup::new(group.clone())?, subset)?;
                Ok(Built::from_pair(harmonic_etf(&ds)?))
            }
            Recipe::Steiner { design, f, g, g_column, l } => {
                let mut inputs = SteinerInputs::new(design.build()?, f.build()?, g.build()?)?;
                if let Some(c) = g_column {
                    inputs = inputs.with_g_column(*c)?;
                }
                if let Some(l) = l {
                    inputs = inputs.with_l(*l)?;
                }
                Ok(Built::from_pair(steiner_naimark(&inputs)?))
            }
            Recipe::Kirkman { u } => Ok(Built::from_pair(kirkman_etf(&kirkman_from_u(*u)?)?)),
            Recipe::Tensor { left, right } => {
                let (a, b) = (left.build()?, right.build()?);
                Ok(Built::from_pair(tensor_etf(a.require_pair()?, b.require_pair()?)?))
            }
            Recipe::Qsd { design, branch } => {
                let cert = verify_qsd(&design.build()?)?;
                let (frame, _) = etf_from_qsd(&cert, (*branch).into())?;
                Ok(Built { primary: frame, pair: None })
            }
            Recipe::Swap { of } => {
                let b = of.build()?;
                Ok(Built::from_pair(b.require_pair()?.swapped()))
            }
            Recipe::Frames { primary, complement } => {
                let p = frame_from_json(primary)?;
                match complement {
                    None => Ok(Built { primary: p, pair: None }),
                    Some(c) => Ok(Built::from_pair(verify_naimark_pair(&p, &frame_from_json(c)?)?)),
                }
            }
        }
    }

    /// `{"schema": …, "kind": …, "inputs": …}`
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("recipes serialize");
        v.as_object_mut()
            .expect("adjacently tagged")
            .insert("schema".into(), Value::String(RECIPE_SCHEMA.into()));
        v
    }

    pub fn from_json(v: &Value) -> Result<Self, IoError> {
        match v.get("schema").and_then(Value::as_str) {
            Some(RECIPE_SCHEMA) => {}
            other => {
                return Err(IoError::Schema { expected: RECIPE_SCHEMA, found: other.unwrap_or("nothing").into() })
            }
        }
        let mut body = v.clone();
        body.as_object_mut().expect("checked above").remove("schema");
        serde_json::from_value(body).map_err(|e| IoError::Invalid(format!("recipe: {e}")))
    }

    pub fn canonical(&self) -> String {
        canonical_json(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings() {
        assert_eq!(HadamardSpec::parse("sylvester:2").unwrap(), HadamardSpec::Sylvester { e: 2 });
        assert_eq!(
            HadamardSpec::parse("dft:2*paley:3").unwrap(),
            HadamardSpec::Kron { parts: vec![HadamardSpec::Dft { n: 2 }, HadamardSpec::Paley { q: 3 }] }
        );
        assert!(HadamardSpec::parse("hadamard").is_err());
    }

    #[test]
    fn recipe_json_round_trip() {
        let r = Recipe::Tensor {
            left: Box::new(Recipe::Swap {
                of: Box::new(Recipe::Simplex { hadamard: HadamardSpec::Sylvester { e: 2 }, drop_row: 0 }),
            }),
            right: Box::new(Recipe::Kirkman { u: 2 }),
        };
        let text = r.canonical();
        assert!(text.starts_with("{\"inputs\":"));
        let back = Recipe::from_json(&crate::io::parse_json(&text).unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.canonical(), text);
    }

    #[test]
    fn replay() {
        let b = Recipe::Kirkman { u: 2 }.build().unwrap();
        assert_eq!((b.primary.d(), b.complement().unwrap().d()), (6, 10));
        let q = Recipe::Qsd { design: DesignSpec::AllPairs { v: 6 }, branch: BranchSpec::Plus }.build().unwrap();
        assert!(q.pair.is_none() && q.primary.is_flat());
    }
}
