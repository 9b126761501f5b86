//! Run configuration: which field, which algebra, and run options.

use std::path::Path;

use serde::Deserialize;

use crate::cubic::CubicNormStructure;
use crate::error::{Error, Result};
use crate::exactlin::{ExtensionField, Field, PrimeField};
use crate::structalg::{instances, Algebra};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub algebra: AlgebraSpec,
    #[serde(default)]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u32 },
    /// F_p[t]/(t^k + c_{k−1}t^{k−1} + … + c₀) with `modulus` = [c₀, …, c_{k−1}].
    #[serde(rename = "Fq")]
    Extension { p: u32, modulus: Vec<u32> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CubicKind {
    Rank1,
    CubicField,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// F ⊕ F with the exchange involution, F the ground field.
    Exchange,
    /// M(J, η) for a cubic norm structure J.
    Matrix {
        j: CubicKind,
        /// [c₀, c₁, c₂] of the cubic modulus, for `j = "cubic_field"`.
        #[serde(default)]
        j_modulus: Option<Vec<i64>>,
        #[serde(default = "default_eta")]
        eta: i64,
    },
    /// A quadratic or cubic field extension of the ground field as a Jordan algebra.
    Jordan { modulus: Vec<i64> },
    /// A Cayley–Dickson algebra with its standard involution.
    Hurwitz { params: Vec<i64> },
}

fn default_eta() -> i64 {
    1
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub budget: Option<usize>,
    pub out: Option<String>,
    pub large: Option<bool>,
}

impl AlgebraSpec {
    pub fn family(&self) -> &'static str {
        match self {
            AlgebraSpec::Exchange => "exchange",
            AlgebraSpec::Matrix { .. } => "matrix",
            AlgebraSpec::Jordan { .. } => "jordan",
            AlgebraSpec::Hurwitz { .. } => "hurwitz",
        }
    }
}

/// Parses TOML, or JSON when `json` is set, and validates the result.
pub fn parse_config(text: &str, json: bool) -> Result<RunConfig> {
    let cfg: RunConfig = if json {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("line {}, column {}: {e}", e.line(), e.column())))?
    } else {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    parse_config(&text, json)
}

fn semantic(path: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{path}: {msg}"))
}

impl RunConfig {
    /// Builds the field and the algebra once, so every precondition is checked up front.
    pub fn validate(&self) -> Result<()> {
        match &self.field {
            FieldSpec::Rationals => self.algebra.build(crate::exactlin::Rationals).map(|_| ()),
            FieldSpec::Prime { p } => {
                let f = PrimeField::new(*p).map_err(|e| semantic("field.p", e))?;
                self.algebra.build(f).map(|_| ())
            }
            FieldSpec::Extension { p, modulus } => {
                let f = ExtensionField::new(*p, modulus).map_err(|e| semantic("field.modulus", e))?;
                self.algebra.build(f).map(|_| ())
            }
        }
    }
}

fn elems<F: Field>(f: F, v: &[i64]) -> Vec<F::Elem> {
    v.iter().map(|&c| f.from_i64(c)).collect()
}

impl AlgebraSpec {
    pub fn cubic<F: Field>(&self, f: F) -> Result<Option<CubicNormStructure<F>>> {
        let AlgebraSpec::Matrix { j, j_modulus, .. } = self else { return Ok(None) };
        let c = match (j, j_modulus) {
            (CubicKind::Rank1, None) => CubicNormStructure::rank1(f),
            (CubicKind::Rank1, Some(_)) => return Err(semantic("algebra.j_modulus", "only used with j = \"cubic_field\"")),
            (CubicKind::CubicField, Some(m)) => CubicNormStructure::cubic_field(f, &elems(f, m)),
            (CubicKind::CubicField, None) => return Err(semantic("algebra.j_modulus", "required for j = \"cubic_field\"")),
        };
        c.map(Some).map_err(|e| semantic("algebra.j", e))
    }

    pub fn eta<F: Field>(&self, f: F) -> F::Elem {
        match self {
            AlgebraSpec::Matrix { eta, .. } => f.from_i64(*eta),
            _ => f.one(),
        }
    }

    pub fn build<F: Field>(&self, f: F) -> Result<Algebra<F>> {
        match self {
            AlgebraSpec::Exchange => Ok(instances::exchange_field(f)),
            AlgebraSpec::Matrix { .. } => {
                let j = self.cubic(f)?.expect("matrix family");
                instances::matrix_structurable(&j, &self.eta(f)).map_err(|e| semantic("algebra.eta", e))
            }
            AlgebraSpec::Jordan { modulus } => {
                instances::jordan_extension(f, &elems(f, modulus)).map_err(|e| semantic("algebra.modulus", e))
            }
            AlgebraSpec::Hurwitz { params } => {
                instances::hurwitz_with_involution(f, &elems(f, params)).map_err(|e| semantic("algebra.params", e))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_exchange() {
        let cfg = parse_config("[field]\ntype = \"Fp\"\np = 5\n[algebra]\nfamily = \"exchange\"\n", false).unwrap();
        assert_eq!(cfg.field, FieldSpec::Prime { p: 5 });
        assert_eq!(cfg.algebra, AlgebraSpec::Exchange);
    }

    #[test]
    fn characteristic_three_rejected() {
        let e = parse_config("[field]\ntype = \"Fp\"\np = 3\n[algebra]\nfamily = \"exchange\"\n", false).unwrap_err();
        assert!(e.to_string().contains("field.p"), "{e}");
    }

    #[test]
    fn unknown_key_named() {
        let text = "[field]\ntype = \"Fp\"\np = 5\n[algebra]\nfamily = \"matrix\"\nj = \"rank1\"\netaa = 1\n";
        let e = parse_config(text, false).unwrap_err();
        assert!(e.to_string().contains("etaa"), "{e}");
    }

    #[test]
    fn json_and_matrix() {
        let text = r#"{"field": {"type": "Fp", "p": 5}, "algebra": {"family": "matrix", "j": "rank1", "eta": 1}, "options": {"seed": 3}}"#;
        let cfg = parse_config(text, true).unwrap();
        assert_eq!(cfg.options.seed, Some(3));
    }

    #[test]
    fn semantic_errors_have_paths() {
        let text = "[field]\ntype = \"Fp\"\np = 5\n[algebra]\nfamily = \"jordan\"\nmodulus = [4, 0]\n";
        let e = parse_config(text, false).unwrap_err();
        assert!(e.to_string().contains("algebra.modulus"), "{e}");
        let text = "[field]\ntype = \"Fp\"\np = 5\n[algebra]\nfamily = \"matrix\"\nj = \"rank1\"\neta = 0\n";
        assert!(parse_config(text, false).unwrap_err().to_string().contains("algebra.eta"));
    }
}
