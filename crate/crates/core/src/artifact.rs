//! On-disk artifacts and their canonical JSON encoding.
//!
//! Every artifact serializes as pretty-printed JSON with a trailing newline.
//! Reading a file and writing it back reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::boolean::{ArithExpression, BitPipeline, DnfFormula};
use crate::error::{ComplementError, Result};
use crate::fourier::{combine_fourier_bits, FourierComplement, MultilinearPolynomial};
use crate::model::{FiniteFunction, MappingTable};
use crate::newton::DensePolynomial;
use crate::verify::VerificationReport;

/// One output bit of the boolean pipeline, as text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BitArtifact {
    pub dnf: String,
    pub minimized: String,
    pub expression: ArithExpression,
}

/// The boolean backend's output: per-bit formulas and the weighted sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArithArtifact {
    pub b: u32,
    pub n: u32,
    pub bits: Vec<BitArtifact>,
    pub combined: ArithExpression,
}

impl ArithArtifact {
    pub fn new(b: u32, bits: &[BitPipeline], combined: &ArithExpression) -> Self {
        Self {
            b,
            n: bits.len() as u32,
            bits: bits
                .iter()
                .map(|p| BitArtifact {
                    dnf: p.dnf.to_string(),
                    minimized: p.minimized.to_string(),
                    expression: p.arith.clone(),
                })
                .collect(),
            combined: combined.clone(),
        }
    }

    /// Parses the stored formulas back into pipelines.
    pub fn pipelines(&self) -> Result<Vec<BitPipeline>> {
        self.bits
            .iter()
            .map(|bit| {
                Ok(BitPipeline {
                    dnf: DnfFormula::parse(self.b, &bit.dnf)?,
                    minimized: DnfFormula::parse(self.b, &bit.minimized)?,
                    arith: bit.expression.clone(),
                })
            })
            .collect()
    }
}

/// The Fourier backend's output: one expansion per output bit, LSB first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierArtifact {
    pub n: u32,
    pub bits: Vec<MultilinearPolynomial>,
}

impl FourierArtifact {
    pub fn new(g: &FourierComplement) -> Self {
        Self {
            n: g.bits().len() as u32,
            bits: g.bits().to_vec(),
        }
    }

    pub fn complement(&self) -> Result<FourierComplement> {
        combine_fourier_bits(self.bits.clone())
    }
}

/// Any artifact the tools read or write.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    Function(FiniteFunction),
    Mapping(MappingTable),
    Polynomial(DensePolynomial),
    Multilinear(MultilinearPolynomial),
    Arith(ArithArtifact),
    Fourier(FourierArtifact),
    Report(VerificationReport),
}

fn schema_error(e: impl std::fmt::Display) -> ComplementError {
    ComplementError::InvalidArgument(format!("schema error: {e}"))
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Function(_) => "function",
            Artifact::Mapping(_) => "mapping",
            Artifact::Polynomial(_) => "polynomial",
            Artifact::Multilinear(_) => "multilinear",
            Artifact::Arith(_) => "arith",
            Artifact::Fourier(_) => "fourier",
            Artifact::Report(_) => "report",
        }
    }

    /// Recognizes the artifact by its top-level keys.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(schema_error)?;
        let obj = value
            .as_object()
            .ok_or_else(|| schema_error("top level is not an object"))?;
        let has = |k: &str| obj.contains_key(k);
        let parsed = if has("values") {
            serde_json::from_value(value).map(Artifact::Function)
        } else if has("entries") {
            serde_json::from_value(value).map(Artifact::Mapping)
        } else if has("coefficients") {
            serde_json::from_value(value).map(Artifact::Polynomial)
        } else if has("terms") {
            serde_json::from_value(value).map(Artifact::Multilinear)
        } else if has("combined") {
            serde_json::from_value(value).map(Artifact::Arith)
        } else if has("bits") {
            serde_json::from_value(value).map(Artifact::Fourier)
        } else if has("agreement") {
            serde_json::from_value(value).map(Artifact::Report)
        } else {
            return Err(schema_error("unrecognized artifact"));
        };
        let artifact = parsed.map_err(schema_error)?;
        if let Artifact::Arith(a) = &artifact {
            a.pipelines()?;
        }
        Ok(artifact)
    }

    pub fn to_json(&self) -> String {
        match self {
            Artifact::Function(v) => to_canonical_json(v),
            Artifact::Mapping(v) => to_canonical_json(v),
            Artifact::Polynomial(v) => to_canonical_json(v),
            Artifact::Multilinear(v) => to_canonical_json(v),
            Artifact::Arith(v) => to_canonical_json(v),
            Artifact::Fourier(v) => to_canonical_json(v),
            Artifact::Report(v) => to_canonical_json(v),
        }
    }
}

/// Pretty JSON plus a trailing newline.
pub fn to_canonical_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("artifacts always serialize");
    text.push('\n');
    text
}
