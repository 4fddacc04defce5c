//! End-to-end construction: image, complement set, mapping, and every
//! backend representation derived from the same mapping.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::boolean::{self, ArithExpression, BitPipeline};
use crate::error::{ComplementError, Result};
use crate::fourier::{self, FourierComplement};
use crate::iterative::LazyComplement;
use crate::model::{
    build_mapping, check_existence_inequality, choose_domain_bits, complement_set, compute_image,
    pow2, FiniteFunction, MappingTable, OrderingPolicy, ValueSet, Word,
};
use crate::newton::{self, DensePolynomial};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Newton,
    Arith,
    Fourier,
    Iterative,
}

impl Backend {
    pub const ALL: [Backend; 4] = [
        Backend::Newton,
        Backend::Arith,
        Backend::Fourier,
        Backend::Iterative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Backend::Newton => "newton",
            Backend::Arith => "arith",
            Backend::Fourier => "fourier",
            Backend::Iterative => "iterative",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Backend {
    type Err = ComplementError;

    fn from_str(s: &str) -> Result<Self> {
        Backend::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| ComplementError::InvalidArgument(format!("unknown backend {s:?}")))
    }
}

/// The shared first half of every construction: `T`, `S`, `b`, and the
/// mapping table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Plan {
    pub function: FiniteFunction,
    pub image: ValueSet,
    pub complement: ValueSet,
    pub key_bits: u32,
    pub mapping: MappingTable,
    pub policy: OrderingPolicy,
}

impl Plan {
    /// `key_bits` overrides the minimal width; it must satisfy `2^b >= |S|`.
    pub fn new(f: &FiniteFunction, key_bits: Option<u32>, policy: OrderingPolicy) -> Result<Self> {
        let image = compute_image(f);
        let complement = complement_set(f.output_bits(), &image)?;
        let minimal = choose_domain_bits(complement.len() as u64, f.output_bits())?;
        let key_bits = key_bits.unwrap_or(minimal);
        let mapping = build_mapping(&complement, key_bits, policy)?;
        Ok(Self {
            function: f.clone(),
            image,
            complement,
            key_bits,
            mapping,
            policy,
        })
    }

    pub fn satisfies_existence_inequality(&self) -> bool {
        check_existence_inequality(
            self.function.input_bits(),
            self.key_bits,
            self.function.output_bits(),
        )
    }

    pub fn output_bits(&self) -> u32 {
        self.function.output_bits()
    }
}

/// A complement built by one backend, evaluable on every key.
#[derive(Debug, Clone)]
pub enum Representation {
    Newton(DensePolynomial),
    Arith {
        bits: Vec<BitPipeline>,
        combined: ArithExpression,
    },
    Fourier(FourierComplement),
    Iterative(Box<LazyComplement>),
}

impl Representation {
    pub fn backend(&self) -> Backend {
        match self {
            Representation::Newton(_) => Backend::Newton,
            Representation::Arith { .. } => Backend::Arith,
            Representation::Fourier(_) => Backend::Fourier,
            Representation::Iterative(_) => Backend::Iterative,
        }
    }

    /// Exact value at `x`. Backends that cannot produce a non-integer still
    /// report through `Rational` so disagreements stay visible.
    pub fn eval(&mut self, x: Word) -> Result<Rational> {
        match self {
            Representation::Newton(p) => Ok(newton::poly_eval(p, x)),
            Representation::Arith { combined, .. } => {
                let v = combined.eval(x);
                Ok(Rational::from_integer(v.into()))
            }
            Representation::Fourier(g) => g.eval(x),
            Representation::Iterative(lazy) => lazy.get(x).map(rational::from_word),
        }
    }
}

/// Builds the chosen backend's representation of the plan's complement.
///
/// The iterative backend does not read the mapping table: it always yields
/// the ascending assignment at the plan's key width.
pub fn synthesize(plan: &Plan, backend: Backend) -> Result<Representation> {
    Ok(match backend {
        Backend::Newton => Representation::Newton(newton::synthesize_newton(&plan.mapping)?),
        Backend::Arith => {
            let (bits, combined) = boolean::synthesize_arith(&plan.mapping, plan.output_bits())?;
            Representation::Arith { bits, combined }
        }
        Backend::Fourier => {
            Representation::Fourier(fourier::synthesize_fourier(&plan.mapping, plan.output_bits())?)
        }
        Backend::Iterative => Representation::Iterative(Box::new(LazyComplement::with_key_bits(
            &plan.function,
            plan.key_bits,
        )?)),
    })
}

/// Evaluates `rep` on every key of the plan's domain.
pub fn tabulate(rep: &mut Representation, key_bits: u32) -> Result<Vec<Rational>> {
    (0..pow2(key_bits)).map(|x| rep.eval(x)).collect()
}
