//! Per-output-bit DNF synthesis and its arithmetization.

pub mod arith;
pub mod dnf;
pub mod minimize;

pub use arith::{arith_eval, arithmetize_simple, combine_bits_weighted, ArithExpression};
pub use dnf::{build_bit_dnf, Clause, DnfFormula, Literal};
pub use minimize::minimize_dnf;

use crate::error::Result;
use crate::model::MappingTable;

/// Every stage of the boolean pipeline for one output bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitPipeline {
    pub dnf: DnfFormula,
    pub minimized: DnfFormula,
    pub arith: ArithExpression,
}

/// Builds, minimizes and arithmetizes all `n` output bits, then combines
/// them into one expression for `g`.
pub fn synthesize_arith(
    m: &MappingTable,
    output_bits: u32,
) -> Result<(Vec<BitPipeline>, ArithExpression)> {
    let bits = (1..=output_bits)
        .map(|i| {
            let dnf = build_bit_dnf(m, i)?;
            let minimized = minimize_dnf(&dnf);
            let arith = arithmetize_simple(&minimized);
            Ok(BitPipeline {
                dnf,
                minimized,
                arith,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let combined = combine_bits_weighted(bits.iter().map(|b| b.arith.clone()).collect())?;
    Ok((bits, combined))
}
