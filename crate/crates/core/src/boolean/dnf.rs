use std::fmt;

use crate::error::{ComplementError, Result};
use crate::model::{MappingTable, Word};

/// A literal over input bit `s_var` (1-based, `s_1` least significant).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: u32,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Self { var, positive: true }
    }

    pub fn neg(var: u32) -> Self {
        Self { var, positive: false }
    }

    pub fn eval(self, x: Word) -> bool {
        ((x >> (self.var - 1)) & 1 == 1) == self.positive
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.positive {
            f.write_str("!")?;
        }
        write!(f, "s{}", self.var)
    }
}

/// Conjunction of literals, sorted by variable. The empty clause is TRUE.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        literals.sort();
        literals.dedup();
        if let Some(w) = literals.windows(2).find(|w| w[0].var == w[1].var) {
            return Err(ComplementError::InvalidArgument(format!(
                "clause contains both polarities of s{}",
                w[0].var
            )));
        }
        Ok(Self(literals))
    }

    /// The minterm fixing all `vars` bits to those of `x`.
    pub fn minterm(x: Word, vars: u32) -> Self {
        Self(
            (1..=vars)
                .map(|v| Literal {
                    var: v,
                    positive: (x >> (v - 1)) & 1 == 1,
                })
                .collect(),
        )
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn is_true(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: Word) -> bool {
        self.0.iter().all(|l| l.eval(x))
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("&")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Disjunction of clauses over `s_1 ..= s_{var_count}`. No clauses is FALSE.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    var_count: u32,
    clauses: Vec<Clause>,
}

impl DnfFormula {
    pub fn new(var_count: u32, clauses: Vec<Clause>) -> Result<Self> {
        if let Some(l) = clauses
            .iter()
            .flat_map(|c| c.literals())
            .find(|l| l.var == 0 || l.var > var_count)
        {
            return Err(ComplementError::InvalidArgument(format!(
                "literal {l} outside s1..=s{var_count}"
            )));
        }
        Ok(Self { var_count, clauses })
    }

    pub fn var_count(&self) -> u32 {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn eval(&self, x: Word) -> bool {
        self.clauses.iter().any(|c| c.eval(x))
    }

    /// Truth table over `{0,1}^var_count`, indexed by input word.
    pub fn truth_table(&self) -> Vec<bool> {
        (0..1u64 << self.var_count).map(|x| self.eval(x)).collect()
    }
}

/// Clauses joined by `" | "`; `1` is the empty clause, `0` the empty formula.
impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl DnfFormula {
    /// Parses the text form produced by `Display`.
    pub fn parse(var_count: u32, text: &str) -> Result<Self> {
        let bad = || ComplementError::InvalidArgument(format!("malformed DNF {text:?}"));
        if text == "0" {
            return Self::new(var_count, Vec::new());
        }
        let clauses = text
            .split(" | ")
            .map(|clause| {
                if clause == "1" {
                    return Ok(Clause::default());
                }
                let literals = clause
                    .split('&')
                    .map(|lit| {
                        let (positive, rest) = match lit.strip_prefix('!') {
                            Some(rest) => (false, rest),
                            None => (true, lit),
                        };
                        let var = rest
                            .strip_prefix('s')
                            .and_then(|v| v.parse::<u32>().ok())
                            .ok_or_else(bad)?;
                        Ok(Literal { var, positive })
                    })
                    .collect::<Result<Vec<_>>>()?;
                let parsed = Clause::new(literals)?;
                if parsed.to_string() != clause {
                    return Err(bad());
                }
                Ok(parsed)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(var_count, clauses)
    }
}

/// Multiplexer for output bit `bit_index` (1 = least significant): one
/// minterm per key whose mapped value has that bit set.
pub fn build_bit_dnf(m: &MappingTable, bit_index: u32) -> Result<DnfFormula> {
    if bit_index == 0 || bit_index > Word::BITS {
        return Err(ComplementError::InvalidArgument(format!(
            "bit index {bit_index} out of range"
        )));
    }
    let vars = m.key_bits();
    let clauses = m
        .entries()
        .iter()
        .filter(|e| (e.value >> (bit_index - 1)) & 1 == 1)
        .map(|e| Clause::minterm(e.key, vars))
        .collect();
    Ok(DnfFormula {
        var_count: vars,
        clauses,
    })
}
