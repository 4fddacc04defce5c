//! Exhaustive checks of the complement axioms and of backend agreement.
//!
//! A report never stops at the first failure: every axiom is evaluated and
//! each failed one carries its smallest witness.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{pow2, FiniteFunction, OrderingPolicy, Word};
use crate::rational::{self, Rational};
use crate::synth::{synthesize, tabulate, Backend, Plan};

/// `g(x) != f(x)` on the common domain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointwiseCheck {
    pub ok: bool,
    pub witness: Option<Word>,
}

/// `L(f) ∪ L(g)` is the whole universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionCheck {
    pub ok: bool,
    pub missing: Option<Word>,
}

/// `L(f) ∩ L(g)` is empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisjointCheck {
    pub ok: bool,
    pub shared: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disagreement {
    pub backend: Backend,
    pub key: Word,
    pub expected: Word,
    /// Exact value the backend produced, as `"num/den"`.
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementCheck {
    pub ok: bool,
    pub witness: Option<Disagreement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub total: bool,
    pub pointwise: PointwiseCheck,
    pub union: UnionCheck,
    pub disjoint: DisjointCheck,
    pub agreement: AgreementCheck,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.total && self.pointwise.ok && self.union.ok && self.disjoint.ok && self.agreement.ok
    }
}

/// Checks `g` (given by its value table over `b`-bit keys) against `f`.
pub fn verify_complement(f: &FiniteFunction, g_values: &[Word], b: u32) -> VerificationReport {
    let n = f.output_bits();
    let universe = pow2(n);
    let total = b <= crate::model::MAX_BITS
        && g_values.len() as u64 == pow2(b)
        && g_values.iter().all(|&v| v < universe);

    let common = (f.values().len()).min(g_values.len());
    let pointwise_witness = (0..common)
        .find(|&x| f.values()[x] == g_values[x])
        .map(|x| x as Word);

    let mut in_f = vec![false; universe as usize];
    for &v in f.values() {
        in_f[v as usize] = true;
    }
    let mut in_g = vec![false; universe as usize];
    for &v in g_values.iter().filter(|&&v| v < universe) {
        in_g[v as usize] = true;
    }
    let missing = (0..universe).find(|&w| !in_f[w as usize] && !in_g[w as usize]);
    let shared = (0..universe).find(|&w| in_f[w as usize] && in_g[w as usize]);

    VerificationReport {
        total,
        pointwise: PointwiseCheck {
            ok: pointwise_witness.is_none(),
            witness: pointwise_witness,
        },
        union: UnionCheck {
            ok: missing.is_none(),
            missing,
        },
        disjoint: DisjointCheck {
            ok: shared.is_none(),
            shared,
        },
        agreement: AgreementCheck {
            ok: true,
            witness: None,
        },
    }
}

/// First key (then first backend in `Backend::ALL` order) where a backend's
/// value differs from the expected table.
fn first_disagreement(tables: &[(Backend, Vec<Rational>, &[Word])]) -> Option<Disagreement> {
    let keys = tables.iter().map(|(_, got, _)| got.len()).max().unwrap_or(0);
    (0..keys).find_map(|k| {
        tables.iter().find_map(|(backend, got, expected)| {
            let want = expected[k];
            (got[k] != rational::from_word(want)).then(|| Disagreement {
                backend: *backend,
                key: k as Word,
                expected: want,
                got: rational::format(&got[k]),
            })
        })
    })
}

/// Builds the complement with every backend and checks agreement on every
/// key, then verifies the axioms on the mapping's values.
///
/// Newton, arith and Fourier are compared with the policy's mapping table.
/// The iterative backend always realizes the ascending assignment, so it is
/// compared with the ascending table at the same key width.
pub fn cross_check_backends(
    f: &FiniteFunction,
    policy: OrderingPolicy,
    key_bits: Option<u32>,
) -> Result<VerificationReport> {
    let plan = Plan::new(f, key_bits, policy)?;
    check_plan(&plan, &Backend::ALL)
}

/// As [`cross_check_backends`], restricted to `backends` on a prepared plan.
pub fn check_plan(plan: &Plan, backends: &[Backend]) -> Result<VerificationReport> {
    let f = &plan.function;
    let policy = plan.policy;
    let expected = plan.mapping.values();
    let ascending = match policy {
        OrderingPolicy::Ascending => expected.clone(),
        OrderingPolicy::SeededRandom { .. } => {
            Plan::new(f, Some(plan.key_bits), OrderingPolicy::Ascending)?
                .mapping
                .values()
        }
    };

    let mut tables = Vec::with_capacity(backends.len());
    for &backend in backends {
        let mut rep = synthesize(plan, backend)?;
        let got = tabulate(&mut rep, plan.key_bits)?;
        let want: &[Word] = if backend == Backend::Iterative {
            &ascending
        } else {
            &expected
        };
        tables.push((backend, got, want));
    }

    let mut report = verify_complement(f, &expected, plan.key_bits);
    let witness = first_disagreement(&tables);
    report.agreement = AgreementCheck {
        ok: witness.is_none(),
        witness,
    };
    Ok(report)
}
