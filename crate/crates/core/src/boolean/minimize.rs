//! Two-level minimization: Quine–McCluskey prime implicants followed by a
//! greedy cover (essential primes first, then largest remaining coverage).

use std::collections::{BTreeSet, HashSet};

use super::dnf::{Clause, DnfFormula, Literal};
use crate::model::Word;

/// A cube: the variables in `care` are fixed to the matching bits of
/// `bits`; all others are free. `bits` is zero outside `care`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Implicant {
    care: Word,
    bits: Word,
}

impl Implicant {
    fn covers(self, x: Word) -> bool {
        x & self.care == self.bits
    }

    fn to_clause(self, vars: u32) -> Clause {
        let literals = (1..=vars)
            .filter(|v| (self.care >> (v - 1)) & 1 == 1)
            .map(|v| Literal {
                var: v,
                positive: (self.bits >> (v - 1)) & 1 == 1,
            })
            .collect();
        Clause::new(literals).expect("a cube fixes each variable once")
    }
}

fn prime_implicants(on_set: &[Word], vars: u32) -> Vec<Implicant> {
    let full = if vars == 0 { 0 } else { Word::MAX >> (Word::BITS - vars) };
    let mut level: BTreeSet<Implicant> = on_set
        .iter()
        .map(|&x| Implicant { care: full, bits: x })
        .collect();
    let mut primes = BTreeSet::new();

    while !level.is_empty() {
        let mut merged_into = HashSet::new();
        let mut next = BTreeSet::new();
        let cubes: Vec<Implicant> = level.iter().copied().collect();
        let present: HashSet<Implicant> = cubes.iter().copied().collect();
        for &cube in &cubes {
            // Merge with the partner that differs in exactly one fixed bit.
            let mut care = cube.care;
            while care != 0 {
                let bit = care & care.wrapping_neg();
                care &= care - 1;
                if cube.bits & bit != 0 {
                    continue;
                }
                let partner = Implicant {
                    care: cube.care,
                    bits: cube.bits | bit,
                };
                if present.contains(&partner) {
                    merged_into.insert(cube);
                    merged_into.insert(partner);
                    next.insert(Implicant {
                        care: cube.care & !bit,
                        bits: cube.bits,
                    });
                }
            }
        }
        primes.extend(cubes.into_iter().filter(|c| !merged_into.contains(c)));
        level = next;
    }
    primes.into_iter().collect()
}

fn greedy_cover(primes: &[Implicant], on_set: &[Word]) -> Vec<Implicant> {
    let mut chosen = BTreeSet::new();
    let mut uncovered: BTreeSet<Word> = on_set.iter().copied().collect();

    for &x in on_set {
        let mut covering = primes.iter().filter(|p| p.covers(x));
        if let (Some(&only), None) = (covering.next(), covering.next()) {
            chosen.insert(only);
        }
    }
    uncovered.retain(|&x| !chosen.iter().any(|p| p.covers(x)));

    while !uncovered.is_empty() {
        let best = primes
            .iter()
            .filter(|p| !chosen.contains(*p))
            .max_by_key(|p| {
                let gain = uncovered.iter().filter(|&&x| p.covers(x)).count();
                // Prefer larger gain, then the earliest prime in sorted order.
                (gain, std::cmp::Reverse(**p))
            })
            .copied()
            .expect("primes cover every on-set word");
        uncovered.retain(|&x| !best.covers(x));
        chosen.insert(best);
    }
    chosen.into_iter().collect()
}

/// Equivalent DNF over the same variables with no more clauses than `d`.
pub fn minimize_dnf(d: &DnfFormula) -> DnfFormula {
    let vars = d.var_count();
    let on_set: Vec<Word> = (0..1u64 << vars).filter(|&x| d.eval(x)).collect();
    if on_set.is_empty() {
        return DnfFormula::new(vars, Vec::new()).expect("empty formula");
    }
    let primes = prime_implicants(&on_set, vars);
    let cover = greedy_cover(&primes, &on_set);
    let mut clauses: Vec<Clause> = cover.into_iter().map(|p| p.to_clause(vars)).collect();
    clauses.sort();
    if clauses.len() > d.clauses().len() {
        // Greedy covers are not optimal; the input is itself a valid cover.
        return d.clone();
    }
    DnfFormula::new(vars, clauses).expect("clauses stay within the variable range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::dnf::Literal;

    fn clause(lits: &[(u32, bool)]) -> Clause {
        Clause::new(
            lits.iter()
                .map(|&(var, positive)| Literal { var, positive })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn tautology_collapses_to_true() {
        let d = DnfFormula::new(1, vec![clause(&[(1, false)]), clause(&[(1, true)])]).unwrap();
        let m = minimize_dnf(&d);
        assert_eq!(m.clauses(), &[Clause::default()]);
        assert_eq!(m.to_string(), "1");
    }

    #[test]
    fn adjacent_minterms_merge() {
        let d = DnfFormula::new(
            2,
            vec![clause(&[(1, true), (2, false)]), clause(&[(1, true), (2, true)])],
        )
        .unwrap();
        let m = minimize_dnf(&d);
        assert_eq!(m.clauses(), &[clause(&[(1, true)])]);
        assert_eq!(m.truth_table(), d.truth_table());
    }

    #[test]
    fn false_is_a_fixed_point() {
        let d = DnfFormula::new(3, vec![]).unwrap();
        assert!(minimize_dnf(&d).clauses().is_empty());
    }

    #[test]
    fn xor_has_no_merges() {
        let d = DnfFormula::new(
            2,
            vec![clause(&[(1, true), (2, false)]), clause(&[(1, false), (2, true)])],
        )
        .unwrap();
        assert_eq!(minimize_dnf(&d).clauses().len(), 2);
    }

    #[test]
    fn classic_four_variable_example() {
        // f = sum of minterms 4,8,10,11,12,15 with nothing else; six minterms
        // reduce to at most four primes.
        let on = [4u64, 8, 10, 11, 12, 15];
        let d = DnfFormula::new(4, on.iter().map(|&x| Clause::minterm(x, 4)).collect()).unwrap();
        let m = minimize_dnf(&d);
        assert_eq!(m.truth_table(), d.truth_table());
        assert!(m.clauses().len() <= 4, "got {m}");
    }

    #[test]
    fn non_minterm_input_never_grows() {
        let d = DnfFormula::new(3, vec![clause(&[(1, true)]), clause(&[(2, true)])]).unwrap();
        let m = minimize_dnf(&d);
        assert!(m.clauses().len() <= 2);
        assert_eq!(m.truth_table(), d.truth_table());
    }
}
