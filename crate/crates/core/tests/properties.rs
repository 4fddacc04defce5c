mod support {
    pub mod oracles;
}

use std::collections::BTreeSet;

use complement_core::boolean::{
    arithmetize_simple, build_bit_dnf, minimize_dnf, synthesize_arith, ArithExpression, Clause,
    DnfFormula,
};
use complement_core::fourier::{fourier_expand_bit, synthesize_fourier};
use complement_core::iterative::{stream_complement, AffineDecider, LazyComplement, MembershipDecider};
use complement_core::*;
use num_traits::One;
use proptest::prelude::*;
use support::oracles;

/// A function plus its non-empty complement set.
fn function_strategy(max_a: u32, max_n: u32) -> impl Strategy<Value = FiniteFunction> {
    (1..=max_a, 1..=max_n).prop_flat_map(|(a, n)| {
        let universe = 1u64 << n;
        prop::collection::vec(0..universe, 1usize << a)
            .prop_map(move |values| FiniteFunction::new(a, n, values).unwrap())
    })
}

fn mapping_strategy(max_b: u32, max_n: u32) -> impl Strategy<Value = (MappingTable, u32)> {
    (1..=max_b, 1..=max_n).prop_flat_map(|(b, n)| {
        let universe = 1u64 << n;
        let max_fresh = (1usize << b).min(universe as usize);
        (
            prop::collection::btree_set(0..universe, 1..=max_fresh),
            any::<u64>(),
        )
            .prop_map(move |(s, seed)| {
                let s = ValueSet::new(n, s.into_iter().collect()).unwrap();
                let m = build_mapping(&s, b, OrderingPolicy::SeededRandom { seed }).unwrap();
                (m, n)
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn image_and_complement_partition_universe(f in function_strategy(6, 10)) {
        let t = compute_image(&f);
        let s = complement_set(f.output_bits(), &t).unwrap();
        prop_assert_eq!(s.members(), &oracles::brute_complement(f.output_bits(), f.values())[..]);
        prop_assert_eq!(s.len() + t.len(), 1usize << f.output_bits());
        prop_assert!(s.iter().all(|w| !t.contains(w)));
    }

    #[test]
    fn mapping_invariants(f in function_strategy(6, 8), seed in any::<u64>(), extra in 0u32..2) {
        let t = compute_image(&f);
        let s = complement_set(f.output_bits(), &t).unwrap();
        prop_assume!(!s.is_empty());
        let b = choose_domain_bits(s.len() as u64, f.output_bits()).unwrap() + extra;
        for policy in [OrderingPolicy::Ascending, OrderingPolicy::SeededRandom { seed }] {
            let m = build_mapping(&s, b, policy).unwrap();
            prop_assert_eq!(m.len(), 1usize << b);
            let fresh: BTreeSet<Word> = m.fresh_values().collect();
            prop_assert_eq!(fresh.len(), s.len());
            prop_assert!(fresh.iter().copied().eq(s.iter()));
            let head = m.get(0).unwrap();
            for e in m.entries() {
                if e.kind == EntryKind::Surplus {
                    prop_assert_eq!(e.value, head);
                }
            }
            // Fresh entries come first, then only surplus.
            prop_assert!(m.entries()[..s.len()].iter().all(|e| e.kind == EntryKind::Fresh));
            prop_assert_eq!(build_mapping(&s, b, policy).unwrap(), m);
        }
    }

    #[test]
    fn domain_bits_is_least(s in 1u64..100_000) {
        let b = choose_domain_bits(s, 20).unwrap();
        prop_assert!(b >= 1 && (1u64 << b) >= s);
        prop_assert!(b == 1 || (1u64 << (b - 1)) < s);
    }

    #[test]
    fn newton_matches_lagrange((m, _n) in mapping_strategy(6, 8)) {
        let p = synthesize_newton(&m).unwrap();
        let points: Vec<(Word, Word)> = m.entries().iter().map(|e| (e.key, e.value)).collect();
        prop_assert_eq!(p.coefficients(), &oracles::lagrange_coefficients(&points)[..]);
        prop_assert!(p.degree().unwrap_or(0) < m.len());
        for e in m.entries() {
            let v = poly_eval(&p, e.key);
            prop_assert!(v.denom().is_one());
            prop_assert_eq!(v, Rational::from_integer(e.value.into()));
        }
    }

    #[test]
    fn newton_ignores_node_order((m, _n) in mapping_strategy(5, 6), seed in any::<u64>()) {
        let mut points: Vec<(Word, Word)> = m.entries().iter().map(|e| (e.key, e.value)).collect();
        let forward = newton_interpolate(&points).unwrap();
        // Deterministic shuffle driven by the seed.
        let mut state = seed | 1;
        for i in (1..points.len()).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            points.swap(i, (state % (i as u64 + 1)) as usize);
        }
        prop_assert_eq!(newton_interpolate(&points).unwrap(), forward);
    }

    #[test]
    fn multiplexer_and_arithmetization((m, n) in mapping_strategy(7, 8)) {
        for bit in 1..=n {
            let dnf = build_bit_dnf(&m, bit).unwrap();
            let min = minimize_dnf(&dnf);
            let expr = arithmetize_simple(&min);
            let raw_expr = arithmetize_simple(&dnf);
            for e in m.entries() {
                let want = (e.value >> (bit - 1)) & 1 == 1;
                prop_assert_eq!(dnf.eval(e.key), want);
                prop_assert_eq!(min.eval(e.key), want);
                prop_assert_eq!(expr.eval(e.key), i128::from(want));
                prop_assert_eq!(raw_expr.eval(e.key), i128::from(want));
            }
            prop_assert!(min.clauses().len() <= dnf.clauses().len());
        }
        let (_, combined) = synthesize_arith(&m, n).unwrap();
        for e in m.entries() {
            prop_assert_eq!(combined.eval(e.key), i128::from(e.value));
        }
    }

    #[test]
    fn minimization_preserves_arbitrary_formulas(
        vars in 1u32..=6,
        raw in prop::collection::vec(prop::collection::vec((1u32..=6, any::<bool>()), 0..4), 0..8),
    ) {
        let clauses: Vec<Clause> = raw
            .into_iter()
            .filter_map(|lits| {
                let lits: Vec<_> = lits
                    .into_iter()
                    .filter(|(v, _)| *v <= vars)
                    .map(|(var, positive)| complement_core::boolean::Literal { var, positive })
                    .collect();
                Clause::new(lits).ok()
            })
            .collect();
        let d = DnfFormula::new(vars, clauses).unwrap();
        let m = minimize_dnf(&d);
        prop_assert_eq!(m.truth_table(), d.truth_table());
        prop_assert!(m.clauses().len() <= d.clauses().len());
    }

    #[test]
    fn or_association_is_irrelevant((m, n) in mapping_strategy(4, 4)) {
        for bit in 1..=n {
            let dnf = build_bit_dnf(&m, bit).unwrap();
            let or = |a: ArithExpression, b: ArithExpression| {
                ArithExpression::one_minus(ArithExpression::Product(vec![
                    ArithExpression::one_minus(a),
                    ArithExpression::one_minus(b),
                ]))
            };
            let singles: Vec<ArithExpression> = dnf
                .clauses()
                .iter()
                .map(|c| arithmetize_simple(&DnfFormula::new(dnf.var_count(), vec![c.clone()]).unwrap()))
                .collect();
            let right = singles.into_iter().rev().reduce(|acc, e| or(e, acc));
            let left = arithmetize_simple(&dnf);
            for x in 0..(1u64 << m.key_bits()) {
                let r = right.as_ref().map_or(0, |e| e.eval(x));
                prop_assert_eq!(left.eval(x), r);
            }
        }
    }

    #[test]
    fn fourier_reconstructs_and_is_dyadic((m, n) in mapping_strategy(6, 8)) {
        let b = m.key_bits();
        let g = synthesize_fourier(&m, n).unwrap();
        for e in m.entries() {
            prop_assert_eq!(g.eval_word(e.key).unwrap(), Some(e.value));
        }
        let table = m.values();
        for bit in 1..=n {
            let p = fourier_expand_bit(&m, bit).unwrap();
            prop_assert_eq!(p.coefficients(), &oracles::direct_fourier(&table, b, bit));
            for c in p.coefficients().values() {
                prop_assert!(((num_bigint::BigInt::one() << b) % c.denom()) == 0.into());
            }
            let column: BTreeSet<Word> = table.iter().map(|v| (v >> (bit - 1)) & 1).collect();
            if column.len() == 1 {
                prop_assert_eq!(p.coefficients().len(), 1);
                prop_assert!(p.coefficients().contains_key(&0));
            }
        }
    }

    #[test]
    fn lazy_complement_matches_ascending_mapping(f in function_strategy(6, 8), extra in 0u32..2) {
        let t = compute_image(&f);
        let s = complement_set(f.output_bits(), &t).unwrap();
        prop_assume!(!s.is_empty());
        let b = choose_domain_bits(s.len() as u64, f.output_bits()).unwrap() + extra;
        let m = build_mapping(&s, b, OrderingPolicy::Ascending).unwrap();
        let mut lazy = LazyComplement::with_key_bits(&f, b).unwrap();
        // Query in reverse so the memo is filled out of order.
        for e in m.entries().iter().rev() {
            prop_assert_eq!(lazy.get(e.key).unwrap(), e.value);
        }
        let snapshot = lazy.memo().clone();
        for e in m.entries() {
            prop_assert_eq!(lazy.get(e.key).unwrap(), e.value);
        }
        prop_assert_eq!(lazy.memo(), &snapshot);
    }

    #[test]
    fn affine_stream_is_ascending_and_disjoint(slope in 1u64..6, offset in 0u64..10, count in 1usize..40) {
        let d = AffineDecider { slope, offset };
        let out = stream_complement(&d, count, 100_000).unwrap_or_default();
        prop_assert!(out.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(out.iter().all(|&y| !d.contains(y)));
        let brute: Vec<u64> = (0..).filter(|&y| !(y >= offset && (y - offset) % slope == 0)).take(out.len()).collect();
        prop_assert_eq!(out, brute);
    }

    #[test]
    fn disjointness_implies_pointwise(f in function_strategy(4, 5), g_seed in prop::collection::vec(0u64..32, 16)) {
        let n = f.output_bits();
        let g: Vec<Word> = g_seed.iter().map(|v| v % (1 << n)).collect();
        let r = verify_complement(&f, &g, 4);
        prop_assert!(!(r.disjoint.ok && !r.pointwise.ok));
    }

    #[test]
    fn json_round_trips((m, n) in mapping_strategy(5, 6)) {
        let text = serde_json::to_string(&m).unwrap();
        prop_assert_eq!(&serde_json::from_str::<MappingTable>(&text).unwrap(), &m);
        let p = synthesize_newton(&m).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::to_string(&serde_json::from_str::<DensePolynomial>(&text).unwrap()).unwrap(), text);
        let (bits, combined) = synthesize_arith(&m, n).unwrap();
        let text = combined.to_string();
        prop_assert_eq!(text.parse::<ArithExpression>().unwrap(), combined);
        for b in bits {
            prop_assert_eq!(b.arith.to_string().parse::<ArithExpression>().unwrap(), b.arith);
        }
        let g = synthesize_fourier(&m, n).unwrap();
        for p in g.bits() {
            let text = serde_json::to_string(p).unwrap();
            prop_assert_eq!(&serde_json::from_str::<complement_core::fourier::MultilinearPolynomial>(&text).unwrap(), p);
        }
    }
}

#[test]
fn onto_count_matches_factorial() {
    for size in 1..=4usize {
        let s = ValueSet::new(4, (0..size as u64).map(|i| 3 * i + 1).collect()).unwrap();
        let b = choose_domain_bits(size as u64, 4).unwrap();
        let tables = oracles::all_choice_tables(&s, b);
        assert_eq!(tables.len(), oracles::factorial(size), "|S| = {size}");
    }
}

#[test]
fn nontrivial_product_complement_is_the_primes() {
    use complement_core::iterative::NontrivialProductDecider;
    let primes = oracles::sieve(2000);
    let got = stream_complement(&NontrivialProductDecider, primes.len(), 2000).unwrap();
    assert_eq!(got, primes);
}

#[test]
fn minimization_is_sound_up_to_ten_variables() {
    // One pseudo-random column per width; exhaustive truth-table equality.
    for b in 1..=10u32 {
        let size = 1u64 << b;
        let values: Vec<Word> = (0..size).map(|x| (x.wrapping_mul(2654435761) >> 7) % 4).collect();
        for bit in 1..=2 {
            let clauses = (0..size)
                .filter(|&x| (values[x as usize] >> (bit - 1)) & 1 == 1)
                .map(|x| Clause::minterm(x, b))
                .collect();
            let d = DnfFormula::new(b, clauses).unwrap();
            let min = minimize_dnf(&d);
            assert_eq!(min.truth_table(), d.truth_table(), "b = {b}, bit = {bit}");
            assert!(min.clauses().len() <= d.clauses().len());
        }
    }
}
