//! Randomized properties of bracket expansions and 6j evaluation.

mod common;

use gl6j_core::action::{check_semi_invariant, Weight};
use gl6j_core::exec::Exec;
use gl6j_core::index::Letter;
use gl6j_core::poly::SparsePoly;
use num_traits::Zero;
use gl6j_core::seminv::{expand, expand_with, parse_expr, Bracket, BracketSpec, Factor, Slot};
use gl6j_core::sixj::{contract_polys, sixj_oracle, sixj_value};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A valid spec with one or two factors of one to three brackets. The k-th
/// occurrence of a letter in a factor gets upper index `k mod n + 1`, which
/// keeps multiplicities weakly decreasing.
fn random_spec(seed: u64) -> BracketSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=3u8);
    let factors = (0..rng.gen_range(1..=2))
        .map(|_| {
            let k = rng.gen_range(1..=3usize);
            let mut seen = [0u8; 3];
            let mut slots: Vec<Slot> = (0..k * n as usize)
                .map(|_| {
                    let letter = Letter::ALL[rng.gen_range(0..3)];
                    let c = &mut seen[letter.index()];
                    *c += 1;
                    Slot { letter, upper: (*c - 1) % n + 1 }
                })
                .collect();
            slots.shuffle(&mut rng);
            let brackets = slots.chunks(n as usize).map(|c| Bracket(c.to_vec())).collect();
            Factor { brackets, power: rng.gen_range(1..=2) }
        })
        .collect();
    BracketSpec { n, factors }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rendering_reparses(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let text = spec.to_string();
        let back = parse_expr(&text, spec.n).unwrap();
        prop_assert_eq!(&back, &spec);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn expansions_are_semi_invariant(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let e = expand(&spec).unwrap();
        prop_assume!(!e.is_zero());
        let r = check_semi_invariant(&e.det_poly(), spec.n, Exec::Sequential).unwrap();
        prop_assert!(r.is_semi_invariant);
        prop_assert_eq!(r.weight, Some(Weight::uniform(spec.n, spec.bracket_count())));
    }

    #[test]
    fn strategies_agree(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let a = expand_with(&spec, Exec::Sequential).unwrap();
        let b = expand_with(&spec, Exec::Parallel).unwrap();
        prop_assert_eq!(a.poly, b.poly);
    }

    #[test]
    fn permuting_a_bracket_keeps_the_canonical_form(seed in any::<u64>()) {
        let spec = random_spec(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let mut shuffled = spec.clone();
        for f in &mut shuffled.factors {
            for b in &mut f.brackets {
                b.0.shuffle(&mut rng);
            }
        }
        prop_assert_eq!(expand(&spec).unwrap().det_poly(), expand(&shuffled).unwrap().det_poly());
    }
}

#[test]
fn value_matches_oracle_on_every_corpus_problem() {
    let corpus = common::corpus();
    for problem in corpus.problems() {
        let p = problem.build();
        assert_eq!(sixj_value(&p), sixj_oracle(&p), "{}", problem.label());
    }
}

/// Adds `h · (X₁X₂₃ − X₂X₁₃ + X₃X₁₂)` to one `f_i` of each nonzero matched
/// rank-3 problem, with `h` chosen so the shift keeps the weight, and
/// reports how often the contraction changes. Not an invariant.
#[test]
fn plucker_shift_is_reported() {
    use gl6j_core::index::IndexSet;
    use gl6j_core::poly::{Monomial, Rational, Variable};
    let n = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(common::SEED ^ 3);
    let pool = common::pool(n, &mut rng);
    let (mut same, mut changed) = (0, 0);
    for problem in common::matched(n, &pool, 400, &mut rng) {
        let p = problem.build();
        let base = sixj_oracle(&p);
        if base.is_zero() {
            continue;
        }
        let polys: Vec<SparsePoly> = p.expansions.iter().map(|e| e.det_poly()).collect();
        'outer: for i in 0..4 {
            for (m, _) in polys[i].terms() {
                for letter in Letter::ALL {
                    let d = |e: &[u8]| Variable::det(letter, IndexSet::new(n, e).unwrap());
                    for (x, yz) in [(1, [2, 3]), (2, [1, 3]), (3, [1, 2])] {
                        let divisor = Monomial::from_pairs([(d(&[x]), 1), (d(&yz), 1)]);
                        let Some((h, _)) = divisor.differentiate(m) else { continue };
                        let term = |a: u8, b: [u8; 2]| &SparsePoly::var(d(&[a])) * &SparsePoly::var(d(&b));
                        let pl = &(&term(1, [2, 3]) - &term(2, [1, 3])) + &term(3, [1, 2]);
                        let mut shifted = polys.clone();
                        shifted[i] = &shifted[i] + &(&pl * &SparsePoly::term(h, Rational::from_integer(1.into())));
                        let after = contract_polys([&shifted[0], &shifted[1], &shifted[2], &shifted[3]]);
                        if after == base {
                            same += 1;
                        } else {
                            changed += 1;
                        }
                        continue 'outer;
                    }
                }
            }
        }
    }
    println!("plucker shift: contraction unchanged in {same}, changed in {changed}");
    assert!(same + changed > 0);
}
