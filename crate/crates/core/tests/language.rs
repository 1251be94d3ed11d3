mod common;

use betalab::beta::{classify, code_words, is_admissible, parse_code, Beta, BetaShiftDescriptor};
use betalab::sft::{companion_edge_sft, EdgeSFT};
use num_bigint::BigUint;
use proptest::prelude::*;

/// The test bases with their expansions of 1.
fn bases() -> Vec<(&'static str, BetaShiftDescriptor, Vec<u64>)> {
    vec![
        ("2", classify(&Beta::integer(2), 100).unwrap(), vec![2]),
        ("golden", BetaShiftDescriptor::from_digits(&[1, 1]).unwrap(), vec![1, 1]),
        ("gamma", BetaShiftDescriptor::from_digits(&[1, 1, 1]).unwrap(), vec![1, 1, 1]),
        ("gamma^2", BetaShiftDescriptor::from_digits(&[3, 1, 1]).unwrap(), vec![3, 1, 1]),
    ]
}

#[test]
fn membership_matches_code_factor_oracle_up_to_length_8() {
    for (name, desc, d) in bases() {
        let code = common::code_set(&d);
        for len in 0..=8 {
            for w in common::all_words(desc.alphabet_size(), len) {
                assert_eq!(
                    is_admissible(&desc, &w),
                    common::factor_of_code_star(&code, &w),
                    "{name}: {w:?}"
                );
            }
        }
    }
}

#[test]
fn code_words_match_definition() {
    for (name, desc, d) in bases() {
        let mut ours: Vec<Vec<u64>> = code_words(&desc, 6).into_iter().map(|w| w.0).collect();
        ours.sort();
        let mut expected = common::code_set(&d);
        expected.sort();
        assert_eq!(ours, expected, "{name}");
    }
}

#[test]
fn word_counts_follow_row_zero_of_the_companion_power() {
    for (name, desc, d) in bases() {
        let x = companion_edge_sft(&d).unwrap();
        let code = common::code_set(&d);
        for len in 1..=8u32 {
            let brute = common::all_words(desc.alphabet_size(), len as usize)
                .into_iter()
                .filter(|w| common::factor_of_code_star(&code, w))
                .count();
            let row0: BigUint = x.power(len)[0].iter().sum();
            assert_eq!(row0, BigUint::from(brute), "{name}, length {len}");
            // the same count via paths leaving state 0
            assert_eq!(x.paths_from(0, len), BigUint::from(brute));
        }
    }
    // the row convention, not the full entry sum, gives 2^L for beta = 2
    assert_eq!(EdgeSFT::full(2).power(3)[0].iter().sum::<BigUint>(), BigUint::from(8u32));
}

fn gamma_sq() -> BetaShiftDescriptor {
    BetaShiftDescriptor::from_digits(&[3, 1, 1]).unwrap()
}

fn code_word() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::select(vec![vec![0], vec![1], vec![2], vec![3, 0], vec![3, 1, 0]])
}

proptest! {
    #[test]
    fn parse_recovers_concatenated_code_words(words in prop::collection::vec(code_word(), 0..12)) {
        let desc = gamma_sq();
        let w: Vec<u64> = words.concat();
        let parsed = parse_code(&desc, &w).unwrap();
        prop_assert!(parsed.remainder.is_empty());
        let got: Vec<Vec<u64>> = parsed.words.into_iter().map(|c| c.0).collect();
        prop_assert_eq!(got, words);
    }

    #[test]
    fn language_is_factorial(words in prop::collection::vec(code_word(), 1..8), cut in 0usize..40, len in 0usize..40) {
        let desc = gamma_sq();
        let w: Vec<u64> = words.concat();
        prop_assert!(is_admissible(&desc, &w));
        let a = cut.min(w.len());
        let b = (a + len).min(w.len());
        prop_assert!(is_admissible(&desc, &w[a..b]));
    }

    #[test]
    fn parse_remainder_is_a_proper_prefix(words in prop::collection::vec(code_word(), 0..6), extra in 0usize..3) {
        let desc = gamma_sq();
        let mut w: Vec<u64> = words.concat();
        // a proper prefix of the code word 310
        w.extend(&[3, 1][..extra.min(2)]);
        let parsed = parse_code(&desc, &w).unwrap();
        prop_assert_eq!(parsed.remainder.0, vec![3, 1][..extra.min(2)].to_vec());
    }
}
