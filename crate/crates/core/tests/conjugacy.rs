mod common;

use betalab::conjugacy::{verify_conjugacy, Conjugacy, ConjugacyError};
use betalab::word::DigitWord;
use num_bigint::BigInt;

#[test]
fn phi_maps_blocks_into_the_target() {
    let c = Conjugacy::build(2, &[2, 1]).unwrap();
    // blocks of length 7 read input windows of length 8, which cover every
    // shorter window
    c.phi.check_closure(7).unwrap();
    c.psi.check_closure(7).unwrap();
}

#[test]
fn census_matches_independent_traces() {
    for (n, w) in [(2u32, vec![2u64, 1]), (3, vec![1]), (2, vec![5, 0, 1])] {
        let r = verify_conjugacy(n, &w, 4).unwrap();
        assert!(r.passed(), "{n} {w:?}: {:?}", r.witness);
        for row in &r.census {
            let p = row.p as u32;
            let c = common::trace_power(&r.c, p) * BigInt::from(n).pow(p);
            let b = common::trace_power(&r.b, p);
            assert_eq!(c, b);
            assert_eq!(row.product_count, c.to_string());
            assert_eq!(BigInt::from(row.source_points), c);
            assert_eq!(BigInt::from(row.target_points), b);
        }
    }
}

#[test]
fn three_letter_word_widens_both_windows() {
    // 5,0,1 scaled by 2 is 10,0,8: still greater than its shifts, while
    // 3,0,1 would give 6,0,8
    assert!(Conjugacy::build(2, &[3, 0, 1]).is_err());
    let c = Conjugacy::build(2, &[5, 0, 1]).unwrap();
    assert_eq!(c.scaled, DigitWord(vec![10, 0, 8]));
    assert_eq!((c.phi.memory(), c.phi.anticipation()), (-2, 0));
    assert_eq!((c.psi.memory(), c.psi.anticipation()), (0, 2));
}

#[test]
fn failed_lex_condition_stops_before_verification() {
    assert_eq!(
        verify_conjugacy(2, &[1, 1], 6).unwrap_err(),
        ConjugacyError::LexConditionFailed(DigitWord(vec![2, 4]))
    );
    // 2,1 scaled by 3 is 6,9
    assert!(matches!(verify_conjugacy(3, &[2, 1], 2), Err(ConjugacyError::LexConditionFailed(_))));
}

#[test]
fn emitted_tables_use_graph_labels() {
    let c = Conjugacy::build(2, &[2, 1]).unwrap();
    let table = c.phi_table();
    assert_eq!(table.len(), c.phi.table_len());
    let hit = table
        .iter()
        .find(|e| e.window == ["(0,*1)", "(1,(2,0))"])
        .unwrap();
    assert_eq!(hit.out, "(0,1,0)");
    let inv = c.psi_table();
    let hit = inv.iter().find(|e| e.window == ["*1", "(0,1,0)"]).unwrap();
    assert_eq!(hit.out, "(0,*1)");
}
