use betalab::ca::{sensitivity_probe, space_time, verify_blocking, BlockingStatus, ProbeFlag, EXTENSION_BUDGET};
use betalab::code::{builtin, SlidingBlockCode};
use betalab::config::Configuration;
use betalab::conjugacy::{periodic_words, Conjugacy};
use betalab::shift::{Ambient, AmbientSpec};
use proptest::prelude::*;

/// A radius-1 rule on the full `k`-shift from its table in window order.
fn rule(k: u32, table: &[u32]) -> SlidingBlockCode {
    let amb = Ambient::full(k);
    SlidingBlockCode::from_fn(amb.clone(), amb, -1, 1, |w| {
        let idx = (w[0] * k + w[1]) * k + w[2];
        table[idx as usize] % k
    })
    .unwrap()
}

fn config(k: u32) -> impl Strategy<Value = Configuration> {
    (
        prop::collection::vec(0..k, 1..4),
        prop::collection::vec(0..k, 0..7),
        prop::collection::vec(0..k, 1..4),
        -5i64..5,
    )
        .prop_map(|(u, w, v, s)| Configuration::new(u, w, v, s).unwrap())
}

proptest! {
    #[test]
    fn apply_commutes_with_shift(table in prop::collection::vec(0u32..3, 27), x in config(3), k in -3i64..3) {
        let f = rule(3, &table);
        prop_assert_eq!(f.apply(&x.shifted(k)).unwrap(), f.apply(&x).unwrap().shifted(k));
    }

    #[test]
    fn square_is_two_steps(table in prop::collection::vec(0u32..2, 8), x in config(2)) {
        let f = rule(2, &table);
        let f2 = f.power(2).unwrap();
        prop_assert_eq!(f2.apply(&x).unwrap(), f.apply(&f.apply(&x).unwrap()).unwrap());
    }

    #[test]
    fn directions_compose(table in prop::collection::vec(0u32..2, 8), x in config(2), p in -2i64..3) {
        let f = rule(2, &table);
        let g = f.with_shift(p, 1).unwrap();
        prop_assert_eq!(g.apply(&x).unwrap(), f.apply(&x).unwrap().shifted(p));
    }

    #[test]
    fn conjugacy_codes_invert_each_other(digits in prop::collection::vec(0u32..2, 12), shift in -4i64..4) {
        let c = Conjugacy::build(2, &[2, 1]).unwrap();
        // a point of S_2 x X_C built from a loop word, with random digits
        let loops = [c.xc.symbol(&betalab::conjugacy::EdgeLabel::Return { j: 1, digits: vec![], k: 0 }).unwrap(),
                     c.xc.symbol(&betalab::conjugacy::EdgeLabel::Star { j: 1 }).unwrap(),
                     c.xc.symbol(&betalab::conjugacy::EdgeLabel::Return { j: 2, digits: vec![], k: 0 }).unwrap()];
        let w: Vec<u32> = digits.iter().enumerate().map(|(i, &d)| c.source.join(d, loops[i % 3]).unwrap()).collect();
        let x = Configuration::periodic(&w).unwrap().shifted(shift);
        x.check_admissible(&c.source).unwrap();
        let y = c.phi.apply(&x).unwrap();
        y.check_admissible(&c.target).unwrap();
        prop_assert_eq!(c.psi.apply(&y).unwrap(), x);
    }
}

/// All periodic configurations of the full 2-shift with period at most 5.
fn binary_periodic_points() -> Vec<Configuration> {
    let amb = Ambient::full(2);
    (1..=5)
        .flat_map(|p| periodic_words(&amb, p).unwrap())
        .map(|w| Configuration::periodic(&w).unwrap())
        .collect()
}

#[test]
fn composition_is_coherent_on_periodic_points() {
    let points = binary_periodic_points();
    assert_eq!(points.len(), 2 + 4 + 8 + 16 + 32);
    // every radius-1 rule against a fixed set of partners
    let partners = [30u32, 90, 110, 184, 204];
    for code in (0u32..256).step_by(7) {
        let table: Vec<u32> = (0..8).map(|i| (code >> i) & 1).collect();
        let f = rule(2, &table);
        for &q in &partners {
            let g = rule(2, &(0..8).map(|i| (q >> i) & 1).collect::<Vec<_>>());
            let fg = f.compose(&g).unwrap();
            assert_eq!((fg.memory(), fg.anticipation()), (-2, 2));
            for x in &points {
                assert_eq!(fg.apply(x).unwrap(), f.apply(&g.apply(x).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn shift_diagram_rows_are_translates() {
    let amb = Ambient::full(2);
    let s = SlidingBlockCode::shift(&amb);
    let x = Configuration::parse("(0)^inf 1,1 . 0,1 (1,0)^inf", None).unwrap();
    let d = space_time(&s, &x, 8, -20, 20).unwrap();
    for (t, row) in d.rows.iter().enumerate() {
        let expected = x.window(-20 + t as i64, 21 + t as i64);
        assert_eq!(row, &expected);
    }
    let id = SlidingBlockCode::identity(&amb);
    let d = space_time(&id, &x, 5, -4, 4).unwrap();
    assert!(d.rows.iter().all(|r| r == &d.rows[0]));
}

#[test]
fn product_diagram_has_two_streaks() {
    let amb = Ambient::product(Ambient::full(2), Ambient::full(3));
    let f = builtin("shift-x-inverse-shift", &amb).unwrap();
    let x = Configuration::parse("0^inf . 1:2 0^inf", Some(&amb)).unwrap();
    let d = space_time(&f, &x, 6, -6, 6).unwrap();
    for (t, row) in d.rows.iter().enumerate() {
        let nonzero: Vec<i64> = (0..row.len()).filter(|&i| row[i] != 0).map(|i| i as i64 - 6).collect();
        let t = t as i64;
        if t == 0 {
            assert_eq!(nonzero, vec![0]);
        } else {
            assert_eq!(nonzero, vec![-t, t]);
        }
    }
}

#[test]
fn conjugated_product_rule_acts_on_the_full_six_shift() {
    let c = Conjugacy::build(2, &[3]).unwrap();
    let f = builtin("shift-x-inverse-shift", &c.source).unwrap();
    let g = c.phi.compose(&f.compose(&c.psi).unwrap()).unwrap();
    assert!(g.is_cellular_automaton());
    assert_eq!(c.target.alphabet_size(), 6);
    // conjugating back recovers the product rule
    let back = c.psi.compose(&g.compose(&c.phi).unwrap()).unwrap();
    assert!(back.same_map(&f).unwrap());
    let r = sensitivity_probe(&g, 0, 1, 30, 12, 3).unwrap();
    assert_eq!(r.flag, ProbeFlag::SensitiveLike);
}

#[test]
fn identity_probe_depends_on_direction() {
    let amb = Ambient::from_spec(&AmbientSpec::Beta {
        digits: Some(vec![1, 1]),
        equation: None,
        horizon: None,
    })
    .unwrap();
    let id = SlidingBlockCode::identity(&amb);
    let r = sensitivity_probe(&id, 0, 1, 40, 10, 11).unwrap();
    assert_eq!(r.flag, ProbeFlag::EquicontinuityLike);
    for p in [-1, 2] {
        let r = sensitivity_probe(&id, p, 1, 40, 10, 11).unwrap();
        assert!(r.full.min > 0);
        assert_eq!(r.flag, ProbeFlag::SensitiveLike);
    }
}

#[test]
fn refutations_resimulate() {
    for table in [vec![0, 1, 1, 0, 1, 0, 0, 1], vec![0, 0, 0, 1, 0, 1, 1, 1]] {
        let f = rule(2, &table);
        let c = verify_blocking(&f, &[0, 1, 1, 0], 2, 1, 4, EXTENSION_BUDGET).unwrap();
        if let BlockingStatus::Refuted { .. } = c.status {
            assert!(c.recheck(&f));
        }
    }
    // under majority, adjacent 00 and 11 blocks never change
    let majority = rule(2, &[0, 0, 0, 1, 0, 1, 1, 1]);
    let c = verify_blocking(&majority, &[0, 0, 1, 1], 2, 1, 6, EXTENSION_BUDGET).unwrap();
    assert_eq!(c.status, BlockingStatus::VerifiedUpTo { n: 6 });
    assert!(c.meets_definition);
}
