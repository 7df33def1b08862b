mod common;

use common::{bin, member_oracle};
use omega_core::automata::{contains, member, singleton_nba};
use omega_core::enumeration::{accepts, canonical, raw_count, raw_marks, recurrent_states, up_sweep, Structure};
use omega_core::metric::{ball_language, delta, distinct_languages, separates, DistanceResult};
use omega_core::words::{Dyadic, UpWord};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = UpWord> {
    (prop::collection::vec(0usize..2, 0..3), prop::collection::vec(0usize..2, 1..4))
        .prop_map(|(u, v)| UpWord::new(&bin(), u, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delta_is_symmetric_with_identity(x in word(), y in word()) {
        let d = delta(&x, &y, 2).unwrap();
        prop_assert_eq!(d, delta(&y, &x, 2).unwrap());
        prop_assert_eq!(d == DistanceResult::Exact(Dyadic::Zero), x.equals(&y).unwrap());
    }

    #[test]
    fn delta_satisfies_the_max_inequality(x in word(), y in word(), z in word()) {
        let (Some(xy), Some(yz), Some(xz)) = (
            delta(&x, &y, 2).unwrap().exact(),
            delta(&y, &z, 2).unwrap().exact(),
            delta(&x, &z, 2).unwrap().exact(),
        ) else {
            return Ok(());
        };
        prop_assert!(xz.le_sum(xy, yz));
        prop_assert!(xz <= xy.max(yz));
    }

    #[test]
    fn recurrent_sets_decide_membership(code in 0u64..Structure::count(2, 2), x in word()) {
        let t = Structure::from_code(2, 2, code);
        let rec = recurrent_states(&t, &x);
        for (i, f) in raw_marks(2) {
            prop_assert_eq!(accepts(&rec, i, f), member_oracle(&t.to_nba(&bin(), i, f), &x));
        }
    }
}

#[test]
fn separators_are_real() {
    let words = up_sweep(&bin(), 1, 2);
    for x in &words {
        for y in &words {
            if let DistanceResult::Exact(Dyadic::Pow(k)) = delta(x, y, 2).unwrap() {
                let sep = omega_core::metric::find_separator(x, y, k as usize).unwrap().unwrap();
                let a = sep.to_nba(&bin());
                assert_eq!(a.states(), k as usize);
                assert!(separates(&a, x, y).unwrap());
                assert_ne!(member_oracle(&a, x), member_oracle(&a, y));
            }
        }
    }
}

#[test]
fn canonical_enumeration_covers_raw_languages() {
    // every raw automaton with at most two states has a canonical twin with the same fingerprint
    let sweep = up_sweep(&bin(), 2, 3);
    let fingerprint = |a: &omega_core::automata::Nba| -> Vec<bool> { sweep.iter().map(|x| member_oracle(a, x)).collect() };
    let mut canonical_prints = std::collections::HashSet::new();
    for k in 1..=2 {
        for s in canonical(k, 2) {
            canonical_prints.insert(fingerprint(&s.to_nba(&bin())));
        }
    }
    let mut raw = 0;
    for k in 1..=2 {
        for code in 0..Structure::count(k, 2) {
            let t = Structure::from_code(k, 2, code);
            for (i, f) in raw_marks(k) {
                raw += 1;
                assert!(canonical_prints.contains(&fingerprint(&t.to_nba(&bin(), i, f))));
            }
        }
    }
    assert_eq!(raw, raw_count(1, 2) + raw_count(2, 2));
    assert_eq!(raw, 16 + 4096);
}

#[test]
fn balls_agree_with_delta() {
    let sweep = up_sweep(&bin(), 2, 2);
    for text in ["(0)w", "(01)w", "1(0)w"] {
        let x = common::up(text);
        let ball = ball_language(&x, 1).unwrap();
        for y in &sweep {
            let inside = member(&ball, y).unwrap().is_some();
            let close = match delta(&x, y, 1).unwrap() {
                DistanceResult::Exact(d) => d < Dyadic::pow(1),
                DistanceResult::BoundedAbove(_) => true,
            };
            assert_eq!(inside, close, "{x} {y}");
        }
    }
}

#[test]
fn isolated_points_have_singleton_balls() {
    for text in ["(0)w", "(1)w", "(01)w"] {
        let x = common::up(text);
        let s = singleton_nba(&x);
        let found = (1..=2).any(|n| contains(&s, &ball_language(&x, n).unwrap()).unwrap());
        assert!(found, "{x}");
    }
}

#[test]
fn two_state_languages_are_distinct() {
    let langs = distinct_languages(&bin(), 2).unwrap();
    let sweep = up_sweep(&bin(), 2, 3);
    let prints: std::collections::HashSet<Vec<bool>> =
        langs.iter().map(|a| sweep.iter().map(|x| member_oracle(a, x)).collect()).collect();
    // languages with equal fingerprints on the sweep must still differ somewhere
    assert!(prints.len() <= langs.len());
    for (i, a) in langs.iter().enumerate() {
        for b in &langs[i + 1..] {
            assert!(!(contains(a, b).unwrap() && contains(b, a).unwrap()));
        }
    }
}
