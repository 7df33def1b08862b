mod common;

use common::{bin, up};
use omega_core::automata::{clopen_nba, pinf_nba, singleton_nba};
use omega_core::choquet::{play_scripted, Move1, NestedPinf, Outcome, Scripted, ShrinkingClopens};
use omega_core::trees::choquet::{play_tree_scripted, ExistsPathRefinements, TreeMove, TreeScripted};
use omega_core::trees::{clopen_bta, tinf_bta, tree_prefix, RegularTree};
use omega_core::words::FiniteWord;

#[test]
fn word_games_are_deterministic() {
    let a = play_scripted(&mut NestedPinf, &bin(), 4).unwrap();
    let b = play_scripted(&mut NestedPinf, &bin(), 4).unwrap();
    assert_eq!(a, b);
    assert!(a.verified);
}

#[test]
fn tree_games_are_deterministic() {
    let a = play_tree_scripted(&mut ExistsPathRefinements, &bin(), 3).unwrap();
    let b = play_tree_scripted(&mut ExistsPathRefinements, &bin(), 3).unwrap();
    assert_eq!(a, b);
    assert!(a.verified);
}

#[test]
fn prefixes_and_annotations_grow() {
    let r = play_scripted(&mut ShrinkingClopens, &bin(), 5).unwrap();
    for (i, rec) in r.records.iter().enumerate() {
        assert_eq!(rec.w.len(), i + 1);
        for (n, ann) in rec.annotations.iter().enumerate() {
            assert_eq!(ann.len(), i - n + 1);
            for (l, s) in ann.iter().enumerate() {
                assert!(s.count(1) > l);
            }
        }
    }
}

#[test]
fn a_set_outside_the_answer_is_illegal() {
    let x = up("0(01)w");
    let moves = vec![
        Move1 { sigma: x.clone(), language: pinf_nba() },
        Move1 { sigma: x.clone(), language: clopen_nba(&FiniteWord::parse(&bin(), "00").unwrap()) },
    ];
    let r = play_scripted(&mut Scripted { moves }, &bin(), 2).unwrap();
    assert!(matches!(r.outcome, Outcome::IllegalMove { round: 1, .. }));
    assert!(!r.verified);
}

#[test]
fn singleton_after_an_open_set() {
    let x = up("0(01)w");
    let moves = vec![
        Move1 { sigma: x.clone(), language: pinf_nba() },
        Move1 { sigma: x.clone(), language: singleton_nba(&x) },
        Move1 { sigma: x.clone(), language: singleton_nba(&x) },
    ];
    let r = play_scripted(&mut Scripted { moves }, &bin(), 3).unwrap();
    assert!(r.verified, "{r:?}");
    assert!(r.certificate.unwrap().equals(&x).unwrap());
}

#[test]
fn tree_script_inside_tinf() {
    let ones = RegularTree::constant(&bin(), 1).unwrap();
    let moves = (0..3)
        .map(|i| TreeMove {
            tree: ones.clone(),
            language: if i % 2 == 0 { tinf_bta() } else { clopen_bta(&tree_prefix(&ones, i)) },
        })
        .collect();
    let r = play_tree_scripted(&mut TreeScripted { moves }, &bin(), 3).unwrap();
    assert!(r.verified);
    assert!(r.certificate_in_languages.iter().all(|&b| b));
}
