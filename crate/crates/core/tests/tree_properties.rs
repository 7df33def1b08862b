mod common;

use common::{all_trees, bin, random_bta, random_tree, rng, tree_member_oracle};
use omega_core::automata::pinf_nba;
use omega_core::trees::{
    bta_empty, bta_intersection, bta_member, bta_projection, bta_trim, bta_union, bta_witness, exists_path,
    has_ones_on_every_path, min_depth_for_level, o_level_check, tinf_bta, tree_lift, tree_prefix, tree_witness,
    RegularTree,
};
use proptest::prelude::*;

fn accepts(a: &omega_core::trees::Bta, t: &RegularTree) -> bool {
    bta_member(a, t).unwrap().is_some()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn membership_matches_strategy_enumeration(seed in any::<u64>(), s in 1usize..4, q in 1usize..4) {
        let mut r = rng(seed);
        let t = random_tree(&mut r, s);
        let a = random_bta(&mut r, q, 2);
        prop_assert_eq!(accepts(&a, &t), tree_member_oracle(&a, &t));
    }

    #[test]
    fn witnesses_are_members(seed in any::<u64>(), q in 1usize..4) {
        let a = random_bta(&mut rng(seed), q, 2);
        match bta_witness(&a) {
            Some(t) => prop_assert!(tree_member_oracle(&a, &t)),
            None => {
                prop_assert!(bta_empty(&a));
                for t in all_trees(1).iter().chain(all_trees(2).iter()) {
                    prop_assert!(!tree_member_oracle(&a, t));
                }
            }
        }
    }

    #[test]
    fn trimming_and_boolean_operations(seed in any::<u64>(), s in 1usize..4) {
        let mut r = rng(seed);
        let a = random_bta(&mut r, 2, 2);
        let b = random_bta(&mut r, 2, 2);
        let t = random_tree(&mut r, s);
        let (ma, mb) = (tree_member_oracle(&a, &t), tree_member_oracle(&b, &t));
        prop_assert_eq!(accepts(&bta_trim(&a), &t), ma);
        prop_assert_eq!(accepts(&bta_union(&a, &b).unwrap(), &t), ma || mb);
        prop_assert_eq!(accepts(&bta_intersection(&a, &b).unwrap(), &t), ma && mb);
    }

    #[test]
    fn lifting_projects_back_and_annotates_in_tinf(seed in any::<u64>(), s in 1usize..4, q in 1usize..3) {
        let mut r = rng(seed);
        let a = random_bta(&mut r, q, 2);
        let t = random_tree(&mut r, s);
        let back = bta_projection(&tree_lift(&a), 0).unwrap();
        let m = accepts(&a, &t);
        prop_assert_eq!(accepts(&back, &t), m);
        if m {
            let alpha = tree_witness(&a, &t).unwrap();
            prop_assert!(accepts(&tinf_bta(), &alpha));
            prop_assert!(accepts(&tree_lift(&a), &RegularTree::zip(&t, &alpha).unwrap()));
        }
    }

    #[test]
    fn exists_path_sees_generator_paths(seed in any::<u64>(), s in 1usize..4, dirs in prop::collection::vec(any::<bool>(), 1..4), stem in prop::collection::vec(any::<bool>(), 0..3)) {
        let t = random_tree(&mut rng(seed), s);
        let e = exists_path(&pinf_nba());
        // the path that follows `stem` once and then `dirs` forever
        let mut path: Vec<bool> = stem.clone();
        for _ in 0..(2 * s * dirs.len() + 2) {
            path.extend_from_slice(&dirs);
        }
        let mut state = t.root();
        let mut ones_in_period = false;
        for (i, &d) in path.iter().enumerate() {
            if i >= stem.len() + s * dirs.len() && t.label(state) == 1 {
                ones_in_period = true;
            }
            state = t.child(state, d);
        }
        if ones_in_period {
            prop_assert!(accepts(&e, &t));
        }
        prop_assert_eq!(accepts(&tinf_bta(), &t), has_ones_on_every_path(&t).unwrap());
    }

    #[test]
    fn prefixes_and_levels(seed in any::<u64>(), s in 1usize..4, n in 0usize..4, k in 1usize..4) {
        let t = random_tree(&mut rng(seed), s);
        let p = tree_prefix(&t, n);
        prop_assert_eq!(p.depth(), n);
        prop_assert!(p.is_prefix_of_tree(&t));
        prop_assert!(tree_prefix(&t, n.saturating_sub(1)).is_prefix_of(&p));
        if has_ones_on_every_path(&t).unwrap() {
            let d = min_depth_for_level(&t, k).unwrap();
            prop_assert!(o_level_check(&tree_prefix(&t, d), k).unwrap());
            if d > 0 {
                prop_assert!(!o_level_check(&tree_prefix(&t, d - 1), k).unwrap());
            }
        }
    }
}

#[test]
fn strategy_oracle_on_known_trees() {
    let ones = RegularTree::constant(&bin(), 1).unwrap();
    let zeros = RegularTree::constant(&bin(), 0).unwrap();
    let e = exists_path(&pinf_nba());
    assert!(tree_member_oracle(&e, &ones));
    assert!(!tree_member_oracle(&e, &zeros));
    assert!(tree_member_oracle(&tinf_bta(), &ones));
    assert!(!tree_member_oracle(&tinf_bta(), &zeros));
}
