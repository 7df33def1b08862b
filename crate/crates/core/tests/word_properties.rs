mod common;

use common::bin;
use omega_core::words::{Dyadic, UpWord};
use proptest::prelude::*;

fn word() -> impl Strategy<Value = UpWord> {
    (prop::collection::vec(0usize..2, 0..4), prop::collection::vec(0usize..2, 1..5))
        .prop_map(|(u, v)| UpWord::new(&bin(), u, v).unwrap())
}

fn lcm(a: usize, b: usize) -> usize {
    let gcd = |mut a: usize, mut b: usize| {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    a / gcd(a, b) * b
}

proptest! {
    #[test]
    fn canonical_form_is_stable(x in word()) {
        let again = UpWord::new(&bin(), x.prefix_letters().to_vec(), x.period_letters().to_vec()).unwrap();
        prop_assert_eq!(&again, &x);
        prop_assert_eq!(UpWord::parse(&bin(), &x.to_string()).unwrap(), x);
    }

    #[test]
    fn unrolled_presentations_are_equal(u in prop::collection::vec(0usize..2, 0..4), v in prop::collection::vec(0usize..2, 1..4), extra in 0usize..3, reps in 1usize..3) {
        let x = UpWord::new(&bin(), u.clone(), v.clone()).unwrap();
        let mut u2 = u.clone();
        for i in 0..extra {
            u2.push(v[i % v.len()]);
        }
        let mut v2: Vec<usize> = (0..v.len()).map(|i| v[(extra + i) % v.len()]).collect();
        v2 = v2.repeat(reps);
        let y = UpWord::new(&bin(), u2, v2).unwrap();
        prop_assert!(x.equals(&y).unwrap());
        prop_assert_eq!(x, y);
    }

    #[test]
    fn equality_matches_letters(x in word(), y in word()) {
        let bound = x.prefix_letters().len() + y.prefix_letters().len()
            + lcm(x.period_letters().len(), y.period_letters().len());
        let same = (0..=bound).all(|i| x.letter_at(i) == y.letter_at(i));
        prop_assert_eq!(x.equals(&y).unwrap(), same);
    }

    #[test]
    fn prefix_distance_is_an_ultrametric(x in word(), y in word(), z in word()) {
        let dxy = x.prefix_distance(&y).unwrap();
        let dyz = y.prefix_distance(&z).unwrap();
        let dxz = x.prefix_distance(&z).unwrap();
        prop_assert!(dxz <= dxy.max(dyz));
        prop_assert_eq!(dxy, y.prefix_distance(&x).unwrap());
        prop_assert_eq!(dxy == Dyadic::Zero, x.equals(&y).unwrap());
    }

    #[test]
    fn pinf_counts_ones_in_the_period(x in word()) {
        prop_assert_eq!(x.is_in_pinf().unwrap(), x.period_letters().contains(&1));
    }

    #[test]
    fn xn_has_a_single_one(n in 1u32..9) {
        let x = UpWord::xn(n).unwrap();
        prop_assert!(!x.is_in_pinf().unwrap());
        let ones = (0..x.lasso_len() + 4).filter(|&i| x.letter_at(i) == 1).count();
        prop_assert_eq!(ones, 1);
        let factorial: usize = (1..=n as usize).product();
        prop_assert_eq!(x.letter_at(factorial), 1);
    }

    #[test]
    fn zip_then_unzip(x in word(), y in word()) {
        let z = UpWord::zip(&x, &y).unwrap();
        let (a, b) = z.unzip().unwrap();
        prop_assert_eq!(a, x);
        prop_assert_eq!(b, y);
    }

    #[test]
    fn truncation_is_a_prefix(x in word(), n in 0usize..8, m in 0usize..8) {
        let (short, long) = (n.min(m), n.max(m));
        prop_assert!(x.truncate(short).is_prefix_of(&x.truncate(long)));
        prop_assert_eq!(x.truncate(long).len(), long);
    }
}
