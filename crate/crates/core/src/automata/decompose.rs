//! Finite-word acceptance and the decomposition `L = ⋃_q U_q · V_q^ω`.

use serde::Serialize;

use super::{Nba, Nfa};
use crate::error::Result;
use crate::graph;
use crate::words::FiniteWord;

/// The two regular languages attached to an accepting state `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionPair {
    pub state: usize,
    /// Finite words leading from an initial state to `q`.
    #[serde(skip)]
    pub prefixes: Nfa,
    /// Nonempty finite words leading from `q` back to `q`.
    #[serde(skip)]
    pub periods: Nfa,
}

/// One pair per accepting state; `L(a)` is the union of `U_q · V_q^ω`.
pub fn buchi_decomposition(a: &Nba) -> Vec<DecompositionPair> {
    a.accepting_states()
        .map(|q| {
            let mut prefixes = Nfa::new(a.alphabet(), a.states()).expect("nonzero states");
            for &i in a.initial() {
                prefixes.add_initial(i).expect("in range");
            }
            prefixes.set_accepting(q, true).expect("in range");
            for (p, l, r) in a.transitions() {
                prefixes.add_transition(p, l, r).expect("in range");
            }

            // A fresh copy of q as start state rules out the empty word.
            let start = a.states();
            let mut periods = Nfa::new(a.alphabet(), a.states() + 1).expect("nonzero states");
            periods.add_initial(start).expect("in range");
            periods.set_accepting(q, true).expect("in range");
            for (p, l, r) in a.transitions() {
                periods.add_transition(p, l, r).expect("in range");
                if p == q {
                    periods.add_transition(start, l, r).expect("in range");
                }
            }
            DecompositionPair {
                state: q,
                prefixes,
                periods,
            }
        })
        .collect()
}

/// Standard finite-word acceptance.
pub fn nfa_member(n: &Nfa, w: &FiniteWord) -> Result<bool> {
    n.alphabet().ensure_same(w.alphabet())?;
    let mut current = vec![false; n.states()];
    for &q in n.initial() {
        current[q] = true;
    }
    for &l in w.letters() {
        let mut next = vec![false; n.states()];
        for q in (0..n.states()).filter(|&q| current[q]) {
            for &r in n.successors(q, l) {
                next[r] = true;
            }
        }
        current = next;
    }
    Ok((0..n.states()).any(|q| current[q] && n.is_accepting(q)))
}

/// Accepted words of length at most `max_len`, in length-lexicographic order.
pub fn nfa_sample(n: &Nfa, max_len: usize) -> Vec<FiniteWord> {
    let live = graph::coreachable(&n.graph(), &(0..n.states()).map(|q| n.is_accepting(q)).collect::<Vec<_>>());
    let alphabet = n.alphabet();
    let mut out = Vec::new();
    let mut level: Vec<(Vec<usize>, Vec<usize>)> = {
        let start: Vec<usize> = n.initial().iter().copied().filter(|&q| live[q]).collect();
        if start.is_empty() {
            return out;
        }
        vec![(Vec::new(), start)]
    };
    for len in 0..=max_len {
        for (word, set) in &level {
            if set.iter().any(|&q| n.is_accepting(q)) {
                out.push(FiniteWord::new(alphabet, word.clone()).expect("letters in range"));
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for (word, set) in &level {
            for l in 0..alphabet.len() {
                let mut succ: Vec<usize> = set
                    .iter()
                    .flat_map(|&q| n.successors(q, l).iter().copied())
                    .filter(|&r| live[r])
                    .collect();
                succ.sort_unstable();
                succ.dedup();
                if !succ.is_empty() {
                    let mut w = word.clone();
                    w.push(l);
                    next.push((w, succ));
                }
            }
        }
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{member, pinf_nba, singleton_nba};
    use crate::words::{Alphabet, UpWord};

    #[test]
    fn no_accepting_states_means_no_pairs() {
        let mut a = pinf_nba();
        a.set_accepting(1, false).unwrap();
        assert!(buchi_decomposition(&a).is_empty());
    }

    #[test]
    fn pinf_pairs_are_sound() {
        let a = pinf_nba();
        let pairs = buchi_decomposition(&a);
        assert_eq!(pairs.len(), 1);
        let us = nfa_sample(&pairs[0].prefixes, 4);
        let vs = nfa_sample(&pairs[0].periods, 4);
        assert!(us.iter().any(|u| u.letters().last() == Some(&1)));
        assert!(vs.iter().all(|v| !v.is_empty()));
        for u in &us {
            for v in &vs {
                let x = UpWord::from_words(u, v).unwrap();
                assert!(member(&a, &x).unwrap().is_some(), "{x}");
            }
        }
    }

    #[test]
    fn singleton_pairs_give_the_singleton() {
        let x = UpWord::parse(&Alphabet::binary(), "(0)w").unwrap();
        let a = singleton_nba(&x);
        for pair in buchi_decomposition(&a) {
            for u in nfa_sample(&pair.prefixes, 3) {
                for v in nfa_sample(&pair.periods, 3) {
                    assert_eq!(UpWord::from_words(&u, &v).unwrap(), x);
                }
            }
        }
    }

    #[test]
    fn sample_is_length_lex() {
        let bin = Alphabet::binary();
        let mut n = Nfa::new(&bin, 1).unwrap();
        n.add_initial(0).unwrap();
        n.set_accepting(0, true).unwrap();
        n.add_transition(0, 0, 0).unwrap();
        n.add_transition(0, 1, 0).unwrap();
        let words: Vec<String> = nfa_sample(&n, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(words, ["ε", "0", "1", "00", "01", "10", "11"]);
        let w = FiniteWord::parse(&bin, "0110").unwrap();
        assert!(nfa_member(&n, &w).unwrap());
        n.set_accepting(0, false).unwrap();
        assert!(!nfa_member(&n, &w).unwrap());
        assert!(nfa_sample(&n, 3).is_empty());
    }
}
