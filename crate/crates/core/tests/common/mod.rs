//! Independent oracles and seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use omega_core::automata::Nba;
use omega_core::trees::{Bta, Node, RegularTree};
use omega_core::words::{Alphabet, UpWord};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn bin() -> Alphabet {
    Alphabet::binary()
}

pub fn up(text: &str) -> UpWord {
    UpWord::parse(&bin(), text).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Block reachability: `m[p][q]` is 0 when `q` is unreachable from `p`, 1
/// when reachable, 2 when reachable through an accepting state (endpoints
/// included).
type Block = Vec<Vec<u8>>;

fn letter_block(a: &Nba, letter: usize) -> Block {
    let n = a.states();
    let mut m = vec![vec![0; n]; n];
    for p in 0..n {
        for &q in a.successors(p, letter) {
            m[p][q] = if a.is_accepting(p) || a.is_accepting(q) { 2 } else { 1 };
        }
    }
    m
}

fn compose(x: &Block, y: &Block) -> Block {
    let n = x.len();
    let mut out = vec![vec![0; n]; n];
    for p in 0..n {
        for q in 0..n {
            if x[p][q] == 0 {
                continue;
            }
            for r in 0..n {
                if y[q][r] > 0 {
                    out[p][r] = out[p][r].max(x[p][q].max(y[q][r]));
                }
            }
        }
    }
    out
}

fn word_block(a: &Nba, letters: &[usize]) -> Block {
    let n = a.states();
    let mut m: Block = (0..n)
        .map(|p| (0..n).map(|q| if p == q { 1 + u8::from(a.is_accepting(p)) } else { 0 }).collect())
        .collect();
    for &l in letters {
        m = compose(&m, &letter_block(a, l));
    }
    m
}

/// Membership of `u·v^ω` through block matrices: some state reachable by
/// `u·v^*` lies on a `v^+` cycle through an accepting state.
pub fn member_oracle(a: &Nba, x: &UpWord) -> bool {
    let n = a.states();
    let u = word_block(a, x.prefix_letters());
    let v = word_block(a, x.period_letters());
    let mut reach = vec![false; n];
    for &i in a.initial() {
        for q in 0..n {
            if u[i][q] > 0 {
                reach[q] = true;
            }
        }
    }
    loop {
        let mut changed = false;
        for p in 0..n {
            if reach[p] {
                for q in 0..n {
                    if v[p][q] > 0 && !reach[q] {
                        reach[q] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // v^+ closure
    let mut plus = v.clone();
    loop {
        let next = compose(&plus, &v);
        let mut merged = plus.clone();
        for p in 0..n {
            for q in 0..n {
                merged[p][q] = merged[p][q].max(next[p][q]);
            }
        }
        if merged == plus {
            break;
        }
        plus = merged;
    }
    (0..n).any(|q| reach[q] && plus[q][q] == 2)
}

/// A random automaton with `states` states over `sigma` letters.
pub fn random_nba(rng: &mut ChaCha8Rng, alphabet: &Alphabet, states: usize, density: f64) -> Nba {
    let mut a = Nba::new(alphabet, states).unwrap();
    a.add_initial(0).unwrap();
    for q in 0..states {
        if rng.gen_bool(0.4) {
            a.set_accepting(q, true).unwrap();
        }
        for l in 0..alphabet.len() {
            for r in 0..states {
                if rng.gen_bool(density) {
                    a.add_transition(q, l, r).unwrap();
                }
            }
        }
    }
    if rng.gen_bool(0.3) && states > 1 {
        a.add_initial(rng.gen_range(1..states)).unwrap();
    }
    a
}

pub fn random_tree(rng: &mut ChaCha8Rng, states: usize) -> RegularTree {
    let nodes = (0..states)
        .map(|_| Node {
            label: rng.gen_range(0..2),
            left: rng.gen_range(0..states),
            right: rng.gen_range(0..states),
        })
        .collect();
    RegularTree::new(&bin(), 0, nodes).unwrap()
}

/// A random tree automaton with at most `max_choices` transitions per
/// state and letter.
pub fn random_bta(rng: &mut ChaCha8Rng, states: usize, max_choices: usize) -> Bta {
    let mut a = Bta::new(&bin(), states, 0).unwrap();
    for q in 0..states {
        if rng.gen_bool(0.5) {
            a.set_accepting(q, true).unwrap();
        }
        for l in 0..2 {
            for _ in 0..rng.gen_range(0..=max_choices) {
                a.add_transition(q, l, rng.gen_range(0..states), rng.gen_range(0..states)).unwrap();
            }
        }
    }
    a
}

/// Every regular tree generator over {0, 1} with exactly `states` states
/// and root 0.
pub fn all_trees(states: usize) -> Vec<RegularTree> {
    let n = states;
    let per_node = 2 * n * n;
    let total = per_node.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let nodes = (0..n)
                .map(|_| {
                    let c = code % per_node;
                    code /= per_node;
                    Node {
                        label: c % 2,
                        left: (c / 2) % n,
                        right: c / (2 * n),
                    }
                })
                .collect();
            RegularTree::new(&bin(), 0, nodes).unwrap()
        })
        .collect()
}

/// Membership by enumerating every positional choice of transitions at
/// the pairs (generator state, automaton state) the run reaches. A choice
/// is an accepting run iff no reachable cycle avoids accepting states.
pub fn tree_member_oracle(a: &Bta, t: &RegularTree) -> bool {
    fn search(
        a: &Bta,
        t: &RegularTree,
        choice: &mut BTreeMap<(usize, usize), (usize, usize)>,
        pending: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(pair) = pending.pop() else {
            return accepting(a, t, choice);
        };
        if choice.contains_key(&pair) {
            let ok = search(a, t, choice, pending);
            pending.push(pair);
            return ok;
        }
        let (s, q) = pair;
        let node = t.node(s);
        for &(ql, qr) in a.transitions(q, node.label) {
            choice.insert(pair, (ql, qr));
            pending.push((node.left, ql));
            pending.push((node.right, qr));
            let ok = search(a, t, choice, pending);
            pending.pop();
            pending.pop();
            choice.remove(&pair);
            if ok {
                pending.push(pair);
                return true;
            }
        }
        pending.push(pair);
        false
    }

    fn accepting(a: &Bta, t: &RegularTree, choice: &BTreeMap<(usize, usize), (usize, usize)>) -> bool {
        // Cycle detection among non-accepting pairs by repeated removal of
        // pairs without non-accepting successors.
        let bad: Vec<(usize, usize)> = choice.keys().copied().filter(|&(_, q)| !a.is_accepting(q)).collect();
        let succ = |(s, q): (usize, usize)| -> [(usize, usize); 2] {
            let node = t.node(s);
            let (ql, qr) = choice[&(s, q)];
            [(node.left, ql), (node.right, qr)]
        };
        let mut alive: std::collections::BTreeSet<(usize, usize)> = bad.into_iter().collect();
        loop {
            let dead: Vec<_> = alive
                .iter()
                .copied()
                .filter(|&p| !succ(p).iter().any(|c| alive.contains(c)))
                .collect();
            if dead.is_empty() {
                return alive.is_empty();
            }
            for d in dead {
                alive.remove(&d);
            }
        }
    }

    let mut pending = vec![(t.root(), a.initial())];
    search(a, t, &mut BTreeMap::new(), &mut pending)
}
