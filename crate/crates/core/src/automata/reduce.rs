//! Language-preserving state-space reduction by direct simulation.

use super::{Nba, TransitionSystem};

/// Automata larger than this are only trimmed.
const SIMULATION_LIMIT: usize = 3000;

/// Trims, merges direct-simulation equivalent states and drops transitions
/// and initial states that are strictly simulated by a sibling. Repeats until
/// nothing changes. The language is unchanged.
pub fn reduce(a: &Nba) -> Nba {
    let mut current = a.trim();
    loop {
        if current.states() > SIMULATION_LIMIT {
            return current;
        }
        let sim = direct_simulation(&current);
        let class = classes(&sim);
        let merged = quotient(&current, &class);
        // Strict simulation between classes, read off representatives.
        let mut rep = vec![usize::MAX; merged.states()];
        for (q, &c) in class.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = q;
            }
        }
        let next = prune(&merged, |q, p| {
            sim[rep[q]][rep[p]] && !sim[rep[p]][rep[q]]
        })
        .trim();
        if next == current {
            return current;
        }
        current = next;
    }
}

/// `sim[q][p]` is true when `p` directly simulates `q`: `p` is accepting
/// whenever `q` is, and every move of `q` is matched by a move of `p` on the
/// same letter into a state simulating the target.
pub(crate) fn direct_simulation(a: &TransitionSystem) -> Vec<Vec<bool>> {
    let n = a.states();
    let sigma = a.alphabet().len();
    let words = n.div_ceil(64);
    let bits = |states: &mut dyn Iterator<Item = usize>| {
        let mut set = vec![0u64; words];
        for q in states {
            set[q / 64] |= 1 << (q % 64);
        }
        set
    };
    // succ_bits[p][l]: successors of p on l as a bitset.
    let succ_bits: Vec<Vec<Vec<u64>>> = (0..n)
        .map(|p| {
            (0..sigma)
                .map(|l| bits(&mut a.successors(p, l).iter().copied()))
                .collect()
        })
        .collect();
    // simulators[q]: states simulating q.
    let mut simulators: Vec<Vec<u64>> = (0..n)
        .map(|q| bits(&mut (0..n).filter(|&p| !a.is_accepting(q) || a.is_accepting(p))))
        .collect();
    let meets = |x: &[u64], y: &[u64]| x.iter().zip(y).any(|(a, b)| a & b != 0);
    let mut changed = true;
    while changed {
        changed = false;
        for q in 0..n {
            for p in 0..n {
                if p == q || simulators[q][p / 64] >> (p % 64) & 1 == 0 {
                    continue;
                }
                let matched = (0..sigma).all(|l| {
                    a.successors(q, l)
                        .iter()
                        .all(|&q2| meets(&succ_bits[p][l], &simulators[q2]))
                });
                if !matched {
                    simulators[q][p / 64] &= !(1 << (p % 64));
                    changed = true;
                }
            }
        }
    }
    (0..n)
        .map(|q| (0..n).map(|p| simulators[q][p / 64] >> (p % 64) & 1 == 1).collect())
        .collect()
}

/// Classes of mutually simulating states, numbered by smallest member.
fn classes(sim: &[Vec<bool>]) -> Vec<usize> {
    let n = sim.len();
    let mut class = vec![usize::MAX; n];
    let mut count = 0;
    for q in 0..n {
        if class[q] != usize::MAX {
            continue;
        }
        for p in q..n {
            if class[p] == usize::MAX && sim[q][p] && sim[p][q] {
                class[p] = count;
            }
        }
        count += 1;
    }
    class
}

fn quotient(a: &Nba, class: &[usize]) -> Nba {
    let count = class.iter().copied().max().map_or(1, |m| m + 1);
    let mut out = Nba::new(a.alphabet(), count).expect("nonzero states");
    for &q in a.initial() {
        out.add_initial(class[q]).expect("in range");
    }
    for q in a.accepting_states() {
        out.set_accepting(class[q], true).expect("in range");
    }
    for (p, l, q) in a.transitions() {
        out.add_transition(class[p], l, class[q]).expect("in range");
    }
    out
}

/// Removes `p --a--> q` when some `p --a--> r` has `r` strictly simulating `q`,
/// and initial states strictly simulated by another initial state.
fn prune(a: &Nba, strictly_below: impl Fn(usize, usize) -> bool) -> Nba {
    let n = a.states();
    let mut below = vec![vec![false; n]; n];
    for (q, row) in below.iter_mut().enumerate() {
        for (p, cell) in row.iter_mut().enumerate() {
            *cell = q != p && strictly_below(q, p);
        }
    }
    let mut out = Nba::new(a.alphabet(), n).expect("nonzero states");
    for &q in a.initial() {
        if !a.initial().iter().any(|&r| below[q][r]) {
            out.add_initial(q).expect("in range");
        }
    }
    for q in a.accepting_states() {
        out.set_accepting(q, true).expect("in range");
    }
    for (p, l, q) in a.transitions() {
        if !a.successors(p, l).iter().any(|&r| below[q][r]) {
            out.add_transition(p, l, q).expect("in range");
        }
    }
    out
}
