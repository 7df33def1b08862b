//! Complementation.
//!
//! The input is reduced first. Safety automata (all states accepting) are
//! complemented by a subset construction, deterministic automata by the
//! co-Büchi guess construction, and everything else by determinization into
//! a parity automaton whose acceptance is then flipped. The result is
//! reduced again. The rank-based construction is available separately; its
//! outputs are much larger but it shares no code with the main route.

use std::collections::HashMap;

use super::determinize::determinize;
use super::{reduce, universal_nba, Budget, Nba};
use crate::error::Result;

/// An automaton accepting exactly the words `a` rejects.
pub fn complement(a: &Nba) -> Result<Nba> {
    complement_with(a, &Budget::default())
}

/// [`complement`] under an explicit state budget.
pub fn complement_with(a: &Nba, budget: &Budget) -> Result<Nba> {
    let a = reduce(a);
    if super::is_empty(&a) {
        return Ok(universal_nba(a.alphabet()));
    }
    let raw = if a.all_accepting() {
        complement_safety(&a, budget)?
    } else if a.is_deterministic() {
        complement_deterministic(&a)
    } else {
        determinize(&a, budget)?.complement().to_nba(budget)?
    };
    Ok(reduce(&raw))
}

/// Rank-based complementation of the reduced input, without the shortcuts
/// of [`complement`].
pub fn complement_rank_based(a: &Nba, budget: &Budget) -> Result<Nba> {
    let a = reduce(a);
    if super::is_empty(&a) {
        return Ok(universal_nba(a.alphabet()));
    }
    complement_ranked(&a, budget).map(|c| reduce(&c))
}

/// Interns states discovered during a construction.
struct Interner<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Clone + Eq + std::hash::Hash> Interner<K> {
    fn new() -> Self {
        Interner {
            index: HashMap::new(),
            keys: Vec::new(),
        }
    }

    fn intern(&mut self, key: K, budget: &Budget) -> Result<usize> {
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        let id = self.keys.len();
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        budget.check(self.keys.len())?;
        Ok(id)
    }
}

/// For a trimmed safety automaton a word is accepted iff every prefix has a
/// run, so the complement waits in the subset construction until the set of
/// reachable states becomes empty.
fn complement_safety(a: &Nba, budget: &Budget) -> Result<Nba> {
    let sigma = a.alphabet().len();
    let mut states = Interner::new();
    states.intern(a.initial().to_vec(), budget)?;
    let mut edges = Vec::new();
    let mut next = 0;
    while next < states.keys.len() {
        let set = states.keys[next].clone();
        for l in 0..sigma {
            let mut succ: Vec<usize> = set
                .iter()
                .flat_map(|&q| a.successors(q, l).iter().copied())
                .collect();
            succ.sort_unstable();
            succ.dedup();
            let id = states.intern(succ, budget)?;
            edges.push((next, l, id));
        }
        next += 1;
    }
    let mut out = Nba::new(a.alphabet(), states.keys.len())?;
    out.add_initial(0)?;
    for (id, set) in states.keys.iter().enumerate() {
        out.set_accepting(id, set.is_empty())?;
    }
    for (p, l, q) in edges {
        out.add_transition(p, l, q)?;
    }
    Ok(out)
}

/// Complement of a deterministic automaton: a run of the completed automaton
/// is rejecting iff it eventually avoids accepting states forever. State
/// `(q, 0)` follows the run, `(q, 1)` guesses that accepting states are over.
fn complement_deterministic(a: &Nba) -> Nba {
    let n = a.states();
    let sink = n;
    let step = |q: usize, l: usize| -> usize {
        if q == sink {
            sink
        } else {
            a.successors(q, l).first().copied().unwrap_or(sink)
        }
    };
    let accepting = |q: usize| q != sink && a.is_accepting(q);
    let id = |q: usize, guessed: bool| 2 * q + usize::from(guessed);
    let mut out = Nba::new(a.alphabet(), 2 * (n + 1)).expect("nonzero states");
    let q0 = a.initial()[0];
    out.add_initial(id(q0, false)).expect("in range");
    if !accepting(q0) {
        out.add_initial(id(q0, true)).expect("in range");
    }
    for q in 0..=n {
        if !accepting(q) {
            out.set_accepting(id(q, true), true).expect("in range");
        }
        for l in 0..a.alphabet().len() {
            let r = step(q, l);
            out.add_transition(id(q, false), l, id(r, false))
                .expect("in range");
            if !accepting(r) {
                out.add_transition(id(q, false), l, id(r, true))
                    .expect("in range");
                if !accepting(q) {
                    out.add_transition(id(q, true), l, id(r, true))
                        .expect("in range");
                }
            }
        }
    }
    out
}

/// Rank-based complementation. A state is a level ranking `g` (ranks up to
/// twice the number of non-accepting states, even on accepting states, `NONE` off the current level) and
/// the set `O` of even-ranked states still owing a visit to an odd rank.
/// Accepting states are those with `O` empty.
fn complement_ranked(a: &Nba, budget: &Budget) -> Result<Nba> {
    const NONE: u8 = u8::MAX;
    let n = a.states();
    let rejecting = (0..n).filter(|&q| !a.is_accepting(q)).count();
    let max_rank = u8::try_from(2 * rejecting)
        .map_err(|_| crate::error::Error::BudgetExceeded(budget.max_states()))?;
    let sigma = a.alphabet().len();

    let mut g0 = vec![NONE; n];
    for &q in a.initial() {
        g0[q] = max_rank;
    }
    let mut states: Interner<(Vec<u8>, Vec<bool>)> = Interner::new();
    states.intern((g0, vec![false; n]), budget)?;
    let mut edges = Vec::new();
    let mut next = 0;
    while next < states.keys.len() {
        let (g, owing) = states.keys[next].clone();
        let breakpoint = owing.iter().all(|&o| !o);
        for l in 0..sigma {
            // Upper bound on the rank of each successor.
            let mut bound = vec![NONE; n];
            for p in (0..n).filter(|&p| g[p] != NONE) {
                for &q in a.successors(p, l) {
                    bound[q] = if bound[q] == NONE { g[p] } else { bound[q].min(g[p]) };
                }
            }
            let level: Vec<usize> = (0..n).filter(|&q| bound[q] != NONE).collect();
            let choices: Vec<Vec<u8>> = level
                .iter()
                .map(|&q| {
                    (0..=bound[q])
                        .filter(|r| !a.is_accepting(q) || r % 2 == 0)
                        .collect()
                })
                .collect();
            if choices.iter().any(Vec::is_empty) {
                continue;
            }
            // Successors of the owing set (or of the whole level at a breakpoint).
            let mut tracked = vec![false; n];
            for p in (0..n).filter(|&p| if breakpoint { g[p] != NONE } else { owing[p] }) {
                for &q in a.successors(p, l) {
                    tracked[q] = true;
                }
            }
            let mut digits = vec![0usize; level.len()];
            loop {
                let mut g2 = vec![NONE; n];
                for (i, &q) in level.iter().enumerate() {
                    g2[q] = choices[i][digits[i]];
                }
                let owing2: Vec<bool> = (0..n)
                    .map(|q| tracked[q] && g2[q] != NONE && g2[q] % 2 == 0)
                    .collect();
                let id = states.intern((g2, owing2), budget)?;
                edges.push((next, l, id));
                // Odometer over the choices.
                let mut i = 0;
                while i < digits.len() {
                    digits[i] += 1;
                    if digits[i] < choices[i].len() {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
        }
        next += 1;
    }
    let mut out = Nba::new(a.alphabet(), states.keys.len())?;
    out.add_initial(0)?;
    for (id, (_, owing)) in states.keys.iter().enumerate() {
        out.set_accepting(id, owing.iter().all(|&o| !o))?;
    }
    for (p, l, q) in edges {
        out.add_transition(p, l, q)?;
    }
    Ok(out)
}
