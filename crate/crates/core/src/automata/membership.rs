//! Membership of ultimately periodic words, emptiness and lasso extraction.

use std::collections::VecDeque;

use serde::Serialize;

use super::{Nba, TransitionSystem};
use crate::error::{Error, Result};
use crate::graph;
use crate::words::UpWord;

/// An accepting lasso-shaped run: `stem` leads from an initial state to the
/// first state of `cycle`, and `cycle` returns to that state through an
/// accepting one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LassoWitness {
    /// States visited by the stem, ending at the first state of the cycle.
    pub stem: Vec<usize>,
    /// States visited by the cycle, first and last equal.
    pub cycle: Vec<usize>,
    pub stem_letters: Vec<usize>,
    pub cycle_letters: Vec<usize>,
    /// The word read by the run.
    pub word: UpWord,
}

impl LassoWitness {
    /// Checks that the witness is an accepting run of `a` on `self.word`.
    pub fn is_valid_for(&self, a: &Nba) -> bool {
        let consistent = self.stem.len() == self.stem_letters.len() + 1
            && self.cycle.len() == self.cycle_letters.len() + 1
            && !self.cycle_letters.is_empty()
            && self.stem.last() == self.cycle.first()
            && self.cycle.first() == self.cycle.last();
        if !consistent || !a.is_initial(self.stem[0]) {
            return false;
        }
        let step_ok = |states: &[usize], letters: &[usize]| {
            letters
                .iter()
                .enumerate()
                .all(|(i, &l)| a.successors(states[i], l).contains(&states[i + 1]))
        };
        let Ok(word) = UpWord::new(
            a.alphabet(),
            self.stem_letters.clone(),
            self.cycle_letters.clone(),
        ) else {
            return false;
        };
        step_ok(&self.stem, &self.stem_letters)
            && step_ok(&self.cycle, &self.cycle_letters)
            && self.cycle.iter().any(|&q| a.is_accepting(q))
            && word == self.word
    }
}

/// Decides `x ∈ L(a)`, returning an accepting lasso run when it exists.
///
/// Works on the product of the automaton with the lasso positions of `x`:
/// the word is accepted iff an accepting product node is reachable and lies
/// on a cycle. Cycles of the product return to the same lasso position, so
/// the witness cycle reads a whole number of periods.
pub fn member(a: &Nba, x: &UpWord) -> Result<Option<LassoWitness>> {
    a.alphabet().ensure_same(x.alphabet())?;
    let len = x.lasso_len();
    let n = a.states() * len;
    let node = |q: usize, pos: usize| q * len + pos;
    let mut succ = vec![Vec::new(); n];
    for q in 0..a.states() {
        for pos in 0..len {
            let next = x.next_position(pos);
            succ[node(q, pos)] = a
                .successors(q, x.letter_at(pos))
                .iter()
                .map(|&r| node(r, next))
                .collect();
        }
    }
    let starts: Vec<usize> = a.initial().iter().map(|&q| node(q, 0)).collect();
    let (dist, parent) = bfs(&succ, &starts);
    let comp = graph::scc(n, &succ);
    let cyc = graph::on_cycle(&succ, &comp);
    let target = (0..n)
        .filter(|&v| dist[v] != usize::MAX && cyc[v] && a.is_accepting(v / len))
        .min_by_key(|&v| (dist[v], v));
    let Some(target) = target else {
        return Ok(None);
    };
    let stem_nodes = path_to(&parent, target);
    let cycle_nodes = shortest_cycle(&succ, target).expect("target lies on a cycle");
    let letters = |nodes: &[usize]| -> Vec<usize> {
        nodes[..nodes.len() - 1]
            .iter()
            .map(|&v| x.letter_at(v % len))
            .collect()
    };
    let stem_letters = letters(&stem_nodes);
    let cycle_letters = letters(&cycle_nodes);
    let word = UpWord::new(a.alphabet(), stem_letters.clone(), cycle_letters.clone())?;
    debug_assert_eq!(&word, x);
    Ok(Some(LassoWitness {
        stem: stem_nodes.iter().map(|&v| v / len).collect(),
        cycle: cycle_nodes.iter().map(|&v| v / len).collect(),
        stem_letters,
        cycle_letters,
        word,
    }))
}

/// True iff the automaton accepts no word.
pub fn is_empty(a: &Nba) -> bool {
    accepting_cycle_states(a).iter().all(|&good| !good)
}

/// Reachable accepting states lying on a cycle.
fn accepting_cycle_states(a: &TransitionSystem) -> Vec<bool> {
    let g = a.graph();
    let reach = graph::reachable(&g, a.initial().iter().copied());
    let comp = graph::scc(g.len(), &g);
    let cyc = graph::on_cycle(&g, &comp);
    (0..a.states())
        .map(|q| reach[q] && cyc[q] && a.is_accepting(q))
        .collect()
}

/// A deterministic accepting lasso of `a`.
///
/// Among reachable accepting states on a cycle, picks the one minimizing
/// (stem length, cycle length, state index); stems and cycles are shortest
/// paths found by breadth-first search expanding initial states in index
/// order, then letters in alphabet order, then successors in index order.
pub fn find_lasso(a: &Nba) -> Result<LassoWitness> {
    let good = accepting_cycle_states(a);
    let n = a.states();
    let sigma = a.alphabet().len();
    // Labelled BFS over the automaton itself.
    let mut dist = vec![usize::MAX; n];
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut queue = VecDeque::new();
    for &q in a.initial() {
        dist[q] = 0;
        queue.push_back(q);
    }
    while let Some(p) = queue.pop_front() {
        for l in 0..sigma {
            for &q in a.successors(p, l) {
                if dist[q] == usize::MAX {
                    dist[q] = dist[p] + 1;
                    parent[q] = Some((p, l));
                    queue.push_back(q);
                }
            }
        }
    }
    let best_dist = (0..n)
        .filter(|&q| good[q])
        .map(|q| dist[q])
        .min()
        .ok_or(Error::EmptyLanguage)?;
    let (cycle, q) = (0..n)
        .filter(|&q| good[q] && dist[q] == best_dist)
        .map(|q| (labelled_cycle(a, q), q))
        .min_by_key(|((states, _), q)| (states.len(), *q))
        .expect("some candidate exists");
    let mut stem = vec![q];
    let mut stem_letters = Vec::new();
    let mut v = q;
    while let Some((p, l)) = parent[v] {
        stem.push(p);
        stem_letters.push(l);
        v = p;
    }
    stem.reverse();
    stem_letters.reverse();
    let (cycle, cycle_letters) = cycle;
    let word = UpWord::new(a.alphabet(), stem_letters.clone(), cycle_letters.clone())?;
    Ok(LassoWitness {
        stem,
        cycle,
        stem_letters,
        cycle_letters,
        word,
    })
}

/// A canonical ultimately periodic word accepted by `a`; see [`find_lasso`].
pub fn find_up_word(a: &Nba) -> Result<UpWord> {
    find_lasso(a).map(|w| w.word)
}

/// Shortest labelled cycle through `q`, as (states, letters).
fn labelled_cycle(a: &TransitionSystem, q: usize) -> (Vec<usize>, Vec<usize>) {
    let n = a.states();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    queue.push_back(q);
    let mut closing = None;
    'search: while let Some(p) = queue.pop_front() {
        for l in 0..a.alphabet().len() {
            for &r in a.successors(p, l) {
                if r == q {
                    closing = Some((p, l));
                    break 'search;
                }
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((p, l));
                    queue.push_back(r);
                }
            }
        }
    }
    let (mut v, l) = closing.expect("state lies on a cycle");
    let mut states = vec![q, v];
    let mut letters = vec![l];
    while v != q {
        let (p, l) = parent[v].expect("parent chain reaches the start");
        states.push(p);
        letters.push(l);
        v = p;
    }
    states.reverse();
    letters.reverse();
    (states, letters)
}

fn bfs(succ: &[Vec<usize>], starts: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = succ.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &s in starts {
        if dist[s] == usize::MAX {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &succ[v] {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

fn path_to(parent: &[usize], target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut v = target;
    while parent[v] != usize::MAX {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

/// Shortest cycle through `v` as a node list starting and ending at `v`.
fn shortest_cycle(succ: &[Vec<usize>], v: usize) -> Option<Vec<usize>> {
    let (dist, parent) = bfs(succ, &succ[v]);
    if succ[v].contains(&v) {
        return Some(vec![v, v]);
    }
    if dist[v] == usize::MAX {
        return None;
    }
    let mut path = path_to(&parent, v);
    path.insert(0, v);
    Some(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{clopen_nba, pinf_nba, singleton_nba};
    use crate::words::{Alphabet, FiniteWord};

    fn up(text: &str) -> UpWord {
        UpWord::parse(&Alphabet::binary(), text).unwrap()
    }

    fn fw(text: &str) -> FiniteWord {
        FiniteWord::parse(&Alphabet::binary(), text).unwrap()
    }

    #[test]
    fn pinf_membership() {
        let a = pinf_nba();
        let w = member(&a, &up("(01)w")).unwrap().unwrap();
        assert!(w.is_valid_for(&a));
        assert!(w.cycle.iter().any(|&q| a.is_accepting(q)));
        assert!(member(&a, &up("(0)w")).unwrap().is_none());
        assert!(member(&a, &up("1(0)w")).unwrap().is_none());
        assert!(member(&a, &up("0001(1)w")).unwrap().is_some());
    }

    #[test]
    fn witness_cycle_covers_whole_periods() {
        let a = pinf_nba();
        let x = up("0(011)w");
        let w = member(&a, &x).unwrap().unwrap();
        assert_eq!(w.cycle_letters.len() % x.period_letters().len(), 0);
        assert!(w.is_valid_for(&a));
    }

    #[test]
    fn singleton_membership() {
        let x = up("0(1)w");
        let a = singleton_nba(&x);
        assert!(member(&a, &x).unwrap().is_some());
        assert!(member(&a, &up("(1)w")).unwrap().is_none());
    }

    #[test]
    fn emptiness() {
        let mut a = pinf_nba();
        assert!(!is_empty(&a));
        a.set_accepting(1, false).unwrap();
        assert!(is_empty(&a));
        assert_eq!(find_up_word(&a), Err(Error::EmptyLanguage));
        assert!(!is_empty(&clopen_nba(&fw("01"))));
    }

    #[test]
    fn found_words() {
        let p = find_up_word(&pinf_nba()).unwrap();
        assert!(p.is_in_pinf().unwrap());
        assert_eq!(p, up("(1)w"));
        let x = up("0(1)w");
        assert_eq!(find_up_word(&singleton_nba(&x)).unwrap(), x);
        let c = find_up_word(&clopen_nba(&fw("1"))).unwrap();
        assert_eq!(c.letter_at(0), 1);
    }

    #[test]
    fn alphabet_mismatch() {
        let ternary = Alphabet::new(["a", "b", "c"]).unwrap();
        let x = UpWord::new(&ternary, vec![], vec![0]).unwrap();
        assert!(member(&pinf_nba(), &x).is_err());
    }
}
