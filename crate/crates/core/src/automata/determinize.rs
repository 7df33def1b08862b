//! Determinization of Büchi automata into parity automata with Safra trees.
//!
//! Nodes of a Safra tree are kept in order of creation, and a node's name is
//! its position in that order. Each step reports the smallest name that was
//! removed or marked green; the transition priority is `2·green` or
//! `2·removed − 1`, whichever is smaller, and a run is accepting iff the
//! least priority seen infinitely often is even. A node that survives and is
//! green infinitely often eventually has a fixed name with nothing older ever
//! removed, which is exactly Safra's acceptance condition.

use std::collections::HashMap;

use super::{Budget, Nba};
use crate::error::Result;
use crate::graph;
use crate::words::Alphabet;

/// A deterministic parity automaton with priorities on transitions. A run is
/// accepting iff the least priority occurring infinitely often is even.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Dpa {
    alphabet: Alphabet,
    initial: usize,
    /// `next[state][letter] = (target, priority)`; the automaton is complete.
    next: Vec<Vec<(usize, u32)>>,
}

type Bits = Vec<u64>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Node {
    parent: Option<usize>,
    label: Bits,
}

fn is_zero(bits: &Bits) -> bool {
    bits.iter().all(|&w| w == 0)
}

impl Dpa {
    pub(crate) fn states(&self) -> usize {
        self.next.len()
    }

    /// Accepts exactly the words the original automaton rejects.
    pub(crate) fn complement(&self) -> Dpa {
        Dpa {
            alphabet: self.alphabet.clone(),
            initial: self.initial,
            next: self
                .next
                .iter()
                .map(|row| row.iter().map(|&(t, p)| (t, p + 1)).collect())
                .collect(),
        }
    }

    /// An equivalent Büchi automaton. After a guessed point the run commits
    /// to an even priority `k`, uses only transitions of priority at least
    /// `k`, and is accepting when it takes a transition of priority `k`.
    pub(crate) fn to_nba(&self, budget: &Budget) -> Result<Nba> {
        let mut evens: Vec<u32> = self
            .next
            .iter()
            .flatten()
            .map(|&(_, p)| p)
            .filter(|p| p % 2 == 0)
            .collect();
        evens.sort_unstable();
        evens.dedup();
        // (state, committed priority, just hit)
        type Key = (usize, Option<u32>, bool);
        let mut index: HashMap<Key, usize> = HashMap::new();
        let mut keys: Vec<Key> = Vec::new();
        let mut intern = |key: Key, keys: &mut Vec<Key>| -> Result<usize> {
            if let Some(&id) = index.get(&key) {
                return Ok(id);
            }
            let id = keys.len();
            index.insert(key, id);
            keys.push(key);
            budget.check(keys.len())?;
            Ok(id)
        };
        intern((self.initial, None, false), &mut keys)?;
        let mut edges = Vec::new();
        let mut i = 0;
        while i < keys.len() {
            let (s, committed, _) = keys[i];
            for (l, &(t, p)) in self.next[s].iter().enumerate() {
                match committed {
                    None => {
                        let id = intern((t, None, false), &mut keys)?;
                        edges.push((i, l, id));
                        for &k in evens.iter().filter(|&&k| p >= k) {
                            let id = intern((t, Some(k), p == k), &mut keys)?;
                            edges.push((i, l, id));
                        }
                    }
                    Some(k) if p >= k => {
                        let id = intern((t, Some(k), p == k), &mut keys)?;
                        edges.push((i, l, id));
                    }
                    Some(_) => {}
                }
            }
            i += 1;
        }
        let mut out = Nba::new(&self.alphabet, keys.len())?;
        out.add_initial(0)?;
        for (id, &(_, _, hit)) in keys.iter().enumerate() {
            out.set_accepting(id, hit)?;
        }
        for (p, l, q) in edges {
            out.add_transition(p, l, q)?;
        }
        Ok(out)
    }
}

/// Safra–Piterman determinization.
pub(crate) fn determinize(a: &Nba, budget: &Budget) -> Result<Dpa> {
    let n = a.states();
    let words = n.div_ceil(64).max(1);
    let sigma = a.alphabet().len();
    let mut accepting: Bits = vec![0; words];
    for q in a.accepting_states() {
        accepting[q / 64] |= 1 << (q % 64);
    }
    let post = |label: &Bits, l: usize| -> Bits {
        let mut out = vec![0u64; words];
        for q in 0..n {
            if label[q / 64] >> (q % 64) & 1 == 1 {
                for &r in a.successors(q, l) {
                    out[r / 64] |= 1 << (r % 64);
                }
            }
        }
        out
    };
    // Larger than any priority produced by a real event.
    let neutral = 2 * (2 * n as u32 + 1) + 1;

    let mut root: Bits = vec![0; words];
    for &q in a.initial() {
        root[q / 64] |= 1 << (q % 64);
    }
    let initial_tree: Vec<Node> = if is_zero(&root) {
        Vec::new()
    } else {
        vec![Node {
            parent: None,
            label: root,
        }]
    };
    let mut index: HashMap<Vec<Node>, usize> = HashMap::new();
    let mut trees: Vec<Vec<Node>> = Vec::new();
    index.insert(initial_tree.clone(), 0);
    trees.push(initial_tree);
    let mut next: Vec<Vec<(usize, u32)>> = Vec::new();
    let mut i = 0;
    while i < trees.len() {
        let mut row = Vec::with_capacity(sigma);
        for l in 0..sigma {
            let (tree, priority) = safra_step(&trees[i], l, &accepting, &post, neutral);
            let id = match index.get(&tree) {
                Some(&id) => id,
                None => {
                    let id = trees.len();
                    index.insert(tree.clone(), id);
                    trees.push(tree);
                    budget.check(trees.len())?;
                    id
                }
            };
            row.push((id, priority));
        }
        next.push(row);
        i += 1;
    }
    Ok(Dpa {
        alphabet: a.alphabet().clone(),
        initial: 0,
        next,
    })
}

fn safra_step(
    tree: &[Node],
    letter: usize,
    accepting: &Bits,
    post: &impl Fn(&Bits, usize) -> Bits,
    neutral: u32,
) -> (Vec<Node>, u32) {
    let mut nodes: Vec<Node> = tree.to_vec();
    // Branch: every node spawns a youngest child holding its accepting states.
    for i in 0..tree.len() {
        let label: Bits = tree[i]
            .label
            .iter()
            .zip(accepting)
            .map(|(x, f)| x & f)
            .collect();
        if !is_zero(&label) {
            nodes.push(Node {
                parent: Some(i),
                label,
            });
        }
    }
    // Powerset step.
    for node in &mut nodes {
        node.label = post(&node.label, letter);
    }
    // Horizontal merge: a state stays only with the oldest sibling holding it,
    // and children keep only what their parent kept. Parents and older
    // siblings come first in creation order.
    for i in 0..nodes.len() {
        if let Some(p) = nodes[i].parent {
            let mut label = nodes[i].label.clone();
            for (w, x) in label.iter_mut().enumerate() {
                *x &= nodes[p].label[w];
            }
            for s in 0..i {
                if nodes[s].parent == Some(p) {
                    for (w, x) in label.iter_mut().enumerate() {
                        *x &= !nodes[s].label[w];
                    }
                }
            }
            nodes[i].label = label;
        }
    }
    let mut removed: Vec<bool> = nodes.iter().map(|node| is_zero(&node.label)).collect();
    // Vertical merge: a node covered by its children absorbs them and turns green.
    let mut green = vec![false; nodes.len()];
    for i in 0..nodes.len() {
        if removed[i] {
            continue;
        }
        let mut union: Bits = vec![0; nodes[i].label.len()];
        let mut has_child = false;
        for c in (i + 1)..nodes.len() {
            if nodes[c].parent == Some(i) && !removed[c] {
                has_child = true;
                for (w, x) in union.iter_mut().enumerate() {
                    *x |= nodes[c].label[w];
                }
            }
        }
        if has_child && union == nodes[i].label {
            green[i] = true;
            for d in (i + 1)..nodes.len() {
                if nodes[d].parent.is_some_and(|p| p == i || removed[p]) {
                    removed[d] = true;
                }
            }
        }
    }
    // Descendants of removed nodes are removed too.
    for d in 0..nodes.len() {
        if nodes[d].parent.is_some_and(|p| removed[p]) {
            removed[d] = true;
        }
    }
    let first_removed = removed.iter().position(|&r| r);
    let first_green = green.iter().position(|&g| g);
    let name = |i: usize| i as u32 + 1;
    let priority = match (first_green, first_removed) {
        (Some(e), Some(f)) if e < f => 2 * name(e),
        (Some(e), None) => 2 * name(e),
        (_, Some(f)) => 2 * name(f) - 1,
        (None, None) => neutral,
    };
    let mut renumber = vec![usize::MAX; nodes.len()];
    let mut out = Vec::new();
    for (i, node) in nodes.into_iter().enumerate() {
        if !removed[i] {
            renumber[i] = out.len();
            out.push(Node {
                parent: node.parent.map(|p| renumber[p]),
                label: node.label,
            });
        }
    }
    (out, priority)
}

/// True iff `L(y) ⊆ L(d)`: no reachable cycle of `y × d` visits an accepting
/// state of `y` while its least priority is odd.
pub(crate) fn nba_included_in_dpa(y: &Nba, d: &Dpa, budget: &Budget) -> Result<bool> {
    let m = d.states();
    let n = y.states();
    budget.check(n.saturating_mul(m))?;
    let node = |q: usize, s: usize| q * m + s;
    let total = n * m;
    // Edges with their priorities.
    let mut succ: Vec<Vec<(usize, u32)>> = vec![Vec::new(); total];
    for q in 0..n {
        for s in 0..m {
            for (l, &(t, p)) in d.next[s].iter().enumerate() {
                for &r in y.successors(q, l) {
                    succ[node(q, s)].push((node(r, t), p));
                }
            }
        }
    }
    let plain: Vec<Vec<usize>> = succ
        .iter()
        .map(|es| es.iter().map(|&(w, _)| w).collect())
        .collect();
    let reach = graph::reachable(&plain, y.initial().iter().map(|&q| node(q, d.initial)));
    let mut odds: Vec<u32> = succ
        .iter()
        .flatten()
        .map(|&(_, p)| p)
        .filter(|p| p % 2 == 1)
        .collect();
    odds.sort_unstable();
    odds.dedup();
    for k in odds {
        let restricted: Vec<Vec<usize>> = (0..total)
            .map(|v| {
                if !reach[v] {
                    return Vec::new();
                }
                succ[v]
                    .iter()
                    .filter(|&&(w, p)| p >= k && reach[w])
                    .map(|&(w, _)| w)
                    .collect()
            })
            .collect();
        let comp = graph::scc(total, &restricted);
        let mut has_k = vec![false; total];
        let mut has_accepting = vec![false; total];
        for v in (0..total).filter(|&v| reach[v]) {
            for &(w, p) in &succ[v] {
                if p == k && reach[w] && comp[v] == comp[w] {
                    has_k[comp[v]] = true;
                }
            }
        }
        let cyc = graph::on_cycle(&restricted, &comp);
        for v in (0..total).filter(|&v| reach[v] && cyc[v] && y.is_accepting(v / m)) {
            has_accepting[comp[v]] = true;
        }
        if (0..total).any(|c| has_k[c] && has_accepting[c]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{member, pinf_nba};
    use crate::enumeration::{canonical, up_sweep};
    use crate::words::UpWord;

    fn dpa_accepts(d: &Dpa, x: &UpWord) -> bool {
        // Run the lasso until a (state, position) pair repeats.
        let mut seen = HashMap::new();
        let mut trace = Vec::new();
        let (mut s, mut pos) = (d.initial, 0);
        loop {
            if let Some(&start) = seen.get(&(s, pos)) {
                let cycle: &[u32] = &trace[start..];
                return cycle.iter().min().is_some_and(|p| p % 2 == 0);
            }
            seen.insert((s, pos), trace.len());
            let (t, p) = d.next[s][x.letter_at(pos)];
            trace.push(p);
            s = t;
            pos = x.next_position(pos);
        }
    }

    #[test]
    fn determinization_preserves_the_language() {
        let bin = Alphabet::binary();
        let sweep = up_sweep(&bin, 2, 3);
        for k in 1..=2 {
            for s in canonical(k, 2) {
                let a = s.to_nba(&bin);
                let d = determinize(&a, &Budget::default()).unwrap();
                let back = d.to_nba(&Budget::default()).unwrap();
                let comp = d.complement();
                for x in &sweep {
                    let expected = member(&a, x).unwrap().is_some();
                    assert_eq!(dpa_accepts(&d, x), expected, "{x} on {a:?}");
                    assert_eq!(dpa_accepts(&comp, x), !expected);
                    assert_eq!(member(&back, x).unwrap().is_some(), expected);
                }
            }
        }
    }

    #[test]
    fn inclusion_against_a_dpa() {
        let p = pinf_nba();
        let d = determinize(&p, &Budget::default()).unwrap();
        assert!(nba_included_in_dpa(&p, &d, &Budget::default()).unwrap());
        let all = crate::automata::universal_nba(&Alphabet::binary());
        assert!(!nba_included_in_dpa(&all, &d, &Budget::default()).unwrap());
    }
}
