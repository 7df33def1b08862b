//! Büchi tree automata on infinite binary trees.
//!
//! ```text
//! bta
//! alphabet 0 1
//! states 2
//! initial 0
//! final 1
//! trans 0 1 1 1     # state symbol left-state right-state
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use super::tree::{FiniteTreePrefix, RegularTree};
use crate::automata::format::{check_state, parse_header, parse_index, parse_symbol};
use crate::automata::{Budget, Nba};
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// A Büchi tree automaton with a single initial state. A run labels every
/// node with a state, starting from the initial one at the root, such that
/// each node and its two children follow a transition; it is accepting when
/// every path visits accepting states infinitely often.
#[derive(Clone, PartialEq, Eq)]
pub struct Bta {
    alphabet: Alphabet,
    initial: usize,
    accepting: Vec<bool>,
    /// `delta[q][a]`: sorted pairs of child states.
    delta: Vec<Vec<Vec<(usize, usize)>>>,
}

impl Bta {
    pub fn new(alphabet: &Alphabet, states: usize, initial: usize) -> Result<Self> {
        if states == 0 {
            return Err(Error::InvalidArgument("an automaton needs at least one state".into()));
        }
        if initial >= states {
            return Err(Error::StateOutOfRange { state: initial, states });
        }
        Ok(Bta {
            alphabet: alphabet.clone(),
            initial,
            accepting: vec![false; states],
            delta: vec![vec![Vec::new(); alphabet.len()]; states],
        })
    }

    /// The automaton with one rejecting state and no transitions.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Bta::new(alphabet, 1, 0).expect("one state")
    }

    fn check(&self, q: usize) -> Result<()> {
        if q < self.states() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                state: q,
                states: self.states(),
            })
        }
    }

    pub fn add_transition(&mut self, q: usize, letter: usize, left: usize, right: usize) -> Result<()> {
        self.check(q)?;
        self.check(left)?;
        self.check(right)?;
        self.alphabet.check_letter(letter)?;
        let list = &mut self.delta[q][letter];
        if let Err(pos) = list.binary_search(&(left, right)) {
            list.insert(pos, (left, right));
        }
        Ok(())
    }

    pub fn set_accepting(&mut self, q: usize, accepting: bool) -> Result<()> {
        self.check(q)?;
        self.accepting[q] = accepting;
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn all_accepting(&self) -> bool {
        self.accepting.iter().all(|&a| a)
    }

    pub fn transitions(&self, q: usize, letter: usize) -> &[(usize, usize)] {
        &self.delta[q][letter]
    }

    /// All transitions `(q, a, left, right)`.
    pub fn all_transitions(&self) -> impl Iterator<Item = (usize, usize, usize, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(q, by_letter)| {
            by_letter
                .iter()
                .enumerate()
                .flat_map(move |(a, list)| list.iter().map(move |&(l, r)| (q, a, l, r)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// At most one transition per state and letter.
    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|list| list.len() <= 1)
    }

    /// Keeps the states marked in `keep` (which must include the initial
    /// state) and the transitions among them.
    pub(crate) fn restrict(&self, keep: &[bool]) -> Bta {
        let mut index = vec![usize::MAX; self.states()];
        let mut next = 0;
        for q in 0..self.states() {
            if keep[q] {
                index[q] = next;
                next += 1;
            }
        }
        let mut out = Bta::new(&self.alphabet, next, index[self.initial]).expect("initial kept");
        for q in (0..self.states()).filter(|&q| keep[q]) {
            out.accepting[index[q]] = self.accepting[q];
        }
        for (q, a, l, r) in self.all_transitions() {
            if keep[q] && keep[l] && keep[r] {
                out.delta[index[q]][a].push((index[l], index[r]));
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("bta\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet.symbols().join(" "));
        let _ = writeln!(out, "states {}", self.states());
        let _ = writeln!(out, "initial {}", self.initial);
        let finals: Vec<String> = (0..self.states())
            .filter(|&q| self.accepting[q])
            .map(|q| q.to_string())
            .collect();
        let _ = writeln!(out, "final {}", finals.join(" "));
        for (q, a, l, r) in self.all_transitions() {
            let _ = writeln!(out, "trans {q} {} {l} {r}", self.alphabet.symbol(a));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Bta> {
        let header = parse_header(text, &["bta"], None)?;
        let n = header.states;
        let mut initial = None;
        let mut finals = Vec::new();
        let mut trans = Vec::new();
        for (line, tokens) in &header.rest {
            let line = *line;
            let state = |t: &str| -> Result<usize> { check_state(line, parse_index(line, t, "a state")?, n) };
            match tokens[0] {
                "initial" => {
                    if tokens.len() != 2 || initial.is_some() {
                        return Err(Error::parse(line, "expected a single `initial <q>` line"));
                    }
                    initial = Some(state(tokens[1])?);
                }
                "final" => {
                    for t in &tokens[1..] {
                        finals.push(state(t)?);
                    }
                }
                "trans" => {
                    if tokens.len() != 5 {
                        return Err(Error::parse(line, "expected `trans <q> <symbol> <left> <right>`"));
                    }
                    trans.push((
                        state(tokens[1])?,
                        parse_symbol(line, &header.alphabet, tokens[2])?,
                        state(tokens[3])?,
                        state(tokens[4])?,
                    ));
                }
                other => return Err(Error::parse(line, format!("unknown directive `{other}`"))),
            }
        }
        let last = header.rest.last().map_or(1, |(l, _)| *l);
        let initial = initial.ok_or_else(|| Error::parse(last, "missing `initial` line"))?;
        let mut a = Bta::new(&header.alphabet, n, initial)?;
        for q in finals {
            a.set_accepting(q, true)?;
        }
        for (q, s, l, r) in trans {
            a.add_transition(q, s, l, r)?;
        }
        Ok(a)
    }
}

impl std::fmt::Debug for Bta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Trees having a path whose label sequence is accepted by `a`. A copy of
/// each word state follows the chosen path while the other child moves to
/// an accepting sink `⊤` that accepts everything.
pub fn exists_path(a: &Nba) -> Bta {
    let n = a.states();
    let top = n;
    // A fresh initial state unless there is exactly one.
    let fresh = a.initial().len() != 1;
    let states = n + 1 + usize::from(fresh);
    let initial = if fresh { n + 1 } else { a.initial()[0] };
    let mut out = Bta::new(a.alphabet(), states, initial).expect("nonzero states");
    out.set_accepting(top, true).expect("in range");
    for q in a.accepting_states() {
        out.set_accepting(q, true).expect("in range");
    }
    for l in 0..a.alphabet().len() {
        out.add_transition(top, l, top, top).expect("in range");
    }
    let mut add_moves = |from: usize, p: usize| {
        for l in 0..a.alphabet().len() {
            for &q in a.successors(p, l) {
                out.add_transition(from, l, q, top).expect("in range");
                out.add_transition(from, l, top, q).expect("in range");
            }
        }
    };
    for p in 0..n {
        add_moves(p, p);
    }
    if fresh {
        for &p in a.initial() {
            add_moves(initial, p);
        }
    }
    out
}

/// The deterministic automaton for trees with infinitely many ones on every
/// path: reading 1 sends both children to the accepting state, reading 0 to
/// the other one. Starting in the accepting state keeps the language and
/// makes the run on the all-ones tree accepting everywhere.
pub fn tinf_bta() -> Bta {
    let mut out = Bta::new(&Alphabet::binary(), 2, 1).expect("two states");
    out.set_accepting(1, true).expect("in range");
    for q in 0..2 {
        out.add_transition(q, 0, 0, 0).expect("in range");
        out.add_transition(q, 1, 1, 1).expect("in range");
    }
    out
}

/// All trees over `alphabet`.
pub fn universal_bta(alphabet: &Alphabet) -> Bta {
    let mut out = Bta::new(alphabet, 1, 0).expect("one state");
    out.set_accepting(0, true).expect("in range");
    for l in 0..alphabet.len() {
        out.add_transition(0, l, 0, 0).expect("in range");
    }
    out
}

/// The basic clopen set of trees extending `p`: one state per node of `p`
/// and a universal sink; every state is accepting.
pub fn clopen_bta(p: &FiniteTreePrefix) -> Bta {
    let sink = p.len();
    let mut out = Bta::new(p.alphabet(), p.len() + 1, 0).expect("nonzero states");
    for q in 0..=sink {
        out.set_accepting(q, true).expect("in range");
    }
    for l in 0..p.alphabet().len() {
        out.add_transition(sink, l, sink, sink).expect("in range");
    }
    for i in 0..p.len() {
        let (l, r) = if p.is_leaf(i) { (sink, sink) } else { (2 * i + 1, 2 * i + 2) };
        out.add_transition(i, p.label(i), l, r).expect("in range");
    }
    out
}

/// The singleton `{t}`: the generator itself, every state accepting.
pub fn singleton_bta(t: &RegularTree) -> Bta {
    let mut out = Bta::new(t.alphabet(), t.states(), t.root()).expect("nonzero states");
    for s in 0..t.states() {
        let node = t.node(s);
        out.set_accepting(s, true).expect("in range");
        out.add_transition(s, node.label, node.left, node.right).expect("in range");
    }
    out
}

/// Annotates runs: `(q, (a, ε), q', q'')` for each transition of `a`, with
/// `ε = 1` exactly when `q` is accepting. Same states as `a`.
pub fn tree_lift(a: &Bta) -> Bta {
    let alphabet = Alphabet::product(a.alphabet(), &Alphabet::binary()).expect("binary symbols contain no comma");
    let mut out = Bta::new(&alphabet, a.states(), a.initial).expect("nonzero states");
    for q in 0..a.states() {
        out.accepting[q] = a.accepting[q];
    }
    for (q, l, left, right) in a.all_transitions() {
        let flag = usize::from(a.accepting[q]);
        out.add_transition(q, 2 * l + flag, left, right).expect("in range");
    }
    out
}

/// Disjoint union behind a fresh initial state.
pub fn bta_union(a: &Bta, b: &Bta) -> Result<Bta> {
    a.alphabet.ensure_same(&b.alphabet)?;
    let shift = a.states();
    let init = a.states() + b.states();
    let mut out = Bta::new(&a.alphabet, init + 1, init)?;
    for (q, l, x, y) in a.all_transitions() {
        out.add_transition(q, l, x, y)?;
        if q == a.initial {
            out.add_transition(init, l, x, y)?;
        }
    }
    for (q, l, x, y) in b.all_transitions() {
        out.add_transition(q + shift, l, x + shift, y + shift)?;
        if q == b.initial {
            out.add_transition(init, l, x + shift, y + shift)?;
        }
    }
    for q in 0..a.states() {
        out.accepting[q] = a.accepting[q];
    }
    for q in 0..b.states() {
        out.accepting[q + shift] = b.accepting[q];
    }
    Ok(out)
}

/// Intersection of two automata over the same alphabet.
pub fn bta_intersection(a: &Bta, b: &Bta) -> Result<Bta> {
    bta_intersection_all(&[a, b], &Budget::default())
}

pub fn bta_intersection_all(parts: &[&Bta], budget: &Budget) -> Result<Bta> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("intersection of no automata".into()))?;
    for p in parts {
        first.alphabet.ensure_same(&p.alphabet)?;
    }
    let identity: Vec<usize> = (0..first.alphabet.len()).collect();
    let operands: Vec<(&Bta, &[usize])> = parts.iter().map(|p| (*p, &identity[..])).collect();
    synchronous_product(&first.alphabet, &operands, budget)
}

/// Trees over `Σ × Γ` whose coordinates are accepted by `a` and `b`.
pub fn bta_product(a: &Bta, b: &Bta) -> Result<Bta> {
    bta_product_with(a, b, &Budget::default())
}

pub fn bta_product_with(a: &Bta, b: &Bta, budget: &Budget) -> Result<Bta> {
    let alphabet = Alphabet::product(&a.alphabet, &b.alphabet)?;
    let width = b.alphabet.len();
    let left: Vec<usize> = (0..alphabet.len()).map(|l| l / width).collect();
    let right: Vec<usize> = (0..alphabet.len()).map(|l| l % width).collect();
    synchronous_product(&alphabet, &[(a, &left), (b, &right)], budget)
}

/// Projection of an automaton over `Σ × Γ` onto coordinate 0 or 1.
pub fn bta_projection(a: &Bta, coordinate: usize) -> Result<Bta> {
    let (left, right) = a.alphabet.factors().ok_or_else(|| {
        Error::AlphabetMismatch(format!("{} is not a pair alphabet", a.alphabet))
    })?;
    let width = right.len();
    let (target, pick): (Alphabet, fn(usize, usize) -> usize) = match coordinate {
        0 => (left, |l, w| l / w),
        1 => (right, |l, w| l % w),
        c => {
            return Err(Error::InvalidArgument(format!(
                "projection coordinate must be 0 or 1, got {c}"
            )))
        }
    };
    let mut out = Bta::new(&target, a.states(), a.initial)?;
    out.accepting = a.accepting.clone();
    for (q, l, x, y) in a.all_transitions() {
        out.add_transition(q, pick(l, width), x, y)?;
    }
    Ok(out)
}

/// Reachable synchronous product; operand `i` reads `map_i[l]` when the
/// product reads `l`. Operands that are not all-accepting are tracked by a
/// round-robin counter along each path, as for word automata.
fn synchronous_product(alphabet: &Alphabet, operands: &[(&Bta, &[usize])], budget: &Budget) -> Result<Bta> {
    let live: Vec<usize> = (0..operands.len()).filter(|&i| !operands[i].0.all_accepting()).collect();
    type Key = (Vec<usize>, usize);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut keys: Vec<Key> = Vec::new();
    let mut intern = |key: Key, keys: &mut Vec<Key>| -> Result<usize> {
        if let Some(&id) = index.get(&key) {
            return Ok(id);
        }
        let id = keys.len();
        index.insert(key.clone(), id);
        keys.push(key);
        budget.check(keys.len())?;
        Ok(id)
    };
    intern((operands.iter().map(|(a, _)| a.initial).collect(), 0), &mut keys)?;
    let mut edges = Vec::new();
    let mut next = 0;
    while next < keys.len() {
        let (states, c) = keys[next].clone();
        let c2 = match live.get(c) {
            Some(&i) if operands[i].0.accepting[states[i]] => (c + 1) % live.len(),
            _ => c,
        };
        for l in 0..alphabet.len() {
            let choices: Vec<&[(usize, usize)]> = operands
                .iter()
                .zip(&states)
                .map(|((a, map), &q)| a.transitions(q, map[l]))
                .collect();
            if choices.iter().any(|c| c.is_empty()) {
                continue;
            }
            let mut digits = vec![0usize; choices.len()];
            loop {
                let left: Vec<usize> = digits.iter().zip(&choices).map(|(&d, c)| c[d].0).collect();
                let right: Vec<usize> = digits.iter().zip(&choices).map(|(&d, c)| c[d].1).collect();
                let x = intern((left, c2), &mut keys)?;
                let y = intern((right, c2), &mut keys)?;
                edges.push((next, l, x, y));
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
    let mut out = Bta::new(alphabet, keys.len(), 0)?;
    for (id, (states, c)) in keys.iter().enumerate() {
        out.accepting[id] = match live.first() {
            None => true,
            Some(&i) => *c == 0 && operands[i].0.accepting[states[i]],
        };
    }
    for (q, l, x, y) in edges {
        out.add_transition(q, l, x, y)?;
    }
    Ok(super::decide::bta_trim(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::pinf_nba;

    #[test]
    fn format_round_trip() {
        let a = exists_path(&pinf_nba());
        assert_eq!(Bta::parse(&a.to_text()).unwrap(), a);
        let bad = "bta\nalphabet 0 1\nstates 2\ninitial 0\ntrans 0 1 0 2\n";
        assert!(matches!(Bta::parse(bad), Err(Error::Parse { line: 5, .. })));
        assert!(matches!(Bta::parse("bta\nalphabet 0 1\nstates 1\n"), Err(Error::Parse { .. })));
    }

    #[test]
    fn shapes() {
        let t = tinf_bta();
        assert!(t.is_deterministic());
        assert_eq!(t.states(), 2);
        let e = exists_path(&pinf_nba());
        assert_eq!(e.states(), 3);
        assert!(e.is_accepting(2));
        let l = tree_lift(&e);
        assert_eq!(l.states(), e.states());
        assert_eq!(l.transition_count(), e.transition_count());
    }
}
