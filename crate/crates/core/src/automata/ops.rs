//! Basic automata and the boolean, product and projection constructions.

use std::collections::HashMap;

use super::{Budget, Nba, TransitionSystem};
use crate::error::{Error, Result};
use crate::words::{Alphabet, FiniteWord, UpWord};

/// Words over `{0,1}` with infinitely many 1s. State 1 (accepting) is
/// entered exactly after reading a 1.
pub fn pinf_nba() -> Nba {
    let mut a = Nba::new(&Alphabet::binary(), 2).expect("two states");
    a.add_initial(0).expect("in range");
    a.set_accepting(1, true).expect("in range");
    for q in 0..2 {
        for l in 0..2 {
            a.add_transition(q, l, l).expect("in range");
        }
    }
    a
}

/// All words over the alphabet.
pub fn universal_nba(alphabet: &Alphabet) -> Nba {
    let mut a = Nba::new(alphabet, 1).expect("one state");
    a.add_initial(0).expect("in range");
    a.set_accepting(0, true).expect("in range");
    for l in 0..alphabet.len() {
        a.add_transition(0, l, 0).expect("in range");
    }
    a
}

/// The basic clopen set of words extending `w`: a chain reading `w` into a
/// universal sink. Every state is accepting, so the automaton is a safety
/// automaton and intersections with it need no acceptance bookkeeping.
pub fn clopen_nba(w: &FiniteWord) -> Nba {
    let letters = w.letters();
    let mut a = Nba::new(w.alphabet(), letters.len() + 1).expect("nonzero states");
    a.add_initial(0).expect("in range");
    for (i, &l) in letters.iter().enumerate() {
        a.add_transition(i, l, i + 1).expect("in range");
    }
    let sink = letters.len();
    for l in 0..w.alphabet().len() {
        a.add_transition(sink, l, sink).expect("in range");
    }
    for q in 0..=sink {
        a.set_accepting(q, true).expect("in range");
    }
    a
}

/// Accepts exactly `x`: one state per lasso position, all accepting.
pub fn singleton_nba(x: &UpWord) -> Nba {
    let len = x.lasso_len();
    let mut a = Nba::new(x.alphabet(), len).expect("nonzero states");
    a.add_initial(0).expect("in range");
    for pos in 0..len {
        a.add_transition(pos, x.letter_at(pos), x.next_position(pos))
            .expect("in range");
        a.set_accepting(pos, true).expect("in range");
    }
    a
}

/// Disjoint union.
pub fn union(a: &Nba, b: &Nba) -> Result<Nba> {
    a.alphabet().ensure_same(b.alphabet())?;
    let shift = a.states();
    let mut out = Nba::new(a.alphabet(), a.states() + b.states())?;
    for (part, offset) in [(a, 0), (b, shift)] {
        for &q in part.initial() {
            out.add_initial(q + offset)?;
        }
        for q in part.accepting_states() {
            out.set_accepting(q + offset, true)?;
        }
        for (p, l, q) in part.transitions() {
            out.add_transition(p + offset, l, q + offset)?;
        }
    }
    Ok(out)
}

/// Intersection of two languages; see [`intersection_all`].
pub fn intersection(a: &Nba, b: &Nba) -> Result<Nba> {
    intersection_all(&[a, b], &Budget::default())
}

/// Intersection of any number of languages over a common alphabet.
///
/// Only reachable product states are built. Operands whose states are all
/// accepting constrain runs but not acceptance; the remaining operands are
/// combined by a round-robin counter (the two-flag construction when two
/// of them remain). The result is trimmed.
pub fn intersection_all(parts: &[&Nba], budget: &Budget) -> Result<Nba> {
    let first = parts
        .first()
        .ok_or_else(|| Error::InvalidArgument("intersection of no automata".into()))?;
    for p in parts {
        first.alphabet().ensure_same(p.alphabet())?;
    }
    let identity: Vec<usize> = (0..first.alphabet().len()).collect();
    let operands: Vec<(&TransitionSystem, &[usize])> =
        parts.iter().map(|p| (p.system(), &identity[..])).collect();
    synchronous_product(first.alphabet(), &operands, budget)
}

/// The product automaton over `Σ × Γ` accepting `L(a) × L(b)`, identifying
/// pairs of words with words of pairs.
pub fn product(a: &Nba, b: &Nba) -> Result<Nba> {
    let alphabet = Alphabet::product(a.alphabet(), b.alphabet())?;
    let width = b.alphabet().len();
    let left: Vec<usize> = (0..alphabet.len()).map(|l| l / width).collect();
    let right: Vec<usize> = (0..alphabet.len()).map(|l| l % width).collect();
    synchronous_product(
        &alphabet,
        &[(a.system(), &left), (b.system(), &right)],
        &Budget::default(),
    )
}

/// Projection of an automaton over `Σ × Γ` onto coordinate 0 (`Σ`) or 1 (`Γ`).
pub fn projection(a: &Nba, coordinate: usize) -> Result<Nba> {
    let (left, right) = a.alphabet().factors().ok_or_else(|| {
        Error::AlphabetMismatch(format!("{} is not a pair alphabet", a.alphabet()))
    })?;
    let width = right.len();
    let (target, pick): (Alphabet, Box<dyn Fn(usize) -> usize>) = match coordinate {
        0 => (left, Box::new(move |l| l / width)),
        1 => (right, Box::new(move |l| l % width)),
        c => {
            return Err(Error::InvalidArgument(format!(
                "projection coordinate must be 0 or 1, got {c}"
            )))
        }
    };
    let mut out = Nba::new(&target, a.states())?;
    for &q in a.initial() {
        out.add_initial(q)?;
    }
    for q in a.accepting_states() {
        out.set_accepting(q, true)?;
    }
    for (p, l, q) in a.transitions() {
        out.add_transition(p, pick(l), q)?;
    }
    Ok(out)
}

/// Reachable synchronous product. Operand `i` reads letter `map_i[l]` when the
/// product reads `l`.
pub(crate) fn synchronous_product(
    alphabet: &Alphabet,
    operands: &[(&TransitionSystem, &[usize])],
    budget: &Budget,
) -> Result<Nba> {
    // Operands that actually carry a Büchi condition.
    let live: Vec<usize> = (0..operands.len())
        .filter(|&i| !operands[i].0.all_accepting())
        .collect();
    let k = live.len();
    let accepting = |tuple: &[usize], counter: usize| match k {
        0 => true,
        1 => operands[live[0]].0.is_accepting(tuple[live[0]]),
        _ => counter == 0 && operands[live[0]].0.is_accepting(tuple[live[0]]),
    };
    let advance = |tuple: &[usize], counter: usize| {
        if k > 1 && operands[live[counter]].0.is_accepting(tuple[live[counter]]) {
            (counter + 1) % k
        } else {
            counter
        }
    };

    let mut index: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let mut states: Vec<(Vec<usize>, usize)> = Vec::new();
    let mut initial = Vec::new();
    for tuple in cartesian(operands.iter().map(|(ts, _)| ts.initial())) {
        let key = (tuple, 0);
        let id = states.len();
        index.insert(key.clone(), id);
        states.push(key);
        initial.push(id);
    }
    budget.check(states.len())?;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut next = 0;
    while next < states.len() {
        let (tuple, counter) = states[next].clone();
        let counter2 = advance(&tuple, counter);
        for l in 0..alphabet.len() {
            let choices = operands
                .iter()
                .zip(&tuple)
                .map(|((ts, map), &q)| ts.successors(q, map[l]));
            for succ in cartesian(choices) {
                let key = (succ, counter2);
                let id = match index.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = states.len();
                        index.insert(key.clone(), id);
                        states.push(key);
                        budget.check(states.len())?;
                        id
                    }
                };
                edges.push((next, l, id));
            }
        }
        next += 1;
    }
    let mut out = Nba::new(alphabet, states.len().max(1))?;
    for id in initial {
        out.add_initial(id)?;
    }
    for (id, (tuple, counter)) in states.iter().enumerate() {
        out.set_accepting(id, accepting(tuple, *counter))?;
    }
    for (p, l, q) in edges {
        out.add_transition(p, l, q)?;
    }
    Ok(out.trim())
}

/// All tuples picking one element from each list, in lexicographic order.
pub(crate) fn cartesian<'a>(lists: impl Iterator<Item = &'a [usize]>) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for list in lists {
        acc = acc
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
        if acc.is_empty() {
            break;
        }
    }
    acc
}
