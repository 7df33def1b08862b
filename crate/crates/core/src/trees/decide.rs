//! Membership and emptiness of Büchi tree automata through Büchi games.
//!
//! For membership of a regular tree, Eve sits at pairs (generator state,
//! automaton state) and picks a transition; Adam picks the direction. For
//! emptiness the generator is dropped and Eve also picks the letter. A
//! positional winning strategy of Eve is a regular accepting run, and in the
//! emptiness game it also spells a regular tree in the language.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::bta::Bta;
use super::game::BuchiGame;
use super::tree::{Node, RegularTree};
use crate::error::{Error, Result};
use crate::words::Alphabet;

/// A positional accepting run on a regular tree: at the node with generator
/// state `s` carrying automaton state `q`, the children get `moves[(s, q)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunStrategy {
    pub root: (usize, usize),
    pub moves: BTreeMap<(usize, usize), (usize, usize)>,
}

impl Serialize for RunStrategy {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            node: usize,
            state: usize,
            left: usize,
            right: usize,
        }
        let entries: Vec<Entry> = self
            .moves
            .iter()
            .map(|(&(node, state), &(left, right))| Entry {
                node,
                state,
                left,
                right,
            })
            .collect();
        entries.serialize(serializer)
    }
}

/// Decides whether `a` accepts `t`; on success returns Eve's positional
/// strategy restricted to the positions it reaches.
pub fn bta_member(a: &Bta, t: &RegularTree) -> Result<Option<RunStrategy>> {
    a.alphabet().ensure_same(t.alphabet())?;
    let mut game = BuchiGame::new();
    let sink = game.add_position(true, false);
    game.add_edge(sink, sink);
    // Eve positions are pairs (generator state, automaton state); Adam
    // positions are (generator state, left state, right state).
    let mut eve: HashMap<(usize, usize), usize> = HashMap::new();
    let mut adam: HashMap<usize, (usize, usize, usize)> = HashMap::new();
    let mut adam_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut queue: Vec<(usize, usize)> = Vec::new();
    let root = (t.root(), a.initial());
    let mut eve_position = |pair: (usize, usize), game: &mut BuchiGame, queue: &mut Vec<(usize, usize)>| {
        *eve.entry(pair).or_insert_with(|| {
            queue.push(pair);
            game.add_position(true, a.is_accepting(pair.1))
        })
    };
    let root_pos = eve_position(root, &mut game, &mut queue);
    let mut next = 0;
    while next < queue.len() {
        let (s, q) = queue[next];
        let v = eve_position((s, q), &mut game, &mut queue);
        let node = t.node(s);
        let options = a.transitions(q, node.label);
        if options.is_empty() {
            game.add_edge(v, sink);
        }
        for &(ql, qr) in options {
            let key = (s, ql, qr);
            let w = match adam_index.get(&key) {
                Some(&w) => w,
                None => {
                    let w = game.add_position(false, false);
                    adam_index.insert(key, w);
                    adam.insert(w, key);
                    for child in [(node.left, ql), (node.right, qr)] {
                        let c = eve_position(child, &mut game, &mut queue);
                        game.add_edge(w, c);
                    }
                    w
                }
            };
            game.add_edge(v, w);
        }
        next += 1;
    }
    let solution = game.solve()?;
    if !solution.eve_wins[root_pos] {
        return Ok(None);
    }
    let mut moves = BTreeMap::new();
    let mut stack = vec![root];
    while let Some((s, q)) = stack.pop() {
        if moves.contains_key(&(s, q)) {
            continue;
        }
        let v = eve[&(s, q)];
        let w = solution.strategy[v].ok_or_else(|| Error::Invariant("winning position without a move".into()))?;
        let &(_, ql, qr) = adam
            .get(&w)
            .ok_or_else(|| Error::Invariant("winning strategy leaves the run".into()))?;
        moves.insert((s, q), (ql, qr));
        let node = t.node(s);
        stack.push((node.left, ql));
        stack.push((node.right, qr));
    }
    Ok(Some(RunStrategy { root, moves }))
}

/// The emptiness game on the states of `a`. Returns the game, the Eve
/// position of each state, and the transition behind each Adam position.
fn emptiness_game(a: &Bta) -> (BuchiGame, Vec<usize>, HashMap<usize, (usize, usize, usize)>) {
    let mut game = BuchiGame::new();
    let sink = game.add_position(true, false);
    game.add_edge(sink, sink);
    let state_pos: Vec<usize> = (0..a.states()).map(|q| game.add_position(true, a.is_accepting(q))).collect();
    let mut choice = HashMap::new();
    for q in 0..a.states() {
        let mut any = false;
        for l in 0..a.alphabet().len() {
            for &(x, y) in a.transitions(q, l) {
                let w = game.add_position(false, false);
                game.add_edge(w, state_pos[x]);
                game.add_edge(w, state_pos[y]);
                game.add_edge(state_pos[q], w);
                choice.insert(w, (l, x, y));
                any = true;
            }
        }
        if !any {
            game.add_edge(state_pos[q], sink);
        }
    }
    (game, state_pos, choice)
}

/// States from which some tree is accepted.
pub fn productive_states(a: &Bta) -> Vec<bool> {
    let (game, state_pos, _) = emptiness_game(a);
    let solution = game.solve().expect("every position has a move");
    state_pos.iter().map(|&v| solution.eve_wins[v]).collect()
}

/// A regular tree accepted by `a`, or `None` when the language is empty.
pub fn bta_witness(a: &Bta) -> Option<RegularTree> {
    let (game, state_pos, choice) = emptiness_game(a);
    let solution = game.solve().expect("every position has a move");
    if !solution.eve_wins[state_pos[a.initial()]] {
        return None;
    }
    let nodes = (0..a.states())
        .map(|q| match solution.strategy[state_pos[q]].and_then(|w| choice.get(&w)) {
            Some(&(label, left, right)) => Node { label, left, right },
            // Losing states are never reached from a winning one.
            None => Node {
                label: 0,
                left: q,
                right: q,
            },
        })
        .collect();
    let t = RegularTree::new(a.alphabet(), a.initial(), nodes).expect("valid generator");
    Some(t.normalized())
}

/// True iff `a` accepts no tree.
pub fn bta_empty(a: &Bta) -> bool {
    bta_witness(a).is_none()
}

/// Restricts `a` to productive states reachable through transitions into
/// productive states. The language is unchanged.
pub fn bta_trim(a: &Bta) -> Bta {
    let productive = productive_states(a);
    if !productive[a.initial()] {
        return Bta::empty(a.alphabet());
    }
    let mut keep = vec![false; a.states()];
    keep[a.initial()] = true;
    let mut stack = vec![a.initial()];
    while let Some(q) = stack.pop() {
        for l in 0..a.alphabet().len() {
            for &(x, y) in a.transitions(q, l) {
                if productive[x] && productive[y] {
                    for c in [x, y] {
                        if !keep[c] {
                            keep[c] = true;
                            stack.push(c);
                        }
                    }
                }
            }
        }
    }
    // Transitions into unproductive states are dropped by `restrict`.
    a.restrict(&keep)
}

/// The characteristic tree `χ_F(ρ)` of the regular accepting run `ρ` that
/// [`bta_member`] finds: label 1 exactly at nodes whose state is accepting.
pub fn tree_witness(a: &Bta, t: &RegularTree) -> Result<RegularTree> {
    let run = bta_member(a, t)?.ok_or_else(|| Error::NotAccepted("tree".into()))?;
    Ok(run_annotation(a, t, &run))
}

/// The tree of accepting-state flags of `run` on `t`.
pub fn run_annotation(a: &Bta, t: &RegularTree, run: &RunStrategy) -> RegularTree {
    let index: HashMap<(usize, usize), usize> = run.moves.keys().enumerate().map(|(i, &k)| (k, i)).collect();
    let nodes = run
        .moves
        .iter()
        .map(|(&(s, q), &(ql, qr))| {
            let node = t.node(s);
            Node {
                label: usize::from(a.is_accepting(q)),
                left: index[&(node.left, ql)],
                right: index[&(node.right, qr)],
            }
        })
        .collect();
    RegularTree::new(&Alphabet::binary(), index[&run.root], nodes)
        .expect("valid generator")
        .normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::pinf_nba;
    use crate::trees::bta::{exists_path, tinf_bta, tree_lift};
    use crate::trees::tree::has_ones_on_every_path;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn constant(l: usize) -> RegularTree {
        RegularTree::constant(&bin(), l).unwrap()
    }

    /// Left spine labelled 0, everything else 1.
    fn zero_left_spine() -> RegularTree {
        RegularTree::new(
            &bin(),
            0,
            vec![
                Node { label: 0, left: 0, right: 1 },
                Node { label: 1, left: 1, right: 1 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn membership_examples() {
        let e = exists_path(&pinf_nba());
        assert!(bta_member(&e, &constant(1)).unwrap().is_some());
        assert!(bta_member(&e, &constant(0)).unwrap().is_none());
        assert!(bta_member(&tinf_bta(), &constant(1)).unwrap().is_some());
        assert!(bta_member(&tinf_bta(), &constant(0)).unwrap().is_none());
        assert!(bta_member(&tinf_bta(), &zero_left_spine()).unwrap().is_none());
        assert!(bta_member(&e, &zero_left_spine()).unwrap().is_some());
    }

    #[test]
    fn right_spine_path() {
        // right spine reads (01)^ω, everything else 0
        let t = RegularTree::new(
            &bin(),
            0,
            vec![
                Node { label: 0, left: 2, right: 1 },
                Node { label: 1, left: 2, right: 0 },
                Node { label: 0, left: 2, right: 2 },
            ],
        )
        .unwrap();
        assert!(bta_member(&exists_path(&pinf_nba()), &t).unwrap().is_some());
    }

    #[test]
    fn emptiness_examples() {
        let mut none = tinf_bta();
        none.set_accepting(1, false).unwrap();
        assert!(bta_empty(&none));
        for a in [tinf_bta(), exists_path(&pinf_nba())] {
            let w = bta_witness(&a).unwrap();
            assert!(bta_member(&a, &w).unwrap().is_some());
        }
        let w = bta_witness(&tinf_bta()).unwrap();
        assert!(has_ones_on_every_path(&w).unwrap());
    }

    #[test]
    fn witnesses() {
        let alpha = tree_witness(&tinf_bta(), &constant(1)).unwrap();
        assert!(alpha.equals(&constant(1)).unwrap());
        let e = exists_path(&pinf_nba());
        let alpha = tree_witness(&e, &constant(1)).unwrap();
        assert!(bta_member(&tinf_bta(), &alpha).unwrap().is_some());
        let pair = RegularTree::zip(&constant(1), &alpha).unwrap();
        assert!(bta_member(&tree_lift(&e), &pair).unwrap().is_some());
        assert!(tree_witness(&e, &constant(0)).is_err());
    }

    #[test]
    fn trimming_keeps_the_language() {
        let e = exists_path(&pinf_nba());
        let t = bta_trim(&e);
        for tree in [constant(0), constant(1), zero_left_spine()] {
            assert_eq!(
                bta_member(&e, &tree).unwrap().is_some(),
                bta_member(&t, &tree).unwrap().is_some()
            );
        }
        let mut dead = tinf_bta();
        dead.set_accepting(1, false).unwrap();
        assert!(bta_empty(&bta_trim(&dead)));
    }
}
