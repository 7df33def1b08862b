//! Regular infinite binary trees and their finite initial subtrees.
//!
//! ```text
//! tree
//! alphabet 0 1      # optional, defaults to 0 1
//! states 2
//! root 0
//! node 0 label 1 left 1 right 0
//! node 1 label 0 left 1 right 1
//! ```

use std::collections::{HashMap, VecDeque};
use std::fmt::Write;

use serde::{Serialize, Serializer};

use crate::automata::format::{check_state, parse_header, parse_index, parse_symbol};
use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord};

/// A generator state: its label and the states of its two children.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Node {
    pub label: usize,
    pub left: usize,
    pub right: usize,
}

/// An infinite binary tree given by a finite deterministic generator: the
/// node reached by a path `d_1 … d_n` of directions carries the label of the
/// generator state reached from the root by following those directions.
#[derive(Clone, PartialEq, Eq)]
pub struct RegularTree {
    alphabet: Alphabet,
    root: usize,
    nodes: Vec<Node>,
}

impl RegularTree {
    pub fn new(alphabet: &Alphabet, root: usize, nodes: Vec<Node>) -> Result<Self> {
        let n = nodes.len();
        let check = |q: usize| {
            if q < n {
                Ok(())
            } else {
                Err(Error::StateOutOfRange { state: q, states: n })
            }
        };
        check(root)?;
        for node in &nodes {
            alphabet.check_letter(node.label)?;
            check(node.left)?;
            check(node.right)?;
        }
        Ok(RegularTree {
            alphabet: alphabet.clone(),
            root,
            nodes,
        })
    }

    /// The tree labelled `letter` everywhere.
    pub fn constant(alphabet: &Alphabet, letter: usize) -> Result<Self> {
        RegularTree::new(
            alphabet,
            0,
            vec![Node {
                label: letter,
                left: 0,
                right: 0,
            }],
        )
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn root(&self) -> usize {
        self.root
    }

    /// Number of generator states.
    pub fn states(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, s: usize) -> Node {
        self.nodes[s]
    }

    pub fn label(&self, s: usize) -> usize {
        self.nodes[s].label
    }

    /// Child of generator state `s`: left when `right` is false.
    pub fn child(&self, s: usize, right: bool) -> usize {
        if right {
            self.nodes[s].right
        } else {
            self.nodes[s].left
        }
    }

    /// Generator state at the node reached by `path`, a string over `l`/`r`.
    pub fn state_at(&self, path: &str) -> Result<usize> {
        path.chars().try_fold(self.root, |s, d| match d {
            'l' => Ok(self.nodes[s].left),
            'r' => Ok(self.nodes[s].right),
            other => Err(Error::InvalidArgument(format!("path direction `{other}` is not l or r"))),
        })
    }

    pub fn label_at(&self, path: &str) -> Result<usize> {
        Ok(self.label(self.state_at(path)?))
    }

    /// Generator states reachable from the root.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![self.root];
        seen[self.root] = true;
        while let Some(s) = stack.pop() {
            for c in [self.nodes[s].left, self.nodes[s].right] {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        seen
    }

    /// True iff both trees carry the same label at every node, decided on
    /// the reachable pairs of generator states.
    pub fn equals(&self, other: &RegularTree) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(self.root, other.root)];
        seen.insert((self.root, other.root));
        while let Some((s, t)) = stack.pop() {
            let (a, b) = (self.nodes[s], other.nodes[t]);
            if a.label != b.label {
                return Ok(false);
            }
            for pair in [(a.left, b.left), (a.right, b.right)] {
                if seen.insert(pair) {
                    stack.push(pair);
                }
            }
        }
        Ok(true)
    }

    /// The tree over `Σ × Γ` whose labels pair those of `left` and `right`.
    pub fn zip(left: &RegularTree, right: &RegularTree) -> Result<RegularTree> {
        let alphabet = Alphabet::product(&left.alphabet, &right.alphabet)?;
        let width = right.alphabet.len();
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(left.root, right.root)];
        index.insert((left.root, right.root), 0);
        let mut nodes = Vec::new();
        let mut next = 0;
        while next < pairs.len() {
            let (s, t) = pairs[next];
            let (a, b) = (left.nodes[s], right.nodes[t]);
            let mut child = |pair: (usize, usize)| {
                *index.entry(pair).or_insert_with(|| {
                    pairs.push(pair);
                    pairs.len() - 1
                })
            };
            let l = child((a.left, b.left));
            let r = child((a.right, b.right));
            nodes.push(Node {
                label: a.label * width + b.label,
                left: l,
                right: r,
            });
            next += 1;
        }
        RegularTree::new(&alphabet, 0, nodes)
    }

    /// Coordinate 0 or 1 of a tree over a pair alphabet.
    pub fn coordinate(&self, coordinate: usize) -> Result<RegularTree> {
        let (left, right) = self.alphabet.factors().ok_or_else(|| {
            Error::AlphabetMismatch(format!("{} is not a pair alphabet", self.alphabet))
        })?;
        let width = right.len();
        let (target, pick): (Alphabet, fn(usize, usize) -> usize) = match coordinate {
            0 => (left, |l, w| l / w),
            1 => (right, |l, w| l % w),
            c => return Err(Error::InvalidArgument(format!("coordinate must be 0 or 1, got {c}"))),
        };
        let nodes = self
            .nodes
            .iter()
            .map(|n| Node {
                label: pick(n.label, width),
                ..*n
            })
            .collect();
        RegularTree::new(&target, self.root, nodes)
    }

    /// Label sequence along the path that follows `directions` (false for
    /// left) from the root, repeating them forever.
    pub fn path_word(&self, directions: &[bool]) -> Result<UpWord> {
        if directions.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        // Walk until a (state, phase) pair repeats.
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        let mut letters = Vec::new();
        let mut s = self.root;
        let mut i = 0;
        loop {
            let phase = i % directions.len();
            if let Some(&start) = seen.get(&(s, phase)) {
                let period = letters[start..].to_vec();
                letters.truncate(start);
                return UpWord::new(&self.alphabet, letters, period);
            }
            seen.insert((s, phase), i);
            letters.push(self.label(s));
            s = self.child(s, directions[phase]);
            i += 1;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("tree\n");
        let _ = writeln!(out, "alphabet {}", self.alphabet.symbols().join(" "));
        let _ = writeln!(out, "states {}", self.nodes.len());
        let _ = writeln!(out, "root {}", self.root);
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "node {i} label {} left {} right {}",
                self.alphabet.symbol(n.label),
                n.left,
                n.right
            );
        }
        out
    }

    /// Reads the `tree` format; without an `alphabet` line the alphabet is `{0, 1}`.
    pub fn parse(text: &str) -> Result<RegularTree> {
        let header = parse_header(text, &["tree"], Some(Alphabet::binary()))?;
        let n = header.states;
        let mut root = None;
        let mut nodes: Vec<Option<Node>> = vec![None; n];
        for (line, tokens) in &header.rest {
            let line = *line;
            match tokens[0] {
                "root" if tokens.len() == 2 => {
                    if root.is_some() {
                        return Err(Error::parse(line, "duplicate root"));
                    }
                    root = Some(check_state(line, parse_index(line, tokens[1], "a state")?, n)?);
                }
                "node" if tokens.len() == 8
                    && tokens[2] == "label"
                    && tokens[4] == "left"
                    && tokens[6] == "right" =>
                {
                    let i = check_state(line, parse_index(line, tokens[1], "a state")?, n)?;
                    if nodes[i].is_some() {
                        return Err(Error::parse(line, format!("node {i} defined twice")));
                    }
                    nodes[i] = Some(Node {
                        label: parse_symbol(line, &header.alphabet, tokens[3])?,
                        left: check_state(line, parse_index(line, tokens[5], "a state")?, n)?,
                        right: check_state(line, parse_index(line, tokens[7], "a state")?, n)?,
                    });
                }
                _ => {
                    return Err(Error::parse(
                        line,
                        format!("expected `root <i>` or `node <i> label <a> left <j> right <k>`, got `{}`", tokens.join(" ")),
                    ))
                }
            }
        }
        let last = header.rest.last().map_or(1, |(l, _)| *l);
        let root = root.ok_or_else(|| Error::parse(last, "missing `root` line"))?;
        let nodes = nodes
            .into_iter()
            .enumerate()
            .map(|(i, n)| n.ok_or_else(|| Error::parse(last, format!("node {i} is not defined"))))
            .collect::<Result<Vec<_>>>()?;
        RegularTree::new(&header.alphabet, root, nodes)
    }

    /// The same tree with unreachable states dropped and the rest numbered
    /// in breadth-first order from the root.
    pub fn normalized(&self) -> RegularTree {
        let mut index = vec![usize::MAX; self.nodes.len()];
        let mut order = vec![self.root];
        index[self.root] = 0;
        let mut queue = VecDeque::from([self.root]);
        while let Some(s) = queue.pop_front() {
            for c in [self.nodes[s].left, self.nodes[s].right] {
                if index[c] == usize::MAX {
                    index[c] = order.len();
                    order.push(c);
                    queue.push_back(c);
                }
            }
        }
        let nodes = order
            .iter()
            .map(|&s| Node {
                label: self.nodes[s].label,
                left: index[self.nodes[s].left],
                right: index[self.nodes[s].right],
            })
            .collect();
        RegularTree {
            alphabet: self.alphabet.clone(),
            root: 0,
            nodes,
        }
    }
}

impl std::fmt::Debug for RegularTree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl Serialize for RegularTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(&self.to_text())
    }
}

/// The labels of all nodes of depth at most `depth`, stored in
/// breadth-first order: node `i` has children `2i + 1` (left) and `2i + 2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTreePrefix {
    alphabet: Alphabet,
    depth: usize,
    labels: Vec<usize>,
}

/// Nodes of a complete binary tree of the given depth.
fn complete_size(depth: usize) -> usize {
    (1usize << (depth + 1)) - 1
}

impl FiniteTreePrefix {
    pub fn new(alphabet: &Alphabet, depth: usize, labels: Vec<usize>) -> Result<Self> {
        if depth >= usize::BITS as usize - 1 || labels.len() != complete_size(depth) {
            return Err(Error::InvalidArgument(format!(
                "a prefix of depth {depth} needs {} labels",
                complete_size(depth.min(40))
            )));
        }
        for &l in &labels {
            alphabet.check_letter(l)?;
        }
        Ok(FiniteTreePrefix {
            alphabet: alphabet.clone(),
            depth,
            labels,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Number of nodes, `2^(depth+1) - 1`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Label of node `i` in breadth-first numbering.
    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    /// Whether node `i` lies on the last level.
    pub fn is_leaf(&self, i: usize) -> bool {
        2 * i + 1 >= self.labels.len()
    }

    /// True iff `self` is an initial subtree of `other`.
    pub fn is_prefix_of(&self, other: &FiniteTreePrefix) -> bool {
        self.alphabet == other.alphabet
            && self.depth <= other.depth
            && self.labels[..] == other.labels[..self.labels.len()]
    }

    /// True iff `t` extends this prefix.
    pub fn is_prefix_of_tree(&self, t: &RegularTree) -> bool {
        self.alphabet == *t.alphabet() && tree_prefix(t, self.depth).labels == self.labels
    }

    /// Least number of occurrences of `letter` on a root-to-leaf path.
    pub fn min_path_count(&self, letter: usize) -> usize {
        let mut count = vec![0usize; self.labels.len()];
        for i in (0..self.labels.len()).rev() {
            let below = if self.is_leaf(i) {
                0
            } else {
                count[2 * i + 1].min(count[2 * i + 2])
            };
            count[i] = below + usize::from(self.labels[i] == letter);
        }
        count[0]
    }
}

impl std::fmt::Display for FiniteTreePrefix {
    /// Levels separated by `/`, e.g. `1/10/0110`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let single = self.alphabet.symbols().iter().all(|s| s.chars().count() == 1);
        for d in 0..=self.depth {
            if d > 0 {
                f.write_str("/")?;
            }
            for (j, i) in ((1usize << d) - 1..(1usize << (d + 1)) - 1).enumerate() {
                if !single && j > 0 {
                    f.write_str(" ")?;
                }
                f.write_str(self.alphabet.symbol(self.labels[i]))?;
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for FiniteTreePrefix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteTreePrefix({self})")
    }
}

impl Serialize for FiniteTreePrefix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `t | n`: the labels of all nodes of depth at most `n`.
pub fn tree_prefix(t: &RegularTree, n: usize) -> FiniteTreePrefix {
    let size = complete_size(n);
    let mut states = Vec::with_capacity(size);
    states.push(t.root);
    for i in 0..size {
        if 2 * i + 1 < size {
            let s = states[i];
            states.push(t.nodes[s].left);
            states.push(t.nodes[s].right);
        }
    }
    FiniteTreePrefix {
        alphabet: t.alphabet.clone(),
        depth: n,
        labels: states.iter().map(|&s| t.label(s)).collect(),
    }
}

/// True iff every root-to-leaf path of `p` carries at least `k` ones, so
/// that every tree extending `p` has at least `k` ones on every path.
pub fn o_level_check(p: &FiniteTreePrefix, k: usize) -> Result<bool> {
    if !p.alphabet.is_binary() {
        return Err(Error::AlphabetMismatch("level checks need the alphabet {0, 1}".into()));
    }
    Ok(p.min_path_count(1) >= k)
}

/// True iff every infinite path of `t` carries infinitely many ones, i.e. no
/// reachable cycle of the generator avoids label 1.
pub fn has_ones_on_every_path(t: &RegularTree) -> Result<bool> {
    if !t.alphabet.is_binary() {
        return Err(Error::AlphabetMismatch("the tree must be over {0, 1}".into()));
    }
    let reach = t.reachable();
    let zero: Vec<bool> = (0..t.states()).map(|s| reach[s] && t.label(s) == 0).collect();
    let succ: Vec<Vec<usize>> = (0..t.states())
        .map(|s| {
            if zero[s] {
                [t.nodes[s].left, t.nodes[s].right]
                    .into_iter()
                    .filter(|&c| zero[c])
                    .collect()
            } else {
                Vec::new()
            }
        })
        .collect();
    let comp = crate::graph::scc(succ.len(), &succ);
    Ok(!crate::graph::on_cycle(&succ, &comp).iter().any(|&c| c))
}

/// The least depth `d` such that every path of `α | d` carries at least `k`
/// ones. Requires ones on every path of `α`.
pub fn min_depth_for_level(alpha: &RegularTree, k: usize) -> Result<usize> {
    if !has_ones_on_every_path(alpha)? {
        return Err(Error::InvalidArgument(
            "the tree has a path with finitely many ones".into(),
        ));
    }
    // fewest[s]: least number of ones on the first d+1 nodes of a path from s.
    let n = alpha.states();
    let ones = |s: usize| usize::from(alpha.label(s) == 1);
    let mut fewest: Vec<usize> = (0..n).map(ones).collect();
    let mut d = 0;
    while fewest[alpha.root] < k {
        fewest = (0..n)
            .map(|s| ones(s) + fewest[alpha.nodes[s].left].min(fewest[alpha.nodes[s].right]))
            .collect();
        d += 1;
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::binary()
    }

    fn by_depth_parity() -> RegularTree {
        RegularTree::new(
            &bin(),
            0,
            vec![
                Node { label: 1, left: 1, right: 1 },
                Node { label: 0, left: 0, right: 0 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn prefixes() {
        let ones = RegularTree::constant(&bin(), 1).unwrap();
        assert_eq!(tree_prefix(&ones, 1).labels(), &[1, 1, 1]);
        assert_eq!(tree_prefix(&by_depth_parity(), 2).to_string(), "1/00/1111");
        assert_eq!(tree_prefix(&by_depth_parity(), 0).labels(), &[1]);
        assert!(tree_prefix(&ones, 1).is_prefix_of(&tree_prefix(&ones, 3)));
    }

    #[test]
    fn levels() {
        let ones = RegularTree::constant(&bin(), 1).unwrap();
        let zeros = RegularTree::constant(&bin(), 0).unwrap();
        assert!(o_level_check(&tree_prefix(&ones, 2), 2).unwrap());
        assert!(!o_level_check(&tree_prefix(&zeros, 3), 1).unwrap());
        assert_eq!(min_depth_for_level(&ones, 3).unwrap(), 2);
        assert_eq!(min_depth_for_level(&by_depth_parity(), 2).unwrap(), 2);
        assert!(min_depth_for_level(&zeros, 1).is_err());
    }

    #[test]
    fn format_round_trip() {
        let t = by_depth_parity();
        assert_eq!(RegularTree::parse(&t.to_text()).unwrap(), t);
        let text = "tree\nstates 1\nroot 0\nnode 0 label 1 left 0 right 0\n";
        assert!(RegularTree::parse(text).unwrap().equals(&RegularTree::constant(&bin(), 1).unwrap()).unwrap());
        let bad = "tree\nstates 1\nroot 0\nnode 0 label 1 left 3 right 0\n";
        assert!(matches!(RegularTree::parse(bad), Err(Error::Parse { line: 4, .. })));
    }

    #[test]
    fn equality_and_pairs() {
        let t = by_depth_parity();
        let unrolled = RegularTree::new(
            &bin(),
            0,
            vec![
                Node { label: 1, left: 1, right: 2 },
                Node { label: 0, left: 0, right: 0 },
                Node { label: 0, left: 3, right: 3 },
                Node { label: 1, left: 1, right: 1 },
            ],
        )
        .unwrap();
        assert!(t.equals(&unrolled).unwrap());
        assert!(!t.equals(&RegularTree::constant(&bin(), 1).unwrap()).unwrap());
        let z = RegularTree::zip(&t, &RegularTree::constant(&bin(), 0).unwrap()).unwrap();
        assert!(z.coordinate(0).unwrap().equals(&t).unwrap());
        assert_eq!(t.path_word(&[false]).unwrap().to_string(), "(10)w");
    }
}
