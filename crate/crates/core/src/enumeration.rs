//! Exhaustive enumeration of small Büchi automata and a fast acceptance
//! test for ultimately periodic words.
//!
//! A k-state automaton with `k ≤ 8` is stored as one successor bitmask per
//! state and letter. For a fixed transition structure and word, the set of
//! states some run visits infinitely often ([`recurrent_states`]) decides
//! acceptance for every choice of initial and accepting sets at once.

use crate::automata::Nba;
use crate::words::{Alphabet, UpWord};

/// Largest supported number of states.
pub const MAX_STATES: usize = 8;

/// A transition structure on `k` states: `succ[p * sigma + l]` is the bitmask
/// of successors of `p` on letter `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    k: usize,
    sigma: usize,
    succ: Vec<u8>,
}

impl Structure {
    /// Decodes the structure with index `code`: bit `(p·σ + l)·k + q` encodes
    /// the transition `p --l--> q`.
    pub fn from_code(k: usize, sigma: usize, code: u64) -> Self {
        assert!((1..=MAX_STATES).contains(&k), "unsupported state count {k}");
        let succ = (0..k * sigma)
            .map(|i| ((code >> (i * k)) & ((1 << k) - 1)) as u8)
            .collect();
        Structure { k, sigma, succ }
    }

    /// Number of distinct structures with `k` states over `sigma` letters.
    pub fn count(k: usize, sigma: usize) -> u64 {
        1u64 << (k * k * sigma)
    }

    pub fn code(&self) -> u64 {
        self.succ
            .iter()
            .enumerate()
            .map(|(i, &m)| u64::from(m) << (i * self.k))
            .sum()
    }

    pub fn states(&self) -> usize {
        self.k
    }

    pub fn successors(&self, p: usize, l: usize) -> u8 {
        self.succ[p * self.sigma + l]
    }

    /// Builds the automaton with initial and accepting sets given as bitmasks.
    pub fn to_nba(&self, alphabet: &Alphabet, initial: u8, accepting: u8) -> Nba {
        let mut a = Nba::new(alphabet, self.k).expect("nonzero states");
        for p in 0..self.k {
            if initial >> p & 1 == 1 {
                a.add_initial(p).expect("in range");
            }
            if accepting >> p & 1 == 1 {
                a.set_accepting(p, true).expect("in range");
            }
            for l in 0..self.sigma {
                for q in 0..self.k {
                    if self.successors(p, l) >> q & 1 == 1 {
                        a.add_transition(p, l, q).expect("in range");
                    }
                }
            }
        }
        a
    }

    /// Relabels states by `perm` (old state `p` becomes `perm[p]`).
    fn permuted(&self, perm: &[usize]) -> Structure {
        let mut succ = vec![0u8; self.succ.len()];
        for p in 0..self.k {
            for l in 0..self.sigma {
                let mask = self.successors(p, l);
                let mut image = 0u8;
                for q in 0..self.k {
                    if mask >> q & 1 == 1 {
                        image |= 1 << perm[q];
                    }
                }
                succ[perm[p] * self.sigma + l] = image;
            }
        }
        Structure {
            k: self.k,
            sigma: self.sigma,
            succ,
        }
    }
}

fn permute_mask(mask: u8, perm: &[usize]) -> u8 {
    (0..perm.len())
        .filter(|&q| mask >> q & 1 == 1)
        .fold(0, |acc, q| acc | 1 << perm[q])
}

/// `result[i]`: states that some run of the structure starting in `i` on
/// `x` visits infinitely often.
///
/// The preperiod is read by subset propagation; the period is handled on the
/// graph of (state, period position) pairs, where a pair is recurrent iff it
/// lies on a cycle.
pub fn recurrent_states(t: &Structure, x: &UpWord) -> Vec<u8> {
    let k = t.k;
    let period = x.period_letters();
    let n = k * period.len();
    let node = |q: usize, j: usize| j * k + q;
    let mut succ = vec![Vec::new(); n];
    for j in 0..period.len() {
        let next = (j + 1) % period.len();
        for q in 0..k {
            let mask = t.successors(q, period[j]);
            succ[node(q, j)] = (0..k)
                .filter(|&r| mask >> r & 1 == 1)
                .map(|r| node(r, next))
                .collect();
        }
    }
    let closure = transitive_closure(&succ);
    let reaches = |v: usize, w: usize| closure[v][w / 64] >> (w % 64) & 1 == 1;
    let on_cycle: Vec<bool> = (0..n).map(|v| reaches(v, v)).collect();
    (0..k)
        .map(|i| {
            let mut current = 1u8 << i;
            for &l in x.prefix_letters() {
                current = (0..k)
                    .filter(|&p| current >> p & 1 == 1)
                    .fold(0, |acc, p| acc | t.successors(p, l));
            }
            let mut rec = 0u8;
            for s in (0..k).filter(|&s| current >> s & 1 == 1) {
                let start = node(s, 0);
                for v in 0..n {
                    if on_cycle[v] && (v == start || reaches(start, v)) {
                        rec |= 1 << (v % k);
                    }
                }
            }
            rec
        })
        .collect()
}

/// Warshall's algorithm on bitset rows.
fn transitive_closure(succ: &[Vec<usize>]) -> Vec<Vec<u64>> {
    let n = succ.len();
    let words = n.div_ceil(64);
    let mut reach: Vec<Vec<u64>> = succ
        .iter()
        .map(|targets| {
            let mut row = vec![0u64; words];
            for &w in targets {
                row[w / 64] |= 1 << (w % 64);
            }
            row
        })
        .collect();
    for m in 0..n {
        let row_m = reach[m].clone();
        for row in reach.iter_mut() {
            if row[m / 64] >> (m % 64) & 1 == 1 {
                for (a, b) in row.iter_mut().zip(&row_m) {
                    *a |= b;
                }
            }
        }
    }
    reach
}

/// Acceptance from precomputed recurrent states.
pub fn accepts(rec: &[u8], initial: u8, accepting: u8) -> bool {
    rec.iter()
        .enumerate()
        .any(|(i, &r)| initial >> i & 1 == 1 && r & accepting != 0)
}

/// One enumerated automaton: a structure with initial and accepting masks.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SmallNba {
    pub structure: Structure,
    pub initial: u8,
    pub accepting: u8,
}

impl SmallNba {
    pub fn to_nba(&self, alphabet: &Alphabet) -> Nba {
        self.structure.to_nba(alphabet, self.initial, self.accepting)
    }
}

/// Number of automata with exactly `k` states: all structures with
/// arbitrary initial and accepting sets.
pub fn raw_count(k: usize, sigma: usize) -> u64 {
    Structure::count(k, sigma) * (1u64 << k) * (1u64 << k)
}

/// All `(initial, accepting)` pairs of the raw enumeration.
pub fn raw_marks(k: usize) -> impl Iterator<Item = (u8, u8)> {
    let all = (1u16 << k) as u8;
    (0..all).flat_map(move |i| (0..all).map(move |f| (i, f)))
}

/// The canonical enumeration: initial sets are `{0, …, j − 1}` and, among the
/// relabelings that keep the initial block in place, only the one with the
/// smallest `(structure code, accepting mask)` is kept. Every automaton with
/// `k` states is isomorphic to an enumerated one.
pub fn canonical_marks(t: &Structure) -> Vec<(u8, u8)> {
    let k = t.k;
    let code = t.code();
    let mut out = Vec::new();
    for j in 0..=k {
        let initial = ((1u16 << j) - 1) as u8;
        let perms = block_permutations(k, j);
        for accepting in 0u8..(1 << k) {
            let minimal = perms.iter().all(|perm| {
                let c = t.permuted(perm).code();
                let f = permute_mask(accepting, perm);
                (c, f) >= (code, accepting)
            });
            if minimal {
                out.push((initial, accepting));
            }
        }
    }
    out
}

/// Permutations of `0..k` mapping `0..j` onto itself.
fn block_permutations(k: usize, j: usize) -> Vec<Vec<usize>> {
    let lower = permutations(&(0..j).collect::<Vec<_>>());
    let upper = permutations(&(j..k).collect::<Vec<_>>());
    let mut out = Vec::new();
    for lo in &lower {
        for hi in &upper {
            out.push(lo.iter().chain(hi).copied().collect());
        }
    }
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All automata of the canonical enumeration with exactly `k` states, in
/// deterministic order.
pub fn canonical(k: usize, sigma: usize) -> impl Iterator<Item = SmallNba> {
    (0..Structure::count(k, sigma)).flat_map(move |code| {
        let t = Structure::from_code(k, sigma, code);
        canonical_marks(&t)
            .into_iter()
            .map(move |(initial, accepting)| SmallNba {
                structure: t.clone(),
                initial,
                accepting,
            })
    })
}

/// Canonical ultimately periodic words with preperiod length at most
/// `max_prefix` and period length at most `max_period`, deduplicated, in
/// order of (preperiod length, period length, letters).
pub fn up_sweep(alphabet: &Alphabet, max_prefix: usize, max_period: usize) -> Vec<UpWord> {
    let words_of = |len: usize| -> Vec<Vec<usize>> {
        let s = alphabet.len();
        (0..s.pow(len as u32))
            .map(|mut c| {
                let mut w = vec![0; len];
                for slot in w.iter_mut().rev() {
                    *slot = c % s;
                    c /= s;
                }
                w
            })
            .collect()
    };
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for pl in 0..=max_prefix {
        for vl in 1..=max_period {
            for u in words_of(pl) {
                for v in words_of(vl) {
                    let x = UpWord::new(alphabet, u.clone(), v).expect("letters in range");
                    if seen.insert(x.clone()) {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}
