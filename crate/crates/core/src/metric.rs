//! The separating-automaton distance on ultimately periodic words.
//!
//! `δ(x, y) = 2^-n` where `n` is the least number of states of a Büchi
//! automaton accepting exactly one of `x` and `y`. Separators are found by
//! exhaustive enumeration of transition structures: a structure separates
//! `x` from `y` for some choice of initial and accepting sets iff some start
//! state has different recurrent sets on the two words.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::automata::{complement, contains, equivalent, intersection_all, member, reduce, Budget, Nba};
use crate::enumeration::{self, accepts, raw_count, raw_marks, recurrent_states, SmallNba, Structure};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Dyadic, UpWord};

/// Largest `n` accepted by [`ball_language`].
pub const BALL_CAP: usize = 2;

/// Largest number of transition structures a single sweep may visit.
pub const MAX_STRUCTURES: u64 = 1 << 24;

/// The value of `δ`, or an upper bound when no separator was found within
/// the enumeration limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum DistanceResult {
    Exact(Dyadic),
    /// No separator with at most `k_max` states; `δ < 2^-k_max`.
    BoundedAbove(Dyadic),
}

impl DistanceResult {
    pub fn value(self) -> Dyadic {
        match self {
            DistanceResult::Exact(d) | DistanceResult::BoundedAbove(d) => d,
        }
    }

    pub fn exact(self) -> Option<Dyadic> {
        match self {
            DistanceResult::Exact(d) => Some(d),
            DistanceResult::BoundedAbove(_) => None,
        }
    }
}

/// True iff exactly one of `x` and `y` is accepted by `a`.
pub fn separates(a: &Nba, x: &UpWord, y: &UpWord) -> Result<bool> {
    x.alphabet().ensure_same(y.alphabet())?;
    Ok(member(a, x)?.is_some() != member(a, y)?.is_some())
}

fn structure_count(k: usize, sigma: usize) -> Result<u64> {
    if k == 0 || k > enumeration::MAX_STATES || k * k * sigma > 63 {
        return Err(Error::InvalidArgument(format!("cannot enumerate {k}-state automata")));
    }
    let count = Structure::count(k, sigma);
    if count > MAX_STRUCTURES {
        return Err(Error::BudgetExceeded(count.try_into().unwrap_or(usize::MAX)));
    }
    Ok(count)
}

/// A separator built on `t`, if one exists: a single initial state whose
/// recurrent sets differ, and either a state recurrent on one word only or
/// all states as accepting set.
fn separator_on(t: &Structure, x: &UpWord, y: &UpWord) -> Option<SmallNba> {
    let rx = recurrent_states(t, x);
    let ry = recurrent_states(t, y);
    (0..t.states()).find(|&i| rx[i] != ry[i]).map(|i| {
        let diff = rx[i] ^ ry[i];
        let accepting = if rx[i] == 0 || ry[i] == 0 {
            rx[i] | ry[i]
        } else {
            diff & diff.wrapping_neg()
        };
        SmallNba {
            structure: t.clone(),
            initial: 1 << i,
            accepting,
        }
    })
}

/// The first separator with exactly `k` states in enumeration order.
pub fn find_separator(x: &UpWord, y: &UpWord, k: usize) -> Result<Option<SmallNba>> {
    x.alphabet().ensure_same(y.alphabet())?;
    let sigma = x.alphabet().len();
    let count = structure_count(k, sigma)?;
    Ok((0..count)
        .into_par_iter()
        .find_map_first(|code| separator_on(&Structure::from_code(k, sigma, code), x, y)))
}

/// `δ(x, y)` by searching `k = 1, 2, …, k_max` for a `k`-state separator.
pub fn delta(x: &UpWord, y: &UpWord, k_max: usize) -> Result<DistanceResult> {
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be at least 1".into()));
    }
    if x.equals(y)? {
        return Ok(DistanceResult::Exact(Dyadic::Zero));
    }
    for k in 1..=k_max {
        if find_separator(x, y, k)?.is_some() {
            return Ok(DistanceResult::Exact(Dyadic::pow(k as u32)));
        }
    }
    Ok(DistanceResult::BoundedAbove(Dyadic::pow(k_max as u32)))
}

/// One representative per language accepted by an automaton with at most
/// `max_states` states, smallest automata first.
pub fn distinct_languages(alphabet: &Alphabet, max_states: usize) -> Result<Vec<Nba>> {
    let sigma = alphabet.len();
    let sweep = enumeration::up_sweep(alphabet, 2, 3);
    let mut groups: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
    let mut out: Vec<Nba> = Vec::new();
    for k in 1..=max_states {
        structure_count(k, sigma)?;
        for s in enumeration::canonical(k, sigma) {
            let fingerprint: Vec<bool> = sweep
                .iter()
                .map(|x| accepts(&recurrent_states(&s.structure, x), s.initial, s.accepting))
                .collect();
            let a = reduce(&s.to_nba(alphabet));
            let group = groups.entry(fingerprint).or_default();
            let mut fresh = true;
            for &r in group.iter() {
                if equivalent(&out[r], &a)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                group.push(out.len());
                out.push(a);
            }
        }
    }
    Ok(out)
}

/// An automaton for the open ball `{y : δ(x, y) < 2^-n}`: the intersection,
/// over all automata with at most `n` states, of the language or its
/// complement, whichever contains `x`.
pub fn ball_language(x: &UpWord, n: usize) -> Result<Nba> {
    if n == 0 || n > BALL_CAP {
        return Err(Error::InvalidArgument(format!(
            "ball radius exponent must be between 1 and {BALL_CAP}, got {n}"
        )));
    }
    let mut sides = Vec::new();
    for a in distinct_languages(x.alphabet(), n)? {
        let side = if member(&a, x)?.is_some() { a } else { complement(&a)? };
        sides.push(side);
    }
    sides.sort_by_key(|a| (a.states(), a.transition_count()));
    let budget = Budget::default();
    let mut ball = crate::automata::universal_nba(x.alphabet());
    for side in &sides {
        if contains(side, &ball)? {
            continue;
        }
        ball = reduce(&intersection_all(&[&ball, side], &budget)?);
    }
    Ok(ball)
}

/// Outcome of the separator search for one pair `(X_n, X_m)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyPair {
    pub pair: (u32, u32),
    /// Automata examined, all of them with at most `k` states.
    pub checked: u64,
    /// `checked_by_states[j]`: automata examined with `j + 1` states.
    pub checked_by_states: Vec<u64>,
    pub separator_found: bool,
    /// The separator in automaton file format, if any.
    pub separator: Option<String>,
    pub result: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CauchyReport {
    pub k: usize,
    pub pairs: Vec<CauchyPair>,
    pub verified: bool,
}

/// Checks that no automaton with at most `k` states separates `X_n` from
/// `X_m` for each given pair, by visiting every transition structure and
/// every choice of initial and accepting sets.
pub fn cauchy_demo(k: usize, pairs: &[(u32, u32)]) -> Result<CauchyReport> {
    let bin = Alphabet::binary();
    let mut reports = Vec::new();
    for &(n, m) in pairs {
        if !(m > n && n as usize > k) {
            return Err(Error::InvalidArgument(format!(
                "pair ({n}, {m}) must satisfy m > n > k = {k}"
            )));
        }
        let x = UpWord::xn(n)?;
        let y = UpWord::xn(m)?;
        let mut checked_by_states = Vec::new();
        let mut separator = None;
        for j in 1..=k {
            let count = structure_count(j, 2)?;
            let found = (0..count).into_par_iter().find_map_first(|code| {
                let t = Structure::from_code(j, 2, code);
                let rx = recurrent_states(&t, &x);
                let ry = recurrent_states(&t, &y);
                raw_marks(j)
                    .find(|&(i, f)| accepts(&rx, i, f) != accepts(&ry, i, f))
                    .map(|(i, f)| t.to_nba(&bin, i, f))
            });
            checked_by_states.push(raw_count(j, 2));
            if let Some(a) = found {
                separator = Some(a.to_text());
                break;
            }
        }
        let separator_found = separator.is_some();
        reports.push(CauchyPair {
            pair: (n, m),
            checked: checked_by_states.iter().sum(),
            checked_by_states,
            separator_found,
            separator,
            result: if separator_found { "refuted" } else { "verified" },
        });
    }
    let verified = reports.iter().all(|r| !r.separator_found);
    Ok(CauchyReport {
        k,
        pairs: reports,
        verified,
    })
}
