//! Run annotation: every ω-regular language is the projection of a closed
//! ω-regular set of pairs `(σ, α)` with `α` having infinitely many 1s.
//!
//! The lifted automaton reads `(a, ε)` where `ε = 1` exactly when the
//! transition leaves an accepting state, so the second coordinate of an
//! accepted pair is the characteristic sequence of accepting visits along a
//! run.

use crate::automata::{find_up_word, intersection_all, member, product, singleton_nba, universal_nba, Budget, Nba};
use crate::error::{Error, Result};
use crate::words::{Alphabet, UpWord};

/// A base automaton together with its annotated version over `Σ × {0, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedNba {
    pub base: Nba,
    /// Same states, initial and accepting sets as `base`.
    pub lifted: Nba,
}

/// Builds `A'` with transitions `(p, (a, ε), q)` for `(p, a, q)` in `A` and
/// `ε = 1 ⟺ p` accepting.
pub fn lift(a: &Nba) -> LiftedNba {
    let bin = Alphabet::binary();
    let alphabet = Alphabet::product(a.alphabet(), &bin).expect("binary symbols contain no comma");
    let mut lifted = Nba::new(&alphabet, a.states()).expect("nonzero states");
    for &q in a.initial() {
        lifted.add_initial(q).expect("in range");
    }
    for q in a.accepting_states() {
        lifted.set_accepting(q, true).expect("in range");
    }
    for (p, l, q) in a.transitions() {
        let flag = usize::from(a.is_accepting(p));
        lifted.add_transition(p, 2 * l + flag, q).expect("in range");
    }
    LiftedNba {
        base: a.clone(),
        lifted,
    }
}

/// An `α` with `(x, α)` accepted by `l.lifted`. `α` has infinitely many 1s.
pub fn lift_witness(l: &LiftedNba, x: &UpWord) -> Result<UpWord> {
    if member(&l.base, x)?.is_none() {
        return Err(Error::NotAccepted(x.to_string()));
    }
    lift_witness_within(l, x, None)
}

/// An `α` with `(x, α)` accepted by `l.lifted` and by `region`, an automaton
/// over the same pair alphabet. Fails with [`Error::NotAccepted`] when no
/// such `α` exists.
pub fn lift_witness_within(l: &LiftedNba, x: &UpWord, region: Option<&Nba>) -> Result<UpWord> {
    l.base.alphabet().ensure_same(x.alphabet())?;
    let column = product(&singleton_nba(x), &universal_nba(&Alphabet::binary()))?;
    let mut parts = vec![&column, &l.lifted];
    if let Some(r) = region {
        r.alphabet().ensure_same(l.lifted.alphabet())?;
        parts.push(r);
    }
    let pairs = intersection_all(&parts, &Budget::default())?;
    let word = find_up_word(&pairs).map_err(|e| match e {
        Error::EmptyLanguage => Error::NotAccepted(x.to_string()),
        e => e,
    })?;
    Ok(word.unzip()?.1)
}
