//! Containment, equivalence and closedness in the Cantor topology.

use super::determinize::{determinize, nba_included_in_dpa};
use super::{is_empty, reduce, Budget, Nba};
use crate::error::Result;

/// True iff `L(b) ⊆ L(a)`, decided by emptiness of `b ∩ ¬a` where `¬a` is
/// the determinized `a` with flipped parity acceptance.
///
/// Fails with [`crate::Error::BudgetExceeded`] when the determinized
/// automaton or the product outgrows the default budget; callers should
/// treat that as "unknown" rather than as a negative answer.
pub fn contains(a: &Nba, b: &Nba) -> Result<bool> {
    contains_with(a, b, &Budget::default())
}

/// [`contains`] under an explicit budget.
pub fn contains_with(a: &Nba, b: &Nba, budget: &Budget) -> Result<bool> {
    a.alphabet().ensure_same(b.alphabet())?;
    if is_empty(b) {
        return Ok(true);
    }
    let d = determinize(&reduce(a), budget)?;
    nba_included_in_dpa(&reduce(b), &d, budget)
}

/// True iff both automata accept the same language.
pub fn equivalent(a: &Nba, b: &Nba) -> Result<bool> {
    equivalent_with(a, b, &Budget::default())
}

/// [`equivalent`] under an explicit budget.
pub fn equivalent_with(a: &Nba, b: &Nba, budget: &Budget) -> Result<bool> {
    Ok(contains_with(a, b, budget)? && contains_with(b, a, budget)?)
}

/// An automaton for the topological closure of `L(a)`: the words all of
/// whose prefixes extend to a word of `L(a)`. Obtained by trimming and
/// making every remaining state accepting.
pub fn safety_closure(a: &Nba) -> Nba {
    let mut t = a.trim();
    if is_empty(&t) {
        return t;
    }
    for q in 0..t.states() {
        t.set_accepting(q, true).expect("in range");
    }
    t
}

/// True iff `L(a)` is closed in the Cantor topology, i.e. equals its closure.
pub fn is_cantor_closed(a: &Nba) -> Result<bool> {
    is_cantor_closed_with(a, &Budget::default())
}

/// [`is_cantor_closed`] under an explicit budget.
pub fn is_cantor_closed_with(a: &Nba, budget: &Budget) -> Result<bool> {
    contains_with(a, &safety_closure(a), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{clopen_nba, intersection, pinf_nba, singleton_nba};
    use crate::words::{Alphabet, FiniteWord, UpWord};

    fn fw(text: &str) -> FiniteWord {
        FiniteWord::parse(&Alphabet::binary(), text).unwrap()
    }

    fn up(text: &str) -> UpWord {
        UpWord::parse(&Alphabet::binary(), text).unwrap()
    }

    #[test]
    fn containment_examples() {
        let zero = singleton_nba(&up("(0)w"));
        assert!(contains(&clopen_nba(&fw("0")), &zero).unwrap());
        assert!(!contains(&zero, &clopen_nba(&fw("0"))).unwrap());
        let everything = clopen_nba(&FiniteWord::empty(&Alphabet::binary()));
        let p = intersection(&pinf_nba(), &everything).unwrap();
        assert!(equivalent(&pinf_nba(), &p).unwrap());
    }

    #[test]
    fn closedness_examples() {
        assert!(is_cantor_closed(&singleton_nba(&up("01(001)w"))).unwrap());
        assert!(is_cantor_closed(&clopen_nba(&fw("101"))).unwrap());
        assert!(!is_cantor_closed(&pinf_nba()).unwrap());
    }

    #[test]
    fn closure_of_pinf_is_everything() {
        let c = safety_closure(&pinf_nba());
        let everything = clopen_nba(&FiniteWord::empty(&Alphabet::binary()));
        assert!(equivalent(&c, &everything).unwrap());
    }
}
