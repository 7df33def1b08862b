//! Alphabets, finite words and ultimately periodic ω-words.
//!
//! An [`UpWord`] is always kept in canonical form: the period is primitive and
//! the preperiod cannot be shortened by rotating the period into it. Two
//! canonical words denote the same ω-word exactly when their fields agree, so
//! the derived `PartialEq` is ω-word equality.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// An ordered finite alphabet with at least two distinct symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Arc<[String]>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidArgument(format!("bad symbol `{s}`")));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet(symbols.into()))
    }

    /// The alphabet `{0, 1}`.
    pub fn binary() -> Self {
        Alphabet(vec!["0".to_string(), "1".to_string()].into())
    }

    /// `Σ × Γ`, with symbols written `a,b` in row-major order.
    pub fn product(left: &Alphabet, right: &Alphabet) -> Result<Self> {
        if right.symbols().iter().any(|s| s.contains(',')) {
            return Err(Error::InvalidArgument(
                "right factor of a product alphabet may not contain ','".into(),
            ));
        }
        let mut symbols = Vec::with_capacity(left.len() * right.len());
        for a in left.symbols() {
            for b in right.symbols() {
                symbols.push(format!("{a},{b}"));
            }
        }
        Alphabet::new(symbols)
    }

    /// Recovers `(Σ, Γ)` when this alphabet is exactly `Σ × Γ` in the layout
    /// produced by [`Alphabet::product`]. Symbols split at their last comma.
    pub fn factors(&self) -> Option<(Alphabet, Alphabet)> {
        let mut lefts: Vec<&str> = Vec::new();
        let mut rights: Vec<&str> = Vec::new();
        let mut pairs = Vec::with_capacity(self.len());
        for s in self.symbols() {
            let (a, b) = s.rsplit_once(',')?;
            if !lefts.contains(&a) {
                lefts.push(a);
            }
            if !rights.contains(&b) {
                rights.push(b);
            }
            pairs.push((a, b));
        }
        if lefts.len() * rights.len() != self.len() {
            return None;
        }
        for (idx, (a, b)) in pairs.iter().enumerate() {
            if lefts[idx / rights.len()] != *a || rights[idx % rights.len()] != *b {
                return None;
            }
        }
        Some((Alphabet::new(lefts).ok()?, Alphabet::new(rights).ok()?))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn symbol(&self, letter: usize) -> &str {
        &self.0[letter]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.iter().position(|s| s == symbol)
    }

    pub fn is_binary(&self) -> bool {
        self.len() == 2 && self.symbol(0) == "0" && self.symbol(1) == "1"
    }

    pub(crate) fn check_letter(&self, letter: usize) -> Result<()> {
        if letter < self.len() {
            Ok(())
        } else {
            Err(Error::LetterOutOfRange {
                letter,
                size: self.len(),
            })
        }
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{self} vs {other}")))
        }
    }

    fn write_letter(&self, f: &mut fmt::Formatter<'_>, letter: usize) -> fmt::Result {
        let s = self.symbol(letter);
        if s.chars().count() == 1 {
            f.write_str(s)
        } else {
            write!(f, "[{s}]")
        }
    }

    /// Splits text into letters: either single characters or `[symbol]` groups.
    fn parse_letters(&self, text: &str) -> Result<Vec<usize>> {
        let mut letters = Vec::new();
        let mut chars = text.chars();
        while let Some(c) = chars.next() {
            let symbol = if c == '[' {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some(']') => break,
                        Some(c) => s.push(c),
                        None => return Err(Error::UnknownSymbol(format!("[{s}"))),
                    }
                }
                s
            } else {
                c.to_string()
            };
            let letter = self
                .index_of(&symbol)
                .ok_or_else(|| Error::UnknownSymbol(symbol.clone()))?;
            letters.push(letter);
        }
        Ok(letters)
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet{:?}", &*self.0)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(" "))
    }
}

/// A finite word over an alphabet, stored as letter indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    letters: Vec<usize>,
}

impl FiniteWord {
    pub fn new(alphabet: &Alphabet, letters: Vec<usize>) -> Result<Self> {
        for &l in &letters {
            alphabet.check_letter(l)?;
        }
        Ok(FiniteWord {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        FiniteWord {
            alphabet: alphabet.clone(),
            letters: Vec::new(),
        }
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let letters = if text == "ε" || text == "eps" {
            Vec::new()
        } else {
            alphabet.parse_letters(text)?
        };
        Ok(FiniteWord {
            alphabet: alphabet.clone(),
            letters,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_prefix_of(&self, other: &FiniteWord) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// Number of occurrences of `letter`.
    pub fn count(&self, letter: usize) -> usize {
        self.letters.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("ε");
        }
        for &l in &self.letters {
            self.alphabet.write_letter(f, l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl Serialize for FiniteWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An ultimately periodic ω-word `u·v^ω` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UpWord {
    alphabet: Alphabet,
    prefix: Vec<usize>,
    period: Vec<usize>,
}

impl UpWord {
    /// Builds the canonical representative of `prefix · period^ω`.
    pub fn new(alphabet: &Alphabet, prefix: Vec<usize>, period: Vec<usize>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        for &l in prefix.iter().chain(&period) {
            alphabet.check_letter(l)?;
        }
        let (prefix, period) = canonical_parts(prefix, period);
        Ok(UpWord {
            alphabet: alphabet.clone(),
            prefix,
            period,
        })
    }

    pub fn from_words(prefix: &FiniteWord, period: &FiniteWord) -> Result<Self> {
        prefix.alphabet.ensure_same(&period.alphabet)?;
        UpWord::new(
            &prefix.alphabet,
            prefix.letters.clone(),
            period.letters.clone(),
        )
    }

    /// Parses `u(v)w`, e.g. `01(10)w` or `(0)w`.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::parse(1, format!("expected `u(v)w`, got `{text}`"));
        let body = text.strip_suffix('w').ok_or_else(bad)?;
        let open = body.find('(').ok_or_else(bad)?;
        let inner = body[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let prefix = alphabet.parse_letters(&body[..open])?;
        let period = alphabet.parse_letters(inner)?;
        UpWord::new(alphabet, prefix, period)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn prefix_letters(&self) -> &[usize] {
        &self.prefix
    }

    pub fn period_letters(&self) -> &[usize] {
        &self.period
    }

    pub fn prefix(&self) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters: self.prefix.clone(),
        }
    }

    pub fn period(&self) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters: self.period.clone(),
        }
    }

    /// The letter at position `i`.
    pub fn letter_at(&self, i: usize) -> usize {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.period[(i - self.prefix.len()) % self.period.len()]
        }
    }

    /// The prefix of length `len`.
    pub fn truncate(&self, len: usize) -> FiniteWord {
        FiniteWord {
            alphabet: self.alphabet.clone(),
            letters: (0..len).map(|i| self.letter_at(i)).collect(),
        }
    }

    /// Number of lasso positions: preperiod plus one period.
    pub fn lasso_len(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Successor of a lasso position.
    pub fn next_position(&self, pos: usize) -> usize {
        if pos + 1 < self.lasso_len() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }

    /// Denotational equality; errors on differing alphabets.
    pub fn equals(&self, other: &UpWord) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet)?;
        Ok(self == other)
    }

    /// True for a binary word with infinitely many 1s.
    pub fn is_in_pinf(&self) -> Result<bool> {
        if !self.alphabet.is_binary() {
            return Err(Error::AlphabetMismatch(format!(
                "expected {{0 1}}, got {}",
                self.alphabet
            )));
        }
        Ok(self.period.contains(&1))
    }

    /// The cantor prefix distance.
    pub fn prefix_distance(&self, other: &UpWord) -> Result<Dyadic> {
        self.alphabet.ensure_same(&other.alphabet)?;
        Ok(match first_difference(self, other) {
            None => Dyadic::Zero,
            Some(r) => Dyadic::pow(r as u32),
        })
    }

    /// The word `0^{n!}·1·0^ω` over `{0,1}`.
    pub fn xn(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("xn needs n >= 1".into()));
        }
        let zeros = (1..=n as usize)
            .try_fold(1usize, |acc, k| acc.checked_mul(k))
            .filter(|&f| f <= 1 << 24)
            .ok_or_else(|| Error::InvalidArgument(format!("{n}! is too large")))?;
        let mut prefix = vec![0; zeros];
        prefix.push(1);
        UpWord::new(&Alphabet::binary(), prefix, vec![0])
    }

    /// Splits a word over `Σ × Γ` into its two coordinates.
    pub fn unzip(&self) -> Result<(UpWord, UpWord)> {
        let (left, right) = self.alphabet.factors().ok_or_else(|| {
            Error::AlphabetMismatch(format!("{} is not a pair alphabet", self.alphabet))
        })?;
        let w = right.len();
        let split = |letters: &[usize], coord: usize| -> Vec<usize> {
            letters
                .iter()
                .map(|&l| if coord == 0 { l / w } else { l % w })
                .collect()
        };
        Ok((
            UpWord::new(&left, split(&self.prefix, 0), split(&self.period, 0))?,
            UpWord::new(&right, split(&self.prefix, 1), split(&self.period, 1))?,
        ))
    }

    /// Pairs two words into one word over `Σ × Γ`.
    pub fn zip(left: &UpWord, right: &UpWord) -> Result<UpWord> {
        let alphabet = Alphabet::product(&left.alphabet, &right.alphabet)?;
        let pre = left.prefix.len().max(right.prefix.len());
        let per = lcm(left.period.len(), right.period.len());
        let w = right.alphabet.len();
        let letter = |i: usize| left.letter_at(i) * w + right.letter_at(i);
        UpWord::new(
            &alphabet,
            (0..pre).map(letter).collect(),
            (pre..pre + per).map(letter).collect(),
        )
    }
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.prefix {
            self.alphabet.write_letter(f, l)?;
        }
        f.write_str("(")?;
        for &l in &self.period {
            self.alphabet.write_letter(f, l)?;
        }
        f.write_str(")w")
    }
}

impl fmt::Debug for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for UpWord {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn canonical_parts(mut prefix: Vec<usize>, period: Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let root = primitive_root_len(&period);
    let mut period: Vec<usize> = period[..root].to_vec();
    while let (Some(&a), Some(&b)) = (prefix.last(), period.last()) {
        if a != b {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    (prefix, period)
}

fn primitive_root_len(v: &[usize]) -> usize {
    let n = v.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| v[i] == v[i - p]))
        .unwrap_or(n)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn first_difference(x: &UpWord, y: &UpWord) -> Option<usize> {
    let bound = x.prefix.len().max(y.prefix.len()) + lcm(x.period.len(), y.period.len());
    (0..bound).find(|&i| x.letter_at(i) != y.letter_at(i))
}

/// A value in `{0} ∪ {2^-n : n ≥ 0}`, stored by exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Dyadic {
    Zero,
    /// `2^-n`.
    Pow(u32),
}

impl Dyadic {
    pub fn pow(n: u32) -> Self {
        Dyadic::Pow(n)
    }

    pub fn exponent(self) -> Option<u32> {
        match self {
            Dyadic::Zero => None,
            Dyadic::Pow(n) => Some(n),
        }
    }

    /// `self <= a + b`, computed exactly.
    pub fn le_sum(self, a: Dyadic, b: Dyadic) -> bool {
        let Some(n) = self.exponent() else {
            return true;
        };
        // Below self, the largest dyadic is half of it, so the sum reaches self
        // only when one term already does or both are exactly half.
        a >= self || b >= self || (a == Dyadic::Pow(n + 1) && b == a)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dyadic::Zero, Dyadic::Zero) => Ordering::Equal,
            (Dyadic::Zero, _) => Ordering::Less,
            (_, Dyadic::Zero) => Ordering::Greater,
            (Dyadic::Pow(a), Dyadic::Pow(b)) => b.cmp(a),
        }
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dyadic::Zero => f.write_str("0"),
            Dyadic::Pow(0) => f.write_str("1"),
            Dyadic::Pow(n) if *n < 64 => write!(f, "1/{}", 1u64 << n),
            Dyadic::Pow(n) => write!(f, "1/2^{n}"),
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
