//! Alphabets, strings, tiers and actions.
//!
//! Strings are sequences of opaque tokens rather than characters, so a
//! single symbol may be spelled with several characters (`a:`, `q1|V`).
//! The left word boundary is a reserved token that no user alphabet may
//! contain; it only ever appears as padding produced by [`ksuffix`].

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Spelling of the left word boundary.
pub const BOUNDARY_TOKEN: &str = "LB";

/// An atomic alphabet token.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(token: &str) -> Result<Self> {
        if token.is_empty() {
            return Err(Error::InvalidToken(token.into(), "empty token"));
        }
        if token.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(token.into(), "whitespace in token"));
        }
        if token == BOUNDARY_TOKEN {
            return Err(Error::InvalidToken(token.into(), "reserved boundary token"));
        }
        Ok(Symbol(token.into()))
    }

    /// The left boundary marker. Only padding code should construct it.
    pub fn boundary() -> Self {
        Symbol(BOUNDARY_TOKEN.into())
    }

    pub fn is_boundary(&self) -> bool {
        &*self.0 == BOUNDARY_TOKEN
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite string of symbols. The empty string is λ.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Str(Vec<Symbol>);

impl Str {
    pub fn lambda() -> Self {
        Str(Vec::new())
    }

    pub fn from_symbols(symbols: Vec<Symbol>) -> Self {
        Str(symbols)
    }

    /// Parses whitespace-separated tokens. The empty text is λ.
    pub fn parse(text: &str) -> Result<Self> {
        text.split_whitespace().map(Symbol::new).collect::<Result<Vec<_>>>().map(Str)
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Str) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Str) -> Str {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn starts_with(&self, prefix: &Str) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Removes `prefix` from the front, if it is one.
    pub fn strip_prefix(&self, prefix: &Str) -> Option<Str> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|rest| Str(rest.to_vec()))
    }

    /// Tokens joined by `sep`, for formats that cannot use spaces.
    pub fn join(&self, sep: &str) -> String {
        let parts: Vec<&str> = self.0.iter().map(Symbol::as_str).collect();
        parts.join(sep)
    }
}

impl FromIterator<Symbol> for Str {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Str(iter.into_iter().collect())
    }
}

impl std::str::FromStr for Str {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Str::parse(text)
    }
}

impl fmt::Display for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.join(" "))
    }
}

impl fmt::Debug for Str {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("λ")
        } else {
            write!(f, "\"{}\"", self.join(" "))
        }
    }
}

/// A finite set of symbols, kept sorted so that symbol indices are stable.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<Symbol>);

impl Alphabet {
    pub fn new<I: IntoIterator<Item = Symbol>>(symbols: I) -> Self {
        let set: BTreeSet<Symbol> = symbols.into_iter().collect();
        Alphabet(set.into_iter().collect())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Alphabet::new(Str::parse(text)?.into_symbols()))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.0.binary_search(s).ok()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index_of(s).is_some()
    }

    pub fn union(&self, other: &Alphabet) -> Alphabet {
        Alphabet::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    /// Maps every symbol of `x` to its index, failing on the first stranger.
    pub fn indices(&self, x: &Str) -> Result<Vec<usize>> {
        x.symbols().iter().map(|s| self.index_of(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))).collect()
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A tuple component that is either the left boundary or an item.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Padded<T> {
    Boundary,
    Item(T),
}

impl<T: fmt::Display> fmt::Display for Padded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Padded::Boundary => f.write_str(BOUNDARY_TOKEN),
            Padded::Item(t) => t.fmt(f),
        }
    }
}

impl<T: fmt::Display> fmt::Debug for Padded<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The last `k` items of `LB^k · items`.
pub fn padded_suffix<T: Clone>(items: &[Padded<T>], k: usize) -> Vec<Padded<T>> {
    let start = items.len().saturating_sub(k);
    let tail = &items[start..];
    let mut out = vec![Padded::Boundary; k - tail.len()];
    out.extend_from_slice(tail);
    out
}

/// Wraps every item of `items` and takes the padded `k`-suffix.
pub fn suffix_of<T: Clone>(items: &[T], k: usize) -> Vec<Padded<T>> {
    let start = items.len().saturating_sub(k);
    let mut out = vec![Padded::Boundary; k - (items.len() - start)];
    out.extend(items[start..].iter().cloned().map(Padded::Item));
    out
}

/// The last `k` symbols of `LB^k · x`.
pub fn ksuffix(x: &Str, k: usize) -> Str {
    suffix_of(x.symbols(), k)
        .into_iter()
        .map(|p| match p {
            Padded::Boundary => Symbol::boundary(),
            Padded::Item(s) => s,
        })
        .collect()
}

/// Longest common prefix of a non-empty collection of sequences.
pub fn lcp_slices<'a, T, I>(items: I) -> Option<Vec<T>>
where
    T: PartialEq + Clone + 'a,
    I: IntoIterator<Item = &'a [T]>,
{
    let mut iter = items.into_iter();
    let first = iter.next()?;
    let mut len = first.len();
    for item in iter {
        len = first[..len].iter().zip(item).take_while(|(a, b)| a == b).count();
        if len == 0 {
            break;
        }
    }
    Some(first[..len].to_vec())
}

/// Longest common prefix of a non-empty set of strings.
pub fn lcp<'a, I: IntoIterator<Item = &'a Str>>(strings: I) -> Result<Str> {
    lcp_slices(strings.into_iter().map(Str::symbols)).map(Str).ok_or(Error::EmptyLcpSet)
}

/// One step of a transducer: a single input symbol and the output emitted for it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Action {
    pub input: Symbol,
    pub output: Str,
}

impl Action {
    pub fn new(input: Symbol, output: Str) -> Self {
        Action { input, output }
    }

    /// Parses `in:out1.out2`; `in:` is an action with empty output.
    pub fn parse(token: &str) -> Result<Self> {
        let (input, output) =
            token.split_once(':').ok_or(Error::InvalidToken(token.into(), "action token needs `:`"))?;
        let input = Symbol::new(input)?;
        let output = if output.is_empty() {
            Str::lambda()
        } else {
            output.split('.').map(Symbol::new).collect::<Result<Str>>()?
        };
        Ok(Action { input, output })
    }
}

impl std::str::FromStr for Action {
    type Err = Error;

    fn from_str(token: &str) -> Result<Self> {
        Action::parse(token)
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.input, self.output.join("."))
    }
}

impl fmt::Debug for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A string of actions, e.g. a computation history.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionStr(Vec<Action>);

impl ActionStr {
    pub fn new(actions: Vec<Action>) -> Self {
        ActionStr(actions)
    }

    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: Action) {
        self.0.push(a);
    }

    pub fn input_projection(&self) -> Str {
        self.0.iter().map(|a| a.input.clone()).collect()
    }

    pub fn output_projection(&self) -> Str {
        let mut out = Str::lambda();
        for a in &self.0 {
            out.extend_from(&a.output);
        }
        out
    }
}

impl fmt::Display for ActionStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "({a})")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ActionStr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε-run")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

/// An erasing homomorphism that keeps exactly the on-tier items.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tier<T: Ord> {
    alphabet: BTreeSet<T>,
    on: BTreeSet<T>,
}

impl<T: Ord + Clone + fmt::Display> Tier<T> {
    pub fn new<A, O>(alphabet: A, on: O) -> Result<Self>
    where
        A: IntoIterator<Item = T>,
        O: IntoIterator<Item = T>,
    {
        let alphabet: BTreeSet<T> = alphabet.into_iter().collect();
        let on: BTreeSet<T> = on.into_iter().collect();
        if let Some(stray) = on.iter().find(|t| !alphabet.contains(t)) {
            return Err(Error::UnknownSymbol(stray.to_string()));
        }
        Ok(Tier { alphabet, on })
    }

    pub fn full<A: IntoIterator<Item = T>>(alphabet: A) -> Self {
        let alphabet: BTreeSet<T> = alphabet.into_iter().collect();
        Tier { on: alphabet.clone(), alphabet }
    }

    pub fn empty<A: IntoIterator<Item = T>>(alphabet: A) -> Self {
        Tier { alphabet: alphabet.into_iter().collect(), on: BTreeSet::new() }
    }

    /// Tier whose on-set is given by the bits of `mask` over the sorted alphabet.
    pub fn from_mask<A: IntoIterator<Item = T>>(alphabet: A, mask: u64) -> Self {
        let alphabet: BTreeSet<T> = alphabet.into_iter().collect();
        let on = alphabet.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, t)| t.clone()).collect();
        Tier { alphabet, on }
    }

    pub fn mask(&self) -> u64 {
        self.alphabet.iter().enumerate().filter(|(_, t)| self.on.contains(t)).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn alphabet(&self) -> &BTreeSet<T> {
        &self.alphabet
    }

    pub fn on_tier(&self) -> &BTreeSet<T> {
        &self.on
    }

    /// `Some(true)` if on, `Some(false)` if off, `None` if outside the alphabet.
    pub fn is_on(&self, t: &T) -> Option<bool> {
        if self.on.contains(t) {
            Some(true)
        } else if self.alphabet.contains(t) {
            Some(false)
        } else {
            None
        }
    }

    pub fn keeps(&self, t: &T) -> Result<bool> {
        self.is_on(t).ok_or_else(|| Error::UnknownSymbol(t.to_string()))
    }

    pub fn apply(&self, items: &[T]) -> Result<Vec<T>> {
        let mut out = Vec::new();
        for t in items {
            if self.keeps(t)? {
                out.push(t.clone());
            }
        }
        Ok(out)
    }

    /// Applies the tier to a padded tuple; boundaries always survive.
    pub fn apply_padded(&self, items: &[Padded<T>]) -> Result<Vec<Padded<T>>> {
        let mut out = Vec::new();
        for p in items {
            match p {
                Padded::Boundary => out.push(Padded::Boundary),
                Padded::Item(t) => {
                    if self.keeps(t)? {
                        out.push(p.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    /// True if every member of `needed` is in the tier's alphabet.
    pub fn covers<'a, I: IntoIterator<Item = &'a T>>(&self, needed: I) -> Result<()>
    where
        T: 'a,
    {
        match needed.into_iter().find(|t| !self.alphabet.contains(t)) {
            Some(missing) => Err(Error::AlphabetMismatch(format!("tier alphabet lacks `{missing}`"))),
            None => Ok(()),
        }
    }
}

impl Tier<Symbol> {
    /// Applies the tier to a string. Boundary padding passes through untouched.
    pub fn apply_str(&self, x: &Str) -> Result<Str> {
        let mut out = Str::lambda();
        for s in x.symbols() {
            if s.is_boundary() || self.keeps(s)? {
                out.push(s.clone());
            }
        }
        Ok(out)
    }
}

impl<T: Ord + fmt::Display> fmt::Display for Tier<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, t) in self.on.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

impl<T: Ord + fmt::Display> fmt::Debug for Tier<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tier{self}")
    }
}

/// Every string over `alphabet` of length at most `max_len`, in shortlex order.
pub fn all_strings(alphabet: &[Symbol], max_len: usize) -> Vec<Str> {
    let mut out = vec![Str::lambda()];
    let mut layer = vec![Str::lambda()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for x in &layer {
            for s in alphabet {
                let mut y = x.clone();
                y.push(s.clone());
                next.push(y);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
