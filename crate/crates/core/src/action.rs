//! Invertible maps on periodic tapes, generator tables and group words.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::{Alphabet, Symbol};
use crate::code::Automorphism;
use crate::config::PeriodicConfig;
use crate::error::{Error, Result};

/// A map acting on every `Σ^{Z_n}` at once.
pub trait TapeMap: Send + Sync {
    fn alphabet(&self) -> &Alphabet;

    /// Image of a cyclic tape given by its cells; the result has the same length.
    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol>;

    fn apply(&self, x: &PeriodicConfig) -> PeriodicConfig {
        assert!(self.alphabet().same(x.alphabet()), "alphabet mismatch");
        PeriodicConfig::from_raw(self.alphabet(), self.apply_cells(x.cells()))
    }
}

/// Adapter turning a closure into a [`TapeMap`].
pub struct FnMap<F> {
    alphabet: Alphabet,
    f: F,
}

impl<F> FnMap<F>
where
    F: Fn(&[Symbol]) -> Vec<Symbol> + Send + Sync,
{
    pub fn new(alphabet: &Alphabet, f: F) -> Self {
        Self { alphabet: alphabet.clone(), f }
    }
}

impl<F> TapeMap for FnMap<F>
where
    F: Fn(&[Symbol]) -> Vec<Symbol> + Send + Sync,
{
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        (self.f)(cells)
    }
}

/// A named group element given by a map and its inverse.
#[derive(Clone)]
pub struct Generator {
    pub name: String,
    pub forward: Arc<dyn TapeMap>,
    pub backward: Arc<dyn TapeMap>,
}

impl Generator {
    pub fn new(name: impl Into<String>, forward: Arc<dyn TapeMap>, backward: Arc<dyn TapeMap>) -> Self {
        Self { name: name.into(), forward, backward }
    }

    /// A self-inverse element.
    pub fn involution(name: impl Into<String>, map: Arc<dyn TapeMap>) -> Self {
        Self { name: name.into(), forward: map.clone(), backward: map }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.forward.alphabet()
    }

    pub fn inverse(&self, name: impl Into<String>) -> Self {
        Self { name: name.into(), forward: self.backward.clone(), backward: self.forward.clone() }
    }

    /// `self^e` applied to cells.
    pub fn apply_pow(&self, cells: &[Symbol], e: i64) -> Vec<Symbol> {
        let map = if e < 0 { &self.backward } else { &self.forward };
        let mut cur = cells.to_vec();
        for _ in 0..e.unsigned_abs() {
            cur = map.apply_cells(&cur);
        }
        cur
    }
}

impl From<&Automorphism> for Generator {
    fn from(a: &Automorphism) -> Self {
        Self {
            name: a.name.clone(),
            forward: Arc::new(a.forward.clone()),
            backward: Arc::new(a.backward.clone()),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.name)
    }
}

/// Named generators over a shared alphabet, in declaration order.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    alphabet: Alphabet,
    gens: Vec<Generator>,
    index: BTreeMap<String, usize>,
}

impl GeneratorTable {
    pub fn new(alphabet: &Alphabet) -> Self {
        Self { alphabet: alphabet.clone(), gens: Vec::new(), index: BTreeMap::new() }
    }

    pub fn with(mut self, g: Generator) -> Result<Self> {
        self.insert(g)?;
        Ok(self)
    }

    pub fn insert(&mut self, g: Generator) -> Result<()> {
        if !g.alphabet().same(&self.alphabet) {
            return Err(Error::AlphabetMismatch(format!("generator {}", g.name)));
        }
        if !is_identifier(&g.name) {
            return Err(Error::InvalidArgument(format!("bad generator name {:?}", g.name)));
        }
        if self.index.contains_key(&g.name) {
            return Err(Error::InvalidArgument(format!("duplicate generator {}", g.name)));
        }
        self.index.insert(g.name.clone(), self.gens.len());
        self.gens.push(g);
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn get(&self, name: &str) -> Result<&Generator> {
        self.index
            .get(name)
            .map(|&i| &self.gens[i])
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.gens.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        GroupWord::parse(text, &self.names())
    }

    /// Applies a word, rightmost letter first.
    pub fn apply_cells(&self, word: &GroupWord, cells: &[Symbol]) -> Result<Vec<Symbol>> {
        let mut cur = cells.to_vec();
        for (name, e) in word.letters().iter().rev() {
            cur = self.get(name)?.apply_pow(&cur, *e);
        }
        Ok(cur)
    }

    pub fn apply(&self, word: &GroupWord, x: &PeriodicConfig) -> Result<PeriodicConfig> {
        if !self.alphabet.same(x.alphabet()) {
            return Err(Error::AlphabetMismatch("input tape".into()));
        }
        Ok(PeriodicConfig::from_raw(&self.alphabet, self.apply_cells(word, x.cells())?))
    }

    /// Every intermediate tape, starting with `x`, one row per letter applied.
    pub fn trajectory(&self, word: &GroupWord, x: &PeriodicConfig) -> Result<Vec<PeriodicConfig>> {
        let mut rows = vec![x.clone()];
        for (name, e) in word.letters().iter().rev() {
            let g = self.get(name)?;
            for _ in 0..e.unsigned_abs() {
                let last = rows.last().unwrap();
                rows.push(PeriodicConfig::from_raw(
                    &self.alphabet,
                    g.apply_pow(last.cells(), e.signum()),
                ));
            }
        }
        Ok(rows)
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// All freely reduced words of length at most `max_len` over `names` and their inverses,
/// shortest first.
pub fn reduced_words(names: &[&str], max_len: usize) -> Vec<GroupWord> {
    let letters: Vec<(&str, i64)> = names.iter().flat_map(|&n| [(n, 1), (n, -1)]).collect();
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    let mut out = vec![GroupWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for (i, &(n, e)) in letters.iter().enumerate() {
                if w.last().is_some_and(|&j| letters[j] == (n, -e)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| {
            GroupWord::from_letters(v.iter().map(|&i| (letters[i].0.to_string(), letters[i].1)))
        }));
        layer = next;
    }
    out
}

/// A product of generator powers, written left to right and acting right to left.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupWord {
    letters: Vec<(String, i64)>,
}

impl GroupWord {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Merges adjacent equal letters and drops zero exponents.
    pub fn from_letters(letters: impl IntoIterator<Item = (String, i64)>) -> Self {
        let mut out: Vec<(String, i64)> = Vec::new();
        for (name, e) in letters {
            if let Some(last) = out.last_mut() {
                if last.0 == name {
                    last.1 += e;
                    if last.1 == 0 {
                        out.pop();
                    }
                    continue;
                }
            }
            if e != 0 {
                out.push((name, e));
            }
        }
        Self { letters: out }
    }

    pub fn letter(name: &str, e: i64) -> Self {
        Self::from_letters([(name.to_string(), e)])
    }

    pub fn letters(&self) -> &[(String, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Unit steps `(name, ±1)` in written order; the last one acts first.
    pub fn steps(&self) -> impl Iterator<Item = (&str, i64)> + '_ {
        self.letters
            .iter()
            .flat_map(|(n, e)| std::iter::repeat((n.as_str(), e.signum())).take(e.unsigned_abs() as usize))
    }

    /// Sum of absolute exponents.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        Self::from_letters(self.letters.iter().chain(&other.letters).cloned())
    }

    pub fn inverse(&self) -> GroupWord {
        Self::from_letters(self.letters.iter().rev().map(|(n, e)| (n.clone(), -e)))
    }

    pub fn pow(&self, k: i64) -> GroupWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut out = GroupWord::empty();
        for _ in 0..k.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// `b^{-1} a b`.
    pub fn conjugate(a: &GroupWord, b: &GroupWord) -> GroupWord {
        b.inverse().concat(a).concat(b)
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(a: &GroupWord, b: &GroupWord) -> GroupWord {
        a.inverse().concat(&b.inverse()).concat(a).concat(b)
    }

    /// Parses words such as `(FL)^3 ULUFRD^4LFR`, `g3^h`, `[a, b^-1]` or `x^-2 y`.
    ///
    /// Identifiers not in `names` are split greedily into the longest known
    /// names. `a^b` with an identifier exponent is conjugation `b^-1 a b`;
    /// `[a,b]` is `a^-1 b^-1 a b`. `*`, `·` and whitespace separate factors.
    pub fn parse(text: &str, names: &[&str]) -> Result<GroupWord> {
        let mut p = WordParser { chars: text.chars().collect(), pos: 0, names };
        let w = p.product()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(w)
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (i, (name, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupWord({self})")
    }
}

struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [&'a str],
}

impl WordParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in word", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '·') {
            self.pos += 1;
        }
    }

    fn product(&mut self) -> Result<GroupWord> {
        let mut w = GroupWord::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(')') | Some(']') | Some(',') => return Ok(w),
                _ => {
                    let f = self.factor()?;
                    w = w.concat(&f);
                }
            }
        }
    }

    /// Atom with an optional exponent. For split identifiers only the last
    /// name takes the exponent, as in `RD^4`.
    fn factor(&mut self) -> Result<GroupWord> {
        let (prefix, atom) = self.atom()?;
        self.skip_inline_ws();
        let atom = if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_inline_ws();
            match self.peek() {
                Some(c) if c == '-' || c.is_ascii_digit() => atom.pow(self.integer()?),
                Some('(') | Some('[') => {
                    let (pre, conj) = self.atom()?;
                    GroupWord::conjugate(&atom, &pre.concat(&conj))
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    // exponent identifiers are whole names, never split
                    let id = self.identifier();
                    if !self.names.contains(&id.as_str()) {
                        return Err(Error::UnknownGenerator(id));
                    }
                    GroupWord::conjugate(&atom, &GroupWord::letter(&id, 1))
                }
                _ => return Err(self.error("bad exponent")),
            }
        } else {
            atom
        };
        Ok(prefix.concat(&atom))
    }

    fn skip_inline_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c == ' ') {
            self.pos += 1;
        }
    }

    fn integer(&mut self) -> Result<i64> {
        let start = self.pos;
        if self.peek() == Some('-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn identifier(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    /// Returns `(prefix, last)` so exponents bind to the last split name.
    fn atom(&mut self) -> Result<(GroupWord, GroupWord)> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let w = self.product()?;
                self.expect(')')?;
                Ok((GroupWord::empty(), w))
            }
            Some('[') => {
                self.pos += 1;
                let a = self.product()?;
                self.expect(',')?;
                let b = self.product()?;
                self.expect(']')?;
                Ok((GroupWord::empty(), GroupWord::commutator(&a, &b)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let id = self.identifier();
                let parts = split_identifier(&id, self.names)
                    .ok_or_else(|| Error::UnknownGenerator(id.clone()))?;
                let (last, rest) = parts.split_last().unwrap();
                let prefix = GroupWord::from_letters(rest.iter().map(|n| (n.to_string(), 1)));
                Ok((prefix, GroupWord::letter(last, 1)))
            }
            _ => Err(self.error("expected generator, '(' or '['")),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected {c:?}")))
        }
    }
}

fn split_identifier<'a>(id: &str, names: &[&'a str]) -> Option<Vec<&'a str>> {
    if let Some(&n) = names.iter().find(|&&n| n == id) {
        return Some(vec![n]);
    }
    let mut out = Vec::new();
    let mut rest = id;
    while !rest.is_empty() {
        let n = names
            .iter()
            .filter(|n| rest.starts_with(**n))
            .max_by_key(|n| n.len())?;
        out.push(*n);
        rest = &rest[n.len()..];
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NAMES: &[&str] = &["L", "R", "F", "U", "D", "g1", "g2", "g3", "h"];

    fn w(s: &str) -> GroupWord {
        GroupWord::parse(s, NAMES).unwrap()
    }

    #[test]
    fn parses_figure_word() {
        let word = w("(FL)^3 · ULUFRD^4LFR");
        assert_eq!(word.to_string(), "F L F L F L U L U F R D^4 L F R");
        assert_eq!(word.length(), 18);
    }

    #[test]
    fn conjugation_and_commutator() {
        assert_eq!(w("g3^g1"), w("g1^-1 g3 g1"));
        assert_eq!(w("[g1,g2]"), w("g1^-1 g2^-1 g1 g2"));
        assert_eq!(w("g2^(g1^2)"), w("g1^-2 g2 g1^2"));
        assert_eq!(w("g1 g1^-1"), GroupWord::empty());
        assert!(w("").is_empty());
    }

    #[test]
    fn unknown_generator() {
        assert!(matches!(GroupWord::parse("Q", NAMES), Err(Error::UnknownGenerator(_))));
        assert!(matches!(GroupWord::parse("LQ", NAMES), Err(Error::UnknownGenerator(_))));
        assert!(GroupWord::parse("(L", NAMES).is_err());
    }

    #[test]
    fn acts_rightmost_first() {
        let a = Alphabet::numeric(3).unwrap();
        let add = crate::code::SlidingBlockCode::cellwise(&a, |s| (s + 1) % 3);
        let sub = crate::code::SlidingBlockCode::cellwise(&a, |s| (s + 2) % 3);
        let dbl = crate::code::SlidingBlockCode::cellwise(&a, |s| (2 * s) % 3);
        let table = GeneratorTable::new(&a)
            .with(Generator::new("A", Arc::new(add), Arc::new(sub)))
            .unwrap()
            .with(Generator::involution("M", Arc::new(dbl)))
            .unwrap();
        let x = PeriodicConfig::new(&a, vec![1]).unwrap();
        // M A: first add (1 -> 2), then double (2 -> 1)
        assert_eq!(table.apply(&table.parse_word("MA").unwrap(), &x).unwrap().cells(), &[1]);
        // A M: first double (1 -> 2), then add (2 -> 0)
        assert_eq!(table.apply(&table.parse_word("AM").unwrap(), &x).unwrap().cells(), &[0]);
        let rows = table.trajectory(&table.parse_word("A^2 M").unwrap(), &x).unwrap();
        assert_eq!(rows.len(), 4);
    }
}
