//! Finite alphabets with a designated zero symbol, optionally built as a
//! product of track alphabets.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Index of a symbol inside its alphabet.
pub type Symbol = u32;

#[derive(PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    zero: Symbol,
    tracks: Option<Vec<Alphabet>>,
}

/// A finite symbol set with a zero. Cheap to clone.
///
/// Product alphabets order their symbols lexicographically by track tuple,
/// first track most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet(Arc<Inner>);

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, zero: Symbol) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() < 2 {
            return Err(Error::InvalidAlphabet(format!(
                "need at least 2 symbols, got {}",
                names.len()
            )));
        }
        if zero as usize >= names.len() {
            return Err(Error::InvalidAlphabet(format!("zero index {zero} out of range")));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::InvalidAlphabet(format!("duplicate symbol name {a:?}")));
            }
        }
        Ok(Alphabet(Arc::new(Inner { names, zero, tracks: None })))
    }

    /// Symbols `0..size` named by their digits, zero at `0`.
    pub fn numeric(size: usize) -> Result<Self> {
        Self::new((0..size).map(|i| i.to_string()), 0)
    }

    /// Product alphabet; the zero is the tuple of track zeros.
    pub fn product(tracks: Vec<Alphabet>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::InvalidAlphabet("product of zero tracks".into()));
        }
        let size: usize = tracks.iter().map(Alphabet::size).product();
        let mut names = Vec::with_capacity(size);
        let mut tuple = vec![0 as Symbol; tracks.len()];
        for idx in 0..size {
            let mut rem = idx;
            for (j, t) in tracks.iter().enumerate().rev() {
                tuple[j] = (rem % t.size()) as Symbol;
                rem /= t.size();
            }
            let parts: Vec<&str> = tuple
                .iter()
                .zip(&tracks)
                .map(|(&s, t)| t.name(s))
                .collect();
            names.push(format!("({})", parts.join(",")));
        }
        let zero_tuple: Vec<Symbol> = tracks.iter().map(Alphabet::zero).collect();
        let zero = encode_tuple(&tracks, &zero_tuple);
        Ok(Alphabet(Arc::new(Inner { names, zero, tracks: Some(tracks) })))
    }

    pub fn size(&self) -> usize {
        self.0.names.len()
    }

    pub fn zero(&self) -> Symbol {
        self.0.zero
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.0.names[s as usize]
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        0..self.size() as Symbol
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.0.names.iter().position(|n| n == name).map(|i| i as Symbol)
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s as usize) < self.size()
    }

    pub fn tracks(&self) -> Option<&[Alphabet]> {
        self.0.tracks.as_deref()
    }

    pub fn track_count(&self) -> usize {
        self.tracks().map_or(1, <[_]>::len)
    }

    /// Split a symbol into its track components.
    pub fn split(&self, s: Symbol) -> Result<Vec<Symbol>> {
        let tracks = self.tracks().ok_or(Error::NoTracks)?;
        let mut out = vec![0; tracks.len()];
        let mut rem = s as usize;
        for (j, t) in tracks.iter().enumerate().rev() {
            out[j] = (rem % t.size()) as Symbol;
            rem /= t.size();
        }
        Ok(out)
    }

    pub fn join(&self, parts: &[Symbol]) -> Result<Symbol> {
        let tracks = self.tracks().ok_or(Error::NoTracks)?;
        if parts.len() != tracks.len() || parts.iter().zip(tracks).any(|(&p, t)| !t.contains(p)) {
            return Err(Error::InvalidSymbol(format!("{parts:?} is not a valid track tuple")));
        }
        Ok(encode_tuple(tracks, parts))
    }

    /// Component `track` of symbol `s`.
    pub fn component(&self, s: Symbol, track: usize) -> Symbol {
        let tracks = self.tracks().expect("alphabet has tracks");
        let stride: usize = tracks[track + 1..].iter().map(Alphabet::size).product();
        ((s as usize / stride) % tracks[track].size()) as Symbol
    }

    /// Replace component `track` of `s` by `value`.
    pub fn with_component(&self, s: Symbol, track: usize, value: Symbol) -> Symbol {
        let tracks = self.tracks().expect("alphabet has tracks");
        let stride: usize = tracks[track + 1..].iter().map(Alphabet::size).product();
        let old = (s as usize / stride) % tracks[track].size();
        (s as usize - old * stride + value as usize * stride) as Symbol
    }

    pub fn ptr_eq(&self, other: &Alphabet) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    /// Fast path equality: pointer first, structure second.
    pub fn same(&self, other: &Alphabet) -> bool {
        self.ptr_eq(other) || self == other
    }
}

fn encode_tuple(tracks: &[Alphabet], parts: &[Symbol]) -> Symbol {
    parts
        .iter()
        .zip(tracks)
        .fold(0usize, |acc, (&p, t)| acc * t.size() + p as usize) as Symbol
}

impl std::hash::Hash for Alphabet {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.names.hash(state);
        self.0.zero.hash(state);
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet[{}; zero={}]", self.0.names.join(" "), self.name(self.zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_trivial() {
        assert!(Alphabet::numeric(1).is_err());
        assert!(Alphabet::new(["a", "b"], 2).is_err());
        assert!(Alphabet::new(["a", "a"], 0).is_err());
    }

    #[test]
    fn product_tuple_bijection() {
        let b = Alphabet::numeric(2).unwrap();
        let t = Alphabet::numeric(3).unwrap();
        let p = Alphabet::product(vec![b.clone(), t.clone(), b]).unwrap();
        assert_eq!(p.size(), 12);
        assert_eq!(p.zero(), 0);
        for s in p.symbols() {
            let parts = p.split(s).unwrap();
            assert_eq!(p.join(&parts).unwrap(), s);
            for (j, &c) in parts.iter().enumerate() {
                assert_eq!(p.component(s, j), c);
            }
        }
        assert_eq!(p.name(p.join(&[1, 2, 0]).unwrap()), "(1,2,0)");
        let s = p.join(&[1, 2, 0]).unwrap();
        assert_eq!(p.with_component(s, 1, 0), p.join(&[1, 0, 0]).unwrap());
    }

    #[test]
    fn product_zero_follows_tracks() {
        let a = Alphabet::new(["x", "o"], 1).unwrap();
        let p = Alphabet::product(vec![a.clone(), a]).unwrap();
        assert_eq!(p.split(p.zero()).unwrap(), vec![1, 1]);
        assert!(Alphabet::numeric(2).unwrap().split(0).is_err());
    }
}
