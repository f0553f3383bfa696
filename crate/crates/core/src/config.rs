//! Periodic tapes and zero-finite points.

use std::fmt;

use rand::Rng;

use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

/// An element of `Σ^{Z_n}`: a cyclic tape of `n` cells.
///
/// Equality is cell-sequence equality at a fixed period.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicConfig {
    alphabet: Alphabet,
    cells: Vec<Symbol>,
}

impl PeriodicConfig {
    pub fn new(alphabet: &Alphabet, cells: Vec<Symbol>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if let Some(&bad) = cells.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::InvalidSymbol(format!(
                "{bad} not in alphabet of size {}",
                alphabet.size()
            )));
        }
        Ok(Self { alphabet: alphabet.clone(), cells })
    }

    /// Constructor for callers that already guarantee validity.
    pub(crate) fn from_raw(alphabet: &Alphabet, cells: Vec<Symbol>) -> Self {
        debug_assert!(!cells.is_empty() && cells.iter().all(|&c| alphabet.contains(c)));
        Self { alphabet: alphabet.clone(), cells }
    }

    pub fn zeros(alphabet: &Alphabet, period: usize) -> Self {
        assert!(period > 0);
        Self::from_raw(alphabet, vec![alphabet.zero(); period])
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn period(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self) -> &[Symbol] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Symbol> {
        self.cells
    }

    /// Cell at position `i` read cyclically.
    pub fn at(&self, i: isize) -> Symbol {
        self.cells[i.rem_euclid(self.cells.len() as isize) as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.cells.iter().all(|&c| c == self.alphabet.zero())
    }

    /// `σ^k(x)`, where `σ(x)_i = x_{i+1}`.
    pub fn rotate(&self, k: isize) -> Self {
        let n = self.cells.len() as isize;
        let cells = (0..n).map(|i| self.at(i + k)).collect();
        Self::from_raw(&self.alphabet, cells)
    }

    /// Mixed-radix index in `0..|Σ|^n`, cell 0 most significant.
    pub fn index(&self) -> u64 {
        let q = self.alphabet.size() as u64;
        self.cells.iter().fold(0, |acc, &c| acc * q + c as u64)
    }

    pub fn from_index(alphabet: &Alphabet, period: usize, mut index: u64) -> Self {
        let q = alphabet.size() as u64;
        let mut cells = vec![0; period];
        for c in cells.iter_mut().rev() {
            *c = (index % q) as Symbol;
            index /= q;
        }
        Self::from_raw(alphabet, cells)
    }

    /// Number of tapes of the given period, if it fits in `u64`.
    pub fn count(alphabet: &Alphabet, period: usize) -> Option<u64> {
        (alphabet.size() as u64).checked_pow(period as u32)
    }

    /// Every tape of exactly this period.
    pub fn all(alphabet: &Alphabet, period: usize) -> impl Iterator<Item = PeriodicConfig> + '_ {
        let total = Self::count(alphabet, period).expect("period too large to enumerate");
        (0..total).map(move |i| Self::from_index(alphabet, period, i))
    }

    pub fn random<R: Rng + ?Sized>(alphabet: &Alphabet, period: usize, rng: &mut R) -> Self {
        let cells = (0..period)
            .map(|_| rng.gen_range(0..alphabet.size() as Symbol))
            .collect();
        Self::from_raw(alphabet, cells)
    }

    /// Projection to one track of a product alphabet.
    pub fn track(&self, track: usize) -> Result<PeriodicConfig> {
        let tracks = self.alphabet.tracks().ok_or(Error::NoTracks)?;
        let cells = self.cells.iter().map(|&c| self.alphabet.component(c, track)).collect();
        Ok(Self::from_raw(&tracks[track], cells))
    }
}

impl fmt::Debug for PeriodicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "period={} cells=[", self.period())?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", self.alphabet.name(*c))?;
        }
        f.write_str("]")
    }
}

/// A zero-finite point of `Σ^Z`, stored as a canonical word at an offset.
///
/// The word is empty or starts and ends with nonzero symbols.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteConfig {
    alphabet: Alphabet,
    offset: i64,
    word: Vec<Symbol>,
}

impl FiniteConfig {
    /// Builds from an arbitrary word at `offset`, trimming zero borders.
    pub fn new(alphabet: &Alphabet, offset: i64, word: Vec<Symbol>) -> Result<Self> {
        if let Some(&bad) = word.iter().find(|&&c| !alphabet.contains(c)) {
            return Err(Error::InvalidSymbol(format!("{bad}")));
        }
        Ok(Self::canonical(alphabet, offset, word))
    }

    pub(crate) fn canonical(alphabet: &Alphabet, offset: i64, word: Vec<Symbol>) -> Self {
        let z = alphabet.zero();
        match word.iter().position(|&c| c != z) {
            None => Self { alphabet: alphabet.clone(), offset: 0, word: Vec::new() },
            Some(first) => {
                let last = word.iter().rposition(|&c| c != z).unwrap();
                Self {
                    alphabet: alphabet.clone(),
                    offset: offset + first as i64,
                    word: word[first..=last].to_vec(),
                }
            }
        }
    }

    pub fn zero(alphabet: &Alphabet) -> Self {
        Self { alphabet: alphabet.clone(), offset: 0, word: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn word(&self) -> &[Symbol] {
        &self.word
    }

    pub fn is_zero(&self) -> bool {
        self.word.is_empty()
    }

    pub fn at(&self, i: i64) -> Symbol {
        let k = i - self.offset;
        if k >= 0 && (k as usize) < self.word.len() {
            self.word[k as usize]
        } else {
            self.alphabet.zero()
        }
    }

    /// Inclusive bounds of the zero-support.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.word.is_empty()).then(|| (self.offset, self.offset + self.word.len() as i64 - 1))
    }

    /// Cells `lo..=hi` as a word.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<Symbol> {
        (lo..=hi).map(|i| self.at(i)).collect()
    }

    /// `σ^k(x)`.
    pub fn shifted(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self { alphabet: self.alphabet.clone(), offset: self.offset - k, word: self.word.clone() }
    }
}

impl fmt::Debug for FiniteConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.word.iter().map(|&c| self.alphabet.name(c)).collect();
        write!(f, "offset={} word=[{}]", self.offset, names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab3() -> Alphabet {
        Alphabet::numeric(3).unwrap()
    }

    #[test]
    fn rotate_is_left_shift() {
        let x = PeriodicConfig::new(&ab3(), vec![0, 1, 0]).unwrap();
        assert_eq!(x.rotate(1).cells(), &[1, 0, 0]);
        assert_eq!(x.rotate(-1).cells(), &[0, 0, 1]);
        assert_eq!(x.rotate(3), x);
    }

    #[test]
    fn index_roundtrip() {
        let a = ab3();
        for x in PeriodicConfig::all(&a, 3) {
            assert_eq!(PeriodicConfig::from_index(&a, 3, x.index()), x);
        }
        assert_eq!(PeriodicConfig::all(&a, 3).count(), 27);
    }

    #[test]
    fn rejects_bad_cells() {
        assert!(PeriodicConfig::new(&ab3(), vec![3]).is_err());
        assert!(PeriodicConfig::new(&ab3(), vec![]).is_err());
    }

    #[test]
    fn finite_canonical() {
        let f = FiniteConfig::new(&ab3(), -2, vec![0, 0, 1, 0, 2, 0]).unwrap();
        assert_eq!(f.offset(), 0);
        assert_eq!(f.word(), &[1, 0, 2]);
        assert_eq!(f.support(), Some((0, 2)));
        assert_eq!(f.at(2), 2);
        assert_eq!(f.at(5), 0);
        let z = FiniteConfig::new(&ab3(), 7, vec![0, 0]).unwrap();
        assert_eq!(z, FiniteConfig::zero(&ab3()));
        assert_eq!(f.shifted(1).offset(), -1);
    }
}
