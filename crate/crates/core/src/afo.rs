//! Safe word sets and actions on finitely many orbits (AFOs).
//!
//! An AFO permutes the rotation orbits of finitely many zero-padded words
//! `u_i 0^{n-|u_i|}` on every tape length `n >= n0` and fixes every other tape.
//! Placements are tracked by the start cell of the word: the tape holding
//! `u_i` at cell `s` maps to the tape holding `u_{π(i)}` at cell `s + n_i`.

use std::sync::Arc;

use crate::action::{Generator, TapeMap};
use crate::alphabet::{Alphabet, Symbol};
use crate::config::PeriodicConfig;
use crate::error::{Error, Result};

/// Two placements producing the same tape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collision {
    pub period: usize,
    /// `(word index, start cell)` of each placement.
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub tape: Vec<Symbol>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Safety {
    Safe,
    Unsafe(Collision),
}

impl Safety {
    pub fn is_safe(&self) -> bool {
        matches!(self, Safety::Safe)
    }
}

fn validate_words(alphabet: &Alphabet, words: &[Vec<Symbol>]) -> Result<()> {
    if words.is_empty() {
        return Err(Error::InvalidWords("empty word set".into()));
    }
    for (i, w) in words.iter().enumerate() {
        if w.is_empty() {
            return Err(Error::InvalidWords(format!("word {i} is empty")));
        }
        if w.iter().any(|&c| !alphabet.contains(c)) {
            return Err(Error::InvalidWords(format!("word {i} has symbols outside the alphabet")));
        }
        if w[0] == alphabet.zero() || *w.last().unwrap() == alphabet.zero() {
            return Err(Error::InvalidWords(format!("word {i} has a zero border")));
        }
        if words[..i].contains(w) {
            return Err(Error::InvalidWords(format!("word {i} is repeated")));
        }
    }
    Ok(())
}

/// Tape of period `n` holding `word` from cell `start`, zeros elsewhere.
pub fn placement(alphabet: &Alphabet, word: &[Symbol], n: usize, start: usize) -> Vec<Symbol> {
    let mut tape = vec![alphabet.zero(); n];
    for (k, &c) in word.iter().enumerate() {
        tape[(start + k) % n] = c;
    }
    tape
}

/// Decides `n0`-safety. Lengths above `max(n0, 2*maxlen - 1)` are safe automatically.
pub fn check_safety(alphabet: &Alphabet, words: &[Vec<Symbol>], n0: usize) -> Result<Safety> {
    validate_words(alphabet, words)?;
    let maxlen = words.iter().map(Vec::len).max().unwrap();
    if maxlen > n0 {
        return Err(Error::InvalidWords(format!("word of length {maxlen} exceeds threshold {n0}")));
    }
    let top = n0.max(2 * maxlen - 1);
    for n in n0..=top {
        let mut seen: std::collections::HashMap<Vec<Symbol>, (usize, usize)> = Default::default();
        for (i, w) in words.iter().enumerate() {
            for s in 0..n {
                let tape = placement(alphabet, w, n, s);
                if let Some(&prev) = seen.get(&tape) {
                    return Ok(Safety::Unsafe(Collision { period: n, first: prev, second: (i, s), tape }));
                }
                seen.insert(tape, (i, s));
            }
        }
    }
    Ok(Safety::Safe)
}

/// A word set verified to be `threshold`-safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeWordSet {
    alphabet: Alphabet,
    words: Vec<Vec<Symbol>>,
    threshold: usize,
}

impl SafeWordSet {
    pub fn new(alphabet: &Alphabet, words: Vec<Vec<Symbol>>, threshold: usize) -> Result<Self> {
        match check_safety(alphabet, &words, threshold)? {
            Safety::Safe => Ok(Self { alphabet: alphabet.clone(), words, threshold }),
            Safety::Unsafe(c) => Err(Error::InvalidWords(format!(
                "not {threshold}-safe: placements {:?} and {:?} collide at period {}",
                c.first, c.second, c.period
            ))),
        }
    }

    /// Smallest threshold `>= maxlen` at which the set is safe.
    pub fn with_minimal_threshold(alphabet: &Alphabet, words: Vec<Vec<Symbol>>) -> Result<Self> {
        validate_words(alphabet, &words)?;
        let maxlen = words.iter().map(Vec::len).max().unwrap();
        for n0 in maxlen..=2 * maxlen {
            if check_safety(alphabet, &words, n0)?.is_safe() {
                return Ok(Self { alphabet: alphabet.clone(), words, threshold: n0 });
            }
        }
        unreachable!("every valid set is safe at 2*maxlen - 1")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Vec<Symbol>] {
        &self.words
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// The unique `(word index, start cell)` placement matching `tape`, if any.
    pub fn locate(&self, tape: &[Symbol]) -> Option<(usize, usize)> {
        let n = tape.len();
        if n < self.threshold {
            return None;
        }
        let z = self.alphabet.zero();
        let nonzero = tape.iter().filter(|&&c| c != z).count();
        for (i, w) in self.words.iter().enumerate() {
            let wnz = w.iter().filter(|&&c| c != z).count();
            if wnz != nonzero || w.len() > n {
                continue;
            }
            for s in 0..n {
                if w.iter().enumerate().all(|(k, &c)| tape[(s + k) % n] == c) {
                    return Some((i, s));
                }
            }
        }
        None
    }
}

/// An action on finitely many orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AfoSpec {
    pub safe: SafeWordSet,
    /// `pi[i]` is the image of word index `i` (0-based).
    pub pi: Vec<usize>,
    pub offsets: Vec<i64>,
}

impl AfoSpec {
    pub fn new(safe: SafeWordSet, pi: Vec<usize>, offsets: Vec<i64>) -> Result<Self> {
        let k = safe.len();
        if offsets.len() != k {
            return Err(Error::InvalidArgument(format!("{} offsets for {k} words", offsets.len())));
        }
        if pi.len() != k {
            return Err(Error::InvalidPermutation(format!("permutation of {} points for {k} words", pi.len())));
        }
        crate::perm::Perm::from_images(pi.clone())?;
        Ok(Self { safe, pi, offsets })
    }

    pub fn identity(safe: SafeWordSet) -> Self {
        let k = safe.len();
        Self { safe, pi: (0..k).collect(), offsets: vec![0; k] }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.safe.alphabet()
    }

    pub fn word_count(&self) -> usize {
        self.safe.len()
    }

    /// Image of a designated placement.
    pub fn image_of(&self, word: usize, start: usize, n: usize) -> (usize, usize) {
        let target = self.pi[word];
        let s = (start as i64 + self.offsets[word]).rem_euclid(n as i64) as usize;
        (target, s)
    }

    pub fn apply_cells(&self, tape: &[Symbol]) -> Vec<Symbol> {
        match self.safe.locate(tape) {
            None => tape.to_vec(),
            Some((i, s)) => {
                let (t, s2) = self.image_of(i, s, tape.len());
                placement(self.alphabet(), &self.safe.words()[t], tape.len(), s2)
            }
        }
    }

    pub fn apply_afo(&self, x: &PeriodicConfig) -> Result<PeriodicConfig> {
        if !x.alphabet().same(self.alphabet()) {
            return Err(Error::AlphabetMismatch("afo input".into()));
        }
        Ok(PeriodicConfig::from_raw(self.alphabet(), self.apply_cells(x.cells())))
    }

    pub fn inverse(&self) -> AfoSpec {
        let k = self.word_count();
        let mut pi = vec![0; k];
        let mut offsets = vec![0; k];
        for i in 0..k {
            pi[self.pi[i]] = i;
            offsets[self.pi[i]] = -self.offsets[i];
        }
        AfoSpec { safe: self.safe.clone(), pi, offsets }
    }

    /// Number of tapes of period `n` moved by the AFO, found among the `<= k*n`
    /// designated placements.
    pub fn moved_count(&self, n: usize) -> usize {
        if n < self.safe.threshold() {
            return 0;
        }
        let mut moved = 0;
        for (i, w) in self.safe.words().iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for s in 0..n {
                let tape = placement(self.alphabet(), w, n, s);
                // a word with rotational symmetry would repeat tapes; safety forbids it
                if !seen.insert(tape.clone()) {
                    continue;
                }
                let (t, s2) = self.image_of(i, s, n);
                if placement(self.alphabet(), &self.safe.words()[t], n, s2) != tape {
                    moved += 1;
                }
            }
        }
        moved
    }

    /// Doubling transform: zeros interleaved after every symbol, threshold and offsets doubled.
    pub fn doubled(&self) -> Result<AfoSpec> {
        let z = self.alphabet().zero();
        let words: Vec<Vec<Symbol>> = self
            .safe
            .words()
            .iter()
            .map(|w| {
                let mut d: Vec<Symbol> = w.iter().flat_map(|&c| [c, z]).collect();
                d.pop();
                d
            })
            .collect();
        let safe = SafeWordSet::new(self.alphabet(), words, 2 * self.safe.threshold())?;
        Ok(AfoSpec { safe, pi: self.pi.clone(), offsets: self.offsets.iter().map(|o| 2 * o).collect() })
    }

    pub fn generator(&self, name: &str) -> Generator {
        Generator::new(name, Arc::new(self.clone()), Arc::new(self.inverse()))
    }
}

impl TapeMap for AfoSpec {
    fn alphabet(&self) -> &Alphabet {
        self.safe.alphabet()
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        AfoSpec::apply_cells(self, cells)
    }
}

/// One factor of a product mixing automorphisms and AFOs.
#[derive(Clone, Debug)]
pub enum MixedFactor {
    Auto(Generator),
    Afo(AfoSpec),
}

impl MixedFactor {
    fn apply(&self, cells: &[Symbol]) -> Vec<Symbol> {
        match self {
            MixedFactor::Auto(g) => g.forward.apply_cells(cells),
            MixedFactor::Afo(a) => a.apply_cells(cells),
        }
    }
}

/// Result of comparing a mixed product with its AFO-free retraction on one tape length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionCount {
    pub period: usize,
    pub differing: u64,
    pub total: u64,
    /// `sum of k_i * n` over the AFO factors.
    pub bound: u64,
}

/// Counts tapes of period `n` on which the product (rightmost factor first)
/// differs from the product with all AFOs dropped.
pub fn retraction_discrepancy(alphabet: &Alphabet, factors: &[MixedFactor], n: usize) -> RetractionCount {
    let total = PeriodicConfig::count(alphabet, n).expect("period too large");
    let bound = factors
        .iter()
        .map(|f| match f {
            MixedFactor::Afo(a) => (a.word_count() * n) as u64,
            MixedFactor::Auto(_) => 0,
        })
        .sum();
    let mut differing = 0;
    for x in PeriodicConfig::all(alphabet, n) {
        let mut full = x.cells().to_vec();
        let mut retract = x.cells().to_vec();
        for f in factors.iter().rev() {
            full = f.apply(&full);
            if let MixedFactor::Auto(_) = f {
                retract = f.apply(&retract);
            }
        }
        if full != retract {
            differing += 1;
        }
    }
    RetractionCount { period: n, differing, total, bound }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab3() -> Alphabet {
        Alphabet::numeric(3).unwrap()
    }

    fn example() -> AfoSpec {
        let safe = SafeWordSet::new(&ab3(), vec![vec![1], vec![2]], 1).unwrap();
        AfoSpec::new(safe, vec![1, 0], vec![1, -1]).unwrap()
    }

    fn tape(cells: &[Symbol]) -> PeriodicConfig {
        PeriodicConfig::new(&ab3(), cells.to_vec()).unwrap()
    }

    #[test]
    fn worked_example_mappings() {
        let f = example();
        let cases: [(&[Symbol], &[Symbol]); 5] = [
            (&[1], &[2]),
            (&[2, 0], &[0, 1]),
            (&[1, 2], &[1, 2]),
            (&[0, 0, 0, 1, 0], &[0, 0, 0, 0, 2]),
            (&[0, 0, 1, 0, 0, 0, 1, 0, 0], &[0, 0, 1, 0, 0, 0, 1, 0, 0]),
        ];
        for (x, y) in cases {
            assert_eq!(f.apply_afo(&tape(x)).unwrap().cells(), y, "f({x:?})");
        }
    }

    #[test]
    fn inverse_undoes_example() {
        let g = example().inverse();
        assert_eq!(g.apply_afo(&tape(&[2])).unwrap().cells(), &[1]);
        assert_eq!(g.apply_afo(&tape(&[0, 1])).unwrap().cells(), &[2, 0]);
        assert_eq!(g.inverse(), example());
        let id = AfoSpec::identity(example().safe.clone());
        assert_eq!(id.inverse(), id);
    }

    #[test]
    fn safety_examples() {
        let a = ab3();
        match check_safety(&a, &[vec![1, 0, 1]], 4).unwrap() {
            Safety::Unsafe(c) => {
                assert_eq!(c.period, 4);
                assert_eq!(c.tape, vec![1, 0, 1, 0]);
                assert_eq!((c.first, c.second), ((0, 0), (0, 2)));
            }
            Safety::Safe => panic!("101 is not 4-safe"),
        }
        assert!(check_safety(&a, &[vec![1, 0, 1]], 5).unwrap().is_safe());
        assert!(check_safety(&a, &[vec![1]], 1).unwrap().is_safe());
        assert!(check_safety(&a, &[vec![1], vec![2]], 1).unwrap().is_safe());
        assert!(check_safety(&a, &[vec![1, 0, 1]], 2).is_err());
        assert!(check_safety(&a, &[vec![0, 1]], 3).is_err());
        assert!(check_safety(&a, &[vec![1], vec![1]], 3).is_err());
    }

    #[test]
    fn moved_counts() {
        let f = example();
        assert_eq!(f.moved_count(1), 2);
        let safe = SafeWordSet::new(&ab3(), vec![vec![1, 0, 1]], 5).unwrap();
        let g = AfoSpec::new(safe.clone(), vec![0], vec![2]).unwrap();
        assert_eq!(g.moved_count(4), 0);
        assert_eq!(g.moved_count(7), 7);
        assert_eq!(AfoSpec::identity(safe).moved_count(9), 0);
    }

    #[test]
    fn minimal_threshold() {
        let s = SafeWordSet::with_minimal_threshold(&ab3(), vec![vec![1, 0, 1]]).unwrap();
        assert_eq!(s.threshold(), 5);
        let s = SafeWordSet::with_minimal_threshold(&ab3(), vec![vec![1, 2]]).unwrap();
        assert_eq!(s.threshold(), 2);
    }

    #[test]
    fn doubling_spreads_words() {
        let d = example().doubled().unwrap();
        assert_eq!(d.safe.threshold(), 2);
        assert_eq!(d.offsets, vec![2, -2]);
        assert_eq!(d.apply_cells(&[0, 0, 1, 0]), vec![2, 0, 0, 0]);
    }
}
