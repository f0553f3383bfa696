//! Generators tabulated as permutations of `Σ^{Z_n}` for one period `n`.
//!
//! Tapes are numbered in mixed radix, cell 0 most significant. Only one tape
//! per rotation class is evaluated; the rest of the table follows from shift
//! equivariance.

use std::collections::HashMap;

use crate::action::{GeneratorTable, GroupWord};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};

pub struct LevelTables {
    alphabet: Alphabet,
    period: usize,
    forward: HashMap<String, Vec<u32>>,
    backward: HashMap<String, Vec<u32>>,
    reps: Vec<u32>,
}

fn encode(q: u64, cells: &[Symbol]) -> u64 {
    cells.iter().fold(0, |acc, &c| acc * q + c as u64)
}

fn decode(q: u64, n: usize, mut index: u64, cells: &mut [Symbol]) {
    for slot in cells[..n].iter_mut().rev() {
        *slot = (index % q) as Symbol;
        index /= q;
    }
}

/// Index of the tape rotated left by one cell.
#[inline]
fn rotate_index(q: u64, n: usize, index: u64) -> u64 {
    let top = q.pow(n as u32 - 1);
    (index % top) * q + index / top
}

impl LevelTables {
    /// Tabulates every generator of `table` at period `n`; fails when `|Σ|^n > budget`.
    pub fn build(table: &GeneratorTable, n: usize, budget: u64) -> Result<Self> {
        let alphabet = table.alphabet().clone();
        let q = alphabet.size() as u64;
        let count = q
            .checked_pow(n as u32)
            .filter(|&c| c <= budget && c <= u32::MAX as u64)
            .ok_or_else(|| Error::InvalidArgument(format!("{q}^{n} tapes exceed the budget {budget}")))?;
        let mut reps = Vec::new();
        'all: for idx in 0..count {
            let mut r = idx;
            for _ in 1..n {
                r = rotate_index(q, n, r);
                if r < idx {
                    continue 'all;
                }
            }
            reps.push(idx as u32);
        }
        let mut forward = HashMap::new();
        let mut backward = HashMap::new();
        let mut cells = vec![0; n];
        for g in table.generators() {
            let mut fwd = vec![u32::MAX; count as usize];
            for &idx in &reps {
                decode(q, n, idx as u64, &mut cells);
                let mut x = idx as u64;
                let mut y = encode(q, &g.forward.apply_cells(&cells));
                for _ in 0..n {
                    fwd[x as usize] = y as u32;
                    x = rotate_index(q, n, x);
                    y = rotate_index(q, n, y);
                }
            }
            let mut bwd = vec![u32::MAX; count as usize];
            for (x, &y) in fwd.iter().enumerate() {
                if bwd[y as usize] != u32::MAX {
                    return Err(Error::InvalidArgument(format!(
                        "generator {} is not injective at period {n}",
                        g.name
                    )));
                }
                bwd[y as usize] = x as u32;
            }
            forward.insert(g.name.clone(), fwd);
            backward.insert(g.name.clone(), bwd);
        }
        Ok(Self { alphabet, period: n, forward, backward, reps })
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn tape_count(&self) -> usize {
        self.forward.values().next().map_or(0, Vec::len)
    }

    /// One tape per rotation class.
    pub fn representatives(&self) -> &[u32] {
        &self.reps
    }

    pub fn cells(&self, index: u32) -> Vec<Symbol> {
        let mut cells = vec![0; self.period];
        decode(self.alphabet.size() as u64, self.period, index as u64, &mut cells);
        cells
    }

    pub fn index(&self, cells: &[Symbol]) -> u32 {
        encode(self.alphabet.size() as u64, cells) as u32
    }

    /// The word as a list of table lookups, rightmost letter first.
    fn program(&self, word: &GroupWord) -> Result<Vec<&[u32]>> {
        let mut prog = Vec::new();
        for (name, e) in word.steps() {
            let t = if e > 0 { self.forward.get(name) } else { self.backward.get(name) };
            prog.push(t.ok_or_else(|| Error::UnknownGenerator(name.to_string()))?.as_slice());
        }
        prog.reverse();
        Ok(prog)
    }

    pub fn apply(&self, word: &GroupWord, index: u32) -> Result<u32> {
        Ok(self.program(word)?.iter().fold(index, |x, t| t[x as usize]))
    }

    /// A tape moved by `word`, if any.
    pub fn moved(&self, word: &GroupWord) -> Result<Option<u32>> {
        let prog = self.program(word)?;
        Ok(self.reps.iter().copied().find(|&x| prog.iter().fold(x, |y, t| t[y as usize]) != x))
    }

    /// A tape on which the two words differ, if any.
    pub fn differ(&self, a: &GroupWord, b: &GroupWord) -> Result<Option<u32>> {
        let (pa, pb) = (self.program(a)?, self.program(b)?);
        Ok(self.reps.iter().copied().find(|&x| {
            pa.iter().fold(x, |y, t| t[y as usize]) != pb.iter().fold(x, |y, t| t[y as usize])
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::TapeMap;
    use crate::code::Automorphism;

    #[test]
    fn tables_match_direct_evaluation() {
        let a = Alphabet::numeric(3).unwrap();
        let t = GeneratorTable::new(&a)
            .with((&Automorphism::shift(&a)).into())
            .unwrap();
        let lv = LevelTables::build(&t, 4, 1_000).unwrap();
        assert_eq!(lv.tape_count(), 81);
        // necklaces of length 4 over 3 letters
        assert_eq!(lv.representatives().len(), 24);
        let w = GroupWord::parse("shift^3", &["shift"]).unwrap();
        for idx in 0..81u32 {
            let cells = lv.cells(idx);
            let mut direct = cells.clone();
            for _ in 0..3 {
                direct = Automorphism::shift(&a).forward.apply_cells(&direct);
            }
            assert_eq!(lv.cells(lv.apply(&w, idx).unwrap()), direct);
        }
        assert!(lv.moved(&GroupWord::parse("shift^4", &["shift"]).unwrap()).unwrap().is_none());
        assert!(lv.moved(&w).unwrap().is_some());
    }

    #[test]
    fn budget_enforced() {
        let a = Alphabet::numeric(3).unwrap();
        let t = GeneratorTable::new(&a);
        assert!(LevelTables::build(&t, 8, 1_000).is_err());
    }
}
