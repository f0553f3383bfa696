//! Sliding block codes and automorphisms of full shifts.

use std::fmt;
use std::sync::Arc;

use crate::action::TapeMap;
use crate::alphabet::{Alphabet, Symbol};
use crate::config::{FiniteConfig, PeriodicConfig};
use crate::error::{Error, Result};

type RuleFn = dyn Fn(&[Symbol]) -> Symbol + Send + Sync;

#[derive(Clone)]
enum Rule {
    Table(Arc<Vec<Symbol>>),
    Proc(Arc<RuleFn>),
}

/// A local rule over the window `[lo, hi]`: `f(x)_i = rule(x_{i+lo} .. x_{i+hi})`.
///
/// Procedural rules must be pure.
#[derive(Clone)]
pub struct SlidingBlockCode {
    alphabet: Alphabet,
    lo: isize,
    hi: isize,
    rule: Rule,
}

/// Outcome of the exact identity decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentityCheck {
    Identity,
    /// A window whose image differs from its center cell.
    Differs(Vec<Symbol>),
    BudgetExceeded { windows: u128 },
}

pub const DEFAULT_WINDOW_BUDGET: u128 = 10_000_000;

impl SlidingBlockCode {
    pub fn from_fn<F>(alphabet: &Alphabet, lo: isize, hi: isize, rule: F) -> Self
    where
        F: Fn(&[Symbol]) -> Symbol + Send + Sync + 'static,
    {
        assert!(lo <= hi, "empty window");
        Self { alphabet: alphabet.clone(), lo, hi, rule: Rule::Proc(Arc::new(rule)) }
    }

    /// Table indexed by the window read as a mixed-radix number, leftmost cell most significant.
    pub fn from_table(alphabet: &Alphabet, lo: isize, hi: isize, table: Vec<Symbol>) -> Result<Self> {
        let width = (hi - lo + 1) as u32;
        let expected = (alphabet.size() as u128).pow(width);
        if lo > hi || table.len() as u128 != expected {
            return Err(Error::InvalidArgument(format!(
                "table of length {} for window [{lo},{hi}] (expected {expected})",
                table.len()
            )));
        }
        if table.iter().any(|&s| !alphabet.contains(s)) {
            return Err(Error::InvalidSymbol("table entry outside alphabet".into()));
        }
        Ok(Self { alphabet: alphabet.clone(), lo, hi, rule: Rule::Table(Arc::new(table)) })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        Self::from_fn(alphabet, 0, 0, |w| w[0])
    }

    /// `σ^k`: `σ(x)_i = x_{i+1}`.
    pub fn shift(alphabet: &Alphabet, k: isize) -> Self {
        Self::from_fn(alphabet, k, k, |w| w[0])
    }

    /// A symbol permutation or other cellwise map.
    pub fn cellwise<F>(alphabet: &Alphabet, f: F) -> Self
    where
        F: Fn(Symbol) -> Symbol + Send + Sync + 'static,
    {
        Self::from_fn(alphabet, 0, 0, move |w| f(w[0]))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn window(&self) -> (isize, isize) {
        (self.lo, self.hi)
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    /// Largest distance from the origin to a window cell.
    pub fn radius(&self) -> usize {
        self.lo.unsigned_abs().max(self.hi.unsigned_abs())
    }

    pub fn is_tabulated(&self) -> bool {
        matches!(self.rule, Rule::Table(_))
    }

    #[inline]
    pub fn eval(&self, window: &[Symbol]) -> Symbol {
        debug_assert_eq!(window.len(), self.width());
        match &self.rule {
            Rule::Proc(f) => f(window),
            Rule::Table(t) => {
                let q = self.alphabet.size();
                t[window.iter().fold(0usize, |acc, &c| acc * q + c as usize)]
            }
        }
    }

    /// Materializes the rule as a table when `|Σ|^width` is within `budget`.
    pub fn tabulate(&self, budget: u128) -> Result<Self> {
        let windows = (self.alphabet.size() as u128).pow(self.width() as u32);
        if windows > budget {
            return Err(Error::InvalidArgument(format!(
                "{windows} windows exceed tabulation budget {budget}"
            )));
        }
        let mut w = vec![0; self.width()];
        let table = (0..windows as u64)
            .map(|i| {
                fill_window(&mut w, i, self.alphabet.size());
                self.eval(&w)
            })
            .collect();
        Self::from_table(&self.alphabet, self.lo, self.hi, table)
    }

    fn check_alphabet(&self, other: &Alphabet) -> Result<()> {
        if self.alphabet.same(other) {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(format!("{:?} vs {:?}", self.alphabet, other)))
        }
    }

    pub fn apply_periodic(&self, x: &PeriodicConfig) -> Result<PeriodicConfig> {
        self.check_alphabet(x.alphabet())?;
        Ok(PeriodicConfig::from_raw(&self.alphabet, self.apply_cells(x.cells())))
    }

    pub fn maps_zero_to_zero(&self) -> bool {
        let z = self.alphabet.zero();
        self.eval(&vec![z; self.width()]) == z
    }

    /// Applies a zero-fixing code to a zero-finite point.
    pub fn apply_finite(&self, x: &FiniteConfig) -> Result<FiniteConfig> {
        self.check_alphabet(x.alphabet())?;
        if !self.maps_zero_to_zero() {
            return Err(Error::NotZeroFixing("all-zero window maps to a nonzero symbol".into()));
        }
        let Some((a, b)) = x.support() else {
            return Ok(x.clone());
        };
        let (out_lo, out_hi) = (a - self.hi as i64, b - self.lo as i64);
        let mut w = vec![0; self.width()];
        let word = (out_lo..=out_hi)
            .map(|i| {
                for (k, slot) in w.iter_mut().enumerate() {
                    *slot = x.at(i + self.lo as i64 + k as i64);
                }
                self.eval(&w)
            })
            .collect();
        Ok(FiniteConfig::canonical(&self.alphabet, out_lo, word))
    }

    /// Lifts the rule to component `track` of `product`, leaving the other tracks alone.
    pub fn on_track(&self, product: &Alphabet, track: usize) -> Result<SlidingBlockCode> {
        let tracks = product.tracks().ok_or(Error::NoTracks)?;
        if tracks.get(track).is_none_or(|t| !t.same(&self.alphabet)) {
            return Err(Error::AlphabetMismatch(format!("track {track} of {product:?} is not {:?}", self.alphabet)));
        }
        let inner = self.clone();
        let p = product.clone();
        let (lo, hi) = (self.lo.min(0), self.hi.max(0));
        let centre = (-lo) as usize;
        let skip = (self.lo - lo) as usize;
        Ok(SlidingBlockCode::from_fn(product, lo, hi, move |w| {
            let picked: Vec<Symbol> = w[skip..skip + inner.width()].iter().map(|&c| p.component(c, track)).collect();
            let own = w[centre];
            p.with_component(own, track, inner.eval(&picked))
        }))
    }

    /// `f ∘ g`, with window the sum of the two windows.
    pub fn compose(f: &SlidingBlockCode, g: &SlidingBlockCode) -> Result<SlidingBlockCode> {
        f.check_alphabet(&g.alphabet)?;
        let (f2, g2) = (f.clone(), g.clone());
        let gw = g.width();
        Ok(Self::from_fn(&f.alphabet, f.lo + g.lo, f.hi + g.hi, move |w| {
            let inner: Vec<Symbol> = (0..f2.width()).map(|j| g2.eval(&w[j..j + gw])).collect();
            f2.eval(&inner)
        }))
    }

    /// Exact decision: a code is the identity iff its rule projects to the center.
    pub fn is_identity(&self, budget: u128) -> IdentityCheck {
        let lo = self.lo.min(0);
        let hi = self.hi.max(0);
        let width = (hi - lo + 1) as usize;
        let q = self.alphabet.size();
        let windows = (q as u128).pow(width as u32);
        if windows > budget {
            return IdentityCheck::BudgetExceeded { windows };
        }
        let mut w = vec![0; width];
        let inner = (self.lo - lo) as usize..(self.hi - lo + 1) as usize;
        let center = (-lo) as usize;
        for i in 0..windows as u64 {
            fill_window(&mut w, i, q);
            if self.eval(&w[inner.clone()]) != w[center] {
                return IdentityCheck::Differs(w);
            }
        }
        IdentityCheck::Identity
    }
}

fn fill_window(w: &mut [Symbol], mut index: u64, q: usize) {
    for slot in w.iter_mut().rev() {
        *slot = (index % q as u64) as Symbol;
        index /= q as u64;
    }
}

impl TapeMap for SlidingBlockCode {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        let n = cells.len() as isize;
        let mut w = vec![0; self.width()];
        (0..n)
            .map(|i| {
                for (k, slot) in w.iter_mut().enumerate() {
                    *slot = cells[(i + self.lo + k as isize).rem_euclid(n) as usize];
                }
                self.eval(&w)
            })
            .collect()
    }
}

impl fmt::Debug for SlidingBlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SlidingBlockCode[{},{}]{}",
            self.lo,
            self.hi,
            if self.is_tabulated() { " (table)" } else { "" }
        )
    }
}

/// A sliding block code paired with its inverse.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub name: String,
    pub forward: SlidingBlockCode,
    pub backward: SlidingBlockCode,
    /// Claimed membership in the stabilizer of the zero point.
    pub fixes_zero: bool,
}

impl Automorphism {
    pub fn new(
        name: impl Into<String>,
        forward: SlidingBlockCode,
        backward: SlidingBlockCode,
    ) -> Result<Self> {
        forward.check_alphabet(&backward.alphabet)?;
        let fixes_zero = forward.maps_zero_to_zero() && backward.maps_zero_to_zero();
        Ok(Self { name: name.into(), forward, backward, fixes_zero })
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let id = SlidingBlockCode::identity(alphabet);
        Self { name: "id".into(), forward: id.clone(), backward: id, fixes_zero: true }
    }

    pub fn shift(alphabet: &Alphabet) -> Self {
        Self {
            name: "shift".into(),
            forward: SlidingBlockCode::shift(alphabet, 1),
            backward: SlidingBlockCode::shift(alphabet, -1),
            fixes_zero: true,
        }
    }

    /// Cellwise symbol permutation.
    pub fn symbol_permutation(
        name: impl Into<String>,
        alphabet: &Alphabet,
        perm: Vec<Symbol>,
    ) -> Result<Self> {
        let inv = crate::perm::Perm::from_images(perm.iter().map(|&s| s as usize).collect())
            .map_err(|e| Error::InvalidPermutation(e.to_string()))?
            .inverse();
        if perm.len() != alphabet.size() {
            return Err(Error::InvalidPermutation("length differs from alphabet size".into()));
        }
        let inv: Vec<Symbol> = inv.images().iter().map(|&s| s as Symbol).collect();
        let fwd = SlidingBlockCode::cellwise(alphabet, move |s| perm[s as usize]);
        let bwd = SlidingBlockCode::cellwise(alphabet, move |s| inv[s as usize]);
        Self::new(name, fwd, bwd)
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.forward.alphabet()
    }

    pub fn inverse(&self) -> Self {
        Self {
            name: format!("{}^-1", self.name),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
            fixes_zero: self.fixes_zero,
        }
    }

    pub fn compose(&self, other: &Automorphism) -> Result<Self> {
        Ok(Self {
            name: format!("{}*{}", self.name, other.name),
            forward: SlidingBlockCode::compose(&self.forward, &other.forward)?,
            backward: SlidingBlockCode::compose(&other.backward, &self.backward)?,
            fixes_zero: self.fixes_zero && other.fixes_zero,
        })
    }

    /// The same map acting on component `track` of a product alphabet.
    pub fn on_track(&self, product: &Alphabet, track: usize) -> Result<Self> {
        Ok(Self {
            name: self.name.clone(),
            forward: self.forward.on_track(product, track)?,
            backward: self.backward.on_track(product, track)?,
            fixes_zero: self.fixes_zero,
        })
    }

    /// Dilates every window by `factor`, so the map acts on `factor`
    /// interleaved copies of the shift independently.
    pub fn dilate(&self, factor: usize) -> Self {
        Self {
            name: format!("{}@x{factor}", self.name),
            forward: dilate_code(&self.forward, factor),
            backward: dilate_code(&self.backward, factor),
            fixes_zero: self.fixes_zero,
        }
    }
}

fn dilate_code(code: &SlidingBlockCode, factor: usize) -> SlidingBlockCode {
    if factor == 1 {
        return code.clone();
    }
    let inner = code.clone();
    let f = factor as isize;
    let (lo, hi) = code.window();
    SlidingBlockCode::from_fn(code.alphabet(), lo * f, hi * f, move |w| {
        let picked: Vec<Symbol> = w.iter().step_by(factor).copied().collect();
        inner.eval(&picked)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(n: usize) -> Alphabet {
        Alphabet::numeric(n).unwrap()
    }

    /// Lamplighter flip on `{0,1}^2`: `(x, y) -> (x, y xor x)`.
    fn flip() -> SlidingBlockCode {
        let b = ab(2);
        let a = Alphabet::product(vec![b.clone(), b]).unwrap();
        let a2 = a.clone();
        SlidingBlockCode::cellwise(&a, move |s| {
            let (x, y) = (a2.component(s, 0), a2.component(s, 1));
            a2.join(&[x, y ^ x]).unwrap()
        })
    }

    #[test]
    fn shift_applies_left() {
        let a = ab(2);
        let x = PeriodicConfig::new(&a, vec![0, 1, 0]).unwrap();
        let s = SlidingBlockCode::shift(&a, 1);
        assert_eq!(s.apply_periodic(&x).unwrap().cells(), &[1, 0, 0]);
        assert_eq!(SlidingBlockCode::identity(&a).apply_periodic(&x).unwrap(), x);
    }

    #[test]
    fn flip_example() {
        let f = flip();
        let a = f.alphabet().clone();
        let one_zero = a.join(&[1, 0]).unwrap();
        let one_one = a.join(&[1, 1]).unwrap();
        let x = PeriodicConfig::new(&a, vec![one_zero, 0, 0]).unwrap();
        assert_eq!(f.apply_periodic(&x).unwrap().cells(), &[one_one, 0, 0]);

        let fx = FiniteConfig::new(&a, 0, vec![one_zero]).unwrap();
        let out = f.apply_finite(&fx).unwrap();
        assert_eq!(out.word(), &[one_one]);
        assert_eq!(out.offset(), 0);
    }

    #[test]
    fn apply_finite_shift_moves_support() {
        let a = ab(2);
        let x = FiniteConfig::new(&a, 0, vec![1]).unwrap();
        let s = SlidingBlockCode::shift(&a, 1);
        assert_eq!(s.apply_finite(&x).unwrap().offset(), -1);
        assert_eq!(SlidingBlockCode::identity(&a).apply_finite(&x).unwrap(), x);
        let bad = SlidingBlockCode::cellwise(&a, |s| 1 - s);
        assert!(matches!(bad.apply_finite(&x), Err(Error::NotZeroFixing(_))));
    }

    #[test]
    fn alphabet_mismatch() {
        let s = SlidingBlockCode::shift(&ab(2), 1);
        let x = PeriodicConfig::new(&ab(3), vec![2]).unwrap();
        assert!(matches!(s.apply_periodic(&x), Err(Error::AlphabetMismatch(_))));
    }

    #[test]
    fn identity_decisions() {
        let a = ab(2);
        let s = SlidingBlockCode::shift(&a, 1);
        let sinv = SlidingBlockCode::shift(&a, -1);
        let id = SlidingBlockCode::compose(&s, &sinv).unwrap();
        assert_eq!(id.window(), (0, 0));
        assert_eq!(id.is_identity(DEFAULT_WINDOW_BUDGET), IdentityCheck::Identity);
        assert!(matches!(s.is_identity(DEFAULT_WINDOW_BUDGET), IdentityCheck::Differs(_)));
        let ff = SlidingBlockCode::compose(&flip(), &flip()).unwrap();
        assert_eq!(ff.is_identity(DEFAULT_WINDOW_BUDGET), IdentityCheck::Identity);
        let wide = SlidingBlockCode::from_fn(&a, -20, 20, |w| w[20]);
        assert!(matches!(wide.is_identity(1000), IdentityCheck::BudgetExceeded { .. }));
    }

    #[test]
    fn compose_with_identity_matches() {
        let a = ab(3);
        let g = SlidingBlockCode::from_fn(&a, -1, 1, |w| (w[0] + 2 * w[2]) % 3);
        let ig = SlidingBlockCode::compose(&SlidingBlockCode::identity(&a), &g).unwrap();
        for n in 1..=6 {
            for x in PeriodicConfig::all(&a, n) {
                assert_eq!(ig.apply_periodic(&x).unwrap(), g.apply_periodic(&x).unwrap());
            }
        }
    }

    #[test]
    fn tabulate_agrees() {
        let a = ab(3);
        let g = SlidingBlockCode::from_fn(&a, -1, 1, |w| (w[0] + w[1] * w[2]) % 3);
        let t = g.tabulate(1000).unwrap();
        assert!(t.is_tabulated());
        for x in PeriodicConfig::all(&a, 5) {
            assert_eq!(t.apply_periodic(&x).unwrap(), g.apply_periodic(&x).unwrap());
        }
        assert!(g.tabulate(10).is_err());
    }

    #[test]
    fn dilation_acts_on_interleaved_copies() {
        let a = ab(2);
        let s2 = Automorphism::shift(&a).dilate(2);
        let x = PeriodicConfig::new(&a, vec![1, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(s2.forward.apply_periodic(&x).unwrap(), x.rotate(2));
    }
}
