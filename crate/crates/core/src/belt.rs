//! Conveyor belts with floating boundaries.
//!
//! A tape over `Γ = Σ² ∪ {>, <}` is cut by its bad symbols into good runs
//! `>^m u <^n`. Each run is folded into a periodic belt over `Σ` (top track
//! forward, bottom track backward), a map on `Σ`-tapes is applied to the
//! belt, and the result is written back with the wall affixes re-derived.

use std::sync::Arc;

use crate::action::{Generator, TapeMap};
use crate::afo::AfoSpec;
use crate::alphabet::{Alphabet, Symbol};
use crate::code::{Automorphism, SlidingBlockCode};
use crate::config::FiniteConfig;
use crate::error::{Error, Result};
use crate::report::{Record, Report};
use crate::verify::{self, VerifyParams};

/// `Γ` together with the symbol tests used by the run decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeltAlphabet {
    base: Alphabet,
    gamma: Alphabet,
    q: Symbol,
}

/// Role of a position in its periodic context.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymbolClass {
    Good,
    Wall,
    Error,
}

/// Kind of the bad symbol bounding a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Wall,
    Error,
}

/// A maximal good run `>^m u <^n` of a periodic tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    /// First cell of the run; the run may wrap around the period.
    pub start: usize,
    pub len: usize,
    pub prefix: usize,
    pub suffix: usize,
    pub left: Boundary,
    pub right: Boundary,
}

impl Run {
    pub fn core_len(&self) -> usize {
        self.len - self.prefix - self.suffix
    }

    /// Tape indices of the run, in order.
    pub fn cells(&self, period: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).map(move |k| (self.start + k) % period)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunDecomposition {
    Runs(Vec<Run>),
    /// No bad word and every symbol in `Σ²`.
    AllPairs,
    AllLeft,
    AllRight,
}

impl BeltAlphabet {
    pub fn new(base: &Alphabet) -> Result<Self> {
        let q = base.size() as Symbol;
        let mut names = Vec::with_capacity((q * q + 2) as usize);
        for a in base.symbols() {
            for b in base.symbols() {
                names.push(format!("({},{})", base.name(a), base.name(b)));
            }
        }
        names.push(">".to_string());
        names.push("<".to_string());
        let z = base.zero();
        let gamma = Alphabet::new(names, z * q + z)?;
        Ok(Self { base: base.clone(), gamma, q })
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn gamma(&self) -> &Alphabet {
        &self.gamma
    }

    #[inline]
    pub fn left_wall(&self) -> Symbol {
        self.q * self.q
    }

    #[inline]
    pub fn right_wall(&self) -> Symbol {
        self.q * self.q + 1
    }

    #[inline]
    pub fn zero(&self) -> Symbol {
        self.gamma.zero()
    }

    #[inline]
    pub fn is_pair(&self, s: Symbol) -> bool {
        s < self.q * self.q
    }

    /// `(top, bottom)` of a pair symbol; walls read as the zero pair.
    #[inline]
    pub fn tracks_of(&self, s: Symbol) -> (Symbol, Symbol) {
        let s = if self.is_pair(s) { s } else { self.zero() };
        (s / self.q, s % self.q)
    }

    #[inline]
    pub fn pair(&self, top: Symbol, bottom: Symbol) -> Symbol {
        top * self.q + bottom
    }

    /// Membership of `xy` in the good words `>>, >C, BB, C<, <<, ><`.
    #[inline]
    pub fn good_word(&self, x: Symbol, y: Symbol) -> bool {
        let (gt, lt, z) = (self.left_wall(), self.right_wall(), self.zero());
        match (self.is_pair(x), self.is_pair(y)) {
            (true, true) => true,
            (true, false) => y == lt && x != z,
            (false, true) => x == gt && y != z,
            (false, false) => !(x == lt && y == gt),
        }
    }

    /// Class of `x` between neighbours `l` and `r`.
    #[inline]
    pub fn class_at(&self, l: Symbol, x: Symbol, r: Symbol) -> SymbolClass {
        if self.good_word(l, x) && self.good_word(x, r) {
            SymbolClass::Good
        } else if (x == self.left_wall() && l != x) || (x == self.right_wall() && r != x) {
            SymbolClass::Wall
        } else {
            SymbolClass::Error
        }
    }

    pub fn classify(&self, cells: &[Symbol]) -> Vec<SymbolClass> {
        let n = cells.len();
        (0..n)
            .map(|i| self.class_at(cells[(i + n - 1) % n], cells[i], cells[(i + 1) % n]))
            .collect()
    }

    pub fn decompose(&self, cells: &[Symbol]) -> RunDecomposition {
        let n = cells.len();
        let classes = self.classify(cells);
        let Some(bad) = classes.iter().position(|&c| c != SymbolClass::Good) else {
            return match cells[0] {
                s if s == self.left_wall() => RunDecomposition::AllLeft,
                s if s == self.right_wall() => RunDecomposition::AllRight,
                _ => RunDecomposition::AllPairs,
            };
        };
        let boundary = |i: usize| match classes[i] {
            SymbolClass::Wall => Boundary::Wall,
            _ => Boundary::Error,
        };
        let mut runs = Vec::new();
        let mut k = 1;
        while k <= n {
            let i = (bad + k) % n;
            if classes[i] != SymbolClass::Good {
                k += 1;
                continue;
            }
            let mut len = 0;
            while classes[(i + len) % n] == SymbolClass::Good {
                len += 1;
            }
            let at = |j: usize| cells[(i + j) % n];
            let prefix = (0..len).take_while(|&j| at(j) == self.left_wall()).count();
            let suffix = (prefix..len).rev().take_while(|&j| at(j) == self.right_wall()).count();
            runs.push(Run {
                start: i,
                len,
                prefix,
                suffix,
                left: boundary((i + n - 1) % n),
                right: boundary((i + len) % n),
            });
            k += len;
        }
        RunDecomposition::Runs(runs)
    }

    /// Folds run cells into the belt `s·tᴿ` over `Σ`, walls read as zero.
    pub fn belt_encode(&self, run: &[Symbol]) -> Vec<Symbol> {
        let mut belt: Vec<Symbol> = run.iter().map(|&c| self.tracks_of(c).0).collect();
        belt.extend(run.iter().rev().map(|&c| self.tracks_of(c).1));
        belt
    }

    /// Inverse of the fold: pair symbols only, no walls.
    pub fn belt_decode(&self, belt: &[Symbol]) -> Vec<Symbol> {
        let l = belt.len() / 2;
        (0..l).map(|i| self.pair(belt[i], belt[2 * l - 1 - i])).collect()
    }

    /// Writes pairs back, turning the maximal zero prefix into `>` and the
    /// maximal zero suffix into `<` where requested.
    pub fn with_affixes(&self, pairs: &[Symbol], prefix: bool, suffix: bool) -> Vec<Symbol> {
        let z = self.zero();
        let l = pairs.len();
        let m = if prefix { pairs.iter().take_while(|&&c| c == z).count() } else { 0 };
        let n = if suffix { pairs[m..].iter().rev().take_while(|&&c| c == z).count() } else { 0 };
        (0..l)
            .map(|i| {
                if i < m {
                    self.left_wall()
                } else if i >= l - n {
                    self.right_wall()
                } else {
                    pairs[i]
                }
            })
            .collect()
    }
}

#[derive(Clone)]
enum Source {
    Code(SlidingBlockCode),
    Afo(AfoSpec),
}

/// One direction of an embedded automorphism, evaluated run by run.
#[derive(Clone)]
pub struct BeltMap {
    belt: BeltAlphabet,
    source: Source,
    radius: usize,
}

impl BeltMap {
    pub fn belt(&self) -> &BeltAlphabet {
        &self.belt
    }

    /// Radius of the windowed evaluator.
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Global evaluator: the run decomposition of the whole tape.
    pub fn apply_global(&self, x: &[Symbol]) -> Vec<Symbol> {
        let b = &self.belt;
        match b.decompose(x) {
            RunDecomposition::AllLeft | RunDecomposition::AllRight => x.to_vec(),
            RunDecomposition::AllPairs => match &self.source {
                Source::Afo(_) => x.to_vec(),
                Source::Code(f) => {
                    let top: Vec<Symbol> = x.iter().map(|&c| b.tracks_of(c).0).collect();
                    let mut bottom: Vec<Symbol> = x.iter().rev().map(|&c| b.tracks_of(c).1).collect();
                    let top = f.apply_cells(&top);
                    bottom = f.apply_cells(&bottom);
                    bottom.reverse();
                    top.iter().zip(&bottom).map(|(&s, &t)| b.pair(s, t)).collect()
                }
            },
            RunDecomposition::Runs(runs) => {
                let mut out = x.to_vec();
                for run in &runs {
                    self.apply_run(x, run, &mut out);
                }
                out
            }
        }
    }

    fn apply_run(&self, x: &[Symbol], run: &Run, out: &mut [Symbol]) {
        if run.core_len() == 0 {
            return;
        }
        let n = x.len();
        let cells: Vec<Symbol> = run.cells(n).map(|i| x[i]).collect();
        let belt = self.belt.belt_encode(&cells);
        let walls = (run.left == Boundary::Wall, run.right == Boundary::Wall);
        let image = match &self.source {
            Source::Code(f) => f.apply_cells(&belt),
            Source::Afo(a) => {
                if walls != (true, true) || a.safe.locate(&belt).is_none() {
                    return;
                }
                a.apply_cells(&belt)
            }
        };
        let pairs = self.belt.belt_decode(&image);
        let written = self.belt.with_affixes(&pairs, walls.0, walls.1);
        for (i, s) in run.cells(n).zip(written) {
            out[i] = s;
        }
    }

    /// Output at the centre of a window of radius [`Self::radius`].
    ///
    /// The run through the centre is cut out of the window; an edge that is
    /// not visible is replaced by a canonical context far enough away not to
    /// influence the centre, and the global evaluator is run on the result.
    pub fn eval_window(&self, w: &[Symbol]) -> Symbol {
        let b = &self.belt;
        let r = self.radius;
        debug_assert_eq!(w.len(), 2 * r + 1);
        let good = |j: usize| b.class_at(w[j - 1], w[j], w[j + 1]) == SymbolClass::Good;
        if !good(r) {
            return w[r];
        }
        let (gt, lt, z) = (b.left_wall(), b.right_wall(), b.zero());
        let mut lo = r;
        while lo >= 2 && good(lo - 1) {
            lo -= 1;
        }
        let mut hi = r;
        while hi + 2 <= 2 * r && good(hi + 1) {
            hi += 1;
        }
        let mut tape = Vec::with_capacity(4 * r + 8);
        if lo >= 2 {
            tape.extend_from_slice(&w[lo - 2..lo]);
        } else if w[lo] == gt {
            tape.extend([lt, gt]);
            tape.extend(std::iter::repeat(gt).take(r));
        } else if w[lo] == lt {
            tape.extend([lt, gt]);
        } else {
            tape.extend([lt, z]);
        }
        let centre = tape.len() + (r - lo);
        tape.extend_from_slice(&w[lo..=hi]);
        if hi + 2 <= 2 * r {
            tape.extend_from_slice(&w[hi + 1..=hi + 2]);
        } else if w[hi] == lt {
            tape.extend(std::iter::repeat(lt).take(r + 1));
            tape.push(gt);
        } else if w[hi] == gt {
            tape.extend([lt, gt]);
        } else {
            tape.extend([z, gt]);
        }
        self.apply_global(&tape)[centre]
    }

    /// The windowed evaluator as a sliding block code on `Γ`.
    pub fn windowed(&self) -> SlidingBlockCode {
        let me = self.clone();
        let r = self.radius as isize;
        SlidingBlockCode::from_fn(self.belt.gamma(), -r, r, move |w| me.eval_window(w))
    }
}

impl TapeMap for BeltMap {
    fn alphabet(&self) -> &Alphabet {
        self.belt.gamma()
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        self.apply_global(cells)
    }
}

/// An automorphism of `Γ^Z` simulating a zero-fixing automorphism or an AFO on belts.
#[derive(Clone)]
pub struct EmbeddedAutomorphism {
    pub name: String,
    pub doubling: bool,
    pub forward: Arc<BeltMap>,
    pub backward: Arc<BeltMap>,
}

impl EmbeddedAutomorphism {
    pub fn belt(&self) -> &BeltAlphabet {
        self.forward.belt()
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.belt().gamma()
    }

    pub fn radius(&self) -> usize {
        self.forward.radius().max(self.backward.radius())
    }

    pub fn inverse(&self) -> Self {
        Self {
            name: format!("{}^-1", self.name),
            doubling: self.doubling,
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn generator(&self, name: impl Into<String>) -> Generator {
        Generator::new(name, self.forward.clone(), self.backward.clone())
    }
}

/// Radius shared by a code and its inverse.
fn code_radius(f: &Automorphism) -> usize {
    f.forward.radius().max(f.backward.radius())
}

pub fn embed_automorphism(f: &Automorphism, doubling: bool) -> Result<EmbeddedAutomorphism> {
    if !(f.forward.maps_zero_to_zero() && f.backward.maps_zero_to_zero()) {
        return Err(Error::NotZeroFixing(format!("{} moves the zero point", f.name)));
    }
    let belt = BeltAlphabet::new(f.alphabet())?;
    let (g, factor) = if doubling { (f.dilate(2), 2) } else { (f.clone(), 1) };
    let radius = code_radius(f) * factor + 2;
    let map = |code: &SlidingBlockCode| {
        Arc::new(BeltMap { belt: belt.clone(), source: Source::Code(code.clone()), radius })
    };
    Ok(EmbeddedAutomorphism {
        name: format!("belt({})", f.name),
        doubling,
        forward: map(&g.forward),
        backward: map(&g.backward),
    })
}

/// Radius for an AFO: the whole designated core, its largest displacement and the walls.
fn afo_radius(a: &AfoSpec) -> usize {
    let len = a.safe.words().iter().map(Vec::len).max().unwrap_or(0);
    let off = a.offsets.iter().map(|o| o.unsigned_abs() as usize).max().unwrap_or(0);
    (2 * len + off + 3).max(a.safe.threshold() + 2)
}

pub fn embed_afo(a: &AfoSpec, name: &str, doubling: bool) -> Result<EmbeddedAutomorphism> {
    let belt = BeltAlphabet::new(a.alphabet())?;
    let fwd = if doubling { a.doubled()? } else { a.clone() };
    let bwd = fwd.inverse();
    let radius = afo_radius(&fwd);
    let map = |s: AfoSpec| Arc::new(BeltMap { belt: belt.clone(), source: Source::Afo(s), radius });
    Ok(EmbeddedAutomorphism {
        name: format!("belt({name})"),
        doubling,
        forward: map(fwd),
        backward: map(bwd),
    })
}

/// Places `x` on a wall-bounded belt, runs the embedding and compares the
/// top track with the direct image of `x`.
pub fn simulate_check(f: &Automorphism, x: &FiniteConfig, doubling: bool) -> Result<bool> {
    let e = embed_automorphism(f, doubling)?;
    let b = e.belt();
    let code = if doubling { f.dilate(2).forward } else { f.forward.clone() };
    let r = code.radius() as i64;
    let (a, z) = x.support().unwrap_or((0, 0));
    let lo = a - r - 1;
    let len = (z - a + 1 + 2 * r + 2) as usize;
    let pairs: Vec<Symbol> = (0..len).map(|k| b.pair(x.at(lo + k as i64), b.base().zero())).collect();
    let mut tape = vec![b.left_wall()];
    tape.extend(b.with_affixes(&pairs, true, true));
    tape.push(b.right_wall());
    let out = e.forward.apply_global(&tape);
    let expected = code.apply_finite(x)?.window(lo, lo + len as i64 - 1);
    let walls_kept = out[0] == tape[0] && out[len + 1] == tape[len + 1];
    let tracks: Vec<(Symbol, Symbol)> = out[1..=len].iter().map(|&c| b.tracks_of(c)).collect();
    let top_ok = tracks.iter().map(|t| t.0).eq(expected);
    let bottom_ok = tracks.iter().all(|t| t.1 == b.base().zero());
    Ok(walls_kept && top_ok && bottom_ok)
}

/// A wall/wall run whose belt is `belt`, bounded by its two walls.
pub fn wall_run_tape(b: &BeltAlphabet, belt: &[Symbol]) -> Vec<Symbol> {
    let mut tape = vec![b.left_wall()];
    tape.extend(b.with_affixes(&b.belt_decode(belt), true, true));
    tape.push(b.right_wall());
    tape
}

fn show(b: &BeltAlphabet, cells: &[Symbol]) -> String {
    verify::show(b.gamma(), cells)
}

/// Bad symbols are never modified.
pub fn check_bad_symbols(suite: &str, map: &BeltMap, name: &str, params: &VerifyParams) -> Record {
    let b = map.belt();
    let (bad, scope) = verify::counterexample(b.gamma(), params, |c| {
        let out = map.apply_global(c);
        b.classify(c)
            .iter()
            .zip(c.iter().zip(&out))
            .all(|(&k, (x, y))| k == SymbolClass::Good || x == y)
    });
    Record::check(suite, format!("{name}.bad_symbols_fixed"), bad.is_none(), || {
        show(b, bad.as_deref().unwrap())
    })
    .with_detail(scope)
}

/// Global and windowed evaluators agree.
pub fn check_agreement(suite: &str, map: &BeltMap, name: &str, params: &VerifyParams) -> Record {
    let b = map.belt();
    let windowed = map.windowed();
    let (bad, scope) = verify::counterexample(b.gamma(), params, |c| {
        map.apply_global(c) == windowed.apply_cells(c)
    });
    Record::check(suite, format!("{name}.windowed_agrees"), bad.is_none(), || {
        show(b, bad.as_deref().unwrap())
    })
    .with_detail(format!("radius={} {scope}", map.radius()))
}

/// Wall/wall runs keep a nonzero core and move their first nonzero cell
/// by at most `bound`, over every nonzero belt of half-length `1..=max_len`.
pub fn check_core_drift(suite: &str, e: &EmbeddedAutomorphism, bound: usize, max_len: usize) -> Record {
    let b = e.belt();
    let z = b.zero();
    let first = |cells: &[Symbol]| cells.iter().position(|&c| b.is_pair(c) && c != z);
    let periods: Vec<usize> = (1..=max_len).map(|l| 2 * l).collect();
    let bad = verify::find_tape(b.base(), &periods, |belt| {
        if belt.iter().all(|&c| c == b.base().zero()) {
            return None;
        }
        let tape = wall_run_tape(b, belt);
        let out = e.forward.apply_global(&tape);
        match (first(&tape), first(&out)) {
            (Some(m), Some(m2)) if m.abs_diff(m2) <= bound => None,
            _ => Some(tape),
        }
    });
    Record::check(suite, format!("{}.core_drift", e.name), bad.is_none(), || {
        show(b, bad.as_deref().unwrap())
    })
    .with_detail(format!("bound={bound} half_lengths<={max_len}"))
}

/// With doubling on, belts whose odd cells are zero carry the action on the
/// even cells alone, for every tape length `1..=max_len` including odd ones.
pub fn check_half_tape(
    suite: &str,
    e: &EmbeddedAutomorphism,
    reference: &dyn TapeMap,
    max_len: usize,
) -> Record {
    let b = e.belt();
    let z = b.base().zero();
    let periods: Vec<usize> = (1..=max_len).collect();
    let bad = verify::find_tape(b.base(), &periods, |y| {
        if y.iter().all(|&c| c == z) {
            return None;
        }
        let belt: Vec<Symbol> = y.iter().flat_map(|&c| [c, z]).collect();
        let tape = wall_run_tape(b, &belt);
        let out = e.forward.apply_global(&tape);
        let image = b.belt_encode(&out[1..out.len() - 1]);
        let evens: Vec<Symbol> = image.iter().step_by(2).copied().collect();
        let odds_zero = image.iter().skip(1).step_by(2).all(|&c| c == z);
        (!(odds_zero && evens == reference.apply_cells(y))).then(|| y.to_vec())
    });
    Record::check(suite, format!("{}.half_tape", e.name), bad.is_none(), || {
        verify::show(b.base(), bad.as_deref().unwrap())
    })
    .with_detail(format!("lengths<={max_len}"))
}

/// Inverse, bad-symbol and evaluator-agreement checks.
pub fn verify_embedding(e: &EmbeddedAutomorphism, params: &VerifyParams) -> Report {
    let suite = "belt";
    let mut report = Report::new();
    report.push(verify::check_inverse_pair(suite, &e.name, &*e.forward, &*e.backward, params));
    report.push(check_bad_symbols(suite, &e.forward, &e.name, params));
    report.push(check_agreement(suite, &e.forward, &e.name, params));
    report.push(check_agreement(suite, &e.backward, &format!("{}^-1", e.name), params));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sigma3() -> Alphabet {
        Alphabet::numeric(3).unwrap()
    }

    fn belt2() -> BeltAlphabet {
        BeltAlphabet::new(&Alphabet::numeric(2).unwrap()).unwrap()
    }

    fn parse(b: &BeltAlphabet, s: &str) -> Vec<Symbol> {
        s.split_whitespace().map(|t| b.gamma().lookup(t).unwrap()).collect()
    }

    #[test]
    fn alphabet_shape() {
        let b = BeltAlphabet::new(&sigma3()).unwrap();
        assert_eq!(b.gamma().size(), 11);
        assert_eq!(b.gamma().name(b.zero()), "(0,0)");
        assert_eq!(b.gamma().name(b.left_wall()), ">");
    }

    #[test]
    fn classification_examples() {
        use SymbolClass::*;
        let b = belt2();
        assert_eq!(b.classify(&parse(&b, "> (1,0) <")), vec![Wall, Good, Wall]);
        assert_eq!(b.classify(&parse(&b, "(0,0) (0,0)")), vec![Good, Good]);
        assert_eq!(b.classify(&parse(&b, "< >")), vec![Wall, Wall]);
        // >0 is bad: the 0 is an error, the > a wall (left neighbour is 1)
        assert_eq!(b.classify(&parse(&b, "(1,0) > (0,0)")), vec![Error, Wall, Error]);
        // cyclically (1,1) precedes the first >, which is the wall; the second > is an error
        assert_eq!(b.classify(&parse(&b, "> > (0,0) (1,1)")), vec![Wall, Error, Error, Error]);
    }

    #[test]
    fn good_words_exact() {
        let b = belt2();
        let (gt, lt, z, c) = (b.left_wall(), b.right_wall(), b.zero(), b.pair(1, 0));
        let good = [(gt, gt), (gt, c), (z, c), (c, z), (c, lt), (lt, lt), (gt, lt)];
        let bad = [(lt, gt), (z, gt), (c, gt), (lt, z), (lt, c), (gt, z), (z, lt)];
        assert!(good.iter().all(|&(x, y)| b.good_word(x, y)));
        assert!(bad.iter().all(|&(x, y)| !b.good_word(x, y)));
    }

    #[test]
    fn decompose_single_run() {
        let b = belt2();
        // < > > (1,0) < < >
        let tape = parse(&b, "< > > (1,0) < < >");
        let RunDecomposition::Runs(runs) = b.decompose(&tape) else { panic!() };
        assert_eq!(runs.len(), 1);
        let r = &runs[0];
        assert_eq!((r.start, r.len, r.prefix, r.core_len(), r.suffix), (2, 3, 1, 1, 1));
        assert_eq!((r.left, r.right), (Boundary::Wall, Boundary::Wall));
        assert_eq!(b.decompose(&parse(&b, "> > >")), RunDecomposition::AllLeft);
        assert_eq!(b.decompose(&parse(&b, "(1,0) (0,0)")), RunDecomposition::AllPairs);
    }

    #[test]
    fn fold_examples() {
        let b = belt2();
        assert_eq!(b.belt_encode(&parse(&b, "> (1,0) <")), vec![0, 1, 0, 0, 0, 0]);
        assert_eq!(b.belt_encode(&parse(&b, "(1,1)")), vec![1, 1]);
        let belt = vec![1, 0, 1, 1, 0, 0];
        assert_eq!(b.belt_encode(&b.belt_decode(&belt)), belt);
    }

    #[test]
    fn shift_on_wall_run() {
        let a = Alphabet::numeric(2).unwrap();
        let e = embed_automorphism(&Automorphism::shift(&a), false).unwrap();
        let b = e.belt().clone();
        let tape = parse(&b, "< > > (1,0) < < >");
        let out = e.forward.apply_global(&tape);
        assert_eq!(out, parse(&b, "< > (1,0) < < < >"));
    }

    #[test]
    fn shift_on_error_run_writes_verbatim() {
        let a = Alphabet::numeric(2).unwrap();
        let e = embed_automorphism(&Automorphism::shift(&a), false).unwrap();
        let b = e.belt().clone();
        // the first and last 0 pairs are errors (<0 and 0>)
        let tape = parse(&b, "< (0,0) (0,0) (1,0) (0,0) >");
        let out = e.forward.apply_global(&tape);
        assert_eq!(out, parse(&b, "< (0,0) (1,0) (0,0) (0,0) >"));
    }

    #[test]
    fn identity_embeds_to_identity() {
        let e = embed_automorphism(&Automorphism::identity(&Alphabet::numeric(2).unwrap()), false).unwrap();
        let b = e.belt().clone();
        let bad = verify::find_tape(b.gamma(), &[1, 2, 3, 4, 5, 6], |c| {
            (e.forward.apply_global(c) != c).then(|| c.to_vec())
        });
        assert_eq!(bad, None);
    }

    #[test]
    fn shift_embedding_sound() {
        let e = embed_automorphism(&Automorphism::shift(&sigma3()), false).unwrap();
        let params = VerifyParams { max_period: 4, random_count: 200, random_max_period: 30, ..Default::default() };
        let r = verify_embedding(&e, &params);
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn doubled_shift_sound_and_simulates_half_tapes() {
        let a = Alphabet::numeric(2).unwrap();
        let f = Automorphism::shift(&a);
        let e = embed_automorphism(&f, true).unwrap();
        let params = VerifyParams { max_period: 5, random_count: 200, random_max_period: 30, ..Default::default() };
        let r = verify_embedding(&e, &params);
        assert!(r.all_passed(), "{r}");
        assert!(check_half_tape("belt", &e, &f.forward, 6).status == crate::report::Status::Pass);
    }

    #[test]
    fn drift_within_radius() {
        let f = Automorphism::shift(&sigma3());
        let e = embed_automorphism(&f, false).unwrap();
        let r = check_core_drift("belt", &e, 1, 4);
        assert_eq!(r.status, crate::report::Status::Pass, "{r}");
    }

    #[test]
    fn simulation_on_finite_points() {
        let a = Alphabet::numeric(2).unwrap();
        let x = FiniteConfig::new(&a, 3, vec![1, 0, 1, 1]).unwrap();
        for f in [Automorphism::identity(&a), Automorphism::shift(&a), Automorphism::shift(&a).inverse()] {
            assert!(simulate_check(&f, &x, false).unwrap());
            assert!(simulate_check(&f, &x, true).unwrap());
        }
    }

    #[test]
    fn non_zero_fixing_rejected() {
        let a = Alphabet::numeric(2).unwrap();
        let swap = Automorphism::symbol_permutation("swap", &a, vec![1, 0]).unwrap();
        assert!(embed_automorphism(&swap, false).is_err());
    }
}
