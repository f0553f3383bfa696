//! Wreath products `A ≀_{x₀} H` from a pointy action of `H` and a finitely
//! generated abelian `A`, realized on conveyor belts.
//!
//! The derived alphabet is the top alphabet (flattened into its tracks)
//! followed by one track per base factor: a `{0,1}` marker for each free
//! factor and a `Z_m` value for each finite one. Base generators are AFOs that
//! act on the special point's core with the base data sitting on its first cell.

use std::collections::HashMap;

use crate::action::{reduced_words, GeneratorTable, GroupWord};
use crate::afo::{AfoSpec, SafeWordSet};
use crate::alphabet::{Alphabet, Symbol};
use crate::belt::{embed_afo, embed_automorphism, BeltAlphabet, EmbeddedAutomorphism};
use crate::code::{Automorphism, SlidingBlockCode};
use crate::config::FiniteConfig;
use crate::error::{Error, Result};
use crate::level::LevelTables;
use crate::pointy::{lamplighter_action, lamplighter_oracle, PointyAction};
use crate::report::{Record, Report, Status};
use crate::verify::show;

#[derive(Clone, Debug)]
pub struct WreathSpec {
    pub top: PointyAction,
    pub free_rank: usize,
    pub moduli: Vec<u32>,
    alphabet: Alphabet,
    top_tracks: usize,
}

/// Top symbol of a derived symbol.
fn top_of(derived: &Alphabet, top: &Alphabet, k: usize, s: Symbol) -> Symbol {
    let parts = derived.split(s).expect("derived alphabet has tracks");
    if top.tracks().is_some() {
        top.join(&parts[..k]).expect("top tracks")
    } else {
        parts[0]
    }
}

/// `s` with its top part replaced.
fn with_top(derived: &Alphabet, top: &Alphabet, k: usize, s: Symbol, t: Symbol) -> Symbol {
    let mut parts = derived.split(s).expect("derived alphabet has tracks");
    if top.tracks().is_some() {
        parts[..k].copy_from_slice(&top.split(t).expect("top tracks"));
    } else {
        parts[0] = t;
    }
    derived.join(&parts).expect("valid tracks")
}

impl WreathSpec {
    pub fn new(top: PointyAction, free_rank: usize, moduli: Vec<u32>) -> Result<Self> {
        if free_rank == 0 && moduli.is_empty() {
            return Err(Error::InvalidArgument("empty base signature".into()));
        }
        if moduli.iter().any(|&m| m < 2) {
            return Err(Error::InvalidArgument(format!("base moduli {moduli:?} must be at least 2")));
        }
        if top.special.is_zero() {
            return Err(Error::InvalidArgument("special point has empty core".into()));
        }
        let mut tracks: Vec<Alphabet> = match top.alphabet.tracks() {
            Some(t) => t.to_vec(),
            None => vec![top.alphabet.clone()],
        };
        let top_tracks = tracks.len();
        for _ in 0..free_rank {
            tracks.push(Alphabet::numeric(2)?);
        }
        for &m in &moduli {
            tracks.push(Alphabet::numeric(m as usize)?);
        }
        let alphabet = Alphabet::product(tracks)?;
        Ok(Self { top, free_rank, moduli, alphabet, top_tracks })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn top_part(&self, s: Symbol) -> Symbol {
        top_of(&self.alphabet, &self.top.alphabet, self.top_tracks, s)
    }

    /// Track holding base factor `j`; free factors come first.
    pub fn base_track(&self, j: usize) -> usize {
        self.top_tracks + j
    }

    fn lift_code(&self, c: &SlidingBlockCode) -> SlidingBlockCode {
        let (clo, chi) = c.window();
        let (lo, hi) = (clo.min(0), chi.max(0));
        let (centre, skip, width) = ((-lo) as usize, (clo - lo) as usize, c.width());
        let (d, t, k, inner) = (self.alphabet.clone(), self.top.alphabet.clone(), self.top_tracks, c.clone());
        SlidingBlockCode::from_fn(&self.alphabet, lo, hi, move |w| {
            let picked: Vec<Symbol> = w[skip..skip + width].iter().map(|&s| top_of(&d, &t, k, s)).collect();
            with_top(&d, &t, k, w[centre], inner.eval(&picked))
        })
    }

    /// A top generator acting on the top tracks only.
    pub fn lift(&self, g: &Automorphism) -> Result<Automorphism> {
        if !g.alphabet().same(&self.top.alphabet) {
            return Err(Error::AlphabetMismatch(format!("generator {} is not over the top alphabet", g.name)));
        }
        Automorphism::new(g.name.clone(), self.lift_code(&g.forward), self.lift_code(&g.backward))
    }

    /// The core `u` of the special point on the top tracks, with `base[j]`
    /// written on track of factor `j` at the first cell.
    pub fn core_word(&self, base: &[Symbol]) -> Vec<Symbol> {
        let z = self.alphabet.zero();
        self.top
            .core()
            .iter()
            .enumerate()
            .map(|(i, &t)| {
                let mut parts = self.alphabet.split(with_top(&self.alphabet, &self.top.alphabet, self.top_tracks, z, t)).unwrap();
                if i == 0 {
                    for (j, &b) in base.iter().enumerate() {
                        parts[self.base_track(j)] = b;
                    }
                }
                self.alphabet.join(&parts).unwrap()
            })
            .collect()
    }

    /// The lifted special point with every free marker set.
    pub fn special_point(&self) -> FiniteConfig {
        let mut base = vec![1; self.free_rank];
        base.extend(self.moduli.iter().map(|_| 0));
        FiniteConfig::new(&self.alphabet, self.top.special.offset(), self.core_word(&base)).unwrap()
    }

    fn base_zero(&self) -> Vec<Symbol> {
        vec![0; self.free_rank + self.moduli.len()]
    }

    pub fn free_base_afo(&self, j: usize) -> Result<AfoSpec> {
        if j >= self.free_rank {
            return Err(Error::InvalidArgument(format!("no free base factor {j}")));
        }
        let mut base = self.base_zero();
        base[j] = 1;
        let safe = SafeWordSet::with_minimal_threshold(&self.alphabet, vec![self.core_word(&base)])?;
        AfoSpec::new(safe, vec![0], vec![1])
    }

    /// Finite factor `j` (counted among the finite ones) with the value raised by `increment`.
    pub fn finite_base_afo(&self, j: usize, increment: u32) -> Result<AfoSpec> {
        let m = *self
            .moduli
            .get(j)
            .ok_or_else(|| Error::InvalidArgument(format!("no finite base factor {j}")))?;
        let words = (0..m)
            .map(|a| {
                let mut base = self.base_zero();
                base[self.free_rank + j] = a as Symbol;
                self.core_word(&base)
            })
            .collect();
        let safe = SafeWordSet::with_minimal_threshold(&self.alphabet, words)?;
        let pi = (0..m).map(|a| ((a + increment) % m) as usize).collect();
        AfoSpec::new(safe, pi, vec![0; m as usize])
    }

    /// Base generator names: `U` or `U1, U2, ...` for free factors, `A` or `A1, ...` for finite ones.
    pub fn base_names(&self) -> Vec<String> {
        let label = |p: &str, i: usize, n: usize| if n == 1 { p.to_string() } else { format!("{p}{}", i + 1) };
        let mut out: Vec<String> = (0..self.free_rank).map(|i| label("U", i, self.free_rank)).collect();
        out.extend((0..self.moduli.len()).map(|i| label("A", i, self.moduli.len())));
        out
    }

    /// Lifted and belt-embedded top generators followed by the base generators.
    pub fn generator_table(&self, doubling: bool) -> Result<GeneratorTable> {
        let belt = BeltAlphabet::new(&self.alphabet)?;
        let mut table = GeneratorTable::new(belt.gamma());
        for g in &self.top.generators {
            table.insert(embed_automorphism(&self.lift(g)?, doubling)?.generator(g.name.clone()))?;
        }
        let names = self.base_names();
        for j in 0..self.free_rank {
            table.insert(build_free_base_generator(self, j, doubling)?.1.generator(names[j].clone()))?;
        }
        for j in 0..self.moduli.len() {
            let e = build_finite_base_generator(self, j, 1, doubling)?.1;
            table.insert(e.generator(names[self.free_rank + j].clone()))?;
        }
        Ok(table)
    }
}

pub fn build_free_base_generator(spec: &WreathSpec, j: usize, doubling: bool) -> Result<(AfoSpec, EmbeddedAutomorphism)> {
    let a = spec.free_base_afo(j)?;
    let e = embed_afo(&a, &spec.base_names()[j], doubling)?;
    Ok((a, e))
}

pub fn build_finite_base_generator(
    spec: &WreathSpec,
    j: usize,
    increment: u32,
    doubling: bool,
) -> Result<(AfoSpec, EmbeddedAutomorphism)> {
    let a = spec.finite_base_afo(j, increment)?;
    let e = embed_afo(&a, &spec.base_names()[spec.free_rank + j], doubling)?;
    Ok((a, e))
}

/// The `Z ≀ (Z_2 ≀ Z)` instance: tracks (position, lamp, marker).
pub fn example_zz2z_spec() -> Result<WreathSpec> {
    WreathSpec::new(lamplighter_action(&[2])?, 1, vec![])
}

/// Generators `L, R, F, U, D` over `(({0,1}³))² ∪ {<,>}`.
pub fn assemble_example_zz2z() -> Result<GeneratorTable> {
    let spec = example_zz2z_spec()?;
    let t = spec.lift(spec.top.generator("T")?)?;
    let f = spec.lift(spec.top.generator("F")?)?;
    let left = embed_automorphism(&t, false)?;
    let up = build_free_base_generator(&spec, 0, false)?.1;
    let belt = left.belt().clone();
    GeneratorTable::new(belt.gamma())
        .with(left.generator("L"))?
        .with(left.inverse().generator("R"))?
        .with(embed_automorphism(&f, false)?.generator("F"))?
        .with(up.generator("U"))?
        .with(up.inverse().generator("D"))
}

pub const FIGURE_WORD: &str = "(FL)^3 ULUFRD^4LFR";
pub const EXAMPLE_WORD: &str = "ULUFRD^4LFR";

/// Cell ranges of the three good runs in the sample tape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleLayout {
    pub runs: [std::ops::Range<usize>; 3],
    pub error_zone: std::ops::Range<usize>,
}

/// A curated tape showing the three behaviours of `ULUFRD^4LFR`: a wall/wall
/// run in the identity state, one in state `LFR`, then after an error zone a
/// run with an error on its right, two heads and two markers.
pub fn example_zz2z_sample() -> Result<(Vec<Symbol>, SampleLayout)> {
    let spec = example_zz2z_spec()?;
    let b = BeltAlphabet::new(spec.alphabet())?;
    let sym = |h: Symbol, l: Symbol, m: Symbol| spec.alphabet().join(&[h, l, m]).unwrap();
    let z = spec.alphabet().zero();
    let belt_len = 14;
    let mut belt1 = vec![z; belt_len];
    belt1[3] = sym(1, 0, 1);
    let mut belt2 = vec![z; belt_len];
    belt2[3] = sym(1, 0, 1);
    belt2[4] = sym(0, 1, 0);
    let mut tape = Vec::new();
    let mut runs = Vec::new();
    for belt in [&belt1, &belt2] {
        let t = crate::belt::wall_run_tape(&b, belt);
        runs.push(tape.len() + 1..tape.len() + t.len() - 1);
        tape.extend(t);
    }
    let zone = tape.len()..tape.len() + 2;
    tape.extend([b.zero(), b.zero()]);
    // third run: left wall, heads and markers on both tracks, an error on the right
    let mut pairs = vec![b.zero(); 7];
    pairs[1] = b.pair(sym(1, 0, 1), z);
    pairs[2] = b.pair(z, sym(0, 0, 1));
    pairs[4] = b.pair(sym(1, 1, 0), z);
    tape.push(b.left_wall());
    let start = tape.len();
    tape.extend(b.with_affixes(&pairs, true, false));
    runs.push(start..tape.len());
    tape.push(b.zero());
    let runs: [std::ops::Range<usize>; 3] = runs.try_into().unwrap();
    Ok((tape, SampleLayout { runs, error_zone: zone }))
}

/// Tapes sampled for witnesses: the special point on wall/wall runs of every
/// Γ-period up to `max_period`, pushed around by every reduced word of
/// length at most `depth` over `names`.
pub fn designated_tapes(
    table: &GeneratorTable,
    b: &BeltAlphabet,
    special: &[Symbol],
    names: &[&str],
    depth: usize,
    max_period: usize,
) -> Result<Vec<Vec<Symbol>>> {
    if !b.gamma().same(table.alphabet()) {
        return Err(Error::AlphabetMismatch("table is not over this belt alphabet".into()));
    }
    let words = reduced_words(names, depth);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for n in 3..=max_period {
        let belt_len = 2 * (n - 2);
        if belt_len < special.len() {
            continue;
        }
        let mut belt = vec![b.base().zero(); belt_len];
        belt[..special.len()].copy_from_slice(special);
        let start = crate::belt::wall_run_tape(&b, &belt);
        for w in &words {
            let t = table.apply_cells(w, &start)?;
            if seen.insert(t.clone()) {
                out.push(t);
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub relations: Vec<GroupWord>,
    pub non_relations: Vec<GroupWord>,
}

#[derive(Clone, Debug)]
pub struct SuiteParams {
    /// Relations are checked on every tape of period `1..=max_period`...
    pub max_period: usize,
    /// ...skipping periods with more tapes than this.
    pub tape_budget: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        Self { max_period: 4, tape_budget: 20_000_000 }
    }
}

/// Relations must act trivially on every enumerated tape; each non-relation
/// needs a witness among the enumerated or designated tapes, otherwise it is
/// reported inconclusive.
pub fn relation_suite(
    suite: &str,
    table: &GeneratorTable,
    pres: &Presentation,
    params: &SuiteParams,
    designated: &[Vec<Symbol>],
) -> Result<Report> {
    let a = table.alphabet().clone();
    let mut broken: Vec<Option<(usize, Vec<Symbol>)>> = vec![None; pres.relations.len()];
    let mut witness: Vec<Option<Vec<Symbol>>> = vec![None; pres.non_relations.len()];
    let mut periods = Vec::new();
    for n in 1..=params.max_period {
        let Ok(level) = LevelTables::build(table, n, params.tape_budget) else { continue };
        periods.push(n);
        for (i, w) in pres.relations.iter().enumerate() {
            if broken[i].is_none() {
                broken[i] = level.moved(w)?.map(|x| (n, level.cells(x)));
            }
        }
        for (i, w) in pres.non_relations.iter().enumerate() {
            if witness[i].is_none() {
                witness[i] = level.moved(w)?.map(|x| level.cells(x));
            }
        }
    }
    for (i, w) in pres.non_relations.iter().enumerate() {
        if witness[i].is_none() {
            witness[i] = designated
                .iter()
                .find(|t| table.apply_cells(w, t).map(|y| &y != *t).unwrap_or(false))
                .cloned();
        }
    }
    let mut report = Report::new();
    let scope = format!("periods={periods:?} designated={}", designated.len());
    for (w, bad) in pres.relations.iter().zip(broken) {
        report.push(
            Record::check(suite, format!("relation[{w}]"), bad.is_none(), || {
                let (n, c) = bad.clone().unwrap();
                format!("period={n} tape={}", show(&a, &c))
            })
            .with_detail(scope.clone()),
        );
    }
    for (w, found) in pres.non_relations.iter().zip(witness) {
        let check = format!("non_relation[{w}]");
        report.push(match found {
            Some(t) => Record::pass(suite, check).with_witness(show(&a, &t)),
            None => Record::new(suite, check, Status::Inconclusive).with_detail(scope.clone()),
        });
    }
    Ok(report)
}

fn conj(a: &GroupWord, b: &GroupWord) -> GroupWord {
    GroupWord::conjugate(a, b)
}

/// Relations and non-relations of `Z ≀ (Z_2 ≀ Z)` over `L, F, U` with top
/// words of length at most `depth`; `R` and `D` appear as `L^-1`, `U^-1`.
pub fn zz2z_presentation(depth: usize) -> Presentation {
    let letter = |n: &str| GroupWord::letter(n, 1);
    let (l, f, u) = (letter("L"), letter("F"), letter("U"));
    let oracle = lamplighter_oracle(&[2]);
    // the top lamplighter generator T is L here
    let to_top = |w: &GroupWord| {
        GroupWord::from_letters(w.letters().iter().map(|(n, e)| (if n == "L" { "T".to_string() } else { n.clone() }, *e)))
    };
    let mut relations = vec![f.pow(2)];
    for k in 1..=3 {
        relations.push(GroupWord::commutator(&f, &conj(&f, &l.pow(k))));
    }
    let tops = reduced_words(&["L", "F"], depth);
    let mut classes: HashMap<_, GroupWord> = HashMap::new();
    let mut non_relations = vec![u.clone(), u.pow(2), u.pow(3)];
    for w in &tops {
        if !w.is_empty() {
            relations.push(GroupWord::commutator(&u, &conj(&u, w)));
        }
        match classes.get(&oracle(&to_top(w))) {
            Some(rep) => relations.push(conj(&u, w).concat(&conj(&u, rep).inverse())),
            None => {
                classes.insert(oracle(&to_top(w)), w.clone());
                if !w.is_empty() {
                    non_relations.push(w.clone());
                    non_relations.push(conj(&u, w).concat(&u.inverse()));
                }
            }
        }
    }
    Presentation { relations, non_relations }
}

/// Belt contents of the run occupying `cells` of `tape` (prefix and suffix included).
pub fn run_belt(b: &BeltAlphabet, tape: &[Symbol], cells: std::ops::Range<usize>) -> Vec<Symbol> {
    let pairs: Vec<Symbol> = tape[cells]
        .iter()
        .map(|&c| if b.is_pair(c) { c } else { b.pair(b.base().zero(), b.base().zero()) })
        .collect();
    b.belt_encode(&pairs)
}

/// `d` with `after[i] = before[i - d]` cyclically, if the belt was rotated.
pub fn belt_displacement(before: &[Symbol], after: &[Symbol]) -> Option<i64> {
    let n = before.len() as i64;
    (-(n / 2)..=n / 2).find(|&d| (0..n).all(|i| after[i as usize] == before[(i - d).rem_euclid(n) as usize]))
}

/// The three behaviours of `ULUFRD^4LFR` on the sample tape: belt rotated by
/// `+1` on the first run and by `-4` on the second, the third run changed as
/// by the top word `LFRLFR` alone, and the error zone untouched.
pub fn sample_behaviours(table: &GeneratorTable) -> Result<Report> {
    let suite = "wreath";
    let (tape, layout) = example_zz2z_sample()?;
    let b = BeltAlphabet::new(example_zz2z_spec()?.alphabet())?;
    let out = table.apply_cells(&table.parse_word(EXAMPLE_WORD)?, &tape)?;
    let top = table.apply_cells(&table.parse_word("LFRLFR")?, &tape)?;
    let before = |k: usize| run_belt(&b, &tape, layout.runs[k].clone());
    let after = |k: usize| run_belt(&b, &out, layout.runs[k].clone());
    let mut report = Report::new();
    for (k, want) in [(0, 1), (1, -4)] {
        let got = belt_displacement(&before(k), &after(k));
        report.push(Record::check(suite, format!("sample.run{}.bottom_shift", k + 1), got == Some(want), || {
            format!("displacement={got:?} expected={want}")
        }));
    }
    let r3 = layout.runs[2].clone();
    report.push(Record::check(suite, "sample.run3.top_only", out[r3.clone()] == top[r3.clone()], || {
        show(&b.gamma().clone(), &out[r3.clone()])
    }));
    let z = layout.error_zone.clone();
    report.push(Record::check(suite, "sample.error_zone_fixed", out[z.clone()] == tape[z.clone()], || {
        show(&b.gamma().clone(), &out[z.clone()])
    }));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::TapeMap;
    use crate::belt::RunDecomposition;

    #[test]
    fn example_alphabet_has_66_symbols() {
        let t = assemble_example_zz2z().unwrap();
        assert_eq!(t.alphabet().size(), 66);
        assert_eq!(t.names(), ["L", "R", "F", "U", "D"]);
    }

    #[test]
    fn free_base_word_is_1_0_1() {
        let spec = example_zz2z_spec().unwrap();
        let a = spec.free_base_afo(0).unwrap();
        let w = &a.safe.words()[0];
        assert_eq!(w.len(), 1);
        assert_eq!(spec.alphabet().name(w[0]), "(1,0,1)");
        assert_eq!(a.safe.threshold(), 1);
        assert_eq!(a.offsets, [1]);
    }

    #[test]
    fn free_generator_cycles_period_n() {
        let spec = example_zz2z_spec().unwrap();
        let a = spec.free_base_afo(0).unwrap();
        for n in 1..=6 {
            crate::verify::find_tape::<()>(spec.alphabet(), &[n], |c| {
                let mut y = c.to_vec();
                for _ in 0..n {
                    y = a.apply_cells(&y);
                }
                assert_eq!(y, c);
                None
            });
        }
    }

    #[test]
    fn finite_generator_has_order_m() {
        let top = lamplighter_action(&[2]).unwrap();
        let spec = WreathSpec::new(top, 0, vec![3]).unwrap();
        let a = spec.finite_base_afo(0, 1).unwrap();
        let w = &a.safe.words();
        assert_eq!(w.len(), 3);
        let alph = spec.alphabet().clone();
        let tape = |v: Symbol| {
            let mut t = vec![alph.zero(); 5];
            t[2] = alph.join(&[1, 0, v]).unwrap();
            t
        };
        assert_eq!(a.apply_cells(&tape(0)), tape(1));
        assert_eq!(a.apply_cells(&tape(2)), tape(0));
        // a second head hides the core
        let mut busy = tape(0);
        busy[4] = alph.join(&[1, 0, 0]).unwrap();
        assert_eq!(a.apply_cells(&busy), busy);
        for n in 1..=5 {
            crate::verify::find_tape::<()>(&alph, &[n], |c| {
                assert_eq!(a.apply_cells(&a.apply_cells(&a.apply_cells(c))), c);
                None
            });
        }
    }

    #[test]
    fn lifted_top_ignores_base_tracks() {
        let spec = example_zz2z_spec().unwrap();
        let t = spec.lift(spec.top.generator("T").unwrap()).unwrap();
        let a = spec.alphabet();
        let x = [a.join(&[1, 0, 1]).unwrap(), a.join(&[0, 1, 0]).unwrap(), a.zero()];
        let y = t.forward.apply_cells(&x);
        let names: Vec<&str> = y.iter().map(|&s| a.name(s)).collect();
        assert_eq!(names, ["(0,0,1)", "(0,1,0)", "(1,0,0)"]);
    }

    #[test]
    fn sample_reproduces_three_behaviours() {
        let table = assemble_example_zz2z().unwrap();
        let (tape, layout) = example_zz2z_sample().unwrap();
        let b = BeltAlphabet::new(example_zz2z_spec().unwrap().alphabet()).unwrap();
        let RunDecomposition::Runs(runs) = b.decompose(&tape) else { panic!("no runs") };
        assert_eq!(runs.len(), 3);
        let r = sample_behaviours(&table).unwrap();
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.records.len(), 4);
        let u = table.get("U").unwrap();
        assert_eq!(u.forward.apply_cells(&tape)[layout.runs[2].clone()], tape[layout.runs[2].clone()]);
    }

    #[test]
    fn zz_relations_small() {
        let top = lamplighter_action(&[2]).unwrap();
        let spec = WreathSpec::new(top, 1, vec![]).unwrap();
        let table = spec.generator_table(false).unwrap();
        assert_eq!(table.names(), ["T", "F", "U"]);
        let pres = Presentation {
            relations: vec![table.parse_word("F^2").unwrap(), table.parse_word("[U, U^T]").unwrap()],
            non_relations: vec![table.parse_word("U^T U^-1").unwrap(), table.parse_word("U^F U^-1").unwrap()],
        };
        let special = spec.special_point().word().to_vec();
        let b = BeltAlphabet::new(spec.alphabet()).unwrap();
        let designated = designated_tapes(&table, &b, &special, &["T", "F"], 2, 8).unwrap();
        let r = relation_suite("wreath", &table, &pres, &SuiteParams { max_period: 3, tape_budget: 400_000 }, &designated)
            .unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn broken_relation_is_reported() {
        let table = assemble_example_zz2z().unwrap();
        let pres = Presentation { relations: vec![table.parse_word("L").unwrap()], non_relations: vec![] };
        let r = relation_suite("wreath", &table, &pres, &SuiteParams { max_period: 2, tape_budget: 10_000 }, &[]).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn missing_witness_is_inconclusive() {
        let table = assemble_example_zz2z().unwrap();
        let pres = Presentation { relations: vec![], non_relations: vec![table.parse_word("U").unwrap()] };
        let r = relation_suite("wreath", &table, &pres, &SuiteParams { max_period: 1, tape_budget: 100 }, &[]).unwrap();
        assert_eq!(r.records[0].status, Status::Inconclusive);
    }
}
