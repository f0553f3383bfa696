//! Neumann groups: the abstract permutation models and their realization by
//! a single head on `{>, <, 1, 2}`.
//!
//! `b` turns the head once around its belt; `a` is the three-cycle
//! `1<<… → >1<… → >>2… → 1<<…` at the left end of a run. Runs shorter than
//! three cells are left alone. Run length `L` thus carries a block of size `2L`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::action::{reduced_words, Generator, GeneratorTable, GroupWord, TapeMap};
use crate::alphabet::{Alphabet, Symbol};
use crate::error::{Error, Result};
use crate::khat::{
    self, read_track, runs, split_tracks, track_alphabet, write_track, HeadState, RunLevel, RunRule, RunwiseMap,
    TrackState,
};
use crate::level::LevelTables;
use crate::perm::{closure, normal_closure, Perm};
use crate::report::{Record, Report, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeumannSpec {
    /// Blocks 6, 8, 10, …
    EvenBase,
    /// Effective runs of lengths `start, start + step, …`, blocks twice that.
    Progression { start: usize, step: usize },
    /// Product over disjoint alphabets, one factor per progression.
    Union(Vec<(usize, usize)>),
}

impl NeumannSpec {
    /// Block sizes up to `max`.
    pub fn blocks(&self, max: usize) -> Vec<usize> {
        match *self {
            NeumannSpec::EvenBase => (3..).map(|l| 2 * l).take_while(|&b| b <= max).collect(),
            NeumannSpec::Progression { start, step } => {
                (0..).map(|i| 2 * (start + i * step)).take_while(|&b| b <= max).collect()
            }
            NeumannSpec::Union(ref parts) => {
                let mut all: Vec<usize> = parts
                    .iter()
                    .flat_map(|&(start, step)| NeumannSpec::Progression { start, step }.blocks(max))
                    .collect();
                all.sort_unstable();
                all.dedup();
                all
            }
        }
    }

    /// The first `depth` block sizes.
    pub fn terms(&self, depth: usize) -> Vec<usize> {
        let mut max = 8;
        loop {
            let b = self.blocks(max);
            if b.len() >= depth {
                return b[..depth].to_vec();
            }
            max *= 2;
        }
    }

    pub fn generators(&self) -> Result<GeneratorTable> {
        match *self {
            NeumannSpec::EvenBase => neumann_even_generators(),
            NeumannSpec::Progression { start, step } => neumann_progression_generators(start, step),
            NeumannSpec::Union(ref parts) => neumann_union_generators(parts),
        }
    }
}

/// `a` and `b` on the disjoint union of the blocks.
#[derive(Clone, Debug)]
pub struct NeumannAbstract {
    pub blocks: Vec<usize>,
    pub a: Perm,
    pub b: Perm,
}

pub fn neumann_abstract(blocks: &[usize]) -> Result<NeumannAbstract> {
    if blocks.is_empty() || blocks.iter().any(|&n| n < 3) || blocks.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(format!("blocks {blocks:?} must increase from at least 3")));
    }
    let degree: usize = blocks.iter().sum();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    let mut base = 0;
    for &n in blocks {
        a.push(vec![base, base + 1, base + 2]);
        b.push((base..base + n).collect());
        base += n;
    }
    Ok(NeumannAbstract {
        blocks: blocks.to_vec(),
        a: Perm::from_cycles(degree, &a)?,
        b: Perm::from_cycles(degree, &b)?,
    })
}

fn ab_perm(word: &GroupWord, a: &Perm, b: &Perm) -> Result<Perm> {
    let mut acc = Perm::identity(a.degree());
    for (name, e) in word.steps() {
        let g = match name {
            "a" => a,
            "b" => b,
            _ => return Err(Error::UnknownGenerator(name.to_string())),
        };
        acc = acc.then_after(&g.pow(e));
    }
    Ok(acc)
}

pub fn neumann_abstract_spec(spec: &NeumannSpec, depth: usize) -> Result<NeumannAbstract> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    neumann_abstract(&spec.terms(depth))
}

impl NeumannAbstract {
    pub fn eval(&self, word: &GroupWord) -> Result<Perm> {
        ab_perm(word, &self.a, &self.b)
    }
}

/// `[a, a^{b^{n+3}}]` in `Sym(n + 5 + m)` with `a = (0 1 2)` and `b` the full cycle.
pub fn certificate(n: usize, m: usize) -> Result<bool> {
    let c = certificate_element(n, n + 5 + m)?;
    Ok(!c.is_identity())
}

fn certificate_element(n: usize, degree: usize) -> Result<Perm> {
    let a = Perm::from_cycles(degree, &[vec![0, 1, 2]])?;
    let b = Perm::from_cycles(degree, &[(0..degree).collect()])?;
    let bj = b.pow(n as i64 + 3);
    Ok(Perm::commutator(&a, &Perm::conjugate(&a, &bj)))
}

/// Nontrivial at block size `n + 5`, trivial at `n + 6 ..= n + 10`.
pub fn certificate_pattern(n: usize) -> Result<Record> {
    let at = certificate(n, 0)?;
    let trivial: Vec<usize> = (1..=5).filter(|&m| !certificate(n, m).unwrap_or(true)).collect();
    let ok = at && trivial.len() == 5;
    Ok(Record::check("neumann", format!("certificate.n{n}"), ok, || {
        format!("nontrivial_at_{}={at} trivial_offsets={trivial:?}", n + 5)
    }))
}

fn even_rule_a(sign: i64) -> RunRule {
    Arc::new(move |s: &HeadState| {
        let l = s.len;
        if l < 3 {
            return s.clone();
        }
        let cycle = [0, 1, 2 * l - 3];
        let tracks = s
            .tracks
            .iter()
            .map(|&t| match t {
                TrackState::Head(p) => match cycle.iter().position(|&c| c == p) {
                    Some(i) => TrackState::Head(cycle[(i as i64 + sign).rem_euclid(3) as usize]),
                    None => t,
                },
                other => other,
            })
            .collect();
        HeadState { len: l, tracks }
    })
}

fn even_rule_b(sign: i64) -> RunRule {
    Arc::new(move |s: &HeadState| {
        let l = s.len;
        if l < 3 {
            return s.clone();
        }
        let tracks = s
            .tracks
            .iter()
            .map(|&t| match t {
                TrackState::Head(p) => TrackState::Head((p as i64 + sign).rem_euclid(2 * l as i64) as usize),
                other => other,
            })
            .collect();
        HeadState { len: l, tracks }
    })
}

pub fn even_map(name: &str, sign: i64) -> Result<RunwiseMap> {
    let rule = match name {
        "a" => even_rule_a(sign),
        "b" => even_rule_b(sign),
        _ => return Err(Error::UnknownGenerator(name.to_string())),
    };
    Ok(RunwiseMap::new(&track_alphabet(), 1, rule))
}

/// `a` and `b` for blocks 6, 8, 10, … over `{>, <, 1, 2}`.
pub fn neumann_even_generators() -> Result<GeneratorTable> {
    let mut t = GeneratorTable::new(&track_alphabet());
    for name in ["a", "b"] {
        t.insert(Generator::new(name, Arc::new(even_map(name, 1)?), Arc::new(even_map(name, -1)?)))?;
    }
    Ok(t)
}

/// Effective runs inside the runs of the first track: a maximal stretch of
/// the second track reading `1 2 … k 1 2 …` from a `1`, cut to the longest
/// length `≡ start (mod step)` that is at least `start`. Stretches shorter than
/// `start` hold no effective run.
pub fn effective_segments(start: usize, step: usize, heads: &[Symbol], marks: &[Symbol]) -> Vec<(usize, usize)> {
    let n = heads.len();
    let Some(rs) = runs(&[heads.to_vec()]) else { return Vec::new() };
    let mut out = Vec::new();
    for (s, len) in rs {
        let v: Vec<Symbol> = (0..len).map(|j| marks[(s + j) % n]).collect();
        let mut i = 0;
        while i < len {
            if v[i] != 0 {
                i += 1;
                continue;
            }
            let mut j = i;
            while j + 1 < len && v[j + 1] as usize == (v[j] as usize + 1) % step {
                j += 1;
            }
            let avail = j - i + 1;
            if avail >= start {
                let l = start + (avail - start) / step * step;
                out.push(((s + i) % n, l));
            }
            i = j + 1;
        }
    }
    out
}

/// `{>, <, 1, 2} × {1, …, k}`.
/// For `k = 1` the mark track is constant and dropped.
pub fn progression_alphabet(step: usize) -> Result<Alphabet> {
    if step == 1 {
        return Ok(track_alphabet());
    }
    let marks = Alphabet::new((1..=step).map(|i| i.to_string()), 0)?;
    Alphabet::product(vec![track_alphabet(), marks])
}

#[derive(Clone)]
pub struct ProgressionMap {
    alphabet: Alphabet,
    start: usize,
    step: usize,
    rule: RunRule,
}

impl TapeMap for ProgressionMap {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        let n = cells.len();
        let t = if self.step == 1 {
            vec![cells.to_vec(), vec![0; n]]
        } else {
            split_tracks(&self.alphabet, 2, cells)
        };
        let mut heads = t[0].clone();
        for (s, len) in effective_segments(self.start, self.step, &t[0], &t[1]) {
            let seg: Vec<Symbol> = (0..len).map(|j| t[0][(s + j) % n]).collect();
            let state = HeadState { len, tracks: vec![read_track(&seg)] };
            for (j, c) in write_track((self.rule)(&state).tracks[0], len).into_iter().enumerate() {
                heads[(s + j) % n] = c;
            }
        }
        if self.step == 1 {
            return heads;
        }
        (0..n).map(|i| self.alphabet.join(&[heads[i], t[1][i]]).unwrap()).collect()
    }
}

pub fn neumann_progression_generators(start: usize, step: usize) -> Result<GeneratorTable> {
    if start < 3 || step == 0 {
        return Err(Error::InvalidArgument(format!("progression {start} + {step}i needs start >= 3, step >= 1")));
    }
    let alphabet = progression_alphabet(step)?;
    let map = |rule: RunRule| Arc::new(ProgressionMap { alphabet: alphabet.clone(), start, step, rule });
    GeneratorTable::new(&alphabet)
        .with(Generator::new("a", map(even_rule_a(1)), map(even_rule_a(-1))))?
        .with(Generator::new("b", map(even_rule_b(1)), map(even_rule_b(-1))))
}

/// Each factor table acting on its own track of the product alphabet.
#[derive(Clone)]
struct TrackwiseMap {
    alphabet: Alphabet,
    factors: Vec<Arc<dyn TapeMap>>,
}

impl TapeMap for TrackwiseMap {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        let n = cells.len();
        let images: Vec<Vec<Symbol>> = self
            .factors
            .iter()
            .enumerate()
            .map(|(t, f)| f.apply_cells(&cells.iter().map(|&c| self.alphabet.component(c, t)).collect::<Vec<_>>()))
            .collect();
        (0..n)
            .map(|i| self.alphabet.join(&images.iter().map(|im| im[i]).collect::<Vec<_>>()).unwrap())
            .collect()
    }
}

pub fn neumann_union_generators(parts: &[(usize, usize)]) -> Result<GeneratorTable> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("empty union".into()));
    }
    let tables: Vec<GeneratorTable> =
        parts.iter().map(|&(l, k)| neumann_progression_generators(l, k)).collect::<Result<_>>()?;
    if tables.len() == 1 {
        return Ok(tables.into_iter().next().unwrap());
    }
    let alphabet = Alphabet::product(tables.iter().map(|t| t.alphabet().clone()).collect())?;
    let mut out = GeneratorTable::new(&alphabet);
    for name in ["a", "b"] {
        let side = |fwd: bool| -> Result<Arc<dyn TapeMap>> {
            let factors = tables
                .iter()
                .map(|t| t.get(name).map(|g| if fwd { g.forward.clone() } else { g.backward.clone() }))
                .collect::<Result<_>>()?;
            Ok(Arc::new(TrackwiseMap { alphabet: alphabet.clone(), factors }))
        };
        out.insert(Generator::new(name, side(true)?, side(false)?))?;
    }
    Ok(out)
}

/// `a³ = 1` on every rotation class of period `<= max_period`.
pub fn cube_check(table: &GeneratorTable, max_period: usize, budget: u64) -> Result<Record> {
    let a3 = GroupWord::letter("a", 3);
    for n in 1..=max_period {
        let lv = LevelTables::build(table, n, budget)?;
        if let Some(x) = lv.moved(&a3)? {
            return Ok(Record::fail("neumann", format!("a_cubed.P{max_period}"), crate::verify::show(table.alphabet(), &lv.cells(x))));
        }
    }
    Ok(Record::pass("neumann", format!("a_cubed.P{max_period}")))
}

/// The CA's action on head positions of runs of length `len`: `(a, b)` on `2len` points.
pub fn extracted_cycles(len: usize) -> Result<(Perm, Perm)> {
    let level = RunLevel::build(1, len, &[even_rule_a(1), even_rule_b(1)]);
    // states 0 and 1 are the headless ones
    let restrict = |p: &Perm| Perm::from_images((2..2 * len + 2).map(|x| p.apply(x) - 2).collect());
    Ok((restrict(&level.gens[0])?, restrict(&level.gens[1])?))
}

fn relation_set<'w>(words: &'w [GroupWord], trivial: impl Fn(&GroupWord) -> Result<bool>) -> Result<HashSet<&'w GroupWord>> {
    let mut out = HashSet::new();
    for w in words {
        if trivial(w)? {
            out.insert(w);
        }
    }
    Ok(out)
}

fn diff_record(check: String, lhs: &HashSet<&GroupWord>, rhs: &HashSet<&GroupWord>, detail: String) -> Record {
    let mut diff: Vec<String> = lhs.symmetric_difference(rhs).map(|w| w.to_string()).collect();
    diff.sort();
    Record::check("neumann", check, diff.is_empty(), || diff.iter().take(5).cloned().collect::<Vec<_>>().join("|"))
        .with_detail(detail)
}

/// Words of length `<= word_len` trivial on every even-base tape of period
/// `<= max_period`, against the group generated by the extracted cycles and
/// against the literal model with `a = (0 1 2)`.
pub fn neumann_compare(max_period: usize, word_len: usize) -> Result<Report> {
    let table = neumann_even_generators()?;
    let words = reduced_words(&["a", "b"], word_len);
    let tables: Vec<LevelTables> =
        (1..=max_period).map(|n| LevelTables::build(&table, n, u32::MAX as u64)).collect::<Result<_>>()?;
    let ca = relation_set(&words, |w| {
        for lv in &tables {
            if lv.moved(w)?.is_some() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let lens: Vec<usize> = (3..=max_period.saturating_sub(2)).collect();
    let extracted: Vec<(Perm, Perm)> = lens.iter().map(|&l| extracted_cycles(l)).collect::<Result<_>>()?;
    let ext = relation_set(&words, |w| {
        for (a, b) in &extracted {
            if !ab_perm(w, a, b)?.is_identity() {
                return Ok(false);
            }
        }
        Ok(true)
    })?;
    let blocks: Vec<usize> = lens.iter().map(|l| 2 * l).collect();
    let mut report = Report::new();
    let detail = format!("periods<={max_period} blocks={blocks:?} relations={}", ca.len());
    report.push(diff_record(format!("compare.extracted.L{word_len}"), &ca, &ext, detail.clone()));
    if !blocks.is_empty() {
        let lit = neumann_abstract(&blocks)?;
        let literal = relation_set(&words, |w| Ok(lit.eval(w)?.is_identity()))?;
        let rec = diff_record(format!("compare.literal.L{word_len}"), &ca, &literal, detail);
        // the two labelings of `a` need not give the same marked group
        report.push(if rec.passed() { rec } else { Record { status: Status::Inconclusive, ..rec } });
    }
    let mut orders = Vec::new();
    for (l, (a, b)) in lens.iter().zip(&extracted) {
        if let Ok(g) = closure(&[a.clone(), b.clone()], a.degree(), 50_000) {
            orders.push(format!("{}:{}", 2 * l, g.len()));
        }
    }
    report.push(Record::pass("neumann", "extracted_orders").with_detail(orders.join(",")));
    Ok(report)
}

/// `a³ = 1` on every tape of period `<= max_period`, and `b` of order `2L` on runs of length `L ≥ 3`.
pub fn even_orders_check(max_period: usize) -> Result<Report> {
    let table = neumann_even_generators()?;
    let mut report = Report::new();
    report.push(cube_check(&table, max_period, u32::MAX as u64)?);
    let b = table.get("b")?;
    let a = track_alphabet();
    for len in 3..=max_period.saturating_sub(2) {
        let start = HeadState { len, tracks: vec![TrackState::Head(0)] }.tape(&a);
        let mut x = b.forward.apply_cells(&start);
        let mut order = 1;
        while x != start && order <= 4 * len {
            x = b.forward.apply_cells(&x);
            order += 1;
        }
        report.push(Record::check("neumann", format!("b_order.len{len}"), order == 2 * len, || format!("order={order}")));
    }
    Ok(report)
}

/// Each block's alternating group is the normal closure of `[a, a^{b^{n_i - 2}}]`
/// restricted to that block, in the abstract model.
pub fn block_recovery(blocks: &[usize], limit: usize) -> Result<Report> {
    let g = neumann_abstract(blocks)?;
    let degree = g.a.degree();
    let mut report = Report::new();
    let mut base = 0;
    for &n in blocks {
        let c = Perm::commutator(&g.a, &Perm::conjugate(&g.a, &g.b.pow(n as i64 - 2)));
        let nc = normal_closure(&[c], &[g.a.clone(), g.b.clone()], degree, limit)?;
        let on_block: HashSet<Vec<usize>> =
            nc.iter().map(|p| (base..base + n).map(|x| p.apply(x) - base).collect()).collect();
        let inside = nc.iter().all(|p| p.moved_points().all(|x| x < base + n));
        let alt = (3..=n).product::<usize>();
        report.push(Record::check("neumann", format!("block_recovery.{n}"), inside && on_block.len() == alt, || {
            format!("image_order={} expected={alt} inside_prefix={inside}", on_block.len())
        }));
        base += n;
    }
    Ok(report)
}

/// Extends [`khat::verify_khat`]'s checks to `a` and `b`.
pub fn verify_even(params: &crate::verify::VerifyParams) -> Result<Report> {
    let a = track_alphabet();
    let mut report = Report::new();
    for name in ["a", "b"] {
        let (f, g) = (even_map(name, 1)?, even_map(name, -1)?);
        report.push(crate::verify::check_inverse_pair("neumann", name, &f, &g, params));
        let code = f.windowed(khat::KHAT_RADIUS);
        let (bad, scope) = crate::verify::counterexample(&a, params, |c| code.apply_cells(c) == f.apply_cells(c));
        report.push(
            Record::check("neumann", format!("{name}.windowed_agrees"), bad.is_none(), || {
                crate::verify::show(&a, bad.as_deref().unwrap())
            })
            .with_detail(scope),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::VerifyParams;

    fn tape(s: &str) -> Vec<Symbol> {
        let a = track_alphabet();
        s.chars().map(|c| a.lookup(&c.to_string()).unwrap()).collect()
    }

    #[test]
    fn abstract_depth_one() {
        let g = neumann_abstract(&[6]).unwrap();
        assert_eq!(g.a.cycles(), vec![vec![0, 1, 2]]);
        assert_eq!(g.b.order(), 6);
        assert!(g.a.pow(3).is_identity());
        let five = neumann_abstract(&[5]).unwrap();
        assert_eq!(closure(&[five.a, five.b], 5, 1000).unwrap().len(), 60);
    }

    #[test]
    fn certificates() {
        assert!(certificate(2, 0).unwrap());
        for m in 1..=3 {
            assert!(!certificate(2, m).unwrap());
        }
        let a = Perm::from_cycles(7, &[vec![0, 1, 2]]).unwrap();
        assert!(Perm::commutator(&a, &a).is_identity());
    }

    #[test]
    fn even_examples() {
        let t = neumann_even_generators().unwrap();
        let (a, b) = (t.get("a").unwrap(), t.get("b").unwrap());
        // `<` next to a head-free `>` is bad, so `<<>` ends the run
        assert_eq!(a.forward.apply_cells(&tape("1<<<>")), tape(">1<<>"));
        assert_eq!(a.forward.apply_cells(&tape(">1<<>")), tape(">>2<>"));
        assert_eq!(a.forward.apply_cells(&tape(">>2<>")), tape("1<<<>"));
        assert_eq!(b.forward.apply_cells(&tape(">1<<>")), tape(">>1<>"));
        assert_eq!(b.forward.apply_cells(&tape("2<<<>")), tape("1<<<>"));
        // runs of length 2 are left alone
        assert_eq!(b.forward.apply_cells(&tape("1<<>")), tape("1<<>"));
    }

    #[test]
    fn three_cycle_visits_0_1_and_minus_3() {
        let (a, b) = extracted_cycles(4).unwrap();
        assert_eq!(a.cycles(), vec![vec![0, 1, 5]]);
        assert_eq!(b.order(), 8);
    }

    #[test]
    fn progression_with_step_one_is_even() {
        let p = neumann_progression_generators(3, 1).unwrap();
        let e = neumann_even_generators().unwrap();
        for n in 1..=7 {
            crate::verify::find_tape::<()>(e.alphabet(), &[n], |c| {
                for g in ["a", "b"] {
                    assert_eq!(p.get(g).unwrap().forward.apply_cells(c), e.get(g).unwrap().forward.apply_cells(c));
                }
                None
            });
        }
    }

    #[test]
    fn progression_step_two() {
        let p = neumann_progression_generators(3, 2).unwrap();
        let pa = p.alphabet().clone();
        let cells = |h: &str, m: &[Symbol]| -> Vec<Symbol> {
            tape(h).iter().zip(m).map(|(&x, &y)| pa.join(&[x, y]).unwrap()).collect()
        };
        // a run of four cells marked 1 2 1 2 holds an effective run of three
        let m = [0, 1, 0, 1, 0, 0];
        let b = &p.get("b").unwrap().forward;
        assert_eq!(b.apply_cells(&cells("1<<<<>", &m)), cells(">1<<<>", &m));
        assert_eq!(b.apply_cells(&cells(">>1<<>", &m)), cells(">>2<<>", &m));
        assert_eq!(b.apply_cells(&cells("2<<<<>", &m)), cells("1<<<<>", &m));
    }

    #[test]
    fn effective_lengths_in_progression() {
        // one run `>>>>>>>1<` with marks 1 2 1 2 1 2 1 2 1, then bad `<>` closing the cycle
        let heads = tape(">>>>>>1<<<>");
        let marks = [0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0];
        let segs = effective_segments(3, 2, &heads, &marks);
        assert_eq!(segs, vec![(0, 9)]);
        let segs = effective_segments(4, 2, &heads, &marks);
        assert_eq!(segs, vec![(0, 8)]);
    }

    #[test]
    fn even_maps_verify() {
        let params = VerifyParams { max_period: 6, random_count: 200, random_max_period: 30, ..Default::default() };
        let r = verify_even(&params).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn small_block_recovery() {
        let r = block_recovery(&[5, 6], 100_000).unwrap();
        assert!(r.all_passed(), "{r}");
    }
}
