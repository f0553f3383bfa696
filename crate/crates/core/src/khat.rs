//! Heads on tracks over `{>, <, 1, 2}`: generators `g_1..g_k` realizing the
//! groups `K̂_k`, the abstract permutation groups `K_k^n`, and the checks
//! tying the two together.
//!
//! On one track the good words are `>>`, `>C`, `C<`, `<<` with `C = {1, 2}`;
//! everything else is bad. A position of a `k`-track tape is good when it is
//! good on every track, and maximal good intervals are the runs. Inside a run
//! each track reads `>^L`, `<^L` or `>^m c <^n` with a single head `c`. A head
//! `1` at cell `c` sits at belt position `c`, a head `2` at `2L - 1 - c`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{reduced_words, Generator, GeneratorTable, GroupWord, TapeMap};
use crate::alphabet::{Alphabet, Symbol};
use crate::code::SlidingBlockCode;
use crate::error::{Error, Result};
use crate::perm::{derived_series_orders, lcm, Perm};
use crate::pointy::LamplighterElement;
use crate::report::{Record, Report, Status};
use crate::verify::{self, VerifyParams};

pub const GT: Symbol = 0;
pub const LT: Symbol = 1;
pub const ONE: Symbol = 2;
pub const TWO: Symbol = 3;

pub fn track_alphabet() -> Alphabet {
    Alphabet::new([">", "<", "1", "2"], GT).expect("four distinct names")
}

/// `{>, <, 1, 2}^k`; a single track is the plain track alphabet.
pub fn khat_alphabet(k: usize) -> Result<Alphabet> {
    match k {
        0 => Err(Error::InvalidArgument("k must be at least 1".into())),
        1 => Ok(track_alphabet()),
        _ => Alphabet::product(vec![track_alphabet(); k]),
    }
}

#[inline]
pub fn is_head(s: Symbol) -> bool {
    s == ONE || s == TWO
}

#[inline]
pub fn good_pair(x: Symbol, y: Symbol) -> bool {
    matches!((x, y), (GT, GT) | (LT, LT)) || (x == GT && is_head(y)) || (is_head(x) && y == LT)
}

/// Cells of a `k`-track tape split into tracks.
pub fn split_tracks(alphabet: &Alphabet, k: usize, cells: &[Symbol]) -> Vec<Vec<Symbol>> {
    if k == 1 {
        return vec![cells.to_vec()];
    }
    let mut out = vec![Vec::with_capacity(cells.len()); k];
    for &c in cells {
        for (t, track) in out.iter_mut().enumerate() {
            track.push(alphabet.component(c, t));
        }
    }
    out
}

pub fn join_tracks(alphabet: &Alphabet, tracks: &[Vec<Symbol>]) -> Vec<Symbol> {
    if tracks.len() == 1 {
        return tracks[0].clone();
    }
    let n = tracks[0].len();
    (0..n)
        .map(|i| alphabet.join(&tracks.iter().map(|t| t[i]).collect::<Vec<_>>()).expect("track symbols"))
        .collect()
}

/// Good positions of a cyclic tape given as tracks.
pub fn good_positions(tracks: &[Vec<Symbol>]) -> Vec<bool> {
    let n = tracks[0].len();
    (0..n)
        .map(|i| {
            tracks.iter().all(|t| good_pair(t[(i + n - 1) % n], t[i]) && good_pair(t[i], t[(i + 1) % n]))
        })
        .collect()
}

/// Maximal good runs `(start, len)` of a cyclic tape, or `None` when every position is good.
pub fn runs(tracks: &[Vec<Symbol>]) -> Option<Vec<(usize, usize)>> {
    let good = good_positions(tracks);
    let n = good.len();
    let first_bad = good.iter().position(|&g| !g)?;
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let i = (first_bad + k) % n;
        if !good[i] {
            k += 1;
            continue;
        }
        let len = (k..n).take_while(|&j| good[(first_bad + j) % n]).count();
        out.push((i, len));
        k += len;
    }
    Some(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrackState {
    /// `>^L`
    AllLeft,
    /// `<^L`
    AllRight,
    /// Head at this belt position.
    Head(usize),
}

impl TrackState {
    pub fn position(self) -> Option<usize> {
        match self {
            TrackState::Head(p) => Some(p),
            _ => None,
        }
    }
}

/// Reads a valid run content of one track.
pub fn read_track(run: &[Symbol]) -> TrackState {
    let l = run.len();
    match run.iter().position(|&s| is_head(s)) {
        Some(c) if run[c] == ONE => TrackState::Head(c),
        Some(c) => TrackState::Head(2 * l - 1 - c),
        None if run.first() == Some(&LT) => TrackState::AllRight,
        None => TrackState::AllLeft,
    }
}

pub fn write_track(state: TrackState, len: usize) -> Vec<Symbol> {
    let (cell, head) = match state {
        TrackState::AllLeft => return vec![GT; len],
        TrackState::AllRight => return vec![LT; len],
        TrackState::Head(p) if p < len => (p, ONE),
        TrackState::Head(p) => (2 * len - 1 - p, TWO),
    };
    (0..len).map(|i| if i < cell { GT } else if i == cell { head } else { LT }).collect()
}

/// What a run looks like to the generators: its length and one state per track.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeadState {
    pub len: usize,
    pub tracks: Vec<TrackState>,
}

impl HeadState {
    /// Every state of a run of length `len` on `k` tracks, in index order.
    pub fn all(k: usize, len: usize) -> Vec<HeadState> {
        let per: Vec<TrackState> = [TrackState::AllLeft, TrackState::AllRight]
            .into_iter()
            .chain((0..2 * len).map(TrackState::Head))
            .collect();
        let count = per.len().pow(k as u32);
        (0..count)
            .map(|mut idx| {
                let mut tracks = vec![TrackState::AllLeft; k];
                for t in tracks.iter_mut().rev() {
                    *t = per[idx % per.len()];
                    idx /= per.len();
                }
                HeadState { len, tracks }
            })
            .collect()
    }

    pub fn index(&self) -> usize {
        let base = 2 * self.len + 2;
        self.tracks.iter().fold(0, |acc, t| {
            acc * base
                + match t {
                    TrackState::AllLeft => 0,
                    TrackState::AllRight => 1,
                    TrackState::Head(p) => p + 2,
                }
        })
    }

    /// `g_i` (or its inverse for `sign = -1`): all heads on tracks `1..=i` at
    /// one belt position move on by two.
    pub fn step(&self, i: usize, sign: i64) -> HeadState {
        let first = self.tracks[..i].iter().map(|t| t.position()).collect::<Option<Vec<_>>>();
        match first {
            Some(ps) if ps.iter().all(|&p| p == ps[0]) => {
                let m = 2 * self.len as i64;
                let mut out = self.clone();
                for t in &mut out.tracks[..i] {
                    *t = TrackState::Head((ps[0] as i64 + 2 * sign).rem_euclid(m) as usize);
                }
                out
            }
            _ => self.clone(),
        }
    }

    /// Run cells for these states, one tuple symbol per cell.
    pub fn cells(&self, alphabet: &Alphabet) -> Vec<Symbol> {
        let tracks: Vec<Vec<Symbol>> = self.tracks.iter().map(|&t| write_track(t, self.len)).collect();
        join_tracks(alphabet, &tracks)
    }

    /// A cyclic tape of period `len + 2` whose only run carries these states.
    pub fn tape(&self, alphabet: &Alphabet) -> Vec<Symbol> {
        let tracks: Vec<Vec<Symbol>> = self
            .tracks
            .iter()
            .map(|&t| {
                let mut v = write_track(t, self.len);
                let (first, last) = (v[0], v[self.len - 1]);
                // a bad separator pair meeting the run in good words exists on every track
                let (s1, s2) = (0..16)
                    .map(|x| (x / 4, x % 4))
                    .find(|&(a, b)| good_pair(last, a) && good_pair(b, first) && !good_pair(a, b))
                    .expect("separator");
                v.extend([s1, s2]);
                v
            })
            .collect();
        join_tracks(alphabet, &tracks)
    }
}

/// A map of run states applied run by run to whole tapes.
pub type RunRule = Arc<dyn Fn(&HeadState) -> HeadState + Send + Sync>;

/// Applies `rule` to every run of a cyclic tape; tapes without bad positions are fixed.
pub fn apply_runwise(alphabet: &Alphabet, k: usize, cells: &[Symbol], rule: &dyn Fn(&HeadState) -> HeadState) -> Vec<Symbol> {
    let mut tracks = split_tracks(alphabet, k, cells);
    let n = cells.len();
    let Some(rs) = runs(&tracks) else { return cells.to_vec() };
    for (start, len) in rs {
        let state = HeadState {
            len,
            tracks: tracks.iter().map(|t| read_track(&(0..len).map(|j| t[(start + j) % n]).collect::<Vec<_>>())).collect(),
        };
        let image = rule(&state);
        if image == state {
            continue;
        }
        for (t, &s) in tracks.iter_mut().zip(&image.tracks) {
            for (j, c) in write_track(s, len).into_iter().enumerate() {
                t[(start + j) % n] = c;
            }
        }
    }
    join_tracks(alphabet, &tracks)
}

/// Global evaluator of a run rule.
#[derive(Clone)]
pub struct RunwiseMap {
    alphabet: Alphabet,
    k: usize,
    rule: RunRule,
}

impl RunwiseMap {
    pub fn new(alphabet: &Alphabet, k: usize, rule: RunRule) -> Self {
        Self { alphabet: alphabet.clone(), k, rule }
    }

    /// The same rule as a sliding block code of radius `radius`. Runs are cut
    /// out of the window; an end hidden beyond the window is replaced by
    /// `radius` padding cells continuing each track as it leaves the window.
    pub fn windowed(&self, radius: usize) -> SlidingBlockCode {
        let (a, k, rule) = (self.alphabet.clone(), self.k, self.rule.clone());
        let r = radius as isize;
        SlidingBlockCode::from_fn(&self.alphabet, -r, r, move |w| {
            let tracks = split_tracks(&a, k, w);
            let good = |i: usize| {
                tracks.iter().all(|t| good_pair(t[i - 1], t[i]) && good_pair(t[i], t[i + 1]))
            };
            let c = radius;
            if !good(c) {
                return w[c];
            }
            let mut lo = c;
            while lo > 1 && good(lo - 1) {
                lo -= 1;
            }
            let mut hi = c;
            while hi + 2 < w.len() && good(hi + 1) {
                hi += 1;
            }
            let (open_l, open_r) = (lo == 1, hi + 2 == w.len());
            let pad = radius;
            let (pl, pr) = (if open_l { pad } else { 0 }, if open_r { pad } else { 0 });
            let len = pl + (hi - lo + 1) + pr;
            let states: Vec<TrackState> = tracks
                .iter()
                .map(|t| {
                    let seg = &t[lo..=hi];
                    let left = if seg[0] == LT { LT } else { GT };
                    let right = if seg[seg.len() - 1] == GT { GT } else { LT };
                    let mut v = vec![left; pl];
                    v.extend_from_slice(seg);
                    v.extend(std::iter::repeat(right).take(pr));
                    read_track(&v)
                })
                .collect();
            let image = rule(&HeadState { len, tracks: states });
            let at = pl + (c - lo);
            let out: Vec<Symbol> = image.tracks.iter().map(|&s| write_track(s, len)[at]).collect();
            if k == 1 {
                out[0]
            } else {
                a.join(&out).expect("track symbols")
            }
        })
    }
}

impl TapeMap for RunwiseMap {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn apply_cells(&self, cells: &[Symbol]) -> Vec<Symbol> {
        apply_runwise(&self.alphabet, self.k, cells, &*self.rule)
    }
}

/// Radius at which the windowed evaluator of a `g_i` agrees with the global one.
pub const KHAT_RADIUS: usize = 4;

pub fn generator_name(i: usize) -> String {
    format!("g{i}")
}

pub fn khat_map(k: usize, i: usize, sign: i64) -> Result<RunwiseMap> {
    if i == 0 || i > k {
        return Err(Error::InvalidArgument(format!("generator index {i} outside 1..={k}")));
    }
    Ok(RunwiseMap::new(&khat_alphabet(k)?, k, Arc::new(move |s: &HeadState| s.step(i, sign))))
}

pub fn khat_generator(k: usize, i: usize) -> Result<Generator> {
    Ok(Generator::new(generator_name(i), Arc::new(khat_map(k, i, 1)?), Arc::new(khat_map(k, i, -1)?)))
}

/// `g_i` as a sliding block code.
pub fn khat_code(k: usize, i: usize, sign: i64) -> Result<SlidingBlockCode> {
    Ok(khat_map(k, i, sign)?.windowed(KHAT_RADIUS))
}

pub fn khat_table(k: usize) -> Result<GeneratorTable> {
    let mut t = GeneratorTable::new(&khat_alphabet(k)?);
    for i in 1..=k {
        t.insert(khat_generator(k, i)?)?;
    }
    Ok(t)
}

/// Permutation of a word given unit-letter permutations, rightmost letter first.
fn word_perm(word: &GroupWord, degree: usize, letter: &dyn Fn(&str, i64) -> Result<Perm>) -> Result<Perm> {
    let mut acc = Perm::identity(degree);
    for (name, e) in word.steps() {
        acc = acc.then_after(&letter(name, e)?);
    }
    Ok(acc)
}

fn generator_index(name: &str, k: usize) -> Result<usize> {
    name.strip_prefix('g')
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&i| (1..=k).contains(&i))
        .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
}

/// `g_1..g_k` acting on the states of runs of one length.
pub struct RunLevel {
    pub k: usize,
    pub len: usize,
    pub states: Vec<HeadState>,
    pub gens: Vec<Perm>,
}

impl RunLevel {
    pub fn khat(k: usize, len: usize) -> Self {
        let rules: Vec<RunRule> = (1..=k).map(|i| Arc::new(move |s: &HeadState| s.step(i, 1)) as RunRule).collect();
        Self::build(k, len, &rules)
    }

    pub fn build(k: usize, len: usize, rules: &[RunRule]) -> Self {
        let states = HeadState::all(k, len);
        let gens = rules
            .iter()
            .map(|r| Perm::from_images(states.iter().map(|s| r(s).index()).collect()).expect("rules are bijective"))
            .collect();
        Self { k, len, states, gens }
    }

    pub fn eval(&self, word: &GroupWord) -> Result<Perm> {
        word_perm(word, self.states.len(), &|name, e| {
            Ok(self.gens[generator_index(name, self.gens.len())? - 1].pow(e))
        })
    }
}

/// `K_k^n` on `(Z/nZ)^k`, coordinates listed first to last.
pub struct KAbstract {
    pub k: usize,
    pub n: usize,
    pub gens: Vec<Perm>,
}

impl KAbstract {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || n == 0 {
            return Err(Error::InvalidArgument("K_k^n needs k, n >= 1".into()));
        }
        let size = n.pow(k as u32);
        let gens = (1..=k)
            .map(|i| {
                let images = (0..size)
                    .map(|x| {
                        let mut c = Self::decode(k, n, x);
                        if c[..i - 1].iter().all(|&v| v == 0) {
                            c[i - 1] = (c[i - 1] + 1) % n;
                        }
                        Self::encode(n, &c)
                    })
                    .collect();
                Perm::from_images(images).expect("bijection")
            })
            .collect();
        Ok(Self { k, n, gens })
    }

    pub fn encode(n: usize, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * n + c)
    }

    pub fn decode(k: usize, n: usize, mut x: usize) -> Vec<usize> {
        let mut c = vec![0; k];
        for slot in c.iter_mut().rev() {
            *slot = x % n;
            x /= n;
        }
        c
    }

    pub fn eval(&self, word: &GroupWord) -> Result<Perm> {
        word_perm(word, self.n.pow(self.k as u32), &|name, e| {
            Ok(self.gens[generator_index(name, self.k)? - 1].pow(e))
        })
    }
}

pub fn k_abstract_action(k: usize, n: usize, word: &GroupWord) -> Result<Perm> {
    KAbstract::new(k, n)?.eval(word)
}

/// `Z ≀ Z` normal form of a word in `g1 = t`, `g2 = u`.
pub fn zz_oracle(word: &GroupWord) -> Result<LamplighterElement> {
    LamplighterElement::eval(word, &[0], |name, e| match name {
        "g1" => Some(LamplighterElement::translation(e)),
        "g2" => Some(LamplighterElement::lamp(0, &[0], e)),
        _ => None,
    })
    .ok_or_else(|| Error::UnknownGenerator(word.to_string()))
}

fn names(k: usize) -> Vec<String> {
    (1..=k).map(generator_name).collect()
}

/// Conjugacy with `K_{ℓ}^L`: heads on tracks `1..=ℓ` share a parity and sit at
/// `par + 2h_j`; coordinates are `(h_1 - h_2, …, h_{ℓ-1} - h_ℓ, h_ℓ)` mod `L`.
/// Tracks from the first missing or off-parity head on are frozen, and so is
/// every generator reaching them.
pub fn conjugacy_check(k: usize, lens: &[usize]) -> Result<Report> {
    let suite = "khat";
    let mut report = Report::new();
    for &len in lens {
        let level = RunLevel::khat(k, len);
        let mut bad: Option<String> = None;
        let mut abstracts: HashMap<usize, KAbstract> = HashMap::new();
        for s in &level.states {
            let par = s.tracks[0].position().map(|p| p % 2);
            let l = s
                .tracks
                .iter()
                .take_while(|t| t.position().is_some_and(|p| Some(p % 2) == par))
                .count();
            let coords = |st: &HeadState| -> Vec<usize> {
                let h: Vec<usize> = st.tracks[..l].iter().map(|t| t.position().unwrap() / 2).collect();
                (0..l).map(|j| if j + 1 < l { (h[j] + len - h[j + 1]) % len } else { h[j] }).collect()
            };
            for i in 1..=k {
                let image = &level.states[level.gens[i - 1].apply(s.index())];
                let ok = if i > l {
                    image == s
                } else {
                    let ka = match abstracts.entry(l) {
                        std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                        std::collections::hash_map::Entry::Vacant(e) => e.insert(KAbstract::new(l, len)?),
                    };
                    let expect = ka.gens[i - 1].apply(KAbstract::encode(len, &coords(s)));
                    image.tracks[l..] == s.tracks[l..]
                        && image.tracks[..l].iter().all(|t| t.position().is_some_and(|p| Some(p % 2) == par))
                        && KAbstract::encode(len, &coords(image)) == expect
                };
                if !ok && bad.is_none() {
                    bad = Some(format!("g{i} on {:?}", s.tracks));
                }
            }
        }
        report.push(Record::check(suite, format!("conjugacy.k{k}.len{len}"), bad.is_none(), || bad.unwrap()));
    }
    Ok(report)
}

/// Words of length `<= max_len` in `g1..gk` acting trivially on every listed level.
fn trivial_words<'a>(words: &'a [GroupWord], perms: &[&dyn Fn(&GroupWord) -> Result<Perm>]) -> Result<HashSet<&'a GroupWord>> {
    let mut out = HashSet::new();
    'w: for w in words {
        for p in perms {
            if !p(w)?.is_identity() {
                continue 'w;
            }
        }
        out.insert(w);
    }
    Ok(out)
}

/// Relations among words of length `<= word_len` on runs of lengths `lens`
/// (tapes of period up to `max(lens) + 2`) against those of `∏_{n ∈ ns} K_k^n`.
pub fn marked_ball_compare(k: usize, lens: &[usize], ns: &[usize], word_len: usize) -> Result<Record> {
    let nm = names(k);
    let words = reduced_words(&nm.iter().map(String::as_str).collect::<Vec<_>>(), word_len);
    let levels: Vec<RunLevel> = lens.iter().map(|&l| RunLevel::khat(k, l)).collect();
    let abstracts: Vec<KAbstract> = ns.iter().map(|&n| KAbstract::new(k, n)).collect::<Result<_>>()?;
    let ca: Vec<Box<dyn Fn(&GroupWord) -> Result<Perm> + '_>> =
        levels.iter().map(|l| Box::new(move |w: &GroupWord| l.eval(w)) as Box<dyn Fn(&GroupWord) -> Result<Perm>>).collect();
    let ab: Vec<Box<dyn Fn(&GroupWord) -> Result<Perm> + '_>> =
        abstracts.iter().map(|a| Box::new(move |w: &GroupWord| a.eval(w)) as Box<dyn Fn(&GroupWord) -> Result<Perm>>).collect();
    let lhs = trivial_words(&words, &ca.iter().map(|b| &**b as &dyn Fn(&GroupWord) -> Result<Perm>).collect::<Vec<_>>())?;
    let rhs = trivial_words(&words, &ab.iter().map(|b| &**b as &dyn Fn(&GroupWord) -> Result<Perm>).collect::<Vec<_>>())?;
    let mut diff: Vec<String> = lhs.symmetric_difference(&rhs).map(|w| w.to_string()).collect();
    diff.sort();
    Ok(Record::check("khat", format!("marked_ball.k{k}.L{word_len}"), diff.is_empty(), || {
        format!("symmetric_difference={}", diff.iter().take(5).cloned().collect::<Vec<_>>().join("|"))
    })
    .with_detail(format!("run_lengths={lens:?} moduli={ns:?} relations={}", lhs.len())))
}

/// `Z ≀ Z` through `g1 = t`, `g2 = u`: abstract relations of length `<= word_len`
/// hold at every period `<= max_period`, and every non-relation moves some tape
/// of period `<= witness_period`.
pub fn zz_realization_check(word_len: usize, max_period: usize, witness_period: usize) -> Result<Report> {
    let suite = "khat";
    let a = khat_alphabet(2)?;
    let table = khat_table(2)?;
    let words = reduced_words(&["g1", "g2"], word_len);
    let levels: Vec<RunLevel> = (1..=witness_period.saturating_sub(2)).map(|l| RunLevel::khat(2, l)).collect();
    let id = LamplighterElement::identity();
    let (mut relations, mut broken, mut witnessed, mut missing) = (0, Vec::new(), 0, Vec::new());
    for w in &words {
        if zz_oracle(w)? == id {
            relations += 1;
            for lv in levels.iter().filter(|l| l.len + 2 <= max_period) {
                if !lv.eval(w)?.is_identity() {
                    broken.push(format!("{w}@len{}", lv.len));
                    break;
                }
            }
            continue;
        }
        let mut found = false;
        for lv in &levels {
            let p = lv.eval(w)?;
            let moved = p.moved_points().next();
            if let Some(x) = moved {
                // confirm on an actual tape
                let tape = lv.states[x].tape(&a);
                if table.apply_cells(w, &tape)? != tape {
                    found = true;
                    break;
                }
            }
        }
        if found {
            witnessed += 1;
        } else {
            missing.push(w.to_string());
        }
    }
    let mut report = Report::new();
    report.push(
        Record::check(suite, format!("zz.relations.L{word_len}.P{max_period}"), broken.is_empty(), || {
            broken.iter().take(5).cloned().collect::<Vec<_>>().join("|")
        })
        .with_detail(format!("relations={relations}")),
    );
    let check = format!("zz.non_relations.L{word_len}.W{witness_period}");
    report.push(if missing.is_empty() {
        Record::pass(suite, check).with_detail(format!("witnessed={witnessed}"))
    } else {
        Record::new(suite, check, Status::Inconclusive)
            .with_witness(missing.iter().take(5).cloned().collect::<Vec<_>>().join("|"))
            .with_detail(format!("witnessed={witnessed} missing={}", missing.len()))
    });
    Ok(report)
}

/// `w = g3^h g3^-1` with `h = g2^{g1^n}`.
pub fn torsion_word(n: i64) -> GroupWord {
    let g = |i: &str| GroupWord::letter(i, 1);
    let h = GroupWord::conjugate(&g("g2"), &g("g1").pow(n));
    GroupWord::conjugate(&g("g3"), &h).concat(&g("g3").inverse())
}

#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub report: Report,
    /// Order of `w` as an automorphism restricted to the tested periods.
    pub order: u64,
    /// Run lengths where `w` acts nontrivially, with its order there.
    pub levels: Vec<(usize, u64)>,
}

/// Nontrivial in `K_3^n`, trivial in `K_3^ℓ` for `ℓ ∈ trivial_at`, and of
/// finite order on runs of every length `<= max_period - 2`.
pub fn torsion_witness(n: usize, trivial_at: &[usize], max_period: usize) -> Result<TorsionResult> {
    let suite = "khat";
    let w = torsion_word(n as i64);
    let mut report = Report::new();
    let small = k_abstract_action(3, n, &w)?;
    let moved = small.moved_points().next();
    report.push(Record::check(suite, format!("torsion.nontrivial_in_K3^{n}"), moved.is_some(), String::new).with_witness(
        moved.map_or("-".into(), |x| format!("{:?}->{:?}", KAbstract::decode(3, n, x), KAbstract::decode(3, n, small.apply(x)))),
    ));
    for &l in trivial_at {
        let p = k_abstract_action(3, l, &w)?;
        report.push(Record::check(suite, format!("torsion.trivial_in_K3^{l}"), p.is_identity(), || {
            format!("moved={}", p.moved_points().count())
        }));
    }
    let mut order = 1;
    let mut levels = Vec::new();
    for len in 1..=max_period.saturating_sub(2) {
        let o = RunLevel::khat(3, len).eval(&w)?.order();
        if o > 1 {
            levels.push((len, o));
        }
        order = lcm(order, o);
    }
    report.push(
        Record::pass(suite, format!("torsion.order_up_to_period_{max_period}"))
            .with_detail(format!("order={order} levels={levels:?}")),
    );
    Ok(TorsionResult { report, order, levels })
}

/// Derived length of `⟨g_1..g_k⟩ ≤ Sym((Z/nZ)^k)` is at most `k`: exact when the
/// group has at most `limit` elements, otherwise by random nested commutators
/// (depth `k` must vanish, depth `k - 1` must not).
pub fn solvability_check(k: usize, n: usize, limit: usize, samples: usize, seed: u64) -> Result<Record> {
    let ka = KAbstract::new(k, n)?;
    let degree = n.pow(k as u32);
    let check = format!("solvable.k{k}.n{n}");
    if let Ok(orders) = derived_series_orders(&ka.gens, degree, limit) {
        let ok = *orders.last().unwrap() == 1 && orders.len() <= k + 1;
        return Ok(Record::check("khat", check, ok, || format!("orders={orders:?}")).with_detail(format!("exact orders={orders:?}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random = |rng: &mut ChaCha8Rng| {
        let mut p = Perm::identity(degree);
        for _ in 0..40 {
            let g = &ka.gens[rng.gen_range(0..k)];
            p = p.then_after(&if rng.gen_bool(0.5) { g.clone() } else { g.inverse() });
        }
        p
    };
    fn nested(depth: usize, rng: &mut ChaCha8Rng, random: &mut dyn FnMut(&mut ChaCha8Rng) -> Perm) -> Perm {
        if depth == 0 {
            return random(rng);
        }
        let a = nested(depth - 1, rng, random);
        let b = nested(depth - 1, rng, random);
        Perm::commutator(&a, &b)
    }
    let mut vanish = true;
    let mut deep_nontrivial = false;
    for _ in 0..samples {
        vanish &= nested(k, &mut rng, &mut random).is_identity();
        deep_nontrivial |= !nested(k - 1, &mut rng, &mut random).is_identity();
    }
    Ok(Record::check("khat", check, vanish && deep_nontrivial, || {
        format!("depth_k_vanish={vanish} depth_k-1_nontrivial={deep_nontrivial}")
    })
    .with_detail(format!("sampled={samples}")))
}

/// Inverse pairs, run-partition preservation and windowed agreement for every `g_i`.
pub fn verify_khat(k: usize, params: &VerifyParams) -> Result<Report> {
    let suite = "khat";
    let mut report = Report::new();
    let a = khat_alphabet(k)?;
    for i in 1..=k {
        let (f, b) = (khat_map(k, i, 1)?, khat_map(k, i, -1)?);
        let name = generator_name(i);
        report.push(verify::check_inverse_pair(suite, &name, &f, &b, params));
        let (bad, scope) = verify::counterexample(&a, params, |c| {
            let t = split_tracks(&a, k, c);
            good_positions(&t) == good_positions(&split_tracks(&a, k, &f.apply_cells(c)))
        });
        report.push(
            Record::check(suite, format!("{name}.runs_preserved"), bad.is_none(), || verify::show(&a, bad.as_deref().unwrap()))
                .with_detail(scope),
        );
        let code = f.windowed(KHAT_RADIUS);
        let (bad, scope) = verify::counterexample(&a, params, |c| code.apply_cells(c) == f.apply_cells(c));
        report.push(
            Record::check(suite, format!("{name}.windowed_agrees"), bad.is_none(), || verify::show(&a, bad.as_deref().unwrap()))
                .with_detail(scope),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn track(s: &str) -> Vec<Symbol> {
        s.chars()
            .map(|c| match c {
                '>' => GT,
                '<' => LT,
                '1' => ONE,
                '2' => TWO,
                _ => panic!("bad char"),
            })
            .collect()
    }

    #[test]
    fn belt_positions_for_length_three() {
        let cases = ["1<<", ">1<", ">>1", ">>2", ">2<", "2<<"];
        for (p, s) in cases.iter().enumerate() {
            assert_eq!(read_track(&track(s)), TrackState::Head(p), "{s}");
            assert_eq!(write_track(TrackState::Head(p), 3), track(s));
        }
    }

    #[test]
    fn single_track_steps() {
        let s = HeadState { len: 3, tracks: vec![TrackState::Head(1)] };
        assert_eq!(write_track(s.step(1, 1).tracks[0], 3), track(">>2"));
        let s = HeadState { len: 3, tracks: vec![TrackState::Head(0)] };
        assert_eq!(write_track(s.step(1, 1).tracks[0], 3), track(">>1"));
    }

    #[test]
    fn unequal_heads_block() {
        let s = HeadState { len: 4, tracks: vec![TrackState::Head(1), TrackState::Head(3)] };
        assert_eq!(s.step(2, 1), s);
        assert_ne!(s.step(1, 1), s);
    }

    #[test]
    fn run_tapes_have_one_run() {
        let a = khat_alphabet(2).unwrap();
        for len in 1..=5 {
            for s in HeadState::all(2, len) {
                let tape = s.tape(&a);
                let t = split_tracks(&a, 2, &tape);
                assert_eq!(runs(&t), Some(vec![(0, len)]), "{:?}", s.tracks);
            }
        }
    }

    #[test]
    fn runwise_matches_run_level() {
        let a = khat_alphabet(2).unwrap();
        let t = khat_table(2).unwrap();
        for len in 1..=5 {
            let lv = RunLevel::khat(2, len);
            for (x, s) in lv.states.iter().enumerate() {
                for i in 0..2 {
                    let image = &lv.states[lv.gens[i].apply(x)];
                    let out = t.generators()[i].forward.apply_cells(&s.tape(&a));
                    assert_eq!(out[..len], image.cells(&a)[..]);
                }
            }
        }
    }

    #[test]
    fn abstract_k2_n2() {
        let ka = KAbstract::new(2, 2).unwrap();
        let g2 = &ka.gens[1];
        assert_eq!(g2.apply(KAbstract::encode(2, &[1, 0])), KAbstract::encode(2, &[1, 0]));
        assert_eq!(g2.apply(KAbstract::encode(2, &[0, 1])), KAbstract::encode(2, &[0, 0]));
        let w = GroupWord::parse("[g2, g2^g1]", &["g1", "g2"]).unwrap();
        for n in 3..=6 {
            assert!(k_abstract_action(2, n, &w).unwrap().is_identity());
        }
    }

    #[test]
    fn khat_generators_verify() {
        let params = VerifyParams { max_period: 4, random_count: 200, random_max_period: 30, ..Default::default() };
        let r = verify_khat(2, &params).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn conjugacy_small() {
        assert!(conjugacy_check(1, &[1, 2, 3, 4]).unwrap().all_passed());
        let r = conjugacy_check(2, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn k1_relations_are_exponent_sum_zero() {
        let r = marked_ball_compare(1, &[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6], 6).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn torsion_word_shape() {
        assert_eq!(torsion_word(2).to_string(), "g1^-2 g2^-1 g1^2 g3 g1^-2 g2 g1^2 g3^-1");
    }

    #[test]
    fn solvable_small_exact() {
        assert!(solvability_check(2, 3, 100_000, 0, 1).unwrap().passed());
        assert!(solvability_check(3, 2, 100_000, 0, 1).unwrap().passed());
    }
}
