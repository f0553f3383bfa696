//! Pointy actions: lamplighters, products, track swaps, and the free-orbit
//! and weak-pointiness checkers.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::action::{reduced_words, GroupWord};
use crate::alphabet::{Alphabet, Symbol};
use crate::code::{Automorphism, SlidingBlockCode};
use crate::config::FiniteConfig;
use crate::error::{Error, Result};
use crate::report::{Record, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointyKind {
    Pointy,
    WeaklyPointy,
}

/// Zero-fixing automorphisms together with a special zero-finite point.
#[derive(Clone, Debug)]
pub struct PointyAction {
    pub name: String,
    pub alphabet: Alphabet,
    pub generators: Vec<Automorphism>,
    pub special: FiniteConfig,
    pub kind: PointyKind,
}

impl PointyAction {
    pub fn new(
        name: impl Into<String>,
        alphabet: &Alphabet,
        generators: Vec<Automorphism>,
        special: FiniteConfig,
        kind: PointyKind,
    ) -> Result<Self> {
        for g in &generators {
            if !g.alphabet().same(alphabet) {
                return Err(Error::AlphabetMismatch(format!("generator {}", g.name)));
            }
            if !(g.forward.maps_zero_to_zero() && g.backward.maps_zero_to_zero()) {
                return Err(Error::NotZeroFixing(g.name.clone()));
            }
        }
        if !special.alphabet().same(alphabet) {
            return Err(Error::AlphabetMismatch("special point".into()));
        }
        Ok(Self { name: name.into(), alphabet: alphabet.clone(), generators, special, kind })
    }

    pub fn names(&self) -> Vec<&str> {
        self.generators.iter().map(|g| g.name.as_str()).collect()
    }

    pub fn generator(&self, name: &str) -> Result<&Automorphism> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// The core word `u` of the special point.
    pub fn core(&self) -> &[Symbol] {
        self.special.word()
    }

    /// Image of a zero-finite point under a word, rightmost letter first.
    pub fn apply_finite(&self, word: &GroupWord, x: &FiniteConfig) -> Result<FiniteConfig> {
        let mut y = x.clone();
        for (name, e) in word.steps().collect::<Vec<_>>().into_iter().rev() {
            let g = self.generator(name)?;
            y = if e > 0 { g.forward.apply_finite(&y)? } else { g.backward.apply_finite(&y)? };
        }
        Ok(y)
    }

    /// Image of a cyclic tape under a word, rightmost letter first.
    pub fn apply_cells(&self, word: &GroupWord, cells: &[Symbol]) -> Result<Vec<Symbol>> {
        use crate::action::TapeMap;
        let mut y = cells.to_vec();
        for (name, e) in word.steps().collect::<Vec<_>>().into_iter().rev() {
            let g = self.generator(name)?;
            y = if e > 0 { g.forward.apply_cells(&y) } else { g.backward.apply_cells(&y) };
        }
        Ok(y)
    }
}

/// Position/value alphabet of a lamplighter with lamp group `∏ Z_{m_j}`.
pub fn lamplighter_alphabet(moduli: &[u32]) -> Result<Alphabet> {
    if moduli.is_empty() || moduli.iter().any(|&m| m < 2) {
        return Err(Error::InvalidArgument(format!("moduli {moduli:?} must be nonempty and at least 2")));
    }
    let values = if moduli.len() == 1 {
        Alphabet::numeric(moduli[0] as usize)?
    } else {
        Alphabet::product(moduli.iter().map(|&m| Alphabet::numeric(m as usize)).collect::<Result<_>>()?)?
    };
    Alphabet::product(vec![Alphabet::numeric(2)?, values])
}

/// Shift of the position track: `T(x)_i` takes its head bit from `x_{i+1}`.
pub fn head_shift(alphabet: &Alphabet) -> Result<Automorphism> {
    let head = alphabet.tracks().ok_or(Error::NoTracks)?[0].clone();
    let s = Automorphism::shift(&head);
    Ok(Automorphism { name: "T".into(), ..s.on_track(alphabet, 0)? })
}

/// Cellwise addition of the head bit into lamp coordinate `j`, times `sign`.
fn lamp_add(alphabet: &Alphabet, moduli: &[u32], j: usize, sign: i64) -> SlidingBlockCode {
    let a = alphabet.clone();
    let multi = moduli.len() > 1;
    let m = moduli[j] as i64;
    SlidingBlockCode::cellwise(alphabet, move |s| {
        let bit = a.component(s, 0) as i64;
        let v = a.component(s, 1);
        let tracks = a.tracks().unwrap();
        let (cur, put): (i64, Box<dyn Fn(Symbol) -> Symbol>) = if multi {
            let vt = tracks[1].clone();
            (vt.component(v, j) as i64, Box::new(move |x| vt.with_component(v, j, x)))
        } else {
            (v as i64, Box::new(|x| x))
        };
        let next = (cur + sign * bit).rem_euclid(m) as Symbol;
        a.with_component(s, 1, put(next))
    })
}

/// `Π Z_{m_j} ≀ Z` acting on head/lamp tracks; generators `T` and `F` (or `F1`, `F2`, ...).
pub fn lamplighter_action(moduli: &[u32]) -> Result<PointyAction> {
    let alphabet = lamplighter_alphabet(moduli)?;
    let mut gens = vec![head_shift(&alphabet)?];
    for j in 0..moduli.len() {
        let name = if moduli.len() == 1 { "F".to_string() } else { format!("F{}", j + 1) };
        gens.push(Automorphism::new(name, lamp_add(&alphabet, moduli, j, 1), lamp_add(&alphabet, moduli, j, -1))?);
    }
    let mark = alphabet.join(&[1, alphabet.tracks().unwrap()[1].zero()])?;
    let special = FiniteConfig::new(&alphabet, 0, vec![mark])?;
    let label: Vec<String> = moduli.iter().map(u32::to_string).collect();
    PointyAction::new(format!("lamplighter({})", label.join(",")), &alphabet, gens, special, PointyKind::Pointy)
}

/// Direct product on two tracks; clashing generator names of `q` get a `_2` suffix.
pub fn product_action(p: &PointyAction, q: &PointyAction) -> Result<PointyAction> {
    let alphabet = Alphabet::product(vec![p.alphabet.clone(), q.alphabet.clone()])?;
    let mut gens = Vec::new();
    for g in &p.generators {
        gens.push(g.on_track(&alphabet, 0)?);
    }
    for g in &q.generators {
        let mut lifted = g.on_track(&alphabet, 1)?;
        if p.generators.iter().any(|h| h.name == g.name) {
            lifted.name = format!("{}_2", g.name);
        }
        gens.push(lifted);
    }
    let (a, b) = (&p.special, &q.special);
    let lo = a.support().map_or(0, |s| s.0).min(b.support().map_or(0, |s| s.0));
    let hi = a.support().map_or(0, |s| s.1).max(b.support().map_or(0, |s| s.1));
    let word = (lo..=hi).map(|i| alphabet.join(&[a.at(i), b.at(i)])).collect::<Result<_>>()?;
    let special = FiniteConfig::new(&alphabet, lo, word)?;
    let kind = if p.kind == PointyKind::Pointy && q.kind == PointyKind::Pointy {
        PointyKind::Pointy
    } else {
        PointyKind::WeaklyPointy
    };
    PointyAction::new(format!("{}x{}", p.name, q.name), &alphabet, gens, special, kind)
}

/// Cellwise permutation of track contents: old track `j` moves to track `perm[j]`.
pub fn track_swap(alphabet: &Alphabet, perm: &[usize]) -> Result<Automorphism> {
    let tracks = alphabet.tracks().ok_or(Error::NoTracks)?;
    let p = crate::perm::Perm::from_images(perm.to_vec())?;
    if p.degree() != tracks.len() || tracks.iter().any(|t| !t.same(&tracks[0])) {
        return Err(Error::InvalidArgument("track swap needs equal track alphabets, one image per track".into()));
    }
    let build = |p: crate::perm::Perm| {
        let a = alphabet.clone();
        SlidingBlockCode::cellwise(alphabet, move |s| {
            let parts = a.split(s).unwrap();
            let mut out = parts.clone();
            for (j, &c) in parts.iter().enumerate() {
                out[p.apply(j)] = c;
            }
            a.join(&out).unwrap()
        })
    };
    Automorphism::new(format!("swap{perm:?}"), build(p.clone()), build(p.inverse()))
}

/// Element of `Π Z_{m_j} ≀ Z` in normal form; a modulus `0` stands for `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LamplighterElement {
    pub shift: i64,
    pub lamps: BTreeMap<i64, Vec<i64>>,
}

impl LamplighterElement {
    pub fn identity() -> Self {
        Self { shift: 0, lamps: BTreeMap::new() }
    }

    /// `self · other` with `(f, s)(g, t) = (f + σ^s g, s + t)`.
    pub fn mul(&self, other: &Self, moduli: &[u32]) -> Self {
        let mut lamps = self.lamps.clone();
        for (&i, v) in &other.lamps {
            let slot = lamps.entry(i + self.shift).or_insert_with(|| vec![0; moduli.len()]);
            for (j, (x, y)) in slot.iter_mut().zip(v).enumerate() {
                *x += y;
                if moduli[j] > 0 {
                    *x = x.rem_euclid(moduli[j] as i64);
                }
            }
        }
        lamps.retain(|_, v| v.iter().any(|&x| x != 0));
        Self { shift: self.shift + other.shift, lamps }
    }

    pub fn lamp(j: usize, moduli: &[u32], e: i64) -> Self {
        let mut v = vec![0; moduli.len()];
        v[j] = if moduli[j] > 0 { e.rem_euclid(moduli[j] as i64) } else { e };
        let mut lamps = BTreeMap::new();
        if v[j] != 0 {
            lamps.insert(0, v);
        }
        Self { shift: 0, lamps }
    }

    pub fn translation(e: i64) -> Self {
        Self { shift: e, lamps: BTreeMap::new() }
    }

    /// Evaluates a word given the abstract image of each unit letter.
    pub fn eval(word: &GroupWord, moduli: &[u32], letter: impl Fn(&str, i64) -> Option<Self>) -> Option<Self> {
        let mut acc = Self::identity();
        for (name, e) in word.steps() {
            acc = acc.mul(&letter(name, e)?, moduli);
        }
        Some(acc)
    }
}

/// The abstract lamplighter oracle matching [`lamplighter_action`]'s generator names.
pub fn lamplighter_oracle(moduli: &[u32]) -> impl Fn(&GroupWord) -> LamplighterElement + '_ {
    move |w| {
        LamplighterElement::eval(w, moduli, |name, e| match name {
            "T" => Some(LamplighterElement::translation(e)),
            "F" => Some(LamplighterElement::lamp(0, moduli, e)),
            _ => {
                let j: usize = name.strip_prefix('F')?.parse().ok()?;
                Some(LamplighterElement::lamp(j.checked_sub(1)?, moduli, e))
            }
        })
        .expect("lamplighter generator names")
    }
}

/// Compares the orbit map `w ↦ w·x₀` on the reduced ball with an abstract normal form:
/// two words must share an image exactly when they are the same group element.
pub fn free_orbit_check<K: Eq + Hash + Clone>(
    p: &PointyAction,
    radius: usize,
    oracle: impl Fn(&GroupWord) -> K,
) -> Result<Report> {
    let suite = "pointy";
    let words = reduced_words(&p.names(), radius);
    let mut by_image: HashMap<FiniteConfig, (K, GroupWord)> = HashMap::new();
    let mut by_element: HashMap<K, (FiniteConfig, GroupWord)> = HashMap::new();
    let mut collision = None;
    let mut broken = None;
    for w in &words {
        let img = p.apply_finite(w, &p.special)?;
        let key = oracle(w);
        match by_image.get(&img) {
            Some((k, v)) if *k != key && collision.is_none() => collision = Some(format!("{v}|{w}")),
            Some(_) => {}
            None => {
                by_image.insert(img.clone(), (key.clone(), w.clone()));
            }
        }
        match by_element.get(&key) {
            Some((i, v)) if *i != img && broken.is_none() => broken = Some(format!("{v}|{w}")),
            Some(_) => {}
            None => {
                by_element.insert(key, (img, w.clone()));
            }
        }
    }
    let detail = format!("words={} elements={} radius={radius}", words.len(), by_element.len());
    let mut r = Report::new();
    r.push(
        Record::check(suite, format!("{}.free_orbit", p.name), collision.is_none(), || collision.clone().unwrap())
            .with_detail(detail.clone()),
    );
    r.push(
        Record::check(suite, format!("{}.relations_respected", p.name), broken.is_none(), || broken.clone().unwrap())
            .with_detail(detail),
    );
    Ok(r)
}

/// Words stabilizing `x₀` must stabilize every `u0^{n-|u|}` with `n` in `periods`.
pub fn weak_pointy_check(p: &PointyAction, radius: usize, periods: &[usize]) -> Result<Report> {
    let u = p.core();
    let z = p.alphabet.zero();
    let mut violation = None;
    let mut stabilizers = 0;
    'words: for w in reduced_words(&p.names(), radius).iter().skip(1) {
        if p.apply_finite(w, &p.special)? != p.special {
            continue;
        }
        stabilizers += 1;
        for &n in periods.iter().filter(|&&n| n >= u.len()) {
            let mut tape = u.to_vec();
            tape.resize(n, z);
            if p.apply_cells(w, &tape)? != tape {
                violation = Some(format!("{w}@period={n}"));
                break 'words;
            }
        }
    }
    let mut r = Report::new();
    r.push(
        Record::check("pointy", format!("{}.weakly_pointy", p.name), violation.is_none(), || {
            violation.clone().unwrap()
        })
        .with_detail(format!("nontrivial_stabilizers={stabilizers} radius={radius} periods={periods:?}")),
    );
    Ok(r)
}

/// On `Σ^{Z_n}`, a lamplighter word acts trivially exactly when it is trivial in
/// `Z_m ≀ Z_n`; checked on random words against all single-head tapes.
pub fn lamplighter_level_check(m: u32, max_period: usize, samples: usize, seed: u64) -> Result<Record> {
    use rand::{Rng, SeedableRng};
    let p = lamplighter_action(&[m])?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let zero = p.alphabet.zero();
    let head = p.special.word()[0];
    for n in 1..=max_period {
        for _ in 0..samples {
            let shift = rng.gen_range(-(2 * n as i64)..=2 * n as i64);
            let lamps: Vec<i64> = (0..n).map(|_| rng.gen_range(0..2 * m as i64)).collect();
            // T^shift · Π_k T^-k F^{a_k} T^k, with positions read mod n
            let mut letters = vec![("T".to_string(), shift)];
            for (k, &a) in lamps.iter().enumerate() {
                let k = k as i64 + if rng.gen_bool(0.5) { n as i64 } else { 0 };
                letters.extend([("T".to_string(), -k), ("F".to_string(), a), ("T".to_string(), k)]);
            }
            let w = GroupWord::from_letters(letters);
            let trivial = shift.rem_euclid(n as i64) == 0 && lamps.iter().all(|&a| a % m as i64 == 0);
            let acts_trivially = (0..n).all(|i| {
                let mut tape = vec![zero; n];
                tape[i] = head;
                p.apply_cells(&w, &tape).unwrap() == tape
            });
            if trivial != acts_trivially {
                return Ok(Record::fail("pointy", format!("lamplighter{m}.level_faithful"), format!("period={n} word={w}")));
            }
        }
    }
    Ok(Record::pass("pointy", format!("lamplighter{m}.level_faithful"))
        .with_detail(format!("periods<={max_period} samples={samples}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::TapeMap;

    #[test]
    fn flip_is_involution_and_moves_with_head() {
        let p = lamplighter_action(&[2]).unwrap();
        let x0 = &p.special;
        let ff = GroupWord::parse("F F", &p.names()).unwrap();
        assert_eq!(&p.apply_finite(&ff, x0).unwrap(), x0);
        let tf = GroupWord::parse("T F", &p.names()).unwrap();
        let ft = GroupWord::parse("F T", &p.names()).unwrap();
        assert_ne!(p.apply_finite(&tf, x0).unwrap(), p.apply_finite(&ft, x0).unwrap());
    }

    #[test]
    fn mod_three_flip_has_order_three() {
        let p = lamplighter_action(&[3]).unwrap();
        let f = p.generator("F").unwrap();
        for x in crate::config::PeriodicConfig::all(&p.alphabet, 3) {
            let once = f.forward.apply(&x);
            let thrice = f.forward.apply(&f.forward.apply(&once));
            assert_eq!(thrice, x);
            if x.cells().iter().any(|&c| p.alphabet.component(c, 0) == 1) {
                assert_ne!(once, x);
            }
        }
    }

    #[test]
    fn lamplighter_orbit_is_free() {
        let p = lamplighter_action(&[2]).unwrap();
        let r = free_orbit_check(&p, 6, lamplighter_oracle(&[2])).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn trivial_oracle_detects_collisions() {
        let p = lamplighter_action(&[2]).unwrap();
        let r = free_orbit_check(&p, 2, |_| ()).unwrap();
        assert!(!r.all_passed());
    }

    #[test]
    fn product_keeps_freeness() {
        let p = lamplighter_action(&[2]).unwrap();
        let q = lamplighter_action(&[3]).unwrap();
        let pq = product_action(&p, &q).unwrap();
        assert_eq!(pq.generators.len(), 4);
        assert_eq!(pq.names(), vec!["T", "F", "T_2", "F_2"]);
        let oracle = |w: &GroupWord| {
            let (mut a, mut b) = (GroupWord::empty(), GroupWord::empty());
            for (n, e) in w.steps() {
                match n.strip_suffix("_2") {
                    Some(base) => b = b.concat(&GroupWord::letter(base, e)),
                    None => a = a.concat(&GroupWord::letter(n, e)),
                }
            }
            (lamplighter_oracle(&[2])(&a), lamplighter_oracle(&[3])(&b))
        };
        let r = free_orbit_check(&pq, 4, oracle).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn swap_conjugates_tracks() {
        let p = lamplighter_action(&[2]).unwrap();
        let pp = product_action(&p, &p).unwrap();
        let s = track_swap(&pp.alphabet, &[1, 0]).unwrap();
        let (t1, t2) = (pp.generator("T").unwrap(), pp.generator("T_2").unwrap());
        for n in 1..=3 {
            for x in crate::config::PeriodicConfig::all(&pp.alphabet, n) {
                let lhs = s.forward.apply(&t1.forward.apply(&s.forward.apply(&x)));
                assert_eq!(lhs, t2.forward.apply(&x));
            }
        }
        let three = Alphabet::product(vec![Alphabet::numeric(2).unwrap(); 3]).unwrap();
        let c = track_swap(&three, &[1, 2, 0]).unwrap();
        let x = crate::config::PeriodicConfig::new(&three, vec![1, 2, 4]).unwrap();
        let once = c.forward.apply(&x);
        assert_ne!(once, x);
        assert_eq!(c.forward.apply(&c.forward.apply(&once)), x);
    }

    #[test]
    fn lamplighter_is_weakly_pointy() {
        let p = lamplighter_action(&[2]).unwrap();
        let r = weak_pointy_check(&p, 6, &(4..=10).collect::<Vec<_>>()).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn short_range_detector_breaks_weak_pointiness() {
        let mut p = lamplighter_action(&[2]).unwrap();
        let a = p.alphabet.clone();
        let a2 = a.clone();
        // flips the lamp under a head that sees another head two cells to the right
        let g = SlidingBlockCode::from_fn(&a, 0, 2, move |w| {
            let (h0, h2) = (a2.component(w[0], 0), a2.component(w[2], 0));
            if h0 == 1 && h2 == 1 {
                a2.with_component(w[0], 1, 1 - a2.component(w[0], 1))
            } else {
                w[0]
            }
        });
        p.generators.push(Automorphism::new("G", g.clone(), g).unwrap());
        let r = weak_pointy_check(&p, 1, &[1, 2, 3]).unwrap();
        assert!(!r.all_passed(), "{r}");
    }

    #[test]
    fn level_faithfulness() {
        for m in [2, 3] {
            let r = lamplighter_level_check(m, 8, 30, 7).unwrap();
            assert_eq!(r.status, crate::report::Status::Pass, "{r}");
        }
    }

    #[test]
    fn head_shift_moves_left() {
        let p = lamplighter_action(&[2]).unwrap();
        let t = p.generator("T").unwrap();
        let y = t.forward.apply_finite(&p.special).unwrap();
        assert_eq!(y.offset(), -1);
        let z = t.forward.apply_cells(&[p.special.word()[0], p.alphabet.zero()]);
        assert_eq!(z[1], p.special.word()[0]);
    }
}
