//! Resolving a config into a generator table and a way to draw its cells.

use cabelt::action::{Generator, GeneratorTable};
use cabelt::afo::{AfoSpec, SafeWordSet};
use cabelt::belt::{embed_automorphism, BeltAlphabet};
use cabelt::khat::{khat_table, KAbstract};
use cabelt::neumann::NeumannSpec;
use cabelt::pointy::lamplighter_action;
use cabelt::text::compact_name;
use cabelt::wreath::{assemble_example_zz2z, Presentation};
use cabelt::{gallery, Alphabet, Automorphism, Error, GroupWord, PeriodicConfig, Result, Symbol};

use crate::config::{parse_cycles, SystemConfig, SystemKind};

/// How one cell is drawn: a stack of track values, or a single glyph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Leaf {
    Value { track: usize, value: usize },
    Glyph(String),
}

#[derive(Clone, Debug)]
pub struct CellStyle {
    alphabet: Alphabet,
    belt: Option<BeltAlphabet>,
}

fn leaves(alphabet: &Alphabet, s: Symbol, first_track: usize, out: &mut Vec<Leaf>) -> usize {
    match alphabet.tracks() {
        Some(tracks) => {
            let mut t = first_track;
            for (j, a) in tracks.iter().enumerate() {
                t = leaves(a, alphabet.component(s, j), t, out);
            }
            t
        }
        None => {
            let name = alphabet.name(s);
            out.push(match name.parse::<usize>() {
                Ok(value) => Leaf::Value { track: first_track, value },
                Err(_) => Leaf::Glyph(name.to_string()),
            });
            first_track + 1
        }
    }
}

impl CellStyle {
    pub fn new(alphabet: &Alphabet, belt: Option<BeltAlphabet>) -> Self {
        Self { alphabet: alphabet.clone(), belt }
    }

    /// Number of stacked boxes per cell.
    pub fn height(&self) -> usize {
        let s = match &self.belt {
            Some(b) => b.pair(b.base().zero(), b.base().zero()),
            None => self.alphabet.zero(),
        };
        self.leaves(s).len().max(1)
    }

    /// Boxes top to bottom; a wall is one glyph spanning the cell.
    pub fn leaves(&self, s: Symbol) -> Vec<Leaf> {
        let mut out = Vec::new();
        match &self.belt {
            Some(b) if b.is_pair(s) => {
                let (top, bottom) = b.tracks_of(s);
                let t = leaves(b.base(), top, 0, &mut out);
                leaves(b.base(), bottom, t, &mut out);
            }
            Some(b) => out.push(Leaf::Glyph(b.gamma().name(s).to_string())),
            None => {
                leaves(&self.alphabet, s, 0, &mut out);
            }
        }
        out
    }

    pub fn label(&self, s: Symbol) -> String {
        match &self.belt {
            Some(b) if b.is_pair(s) => {
                let (top, bottom) = b.tracks_of(s);
                format!("{}/{}", compact_name(b.base(), top), compact_name(b.base(), bottom))
            }
            Some(b) => b.gamma().name(s).to_string(),
            None => compact_name(&self.alphabet, s),
        }
    }
}

pub struct System {
    pub config: SystemConfig,
    pub table: GeneratorTable,
    pub style: CellStyle,
    /// Set for AFO systems.
    pub afo: Option<AfoSpec>,
    /// Set for `koracle`: the abstract group instead of a tape action.
    pub oracle: Option<KAbstract>,
    pub presentation: Option<Presentation>,
}

fn numeric(n: usize) -> Result<Alphabet> {
    Alphabet::numeric(n)
}

fn belt_map(name: &str, a: &Alphabet) -> Result<Automorphism> {
    match name {
        "id" => Ok(Automorphism::identity(a)),
        "shift" => Ok(Automorphism::shift(a)),
        "swap" if a.size() == 3 => gallery::conditional_swap(),
        "swap" => Err(Error::InvalidArgument("the swap map is defined on three symbols".into())),
        other => Err(Error::InvalidArgument(format!("unknown belt map {other:?} (id, shift, swap)"))),
    }
}

impl System {
    pub fn build(config: SystemConfig) -> Result<Self> {
        config.validate()?;
        let mut afo = None;
        let mut oracle = None;
        let mut presentation = None;
        let (table, style) = match config.system {
            SystemKind::Afo => {
                let s = config.afo.as_ref().unwrap();
                let a = numeric(s.alphabet)?;
                let words: Vec<Vec<Symbol>> = s.words.iter().map(|w| w.iter().map(|&c| c as Symbol).collect()).collect();
                let safe = match s.n0 {
                    Some(n0) => SafeWordSet::new(&a, words.clone(), n0)?,
                    None => SafeWordSet::with_minimal_threshold(&a, words.clone())?,
                };
                let spec = AfoSpec::new(safe, parse_cycles(&s.pi, words.len())?, s.offsets.clone())?;
                let t = GeneratorTable::new(&a).with(spec.generator("f"))?;
                afo = Some(spec);
                (t, CellStyle::new(&a, None))
            }
            SystemKind::Belt => {
                let s = config.belt.as_ref().unwrap();
                let a = numeric(s.alphabet)?;
                let e = embed_automorphism(&belt_map(&s.map, &a)?, s.doubling)?;
                let style = CellStyle::new(e.alphabet(), Some(e.belt().clone()));
                (GeneratorTable::new(e.alphabet()).with(e.generator("f"))?, style)
            }
            SystemKind::Lamplighter => {
                let p = lamplighter_action(&config.lamplighter.as_ref().unwrap().moduli)?;
                let mut t = GeneratorTable::new(&p.alphabet);
                for g in &p.generators {
                    t.insert(Generator::from(g))?;
                }
                (t, CellStyle::new(&p.alphabet, None))
            }
            SystemKind::Zz2z => {
                let t = assemble_example_zz2z()?;
                let spec = cabelt::wreath::example_zz2z_spec()?;
                let style = CellStyle::new(t.alphabet(), Some(BeltAlphabet::new(spec.alphabet())?));
                if let Some(w) = &config.wreath {
                    if !w.relations.is_empty() || !w.non_relations.is_empty() {
                        let parse = |v: &[String]| v.iter().map(|s| t.parse_word(s)).collect::<Result<Vec<_>>>();
                        presentation = Some(Presentation {
                            relations: parse(&w.relations)?,
                            non_relations: parse(&w.non_relations)?,
                        });
                    }
                }
                (t, style)
            }
            SystemKind::Khat => {
                let t = khat_table(config.khat.as_ref().unwrap().k)?;
                let style = CellStyle::new(t.alphabet(), None);
                (t, style)
            }
            SystemKind::Koracle => {
                let s = config.koracle.as_ref().unwrap();
                let o = KAbstract::new(s.k, s.n)?;
                // names only; the oracle acts on coordinates, not tapes
                let t = khat_table(s.k)?;
                oracle = Some(o);
                let style = CellStyle::new(t.alphabet(), None);
                (t, style)
            }
            SystemKind::Neumann => {
                let t = neumann_spec(&config)?.generators()?;
                let style = CellStyle::new(t.alphabet(), None);
                (t, style)
            }
        };
        Ok(Self { config, table, style, afo, oracle, presentation })
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.table.alphabet()
    }

    pub fn parse_word(&self, text: &str) -> Result<GroupWord> {
        self.table.parse_word(text)
    }

    pub fn parse_input(&self, text: &str) -> Result<PeriodicConfig> {
        cabelt::text::parse_periodic(self.alphabet(), text)
    }
}

pub fn neumann_spec(config: &SystemConfig) -> Result<NeumannSpec> {
    let s = config.neumann.as_ref().ok_or_else(|| Error::Parse("missing [neumann] section".into()))?;
    let need = |v: Option<usize>, key: &str| v.ok_or_else(|| Error::Parse(format!("neumann {}: missing {key}", s.kind)));
    match s.kind.as_str() {
        "even" => Ok(NeumannSpec::EvenBase),
        "prog" => Ok(NeumannSpec::Progression { start: need(s.l, "l")?, step: need(s.k, "k")? }),
        "union" if !s.parts.is_empty() => Ok(NeumannSpec::Union(s.parts.clone())),
        "union" => Err(Error::Parse("neumann union: missing parts".into())),
        other => Err(Error::Parse(format!("neumann: unknown kind {other:?} (even, prog, union)"))),
    }
}

/// Coordinates `a,b,...` of `(Z/nZ)^k`.
pub fn parse_coords(text: &str, k: usize, n: usize) -> Result<Vec<usize>> {
    let v = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad coordinate {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != k || v.iter().any(|&x| x >= n) {
        return Err(Error::Parse(format!("need {k} coordinates below {n}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zz2z_cells_stack_six_boxes() {
        let s = System::build(SystemConfig::from_selector("zz2z").unwrap()).unwrap();
        assert_eq!(s.style.height(), 6);
        let b = BeltAlphabet::new(cabelt::wreath::example_zz2z_spec().unwrap().alphabet()).unwrap();
        assert_eq!(s.style.leaves(b.left_wall()), vec![Leaf::Glyph(">".into())]);
        assert_eq!(s.style.label(b.zero()), "000/000");
    }

    #[test]
    fn every_selector_builds() {
        for sel in ["khat k=2", "koracle k=2 n=3", "neumann even", "neumann prog l=3 k=2", "lamplighter m=2", "zz2z", "afo example", "belt map=swap"] {
            let s = System::build(SystemConfig::from_selector(sel).unwrap()).unwrap();
            assert!(!s.table.is_empty(), "{sel}");
        }
    }
}
