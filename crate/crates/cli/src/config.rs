//! System config documents (TOML) and the one-line `--system` selectors.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use cabelt::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Afo,
    Belt,
    Lamplighter,
    Zz2z,
    Khat,
    Koracle,
    Neumann,
}

impl SystemKind {
    pub fn section(self) -> &'static str {
        match self {
            SystemKind::Afo => "afo",
            SystemKind::Belt => "belt",
            SystemKind::Lamplighter => "lamplighter",
            SystemKind::Zz2z => "wreath",
            SystemKind::Khat => "khat",
            SystemKind::Koracle => "koracle",
            SystemKind::Neumann => "neumann",
        }
    }

    /// Suite run by `verify` when none is named.
    pub fn default_suite(self) -> &'static str {
        match self {
            SystemKind::Afo => "afo",
            SystemKind::Belt => "belt",
            SystemKind::Lamplighter => "pointy",
            SystemKind::Zz2z => "wreath",
            SystemKind::Khat | SystemKind::Koracle => "khat",
            SystemKind::Neumann => "neumann",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AfoSection {
    #[serde(default = "three")]
    pub alphabet: usize,
    /// Words as symbol indices.
    pub words: Vec<Vec<u8>>,
    /// Permutation of word indices in cycle notation, `(0 1)(2)`; empty is the identity.
    #[serde(default)]
    pub pi: String,
    pub offsets: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BeltSection {
    #[serde(default = "three")]
    pub alphabet: usize,
    /// `id`, `shift` or `swap`.
    pub map: String,
    #[serde(default)]
    pub doubling: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LamplighterSection {
    pub moduli: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KhatSection {
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoracleSection {
    pub k: usize,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NeumannSection {
    /// `even`, `prog` or `union`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// `union` only: `[[l, k], ...]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WreathSection {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub non_relations: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

fn three() -> usize {
    3
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    pub system: SystemKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub afo: Option<AfoSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub belt: Option<BeltSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lamplighter: Option<LamplighterSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub khat: Option<KhatSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub koracle: Option<KoracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub neumann: Option<NeumannSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wreath: Option<WreathSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
}

impl SystemConfig {
    pub fn new(system: SystemKind) -> Self {
        Self {
            system,
            word: None,
            input: None,
            afo: None,
            belt: None,
            lamplighter: None,
            khat: None,
            koracle: None,
            neumann: None,
            wreath: None,
            verify: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: SystemConfig = toml::from_str(text).map_err(|e| Error::Parse(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_text(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    fn present_sections(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let flags = [
            ("afo", self.afo.is_some()),
            ("belt", self.belt.is_some()),
            ("lamplighter", self.lamplighter.is_some()),
            ("khat", self.khat.is_some()),
            ("koracle", self.koracle.is_some()),
            ("neumann", self.neumann.is_some()),
            ("wreath", self.wreath.is_some()),
        ];
        for (name, present) in flags {
            if present {
                out.push(name);
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let own = self.system.section();
        if let Some(other) = self.present_sections().into_iter().find(|&s| s != own) {
            return Err(Error::Parse(format!("section [{other}] does not apply to system {own:?}")));
        }
        let required = match self.system {
            SystemKind::Afo => self.afo.is_none(),
            SystemKind::Belt => self.belt.is_none(),
            SystemKind::Lamplighter => self.lamplighter.is_none(),
            SystemKind::Khat => self.khat.is_none(),
            SystemKind::Koracle => self.koracle.is_none(),
            SystemKind::Neumann => self.neumann.is_none(),
            SystemKind::Zz2z => false,
        };
        if required {
            return Err(Error::Parse(format!("system {:?} needs a [{own}] section", self.system)));
        }
        Ok(())
    }

    /// `khat k=2`, `koracle k=2 n=5`, `neumann even`, `neumann prog l=3 k=2`,
    /// `lamplighter m=2` (or `m=2,3`), `zz2z`, `afo example`, `belt map=swap`.
    pub fn from_selector(text: &str) -> Result<Self> {
        let mut parts = text.split_whitespace();
        let head = parts.next().ok_or_else(|| Error::Parse("empty system selector".into()))?;
        let mut flags = Vec::new();
        let mut args = BTreeMap::new();
        for p in parts {
            match p.split_once('=') {
                Some((k, v)) => {
                    args.insert(k.to_string(), v.to_string());
                }
                None => flags.push(p.to_string()),
            }
        }
        let num = |args: &BTreeMap<String, String>, key: &str| -> Result<usize> {
            args.get(key)
                .ok_or_else(|| Error::Parse(format!("{head}: missing {key}=")))?
                .parse()
                .map_err(|_| Error::Parse(format!("{head}: {key} must be a number")))
        };
        let mut known: Vec<&str> = Vec::new();
        let mut cfg = match head {
            "khat" => {
                known.push("k");
                let mut c = Self::new(SystemKind::Khat);
                c.khat = Some(KhatSection { k: num(&args, "k")? });
                c
            }
            "koracle" => {
                known.extend(["k", "n"]);
                let mut c = Self::new(SystemKind::Koracle);
                c.koracle = Some(KoracleSection { k: num(&args, "k")?, n: num(&args, "n")? });
                c
            }
            "neumann" => {
                let mut c = Self::new(SystemKind::Neumann);
                let kind = flags.first().cloned().unwrap_or_else(|| "even".into());
                let section = match kind.as_str() {
                    "even" => NeumannSection { kind, l: None, k: None, parts: Vec::new() },
                    "prog" => {
                        known.extend(["l", "k"]);
                        NeumannSection { kind, l: Some(num(&args, "l")?), k: Some(num(&args, "k")?), parts: Vec::new() }
                    }
                    other => return Err(Error::Parse(format!("neumann: unknown kind {other:?}"))),
                };
                flags.clear();
                c.neumann = Some(section);
                c
            }
            "lamplighter" => {
                known.push("m");
                let moduli = args
                    .get("m")
                    .map_or("2", String::as_str)
                    .split(',')
                    .map(|m| m.parse::<u32>().map_err(|_| Error::Parse(format!("lamplighter: bad modulus {m:?}"))))
                    .collect::<Result<_>>()?;
                let mut c = Self::new(SystemKind::Lamplighter);
                c.lamplighter = Some(LamplighterSection { moduli });
                c
            }
            "zz2z" => Self::new(SystemKind::Zz2z),
            "afo" => {
                if flags.first().map(String::as_str) != Some("example") {
                    return Err(Error::Parse("afo: only `afo example` has a selector; use a config file".into()));
                }
                flags.clear();
                let mut c = Self::new(SystemKind::Afo);
                c.afo = Some(AfoSection {
                    alphabet: 3,
                    words: vec![vec![1], vec![2]],
                    pi: "(0 1)".into(),
                    offsets: vec![1, -1],
                    n0: Some(1),
                });
                c
            }
            "belt" => {
                known.push("map");
                let mut c = Self::new(SystemKind::Belt);
                let map = args.get("map").cloned().unwrap_or_else(|| "shift".into());
                c.belt = Some(BeltSection { alphabet: 3, map, doubling: false });
                c
            }
            other => return Err(Error::Parse(format!("unknown system {other:?}"))),
        };
        if let Some(f) = flags.first() {
            return Err(Error::Parse(format!("{head}: unexpected {f:?}")));
        }
        if let Some(k) = args.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(Error::Parse(format!("{head}: unknown key {k:?}")));
        }
        cfg.validate()?;
        cfg.verify = None;
        Ok(cfg)
    }
}

/// `(0 1)(2 3 4)` as an image list on `n` points.
pub fn parse_cycles(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut images: Vec<usize> = (0..n).collect();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| Error::Parse(format!("cycle expected at {rest:?}")))?;
        let end = body.find(')').ok_or_else(|| Error::Parse("unterminated cycle".into()))?;
        let pts = body[..end]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad point {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        for (i, &p) in pts.iter().enumerate() {
            if p >= n {
                return Err(Error::Parse(format!("point {p} out of range 0..{n}")));
            }
            images[p] = pts[(i + 1) % pts.len()];
        }
        rest = body[end + 1..].trim_start();
    }
    let mut seen = vec![false; n];
    for &i in &images {
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::Parse(format!("{text:?} is not a permutation")));
        }
    }
    Ok(images)
}
