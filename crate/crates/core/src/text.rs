//! Text forms of tapes.
//!
//! Canonical: `period=6 cells=[0,1,0,0,2,0]`, cells as symbol indices.
//! Compact: the symbol names written back to back, allowed when every name is
//! one character (`>1<<>` over `{>, <, 1, 2}`).

use crate::alphabet::{Alphabet, Symbol};
use crate::config::PeriodicConfig;
use crate::error::{Error, Result};

pub fn format_periodic(x: &PeriodicConfig) -> String {
    let cells: Vec<String> = x.cells().iter().map(|c| c.to_string()).collect();
    format!("period={} cells=[{}]", x.period(), cells.join(","))
}

fn single_char_names(alphabet: &Alphabet) -> bool {
    alphabet.symbols().all(|s| alphabet.name(s).chars().count() == 1)
}

/// Either text form; surrounding whitespace is ignored.
pub fn parse_periodic(alphabet: &Alphabet, text: &str) -> Result<PeriodicConfig> {
    let text = text.trim();
    if text.starts_with("period=") || text.starts_with("cells=") {
        return parse_canonical(alphabet, text);
    }
    if !single_char_names(alphabet) {
        return Err(Error::Parse(format!("{text:?}: this alphabet needs the period=… cells=[…] form")));
    }
    let cells = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| alphabet.lookup(&c.to_string()).ok_or_else(|| Error::Parse(format!("unknown symbol {c:?}"))))
        .collect::<Result<Vec<_>>>()?;
    PeriodicConfig::new(alphabet, cells)
}

fn parse_canonical(alphabet: &Alphabet, text: &str) -> Result<PeriodicConfig> {
    let mut period = None;
    let mut cells = None;
    let mut rest = text;
    while !rest.is_empty() {
        let (key, after) = rest.split_once('=').ok_or_else(|| Error::Parse(format!("expected key=value in {rest:?}")))?;
        match key.trim() {
            "period" => {
                let end = after.find(char::is_whitespace).unwrap_or(after.len());
                let v = after[..end].parse::<usize>().map_err(|e| Error::Parse(format!("period: {e}")))?;
                period = Some(v);
                rest = after[end..].trim_start();
            }
            "cells" => {
                let body = after.strip_prefix('[').ok_or_else(|| Error::Parse("cells must start with '['".into()))?;
                let end = body.find(']').ok_or_else(|| Error::Parse("unterminated cells list".into()))?;
                let list = body[..end]
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Symbol>().map_err(|e| Error::Parse(format!("cell {s:?}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                cells = Some(list);
                rest = body[end + 1..].trim_start();
            }
            other => return Err(Error::Parse(format!("unknown key {other:?}"))),
        }
    }
    let cells = cells.ok_or_else(|| Error::Parse("missing cells".into()))?;
    if let Some(p) = period {
        if p != cells.len() {
            return Err(Error::Parse(format!("period={p} but {} cells", cells.len())));
        }
    }
    PeriodicConfig::new(alphabet, cells)
}

/// A short display name: track components are run together, `(1,0,1)` becomes `101`.
pub fn compact_name(alphabet: &Alphabet, s: Symbol) -> String {
    match alphabet.tracks() {
        None => alphabet.name(s).to_string(),
        Some(tracks) => {
            let parts: Vec<String> =
                tracks.iter().enumerate().map(|(t, a)| compact_name(a, alphabet.component(s, t))).collect();
            if parts.iter().all(|p| p.chars().count() == 1) {
                parts.concat()
            } else {
                parts.join("/")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let a = Alphabet::numeric(3).unwrap();
        let x = parse_periodic(&a, "period=6 cells=[0,1,0,0,2,0]").unwrap();
        assert_eq!(x.cells(), &[0, 1, 0, 0, 2, 0]);
        assert_eq!(format_periodic(&x), "period=6 cells=[0,1,0,0,2,0]");
        assert_eq!(parse_periodic(&a, "cells=[1, 2]").unwrap().cells(), &[1, 2]);
    }

    #[test]
    fn compact_form() {
        let a = Alphabet::new([">", "<", "1", "2"], 0).unwrap();
        assert_eq!(parse_periodic(&a, ">1<<").unwrap().cells(), &[0, 2, 1, 1]);
        assert!(parse_periodic(&a, ">x").is_err());
    }

    #[test]
    fn rejects_bad_input() {
        let a = Alphabet::numeric(3).unwrap();
        assert!(parse_periodic(&a, "period=3 cells=[0,1]").is_err());
        assert!(parse_periodic(&a, "period=2 cells=[0,7]").is_err());
        assert!(parse_periodic(&a, "size=2 cells=[0,1]").is_err());
        let p = Alphabet::product(vec![a.clone(), a]).unwrap();
        assert!(parse_periodic(&p, "00").is_err());
        assert_eq!(compact_name(&p, p.join(&[1, 2]).unwrap()), "12");
    }
}
