//! Spacetime diagrams: the input tape on top, then one row per generator
//! application, rightmost letter of the word first.
//!
//! Colors: a zero value is white. Every other value is filled with its track's
//! hue, darker for larger values. Non-numeric symbols (walls, `>`, `<`) are
//! drawn as glyphs.

use std::fmt::Write;

use cabelt::{GroupWord, PeriodicConfig, Result};

use crate::system::{Leaf, System};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Svg,
    Tikz,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            other => Err(format!("unknown format {other:?} (text, svg, tikz)")),
        }
    }
}

pub struct Diagram {
    /// Row label and tape; the first label is empty.
    pub rows: Vec<(String, PeriodicConfig)>,
}

pub fn diagram(sys: &System, word: &GroupWord, input: &PeriodicConfig) -> Result<Diagram> {
    let tapes = sys.table.trajectory(word, input)?;
    let mut labels = vec![String::new()];
    for (name, e) in word.letters().iter().rev() {
        let l = if *e > 0 { name.clone() } else { format!("{name}^-1") };
        labels.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
    }
    Ok(Diagram { rows: labels.into_iter().zip(tapes).collect() })
}

pub fn render(sys: &System, d: &Diagram, format: Format) -> String {
    match format {
        Format::Text => text(sys, d),
        Format::Svg => svg(sys, d),
        Format::Tikz => tikz(sys, d),
    }
}

fn text(sys: &System, d: &Diagram) -> String {
    let cells: Vec<Vec<String>> =
        d.rows.iter().map(|(_, t)| t.cells().iter().map(|&s| sys.style.label(s)).collect()).collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let label_width = d.rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    let mut out = String::new();
    for ((label, _), row) in d.rows.iter().zip(&cells) {
        let body: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        let line = format!("{label:<label_width$} | {}", body.join(" "));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

const HUES: [(u8, u8, u8); 6] =
    [(0x1f, 0x77, 0xb4), (0xd6, 0x27, 0x28), (0x2c, 0xa0, 0x2c), (0x94, 0x67, 0xbd), (0xff, 0x7f, 0x0e), (0x17, 0xbe, 0xcf)];

/// Track hue, darkened for values above one.
fn fill(track: usize, value: usize) -> Option<String> {
    if value == 0 {
        return None;
    }
    let (r, g, b) = HUES[track % HUES.len()];
    let k = 1.0 / (1.0 + 0.35 * (value as f64 - 1.0));
    let c = |x: u8| (x as f64 * k).round() as u8;
    Some(format!("{:02X}{:02X}{:02X}", c(r), c(g), c(b)))
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

const CELL: usize = 14;
const BOX: usize = 7;
const GAP: usize = 4;
const MARGIN: usize = 48;

fn svg(sys: &System, d: &Diagram) -> String {
    let h = sys.style.height();
    let cols = d.rows.first().map_or(0, |(_, t)| t.period());
    let row_h = h * BOX + GAP;
    let (w, total_h) = (MARGIN + cols * CELL + 2, d.rows.len() * row_h + 2);
    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{total_h}" font-family="monospace" font-size="10">"#);
    for (r, (label, tape)) in d.rows.iter().enumerate() {
        let y0 = r * row_h + 1;
        let _ = writeln!(out, r#"<text x="2" y="{}">{}</text>"#, y0 + h * BOX / 2 + 4, escape(label));
        for (c, &s) in tape.cells().iter().enumerate() {
            let x = MARGIN + c * CELL;
            let leaves = sys.style.leaves(s);
            match leaves.as_slice() {
                [Leaf::Glyph(g)] => {
                    let _ = writeln!(out, r##"<rect x="{x}" y="{y0}" width="{CELL}" height="{}" fill="#FFFFFF" stroke="#999999" stroke-width="0.5"/>"##, h * BOX);
                    let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, x + CELL / 2, y0 + h * BOX / 2 + 4, escape(g));
                }
                _ => {
                    let bh = h * BOX / leaves.len().max(1);
                    for (i, leaf) in leaves.iter().enumerate() {
                        let y = y0 + i * bh;
                        let color = match leaf {
                            Leaf::Value { track, value } => fill(*track, *value).unwrap_or_else(|| "FFFFFF".into()),
                            Leaf::Glyph(_) => "FFFFFF".into(),
                        };
                        let _ = writeln!(out, r##"<rect x="{x}" y="{y}" width="{CELL}" height="{bh}" fill="#{color}" stroke="#999999" stroke-width="0.5"/>"##);
                        if let Leaf::Glyph(g) = leaf {
                            let _ = writeln!(out, r#"<text x="{}" y="{}" text-anchor="middle" font-size="{}">{}</text>"#, x + CELL / 2, y + bh - 1, bh.min(10), escape(g));
                        }
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn tex_escape(s: &str) -> String {
    match s {
        ">" => "$>$".into(),
        "<" => "$<$".into(),
        other => other.replace('^', r"\^{}").replace('_', r"\_"),
    }
}

fn tikz(sys: &System, d: &Diagram) -> String {
    let h = sys.style.height();
    let mut colors = std::collections::BTreeSet::new();
    let mut body = String::new();
    // one unit per box; rows grow downwards
    let row_h = h as f64 + 0.5;
    for (r, (label, tape)) in d.rows.iter().enumerate() {
        let y0 = -(r as f64) * row_h;
        let _ = writeln!(body, r"\node[anchor=east] at (-0.2,{:.2}) {{{}}};", y0 - h as f64 / 2.0, tex_escape(label));
        for (c, &s) in tape.cells().iter().enumerate() {
            let x = c as f64;
            let leaves = sys.style.leaves(s);
            if let [Leaf::Glyph(g)] = leaves.as_slice() {
                let _ = writeln!(body, r"\draw[gray] ({x:.2},{:.2}) rectangle ({:.2},{y0:.2});", y0 - h as f64, x + 1.0);
                let _ = writeln!(body, r"\node at ({:.2},{:.2}) {{{}}};", x + 0.5, y0 - h as f64 / 2.0, tex_escape(g));
                continue;
            }
            let bh = h as f64 / leaves.len().max(1) as f64;
            for (i, leaf) in leaves.iter().enumerate() {
                let top = y0 - i as f64 * bh;
                let color = match leaf {
                    Leaf::Value { track, value } => fill(*track, *value),
                    Leaf::Glyph(_) => None,
                };
                let style = match &color {
                    Some(c) => {
                        colors.insert(c.clone());
                        format!("fill=c{c},draw=gray")
                    }
                    None => "draw=gray".into(),
                };
                let _ = writeln!(body, r"\path[{style}] ({x:.2},{:.2}) rectangle ({:.2},{top:.2});", top - bh, x + 1.0);
                if let Leaf::Glyph(g) = leaf {
                    let _ = writeln!(body, r"\node[scale=0.6] at ({:.2},{:.2}) {{{}}};", x + 0.5, top - bh / 2.0, tex_escape(g));
                }
            }
        }
    }
    let mut out = String::from("\\documentclass[tikz,border=2pt]{standalone}\n\\begin{document}\n");
    for c in &colors {
        let _ = writeln!(out, r"\definecolor{{c{c}}}{{HTML}}{{{c}}}");
    }
    out.push_str("\\begin{tikzpicture}[x=0.35cm,y=0.2cm]\n");
    out.push_str(&body);
    out.push_str("\\end{tikzpicture}\n\\end{document}\n");
    out
}
