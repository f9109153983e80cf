//! Text and JSON formats for diagrams and cut systems.
//!
//! The text format is a signed Gauss code: circles separated by `|`, each a
//! sequence of markers `O<id><sign>` / `U<id><sign>` (whitespace between
//! markers is optional), or `()` for a circle that carries no markers.
//! `O` marks the end a strand passes over first (the arrow tail), `U` the end
//! it passes under (the arrow head).

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::cuts::CutSystem;
use crate::diagram::{ChordId, End, GaussDiagram, Role, Sign};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

pub fn parse_gauss_code(input: &str) -> Result<GaussDiagram, ParseError> {
    let b = input.as_bytes();
    let mut i = 0usize;
    let mut circles: Vec<Vec<End>> = Vec::new();
    let mut seen: BTreeMap<ChordId, Vec<(usize, Role, Sign)>> = BTreeMap::new();

    if input.trim().is_empty() {
        return err(0, "empty code");
    }

    loop {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i < b.len() && b[i] == b'(' {
            i += 1;
            while i < b.len() && b[i].is_ascii_whitespace() {
                i += 1;
            }
            if i >= b.len() || b[i] != b')' {
                return err(i.min(b.len()), "expected `)`");
            }
            i += 1;
            circles.push(Vec::new());
        } else {
            let mut circle = Vec::new();
            loop {
                while i < b.len() && b[i].is_ascii_whitespace() {
                    i += 1;
                }
                if i >= b.len() || b[i] == b'|' {
                    break;
                }
                let tok_start = i;
                let role = match b[i] {
                    b'O' => Role::Tail,
                    b'U' => Role::Head,
                    c => {
                        return err(i, format!("unexpected character `{}`", c as char));
                    }
                };
                i += 1;
                let digits_start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                if digits_start == i {
                    return err(i.min(b.len()), "expected chord id after `O`/`U`");
                }
                let id: u64 = match input[digits_start..i].parse() {
                    Ok(n) => n,
                    Err(_) => return err(digits_start, "chord id out of range"),
                };
                if id == 0 {
                    return err(digits_start, "chord id must be positive");
                }
                if id > u64::from(u32::MAX) {
                    return err(digits_start, "chord id out of range");
                }
                let id = id as ChordId;
                if i >= b.len() {
                    return err(b.len(), "expected sign `+` or `-`");
                }
                let sign = match b[i] {
                    b'+' => Sign::Plus,
                    b'-' => Sign::Minus,
                    c => {
                        return err(i, format!("expected sign `+` or `-`, found `{}`", c as char));
                    }
                };
                i += 1;
                circle.push(End { chord: id, role });
                seen.entry(id).or_default().push((tok_start, role, sign));
            }
            if circle.is_empty() {
                return err(i.min(b.len()), "empty circle (write `()` for a bare circle)");
            }
            circles.push(circle);
        }
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= b.len() {
            break;
        }
        if b[i] != b'|' {
            return err(i, format!("expected `|` between circles, found `{}`", b[i] as char));
        }
        i += 1;
    }

    let mut worst: Option<ParseError> = None;
    let mut consider = |position: usize, message: String| {
        if worst.as_ref().map_or(true, |w| position < w.position) {
            worst = Some(ParseError { position, message });
        }
    };
    for (&id, occ) in &seen {
        match occ.len() {
            1 => consider(occ[0].0, format!("chord {id} appears only once")),
            2 => {
                if occ[0].1 == occ[1].1 {
                    consider(
                        occ[1].0,
                        format!("chord {id} appears twice as `{}`", occ[0].1.as_char()),
                    );
                } else if occ[0].2 != occ[1].2 {
                    consider(
                        occ[1].0,
                        format!(
                            "chord {id} has conflicting signs `{}` and `{}`",
                            occ[0].2.as_char(),
                            occ[1].2.as_char()
                        ),
                    );
                }
            }
            n => consider(occ[2].0, format!("chord {id} appears {n} times")),
        }
    }
    if let Some(e) = worst {
        return Err(e);
    }

    let signs: BTreeMap<ChordId, Sign> = seen.iter().map(|(&id, occ)| (id, occ[0].2)).collect();
    GaussDiagram::from_parts(circles, signs)
        .map_err(|v| ParseError { position: 0, message: v.join("; ") })
}

/// The canonical code of `g`: parsing it back gives a diagram equal to
/// `canon::canonical(g)`.
pub fn emit_gauss_code(g: &GaussDiagram) -> String {
    crate::canon::canonical(g).to_code()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum JsonError {
    #[error("{0}")]
    Syntax(String),
    #[error("{0}")]
    Content(String),
}

struct SignsOut<'a>(&'a BTreeMap<ChordId, Sign>);

impl Serialize for SignsOut<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (id, sign) in self.0 {
            map.serialize_entry(&id.to_string(), &sign.as_char().to_string())?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct PairOut<'a> {
    circles: Vec<Vec<String>>,
    signs: SignsOut<'a>,
    cuts: Vec<(usize, usize, u32)>,
}

#[derive(Deserialize)]
struct PairIn {
    circles: Vec<Vec<String>>,
    #[serde(default)]
    signs: BTreeMap<String, String>,
    #[serde(default)]
    cuts: Vec<(usize, usize, u32)>,
}

fn marker_string(end: &End) -> String {
    format!("{}{}", end.role.as_char(), end.chord)
}

/// Serializes a diagram with a cut system as a single JSON object with the
/// fields `circles` (marker strings per circle), `signs` (chord id to sign)
/// and `cuts` (triples `[circle, gap, count]` in ascending order).
pub fn pair_to_json(g: &GaussDiagram, cuts: &CutSystem) -> String {
    let out = PairOut {
        circles: g.circles().iter().map(|c| c.iter().map(marker_string).collect()).collect(),
        signs: SignsOut(g.signs()),
        cuts: cuts.triples().collect(),
    };
    serde_json::to_string(&out).expect("serialization cannot fail")
}

pub fn pair_from_json(input: &str) -> Result<(GaussDiagram, CutSystem), JsonError> {
    let raw: PairIn =
        serde_json::from_str(input).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let mut circles = Vec::new();
    for c in &raw.circles {
        let mut circle = Vec::new();
        for m in c {
            let b = m.as_bytes();
            let role = match b.first() {
                Some(b'O') => Role::Tail,
                Some(b'U') => Role::Head,
                _ => return Err(JsonError::Content(format!("bad marker `{m}`"))),
            };
            let id: ChordId = m[1..]
                .parse()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| JsonError::Content(format!("bad marker `{m}`")))?;
            circle.push(End { chord: id, role });
        }
        circles.push(circle);
    }
    let mut signs = BTreeMap::new();
    for (k, v) in &raw.signs {
        let id: ChordId = k
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| JsonError::Content(format!("bad chord id `{k}`")))?;
        let sign = match v.as_str() {
            "+" => Sign::Plus,
            "-" => Sign::Minus,
            _ => return Err(JsonError::Content(format!("bad sign `{v}` for chord {k}"))),
        };
        signs.insert(id, sign);
    }
    let g = GaussDiagram::from_parts(circles, signs)
        .map_err(|v| JsonError::Content(v.join("; ")))?;
    let cuts = CutSystem::from_triples(raw.cuts.iter().copied());
    if !cuts.in_range(&g) {
        return Err(JsonError::Content("cut point outside the diagram's gaps".into()));
    }
    Ok((g, cuts))
}

/// Parses a cut system given either as JSON triples `[[circle, gap, count],
/// ...]` or as a bare JSON object `{"cuts": [...]}`.
pub fn cuts_from_json(input: &str, g: &GaussDiagram) -> Result<CutSystem, JsonError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum CutsIn {
        Bare(Vec<(usize, usize, u32)>),
        Wrapped { cuts: Vec<(usize, usize, u32)> },
    }
    let raw: CutsIn = serde_json::from_str(input).map_err(|e| JsonError::Syntax(e.to_string()))?;
    let triples = match raw {
        CutsIn::Bare(t) | CutsIn::Wrapped { cuts: t } => t,
    };
    let cuts = CutSystem::from_triples(triples.into_iter());
    if !cuts.in_range(g) {
        return Err(JsonError::Content("cut point outside the diagram's gaps".into()));
    }
    Ok(cuts)
}
