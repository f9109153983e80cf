//! Core types for virtual link diagrams in Gauss-diagram form.
//!
//! A diagram is a set of oriented circles carrying markers. Each classical
//! crossing appears as a chord: a directed, signed connection between two
//! markers, pointing from its over-passage (tail, written `O`) to its
//! under-passage (head, written `U`). Virtual crossings leave no marker.

use std::collections::BTreeMap;
use std::fmt;

pub type ChordId = u32;

/// Crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl serde::Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl<'de> serde::Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Sign, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(d)?;
        match s.as_str() {
            "+" => Ok(Sign::Plus),
            "-" => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!(
                "sign must be `+` or `-`, got `{other}`"
            ))),
        }
    }
}

/// Which end of a chord a marker is: `Tail` = over-passage (`O`),
/// `Head` = under-passage (`U`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Tail,
    Head,
}

impl Role {
    pub fn flipped(self) -> Role {
        match self {
            Role::Tail => Role::Head,
            Role::Head => Role::Tail,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Role::Tail => 'O',
            Role::Head => 'U',
        }
    }
}

/// One marker on a circle: an endpoint of one chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct End {
    pub chord: ChordId,
    pub role: Role,
}

/// Position of a marker: circle index plus position along that circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EndpointRef {
    pub circle: usize,
    pub position: usize,
}

/// A chord with both endpoints resolved to positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chord {
    pub id: ChordId,
    pub sign: Sign,
    pub tail: EndpointRef,
    pub head: EndpointRef,
}

/// A virtual link diagram as circles of markers plus a sign per chord.
///
/// Invariants: at least one circle; every chord id is positive and occurs
/// exactly twice, once as tail and once as head; `signs` has exactly the
/// occurring ids as keys. `from_parts` checks all of this, and `violations`
/// re-checks it for diagrams assembled elsewhere (e.g. loaded from JSON).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussDiagram {
    pub(crate) circles: Vec<Vec<End>>,
    pub(crate) signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    pub fn unknot() -> GaussDiagram {
        GaussDiagram {
            circles: vec![Vec::new()],
            signs: BTreeMap::new(),
        }
    }

    pub fn from_parts(
        circles: Vec<Vec<End>>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<GaussDiagram, Vec<String>> {
        let d = GaussDiagram { circles, signs };
        let report = d.violations();
        if report.is_empty() {
            Ok(d)
        } else {
            Err(report)
        }
    }

    /// Full structural report; empty iff the diagram is well-formed.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.circles.is_empty() {
            out.push("diagram has no circles".to_string());
        }
        let mut seen: BTreeMap<ChordId, Vec<Role>> = BTreeMap::new();
        for circle in &self.circles {
            for end in circle {
                if end.chord == 0 {
                    out.push("chord id 0 (ids must be positive)".to_string());
                }
                seen.entry(end.chord).or_default().push(end.role);
            }
        }
        for (id, roles) in &seen {
            match roles.len() {
                2 => {
                    let tails = roles.iter().filter(|r| **r == Role::Tail).count();
                    if tails == 2 {
                        out.push(format!("chord {id} occurs twice as tail (O)"));
                    } else if tails == 0 {
                        out.push(format!("chord {id} occurs twice as head (U)"));
                    }
                }
                n => out.push(format!("chord {id} occurs {n} times (expected 2)")),
            }
            if !self.signs.contains_key(id) {
                out.push(format!("chord {id} has no sign"));
            }
        }
        for id in self.signs.keys() {
            if !seen.contains_key(id) {
                out.push(format!("sign given for absent chord {id}"));
            }
        }
        out
    }

    pub fn circles(&self) -> &[Vec<End>] {
        &self.circles
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn is_knot(&self) -> bool {
        self.circles.len() == 1
    }

    pub fn marker_count(&self, circle: usize) -> usize {
        self.circles[circle].len()
    }

    /// Gaps on a circle: one after each marker; a bare circle has one gap.
    pub fn gap_count(&self, circle: usize) -> usize {
        self.circles[circle].len().max(1)
    }

    pub fn sign(&self, id: ChordId) -> Option<Sign> {
        self.signs.get(&id).copied()
    }

    pub fn end_at(&self, r: EndpointRef) -> End {
        self.circles[r.circle][r.position]
    }

    pub fn max_chord_id(&self) -> ChordId {
        self.signs.keys().next_back().copied().unwrap_or(0)
    }

    /// All chords with resolved endpoints, ascending by id.
    pub fn chords(&self) -> Vec<Chord> {
        let mut tails: BTreeMap<ChordId, EndpointRef> = BTreeMap::new();
        let mut heads: BTreeMap<ChordId, EndpointRef> = BTreeMap::new();
        for (ci, circle) in self.circles.iter().enumerate() {
            for (pi, end) in circle.iter().enumerate() {
                let r = EndpointRef {
                    circle: ci,
                    position: pi,
                };
                match end.role {
                    Role::Tail => tails.insert(end.chord, r),
                    Role::Head => heads.insert(end.chord, r),
                };
            }
        }
        self.signs
            .iter()
            .map(|(&id, &sign)| Chord {
                id,
                sign,
                tail: tails[&id],
                head: heads[&id],
            })
            .collect()
    }

    pub fn chord(&self, id: ChordId) -> Option<Chord> {
        self.chords().into_iter().find(|c| c.id == id)
    }

    /// Reverse every arrow and negate every sign (switching all crossings).
    pub fn switch_all(&self) -> GaussDiagram {
        GaussDiagram {
            circles: self
                .circles
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|e| End {
                            chord: e.chord,
                            role: e.role.flipped(),
                        })
                        .collect()
                })
                .collect(),
            signs: self.signs.iter().map(|(&i, &s)| (i, s.flipped())).collect(),
        }
    }

    /// Negate every sign, keeping arrows (mirror image).
    pub fn mirror(&self) -> GaussDiagram {
        GaussDiagram {
            circles: self.circles.clone(),
            signs: self.signs.iter().map(|(&i, &s)| (i, s.flipped())).collect(),
        }
    }

    /// Reverse every arrow, keeping signs: the composite of `mirror` and
    /// `switch_all`. Circle sequences and gap indices are unchanged, so any
    /// cut system for the diagram transfers verbatim.
    pub fn mirror_switch(&self) -> GaussDiagram {
        GaussDiagram {
            circles: self
                .circles
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|e| End {
                            chord: e.chord,
                            role: e.role.flipped(),
                        })
                        .collect()
                })
                .collect(),
            signs: self.signs.clone(),
        }
    }

    /// Same diagram with one circle re-rooted: new position 0 is old
    /// position `offset`.
    pub fn rotated(&self, circle: usize, offset: usize) -> GaussDiagram {
        let mut circles = self.circles.clone();
        let m = circles[circle].len();
        if m > 0 {
            circles[circle].rotate_left(offset % m);
        }
        GaussDiagram {
            circles,
            signs: self.signs.clone(),
        }
    }

    /// As-stored linearization (no canonicalization): circles joined by `|`,
    /// each read from position 0. An empty circle prints as `()`.
    pub fn to_code(&self) -> String {
        let mut parts = Vec::with_capacity(self.circles.len());
        for circle in &self.circles {
            if circle.is_empty() {
                parts.push("()".to_string());
            } else {
                let mut s = String::new();
                for end in circle {
                    s.push(end.role.as_char());
                    s.push_str(&end.chord.to_string());
                    s.push(self.signs[&end.chord].as_char());
                }
                parts.push(s);
            }
        }
        parts.join("|")
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_code())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    #[test]
    fn violations_of_good_diagram_empty() {
        let g = parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
        assert!(g.violations().is_empty());
    }

    #[test]
    fn double_tail_reported() {
        let circles = vec![vec![
            End {
                chord: 1,
                role: Role::Tail,
            },
            End {
                chord: 1,
                role: Role::Tail,
            },
        ]];
        let mut signs = BTreeMap::new();
        signs.insert(1, Sign::Plus);
        let err = GaussDiagram::from_parts(circles, signs).unwrap_err();
        assert_eq!(err, vec!["chord 1 occurs twice as tail (O)".to_string()]);
    }

    #[test]
    fn missing_partner_and_stray_sign_reported() {
        let circles = vec![vec![End {
            chord: 2,
            role: Role::Head,
        }]];
        let mut signs = BTreeMap::new();
        signs.insert(2, Sign::Minus);
        signs.insert(7, Sign::Plus);
        let err = GaussDiagram::from_parts(circles, signs).unwrap_err();
        assert!(err.contains(&"chord 2 occurs 1 times (expected 2)".to_string()));
        assert!(err.contains(&"sign given for absent chord 7".to_string()));
    }

    #[test]
    fn switch_all_reverses_arrows_and_signs() {
        let g = parse_gauss_code("O1+U1+").unwrap();
        let s = g.switch_all();
        assert_eq!(s.to_code(), "U1-O1-");
        assert_eq!(s.switch_all(), g);
    }

    #[test]
    fn mirror_negates_signs_only() {
        let g = parse_gauss_code("O1+U1+").unwrap();
        let m = g.mirror();
        assert_eq!(m.to_code(), "O1-U1-");
        assert_eq!(m.mirror(), g);
    }

    #[test]
    fn mirror_switch_reverses_arrows_keeping_signs() {
        let g = parse_gauss_code("O1+U1+").unwrap();
        let ms = g.mirror_switch();
        assert_eq!(ms.to_code(), "U1+O1+");
        assert_eq!(ms.mirror_switch(), g);
        assert_eq!(ms, g.mirror().switch_all());
        assert_eq!(ms, g.switch_all().mirror());
    }

    #[test]
    fn rotation_moves_the_root() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        assert_eq!(g.rotated(0, 2).to_code(), "U1+U2+O1+O2+");
        assert_eq!(g.rotated(0, 4), g);
    }
}
