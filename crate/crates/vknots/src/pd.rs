//! PD codes with explicit virtual crossings.
//!
//! A code is a list of records over positive edge ids. `X+(a,b,c,d)` and
//! `X-(a,b,c,d)` are classical crossings: `a` comes in under, `b` comes in
//! over, `c` leaves under, `d` leaves over. `V(a,b,c,d)` is a virtual
//! crossing with strands `a -> c` and `b -> d`. Every edge id must occur
//! exactly once incoming and exactly once outgoing.
//!
//! Tracing a code recovers the Gauss diagram (classical records become
//! chords, numbered in record order) together with the gap each edge lies
//! in. A plane presentation also induces a cut system: one point on each
//! outgoing edge of each virtual crossing.

use std::collections::BTreeMap;
use std::fmt;

use crate::codes::ParseError;
use crate::cuts::{self, CutSystem};
use crate::diagram::{ChordId, End, GaussDiagram, Role, Sign};

pub type EdgeId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdEntry {
    Classical { sign: Sign, under_in: EdgeId, over_in: EdgeId, under_out: EdgeId, over_out: EdgeId },
    Virtual { in1: EdgeId, in2: EdgeId, out1: EdgeId, out2: EdgeId },
}

impl fmt::Display for PdEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            PdEntry::Classical { sign, under_in, over_in, under_out, over_out } => {
                write!(f, "X{}({},{},{},{})", sign.as_char(), under_in, over_in, under_out, over_out)
            }
            PdEntry::Virtual { in1, in2, out1, out2 } => {
                write!(f, "V({},{},{},{})", in1, in2, out1, out2)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PdCode {
    pub entries: Vec<PdEntry>,
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl PdCode {
    fn slots(e: &PdEntry) -> ([EdgeId; 2], [EdgeId; 2]) {
        match *e {
            PdEntry::Classical { under_in, over_in, under_out, over_out, .. } => {
                ([under_in, over_in], [under_out, over_out])
            }
            PdEntry::Virtual { in1, in2, out1, out2 } => ([in1, in2], [out1, out2]),
        }
    }

    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.entries.is_empty() {
            out.push("code has no records".to_string());
        }
        let mut incoming: BTreeMap<EdgeId, u32> = BTreeMap::new();
        let mut outgoing: BTreeMap<EdgeId, u32> = BTreeMap::new();
        for e in &self.entries {
            let (ins, outs) = Self::slots(e);
            for id in ins {
                if id == 0 {
                    out.push("edge id 0 (ids must be positive)".to_string());
                }
                *incoming.entry(id).or_default() += 1;
            }
            for id in outs {
                *outgoing.entry(id).or_default() += 1;
            }
        }
        let ids: std::collections::BTreeSet<EdgeId> =
            incoming.keys().chain(outgoing.keys()).copied().collect();
        for id in ids {
            let i = incoming.get(&id).copied().unwrap_or(0);
            let o = outgoing.get(&id).copied().unwrap_or(0);
            if (i, o) != (1, 1) {
                out.push(format!("edge {id} enters {i} crossings and leaves {o} (expected 1 and 1)"));
            }
        }
        out
    }
}

pub fn parse_pd(input: &str) -> Result<PdCode, ParseError> {
    let b = input.as_bytes();
    let mut i = 0usize;
    let mut entries = Vec::new();
    let err = |position: usize, message: &str| ParseError { position, message: message.into() };
    loop {
        while i < b.len() && b[i].is_ascii_whitespace() {
            i += 1;
        }
        if i >= b.len() {
            break;
        }
        let kind = match b[i] {
            b'X' => 'X',
            b'V' => 'V',
            c => {
                return Err(err(i, &format!("expected `X` or `V`, found `{}`", c as char)));
            }
        };
        i += 1;
        let sign = if kind == 'X' {
            let s = match b.get(i) {
                Some(b'+') => Sign::Plus,
                Some(b'-') => Sign::Minus,
                _ => return Err(err(i.min(b.len()), "expected sign `+` or `-` after `X`")),
            };
            i += 1;
            Some(s)
        } else {
            None
        };
        if b.get(i) != Some(&b'(') {
            return Err(err(i.min(b.len()), "expected `(`"));
        }
        i += 1;
        let mut nums = [0u32; 4];
        for (k, slot) in nums.iter_mut().enumerate() {
            while i < b.len() && b[i].is_ascii_whitespace() {
                i += 1;
            }
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i.min(b.len()), "expected edge id"));
            }
            *slot = input[start..i]
                .parse()
                .map_err(|_| err(start, "edge id out of range"))?;
            if *slot == 0 {
                return Err(err(start, "edge id must be positive"));
            }
            while i < b.len() && b[i].is_ascii_whitespace() {
                i += 1;
            }
            let sep = if k == 3 { b')' } else { b',' };
            if b.get(i) != Some(&sep) {
                return Err(err(i.min(b.len()), &format!("expected `{}`", sep as char)));
            }
            i += 1;
        }
        entries.push(match sign {
            Some(sign) => PdEntry::Classical {
                sign,
                under_in: nums[0],
                over_in: nums[1],
                under_out: nums[2],
                over_out: nums[3],
            },
            None => PdEntry::Virtual { in1: nums[0], in2: nums[1], out1: nums[2], out2: nums[3] },
        });
    }
    if entries.is_empty() {
        return Err(err(0, "empty code"));
    }
    Ok(PdCode { entries })
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PdError {
    #[error("malformed code: {0}")]
    Malformed(String),
    #[error("the virtual crossings of this code admit no coherent cut system; it has no plane realization")]
    NoCoherentCuts,
}

/// A traced code: the Gauss diagram, where every edge ended up, and the
/// chord assigned to each classical record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedPd {
    pub diagram: GaussDiagram,
    /// Edge id to (circle, gap).
    pub edge_gap: BTreeMap<EdgeId, (usize, usize)>,
    /// Chord id per record (`None` for virtual records), in record order.
    pub entry_chords: Vec<Option<ChordId>>,
}

pub fn trace_pd(pd: &PdCode) -> Result<TracedPd, PdError> {
    let violations = pd.violations();
    if !violations.is_empty() {
        return Err(PdError::Malformed(violations.join("; ")));
    }
    let mut entry_chords = Vec::with_capacity(pd.entries.len());
    let mut next_chord: ChordId = 1;
    for e in &pd.entries {
        match e {
            PdEntry::Classical { .. } => {
                entry_chords.push(Some(next_chord));
                next_chord += 1;
            }
            PdEntry::Virtual { .. } => entry_chords.push(None),
        }
    }
    // Passage map: incoming edge -> (outgoing edge, marker it passes).
    let mut passage: BTreeMap<EdgeId, (EdgeId, Option<End>)> = BTreeMap::new();
    let mut signs = BTreeMap::new();
    for (e, chord) in pd.entries.iter().zip(&entry_chords) {
        match *e {
            PdEntry::Classical { sign, under_in, over_in, under_out, over_out } => {
                let id = chord.expect("classical records get chords");
                passage.insert(under_in, (under_out, Some(End { chord: id, role: Role::Head })));
                passage.insert(over_in, (over_out, Some(End { chord: id, role: Role::Tail })));
                signs.insert(id, sign);
            }
            PdEntry::Virtual { in1, in2, out1, out2 } => {
                passage.insert(in1, (out1, None));
                passage.insert(in2, (out2, None));
            }
        }
    }
    let mut circles: Vec<Vec<End>> = Vec::new();
    let mut edge_gap: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
    let mut visited: std::collections::BTreeSet<EdgeId> = std::collections::BTreeSet::new();
    let all_edges: Vec<EdgeId> = passage.keys().copied().collect();
    for &start in &all_edges {
        if visited.contains(&start) {
            continue;
        }
        let circle_index = circles.len();
        let mut markers = Vec::new();
        let mut pending: Vec<(EdgeId, usize)> = Vec::new();
        let mut edge = start;
        loop {
            visited.insert(edge);
            pending.push((edge, markers.len()));
            let &(next, marker) = passage.get(&edge).expect("validated edge");
            if let Some(end) = marker {
                markers.push(end);
            }
            edge = next;
            if edge == start {
                break;
            }
        }
        let m = markers.len();
        for (e, before) in pending {
            let gap = if m == 0 { 0 } else { (before + m - 1) % m };
            edge_gap.insert(e, (circle_index, gap));
        }
        circles.push(markers);
    }
    let diagram = GaussDiagram::from_parts(circles, signs)
        .map_err(|v| PdError::Malformed(v.join("; ")))?;
    Ok(TracedPd { diagram, edge_gap, entry_chords })
}

/// The cut system a plane presentation carries: one point on each outgoing
/// edge of each virtual crossing. Fails when that system is not valid, which
/// happens exactly when the code is not realizable in the plane with the
/// recorded virtual crossings.
pub fn canonical_cut_system(pd: &PdCode) -> Result<(TracedPd, CutSystem), PdError> {
    let traced = trace_pd(pd)?;
    let mut triples = Vec::new();
    for e in &pd.entries {
        if let PdEntry::Virtual { out1, out2, .. } = *e {
            for edge in [out1, out2] {
                let &(circle, gap) = traced.edge_gap.get(&edge).expect("traced edge");
                triples.push((circle, gap, 1));
            }
        }
    }
    let cuts = CutSystem::from_triples(triples.into_iter());
    if !cuts::is_cut_system(&traced.diagram, &cuts) {
        return Err(PdError::NoCoherentCuts);
    }
    Ok((traced, cuts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_trefoil_traces_clean() {
        let pd = parse_pd("X+(4,1,5,2) X+(2,5,3,6) X+(6,3,1,4)").unwrap();
        let (traced, cuts) = canonical_cut_system(&pd).unwrap();
        assert_eq!(traced.diagram.to_code(), "O1+U2+O3+U1+O2+U3+");
        assert!(cuts.is_empty());
        assert_eq!(traced.entry_chords, vec![Some(1), Some(2), Some(3)]);
    }

    #[test]
    fn virtual_trefoil_trace_and_cuts() {
        let pd = parse_pd("X+(4,1,5,2) X+(2,5,3,6) V(6,3,1,4)").unwrap();
        let (traced, cuts) = canonical_cut_system(&pd).unwrap();
        assert_eq!(traced.diagram.to_code(), "O1+U2+U1+O2+");
        let expected: BTreeMap<EdgeId, (usize, usize)> =
            [(1, (0, 3)), (2, (0, 0)), (3, (0, 1)), (4, (0, 1)), (5, (0, 2)), (6, (0, 3))]
                .into_iter()
                .collect();
        assert_eq!(traced.edge_gap, expected);
        assert_eq!(cuts, CutSystem::from_triples([(0, 1, 1), (0, 3, 1)].into_iter()));
        assert_eq!(traced.entry_chords, vec![Some(1), Some(2), None]);
    }

    #[test]
    fn hopf_link_has_two_circles() {
        let pd = parse_pd("X+(3,1,4,2) X+(2,4,1,3)").unwrap();
        let traced = trace_pd(&pd).unwrap();
        assert_eq!(traced.diagram.to_code(), "O1+U2+|U1+O2+");
        assert!(cuts::is_normal(&traced.diagram));
    }

    #[test]
    fn kink_and_lone_virtual() {
        let pd = parse_pd("X+(2,1,1,2)").unwrap();
        assert_eq!(trace_pd(&pd).unwrap().diagram.to_code(), "O1+U1+");
        let pd = parse_pd("V(1,2,2,1)").unwrap();
        let (traced, cuts) = canonical_cut_system(&pd).unwrap();
        assert_eq!(traced.diagram.to_code(), "()");
        assert_eq!(cuts, CutSystem::from_triples([(0, 0, 2)].into_iter()));
    }

    #[test]
    fn negative_crossings_round_trip() {
        let code = "X-(2,1,1,2)";
        let pd = parse_pd(code).unwrap();
        assert_eq!(pd.to_string(), code);
        assert_eq!(trace_pd(&pd).unwrap().diagram.to_code(), "O1-U1-");
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_pd("X(1,2,3,4)").unwrap_err();
        assert_eq!((e.position, e.message.as_str()), (1, "expected sign `+` or `-` after `X`"));
        let e = parse_pd("X+(1,2,3)").unwrap_err();
        assert_eq!((e.position, e.message.as_str()), (8, "expected `,`"));
        let e = parse_pd("Y(1,2,3,4)").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_pd("X+(0,2,3,4)").unwrap_err();
        assert_eq!((e.position, e.message.as_str()), (3, "edge id must be positive"));
        assert_eq!(parse_pd("  ").unwrap_err().message, "empty code");
    }

    #[test]
    fn edge_bookkeeping_is_checked() {
        let pd = parse_pd("X+(1,2,3,4) X+(1,4,2,3)").unwrap();
        let err = trace_pd(&pd).unwrap_err();
        match err {
            PdError::Malformed(msg) => assert!(msg.contains("edge 1 enters 2")),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn whitespace_tolerant_parse() {
        let pd = parse_pd("X+( 4, 1, 5, 2 )\nX+(2,5,3,6)\nV(6,3,1,4)").unwrap();
        assert_eq!(pd.entries.len(), 3);
        assert_eq!(pd.to_string(), "X+(4,1,5,2) X+(2,5,3,6) V(6,3,1,4)");
    }
}
