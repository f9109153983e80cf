//! Cut systems on Gauss diagrams.
//!
//! A cut system places finitely many points in the gaps between consecutive
//! markers (a bare circle has a single gap). It is valid when the sub-arcs
//! between consecutive markers-and-points can be directed so that every arc
//! meeting is head-to-head or tail-to-tail at chord endpoints and points,
//! while the two sub-arcs at each chord endpoint pair coherently across the
//! chord: the two passages of a chord must be traversed in parallel.
//!
//! Validity is decided here by two-coloring: each circle gets a base
//! direction bit, sub-arc directions alternate along the refined circle, and
//! every chord imposes one parity constraint between its two circles' bits.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::diagram::{ChordId, GaussDiagram};

/// The gap after marker `gap` on `circle` (markerless circles have gap 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GapRef {
    pub circle: usize,
    pub gap: usize,
}

impl fmt::Display for GapRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.circle, self.gap)
    }
}

/// A multiset of cut points, stored as per-gap counts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutSystem {
    counts: BTreeMap<(usize, usize), u32>,
}

impl CutSystem {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_triples(triples: impl Iterator<Item = (usize, usize, u32)>) -> Self {
        let mut counts: BTreeMap<(usize, usize), u32> = BTreeMap::new();
        for (circle, gap, n) in triples {
            if n > 0 {
                *counts.entry((circle, gap)).or_default() += n;
            }
        }
        CutSystem { counts }
    }

    pub fn get(&self, circle: usize, gap: usize) -> u32 {
        self.counts.get(&(circle, gap)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, circle: usize, gap: usize, n: u32) {
        if n == 0 {
            self.counts.remove(&(circle, gap));
        } else {
            self.counts.insert((circle, gap), n);
        }
    }

    pub fn add(&mut self, circle: usize, gap: usize, delta: i64) {
        let n = i64::from(self.get(circle, gap)) + delta;
        assert!(n >= 0, "cut count driven negative at {circle}.{gap}");
        self.set(circle, gap, n as u32);
    }

    pub fn total(&self) -> u32 {
        self.counts.values().sum()
    }

    pub fn total_on_circle(&self, circle: usize) -> u32 {
        self.counts.iter().filter(|((c, _), _)| *c == circle).map(|(_, &n)| n).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_count(&self) -> u32 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.counts.iter().map(|(&(c, g), &n)| (c, g, n))
    }

    /// Number of cut points on `circle` strictly before gap `gap`.
    pub fn points_before(&self, circle: usize, gap: usize) -> u32 {
        self.counts
            .range((circle, 0)..(circle, gap))
            .map(|(_, &n)| n)
            .sum()
    }

    pub fn in_range(&self, g: &GaussDiagram) -> bool {
        self.counts.keys().all(|&(c, gap)| {
            c < g.circle_count() && gap < g.circles()[c].len().max(1)
        })
    }
}

impl Serialize for CutSystem {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.triples())
    }
}

impl<'de> Deserialize<'de> for CutSystem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples: Vec<(usize, usize, u32)> = Vec::deserialize(d)?;
        Ok(CutSystem::from_triples(triples.into_iter()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutSystemError {
    #[error("cut point outside the diagram's gaps")]
    OutOfRange,
    #[error("circle {circle} carries an odd number of endpoints and cut points")]
    OddCircle { circle: usize },
    #[error("chord {chord} cannot be traversed in parallel")]
    Incoherent { chord: ChordId },
}

/// A direction assignment to the sub-arcs of the refined diagram: on each
/// circle, the arc following refined position `i` runs with the circle's
/// parametrization iff `base_forward ^ (i is odd)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternateOrientation {
    pub base_forward: Vec<bool>,
    pub refined_len: Vec<usize>,
}

impl AlternateOrientation {
    pub fn arc_forward(&self, circle: usize, refined_index: usize) -> bool {
        self.base_forward[circle] ^ (refined_index % 2 == 1)
    }
}

struct ParityDsu {
    parent: Vec<usize>,
    rank: Vec<u8>,
    to_parent: Vec<bool>,
}

impl ParityDsu {
    fn new(n: usize) -> Self {
        ParityDsu { parent: (0..n).collect(), rank: vec![0; n], to_parent: vec![false; n] }
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, p) = self.find(self.parent[x]);
        let total = self.to_parent[x] ^ p;
        self.parent[x] = root;
        self.to_parent[x] = total;
        (root, total)
    }

    fn union(&mut self, a: usize, b: usize, relation: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == relation;
        }
        let need = pa ^ pb ^ relation;
        if self.rank[ra] < self.rank[rb] {
            self.parent[ra] = rb;
            self.to_parent[ra] ^= need;
        } else {
            self.parent[rb] = ra;
            self.to_parent[rb] ^= need;
            if self.rank[ra] == self.rank[rb] {
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Refined position of the marker at `position` on `circle`: endpoint and cut
/// points interleaved, cut points in a gap sitting after the gap's marker.
fn refined_position(cuts: &CutSystem, circle: usize, position: usize) -> usize {
    position + cuts.points_before(circle, position) as usize
}

pub fn alternate_orientation(
    g: &GaussDiagram,
    cuts: &CutSystem,
) -> Result<AlternateOrientation, CutSystemError> {
    if !cuts.in_range(g) {
        return Err(CutSystemError::OutOfRange);
    }
    let n = g.circle_count();
    let mut refined_len = Vec::with_capacity(n);
    for c in 0..n {
        let len = g.circles()[c].len() + cuts.total_on_circle(c) as usize;
        if len % 2 != 0 {
            return Err(CutSystemError::OddCircle { circle: c });
        }
        refined_len.push(len);
    }
    let mut dsu = ParityDsu::new(n);
    for chord in g.chords() {
        let rt = refined_position(cuts, chord.tail.circle, chord.tail.position) % 2;
        let rh = refined_position(cuts, chord.head.circle, chord.head.position) % 2;
        // The two sub-arcs entering an endpoint have refined parities p-1 and
        // p; parallel traversal of the chord forces the tail's and head's
        // surrounding parities to disagree.
        let relation = (rt ^ rh ^ 1) == 1;
        if !dsu.union(chord.tail.circle, chord.head.circle, relation) {
            return Err(CutSystemError::Incoherent { chord: chord.id });
        }
    }
    let mut root_value: BTreeMap<usize, bool> = BTreeMap::new();
    let mut base_forward = Vec::with_capacity(n);
    for c in 0..n {
        let (root, parity) = dsu.find(c);
        let value = *root_value.entry(root).or_insert(parity);
        base_forward.push(!(value ^ parity));
    }
    Ok(AlternateOrientation { base_forward, refined_len })
}

pub fn is_cut_system(g: &GaussDiagram, cuts: &CutSystem) -> bool {
    alternate_orientation(g, cuts).is_ok()
}

/// A diagram is normal when the empty cut system is valid.
pub fn is_normal(g: &GaussDiagram) -> bool {
    is_cut_system(g, &CutSystem::empty())
}

/// For a one-circle diagram: valid iff the total number of points is even and
/// each chord has an even number of endpoints-plus-points strictly between
/// its two endpoints. `None` when `g` has more than one circle or the points
/// are out of range.
pub fn knot_parity_criterion(g: &GaussDiagram, cuts: &CutSystem) -> Option<bool> {
    if !g.is_knot() || !cuts.in_range(g) {
        return None;
    }
    if cuts.total() % 2 != 0 {
        return Some(false);
    }
    let m = g.marker_count(0);
    for chord in g.chords() {
        let t = chord.tail.position;
        let h = chord.head.position;
        let markers_inside = (h + m - t - 1) % m;
        let mut points_inside = 0u32;
        for k in 0..(h + m - t) % m {
            points_inside += cuts.get(0, (t + k) % m);
        }
        if (markers_inside as u32 + points_inside) % 2 != 0 {
            return Some(false);
        }
    }
    Some(true)
}

/// The elementary moves on cut systems. All of them preserve validity, and
/// any two valid systems on a diagram are connected by them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutMove {
    /// Add two points in one gap.
    InsertPair(GapRef),
    /// Remove two points from one gap.
    DeletePair(GapRef),
    /// Add one point in each of the four gaps flanking a chord's endpoints.
    InsertAround(ChordId),
    /// Remove one point from each of the four gaps flanking a chord's
    /// endpoints.
    DeleteAround(ChordId),
}

impl CutMove {
    pub fn kind(&self) -> &'static str {
        match self {
            CutMove::InsertPair(_) => "I_insert",
            CutMove::DeletePair(_) => "I_delete",
            CutMove::InsertAround(_) => "III_insert",
            CutMove::DeleteAround(_) => "III_delete",
        }
    }

    pub fn inverse(&self) -> CutMove {
        match *self {
            CutMove::InsertPair(g) => CutMove::DeletePair(g),
            CutMove::DeletePair(g) => CutMove::InsertPair(g),
            CutMove::InsertAround(c) => CutMove::DeleteAround(c),
            CutMove::DeleteAround(c) => CutMove::InsertAround(c),
        }
    }
}

impl fmt::Display for CutMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutMove::InsertPair(g) | CutMove::DeletePair(g) => {
                write!(f, "{}@{}", self.kind(), g)
            }
            CutMove::InsertAround(c) | CutMove::DeleteAround(c) => {
                write!(f, "{}@chord{}", self.kind(), c)
            }
        }
    }
}

impl Serialize for CutMove {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("kind", self.kind())?;
        match self {
            CutMove::InsertPair(g) | CutMove::DeletePair(g) => {
                map.serialize_entry("gap", &(g.circle, g.gap))?;
            }
            CutMove::InsertAround(c) | CutMove::DeleteAround(c) => {
                map.serialize_entry("chord", c)?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CutMove {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: String,
            #[serde(default)]
            gap: Option<(usize, usize)>,
            #[serde(default)]
            chord: Option<ChordId>,
        }
        let raw = Raw::deserialize(d)?;
        let gap = raw.gap.map(|(circle, gap)| GapRef { circle, gap });
        match (raw.kind.as_str(), gap, raw.chord) {
            ("I_insert", Some(g), None) => Ok(CutMove::InsertPair(g)),
            ("I_delete", Some(g), None) => Ok(CutMove::DeletePair(g)),
            ("III_insert", None, Some(c)) => Ok(CutMove::InsertAround(c)),
            ("III_delete", None, Some(c)) => Ok(CutMove::DeleteAround(c)),
            _ => Err(serde::de::Error::custom("bad cut move")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CutMoveError {
    #[error("no chord {0}")]
    UnknownChord(ChordId),
    #[error("gap {0} is outside the diagram")]
    GapOutOfRange(GapRef),
    #[error("not enough cut points in gap {0}")]
    InsufficientPoints(GapRef),
}

fn check_gap(g: &GaussDiagram, gap: GapRef) -> Result<(), CutMoveError> {
    if gap.circle < g.circle_count() && gap.gap < g.circles()[gap.circle].len().max(1) {
        Ok(())
    } else {
        Err(CutMoveError::GapOutOfRange(gap))
    }
}

/// The four gaps flanking a chord's endpoints, as (gap, multiplicity) with
/// coinciding gaps merged.
pub fn flanking_gaps(g: &GaussDiagram, chord: ChordId) -> Result<Vec<(GapRef, u32)>, CutMoveError> {
    let ch = g.chord(chord).ok_or(CutMoveError::UnknownChord(chord))?;
    let mut gaps: BTreeMap<GapRef, u32> = BTreeMap::new();
    for ep in [ch.tail, ch.head] {
        let m = g.circles()[ep.circle].len();
        for gap in [(ep.position + m - 1) % m, ep.position] {
            *gaps.entry(GapRef { circle: ep.circle, gap }).or_default() += 1;
        }
    }
    Ok(gaps.into_iter().collect())
}

pub fn apply_cut_move(
    g: &GaussDiagram,
    cuts: &CutSystem,
    mv: CutMove,
) -> Result<CutSystem, CutMoveError> {
    let mut out = cuts.clone();
    match mv {
        CutMove::InsertPair(gap) => {
            check_gap(g, gap)?;
            out.add(gap.circle, gap.gap, 2);
        }
        CutMove::DeletePair(gap) => {
            check_gap(g, gap)?;
            if out.get(gap.circle, gap.gap) < 2 {
                return Err(CutMoveError::InsufficientPoints(gap));
            }
            out.add(gap.circle, gap.gap, -2);
        }
        CutMove::InsertAround(chord) => {
            for (gap, mult) in flanking_gaps(g, chord)? {
                out.add(gap.circle, gap.gap, i64::from(mult));
            }
        }
        CutMove::DeleteAround(chord) => {
            let gaps = flanking_gaps(g, chord)?;
            for &(gap, mult) in &gaps {
                if out.get(gap.circle, gap.gap) < mult {
                    return Err(CutMoveError::InsufficientPoints(gap));
                }
            }
            for (gap, mult) in gaps {
                out.add(gap.circle, gap.gap, -i64::from(mult));
            }
        }
    }
    Ok(out)
}

/// All moves applicable to `cuts` whose results keep every per-gap count at
/// most `cap`, with the resulting systems, in the moves' natural order.
pub fn neighbors(
    g: &GaussDiagram,
    cuts: &CutSystem,
    cap: u32,
) -> Vec<(CutMove, CutSystem)> {
    let mut out = Vec::new();
    let mut moves: Vec<CutMove> = Vec::new();
    for circle in 0..g.circle_count() {
        for gap in 0..g.circles()[circle].len().max(1) {
            moves.push(CutMove::InsertPair(GapRef { circle, gap }));
        }
    }
    for circle in 0..g.circle_count() {
        for gap in 0..g.circles()[circle].len().max(1) {
            moves.push(CutMove::DeletePair(GapRef { circle, gap }));
        }
    }
    let chord_ids: Vec<ChordId> = g.chords().iter().map(|c| c.id).collect();
    moves.extend(chord_ids.iter().map(|&c| CutMove::InsertAround(c)));
    moves.extend(chord_ids.iter().map(|&c| CutMove::DeleteAround(c)));
    for mv in moves {
        if let Ok(next) = apply_cut_move(g, cuts, mv) {
            if next.max_count() <= cap {
                out.push((mv, next));
            }
        }
    }
    out
}
