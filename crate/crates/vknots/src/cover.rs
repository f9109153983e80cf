//! The order-two covering of a diagram with a cut system.
//!
//! Take two copies of the diagram: the base copy and the star copy, where the
//! star copy has every arrow reversed and every sign kept. Cut both copies at
//! every cut point and reglue crosswise: traversal switches copies each time
//! it passes a cut point. With a valid cut system the result is normal, and
//! for a knot it has exactly two circles, whose linking number is the
//! covering invariant.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cuts::{self, CutSystem, CutSystemError};
use crate::diagram::{ChordId, End, GaussDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    Base,
    Star,
}

impl Layer {
    fn other(self) -> Layer {
        match self {
            Layer::Base => Layer::Star,
            Layer::Star => Layer::Base,
        }
    }
}

/// Where one run of the source diagram (a stretch between consecutive cut
/// points; a whole circle when the circle has none) landed in the cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunImage {
    pub circle: usize,
    pub index: usize,
    pub layer: Layer,
    #[serde(rename = "coverCircle")]
    pub cover_circle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverResult {
    pub diagram: GaussDiagram,
    /// Cover chord id to (layer, source chord id).
    pub provenance: BTreeMap<ChordId, (Layer, ChordId)>,
    pub runs: Vec<RunImage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    End(End),
    Cut,
}

pub fn double_cover(
    g: &GaussDiagram,
    cuts: &CutSystem,
) -> Result<CoverResult, CutSystemError> {
    cuts::alternate_orientation(g, cuts)?;
    let offset = g.max_chord_id();
    let n = g.circle_count();

    let mut slots: Vec<Vec<Slot>> = Vec::with_capacity(n);
    let mut cut_slots: Vec<Vec<usize>> = Vec::with_capacity(n);
    for (c, markers) in g.circles().iter().enumerate() {
        let mut s = Vec::new();
        let mut cut_positions = Vec::new();
        if markers.is_empty() {
            for _ in 0..cuts.get(c, 0) {
                cut_positions.push(s.len());
                s.push(Slot::Cut);
            }
        } else {
            for (p, &end) in markers.iter().enumerate() {
                s.push(Slot::End(end));
                for _ in 0..cuts.get(c, p) {
                    cut_positions.push(s.len());
                    s.push(Slot::Cut);
                }
            }
        }
        slots.push(s);
        cut_slots.push(cut_positions);
    }

    let mut circles: Vec<Vec<End>> = Vec::new();
    let mut signs = BTreeMap::new();
    // Arc a on a circle with t slots runs from slot a to slot a+1 mod t.
    let mut arc_circle: Vec<Vec<BTreeMap<usize, usize>>> =
        vec![vec![BTreeMap::new(), BTreeMap::new()]; n];
    let mut empty_circle_image: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
    let layer_ix = |l: Layer| match l {
        Layer::Base => 0,
        Layer::Star => 1,
    };

    let emit = |layer: Layer, end: End| match layer {
        Layer::Base => end,
        Layer::Star => End { chord: end.chord + offset, role: end.role.flipped() },
    };
    for layer in [Layer::Base, Layer::Star] {
        for c in 0..n {
            let t = slots[c].len();
            if t == 0 {
                circles.push(Vec::new());
                empty_circle_image[c][layer_ix(layer)] = Some(circles.len() - 1);
                continue;
            }
            for s0 in 0..t {
                // An End slot's marker on a layer is emitted exactly when the
                // arc leaving it on that layer is walked, so the arc record
                // doubles as the visited set; circles start at their first
                // emitted marker. Circles of cut slots only are walked from
                // their first unvisited arc and stay empty.
                if arc_circle[c][layer_ix(layer)].contains_key(&s0) {
                    continue;
                }
                let has_marker = matches!(slots[c][s0], Slot::End(_));
                let cover_index = circles.len();
                let mut markers = Vec::new();
                if let Slot::End(end) = slots[c][s0] {
                    markers.push(emit(layer, end));
                }
                let (mut cur_layer, mut arc) = (layer, s0);
                loop {
                    arc_circle[c][layer_ix(cur_layer)].insert(arc, cover_index);
                    let next = (arc + 1) % t;
                    match slots[c][next] {
                        Slot::End(end) => {
                            if (cur_layer, next) == (layer, s0) {
                                break;
                            }
                            markers.push(emit(cur_layer, end));
                            arc = next;
                        }
                        Slot::Cut => {
                            cur_layer = cur_layer.other();
                            arc = next;
                            if !has_marker && (cur_layer, arc) == (layer, s0) {
                                break;
                            }
                        }
                    }
                }
                circles.push(markers);
            }
        }
    }

    for (&id, &sign) in g.signs() {
        signs.insert(id, sign);
        signs.insert(id + offset, sign);
    }
    let mut provenance = BTreeMap::new();
    for (&id, _) in g.signs() {
        provenance.insert(id, (Layer::Base, id));
        provenance.insert(id + offset, (Layer::Star, id));
    }

    let mut runs = Vec::new();
    for c in 0..n {
        let t = slots[c].len();
        let k = cut_slots[c].len();
        let run_count = k.max(1);
        for index in 0..run_count {
            for layer in [Layer::Base, Layer::Star] {
                let cover_circle = if t == 0 {
                    empty_circle_image[c][layer_ix(layer)].expect("recorded above")
                } else {
                    // Run `index` starts at the index-th cut slot (or anywhere
                    // when there are no cuts) and its first arc leaves that slot.
                    let arc = if k == 0 { 0 } else { cut_slots[c][index] };
                    arc_circle[c][layer_ix(layer)][&arc]
                };
                runs.push(RunImage { circle: c, index, layer, cover_circle });
            }
        }
    }

    let diagram = GaussDiagram::from_parts(circles, signs)
        .expect("covering duplicates every chord once per layer");
    Ok(CoverResult { diagram, provenance, runs })
}

/// Sum of signs over chords joining two distinct circles, kept doubled so
/// halves stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linking {
    doubled: i64,
}

impl Linking {
    pub fn from_doubled(doubled: i64) -> Linking {
        Linking { doubled }
    }

    pub fn doubled(self) -> i64 {
        self.doubled
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.doubled % 2 == 0).then_some(self.doubled / 2)
    }
}

impl std::fmt::Display for Linking {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.doubled),
        }
    }
}

/// Linking number of a two-circle diagram: half the sum of the signs of the
/// chords joining the circles. `None` unless there are exactly two circles.
pub fn linking_number(g: &GaussDiagram) -> Option<Linking> {
    if g.circle_count() != 2 {
        return None;
    }
    let doubled = g
        .chords()
        .iter()
        .filter(|c| c.tail.circle != c.head.circle)
        .map(|c| c.sign.value())
        .sum();
    Some(Linking::from_doubled(doubled))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    InvalidCuts(#[from] CutSystemError),
    #[error("diagram has more than one circle")]
    NotAKnot,
    #[error("covering of a knot did not produce two circles")]
    NotTwoCircles,
    #[error("covering linking sum is odd")]
    OddLinking,
}

/// The covering linking number of a knot diagram with a cut system.
pub fn lk_n(g: &GaussDiagram, cuts: &CutSystem) -> Result<i64, CoverError> {
    if !g.is_knot() {
        return Err(CoverError::NotAKnot);
    }
    let cover = double_cover(g, cuts)?;
    if cover.diagram.circle_count() != 2 {
        return Err(CoverError::NotTwoCircles);
    }
    linking_number(&cover.diagram)
        .expect("two circles")
        .as_integer()
        .ok_or(CoverError::OddLinking)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    fn cuts(triples: &[(usize, usize, u32)]) -> CutSystem {
        CutSystem::from_triples(triples.iter().copied())
    }

    #[test]
    fn virtual_trefoil_cover() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let p = cuts(&[(0, 1, 1), (0, 3, 1)]);
        let cover = double_cover(&g, &p).unwrap();
        assert_eq!(cover.diagram.to_code(), "O1+O2+O3+O4+|U1+U2+U3+U4+");
        assert!(cuts::is_normal(&cover.diagram));
        assert_eq!(lk_n(&g, &p).unwrap(), 2);
        assert_eq!(cover.provenance[&3], (Layer::Star, 1));
        assert_eq!(cover.provenance[&2], (Layer::Base, 2));
    }

    #[test]
    fn empty_cut_system_gives_disjoint_copies() {
        let g = parse_gauss_code("O1+U2+O3+U1+O2+U3+").unwrap();
        let cover = double_cover(&g, &CutSystem::empty()).unwrap();
        assert_eq!(cover.diagram.circle_count(), 2);
        assert_eq!(cover.diagram.to_code(), "O1+U2+O3+U1+O2+U3+|U4+O5+U6+O4+U5+O6+");
        assert_eq!(lk_n(&g, &CutSystem::empty()).unwrap(), 0);
    }

    #[test]
    fn unknot_covers() {
        let g = GaussDiagram::unknot();
        let cover = double_cover(&g, &CutSystem::empty()).unwrap();
        assert_eq!(cover.diagram.to_code(), "()|()");
        let cover = double_cover(&g, &cuts(&[(0, 0, 2)])).unwrap();
        assert_eq!(cover.diagram.to_code(), "()|()");
        assert_eq!(lk_n(&g, &cuts(&[(0, 0, 2)])).unwrap(), 0);
    }

    #[test]
    fn invalid_cuts_are_rejected() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        assert!(matches!(double_cover(&g, &CutSystem::empty()), Err(CutSystemError::Incoherent { .. })));
        assert!(lk_n(&g, &cuts(&[(0, 0, 1), (0, 1, 1)])).is_err());
    }

    #[test]
    fn links_are_rejected_for_lk_n() {
        let g = parse_gauss_code("O1+U2+|U1+O2+").unwrap();
        assert!(matches!(lk_n(&g, &CutSystem::empty()), Err(CoverError::NotAKnot)));
    }

    #[test]
    fn run_images_pair_up() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let p = cuts(&[(0, 1, 1), (0, 3, 1)]);
        let cover = double_cover(&g, &p).unwrap();
        assert_eq!(cover.runs.len(), 4);
        // Each run has one image in each cover circle.
        for index in 0..2 {
            let images: Vec<usize> = cover
                .runs
                .iter()
                .filter(|r| r.index == index)
                .map(|r| r.cover_circle)
                .collect();
            let mut sorted = images.clone();
            sorted.sort();
            assert_eq!(sorted, vec![0, 1]);
        }
    }

    #[test]
    fn linking_number_halves() {
        let g = parse_gauss_code("O1+U2+|U1+O2+").unwrap();
        assert_eq!(linking_number(&g).unwrap().to_string(), "1");
        let g = parse_gauss_code("O1+O2+|U1+U2+").unwrap();
        assert_eq!(linking_number(&g).unwrap().as_integer(), Some(1));
        let g = parse_gauss_code("O1+U1+|()").unwrap();
        assert_eq!(linking_number(&g).unwrap().doubled(), 0);
        assert!(linking_number(&parse_gauss_code("O1+U1+").unwrap()).is_none());
    }
}
