//! Canonical form for Gauss diagrams.
//!
//! Two diagrams describe the same combinatorial object when they differ only
//! by renaming chords, rotating circles, or reordering circles. The canonical
//! form is the least linearization over all those choices: circles without
//! markers come first, and the remaining circles are placed greedily so the
//! resulting token stream — with chords renamed in order of first appearance —
//! is lexicographically smallest.

use std::collections::BTreeMap;

use crate::cuts::CutSystem;
use crate::diagram::{ChordId, End, GaussDiagram, Role, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Tok {
    Sep,
    Marker { id: ChordId, role: Role, sign: Sign },
}

/// How a canonical form was produced: enough to carry decorations (such as
/// cut systems) from the source presentation onto the canonical one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonMap {
    /// For each output circle, the source circle and the rotation applied to
    /// it (output position 0 is source position `rotation`).
    pub placement: Vec<(usize, usize)>,
    /// Source chord id to output chord id.
    pub chord_map: BTreeMap<ChordId, ChordId>,
}

impl CanonMap {
    pub fn map_cuts(&self, source: &GaussDiagram, cuts: &CutSystem) -> CutSystem {
        let mut triples = Vec::new();
        for (new_circle, &(old_circle, rotation)) in self.placement.iter().enumerate() {
            let gaps = source.circles()[old_circle].len().max(1);
            for g in 0..gaps {
                let n = cuts.get(old_circle, g);
                if n > 0 {
                    triples.push((new_circle, (g + gaps - rotation % gaps) % gaps, n));
                }
            }
        }
        CutSystem::from_triples(triples.into_iter())
    }
}

struct Best {
    stream: Vec<Tok>,
    placement: Vec<(usize, usize)>,
    rename: BTreeMap<ChordId, ChordId>,
}

struct Search<'a> {
    g: &'a GaussDiagram,
    nonempty: Vec<usize>,
    used: Vec<bool>,
    placed: Vec<(usize, usize)>,
    stream: Vec<Tok>,
    rename: BTreeMap<ChordId, ChordId>,
    best: Option<Best>,
}

impl Search<'_> {
    /// Returns whether `best` was replaced somewhere in this subtree. The
    /// `strictly_less` flag means the current partial stream sits strictly
    /// below `best`; a replacement by a descendant extends the current stream,
    /// which therefore now ties the new best, so the flag must drop.
    fn dfs(&mut self, next_id: ChordId, mut strictly_less: bool) -> bool {
        if self.placed.len() == self.nonempty.len() {
            if strictly_less || self.best.is_none() {
                self.best = Some(Best {
                    stream: self.stream.clone(),
                    placement: self.placed.clone(),
                    rename: self.rename.clone(),
                });
                return true;
            }
            return false;
        }
        let mut updated = false;
        for k in 0..self.nonempty.len() {
            if self.used[k] {
                continue;
            }
            let circle = self.nonempty[k];
            let markers = &self.g.circles()[circle];
            let m = markers.len();
            for rotation in 0..m {
                let base_len = self.stream.len();
                let mut new_names: Vec<ChordId> = Vec::new();
                let mut next = next_id;
                let mut less = strictly_less;
                let mut abandoned = false;
                for step in 0..=m {
                    let tok = if step == 0 {
                        Tok::Sep
                    } else {
                        let end = markers[(rotation + step - 1) % m];
                        let id = *self.rename.entry(end.chord).or_insert_with(|| {
                            new_names.push(end.chord);
                            let id = next;
                            next += 1;
                            id
                        });
                        let sign = self.g.sign(end.chord).expect("chord has a sign");
                        Tok::Marker { id, role: end.role, sign }
                    };
                    if !less {
                        if let Some(best) = &self.best {
                            match tok.cmp(&best.stream[self.stream.len()]) {
                                std::cmp::Ordering::Greater => {
                                    abandoned = true;
                                    break;
                                }
                                std::cmp::Ordering::Less => less = true,
                                std::cmp::Ordering::Equal => {}
                            }
                        }
                    }
                    self.stream.push(tok);
                }
                if !abandoned {
                    self.used[k] = true;
                    self.placed.push((circle, rotation));
                    if self.dfs(next, less) {
                        updated = true;
                        strictly_less = false;
                    }
                    self.placed.pop();
                    self.used[k] = false;
                }
                self.stream.truncate(base_len);
                for id in new_names {
                    self.rename.remove(&id);
                }
            }
        }
        updated
    }
}

pub fn canonical_form(g: &GaussDiagram) -> (GaussDiagram, CanonMap) {
    let empties: Vec<usize> =
        (0..g.circle_count()).filter(|&c| g.circles()[c].is_empty()).collect();
    let nonempty: Vec<usize> =
        (0..g.circle_count()).filter(|&c| !g.circles()[c].is_empty()).collect();
    let mut search = Search {
        g,
        used: vec![false; nonempty.len()],
        nonempty,
        placed: Vec::new(),
        stream: Vec::new(),
        rename: BTreeMap::new(),
        best: None,
    };
    search.dfs(1, false);

    let mut placement: Vec<(usize, usize)> = empties.iter().map(|&c| (c, 0)).collect();
    let mut chord_map = BTreeMap::new();
    let mut circles: Vec<Vec<End>> = vec![Vec::new(); empties.len()];
    let mut signs = BTreeMap::new();
    if let Some(best) = search.best {
        for &(circle, rotation) in &best.placement {
            let markers = &g.circles()[circle];
            let m = markers.len();
            let circle_out: Vec<End> = (0..m)
                .map(|p| {
                    let end = markers[(rotation + p) % m];
                    End { chord: best.rename[&end.chord], role: end.role }
                })
                .collect();
            circles.push(circle_out);
        }
        for (&old, &new) in &best.rename {
            signs.insert(new, g.sign(old).expect("chord has a sign"));
        }
        placement.extend(best.placement);
        chord_map = best.rename;
    }
    let canonical = GaussDiagram::from_parts(circles, signs)
        .expect("relabeling preserves well-formedness");
    (canonical, CanonMap { placement, chord_map })
}

pub fn canonical(g: &GaussDiagram) -> GaussDiagram {
    canonical_form(g).0
}

pub fn canonical_code(g: &GaussDiagram) -> String {
    canonical(g).to_code()
}

/// Equality up to chord renaming, circle rotation and circle order.
pub fn equivalent_presentations(a: &GaussDiagram, b: &GaussDiagram) -> bool {
    canonical(a) == canonical(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;

    fn canon_of(code: &str) -> String {
        canonical_code(&parse_gauss_code(code).unwrap())
    }

    #[test]
    fn already_canonical_codes_are_fixed() {
        for code in ["O1+U1+", "O1+O2+U1+U2+", "O1+U2+O3+U1+O2+U3+", "()", "()|O1+U1+"] {
            assert_eq!(canon_of(code), code);
        }
    }

    #[test]
    fn rotation_and_relabeling_wash_out() {
        assert_eq!(canon_of("U1+U2+O1+O2+"), "O1+O2+U1+U2+");
        assert_eq!(canon_of("O7+O3+U7+U3+"), "O1+O2+U1+U2+");
        assert_eq!(canon_of("U3+O2+U1+O3+U2+O1+"), "O1+U2+O3+U1+O2+U3+");
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        for offset in 0..4 {
            assert_eq!(canonical_code(&g.rotated(0, offset)), "O1+O2+U1+U2+");
        }
    }

    #[test]
    fn circle_order_is_normalized() {
        assert_eq!(canon_of("U1+|O1+"), "O1+|U1+");
        assert_eq!(canon_of("O1+U1+|()"), "()|O1+U1+");
        assert_eq!(canon_of("U2-O1-|U1-O2-"), canon_of("U1-O2-|U2-O1-"));
    }

    #[test]
    fn sign_order_prefers_plus() {
        assert_eq!(canon_of("O1-U1-"), "O1-U1-");
        assert_eq!(canon_of("O1-U2+O2+U1-"), "O1+U2-O2-U1+");
    }

    #[test]
    fn idempotent() {
        for code in ["U3+O2+U1+O3+U2+O1+", "O1-U2+U1-O2+", "U1+|O1+|()"] {
            let once = canon_of(code);
            assert_eq!(canon_of(&once), once);
        }
    }

    #[test]
    fn late_best_replacement_does_not_strand_a_larger_stream() {
        // A descendant of the winning branch replaces `best` after the big
        // circle is placed under a strictly-less flag; the single-marker
        // circles must still be compared against the new best.
        let code = "U3-|O2-O3-U2-U4-U1+O1+|O4-";
        assert_eq!(canon_of(code), "O1+O2-O3-U2-U4-U1+|U3-|O4-");
        assert_eq!(canon_of(&canon_of(code)), canon_of(code));
    }

    #[test]
    fn map_cuts_follows_rotation() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let cuts = CutSystem::from_triples([(0, 1, 1), (0, 3, 2)].into_iter());
        let rotated = g.rotated(0, 2);
        let rotated_cuts = CutSystem::from_triples([(0, 3, 1), (0, 1, 2)].into_iter());
        let (canon, map) = canonical_form(&rotated);
        assert_eq!(canon, g);
        assert_eq!(map.map_cuts(&rotated, &rotated_cuts), cuts);
    }

    #[test]
    fn map_cuts_keeps_empty_circle_points() {
        let g = parse_gauss_code("O1+U1+|()").unwrap();
        let cuts = CutSystem::from_triples([(1, 0, 2)].into_iter());
        let (canon, map) = canonical_form(&g);
        assert_eq!(canon.to_code(), "()|O1+U1+");
        assert_eq!(map.map_cuts(&g, &cuts), CutSystem::from_triples([(0, 0, 2)].into_iter()));
    }
}
