//! Seeded random diagram generators for the verification suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cutfind::random_cut_system;
use crate::cuts::{apply_cut_move, CutMove, CutSystem, GapRef};
use crate::diagram::{ChordId, End, GaussDiagram, Role, Sign};

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn shuffled_ends<R: Rng>(rng: &mut R, chords: usize) -> (Vec<End>, BTreeMap<ChordId, Sign>) {
    let mut ends = Vec::with_capacity(2 * chords);
    let mut signs = BTreeMap::new();
    for i in 0..chords {
        let id = (i + 1) as ChordId;
        ends.push(End { chord: id, role: Role::Tail });
        ends.push(End { chord: id, role: Role::Head });
        signs.insert(id, random_sign(rng));
    }
    ends.shuffle(rng);
    (ends, signs)
}

/// A random one-circle diagram with `1..=max_chords` chords.
pub fn random_knot<R: Rng>(rng: &mut R, max_chords: usize) -> GaussDiagram {
    let n = rng.gen_range(1..=max_chords.max(1));
    let (ends, signs) = shuffled_ends(rng, n);
    GaussDiagram::from_parts(vec![ends], signs).expect("generated ends are paired")
}

/// A random diagram with up to `max_chords` chords spread over up to
/// `max_circles` circles. Circles left without markers are kept.
pub fn random_link<R: Rng>(rng: &mut R, max_chords: usize, max_circles: usize) -> GaussDiagram {
    let circle_count = rng.gen_range(1..=max_circles.max(1));
    let n = rng.gen_range(0..=max_chords);
    let (ends, signs) = shuffled_ends(rng, n);
    let mut circles = vec![Vec::new(); circle_count];
    for e in ends {
        circles[rng.gen_range(0..circle_count)].push(e);
    }
    GaussDiagram::from_parts(circles, signs).expect("generated ends are paired")
}

/// A random knot together with a random valid cut system within the point
/// budget; re-rolls the knot whenever the budget is unattainable.
pub fn random_valid_knot_pair<R: Rng>(
    rng: &mut R,
    max_chords: usize,
    max_points: u32,
) -> (GaussDiagram, CutSystem) {
    loop {
        let g = random_knot(rng, max_chords);
        if let Some(p) = random_cut_system(&g, max_points, rng) {
            return (g, p);
        }
    }
}

/// Two distinct valid cut systems on `g`, or `None` if none fits the budget.
/// When both draws coincide the second is widened by one pair, so the result
/// may then exceed `max_points` by two.
pub fn random_two_cut_systems<R: Rng>(
    rng: &mut R,
    g: &GaussDiagram,
    max_points: u32,
) -> Option<(CutSystem, CutSystem)> {
    let p = random_cut_system(g, max_points, rng)?;
    let q = random_cut_system(g, max_points, rng)?;
    if p != q {
        return Some((p, q));
    }
    let widened = apply_cut_move(g, &q, CutMove::InsertPair(GapRef { circle: 0, gap: 0 }))
        .expect("gap 0 exists on circle 0");
    Some((p, widened))
}
