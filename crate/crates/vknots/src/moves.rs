//! Reidemeister rewrites and flypes on Gauss diagrams, with seeded random
//! walks that produce equivalent diagram pairs and replayable traces.

use crate::cuts::GapRef;
use crate::diagram::{ChordId, End, EndpointRef, GaussDiagram, Role, Sign};
use itertools::Itertools;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowDir {
    /// The over-passage comes first along the circle: `..O U..`
    TailFirst,
    /// `..U O..`
    HeadFirst,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R2Variant {
    /// Both strands run through the bigon the same way; the chords interleave.
    Parallel,
    /// Opposite directions; the chords nest.
    Antiparallel,
}

/// The four recognized three-chord slide patterns: the all-positive base
/// pattern and its conjugates under switching and mirroring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum R3Phase {
    Base,
    Switched,
    Mirrored,
    MirrorSwitched,
}

impl R3Phase {
    pub const ALL: [R3Phase; 4] = [
        R3Phase::Base,
        R3Phase::Switched,
        R3Phase::Mirrored,
        R3Phase::MirrorSwitched,
    ];

    fn sign(self) -> Sign {
        match self {
            R3Phase::Base | R3Phase::MirrorSwitched => Sign::Plus,
            R3Phase::Switched | R3Phase::Mirrored => Sign::Minus,
        }
    }

    /// Roles of the six markers in the three adjacent pairs
    /// `(x·,y·) (x·,z·) (y·,z·)` for chords `(x,y,z)`.
    fn roles(self) -> [Role; 6] {
        use Role::{Head, Tail};
        match self {
            R3Phase::Base | R3Phase::Mirrored => [Tail, Tail, Head, Tail, Head, Head],
            R3Phase::Switched | R3Phase::MirrorSwitched => {
                [Head, Head, Tail, Head, Tail, Tail]
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct R3Instance {
    pub chords: [ChordId; 3],
    pub phase: R3Phase,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("chord {0} does not exist")]
    UnknownChord(ChordId),
    #[error("circle {circle} has no gap {gap}")]
    GapOutOfRange { circle: usize, gap: usize },
    #[error("endpoints are not an adjacent block")]
    NotAdjacent,
    #[error("the two chords must have opposite signs")]
    SignsNotOpposite,
    #[error("markers do not match the move pattern")]
    PatternMismatch,
    #[error("recorded step does not replay: {0}")]
    ReplayMismatch(String),
}

fn check_gap(g: &GaussDiagram, at: GapRef) -> Result<(), MoveError> {
    if at.circle >= g.circle_count() || at.gap >= g.gap_count(at.circle) {
        return Err(MoveError::GapOutOfRange {
            circle: at.circle,
            gap: at.gap,
        });
    }
    Ok(())
}

/// Markers of `block` are placed into the gap, in order. Gap `g` is the arc
/// after marker `g`, so the block lands at index `g + 1`; a bare circle takes
/// it at index 0.
fn insert_block(circles: &mut [Vec<End>], at: GapRef, block: &[End]) {
    let circle = &mut circles[at.circle];
    let idx = if circle.is_empty() { 0 } else { at.gap + 1 };
    for (i, e) in block.iter().enumerate() {
        circle.insert(idx + i, *e);
    }
}

fn rebuild(
    circles: Vec<Vec<End>>,
    signs: std::collections::BTreeMap<ChordId, Sign>,
) -> GaussDiagram {
    GaussDiagram::from_parts(circles, signs).expect("move produced a well-formed diagram")
}

pub fn r1_insert(
    g: &GaussDiagram,
    at: GapRef,
    sign: Sign,
    dir: ArrowDir,
) -> Result<GaussDiagram, MoveError> {
    check_gap(g, at)?;
    let id = g.max_chord_id() + 1;
    let tail = End {
        chord: id,
        role: Role::Tail,
    };
    let head = End {
        chord: id,
        role: Role::Head,
    };
    let block = match dir {
        ArrowDir::TailFirst => [tail, head],
        ArrowDir::HeadFirst => [head, tail],
    };
    let mut circles = g.circles().to_vec();
    insert_block(&mut circles, at, &block);
    let mut signs = g.signs().clone();
    signs.insert(id, sign);
    Ok(rebuild(circles, signs))
}

pub fn r1_remove(g: &GaussDiagram, chord: ChordId) -> Result<GaussDiagram, MoveError> {
    let c = g.chord(chord).ok_or(MoveError::UnknownChord(chord))?;
    if c.tail.circle != c.head.circle {
        return Err(MoveError::NotAdjacent);
    }
    let m = g.marker_count(c.tail.circle);
    let (t, h) = (c.tail.position, c.head.position);
    if (t + 1) % m != h && (h + 1) % m != t {
        return Err(MoveError::NotAdjacent);
    }
    let mut circles = g.circles().to_vec();
    for p in [t.max(h), t.min(h)] {
        circles[c.tail.circle].remove(p);
    }
    let mut signs = g.signs().clone();
    signs.remove(&chord);
    Ok(rebuild(circles, signs))
}

/// Inserts an opposite-sign chord pair `(u, v)` forming a bigon: the tail
/// block `[u v]` goes into `gap1`, the head block into `gap2` (`[u v]` for
/// `Parallel`, `[v u]` for `Antiparallel`). With `gap1 == gap2` only the
/// nested `Antiparallel` shape exists. `sign` is the sign of `u`.
pub fn r2_insert(
    g: &GaussDiagram,
    gap1: GapRef,
    gap2: GapRef,
    variant: R2Variant,
    sign: Sign,
) -> Result<GaussDiagram, MoveError> {
    check_gap(g, gap1)?;
    check_gap(g, gap2)?;
    let u = g.max_chord_id() + 1;
    let v = u + 1;
    let end = |chord, role| End { chord, role };
    let tails = [end(u, Role::Tail), end(v, Role::Tail)];
    let heads = match variant {
        R2Variant::Parallel => [end(u, Role::Head), end(v, Role::Head)],
        R2Variant::Antiparallel => [end(v, Role::Head), end(u, Role::Head)],
    };
    let mut circles = g.circles().to_vec();
    if gap1 == gap2 {
        if variant == R2Variant::Parallel {
            return Err(MoveError::PatternMismatch);
        }
        let block: Vec<End> = tails.iter().chain(&heads).copied().collect();
        insert_block(&mut circles, gap1, &block);
    } else if gap1.circle == gap2.circle && gap1.gap < gap2.gap {
        insert_block(&mut circles, gap2, &heads);
        insert_block(&mut circles, gap1, &tails);
    } else {
        insert_block(&mut circles, gap1, &tails);
        insert_block(&mut circles, gap2, &heads);
    }
    let mut signs = g.signs().clone();
    signs.insert(u, sign);
    signs.insert(v, sign.flipped());
    Ok(rebuild(circles, signs))
}

fn adjacent(g: &GaussDiagram, a: EndpointRef, b: EndpointRef) -> bool {
    a.circle == b.circle && (a.position + 1) % g.marker_count(a.circle) == b.position
}

fn r2_blocks(
    g: &GaussDiagram,
    a: ChordId,
    b: ChordId,
) -> Result<[EndpointRef; 4], MoveError> {
    let ca = g.chord(a).ok_or(MoveError::UnknownChord(a))?;
    let cb = g.chord(b).ok_or(MoveError::UnknownChord(b))?;
    if ca.sign != cb.sign.flipped() {
        return Err(MoveError::SignsNotOpposite);
    }
    if !(adjacent(g, ca.tail, cb.tail) || adjacent(g, cb.tail, ca.tail)) {
        return Err(MoveError::NotAdjacent);
    }
    if !(adjacent(g, ca.head, cb.head) || adjacent(g, cb.head, ca.head)) {
        return Err(MoveError::NotAdjacent);
    }
    Ok([ca.tail, cb.tail, ca.head, cb.head])
}

/// Removes a bigon pair: the two over-passages adjacent, the two
/// under-passages adjacent, signs opposite.
pub fn r2_remove(g: &GaussDiagram, a: ChordId, b: ChordId) -> Result<GaussDiagram, MoveError> {
    let ends = r2_blocks(g, a, b)?;
    let mut circles = g.circles().to_vec();
    let mut by_circle: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for e in ends {
        by_circle.entry(e.circle).or_default().push(e.position);
    }
    for (circle, mut positions) in by_circle {
        positions.sort_unstable_by(|x, y| y.cmp(x));
        for p in positions {
            circles[circle].remove(p);
        }
    }
    let mut signs = g.signs().clone();
    signs.remove(&a);
    signs.remove(&b);
    Ok(rebuild(circles, signs))
}

pub fn r2_pair_matches(g: &GaussDiagram, a: ChordId, b: ChordId) -> bool {
    r2_blocks(g, a, b).is_ok()
}

fn r3_pairs(
    g: &GaussDiagram,
    chords: [ChordId; 3],
    phase: R3Phase,
) -> Result<[(EndpointRef, EndpointRef); 3], MoveError> {
    for id in chords {
        match g.sign(id) {
            None => return Err(MoveError::UnknownChord(id)),
            Some(s) if s != phase.sign() => return Err(MoveError::PatternMismatch),
            _ => {}
        }
    }
    let [x, y, z] = chords.map(|id| g.chord(id).unwrap());
    let roles = phase.roles();
    let at = |c: &crate::diagram::Chord, role| match role {
        Role::Tail => c.tail,
        Role::Head => c.head,
    };
    let pairs = [
        (at(&x, roles[0]), at(&y, roles[1])),
        (at(&x, roles[2]), at(&z, roles[3])),
        (at(&y, roles[4]), at(&z, roles[5])),
    ];
    for (p, q) in pairs {
        if !adjacent(g, p, q) {
            return Err(MoveError::PatternMismatch);
        }
    }
    Ok(pairs)
}

/// Slides the strand carrying two of the chords across the third: each of the
/// three adjacent marker pairs swaps in place. The reverse slide matches the
/// reversed chord order in the role-flipped phase of the same sign.
pub fn r3(
    g: &GaussDiagram,
    chords: [ChordId; 3],
    phase: R3Phase,
) -> Result<GaussDiagram, MoveError> {
    if chords[0] == chords[1] || chords[0] == chords[2] || chords[1] == chords[2] {
        return Err(MoveError::PatternMismatch);
    }
    let pairs = r3_pairs(g, chords, phase)?;
    let mut circles = g.circles().to_vec();
    for (p, q) in pairs {
        if p.circle == q.circle {
            circles[p.circle].swap(p.position, q.position);
        } else {
            let tmp = circles[p.circle][p.position];
            circles[p.circle][p.position] = circles[q.circle][q.position];
            circles[q.circle][q.position] = tmp;
        }
    }
    Ok(rebuild(circles, g.signs().clone()))
}

pub fn find_r3_instances(g: &GaussDiagram) -> Vec<R3Instance> {
    let ids: Vec<ChordId> = g.signs().keys().copied().collect();
    let mut out = Vec::new();
    for perm in ids.iter().copied().permutations(3) {
        let chords = [perm[0], perm[1], perm[2]];
        for phase in R3Phase::ALL {
            if r3_pairs(g, chords, phase).is_ok() {
                out.push(R3Instance { chords, phase });
            }
        }
    }
    out
}

/// Reverses the chord's arrow; the sign stays.
pub fn k_flype(g: &GaussDiagram, chord: ChordId) -> Result<GaussDiagram, MoveError> {
    let c = g.chord(chord).ok_or(MoveError::UnknownChord(chord))?;
    let mut circles = g.circles().to_vec();
    for r in [c.tail, c.head] {
        let e = &mut circles[r.circle][r.position];
        e.role = e.role.flipped();
    }
    Ok(rebuild(circles, g.signs().clone()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveStep {
    R1Insert {
        circle: usize,
        gap: usize,
        sign: Sign,
        dir: ArrowDir,
        chord: ChordId,
    },
    R1Remove {
        chord: ChordId,
    },
    R2Insert {
        gap1: (usize, usize),
        gap2: (usize, usize),
        variant: R2Variant,
        sign: Sign,
        chords: (ChordId, ChordId),
    },
    R2Remove {
        chords: (ChordId, ChordId),
    },
    R3 {
        chords: (ChordId, ChordId, ChordId),
        phase: R3Phase,
    },
    KFlype {
        chord: ChordId,
    },
}

pub fn apply_step(g: &GaussDiagram, step: &MoveStep) -> Result<GaussDiagram, MoveError> {
    match *step {
        MoveStep::R1Insert {
            circle,
            gap,
            sign,
            dir,
            chord,
        } => {
            if chord != g.max_chord_id() + 1 {
                return Err(MoveError::ReplayMismatch(format!(
                    "expected new chord {}, step records {}",
                    g.max_chord_id() + 1,
                    chord
                )));
            }
            r1_insert(g, GapRef { circle, gap }, sign, dir)
        }
        MoveStep::R1Remove { chord } => r1_remove(g, chord),
        MoveStep::R2Insert {
            gap1,
            gap2,
            variant,
            sign,
            chords,
        } => {
            let u = g.max_chord_id() + 1;
            if chords != (u, u + 1) {
                return Err(MoveError::ReplayMismatch(format!(
                    "expected new chords {:?}, step records {:?}",
                    (u, u + 1),
                    chords
                )));
            }
            r2_insert(
                g,
                GapRef {
                    circle: gap1.0,
                    gap: gap1.1,
                },
                GapRef {
                    circle: gap2.0,
                    gap: gap2.1,
                },
                variant,
                sign,
            )
        }
        MoveStep::R2Remove { chords } => r2_remove(g, chords.0, chords.1),
        MoveStep::R3 { chords, phase } => r3(g, [chords.0, chords.1, chords.2], phase),
        MoveStep::KFlype { chord } => k_flype(g, chord),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveTrace {
    pub seed: u64,
    pub steps: Vec<MoveStep>,
}

pub fn replay(start: &GaussDiagram, trace: &MoveTrace) -> Result<GaussDiagram, MoveError> {
    let mut g = start.clone();
    for step in &trace.steps {
        g = apply_step(&g, step)?;
    }
    Ok(g)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Category {
    R1,
    R2,
    R3,
    Flype,
}

fn all_gaps(g: &GaussDiagram) -> Vec<GapRef> {
    (0..g.circle_count())
        .flat_map(|c| (0..g.gap_count(c)).map(move |gap| GapRef { circle: c, gap }))
        .collect()
}

fn removable_r1(g: &GaussDiagram) -> Vec<ChordId> {
    g.chords()
        .into_iter()
        .filter(|c| {
            c.tail.circle == c.head.circle && {
                let m = g.marker_count(c.tail.circle);
                (c.tail.position + 1) % m == c.head.position
                    || (c.head.position + 1) % m == c.tail.position
            }
        })
        .map(|c| c.id)
        .collect()
}

fn removable_r2(g: &GaussDiagram) -> Vec<(ChordId, ChordId)> {
    let ids: Vec<ChordId> = g.signs().keys().copied().collect();
    let mut out = Vec::new();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            if r2_pair_matches(g, a, b) {
                out.push((a, b));
            }
        }
    }
    out
}

fn try_step<R: Rng>(
    g: &GaussDiagram,
    cat: Category,
    rng: &mut R,
    max_chords: u32,
    allow_flype: bool,
) -> Option<MoveStep> {
    let budget = |need: u32| g.chord_count() as u32 + need <= max_chords;
    match cat {
        Category::R1 => {
            let removable = removable_r1(g);
            let insert = budget(1) && (removable.is_empty() || !rng.gen_bool(0.35));
            if insert {
                let gaps = all_gaps(g);
                let at = gaps[rng.gen_range(0..gaps.len())];
                let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
                let dir = if rng.gen() {
                    ArrowDir::TailFirst
                } else {
                    ArrowDir::HeadFirst
                };
                Some(MoveStep::R1Insert {
                    circle: at.circle,
                    gap: at.gap,
                    sign,
                    dir,
                    chord: g.max_chord_id() + 1,
                })
            } else if !removable.is_empty() {
                let chord = removable[rng.gen_range(0..removable.len())];
                Some(MoveStep::R1Remove { chord })
            } else {
                None
            }
        }
        Category::R2 => {
            let removable = removable_r2(g);
            let insert = budget(2) && (removable.is_empty() || !rng.gen_bool(0.35));
            if insert {
                let gaps = all_gaps(g);
                let gap1 = gaps[rng.gen_range(0..gaps.len())];
                let gap2 = gaps[rng.gen_range(0..gaps.len())];
                let variant = if gap1 == gap2 || rng.gen() {
                    R2Variant::Antiparallel
                } else {
                    R2Variant::Parallel
                };
                let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
                let u = g.max_chord_id() + 1;
                Some(MoveStep::R2Insert {
                    gap1: (gap1.circle, gap1.gap),
                    gap2: (gap2.circle, gap2.gap),
                    variant,
                    sign,
                    chords: (u, u + 1),
                })
            } else if !removable.is_empty() {
                let chords = removable[rng.gen_range(0..removable.len())];
                Some(MoveStep::R2Remove { chords })
            } else {
                None
            }
        }
        Category::R3 => {
            let instances = find_r3_instances(g);
            if instances.is_empty() {
                return None;
            }
            let inst = instances[rng.gen_range(0..instances.len())];
            Some(MoveStep::R3 {
                chords: (inst.chords[0], inst.chords[1], inst.chords[2]),
                phase: inst.phase,
            })
        }
        Category::Flype => {
            if !allow_flype || g.chord_count() == 0 {
                return None;
            }
            let ids: Vec<ChordId> = g.signs().keys().copied().collect();
            let chord = ids[rng.gen_range(0..ids.len())];
            Some(MoveStep::KFlype { chord })
        }
    }
}

/// A seeded sequence of random legal rewrites; 40% kink, 40% bigon, and the
/// rest slides and flypes. A category with no legal action falls through to
/// the next; a step where nothing applies is dropped from the trace.
/// Insertions that would push past `max_chords` are withheld.
pub fn bounded_random_walk(
    g: &GaussDiagram,
    steps: u32,
    seed: u64,
    allow_flype: bool,
    max_chords: u32,
) -> (GaussDiagram, MoveTrace) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = g.clone();
    let mut trace = MoveTrace {
        seed,
        steps: Vec::new(),
    };
    let order = [Category::R1, Category::R2, Category::R3, Category::Flype];
    for _ in 0..steps {
        let roll = rng.gen_range(0..100u32);
        let primary = if roll < 40 {
            Category::R1
        } else if roll < 80 {
            Category::R2
        } else if allow_flype {
            if roll < 90 {
                Category::R3
            } else {
                Category::Flype
            }
        } else {
            Category::R3
        };
        let start = order.iter().position(|&c| c == primary).unwrap();
        for k in 0..order.len() {
            let cat = order[(start + k) % order.len()];
            if let Some(step) = try_step(&current, cat, &mut rng, max_chords, allow_flype) {
                current = apply_step(&current, &step).expect("generated step applies");
                trace.steps.push(step);
                break;
            }
        }
    }
    (current, trace)
}

pub fn random_walk(
    g: &GaussDiagram,
    steps: u32,
    seed: u64,
    allow_flype: bool,
) -> (GaussDiagram, MoveTrace) {
    bounded_random_walk(g, steps, seed, allow_flype, u32::MAX)
}
