//! Shared test helpers: a bracket computed by walking terminal cycles, with
//! no sharing of machinery (or loop-counting strategy) with the library.

use std::collections::BTreeMap;

use vknots::laurent::Laurent;
use vknots::{ChordId, GaussDiagram, Sign};

/// Loops of one smoothing state, counted by walking the 2-regular graph on
/// per-marker in/out terminals: circle arcs join `out(p)` to `in(p+1)`, and
/// each chord joins its four terminals coherently (both passages keep their
/// direction) or disoriented (both flip at the jump).
fn state_loops(g: &GaussDiagram, coherent: &BTreeMap<ChordId, bool>) -> usize {
    let mut offset = Vec::with_capacity(g.circle_count());
    let mut markers = 0usize;
    let mut bare = 0usize;
    for circle in g.circles() {
        offset.push(markers);
        markers += circle.len();
        if circle.is_empty() {
            bare += 1;
        }
    }
    let t_in = |c: usize, p: usize| 2 * (offset[c] + p);
    let t_out = |c: usize, p: usize| 2 * (offset[c] + p) + 1;
    let mut arc_mate = vec![usize::MAX; 2 * markers];
    let mut chord_mate = vec![usize::MAX; 2 * markers];
    for (c, circle) in g.circles().iter().enumerate() {
        let m = circle.len();
        for p in 0..m {
            arc_mate[t_out(c, p)] = t_in(c, (p + 1) % m);
            arc_mate[t_in(c, (p + 1) % m)] = t_out(c, p);
        }
    }
    for chord in g.chords() {
        let (tc, tp) = (chord.tail.circle, chord.tail.position);
        let (hc, hp) = (chord.head.circle, chord.head.position);
        let pairs = if coherent[&chord.id] {
            [(t_in(tc, tp), t_out(hc, hp)), (t_in(hc, hp), t_out(tc, tp))]
        } else {
            [(t_in(tc, tp), t_in(hc, hp)), (t_out(tc, tp), t_out(hc, hp))]
        };
        for (a, b) in pairs {
            chord_mate[a] = b;
            chord_mate[b] = a;
        }
    }
    let mut seen = vec![false; 2 * markers];
    let mut loops = bare;
    for start in 0..2 * markers {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut cur = start;
        loop {
            seen[cur] = true;
            let across = arc_mate[cur];
            seen[across] = true;
            cur = chord_mate[across];
            if cur == start {
                break;
            }
        }
    }
    loops
}

pub fn brute_bracket(g: &GaussDiagram) -> Laurent {
    let ids: Vec<ChordId> = g.signs().keys().copied().collect();
    let n = ids.len();
    assert!(n <= 20, "brute state sum over {n} chords");
    let d = &Laurent::monomial(2, -1) + &Laurent::monomial(-2, -1);
    let mut out = Laurent::zero();
    for mask in 0u64..(1u64 << n) {
        let mut exponent = 0i64;
        let mut coherent = BTreeMap::new();
        for (i, &id) in ids.iter().enumerate() {
            let takes_a = mask & (1 << i) == 0;
            exponent += if takes_a { 1 } else { -1 };
            coherent.insert(id, (g.sign(id) == Some(Sign::Plus)) == takes_a);
        }
        let loops = state_loops(g, &coherent);
        out += &(&Laurent::monomial(exponent, 1) * &d.pow((loops - 1) as u32));
    }
    out
}

pub fn brute_f(g: &GaussDiagram) -> Laurent {
    let w: i64 = g.signs().values().map(|s| s.value()).sum();
    let unit = Laurent::monomial(-3 * w, if w % 2 == 0 { 1 } else { -1 });
    &unit * &brute_bracket(g)
}

/// All crossing signs flipped, passages kept.
pub fn mirror(g: &GaussDiagram) -> GaussDiagram {
    let signs = g.signs().iter().map(|(&id, &s)| (id, s.flipped())).collect();
    GaussDiagram::from_parts(g.circles().to_vec(), signs).expect("sign flips stay well-formed")
}

/// `A` replaced by `A^-1`.
pub fn invert_a(p: &Laurent) -> Laurent {
    let mut out = Laurent::zero();
    for (exp, coeff) in p.terms() {
        out += &Laurent::monomial(-exp, coeff);
    }
    out
}
