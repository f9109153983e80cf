//! Diagram invariants: writhe, odd writhe, the bracket state sum, and the
//! normalized f-polynomial.

use std::collections::BTreeMap;

use crate::diagram::{ChordId, GaussDiagram};
use crate::laurent::Laurent;

pub fn writhe(g: &GaussDiagram) -> i64 {
    g.signs().values().map(|s| s.value()).sum()
}

/// Chords of a knot diagram that interleave an odd number of other endpoints:
/// the parity-nontrivial crossings. `None` for links.
pub fn odd_chords(g: &GaussDiagram) -> Option<Vec<ChordId>> {
    if !g.is_knot() {
        return None;
    }
    let m = g.marker_count(0);
    Some(
        g.chords()
            .iter()
            .filter(|c| (c.head.position + m - c.tail.position) % m % 2 == 0)
            .map(|c| c.id)
            .collect(),
    )
}

/// Sum of signs over the odd chords.
pub fn odd_writhe(g: &GaussDiagram) -> Option<i64> {
    Some(
        odd_chords(g)?
            .iter()
            .map(|&id| g.sign(id).expect("chord has a sign").value())
            .sum(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("state sum over {chords} chords exceeds the limit of {limit}")]
pub struct StateLimitExceeded {
    pub chords: usize,
    pub limit: usize,
}

pub const DEFAULT_STATE_LIMIT: usize = 20;

struct LoopCounter {
    parent: Vec<usize>,
}

impl LoopCounter {
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[ra] = rb;
        ra != rb
    }
}

/// The bracket of `g`, summing `A^(a-b) d^(loops-1)` over all smoothings,
/// `d = -A^2 - A^-2`. Virtual crossings are invisible here: the sum only sees
/// the chords. Refuses diagrams with more than `limit` chords.
pub fn kauffman_bracket(
    g: &GaussDiagram,
    limit: usize,
) -> Result<Laurent, StateLimitExceeded> {
    let chords = g.chords();
    let n = chords.len();
    if n > limit {
        return Err(StateLimitExceeded { chords: n, limit });
    }

    // One vertex per gap. Each smoothing pairs the gaps around the chord's
    // two passages; a state's loops are the classes the gaps fall into, so
    // the count starts at the number of gaps and drops on every merge.
    let mut gap_offset = Vec::with_capacity(g.circle_count());
    let mut total_gaps = 0usize;
    let mut free_loops = 0usize;
    for c in 0..g.circle_count() {
        gap_offset.push(total_gaps);
        if g.marker_count(c) == 0 {
            free_loops += 1;
        } else {
            total_gaps += g.marker_count(c);
        }
    }
    // Gaps meeting at a marker: the one it is entered from and the one it is
    // left into.
    let in_gap = |c: usize, p: usize| {
        let m = g.marker_count(c);
        gap_offset[c] + (p + m - 1) % m
    };
    let out_gap = |c: usize, p: usize| gap_offset[c] + p;

    let mut tallies: BTreeMap<(i64, usize), i64> = BTreeMap::new();
    for state in 0u64..(1u64 << n) {
        let mut uf = LoopCounter { parent: (0..total_gaps).collect() };
        let mut loops = total_gaps + free_loops;
        let mut a_minus_b = 0i64;
        for (k, chord) in chords.iter().enumerate() {
            let t_in = in_gap(chord.tail.circle, chord.tail.position);
            let t_out = out_gap(chord.tail.circle, chord.tail.position);
            let h_in = in_gap(chord.head.circle, chord.head.position);
            let h_out = out_gap(chord.head.circle, chord.head.position);
            let a_smoothing = (state >> k) & 1 == 0;
            // For a positive chord the A-smoothing joins the passages
            // coherently (tail-in to head-out and head-in to tail-out); the
            // B-smoothing joins them against orientation. Negative chords
            // swap the two.
            let coherent = a_smoothing == (chord.sign == crate::diagram::Sign::Plus);
            let (p1, p2) = if coherent {
                ((t_in, h_out), (h_in, t_out))
            } else {
                ((t_in, h_in), (t_out, h_out))
            };
            for (x, y) in [p1, p2] {
                if uf.union(x, y) {
                    loops -= 1;
                }
            }
            a_minus_b += if a_smoothing { 1 } else { -1 };
        }
        *tallies.entry((a_minus_b, loops)).or_default() += 1;
    }

    let d = Laurent::from_terms([(2, -1), (-2, -1)]);
    let mut d_pows = vec![Laurent::one()];
    let max_loops = tallies.keys().map(|&(_, l)| l).max().unwrap_or(1);
    for _ in 1..max_loops {
        let last = d_pows.last().expect("seeded");
        d_pows.push(last * &d);
    }
    let mut out = Laurent::zero();
    for ((a_minus_b, loops), count) in tallies {
        let term = &Laurent::monomial(a_minus_b, count) * &d_pows[loops - 1];
        out += &term;
    }
    Ok(out)
}

fn neg_a_cubed_pow(k: i64) -> Laurent {
    Laurent::monomial(3 * k, if k % 2 == 0 { 1 } else { -1 })
}

/// `f = (-A^3)^(-writhe) * bracket`.
pub fn f_polynomial(g: &GaussDiagram, limit: usize) -> Result<Laurent, StateLimitExceeded> {
    let bracket = kauffman_bracket(g, limit)?;
    Ok(&neg_a_cubed_pow(-writhe(g)) * &bracket)
}
