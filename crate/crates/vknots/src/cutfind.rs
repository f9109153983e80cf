//! Finds cut systems by solving the gap-parity constraints over GF(2).
//!
//! Whether a set of counts is a cut system depends only on each gap count's
//! parity: the per-circle evenness check and the per-chord sink/source
//! constraint both read counts mod 2. So the valid systems with all counts in
//! {0,1} are exactly the solutions of a linear system with one bit per gap
//! (plus one free orientation bit per circle), and every other valid system
//! differs from one of those by pair insertions.

use crate::cuts::{is_cut_system, CutSystem};
use crate::diagram::GaussDiagram;
use rand::Rng;

/// Free-variable count above which exhaustive minimization is skipped.
const ENUM_FREE_LIMIT: usize = 16;
const SAMPLE_TRIES: usize = 64;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(nvars: usize) -> Bits {
        Bits(vec![0; nvars.div_ceil(64)])
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn toggle(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor_with(&mut self, other: &Bits) {
        for (w, o) in self.0.iter_mut().zip(&other.0) {
            *w ^= o;
        }
    }

    fn count_below(&self, limit: usize) -> u32 {
        let mut n = 0;
        for (i, w) in self.0.iter().enumerate() {
            let lo = i * 64;
            if lo >= limit {
                break;
            }
            let take = (limit - lo).min(64);
            let mask = if take == 64 { !0 } else { (1u64 << take) - 1 };
            n += (w & mask).count_ones();
        }
        n
    }
}

struct ParitySystem {
    /// Gap variable index for (circle, gap) is `offsets[circle] + gap`.
    offsets: Vec<usize>,
    total_gaps: usize,
    nvars: usize,
    rows: Vec<(Bits, bool)>,
}

struct Solutions {
    particular: Bits,
    basis: Vec<Bits>,
}

impl ParitySystem {
    fn build(g: &GaussDiagram) -> ParitySystem {
        let mut offsets = Vec::with_capacity(g.circle_count());
        let mut total_gaps = 0;
        for c in 0..g.circle_count() {
            offsets.push(total_gaps);
            total_gaps += g.gap_count(c);
        }
        let nvars = total_gaps + g.circle_count();
        let mut rows = Vec::new();
        for c in 0..g.circle_count() {
            let mut row = Bits::zero(nvars);
            for gap in 0..g.gap_count(c) {
                row.toggle(offsets[c] + gap);
            }
            rows.push((row, g.marker_count(c) % 2 == 1));
        }
        for chord in g.chords() {
            let mut row = Bits::zero(nvars);
            let mut rhs = true;
            for r in [chord.tail, chord.head] {
                for gap in 0..r.position {
                    row.toggle(offsets[r.circle] + gap);
                }
                row.toggle(total_gaps + r.circle);
                rhs ^= r.position % 2 == 1;
            }
            rows.push((row, rhs));
        }
        ParitySystem {
            offsets,
            total_gaps,
            nvars,
            rows,
        }
    }

    fn solve(&mut self) -> Option<Solutions> {
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next_row = 0;
        for col in 0..self.nvars {
            let Some(r) = (next_row..self.rows.len()).find(|&r| self.rows[r].0.get(col)) else {
                continue;
            };
            self.rows.swap(next_row, r);
            let (pivot, pivot_rhs) = self.rows[next_row].clone();
            for (i, (row, rhs)) in self.rows.iter_mut().enumerate() {
                if i != next_row && row.get(col) {
                    row.xor_with(&pivot);
                    *rhs ^= pivot_rhs;
                }
            }
            pivots.push((col, next_row));
            next_row += 1;
        }
        if self.rows[next_row..].iter().any(|(_, rhs)| *rhs) {
            return None;
        }
        let mut is_pivot = vec![false; self.nvars];
        let mut particular = Bits::zero(self.nvars);
        for &(col, row) in &pivots {
            is_pivot[col] = true;
            if self.rows[row].1 {
                particular.toggle(col);
            }
        }
        let mut basis = Vec::new();
        for free in (0..self.nvars).filter(|&v| !is_pivot[v]) {
            let mut vec = Bits::zero(self.nvars);
            vec.toggle(free);
            for &(col, row) in &pivots {
                if self.rows[row].0.get(free) {
                    vec.toggle(col);
                }
            }
            basis.push(vec);
        }
        Some(Solutions { particular, basis })
    }

    fn to_cuts(&self, bits: &Bits) -> CutSystem {
        let circles = self.offsets.len();
        let mut triples = Vec::new();
        for c in 0..circles {
            let end = if c + 1 < circles {
                self.offsets[c + 1]
            } else {
                self.total_gaps
            };
            for v in self.offsets[c]..end {
                if bits.get(v) {
                    triples.push((c, v - self.offsets[c], 1));
                }
            }
        }
        CutSystem::from_triples(triples.into_iter())
    }
}

impl Solutions {
    fn weight_of(&self, bits: &Bits, total_gaps: usize) -> u32 {
        bits.count_below(total_gaps)
    }

    fn min_weight(&self, total_gaps: usize) -> Bits {
        if self.basis.len() > ENUM_FREE_LIMIT {
            return self.particular.clone();
        }
        let mut best = self.particular.clone();
        let mut best_key = (self.weight_of(&best, total_gaps), best.clone());
        let mut current = self.particular.clone();
        // Gray-code walk over free assignments: flip one basis vector per step.
        for step in 1u64..1 << self.basis.len() {
            let flip = step.trailing_zeros() as usize;
            current.xor_with(&self.basis[flip]);
            let key = (self.weight_of(&current, total_gaps), current.clone());
            if key < best_key {
                best = current.clone();
                best_key = key;
            }
        }
        best
    }
}

/// A valid cut system of minimum total size when the solution space is small
/// enough to enumerate, otherwise some valid 0/1-per-gap system. `None` only
/// if the constraints are unsatisfiable, which no well-formed diagram
/// produces.
pub fn find_small_cut_system(g: &GaussDiagram) -> Option<CutSystem> {
    let mut sys = ParitySystem::build(g);
    let sol = sys.solve()?;
    let cuts = sys.to_cuts(&sol.min_weight(sys.total_gaps));
    debug_assert!(is_cut_system(g, &cuts));
    Some(cuts)
}

/// A seeded random valid cut system with at most `max_points` points: a
/// uniformly random 0/1 parity solution, padded with random pair insertions
/// while the budget allows. `None` if no system fits the budget.
pub fn random_cut_system<R: Rng>(
    g: &GaussDiagram,
    max_points: u32,
    rng: &mut R,
) -> Option<CutSystem> {
    let mut sys = ParitySystem::build(g);
    let sol = sys.solve()?;
    let mut pick = None;
    for _ in 0..SAMPLE_TRIES {
        let mut bits = sol.particular.clone();
        for vec in &sol.basis {
            if rng.gen() {
                bits.xor_with(vec);
            }
        }
        if sol.weight_of(&bits, sys.total_gaps) <= max_points {
            pick = Some(bits);
            break;
        }
    }
    let bits = match pick {
        Some(b) => b,
        None => {
            let b = sol.min_weight(sys.total_gaps);
            if sol.weight_of(&b, sys.total_gaps) > max_points {
                return None;
            }
            b
        }
    };
    let mut cuts = sys.to_cuts(&bits);
    let budget = (max_points - cuts.total()) / 2;
    if budget > 0 {
        for _ in 0..rng.gen_range(0..=budget) {
            let v = rng.gen_range(0..sys.total_gaps);
            let c = sys.offsets.partition_point(|&o| o <= v) - 1;
            cuts.add(c, v - sys.offsets[c], 2);
        }
    }
    debug_assert!(is_cut_system(g, &cuts));
    Some(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cuts(triples: &[(usize, usize, u32)]) -> CutSystem {
        CutSystem::from_triples(triples.iter().copied())
    }

    #[test]
    fn already_normal_diagrams_get_the_empty_system() {
        for code in ["()", "O1+U1+", "O1+U2+O3+U1+O2+U3+"] {
            let g = parse_gauss_code(code).unwrap();
            assert_eq!(find_small_cut_system(&g), Some(CutSystem::empty()), "{code}");
        }
    }

    #[test]
    fn virtual_trefoil_minimum_is_two_points() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let found = find_small_cut_system(&g).unwrap();
        assert_eq!(found, cuts(&[(0, 0, 1), (0, 2, 1)]));
    }

    #[test]
    fn multi_circle_incoherence_is_repaired() {
        let g = parse_gauss_code("O1+O2+|U1+O3+U2+O4+|U3+U4+").unwrap();
        let found = find_small_cut_system(&g).unwrap();
        assert!(is_cut_system(&g, &found));
        assert_eq!(found.total(), 2);
    }

    #[test]
    fn budget_below_the_minimum_yields_none() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(random_cut_system(&g, 1, &mut rng), None);
        assert_eq!(random_cut_system(&g, 0, &mut rng), None);
    }

    #[test]
    fn random_systems_are_valid_and_within_budget() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let mut seen_totals = std::collections::BTreeSet::new();
        for seed in 0..40 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_cut_system(&g, 6, &mut rng).unwrap();
            assert!(is_cut_system(&g, &p));
            assert!(p.total() <= 6);
            seen_totals.insert(p.total());
        }
        assert!(seen_totals.len() > 1, "padding never kicked in: {seen_totals:?}");
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let g = parse_gauss_code("O1-U2+O3+U1-O2+U3+").unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(9);
        let mut b = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(
            random_cut_system(&g, 8, &mut a),
            random_cut_system(&g, 8, &mut b)
        );
    }

    #[test]
    fn bare_circles_stay_even() {
        let g = parse_gauss_code("O1+O2+U1+U2+|()").unwrap();
        let found = find_small_cut_system(&g).unwrap();
        assert!(is_cut_system(&g, &found));
        assert_eq!(found.total_on_circle(1) % 2, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = random_cut_system(&g, 8, &mut rng).unwrap();
        assert!(is_cut_system(&g, &p));
    }
}
