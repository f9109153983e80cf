//! Shortest move paths between cut systems.
//!
//! `find_move_path` answers: is `to` reachable from `from` by at most
//! `max_depth` cut moves whose intermediate systems keep every per-gap count
//! at most `cap`, and if so, which lexicographically least shortest move
//! sequence gets there? It meets two balls grown from both ends, then
//! reconstructs greedily with exact distance queries, so it visits far fewer
//! states than a one-sided search at the same depth. `reference_find_move_path`
//! is the plain breadth-first version the fast one is checked against.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, VecDeque};

use crate::cuts::{self, CutMove, CutSystem};
use crate::diagram::GaussDiagram;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("`from` is not a valid cut system")]
    FromInvalid,
    #[error("`to` is not a valid cut system")]
    ToInvalid,
    #[error("no path within the given depth and cap")]
    NotFound,
}

fn grow_ball(
    g: &GaussDiagram,
    start: &CutSystem,
    radius: u32,
    cap: u32,
) -> HashMap<CutSystem, u32> {
    let mut dist: HashMap<CutSystem, u32> = HashMap::new();
    dist.insert(start.clone(), 0);
    let mut frontier = vec![start.clone()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for state in &frontier {
            for (_, n) in cuts::neighbors(g, state, cap) {
                if let Entry::Vacant(e) = dist.entry(n) {
                    next.push(e.key().clone());
                    e.insert(d);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    dist
}

/// Is `state` at distance exactly `r` from `to`? Sound only in the greedy
/// reconstruction below, where `r` never exceeds the true distance: there it
/// reduces to "is there a path of length at most r", answered by a forward
/// probe of depth `r - back_radius` into the precomputed backward ball.
fn at_distance(
    g: &GaussDiagram,
    state: &CutSystem,
    r: u32,
    back: &HashMap<CutSystem, u32>,
    back_radius: u32,
    cap: u32,
) -> bool {
    if r <= back_radius {
        return back.get(state) == Some(&r);
    }
    let probe = r - back_radius;
    let mut seen: HashMap<CutSystem, u32> = HashMap::new();
    seen.insert(state.clone(), 0);
    let mut frontier = vec![state.clone()];
    if back.get(state).is_some_and(|&b| b <= r) {
        return true;
    }
    for j in 1..=probe {
        let mut next = Vec::new();
        for s in &frontier {
            for (_, n) in cuts::neighbors(g, s, cap) {
                if let Entry::Vacant(e) = seen.entry(n) {
                    if back.get(e.key()).is_some_and(|&b| b + j <= r) {
                        return true;
                    }
                    next.push(e.key().clone());
                    e.insert(j);
                }
            }
        }
        frontier = next;
    }
    false
}

pub fn find_move_path(
    g: &GaussDiagram,
    from: &CutSystem,
    to: &CutSystem,
    max_depth: u32,
    cap: u32,
) -> Result<Vec<CutMove>, PathError> {
    if !cuts::is_cut_system(g, from) {
        return Err(PathError::FromInvalid);
    }
    if !cuts::is_cut_system(g, to) {
        return Err(PathError::ToInvalid);
    }
    if from == to {
        return Ok(Vec::new());
    }
    if from.max_count() > cap || to.max_count() > cap {
        return Err(PathError::NotFound);
    }
    let forward_radius = max_depth.div_ceil(2);
    let back_radius = max_depth / 2;
    let forward = grow_ball(g, from, forward_radius, cap);
    let back = grow_ball(g, to, back_radius, cap);
    // Any path of length <= max_depth has a state in both balls, so the
    // minimum over meeting states is the exact distance.
    let mut best: Option<u32> = None;
    for (state, &df) in &forward {
        if let Some(&db) = back.get(state) {
            let d = df + db;
            if best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
    }
    let distance = best.filter(|&d| d <= max_depth).ok_or(PathError::NotFound)?;

    let mut path = Vec::with_capacity(distance as usize);
    let mut state = from.clone();
    let mut r = distance;
    while r > 0 {
        let mut stepped = false;
        for (mv, next) in cuts::neighbors(g, &state, cap) {
            if at_distance(g, &next, r - 1, &back, back_radius, cap) {
                path.push(mv);
                state = next;
                r -= 1;
                stepped = true;
                break;
            }
        }
        assert!(stepped, "ball meeting produced an unwalkable distance");
    }
    Ok(path)
}

/// Textbook breadth-first search with parent pointers; neighbor order makes
/// the result the lexicographically least shortest path. Slower than
/// `find_move_path` but obviously correct, and used to check it.
pub fn reference_find_move_path(
    g: &GaussDiagram,
    from: &CutSystem,
    to: &CutSystem,
    max_depth: u32,
    cap: u32,
) -> Result<Vec<CutMove>, PathError> {
    if !cuts::is_cut_system(g, from) {
        return Err(PathError::FromInvalid);
    }
    if !cuts::is_cut_system(g, to) {
        return Err(PathError::ToInvalid);
    }
    if from == to {
        return Ok(Vec::new());
    }
    if from.max_count() > cap || to.max_count() > cap {
        return Err(PathError::NotFound);
    }
    let mut parent: HashMap<CutSystem, (CutSystem, CutMove)> = HashMap::new();
    let mut depth: HashMap<CutSystem, u32> = HashMap::new();
    depth.insert(from.clone(), 0);
    let mut queue = VecDeque::new();
    queue.push_back(from.clone());
    while let Some(state) = queue.pop_front() {
        let d = depth[&state];
        if d == max_depth {
            continue;
        }
        for (mv, next) in cuts::neighbors(g, &state, cap) {
            if depth.contains_key(&next) {
                continue;
            }
            depth.insert(next.clone(), d + 1);
            parent.insert(next.clone(), (state.clone(), mv));
            if next == *to {
                let mut path = Vec::new();
                let mut cur = next;
                while let Some((prev, mv)) = parent.get(&cur) {
                    path.push(*mv);
                    cur = prev.clone();
                }
                path.reverse();
                return Ok(path);
            }
            queue.push_back(next);
        }
    }
    Err(PathError::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_gauss_code;
    use crate::cuts::GapRef;

    fn cuts(triples: &[(usize, usize, u32)]) -> CutSystem {
        CutSystem::from_triples(triples.iter().copied())
    }

    fn apply_path(
        g: &GaussDiagram,
        from: &CutSystem,
        path: &[CutMove],
    ) -> CutSystem {
        let mut state = from.clone();
        for &mv in path {
            state = cuts::apply_cut_move(g, &state, mv).unwrap();
            assert!(cuts::is_cut_system(g, &state));
        }
        state
    }

    #[test]
    fn trivial_and_invalid_cases() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let p = cuts(&[(0, 1, 1), (0, 3, 1)]);
        assert_eq!(find_move_path(&g, &p, &p, 4, 4).unwrap(), vec![]);
        assert_eq!(
            find_move_path(&g, &CutSystem::empty(), &p, 4, 4),
            Err(PathError::FromInvalid)
        );
        assert_eq!(
            find_move_path(&g, &p, &cuts(&[(0, 0, 1), (0, 1, 1)]), 4, 4),
            Err(PathError::ToInvalid)
        );
    }

    #[test]
    fn three_step_path_between_virtual_trefoil_systems() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let from = cuts(&[(0, 1, 1), (0, 3, 1)]);
        let to = cuts(&[(0, 0, 1), (0, 2, 1)]);
        let path = find_move_path(&g, &from, &to, 6, 4).unwrap();
        assert_eq!(
            path,
            vec![
                CutMove::InsertPair(GapRef { circle: 0, gap: 0 }),
                CutMove::InsertPair(GapRef { circle: 0, gap: 2 }),
                CutMove::DeleteAround(1),
            ]
        );
        assert_eq!(apply_path(&g, &from, &path), to);
    }

    #[test]
    fn depth_limit_gives_not_found() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let from = cuts(&[(0, 1, 1), (0, 3, 1)]);
        let to = cuts(&[(0, 0, 1), (0, 2, 1)]);
        assert_eq!(find_move_path(&g, &from, &to, 2, 4), Err(PathError::NotFound));
        assert!(find_move_path(&g, &from, &to, 3, 4).is_ok());
    }

    #[test]
    fn pair_insertions_found_immediately() {
        let g = parse_gauss_code("O1+U1+").unwrap();
        let to = cuts(&[(0, 0, 2)]);
        let path = find_move_path(&g, &CutSystem::empty(), &to, 6, 4).unwrap();
        assert_eq!(path, vec![CutMove::InsertPair(GapRef { circle: 0, gap: 0 })]);
        let back = find_move_path(&g, &to, &CutSystem::empty(), 6, 4).unwrap();
        assert_eq!(back, vec![CutMove::DeletePair(GapRef { circle: 0, gap: 0 })]);
    }

    #[test]
    fn cap_restricts_reachability() {
        let g = parse_gauss_code("O1+U1+").unwrap();
        let to = cuts(&[(0, 0, 2), (0, 1, 2)]);
        assert!(find_move_path(&g, &CutSystem::empty(), &to, 6, 2).is_ok());
        assert_eq!(
            find_move_path(&g, &CutSystem::empty(), &cuts(&[(0, 0, 4)]), 6, 2),
            Err(PathError::NotFound)
        );
    }

    #[test]
    fn agrees_with_reference_on_fixed_cases() {
        let g = parse_gauss_code("O1+O2+U1+U2+").unwrap();
        let systems = [
            cuts(&[(0, 1, 1), (0, 3, 1)]),
            cuts(&[(0, 0, 1), (0, 2, 1)]),
            cuts(&[(0, 1, 1), (0, 3, 3)]),
            cuts(&[(0, 0, 1), (0, 1, 2), (0, 2, 1), (0, 3, 2)]),
        ];
        for from in &systems {
            for to in &systems {
                for depth in [0, 1, 3, 5] {
                    let fast = find_move_path(&g, from, to, depth, 4);
                    let slow = reference_find_move_path(&g, from, to, depth, 4);
                    assert_eq!(fast, slow, "from {from:?} to {to:?} depth {depth}");
                    if let Ok(path) = fast {
                        assert_eq!(apply_path(&g, from, &path), *to);
                    }
                }
            }
        }
    }
}
