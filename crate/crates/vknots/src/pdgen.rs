//! Random planar diagrams, built as embedded 4-valent maps and emitted as PD
//! codes.
//!
//! Each vertex has four ports numbered counterclockwise; a strand entering at
//! port `p` leaves at `p + 2`. Faces are the orbits of the arrive-at-`p`,
//! leave-at-`(p + 1) % 4` walk, so every growth step can be audited against
//! Euler's formula per component.

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Classical { over_in: u8 },
    Virtual,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curl {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug)]
struct EdgeRec {
    src: (usize, u8),
    dst: (usize, u8),
}

/// A face entry: one edge traversal, `true` when the face walk follows the
/// edge from source to destination (the face then lies on the edge's right).
pub type FaceEntry = (usize, bool);

#[derive(Clone, Debug, Default)]
pub struct PlanarMap {
    kinds: Vec<NodeKind>,
    edges: Vec<EdgeRec>,
}

impl PlanarMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vert_count(&self) -> usize {
        self.kinds.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn set_kind(&mut self, v: usize, kind: NodeKind) {
        self.kinds[v] = kind;
    }

    fn push_vert(&mut self) -> usize {
        self.kinds.push(NodeKind::Virtual);
        self.kinds.len() - 1
    }

    fn push_edge(&mut self, src: (usize, u8), dst: (usize, u8)) -> usize {
        self.edges.push(EdgeRec { src, dst });
        self.edges.len() - 1
    }

    fn port_entry(&self, v: usize, p: u8) -> (usize, bool) {
        for (i, e) in self.edges.iter().enumerate() {
            if e.src == (v, p) {
                return (i, true);
            }
            if e.dst == (v, p) {
                return (i, false);
            }
        }
        panic!("port {p} of vertex {v} is unused");
    }

    /// The two ports at which strands enter `v`: one from {0, 2}, one from
    /// {1, 3}, in that order.
    pub fn in_ports(&self, v: usize) -> (u8, u8) {
        let mut even = None;
        let mut odd = None;
        for e in &self.edges {
            if e.dst.0 == v {
                match e.dst.1 {
                    p @ (0 | 2) => even = Some(p),
                    p => odd = Some(p),
                }
            }
        }
        (even.expect("no even in-port"), odd.expect("no odd in-port"))
    }

    /// A fresh one-vertex component: the strand passes the vertex twice, with
    /// the curl deciding on which side the loop hangs.
    pub fn seed_kink(&mut self, curl: Curl) -> usize {
        let v = self.push_vert();
        match curl {
            Curl::Left => {
                self.push_edge((v, 2), (v, 3));
                self.push_edge((v, 1), (v, 0));
            }
            Curl::Right => {
                self.push_edge((v, 2), (v, 1));
                self.push_edge((v, 3), (v, 0));
            }
        }
        v
    }

    /// Splits `edge` and inserts a curl on it.
    pub fn kink_on_edge(&mut self, edge: usize, curl: Curl) -> usize {
        let v = self.push_vert();
        let old_dst = self.edges[edge].dst;
        self.edges[edge].dst = (v, 0);
        match curl {
            Curl::Left => {
                self.push_edge((v, 2), (v, 1));
                self.push_edge((v, 3), old_dst);
            }
            Curl::Right => {
                self.push_edge((v, 2), (v, 3));
                self.push_edge((v, 1), old_dst);
            }
        }
        v
    }

    /// Pushes a finger of edge `e` across edge `f` through a face containing
    /// both entries, creating two crossings: `out` where the finger leaves the
    /// face and `ret` where it comes back. The finger strand enters port 0 and
    /// leaves port 2 at both.
    pub fn finger(&mut self, e_entry: FaceEntry, f_entry: FaceEntry) -> (usize, usize) {
        let (e, te) = e_entry;
        let (f, tf) = f_entry;
        assert_ne!(e, f, "finger needs two distinct edges");
        debug_assert!(
            self.faces()
                .iter()
                .any(|face| face.contains(&e_entry) && face.contains(&f_entry)),
            "finger entries must border a common face"
        );
        let out = self.push_vert();
        let ret = self.push_vert();

        let e_dst = self.edges[e].dst;
        self.edges[e].dst = (out, 0);
        self.push_edge((out, 2), (ret, 0));
        self.push_edge((ret, 2), e_dst);

        let f_in_out: u8 = if tf { 3 } else { 1 };
        let f_in_ret: u8 = if tf { 1 } else { 3 };
        let f_dst = self.edges[f].dst;
        if te != tf {
            self.edges[f].dst = (out, f_in_out);
            self.push_edge((out, (f_in_out + 2) % 4), (ret, f_in_ret));
            self.push_edge((ret, (f_in_ret + 2) % 4), f_dst);
        } else {
            self.edges[f].dst = (ret, f_in_ret);
            self.push_edge((ret, (f_in_ret + 2) % 4), (out, f_in_out));
            self.push_edge((out, (f_in_out + 2) % 4), f_dst);
        }
        (out, ret)
    }

    /// Loops a fresh circle around `edge`, crossing it twice.
    pub fn encircle(&mut self, edge: usize, reversed: bool) -> (usize, usize) {
        let c1 = self.push_vert();
        let c2 = self.push_vert();
        let old_dst = self.edges[edge].dst;
        self.edges[edge].dst = (c1, 0);
        self.push_edge((c1, 2), (c2, 0));
        self.push_edge((c2, 2), old_dst);
        if reversed {
            self.push_edge((c1, 3), (c2, 3));
            self.push_edge((c2, 1), (c1, 1));
        } else {
            self.push_edge((c1, 1), (c2, 1));
            self.push_edge((c2, 3), (c1, 3));
        }
        (c1, c2)
    }

    pub fn faces(&self) -> Vec<Vec<FaceEntry>> {
        let mut seen = vec![[false; 2]; self.edges.len()];
        let mut out = Vec::new();
        for start in 0..self.edges.len() {
            for fwd in [true, false] {
                if seen[start][fwd as usize] {
                    continue;
                }
                let mut face = Vec::new();
                let (mut e, mut f) = (start, fwd);
                while !seen[e][f as usize] {
                    seen[e][f as usize] = true;
                    face.push((e, f));
                    let arrive = if f { self.edges[e].dst } else { self.edges[e].src };
                    let leave = (arrive.1 + 1) % 4;
                    (e, f) = self.port_entry(arrive.0, leave);
                }
                out.push(face);
            }
        }
        out
    }

    /// Checks the port bijection, the strand in/out pattern, and Euler's
    /// formula on every component.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.vert_count();
        let mut used = vec![[0u8; 4]; n];
        let mut is_in = vec![[false; 4]; n];
        for e in &self.edges {
            for (end, inward) in [(e.src, false), (e.dst, true)] {
                if end.0 >= n || end.1 >= 4 {
                    return Err(format!("edge end {end:?} out of range"));
                }
                used[end.0][end.1 as usize] += 1;
                is_in[end.0][end.1 as usize] |= inward;
            }
        }
        for v in 0..n {
            if used[v] != [1, 1, 1, 1] {
                return Err(format!("vertex {v} ports used {:?}", used[v]));
            }
            if is_in[v][0] == is_in[v][2] || is_in[v][1] == is_in[v][3] {
                return Err(format!("vertex {v} breaks the pass-through pattern"));
            }
        }

        let mut comp: Vec<usize> = (0..n).collect();
        fn root(comp: &mut Vec<usize>, mut v: usize) -> usize {
            while comp[v] != v {
                comp[v] = comp[comp[v]];
                v = comp[v];
            }
            v
        }
        for e in &self.edges {
            let (a, b) = (root(&mut comp, e.src.0), root(&mut comp, e.dst.0));
            comp[a] = b;
        }
        let mut verts = vec![0i64; n];
        let mut edges = vec![0i64; n];
        let mut faces = vec![0i64; n];
        for v in 0..n {
            verts[root(&mut comp, v)] += 1;
        }
        for e in &self.edges {
            edges[root(&mut comp, e.src.0)] += 1;
        }
        for face in self.faces() {
            faces[root(&mut comp, self.edges[face[0].0].src.0)] += 1;
        }
        for v in 0..n {
            if root(&mut comp, v) != v {
                continue;
            }
            let euler = verts[v] - edges[v] + faces[v];
            if euler != 2 {
                return Err(format!(
                    "component of vertex {v}: V - E + F = {} - {} + {} = {euler}",
                    verts[v], edges[v], faces[v]
                ));
            }
        }
        Ok(())
    }

    pub fn to_pd(&self) -> String {
        let mut labels = vec![[0usize; 4]; self.vert_count()];
        for (i, e) in self.edges.iter().enumerate() {
            labels[e.src.0][e.src.1 as usize] = i + 1;
            labels[e.dst.0][e.dst.1 as usize] = i + 1;
        }
        let mut parts = Vec::new();
        for v in 0..self.vert_count() {
            let (a, b) = self.in_ports(v);
            let lbl = |p: u8| labels[v][p as usize];
            let part = match self.kinds[v] {
                NodeKind::Virtual => format!(
                    "V({},{},{},{})",
                    lbl(a),
                    lbl(b),
                    lbl((a + 2) % 4),
                    lbl((b + 2) % 4)
                ),
                NodeKind::Classical { over_in } => {
                    let under_in = if over_in == a { b } else { a };
                    let sign = if (over_in + 1) % 4 == under_in { '+' } else { '-' };
                    format!(
                        "X{sign}({},{},{},{})",
                        lbl(under_in),
                        lbl(over_in),
                        lbl((under_in + 2) % 4),
                        lbl((over_in + 2) % 4)
                    )
                }
            };
            parts.push(part);
        }
        parts.join(" ")
    }
}

fn random_curl<R: Rng>(rng: &mut R) -> Curl {
    if rng.gen() {
        Curl::Left
    } else {
        Curl::Right
    }
}

fn grow<R: Rng>(rng: &mut R, target: usize, allow_new_circles: bool) -> PlanarMap {
    let mut map = PlanarMap::new();
    map.seed_kink(random_curl(rng));
    while map.vert_count() < target {
        let room = target - map.vert_count();
        let roll = rng.gen_range(0..100u32);
        if room >= 2 && roll < 45 {
            let faces = map.faces();
            let mut pairs = Vec::new();
            for face in &faces {
                for (i, &a) in face.iter().enumerate() {
                    for &b in &face[i + 1..] {
                        if a.0 != b.0 {
                            pairs.push((a, b));
                            pairs.push((b, a));
                        }
                    }
                }
            }
            if let Some(&(e, f)) = pairs.choose(rng) {
                map.finger(e, f);
                continue;
            }
        }
        if room >= 2 && allow_new_circles && (45..70).contains(&roll) {
            let edge = rng.gen_range(0..map.edge_count());
            map.encircle(edge, rng.gen());
            continue;
        }
        if allow_new_circles && roll >= 95 {
            map.seed_kink(random_curl(rng));
            continue;
        }
        let edge = rng.gen_range(0..map.edge_count());
        map.kink_on_edge(edge, random_curl(rng));
    }
    map
}

fn assign_random_over<R: Rng>(map: &mut PlanarMap, v: usize, rng: &mut R) {
    let (a, b) = map.in_ports(v);
    let over = if rng.gen() { a } else { b };
    map.set_kind(v, NodeKind::Classical { over_in: over });
}

/// A random planar link diagram with `1..=max_classical` classical and
/// `0..=max_virtual` virtual crossings, as a PD code.
pub fn random_planar_pd<R: Rng>(rng: &mut R, max_classical: usize, max_virtual: usize) -> String {
    let classical = rng.gen_range(1..=max_classical.max(1));
    let virtuals = rng.gen_range(0..=max_virtual);
    let mut map = grow(rng, classical + virtuals, true);
    let mut bag: Vec<bool> = Vec::new();
    bag.resize(classical, true);
    bag.resize(classical + virtuals, false);
    bag.shuffle(rng);
    for v in 0..map.vert_count() {
        if bag[v] {
            assign_random_over(&mut map, v, rng);
        }
    }
    debug_assert_eq!(map.validate(), Ok(()));
    map.to_pd()
}

/// A random one-circle all-classical planar diagram with `1..=max_crossings`
/// crossings, as a PD code.
pub fn random_planar_classical_knot<R: Rng>(rng: &mut R, max_crossings: usize) -> String {
    let target = rng.gen_range(1..=max_crossings.max(1));
    let mut map = grow(rng, target, false);
    for v in 0..map.vert_count() {
        assign_random_over(&mut map, v, rng);
    }
    debug_assert_eq!(map.validate(), Ok(()));
    map.to_pd()
}
