//! Oriented triangulated pseudo 3-manifolds.
//!
//! Conventions:
//! - face `f` of a tetrahedron is the face opposite vertex `f`;
//! - a gluing is a full permutation `perm` of {0,1,2,3} with `perm[face] = to_face`,
//!   and it must be odd (orientation reversing);
//! - quad `m` is the normal quadrilateral disjoint from the edge pair containing
//!   {0, m+1}, with cyclic successor `m -> m+1 mod 3`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Perm = [u8; 4];

/// The six vertex pairs of a tetrahedron, indexed as edge slots.
pub const EDGE_SLOTS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Quad facing each edge slot.
pub const QUAD_OF_SLOT: [u8; 6] = [0, 1, 2, 2, 1, 0];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("SyntaxError: {0}")]
    SyntaxError(String),
    #[error("NonInvolutiveGluing: {0}")]
    NonInvolutiveGluing(String),
    #[error("EvenPermutation: {0}")]
    EvenPermutation(String),
    #[error("FaceReused: {0}")]
    FaceReused(String),
    #[error("FaceNotFree: {0}")]
    FaceNotFree(String),
    #[error("EdgeNotInterior: edge {0}")]
    EdgeNotInterior(usize),
}

pub fn slot_of(a: u8, b: u8) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    EDGE_SLOTS.iter().position(|&s| s == (a, b)).expect("distinct vertices")
}

pub fn is_perm(p: &Perm) -> bool {
    let mut seen = [false; 4];
    for &x in p {
        if x > 3 || seen[x as usize] {
            return false;
        }
        seen[x as usize] = true;
    }
    true
}

pub fn is_odd(p: &Perm) -> bool {
    let mut inv = 0;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

pub fn perm_inverse(p: &Perm) -> Perm {
    let mut q = [0; 4];
    for i in 0..4 {
        q[p[i] as usize] = i as u8;
    }
    q
}

/// `(a ∘ b)[i] = a[b[i]]`.
pub fn perm_compose(a: &Perm, b: &Perm) -> Perm {
    [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize], a[b[3] as usize]]
}

/// All 24 permutations in lexicographic order.
pub fn all_perms() -> Vec<Perm> {
    let mut out = vec![];
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if is_perm(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quad {
    pub tet: usize,
    pub m: u8,
}

impl Quad {
    pub fn new(tet: usize, m: u8) -> Quad {
        assert!(m < 3);
        Quad { tet, m }
    }

    /// q -> q'
    pub fn succ(self) -> Quad {
        Quad { tet: self.tet, m: (self.m + 1) % 3 }
    }

    pub fn succ_n(self, k: usize) -> Quad {
        Quad { tet: self.tet, m: ((self.m as usize + k) % 3) as u8 }
    }

    /// Opposite edge slots faced by this quad.
    pub fn slots(self) -> [usize; 2] {
        let a = slot_of(0, self.m + 1);
        [a, 5 - a]
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct FaceGluing {
    pub tet: usize,
    pub face: u8,
    pub to_tet: usize,
    pub to_face: u8,
    pub perm: Perm,
}

#[derive(Serialize, Deserialize)]
struct TriFile {
    tetrahedra: usize,
    gluings: Vec<FaceGluing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    adj: Vec<[Option<(usize, Perm)>; 4]>,
}

impl Triangulation {
    /// `n` unglued tetrahedra.
    pub fn new(n: usize) -> Triangulation {
        Triangulation { adj: vec![[None; 4]; n] }
    }

    pub fn tet_count(&self) -> usize {
        self.adj.len()
    }

    /// Partner of face `(tet, face)` and the gluing permutation, if glued.
    pub fn neighbour(&self, tet: usize, face: u8) -> Option<(usize, Perm)> {
        self.adj[tet][face as usize]
    }

    pub fn is_closed(&self) -> bool {
        self.adj.iter().all(|fs| fs.iter().all(Option::is_some))
    }

    pub fn boundary_faces(&self) -> Vec<(usize, u8)> {
        let mut out = vec![];
        for (t, fs) in self.adj.iter().enumerate() {
            for f in 0..4u8 {
                if fs[f as usize].is_none() {
                    out.push((t, f));
                }
            }
        }
        out
    }

    /// Identify face `face` of `tet` with face `perm[face]` of `to_tet`.
    pub fn glue_faces(&mut self, tet: usize, face: u8, to_tet: usize, perm: Perm) -> Result<(), ComplexError> {
        let n = self.tet_count();
        if tet >= n || to_tet >= n || face > 3 || !is_perm(&perm) {
            return Err(ComplexError::SyntaxError(format!(
                "bad gluing {tet}.{face} -> {to_tet} {perm:?}"
            )));
        }
        let to_face = perm[face as usize];
        if tet == to_tet && face == to_face {
            return Err(ComplexError::NonInvolutiveGluing(format!(
                "face {tet}.{face} glued to itself"
            )));
        }
        if !is_odd(&perm) {
            return Err(ComplexError::EvenPermutation(format!(
                "gluing {tet}.{face} -> {to_tet}.{to_face} has even permutation {perm:?}"
            )));
        }
        for (t, f) in [(tet, face), (to_tet, to_face)] {
            if self.adj[t][f as usize].is_some() {
                return Err(ComplexError::FaceNotFree(format!("face {t}.{f} is already glued")));
            }
        }
        self.adj[tet][face as usize] = Some((to_tet, perm));
        self.adj[to_tet][to_face as usize] = Some((tet, perm_inverse(&perm)));
        Ok(())
    }

    pub fn unglue(&mut self, tet: usize, face: u8) {
        if let Some((t2, p)) = self.adj[tet][face as usize].take() {
            self.adj[t2][p[face as usize] as usize] = None;
        }
    }

    /// Each identified pair once, from its lexicographically smaller side.
    pub fn gluings(&self) -> Vec<FaceGluing> {
        let mut out = vec![];
        for (t, fs) in self.adj.iter().enumerate() {
            for f in 0..4u8 {
                if let Some((t2, p)) = fs[f as usize] {
                    let g = p[f as usize];
                    if (t, f) <= (t2, g) {
                        out.push(FaceGluing { tet: t, face: f, to_tet: t2, to_face: g, perm: p });
                    }
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Triangulation, ComplexError> {
        let file: TriFile =
            serde_json::from_str(text).map_err(|e| ComplexError::SyntaxError(e.to_string()))?;
        let mut tri = Triangulation::new(file.tetrahedra);
        let mut used = std::collections::HashMap::new();
        for (i, g) in file.gluings.iter().enumerate() {
            if g.tet >= file.tetrahedra || g.to_tet >= file.tetrahedra {
                return Err(ComplexError::SyntaxError(format!(
                    "gluing {i}: tetrahedron index out of range"
                )));
            }
            if g.face > 3 || g.to_face > 3 || !is_perm(&g.perm) {
                return Err(ComplexError::SyntaxError(format!(
                    "gluing {i}: face or permutation out of range"
                )));
            }
            if g.perm[g.face as usize] != g.to_face {
                return Err(ComplexError::SyntaxError(format!(
                    "gluing {i}: perm[{}] = {} but to_face = {}",
                    g.face, g.perm[g.face as usize], g.to_face
                )));
            }
            if g.tet == g.to_tet && g.face == g.to_face {
                return Err(ComplexError::NonInvolutiveGluing(format!(
                    "gluing {i}: face {}.{} glued to itself",
                    g.tet, g.face
                )));
            }
            if !is_odd(&g.perm) {
                return Err(ComplexError::EvenPermutation(format!(
                    "gluing {i}: permutation {:?} is even",
                    g.perm
                )));
            }
            for side in [(g.tet, g.face), (g.to_tet, g.to_face)] {
                if let Some(j) = used.insert(side, i) {
                    return Err(ComplexError::FaceReused(format!(
                        "gluing {i}: face {}.{} already used by gluing {j}",
                        side.0, side.1
                    )));
                }
            }
            tri.glue_faces(g.tet, g.face, g.to_tet, g.perm)?;
        }
        Ok(tri)
    }

    pub fn to_json(&self) -> String {
        let file = TriFile { tetrahedra: self.tet_count(), gluings: self.gluings() };
        serde_json::to_string(&file).expect("serializable")
    }

    /// Rename tetrahedron `t` to `tet_map[t]` and its vertex `v` to `vert_maps[t][v]`.
    /// Vertex maps must be even so orientation is kept.
    pub fn relabel(&self, tet_map: &[usize], vert_maps: &[Perm]) -> Triangulation {
        let mut out = Triangulation::new(self.tet_count());
        for g in self.gluings() {
            let (a, b) = (vert_maps[g.tet], vert_maps[g.to_tet]);
            let p = perm_compose(&perm_compose(&b, &g.perm), &perm_inverse(&a));
            out.glue_faces(tet_map[g.tet], a[g.face as usize], tet_map[g.to_tet], p)
                .expect("relabelling preserves validity");
        }
        out
    }

    /// Disjoint union; tetrahedra of `other` are shifted by `self.tet_count()`.
    pub fn disjoint_union(&self, other: &Triangulation) -> Triangulation {
        let off = self.tet_count();
        let mut adj = self.adj.clone();
        for fs in &other.adj {
            let mut row = [None; 4];
            for f in 0..4 {
                row[f] = fs[f].map(|(t, p)| (t + off, p));
            }
            adj.push(row);
        }
        Triangulation { adj }
    }
}

/// Glue `t1` (with `t2` appended, if given) along `pairings`, indexed in the combined numbering.
pub fn glue(
    t1: &Triangulation,
    t2: Option<&Triangulation>,
    pairings: &[FaceGluing],
) -> Result<Triangulation, ComplexError> {
    let mut out = match t2 {
        Some(t2) => t1.disjoint_union(t2),
        None => t1.clone(),
    };
    for g in pairings {
        if g.perm[g.face as usize] != g.to_face {
            return Err(ComplexError::SyntaxError(format!(
                "pairing {}.{} -> {}.{}: perm does not send face to to_face",
                g.tet, g.face, g.to_tet, g.to_face
            )));
        }
        out.glue_faces(g.tet, g.face, g.to_tet, g.perm)?;
    }
    Ok(out)
}

/// Orientation-preserving isomorphism test (tetrahedron and even vertex relabelling).
pub fn isomorphic(a: &Triangulation, b: &Triangulation) -> bool {
    !isomorphisms(a, b, true).is_empty()
}

/// Orientation-preserving isomorphisms `a -> b`: entry `t` is the image
/// tetrahedron of `t` and its (even) vertex map. Stops after the first if `first_only`.
pub fn isomorphisms(a: &Triangulation, b: &Triangulation, first_only: bool) -> Vec<Vec<(usize, Perm)>> {
    let mut found = vec![];
    if a.tet_count() != b.tet_count() {
        return found;
    }
    let even: Vec<Perm> = all_perms().into_iter().filter(|p| !is_odd(p)).collect();
    let n = a.tet_count();
    let mut map: Vec<Option<(usize, Perm)>> = vec![None; n];
    let mut used = vec![false; n];
    iso_extend(a, b, &even, &mut map, &mut used, first_only, &mut found);
    found
}

fn iso_extend(
    a: &Triangulation,
    b: &Triangulation,
    even: &[Perm],
    map: &mut Vec<Option<(usize, Perm)>>,
    used: &mut Vec<bool>,
    first_only: bool,
    found: &mut Vec<Vec<(usize, Perm)>>,
) {
    let Some(start) = map.iter().position(Option::is_none) else {
        found.push(map.iter().map(|m| m.expect("complete map")).collect());
        return;
    };
    for target in 0..b.tet_count() {
        if used[target] {
            continue;
        }
        for p in even {
            let (saved_map, saved_used) = (map.clone(), used.clone());
            if iso_component(a, b, start, target, *p, map, used) {
                iso_extend(a, b, even, map, used, first_only, found);
            }
            *map = saved_map;
            *used = saved_used;
            if first_only && !found.is_empty() {
                return;
            }
        }
    }
}

fn iso_component(
    a: &Triangulation,
    b: &Triangulation,
    start: usize,
    target: usize,
    p: Perm,
    map: &mut [Option<(usize, Perm)>],
    used: &mut [bool],
) -> bool {
    map[start] = Some((target, p));
    used[target] = true;
    let mut stack = vec![start];
    while let Some(t) = stack.pop() {
        let (tb, pt) = map[t].unwrap();
        for f in 0..4u8 {
            let fb = pt[f as usize];
            match (a.neighbour(t, f), b.neighbour(tb, fb)) {
                (None, None) => {}
                (Some((t2, g)), Some((t2b, gb))) => {
                    // vertex map forced on t2: gb ∘ pt ∘ g⁻¹
                    let p2 = perm_compose(&perm_compose(&gb, &pt), &perm_inverse(&g));
                    match map[t2] {
                        Some((mt, mp)) => {
                            if mt != t2b || mp != p2 {
                                return false;
                            }
                        }
                        None => {
                            if used[t2b] {
                                return false;
                            }
                            map[t2] = Some((t2b, p2));
                            used[t2b] = true;
                            stack.push(t2);
                        }
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

/// One tetrahedron-edge incidence: tetrahedron, slot and the oriented ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeIncidence {
    pub tet: usize,
    pub slot: usize,
    pub ends: (u8, u8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    pub id: usize,
    /// Cyclic (interior) or linear (boundary) order around the edge.
    pub incidences: Vec<EdgeIncidence>,
    pub interior: bool,
    /// False when the edge is identified with itself in reverse.
    pub valid: bool,
    /// Dual steps (tetrahedron, exit face) walking around the edge.
    pub walk: Vec<(usize, u8)>,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexClass {
    pub id: usize,
    /// Tetrahedron corners (= normal triangles) in this class, sorted.
    pub corners: Vec<(usize, u8)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkSurface {
    pub vertex_class: usize,
    pub triangles: usize,
    pub euler_characteristic: i64,
    pub components: usize,
    pub closed: bool,
}

#[derive(Debug, Clone)]
pub struct Derived {
    pub edges: Vec<EdgeClass>,
    pub vertices: Vec<VertexClass>,
    edge_of: Vec<[usize; 6]>,
    vertex_of: Vec<[usize; 4]>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    // the smaller root wins, so roots are least members
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Walk state: in `tet`, edge `a -> b`, exit through the face opposite `d`;
/// `(a, b, c, d)` is always an even permutation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct WalkState {
    tet: usize,
    v: [u8; 4],
}

impl WalkState {
    fn start(tet: usize, a: u8, b: u8) -> WalkState {
        let rest: Vec<u8> = (0..4).filter(|&x| x != a && x != b).collect();
        let mut v = [a, b, rest[0], rest[1]];
        if is_odd(&v) {
            v.swap(2, 3);
        }
        WalkState { tet, v }
    }

    fn step(self, tri: &Triangulation) -> Option<WalkState> {
        let (t2, p) = tri.neighbour(self.tet, self.v[3])?;
        let m = |x: u8| p[x as usize];
        Some(WalkState { tet: t2, v: [m(self.v[0]), m(self.v[1]), m(self.v[3]), m(self.v[2])] })
    }

    fn reversed(self) -> WalkState {
        WalkState { tet: self.tet, v: [self.v[1], self.v[0], self.v[3], self.v[2]] }
    }

    fn incidence(self) -> EdgeIncidence {
        EdgeIncidence { tet: self.tet, slot: slot_of(self.v[0], self.v[1]), ends: (self.v[0], self.v[1]) }
    }
}

pub fn derive(tri: &Triangulation) -> Derived {
    let n = tri.tet_count();
    let mut uf = UnionFind::new(6 * n);
    let mut vf = UnionFind::new(4 * n);
    for g in tri.gluings() {
        let p = g.perm;
        for (s, &(a, b)) in EDGE_SLOTS.iter().enumerate() {
            if a != g.face && b != g.face {
                uf.union(6 * g.tet + s, 6 * g.to_tet + slot_of(p[a as usize], p[b as usize]));
            }
        }
        for v in 0..4u8 {
            if v != g.face {
                vf.union(4 * g.tet + v as usize, 4 * g.to_tet + p[v as usize] as usize);
            }
        }
    }

    let mut edge_of = vec![[usize::MAX; 6]; n];
    let mut members: Vec<Vec<usize>> = vec![];
    let mut root_id = std::collections::HashMap::new();
    for x in 0..6 * n {
        let r = uf.find(x);
        let id = *root_id.entry(r).or_insert_with(|| {
            members.push(vec![]);
            members.len() - 1
        });
        members[id].push(x);
        edge_of[x / 6][x % 6] = id;
    }

    let mut edges = vec![];
    for (id, slots) in members.iter().enumerate() {
        let rep = slots[0];
        let (a, b) = EDGE_SLOTS[rep % 6];
        let s0 = WalkState::start(rep / 6, a, b);
        let interior = slots.iter().all(|&x| {
            let (a, b) = EDGE_SLOTS[x % 6];
            (0..4u8).filter(|&f| f != a && f != b).all(|f| tri.neighbour(x / 6, f).is_some())
        });
        let mut incidences = vec![];
        let mut walk = vec![];
        let mut valid = true;
        if interior {
            let mut s = s0;
            loop {
                incidences.push(s.incidence());
                walk.push((s.tet, s.v[3]));
                s = s.step(tri).expect("interior edge");
                if s == s0 {
                    break;
                }
            }
            if incidences.len() != slots.len() {
                valid = false;
                incidences.truncate(slots.len());
            }
        } else {
            // rewind to one end of the fan, then walk forward
            let mut s = s0.reversed();
            let mut guard = 0;
            while let Some(next) = s.step(tri) {
                s = next;
                guard += 1;
                assert!(guard <= 2 * slots.len(), "boundary walk must terminate");
            }
            let mut s = s.reversed();
            loop {
                incidences.push(s.incidence());
                match s.step(tri) {
                    Some(next) => {
                        walk.push((s.tet, s.v[3]));
                        s = next;
                    }
                    None => break,
                }
            }
            if incidences.len() != slots.len() {
                valid = false;
            }
        }
        edges.push(EdgeClass { id, incidences, interior, valid, walk });
    }

    let mut vertex_of = vec![[usize::MAX; 4]; n];
    let mut vroot = std::collections::HashMap::new();
    let mut vertices: Vec<VertexClass> = vec![];
    for x in 0..4 * n {
        let r = vf.find(x);
        let id = *vroot.entry(r).or_insert_with(|| {
            vertices.push(VertexClass { id: vertices.len(), corners: vec![] });
            vertices.len() - 1
        });
        vertices[id].corners.push((x / 4, (x % 4) as u8));
        vertex_of[x / 4][x % 4] = id;
    }

    Derived { edges, vertices, edge_of, vertex_of }
}

impl Derived {
    pub fn edge_of(&self, tet: usize, slot: usize) -> usize {
        self.edge_of[tet][slot]
    }

    pub fn vertex_of(&self, tet: usize, v: u8) -> usize {
        self.vertex_of[tet][v as usize]
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = &EdgeClass> {
        self.edges.iter().filter(|e| e.interior)
    }

    /// One quad per incidence, in the order around the edge.
    pub fn quads_facing(&self, e: usize) -> Vec<Quad> {
        self.edges[e]
            .incidences
            .iter()
            .map(|i| Quad::new(i.tet, QUAD_OF_SLOT[i.slot]))
            .collect()
    }

    /// The dual loop around an interior edge as (tetrahedron, exit face) steps.
    pub fn dual_edge_cycle(&self, e: usize) -> Result<Vec<(usize, u8)>, ComplexError> {
        let edge = &self.edges[e];
        if !edge.interior {
            return Err(ComplexError::EdgeNotInterior(e));
        }
        Ok(edge.walk.clone())
    }

    pub fn all_valid(&self) -> bool {
        self.edges.iter().all(|e| e.valid)
    }
}

/// Dual graph edges: one per interior face pair.
pub fn dual_graph(tri: &Triangulation) -> Vec<(usize, usize)> {
    tri.gluings().iter().map(|g| (g.tet, g.to_tet)).collect()
}

/// Vertex-link surfaces, one per vertex class.
pub fn vertex_links(tri: &Triangulation, d: &Derived) -> Vec<LinkSurface> {
    let n = tri.tet_count();
    // link vertices are corner-edge ends (t, v, w); index 16t + 4v + w
    let mut lv = UnionFind::new(16 * n);
    // link components over normal triangles (t, v)
    let mut comp = UnionFind::new(4 * n);
    let mut paired_arcs = vec![0usize; d.vertices.len()];
    let mut free_arcs = vec![0usize; d.vertices.len()];
    for t in 0..n {
        for f in 0..4u8 {
            for v in (0..4u8).filter(|&v| v != f) {
                let cls = d.vertex_of(t, v);
                match tri.neighbour(t, f) {
                    Some((t2, p)) => {
                        paired_arcs[cls] += 1;
                        comp.union(4 * t + v as usize, 4 * t2 + p[v as usize] as usize);
                        for w in (0..4u8).filter(|&w| w != f && w != v) {
                            lv.union(
                                16 * t + 4 * v as usize + w as usize,
                                16 * t2 + 4 * p[v as usize] as usize + p[w as usize] as usize,
                            );
                        }
                    }
                    None => free_arcs[cls] += 1,
                }
            }
        }
    }
    d.vertices
        .iter()
        .map(|vc| {
            let mut verts = std::collections::HashSet::new();
            let mut comps = std::collections::HashSet::new();
            for &(t, v) in &vc.corners {
                comps.insert(comp.find(4 * t + v as usize));
                for w in (0..4u8).filter(|&w| w != v) {
                    verts.insert(lv.find(16 * t + 4 * v as usize + w as usize));
                }
            }
            let faces = vc.corners.len() as i64;
            let edges = (paired_arcs[vc.id] / 2 + free_arcs[vc.id]) as i64;
            LinkSurface {
                vertex_class: vc.id,
                triangles: vc.corners.len(),
                euler_characteristic: verts.len() as i64 - edges + faces,
                components: comps.len(),
                closed: free_arcs[vc.id] == 0,
            }
        })
        .collect()
}

/// Labels of a face shared by two distinct tetrahedra `plus` and `minus`.
///
/// `e[i]` are the face's edges as vertex pairs of `plus`, ordered so that the
/// quads `x[i]` of `plus` facing them satisfy `x[i]' = x[i+1]`; `e[0]` is the
/// edge opposite the face's least vertex. `y[i]` are the quads of `minus`
/// facing the same edges, and `apex_edge_plus[i]` / `apex_edge_minus[i]` are
/// the edges opposite `e[i]` in each tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSite {
    pub plus: usize,
    pub face: u8,
    pub minus: usize,
    pub perm: Perm,
    pub e: [(u8, u8); 3],
    pub x: [Quad; 3],
    pub y: [Quad; 3],
    pub apex_edge_plus: [(u8, u8); 3],
    pub apex_edge_minus: [(u8, u8); 3],
}

pub fn face_site(tri: &Triangulation, tet: usize, face: u8) -> Option<FaceSite> {
    let (minus, perm) = tri.neighbour(tet, face)?;
    let fv: Vec<u8> = (0..4).filter(|&v| v != face).collect();
    let e1 = (fv[1], fv[2]);
    let q1 = QUAD_OF_SLOT[slot_of(e1.0, e1.1)];
    let cands = [(fv[0], fv[2]), (fv[0], fv[1])];
    let (e2, e3) = if QUAD_OF_SLOT[slot_of(cands[0].0, cands[0].1)] == (q1 + 1) % 3 {
        (cands[0], cands[1])
    } else {
        (cands[1], cands[0])
    };
    let e = [e1, e2, e3];
    let x = e.map(|(a, b)| Quad::new(tet, QUAD_OF_SLOT[slot_of(a, b)]));
    let y = e.map(|(a, b)| Quad::new(minus, QUAD_OF_SLOT[slot_of(perm[a as usize], perm[b as usize])]));
    let opp = |(a, b): (u8, u8)| fv.iter().copied().find(|&v| v != a && v != b).unwrap();
    let apex_edge_plus = e.map(|ei| (face, opp(ei)));
    let apex_edge_minus = e.map(|ei| (perm[face as usize], perm[opp(ei) as usize]));
    Some(FaceSite { plus: tet, face, minus, perm, e, x, y, apex_edge_plus, apex_edge_minus })
}

impl FaceSite {
    /// Same site with labels shifted by `k` (index `i` becomes `i - k`); chains are preserved.
    pub fn rotated(&self, k: usize) -> FaceSite {
        let r = |i: usize| (i + k) % 3;
        FaceSite {
            e: [0, 1, 2].map(|i| self.e[r(i)]),
            x: [0, 1, 2].map(|i| self.x[r(i)]),
            y: [0, 1, 2].map(|i| self.y[r(i)]),
            apex_edge_plus: [0, 1, 2].map(|i| self.apex_edge_plus[r(i)]),
            apex_edge_minus: [0, 1, 2].map(|i| self.apex_edge_minus[r(i)]),
            ..self.clone()
        }
    }
}

/// A built-in triangulation with named edges and quads.
#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub tri: Triangulation,
    pub edges: Vec<(String, usize)>,
    pub quads: Vec<(String, Quad)>,
}

impl Fixture {
    pub fn edge(&self, name: &str) -> usize {
        self.edges.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no edge {name}")).1
    }

    pub fn quad(&self, name: &str) -> Quad {
        self.quads.iter().find(|(n, _)| n == name).unwrap_or_else(|| panic!("no quad {name}")).1
    }
}

fn two_tet_base(faces: &[u8], perm: Perm) -> Triangulation {
    let mut tri = Triangulation::new(2);
    for &f in faces {
        tri.glue_faces(0, f, 1, perm).expect("fixture gluing");
    }
    tri
}

fn two_tet_fixture(name: &'static str, faces: &[u8], perm: Perm, site_face: u8, first: (u8, u8)) -> Fixture {
    let tri = two_tet_base(faces, perm);
    let d = derive(&tri);
    let s = face_site(&tri, 0, site_face).expect("shared face");
    let k = s.e.iter().position(|&e| e == first).expect("edge of the site face");
    let s = s.rotated(k);
    let mut edges = vec![];
    let mut quads = vec![];
    for i in 0..3 {
        let (a, b) = s.e[i];
        edges.push((format!("e{}", i + 1), d.edge_of(0, slot_of(a, b))));
        let (a, b) = s.apex_edge_plus[i];
        edges.push((format!("e{}+", i + 1), d.edge_of(0, slot_of(a, b))));
        let (a, b) = s.apex_edge_minus[i];
        edges.push((format!("e{}-", i + 1), d.edge_of(1, slot_of(a, b))));
        quads.push((format!("q{}+", i + 1), s.x[i]));
        quads.push((format!("q{}-", i + 1), s.y[i]));
    }
    Fixture { name, tri, edges, quads }
}

/// Two tetrahedra sharing one face.
pub fn build_t021() -> Fixture {
    two_tet_fixture("T021", &[3], [0, 2, 1, 3], 3, (1, 2))
}

/// Two tetrahedra sharing two faces; `e1` is the interior edge and `e1+`,
/// `e1-` are the two degree-1 boundary edges.
pub fn build_t022() -> Fixture {
    two_tet_fixture("T022", &[2, 3], [1, 0, 2, 3], 3, (0, 1))
}

/// Two tetrahedra sharing three faces around a common apex; `e1`, `e2` are
/// interior and `e3` lies on the boundary.
pub fn build_t023() -> Fixture {
    let s = face_site(&two_tet_base(&[1, 2, 3], [0, 2, 1, 3]), 0, 3).expect("shared face");
    let k = s.e.iter().position(|&e| e == (1, 2)).expect("boundary edge of the site face");
    two_tet_fixture("T023", &[1, 2, 3], [0, 2, 1, 3], 3, s.e[(k + 1) % 3])
}

/// Three tetrahedra around one interior edge `e0`, as produced by the 2-3 move on T021.
/// Tetrahedron `i` is `sigma_{i+1}`; its vertices 0 and 1 span `e0`, so
/// `a_i`, `b_i`, `c_i` are its quads 0, 1, 2.
pub fn build_t33() -> Fixture {
    let mut tri = Triangulation::new(3);
    // tet i: (P, N, v_j, v_k) around the axis PN; faces opposite 2 and 3 are internal
    tri.glue_faces(0, 2, 1, [0, 1, 3, 2]).expect("fixture gluing");
    tri.glue_faces(1, 2, 2, [0, 1, 3, 2]).expect("fixture gluing");
    tri.glue_faces(2, 2, 0, [0, 1, 3, 2]).expect("fixture gluing");
    let d = derive(&tri);
    let mut edges = vec![("e0".to_string(), d.edge_of(0, slot_of(0, 1)))];
    let mut quads = vec![];
    for i in 0..3 {
        edges.push((format!("e{}", i + 1), d.edge_of(i, slot_of(2, 3))));
        for (m, l) in ["a", "b", "c"].iter().enumerate() {
            quads.push((format!("{l}{}", i + 1), Quad::new(i, m as u8)));
        }
    }
    Fixture { name: "T33", tri, edges, quads }
}

pub fn fixture(name: &str) -> Option<Fixture> {
    match name {
        "T021" => Some(build_t021()),
        "T022" => Some(build_t022()),
        "T023" => Some(build_t023()),
        "T33" => Some(build_t33()),
        _ => None,
    }
}

pub const FIXTURE_NAMES: [&str; 4] = ["T021", "T022", "T023", "T33"];
