//! 2-3 and 3-2 moves, 0-2 block attachment, solution transfer and holonomy
//! comparison across a move.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{
    build_t022, build_t023, derive, face_site, is_odd, isomorphisms, perm_inverse, slot_of, ComplexError, Derived, FaceSite, Fixture,
    Perm, Quad, Triangulation, QUAD_OF_SLOT,
};
use crate::equations::{edge_holonomies, tet_completion, verify_thurston, EqError, QuadValues};
use crate::ring::{Elem, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PachnerError {
    #[error("InvalidSite: {0}")]
    InvalidSite(String),
    #[error("NotInLocalization: {0}")]
    NotInLocalization(String),
    #[error("CorrespondenceMismatch: {0}")]
    CorrespondenceMismatch(String),
    #[error(transparent)]
    Equations(#[from] EqError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// How the old triangulation's simplices sit in the new one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    /// New index of each old tetrahedron, `None` if it was replaced.
    pub tets: Vec<Option<usize>>,
    /// New edge class of each old edge class, `None` if it disappeared.
    pub edges: Vec<Option<usize>>,
    /// Per old edge, quads of newly attached tetrahedra that join its class.
    pub added: Vec<Vec<Quad>>,
}

// Abstract points of a move site.
const P: u8 = 0;
const N: u8 = 1;
const V: [u8; 3] = [2, 3, 4];

fn coords(p: u8) -> [i64; 3] {
    match p {
        0 => [0, 0, 1],
        1 => [0, 0, -1],
        2 => [1, 0, 0],
        3 => [0, 1, 0],
        _ => [-1, -1, 0],
    }
}

/// Sign of the tetrahedron with the given abstract vertices, in a fixed embedding.
fn sign(l: [u8; 4]) -> i64 {
    let p = l.map(coords);
    let d = |i: usize| [p[i][0] - p[0][0], p[i][1] - p[0][1], p[i][2] - p[0][2]];
    let (a, b, c) = (d(1), d(2), d(3));
    let det = a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
    det.signum()
}

/// `[a, b, c, d]` or `[a, b, d, c]`, whichever has sign `want`.
fn oriented(l: [u8; 4], want: i64) -> [u8; 4] {
    if sign(l) == want {
        l
    } else {
        [l[0], l[1], l[3], l[2]]
    }
}

fn triangle(l: &[u8; 4], f: u8) -> [u8; 3] {
    let mut t: Vec<u8> = (0..4).filter(|&v| v != f).map(|v| l[v as usize]).collect();
    t.sort();
    [t[0], t[1], t[2]]
}

fn position(l: &[u8; 4], p: u8) -> Option<u8> {
    l.iter().position(|&x| x == p).map(|i| i as u8)
}

/// Local vertex map from a tetrahedron labelled `from` to one labelled `to` across
/// a shared triangle, sending face `ff` to face `ft`.
fn face_map(from: &[u8; 4], ff: u8, to: &[u8; 4], ft: u8) -> Perm {
    let mut m = [0u8; 4];
    for v in 0..4u8 {
        m[v as usize] = if v == ff { ft } else { position(to, from[v as usize]).expect("shared triangle") };
    }
    m
}

struct Rebuilt {
    tri: Triangulation,
    tets: Vec<Option<usize>>,
    new_site: Vec<usize>,
}

/// Replace the site tetrahedra `old` (with abstract vertex labels) by tetrahedra
/// labelled `new`. Faces with equal abstract triangles are identified; all other
/// gluings are carried over.
fn rebuild(tri: &Triangulation, old: &[(usize, [u8; 4])], new: &[[u8; 4]]) -> Result<Rebuilt, PachnerError> {
    let n = tri.tet_count();
    let site: HashMap<usize, usize> = old.iter().enumerate().map(|(k, &(t, _))| (t, k)).collect();
    let mut slot: Vec<Option<usize>> = vec![None; n];
    for (k, &(t, _)) in old.iter().enumerate() {
        if k < new.len() {
            slot[t] = Some(k);
        }
    }
    let mut tets = vec![None; n];
    let mut new_site = vec![0; new.len()];
    let mut next = 0;
    for t in 0..n {
        match (site.get(&t), slot[t]) {
            (Some(_), Some(k)) => {
                new_site[k] = next;
                next += 1;
            }
            (Some(_), None) => {}
            (None, _) => {
                tets[t] = Some(next);
                next += 1;
            }
        }
    }
    for ns in new_site.iter_mut().skip(old.len()) {
        *ns = next;
        next += 1;
    }

    let internal_old = |t: usize, f: u8| -> bool {
        let (Some(&k), Some((t2, p))) = (site.get(&t), tri.neighbour(t, f)) else { return false };
        let Some(&k2) = site.get(&t2) else { return false };
        (0..4u8).filter(|&v| v != f).all(|v| old[k2].1[p[v as usize] as usize] == old[k].1[v as usize])
    };
    let mut new_faces: HashMap<[u8; 3], Vec<(usize, u8)>> = HashMap::new();
    for (k, l) in new.iter().enumerate() {
        for f in 0..4u8 {
            new_faces.entry(triangle(l, f)).or_default().push((k, f));
        }
    }
    let mut old_external = vec![];
    for (k, &(t, l)) in old.iter().enumerate() {
        for f in 0..4u8 {
            if !internal_old(t, f) {
                old_external.push((triangle(&l, f), k));
            }
        }
    }
    let mut a: Vec<_> = old_external.iter().map(|x| x.0).collect();
    let mut b: Vec<_> = new_faces.iter().filter(|(_, v)| v.len() == 1).map(|(k, _)| *k).collect();
    a.sort();
    b.sort();
    if a != b {
        return Err(PachnerError::InvalidSite("site boundary does not match the replacement".into()));
    }

    // (new tet, new face, vertex map) for one side of an old gluing
    let map_side = |t: usize, f: u8| -> (usize, u8, Perm) {
        match site.get(&t) {
            None => (tets[t].expect("kept tetrahedron"), f, [0, 1, 2, 3]),
            Some(&k) => {
                let l = old[k].1;
                let &(kn, fnew) = &new_faces[&triangle(&l, f)][0];
                (new_site[kn], fnew, face_map(&l, f, &new[kn], fnew))
            }
        }
    };
    let mut out = Triangulation::new(next);
    for g in tri.gluings() {
        if internal_old(g.tet, g.face) {
            continue;
        }
        let (ta, fa, ma) = map_side(g.tet, g.face);
        let (tb, _, mb) = map_side(g.to_tet, g.to_face);
        let ia = perm_inverse(&ma);
        let perm = [0, 1, 2, 3].map(|v| mb[g.perm[ia[v] as usize] as usize]);
        out.glue_faces(ta, fa, tb, perm)?;
    }
    for sides in new_faces.values().filter(|v| v.len() == 2) {
        let ((k1, f1), (k2, f2)) = (sides[0], sides[1]);
        let perm = face_map(&new[k1], f1, &new[k2], f2);
        debug_assert!(is_odd(&perm));
        out.glue_faces(new_site[k1], f1, new_site[k2], perm)?;
    }
    Ok(Rebuilt { tri: out, tets, new_site })
}

/// Old edge class -> new edge class, through kept tetrahedra or abstract labels.
fn edge_correspondence(
    d_old: &Derived,
    d_new: &Derived,
    old: &[(usize, [u8; 4])],
    new: &[[u8; 4]],
    rb: &Rebuilt,
) -> Vec<Option<usize>> {
    let site: HashMap<usize, [u8; 4]> = old.iter().copied().collect();
    d_old
        .edges
        .iter()
        .map(|e| {
            e.incidences.iter().find_map(|i| match (rb.tets[i.tet], site.get(&i.tet)) {
                (Some(t), _) => Some(d_new.edge_of(t, i.slot)),
                (None, Some(l)) => {
                    let (pa, pb) = (l[i.ends.0 as usize], l[i.ends.1 as usize]);
                    new.iter().enumerate().find_map(|(k, nl)| {
                        let (a, b) = (position(nl, pa)?, position(nl, pb)?);
                        Some(d_new.edge_of(rb.new_site[k], slot_of(a, b)))
                    })
                }
                (None, None) => None,
            })
        })
        .collect()
}

/// The result of a 2-3 move at a face.
#[derive(Debug, Clone)]
pub struct Move23 {
    pub tri: Triangulation,
    pub corr: Correspondence,
    /// The face as seen in the old triangulation.
    pub site: FaceSite,
    /// New tetrahedra `sigma_i`, with `sigma_i` containing edge `e_i`.
    pub tets: [usize; 3],
    /// Quads of `sigma_i` facing the new edge, and their successors.
    pub a: [Quad; 3],
    pub b: [Quad; 3],
    pub c: [Quad; 3],
    /// The new interior edge.
    pub e0: usize,
}

pub fn apply_2_3(tri: &Triangulation, tet: usize, face: u8) -> Result<Move23, PachnerError> {
    if tet >= tri.tet_count() || face > 3 {
        return Err(PachnerError::InvalidSite(format!("no face {tet}.{face}")));
    }
    let site = face_site(tri, tet, face).ok_or_else(|| PachnerError::InvalidSite(format!("face {tet}.{face} is on the boundary")))?;
    if site.minus == site.plus {
        return Err(PachnerError::InvalidSite(format!("face {tet}.{face} is glued to its own tetrahedron")));
    }
    let mut lp = [P; 4];
    for (i, &(a, b)) in site.e.iter().enumerate() {
        let opp = (0..4u8).find(|&v| v != face && v != a && v != b).expect("face vertex");
        lp[opp as usize] = V[i];
    }
    let mut lm = [N; 4];
    for v in (0..4u8).filter(|&v| v != face) {
        lm[site.perm[v as usize] as usize] = lp[v as usize];
    }
    let want = sign(lp);
    assert_eq!(sign(lm), want, "glued tetrahedra are oppositely oriented");
    let new: Vec<[u8; 4]> = (0..3).map(|i| oriented([P, N, V[(i + 1) % 3], V[(i + 2) % 3]], want)).collect();
    let old = [(site.plus, lp), (site.minus, lm)];
    let rb = rebuild(tri, &old, &new)?;
    let d_old = derive(tri);
    let d_new = derive(&rb.tri);
    let edges = edge_correspondence(&d_old, &d_new, &old, &new, &rb);
    let tets = [rb.new_site[0], rb.new_site[1], rb.new_site[2]];
    let a = [0, 1, 2].map(|i| Quad::new(tets[i], QUAD_OF_SLOT[slot_of(0, 1)]));
    let e0 = d_new.edge_of(tets[0], slot_of(0, 1));
    Ok(Move23 {
        corr: Correspondence { tets: rb.tets.clone(), edges, added: vec![vec![]; d_old.edges.len()] },
        tri: rb.tri,
        site,
        tets,
        a,
        b: a.map(Quad::succ),
        c: a.map(|q| q.succ_n(2)),
        e0,
    })
}

/// The result of a 3-2 move at a degree-3 edge.
#[derive(Debug, Clone)]
pub struct Move32 {
    pub tri: Triangulation,
    pub corr: Correspondence,
    /// Old tetrahedra `sigma_i` around the edge and their quads.
    pub tets: [usize; 3],
    pub a: [Quad; 3],
    pub b: [Quad; 3],
    pub c: [Quad; 3],
    /// New tetrahedra.
    pub plus: usize,
    pub minus: usize,
    /// Face of `plus` glued to `minus`.
    pub face: u8,
    /// Quads of the new tetrahedra facing the edge `e_i` of the new shared face.
    pub x: [Quad; 3],
    pub y: [Quad; 3],
}

pub fn apply_3_2(tri: &Triangulation, edge: usize) -> Result<Move32, PachnerError> {
    let d = derive(tri);
    let e = d.edges.get(edge).ok_or_else(|| PachnerError::InvalidSite(format!("no edge {edge}")))?;
    if !e.interior || !e.valid || e.degree() != 3 {
        return Err(PachnerError::InvalidSite(format!("edge {edge} is not an interior edge of degree 3")));
    }
    let ts: Vec<usize> = e.walk.iter().map(|s| s.0).collect();
    if ts[0] == ts[1] || ts[1] == ts[2] || ts[0] == ts[2] {
        return Err(PachnerError::InvalidSite(format!("edge {edge} meets a tetrahedron more than once")));
    }
    // propagate abstract labels around the edge
    let inc = e.incidences.iter().find(|i| i.tet == ts[0]).expect("walk tetrahedron");
    let mut labels = [[u8::MAX; 4]; 3];
    labels[0][inc.ends.0 as usize] = P;
    labels[0][inc.ends.1 as usize] = N;
    let mut fresh = 10;
    for x in labels[0].iter_mut() {
        if *x == u8::MAX {
            *x = fresh;
            fresh += 1;
        }
    }
    for k in 0..2 {
        let (t, f) = e.walk[k];
        let (t2, p) = tri.neighbour(t, f).expect("walk face");
        debug_assert_eq!(t2, ts[k + 1]);
        for v in (0..4u8).filter(|&v| v != f) {
            labels[k + 1][p[v as usize] as usize] = labels[k][v as usize];
        }
        labels[k + 1][p[f as usize] as usize] = fresh;
        fresh += 1;
    }
    // closing step: the last fresh point is the one of tet 0 not seen by tet 1
    let (t, f) = e.walk[2];
    let (_, p) = tri.neighbour(t, f).expect("walk face");
    let mut rename = HashMap::new();
    for v in (0..4u8).filter(|&v| v != f) {
        rename.insert(labels[2][v as usize], labels[0][p[v as usize] as usize]);
    }
    for l in labels.iter_mut().skip(1) {
        for x in l.iter_mut() {
            *x = rename.get(x).copied().unwrap_or(*x);
        }
    }
    // name the apex points so that b_i faces the edge P v_{i+1} in sigma_i
    let others = |l: &[u8; 4]| -> Vec<u8> { l.iter().copied().filter(|&x| x != P && x != N).collect() };
    let w0 = others(&labels[0]);
    let v1 = *others(&labels[1]).iter().chain(others(&labels[2]).iter()).find(|x| !w0.contains(x)).expect("third apex");
    let a0 = QUAD_OF_SLOT[slot_of(inc.ends.0, inc.ends.1)];
    let b0 = (a0 + 1) % 3;
    let p0 = position(&labels[0], P).expect("P");
    let v2 = *w0
        .iter()
        .find(|&&w| QUAD_OF_SLOT[slot_of(p0, position(&labels[0], w).expect("w"))] == b0)
        .expect("quad b faces one apex edge");
    let v3 = *w0.iter().find(|&&w| w != v2).expect("two apexes");
    let to_abstract: HashMap<u8, u8> = [(P, P), (N, N), (v1, V[0]), (v2, V[1]), (v3, V[2])].into_iter().collect();
    let labels: Vec<[u8; 4]> = labels.iter().map(|l| l.map(|x| to_abstract[&x])).collect();
    // sigma_i is the tetrahedron without v_i
    let mut order = [0usize; 3];
    for i in 0..3 {
        order[i] = (0..3).find(|&k| !labels[k].contains(&V[i])).expect("tetrahedron missing v_i");
    }
    let old: Vec<(usize, [u8; 4])> = order.iter().map(|&k| (ts[k], labels[k])).collect();
    let want = sign(old[0].1);
    let mut a = [Quad::new(0, 0); 3];
    for (i, &(t, l)) in old.iter().enumerate() {
        assert_eq!(sign(l), want, "tetrahedra around the edge are oppositely oriented");
        let (pp, pn) = (position(&l, P).expect("P"), position(&l, N).expect("N"));
        a[i] = Quad::new(t, QUAD_OF_SLOT[slot_of(pp, pn)]);
        let pv = position(&l, V[(i + 1) % 3]).expect("v_{i+1}");
        assert_eq!(QUAD_OF_SLOT[slot_of(pp, pv)], a[i].succ().m, "apex naming is not chiral-consistent");
    }
    let new = vec![oriented([P, V[0], V[1], V[2]], want), oriented([N, V[0], V[1], V[2]], want)];
    let rb = rebuild(tri, &old, &new)?;
    let d_new = derive(&rb.tri);
    let edges = edge_correspondence(&d, &d_new, &old, &new, &rb);
    let (plus, minus) = (rb.new_site[0], rb.new_site[1]);
    let facing = |t: usize, l: &[u8; 4], i: usize| {
        let (pa, pb) = (position(l, V[(i + 1) % 3]).expect("v"), position(l, V[(i + 2) % 3]).expect("v"));
        Quad::new(t, QUAD_OF_SLOT[slot_of(pa, pb)])
    };
    Ok(Move32 {
        corr: Correspondence { tets: rb.tets.clone(), edges, added: vec![vec![]; d.edges.len()] },
        tri: rb.tri,
        tets: [old[0].0, old[1].0, old[2].0],
        a,
        b: a.map(Quad::succ),
        c: a.map(|q| q.succ_n(2)),
        plus,
        minus,
        face: position(&new[0], P).expect("P"),
        x: [0, 1, 2].map(|i| facing(plus, &new[0], i)),
        y: [0, 1, 2].map(|i| facing(minus, &new[1], i)),
    })
}

fn require_valid(tri: &Triangulation, sol: &QuadValues) -> Result<(), PachnerError> {
    let rep = verify_thurston(tri, &derive(tri), sol)?;
    if rep.ok {
        Ok(())
    } else {
        Err(EqError::InvalidSolution("input is not a solution".into()).into())
    }
}

fn carry_over(r: &Ring, corr: &Correspondence, sol: &QuadValues, n: usize) -> QuadValues {
    let mut values = vec![[r.zero(); 3]; n];
    for (t, nt) in corr.tets.iter().enumerate() {
        if let Some(nt) = nt {
            values[*nt] = sol.values[t];
        }
    }
    QuadValues { ring: r.clone(), values }
}

/// `a_i = x_i y_i`, with `b_i`, `c_i` by completion.
pub fn transfer_solution_2to3(tri: &Triangulation, sol: &QuadValues, mv: &Move23) -> Result<QuadValues, PachnerError> {
    require_valid(tri, sol)?;
    let r = &sol.ring;
    let mut out = carry_over(r, &mv.corr, sol, mv.tri.tet_count());
    for i in 0..3 {
        let u = r.mul(sol.get(mv.site.x[i]), sol.get(mv.site.y[i]));
        if !r.is_unit(u) || !r.is_unit(r.sub(r.one(), u)) {
            return Err(PachnerError::NotInLocalization(format!("x{0} y{0} = {1}", i + 1, r.show(u))));
        }
        let v = tet_completion(r, u)?;
        out.set(mv.a[i], v[0]);
        out.set(mv.b[i], v[1]);
        out.set(mv.c[i], v[2]);
    }
    Ok(out)
}

/// `x_i = b_{i+2} c_{i+1}`, `y_i = b_{i+1} c_{i+2}`.
pub fn transfer_solution_3to2(tri: &Triangulation, sol: &QuadValues, mv: &Move32) -> Result<QuadValues, PachnerError> {
    require_valid(tri, sol)?;
    let r = &sol.ring;
    let mut out = carry_over(r, &mv.corr, sol, mv.tri.tet_count());
    for i in 0..3 {
        let (i1, i2) = ((i + 1) % 3, (i + 2) % 3);
        out.set(mv.x[i], r.mul(sol.get(mv.b[i2]), sol.get(mv.c[i1])));
        out.set(mv.y[i], r.mul(sol.get(mv.b[i1]), sol.get(mv.c[i2])));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant02 {
    /// The two-face block; attaches at boundary faces only.
    Two,
    /// The three-face block.
    Three,
}

/// The result of attaching a two-tetrahedron block at a face.
#[derive(Debug, Clone)]
pub struct Move02 {
    pub tri: Triangulation,
    pub corr: Correspondence,
    pub variant: Variant02,
    /// Block fixture, with quads renumbered into the new triangulation.
    pub block: Fixture,
    pub plus: usize,
    pub minus: usize,
}

/// An odd vertex map sending face `f` of one tetrahedron onto face `g` of another.
fn odd_face_map(f: u8, g: u8) -> Perm {
    let src: Vec<u8> = (0..4).filter(|&v| v != f).collect();
    let dst: Vec<u8> = (0..4).filter(|&v| v != g).collect();
    let mut m = [0u8; 4];
    m[f as usize] = g;
    for i in 0..3 {
        m[src[i] as usize] = dst[i];
    }
    if !is_odd(&m) {
        m.swap(src[0] as usize, src[1] as usize);
    }
    m
}

pub fn apply_0_2(tri: &Triangulation, variant: Variant02, tet: usize, face: u8) -> Result<Move02, PachnerError> {
    if tet >= tri.tet_count() || face > 3 {
        return Err(PachnerError::InvalidSite(format!("no face {tet}.{face}")));
    }
    let interior = tri.neighbour(tet, face);
    if variant == Variant02::Two && interior.is_some() {
        return Err(PachnerError::InvalidSite(format!("the two-face block attaches at boundary faces; {tet}.{face} is interior")));
    }
    let mut block = match variant {
        Variant02::Two => build_t022(),
        Variant02::Three => build_t023(),
    };
    let n = tri.tet_count();
    let (bp, bm) = (block.quad("q1+").tet, block.quad("q1-").tet);
    let free = |t: usize| (0..4u8).find(|&f| block.tri.neighbour(t, f).is_none()).expect("block has a free face");
    let fp = free(bp);
    let mut out = tri.disjoint_union(&block.tri);
    let (plus, minus) = (bp + n, bm + n);
    out.unglue(tet, face);
    let alpha = odd_face_map(face, fp);
    out.glue_faces(tet, face, plus, alpha)?;
    if let Some((t2, pi)) = interior {
        // route the old identification through the block: t -> sigma+ -> sigma- -> t2
        let shared = (0..4u8).find(|&f| block.tri.neighbour(bp, f).is_some()).expect("shared face");
        let rho = block.tri.neighbour(bp, shared).expect("shared face").1;
        for f in (0..4u8).filter(|&f| block.tri.neighbour(bp, f).is_some()) {
            assert_eq!(block.tri.neighbour(bp, f).expect("glued").1, rho, "block faces use one permutation");
        }
        let fm = rho[fp as usize];
        let ai = perm_inverse(&alpha);
        let ri = perm_inverse(&rho);
        let beta = [0, 1, 2, 3].map(|w| pi[ai[ri[w] as usize] as usize]);
        out.glue_faces(minus, fm, t2, beta)?;
    }
    let d_old = derive(tri);
    let d_new = derive(&out);
    let tets: Vec<Option<usize>> = (0..n).map(Some).collect();
    let mut edges = vec![];
    let mut added = vec![];
    for e in &d_old.edges {
        let i = e.incidences[0];
        let ne = d_new.edge_of(i.tet, i.slot);
        edges.push(Some(ne));
        added.push(d_new.quads_facing(ne).into_iter().filter(|q| q.tet >= n).collect());
    }
    for q in block.quads.iter_mut() {
        q.1.tet += n;
    }
    block.edges = block.edges.iter().map(|(name, e)| {
        let inc = derive(&block.tri).edges[*e].incidences[0];
        (name.clone(), d_new.edge_of(inc.tet + n, inc.slot))
    }).collect();
    block.tri = out.clone();
    Ok(Move02 { tri: out, corr: Correspondence { tets, edges, added }, variant, block, plus, minus })
}

/// Block values: `q1+` takes the shape `s`, `q1- = 1/q1+`, the rest by completion.
pub fn extend_solution_0_2(tri: &Triangulation, sol: &QuadValues, mv: &Move02, s: Elem) -> Result<QuadValues, PachnerError> {
    require_valid(tri, sol)?;
    let r = &sol.ring;
    let mut out = carry_over(r, &mv.corr, sol, mv.tri.tet_count());
    let plus = tet_completion(r, s)?;
    let minus = tet_completion(r, r.inverse(s).map_err(|_| EqError::NotAShape(r.show(s)))?)?;
    let (q1p, q1m) = (mv.block.quad("q1+"), mv.block.quad("q1-"));
    for k in 0..3 {
        out.set(q1p.succ_n(k), plus[k]);
        out.set(q1m.succ_n(k), minus[k]);
    }
    Ok(out)
}

/// Values on `a` read off from `sol` on `b` through an isomorphism `a -> b`.
pub fn pull_back_solution(sol: &QuadValues, iso: &[(usize, Perm)]) -> QuadValues {
    let values = iso
        .iter()
        .map(|&(tb, p)| {
            [0u8, 1, 2].map(|m| {
                let mb = QUAD_OF_SLOT[slot_of(p[0], p[m as usize + 1])];
                sol.values[tb][mb as usize]
            })
        })
        .collect();
    QuadValues { ring: sol.ring.clone(), values }
}

/// Whether some isomorphism `a -> b` carries `sb` to `sa`.
pub fn same_solution_up_to_isomorphism(a: &Triangulation, sa: &QuadValues, b: &Triangulation, sb: &QuadValues) -> bool {
    isomorphisms(a, b, false).iter().any(|iso| pull_back_solution(sb, iso) == *sa)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolonomyCheck {
    pub old_edge: usize,
    pub new_edge: usize,
    pub before: String,
    /// Product of the attached quads joining this edge ("1" if none).
    pub factor: String,
    pub after: String,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransferReport {
    pub ring: String,
    pub retained: Vec<HolonomyCheck>,
    /// Edges of the new triangulation outside the image, with their holonomy.
    pub new_edges: Vec<(usize, String)>,
    pub violations: Vec<usize>,
    pub ok: bool,
}

/// Compares `W_e` before with `W_e` after (divided by the attached factor) on every retained edge.
pub fn verify_holonomy_preservation(
    before: (&Triangulation, &QuadValues),
    after: (&Triangulation, &QuadValues),
    corr: &Correspondence,
) -> Result<TransferReport, PachnerError> {
    let (d0, d1) = (derive(before.0), derive(after.0));
    let (s0, s1) = (before.1, after.1);
    if corr.edges.len() != d0.edges.len() || corr.added.len() != d0.edges.len() || corr.tets.len() != before.0.tet_count() {
        return Err(PachnerError::CorrespondenceMismatch("correspondence does not fit the old triangulation".into()));
    }
    if s0.values.len() != before.0.tet_count() || s1.values.len() != after.0.tet_count() || s0.ring != s1.ring {
        return Err(PachnerError::CorrespondenceMismatch("solutions do not fit the triangulations".into()));
    }
    if corr.edges.iter().flatten().any(|&e| e >= d1.edges.len()) {
        return Err(PachnerError::CorrespondenceMismatch("edge index out of range".into()));
    }
    let r = &s0.ring;
    let (w0, w1) = (edge_holonomies(&d0, s0), edge_holonomies(&d1, s1));
    let mut rep = TransferReport { ring: r.spec().to_string(), retained: vec![], new_edges: vec![], violations: vec![], ok: true };
    for (e, ne) in corr.edges.iter().enumerate() {
        let Some(ne) = *ne else { continue };
        let factor = r.product(corr.added[e].iter().map(|&q| s1.get(q)));
        let equal = r.mul(w0[e], factor) == w1[ne];
        if !equal {
            rep.violations.push(e);
        }
        rep.retained.push(HolonomyCheck {
            old_edge: e,
            new_edge: ne,
            before: r.show(w0[e]),
            factor: r.show(factor),
            after: r.show(w1[ne]),
            equal,
        });
    }
    for (e, w) in w1.iter().enumerate() {
        if !corr.edges.contains(&Some(e)) {
            rep.new_edges.push((e, r.show(*w)));
        }
    }
    rep.ok = rep.violations.is_empty();
    Ok(rep)
}
