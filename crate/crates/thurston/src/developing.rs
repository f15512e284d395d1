//! Combinatorial continuation of PR^1 labels along dual paths, loop holonomy in
//! PGL(2,R) and edge monodromy.
//!
//! A labeling assigns a projective point to each normal triangle of a
//! tetrahedron (one per vertex). Crossing a face copies three labels through the
//! gluing and solves the fourth from the cross-ratio identity
//! `(φ(t1), φ(t2); φ(t3), φ(t4)) = [z(q), -z(q')]`, with the vertex order of
//! each quad taken from [`QUAD_VERTEX_ORDER`].

use thiserror::Error;

use crate::complex::{Derived, Quad, Triangulation};
use crate::cross_ratio::{cross_ratio, fourth_point, is_admissible, mobius_from_triples, proj_eq, CrossRatioError, Pgl, Vec2};
use crate::equations::{quad_cross_ratio_target, QuadValues, QUAD_VERTEX_ORDER};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DevelopError {
    #[error("NotUnitHTE: {0}")]
    NotUnitHTE(String),
    #[error("InvalidPath: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    CrossRatio(#[from] CrossRatioError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TetLabeling {
    pub tet: usize,
    /// Representative of the label of the normal triangle at each vertex.
    pub labels: [Vec2; 4],
}

impl TetLabeling {
    /// Label-by-label projective equality.
    pub fn same_as(&self, r: &Ring, other: &TetLabeling) -> bool {
        self.tet == other.tet && (0..4).all(|v| proj_eq(r, self.labels[v], other.labels[v]))
    }

    pub fn is_admissible(&self, r: &Ring) -> bool {
        is_admissible(r, &self.labels)
    }
}

/// Tetrahedra `tets[0..=n]` joined by `steps[i] = (tets[i], exit face)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualPath {
    pub tets: Vec<usize>,
    pub steps: Vec<(usize, u8)>,
}

impl DualPath {
    pub fn new(tri: &Triangulation, start: usize, faces: &[u8]) -> Result<DualPath, DevelopError> {
        if start >= tri.tet_count() {
            return Err(DevelopError::InvalidPath(format!("no tetrahedron {start}")));
        }
        let mut tets = vec![start];
        let mut steps = vec![];
        for &f in faces {
            let t = *tets.last().expect("nonempty");
            let (next, _) = tri
                .neighbour(t, f)
                .ok_or_else(|| DevelopError::InvalidPath(format!("face {t}.{f} is not interior")))?;
            steps.push((t, f));
            tets.push(next);
        }
        Ok(DualPath { tets, steps })
    }

    /// From explicit `(tet, face)` steps; each tetrahedron must be where the previous step arrived.
    pub fn from_steps(tri: &Triangulation, steps: &[(usize, u8)]) -> Result<DualPath, DevelopError> {
        let Some(&(start, _)) = steps.first() else {
            return Err(DevelopError::InvalidPath("empty path".into()));
        };
        let path = DualPath::new(tri, start, &steps.iter().map(|s| s.1).collect::<Vec<_>>())?;
        if let Some(i) = (0..steps.len()).find(|&i| path.tets[i] != steps[i].0) {
            return Err(DevelopError::InvalidPath(format!(
                "step {i} starts at tetrahedron {} but the path is at {}",
                steps[i].0, path.tets[i]
            )));
        }
        Ok(path)
    }

    pub fn start(&self) -> usize {
        self.tets[0]
    }

    pub fn end(&self) -> usize {
        *self.tets.last().expect("nonempty")
    }

    pub fn is_loop(&self) -> bool {
        self.start() == self.end()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &DualPath) -> DualPath {
        assert_eq!(self.end(), other.start(), "paths are not composable");
        let mut p = self.clone();
        p.tets.extend_from_slice(&other.tets[1..]);
        p.steps.extend_from_slice(&other.steps);
        p
    }

    pub fn reversed(&self, tri: &Triangulation) -> DualPath {
        let mut tets = self.tets.clone();
        tets.reverse();
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|&(t, f)| {
                let (next, perm) = tri.neighbour(t, f).expect("validated step");
                (next, perm[f as usize])
            })
            .collect();
        DualPath { tets, steps }
    }
}

fn check_tet(z: &QuadValues, t: usize) -> Result<(), DevelopError> {
    let r = &z.ring;
    let v = z.values.get(t).ok_or_else(|| DevelopError::NotUnitHTE(format!("no values for tetrahedron {t}")))?;
    if !v.iter().all(|&x| r.is_unit(x)) {
        return Err(DevelopError::NotUnitHTE(format!("tetrahedron {t} has a non-unit value")));
    }
    if r.add(r.add(v[0], v[1]), v[2]) != r.zero() {
        return Err(DevelopError::NotUnitHTE(format!("values of tetrahedron {t} do not sum to zero")));
    }
    Ok(())
}

/// Vertex order of quad `m` rotated (within its cross-ratio symmetry class) so `v` comes last.
fn order_ending_at(m: usize, v: u8) -> [u8; 4] {
    let [i, j, k, l] = QUAD_VERTEX_ORDER[m];
    [[i, j, k, l], [k, l, i, j], [j, i, l, k], [l, k, j, i]]
        .into_iter()
        .find(|o| o[3] == v)
        .expect("vertex occurs in every order")
}

/// Whether the labels satisfy the cross-ratio identity at every quad.
pub fn satisfies_quad_identities(z: &QuadValues, lab: &TetLabeling) -> bool {
    let r = &z.ring;
    (0..3u8).all(|m| {
        let o = QUAD_VERTEX_ORDER[m as usize];
        let p = |i: usize| lab.labels[o[i] as usize];
        match (cross_ratio(r, p(0), p(1), p(2), p(3)), quad_cross_ratio_target(z, Quad::new(lab.tet, m))) {
            (Ok(c), Ok(w)) => proj_eq(r, c, w),
            _ => false,
        }
    })
}

fn complete(z: &QuadValues, tet: usize, mut labels: [Vec2; 4], unknown: u8) -> Result<TetLabeling, DevelopError> {
    check_tet(z, tet)?;
    let r = &z.ring;
    let o = order_ending_at(0, unknown);
    let w = quad_cross_ratio_target(z, Quad::new(tet, 0)).map_err(|e| DevelopError::NotUnitHTE(e.to_string()))?;
    let known = |i: usize| labels[o[i] as usize];
    labels[unknown as usize] = fourth_point(r, known(0), known(1), known(2), w)?;
    let lab = TetLabeling { tet, labels };
    assert!(lab.is_admissible(r), "developed labels are not admissible");
    assert!(satisfies_quad_identities(z, &lab), "cross-ratio identity fails at tetrahedron {tet}");
    Ok(lab)
}

/// Vertices 0, 1, 2 of `tet` get `[1,0]`, `[0,1]`, `[1,1]`; vertex 3 is solved.
pub fn seed_labeling(tri: &Triangulation, z: &QuadValues, tet: usize) -> Result<TetLabeling, DevelopError> {
    if tet >= tri.tet_count() {
        return Err(DevelopError::InvalidPath(format!("no tetrahedron {tet}")));
    }
    let r = &z.ring;
    let labels = [Vec2::ints(r, 1, 0), Vec2::ints(r, 0, 1), Vec2::ints(r, 1, 1), Vec2::ints(r, 0, 0)];
    complete(z, tet, labels, 3)
}

pub fn extend_across_face(
    tri: &Triangulation,
    z: &QuadValues,
    lab: &TetLabeling,
    face: u8,
) -> Result<TetLabeling, DevelopError> {
    let (next, perm) = tri
        .neighbour(lab.tet, face)
        .ok_or_else(|| DevelopError::InvalidPath(format!("face {}.{face} is not interior", lab.tet)))?;
    let r = &z.ring;
    let mut labels = [Vec2::ints(r, 0, 0); 4];
    for v in (0..4u8).filter(|&v| v != face) {
        labels[perm[v as usize] as usize] = lab.labels[v as usize];
    }
    complete(z, next, labels, perm[face as usize])
}

/// Labelings of every tetrahedron along the path, starting with `initial`.
pub fn develop_path(
    tri: &Triangulation,
    z: &QuadValues,
    path: &DualPath,
    initial: &TetLabeling,
) -> Result<Vec<TetLabeling>, DevelopError> {
    if initial.tet != path.start() {
        return Err(DevelopError::InvalidPath("initial labeling is not at the path start".into()));
    }
    let mut out = vec![*initial];
    for &(_, f) in &path.steps {
        let next = extend_across_face(tri, z, out.last().expect("nonempty"), f)?;
        out.push(next);
    }
    Ok(out)
}

/// The class ρ with `final = ρ · initial` around a closed dual path.
pub fn holonomy_of_loop(
    tri: &Triangulation,
    z: &QuadValues,
    path: &DualPath,
    initial: &TetLabeling,
) -> Result<Pgl, DevelopError> {
    if !path.is_loop() {
        return Err(DevelopError::InvalidPath("path does not close".into()));
    }
    let r = &z.ring;
    let dev = develop_path(tri, z, path, initial)?;
    let last = dev.last().expect("nonempty");
    let tri3 = |l: &TetLabeling, vs: [usize; 3]| vs.map(|v| l.labels[v]);
    let rho = mobius_from_triples(r, tri3(initial, [0, 1, 2]), tri3(last, [0, 1, 2]))?;
    let check = mobius_from_triples(r, tri3(initial, [1, 2, 3]), tri3(last, [1, 2, 3]))?;
    assert!(crate::cross_ratio::pgl_equal(r, &rho, &check), "holonomy depends on the chosen vertices");
    Ok(rho)
}

/// The dual loop once around an interior edge.
pub fn edge_loop(tri: &Triangulation, d: &Derived, e: usize) -> Result<DualPath, DevelopError> {
    let walk = d.dual_edge_cycle(e).map_err(|err| DevelopError::InvalidPath(err.to_string()))?;
    DualPath::from_steps(tri, &walk)
}

/// Develops once around edge `e` from the seed labeling and compares labels.
pub fn edge_monodromy_trivial(tri: &Triangulation, d: &Derived, z: &QuadValues, e: usize) -> Result<bool, DevelopError> {
    let path = edge_loop(tri, d, e)?;
    let init = seed_labeling(tri, z, path.start())?;
    let dev = develop_path(tri, z, &path, &init)?;
    Ok(dev.last().expect("nonempty").same_as(&z.ring, &init))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{build_t021, build_t33, derive};
    use crate::cross_ratio::{form, Mat2};
    use crate::equations::{solve_thurston, tet_completion, thurston_to_hte};

    fn t33_hte(spec: &str) -> (Triangulation, Derived, Vec<QuadValues>) {
        let f = build_t33();
        let d = derive(&f.tri);
        let r = Ring::parse(spec).unwrap();
        let zs = solve_thurston(&f.tri, &d, &r, None)
            .iter()
            .map(|x| thurston_to_hte(&f.tri, &d, x, &[0; 3]).unwrap())
            .collect();
        (f.tri, d, zs)
    }

    #[test]
    fn seed_is_admissible_and_solves_quad_0() {
        let (tri, _, zs) = t33_hte("Z/7");
        let r = &zs[0].ring;
        let lab = seed_labeling(&tri, &zs[0], 0).unwrap();
        assert!(is_admissible(r, &lab.labels[..3]));
        assert!(lab.is_admissible(r));
        let c = cross_ratio(r, lab.labels[0], lab.labels[1], lab.labels[3], lab.labels[2]).unwrap();
        assert!(proj_eq(r, c, quad_cross_ratio_target(&zs[0], Quad::new(0, 0)).unwrap()));
    }

    #[test]
    fn non_unit_values_are_rejected() {
        let (tri, _, zs) = t33_hte("Z/7");
        let mut z = zs[0].clone();
        z.values[0] = [z.ring.zero(); 3];
        assert!(matches!(seed_labeling(&tri, &z, 0), Err(DevelopError::NotUnitHTE(_))));
    }

    #[test]
    fn extend_and_return() {
        let (tri, _, zs) = t33_hte("Z/7");
        let r = &zs[0].ring;
        let lab = seed_labeling(&tri, &zs[0], 0).unwrap();
        let (next, perm) = tri.neighbour(0, 2).unwrap();
        let ext = extend_across_face(&tri, &zs[0], &lab, 2).unwrap();
        assert_eq!(ext.tet, next);
        for v in [0usize, 1, 3] {
            assert!(proj_eq(r, ext.labels[perm[v] as usize], lab.labels[v]));
        }
        let back = extend_across_face(&tri, &zs[0], &ext, perm[2]).unwrap();
        assert!(back.same_as(r, &lab));
    }

    #[test]
    fn edge_monodromy_on_t33() {
        for spec in ["Z/5", "Z/7", "Z/13", "F:2:2:1,1,1"] {
            let (tri, d, zs) = t33_hte(spec);
            assert!(!zs.is_empty(), "{spec}");
            for z in &zs {
                for e in d.interior_edges() {
                    assert!(edge_monodromy_trivial(&tri, &d, z, e.id).unwrap(), "{spec}");
                }
            }
        }
    }

    #[test]
    fn broken_edge_equation_gives_monodromy() {
        let f = build_t33();
        let d = derive(&f.tri);
        let r = Ring::parse("Z/7").unwrap();
        // shapes 2, 2, 3 give W_e0 = 2*2*3 != 1
        let x = QuadValues {
            ring: r.clone(),
            values: [2, 2, 3].iter().map(|&s| tet_completion(&r, r.from_int(s)).unwrap()).collect(),
        };
        let z = crate::equations::QuadValues {
            ring: r.clone(),
            values: x.values.iter().map(|v| [v[0], r.neg(r.one()), r.sub(r.one(), v[0])]).collect(),
        };
        assert!(!edge_monodromy_trivial(&f.tri, &d, &z, f.edge("e0")).unwrap());
    }

    #[test]
    fn loop_holonomy_basics() {
        let (tri, d, zs) = t33_hte("Z/7");
        let r = &zs[0].ring;
        let init = seed_labeling(&tri, &zs[0], 0).unwrap();
        let trivial = DualPath::new(&tri, 0, &[]).unwrap();
        assert!(holonomy_of_loop(&tri, &zs[0], &trivial, &init).unwrap().is_identity(r));
        let out = DualPath::new(&tri, 0, &[2]).unwrap();
        let there_and_back = out.then(&out.reversed(&tri));
        assert!(holonomy_of_loop(&tri, &zs[0], &there_and_back, &init).unwrap().is_identity(r));
        let around = edge_loop(&tri, &d, 0).unwrap();
        assert!(around.is_loop());
    }

    #[test]
    fn conjugation_covariance() {
        let (tri, d, zs) = t33_hte("Z/7");
        let r = &zs[0].ring;
        let x = Mat2::ints(r, [[1, 2], [3, 4]]);
        let e0 = d.interior_edges().next().unwrap().id;
        let path = edge_loop(&tri, &d, e0).unwrap();
        let init = seed_labeling(&tri, &zs[0], path.start()).unwrap();
        let moved = TetLabeling { tet: init.tet, labels: init.labels.map(|v| x.apply(r, v)) };
        let a = holonomy_of_loop(&tri, &zs[0], &path, &init).unwrap();
        let b = holonomy_of_loop(&tri, &zs[0], &path, &moved).unwrap();
        let xg = Pgl::new(r, x).unwrap();
        let conj = xg.compose(r, &a).compose(r, &xg.inverse(r));
        assert!(crate::cross_ratio::pgl_equal(r, &b, &conj));
    }

    #[test]
    fn copied_labels_stay_distinct_at_edge_ends() {
        let f = build_t021();
        let r = Ring::parse("Z/5").unwrap();
        let x = QuadValues { ring: r.clone(), values: vec![tet_completion(&r, r.from_int(2)).unwrap(); 2] };
        let z = QuadValues {
            ring: r.clone(),
            values: x.values.iter().map(|v| [v[0], r.neg(r.one()), r.sub(r.one(), v[0])]).collect(),
        };
        let lab = seed_labeling(&f.tri, &z, 0).unwrap();
        let ext = extend_across_face(&f.tri, &z, &lab, 3).unwrap();
        for a in 0..4 {
            for b in a + 1..4 {
                assert!(r.is_unit(form(&r, ext.labels[a], ext.labels[b]).unwrap()));
            }
        }
    }
}
