#![allow(dead_code)]

use std::sync::OnceLock;

use thurston_finite::complex::{all_perms, build_t021, build_t022, build_t023, build_t33, derive, is_odd, isomorphic, Perm, Triangulation};
use thurston_finite::equations::QuadValues;
use thurston_finite::{Derived, Ring};

pub fn ring(spec: &str) -> Ring {
    Ring::parse(spec).unwrap()
}

pub fn odd_perms() -> Vec<Perm> {
    all_perms().into_iter().filter(is_odd).collect()
}

/// Every way to glue faces of `n` tetrahedra, including partial gluings.
pub fn all_triangulations(n: usize) -> Vec<Triangulation> {
    let mut out = vec![];
    enumerate(&mut Triangulation::new(n), &mut vec![false; 4 * n], &odd_perms(), false, &mut out);
    out
}

/// Closed gluings of `n` tetrahedra.
pub fn closed_triangulations(n: usize) -> Vec<Triangulation> {
    let mut out = vec![];
    enumerate(&mut Triangulation::new(n), &mut vec![false; 4 * n], &odd_perms(), true, &mut out);
    out
}

// `done[4t + f]` marks faces already glued or left on the boundary
fn enumerate(tri: &mut Triangulation, done: &mut Vec<bool>, odd: &[Perm], closed: bool, out: &mut Vec<Triangulation>) {
    let Some(i) = done.iter().position(|&d| !d) else {
        out.push(tri.clone());
        return;
    };
    let (t, f) = (i / 4, (i % 4) as u8);
    done[i] = true;
    if !closed {
        enumerate(tri, done, odd, closed, out);
    }
    for j in i + 1..done.len() {
        if done[j] {
            continue;
        }
        let (t2, g) = (j / 4, (j % 4) as u8);
        done[j] = true;
        for p in odd.iter().filter(|p| p[f as usize] == g) {
            tri.glue_faces(t, f, t2, *p).unwrap();
            enumerate(tri, done, odd, closed, out);
            tri.unglue(t, f);
        }
        done[j] = false;
    }
    done[i] = false;
}

fn connected(tri: &Triangulation) -> bool {
    let n = tri.tet_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for f in 0..4u8 {
            if let Some((t2, _)) = tri.neighbour(t, f) {
                if !seen[t2] {
                    seen[t2] = true;
                    stack.push(t2);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

fn has_even_interior(d: &Derived) -> bool {
    d.interior_edges().all(|e| e.degree() % 2 == 0)
}

/// Connected closed triangulations with valid edges, one per isomorphism class.
pub fn closed_valid(n: usize) -> Vec<Triangulation> {
    let mut reps: Vec<Triangulation> = vec![];
    for t in closed_triangulations(n) {
        if !connected(&t) || !derive(&t).all_valid() {
            continue;
        }
        if !reps.iter().any(|r| isomorphic(r, &t)) {
            reps.push(t);
        }
    }
    reps
}

/// The test corpus: fixtures, glued and self-glued variants, and closed
/// triangulations found by exhaustive search. All edges are valid.
pub fn corpus() -> Vec<(String, Triangulation)> {
    static CORPUS: OnceLock<Vec<(String, Triangulation)>> = OnceLock::new();
    CORPUS.get_or_init(build_corpus).clone()
}

fn build_corpus() -> Vec<(String, Triangulation)> {
    let mut out = vec![("lone".to_string(), Triangulation::new(1))];
    for f in [build_t021(), build_t022(), build_t023(), build_t33()] {
        out.push((f.name.to_string(), f.tri));
    }
    // one tetrahedron with a single self-gluing
    let mut selfg = Triangulation::new(1);
    selfg.glue_faces(0, 0, 0, [1, 0, 2, 3]).unwrap();
    assert!(derive(&selfg).all_valid());
    out.push(("self-glued".to_string(), selfg));
    // T023 with a third tetrahedron on its free face
    let mut capped = build_t023().tri.disjoint_union(&Triangulation::new(1));
    capped.glue_faces(0, 0, 2, [0, 2, 1, 3]).unwrap();
    out.push(("T023+cap".to_string(), capped));
    // a chain of three tetrahedra
    let mut chain = Triangulation::new(3);
    chain.glue_faces(0, 3, 1, [0, 2, 1, 3]).unwrap();
    chain.glue_faces(1, 0, 2, [0, 2, 1, 3]).unwrap();
    out.push(("chain3".to_string(), chain));
    let mut closed: Vec<Triangulation> = closed_valid(1);
    closed.extend(closed_valid(2));
    let mut even = closed.iter().filter(|t| has_even_interior(&derive(t)));
    let mut odd = closed.iter().filter(|t| !has_even_interior(&derive(t)));
    for (k, t) in even.by_ref().take(2).enumerate() {
        out.push((format!("closed-even-{k}"), t.clone()));
    }
    for (k, t) in odd.by_ref().take(2).enumerate() {
        out.push((format!("closed-odd-{k}"), t.clone()));
    }
    for (name, t) in &out {
        assert!(derive(t).all_valid(), "{name} has an invalid edge");
    }
    out
}

/// Per-tetrahedron triples satisfying the tetrahedron equations, found by scanning R^3.
pub fn valid_triples(r: &Ring) -> Vec<[thurston_finite::Elem; 3]> {
    let els = r.elements();
    let mut out = vec![];
    for &a in &els {
        for &b in &els {
            for &c in &els {
                let v = [a, b, c];
                if (0..3).all(|m| r.mul(v[(m + 1) % 3], r.sub(r.one(), v[m])) == r.one()) {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// Every assignment of valid triples, filtered by the edge equations.
pub fn naive_solutions(tri: &Triangulation, d: &Derived, r: &Ring, triples: &[[thurston_finite::Elem; 3]]) -> Vec<QuadValues> {
    let n = tri.tet_count();
    let mut out = vec![];
    let mut idx = vec![0usize; n];
    if triples.is_empty() && n > 0 {
        return out;
    }
    loop {
        let values: Vec<_> = idx.iter().map(|&i| triples[i]).collect();
        let ok = d.interior_edges().all(|e| {
            r.product(d.quads_facing(e.id).iter().map(|q| values[q.tet][q.m as usize])) == r.one()
        });
        if ok {
            out.push(QuadValues { ring: r.clone(), values });
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            idx[k] += 1;
            if idx[k] < triples.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

pub fn sorted(mut v: Vec<QuadValues>) -> Vec<Vec<[thurston_finite::Elem; 3]>> {
    let mut out: Vec<_> = v.drain(..).map(|s| s.values).collect();
    out.sort();
    out
}

/// Rings with at most 9 elements (one modulus per field size, both cubics over F2).
pub const SMALL_RINGS: [&str; 12] = [
    "Z/2", "Z/3", "Z/4", "Z/5", "Z/6", "Z/7", "Z/8", "Z/9", "F:2:2:1,1,1", "F:2:3:1,1,0,1", "F:2:3:1,0,1,1",
    "F:3:2:1,0,1",
];
