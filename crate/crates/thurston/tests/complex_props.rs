mod common;

use common::*;
use proptest::prelude::*;
use thurston_finite::complex::{all_perms, derive, is_odd, isomorphic, vertex_links, Perm, Triangulation};
use thurston_finite::equations::solve_thurston;

fn even_perms() -> Vec<Perm> {
    all_perms().into_iter().filter(|p| !is_odd(p)).collect()
}

fn degrees(tri: &Triangulation) -> Vec<(bool, usize)> {
    let mut v: Vec<_> = derive(tri).edges.iter().map(|e| (e.interior, e.degree())).collect();
    v.sort();
    v
}

fn relabelling() -> impl Strategy<Value = (usize, Vec<u32>, Vec<usize>)> {
    (0..corpus().len(), prop::collection::vec(any::<u32>(), 8), prop::collection::vec(0usize..12, 8))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_keeps_the_combinatorics((k, keys, verts) in relabelling()) {
        let (name, tri) = &corpus()[k];
        let n = tri.tet_count();
        // tetrahedron t goes to the rank of keys[t]
        let mut by_key: Vec<usize> = (0..n).collect();
        by_key.sort_by_key(|&t| (keys[t], t));
        let mut tet_map = vec![0; n];
        for (rank, &t) in by_key.iter().enumerate() {
            tet_map[t] = rank;
        }
        let ev = even_perms();
        let maps: Vec<Perm> = verts[..n].iter().map(|&i| ev[i]).collect();
        let moved = tri.relabel(&tet_map, &maps);
        prop_assert!(isomorphic(tri, &moved), "{}", name);
        prop_assert_eq!(degrees(tri), degrees(&moved));
        let r = ring("Z/7");
        let (d0, d1) = (derive(tri), derive(&moved));
        prop_assert_eq!(solve_thurston(tri, &d0, &r, None).len(), solve_thurston(&moved, &d1, &r, None).len());
        prop_assert_eq!(d0.vertices.len(), d1.vertices.len());
    }
}

#[test]
fn json_round_trip() {
    for (name, tri) in corpus() {
        let back = Triangulation::parse(&tri.to_json()).unwrap();
        assert_eq!(back, tri, "{name}");
    }
}

#[test]
fn edge_degrees_sum_to_six_per_tetrahedron() {
    for (name, tri) in corpus() {
        let d = derive(&tri);
        let total: usize = d.edges.iter().map(|e| e.degree()).sum();
        assert_eq!(total, 6 * tri.tet_count(), "{name}");
        for e in &d.edges {
            assert_eq!(d.quads_facing(e.id).len(), e.degree(), "{name}");
        }
    }
}

#[test]
fn closed_corpus_members_have_closed_links() {
    for (name, tri) in corpus().into_iter().filter(|(_, t)| t.is_closed()) {
        let d = derive(&tri);
        assert!(d.edges.iter().all(|e| e.interior), "{name}");
        let links = vertex_links(&tri, &d);
        assert_eq!(links.len(), d.vertices.len(), "{name}");
    }
}

#[test]
fn enumeration_counts() {
    // 4 faces of one tetrahedron: 1 + 6*3 + 3*9 partial matchings
    assert_eq!(all_triangulations(1).len(), 46);
    assert_eq!(closed_triangulations(1).len(), 27);
    assert_eq!(all_triangulations(2).len(), 21820);
    assert_eq!(closed_triangulations(2).len(), 8505);
}
