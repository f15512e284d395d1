mod common;

use common::*;
use proptest::prelude::*;
use thurston_finite::complex::{build_t021, build_t33, derive, isomorphic};
use thurston_finite::equations::{edge_holonomies, solve_thurston, tet_completion, verify_thurston, QuadValues};
use thurston_finite::pachner::{
    apply_0_2, apply_2_3, apply_3_2, extend_solution_0_2, same_solution_up_to_isomorphism, transfer_solution_2to3,
    transfer_solution_3to2, verify_holonomy_preservation, PachnerError, Variant02,
};

#[test]
fn two_three_then_three_two_is_the_identity_on_triangulations() {
    let mut sites = 0;
    for (name, tri) in corpus() {
        for t in 0..tri.tet_count() {
            for f in 0..4u8 {
                let mv = match apply_2_3(&tri, t, f) {
                    Ok(mv) => mv,
                    Err(PachnerError::InvalidSite(_)) => continue,
                    Err(e) => panic!("{name} {t}.{f}: {e}"),
                };
                assert_eq!(mv.tri.tet_count(), tri.tet_count() + 1);
                let d = derive(&mv.tri);
                assert!(d.all_valid(), "{name} {t}.{f}");
                assert_eq!(d.edges.len(), derive(&tri).edges.len() + 1, "{name} {t}.{f}");
                assert_eq!(d.edges[mv.e0].degree(), 3);
                let back = apply_3_2(&mv.tri, mv.e0).unwrap();
                assert!(isomorphic(&back.tri, &tri), "{name} {t}.{f}");
                sites += 1;
            }
        }
    }
    assert!(sites > 0);
}

#[test]
fn three_two_at_every_degree_three_edge() {
    let mut moves = 0;
    for (name, tri) in corpus() {
        let d = derive(&tri);
        for e in d.interior_edges().filter(|e| e.degree() == 3) {
            let Ok(mv) = apply_3_2(&tri, e.id) else { continue };
            let again = apply_2_3(&mv.tri, mv.plus, mv.face).unwrap();
            assert!(isomorphic(&again.tri, &tri), "{name} edge {}", e.id);
            for s in solve_thurston(&tri, &d, &ring("Z/7"), None) {
                let down = transfer_solution_3to2(&tri, &s, &mv).unwrap();
                let up = transfer_solution_2to3(&mv.tri, &down, &again).unwrap();
                assert!(same_solution_up_to_isomorphism(&tri, &s, &again.tri, &up), "{name}");
            }
            moves += 1;
        }
    }
    assert!(moves > 0);
}

#[test]
fn zero_two_blocks_everywhere() {
    let r = ring("Z/7");
    let mut attached = 0;
    for (name, tri) in corpus() {
        let d = derive(&tri);
        let Some(sol) = solve_thurston(&tri, &d, &r, Some(1)).pop() else { continue };
        for variant in [Variant02::Two, Variant02::Three] {
            for t in 0..tri.tet_count() {
                for f in 0..4u8 {
                    let mv = match apply_0_2(&tri, variant, t, f) {
                        Ok(mv) => mv,
                        Err(PachnerError::InvalidSite(_)) => continue,
                        Err(e) => panic!("{name} {variant:?} {t}.{f}: {e}"),
                    };
                    assert_eq!(mv.tri.tet_count(), tri.tet_count() + 2);
                    let d2 = derive(&mv.tri);
                    for s in r.shapes() {
                        let ext = extend_solution_0_2(&tri, &sol, &mv, s).unwrap();
                        assert!(verify_thurston(&mv.tri, &d2, &ext).unwrap().ok, "{name} {variant:?} {t}.{f}");
                        let rep = verify_holonomy_preservation((&tri, &sol), (&mv.tri, &ext), &mv.corr).unwrap();
                        assert!(rep.ok, "{name} {variant:?} {t}.{f}: {rep:?}");
                        // the block's own quads are reciprocal across the shared faces
                        let (qp, qm) = (mv.block.quad("q1+"), mv.block.quad("q1-"));
                        assert_eq!(r.mul(ext.get(qp), ext.get(qm)), r.one());
                    }
                    attached += 1;
                }
            }
        }
    }
    assert!(attached > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t021_transfer_matches_the_formulas(spec in prop::sample::select(vec!["Z/5", "Z/7", "Z/9", "Z/13", "F:2:3:1,1,0,1"]), i in 0usize..64, j in 0usize..64) {
        let r = ring(spec);
        let sh = r.shapes();
        let (x, y) = (sh[i % sh.len()], sh[j % sh.len()]);
        let f = build_t021();
        let mut sol = QuadValues { ring: r.clone(), values: vec![[r.zero(); 3]; 2] };
        let (xp, yp) = (tet_completion(&r, x).unwrap(), tet_completion(&r, y).unwrap());
        for k in 0..3 {
            sol.set(f.quad("q1+").succ_n(k), xp[k]);
            sol.set(f.quad("q1-").succ_n(k), yp[k]);
        }
        let mv = apply_2_3(&f.tri, 0, 3).unwrap();
        prop_assert!(isomorphic(&mv.tri, &build_t33().tri));
        match transfer_solution_2to3(&f.tri, &sol, &mv) {
            Ok(up) => {
                for k in 0..3 {
                    let u = r.mul(sol.get(mv.site.x[k]), sol.get(mv.site.y[k]));
                    prop_assert_eq!(up.get(mv.a[k]), u);
                }
                let w = edge_holonomies(&derive(&mv.tri), &up);
                prop_assert_eq!(w[mv.e0], r.one());
                prop_assert!(verify_holonomy_preservation((&f.tri, &sol), (&mv.tri, &up), &mv.corr).unwrap().ok);
            }
            Err(PachnerError::NotInLocalization(_)) => {
                let bad = (0..3).any(|k| {
                    let u = r.mul(sol.get(mv.site.x[k]), sol.get(mv.site.y[k]));
                    !r.is_shape(u)
                });
                prop_assert!(bad);
            }
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}
