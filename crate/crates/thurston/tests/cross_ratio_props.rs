use proptest::prelude::*;
use thurston_finite::cross_ratio::{
    apply_pgl, cross_ratio, form, fourth_point, is_admissible, mobius_from_triples, pgl_equal, proj_eq, Mat2, Pgl,
    ProjPoint, Vec2,
};
use thurston_finite::Ring;

fn vec2(r: &Ring, (a, b): (u32, u32)) -> Vec2 {
    Vec2::new(r.elem(a % r.size()), r.elem(b % r.size()))
}

fn mat(r: &Ring, (a, c, b, d): (u32, u32, u32, u32)) -> Mat2 {
    let n = r.size();
    Mat2::new(r.elem(a % n), r.elem(c % n), r.elem(b % n), r.elem(d % n))
}

fn moduli() -> impl Strategy<Value = Ring> {
    prop::sample::select(vec!["Z/5", "Z/7", "Z/12", "Z/15", "Z/25", "F:2:2:1,1,1", "F:3:2:1,0,1"])
        .prop_map(|s| Ring::parse(s).unwrap())
}

type P = (u32, u32);
type M = (u32, u32, u32, u32);

proptest! {
    #[test]
    fn adjugate_gives_determinant(m in any::<M>()) {
        let r = Ring::parse("Z/12").unwrap();
        let x = mat(&r, m);
        prop_assert_eq!(x.mul(&r, &x.adjugate(&r)), Mat2::scalar(&r, x.det(&r)));
        prop_assert_eq!(x.adjugate(&r).mul(&r, &x), Mat2::scalar(&r, x.det(&r)));
    }

    #[test]
    fn determinant_is_multiplicative(r in moduli(), m in any::<M>(), n in any::<M>()) {
        let (x, y) = (mat(&r, m), mat(&r, n));
        prop_assert_eq!(x.mul(&r, &y).det(&r), r.mul(x.det(&r), y.det(&r)));
    }

    #[test]
    fn fourth_point_solves_the_target(r in moduli(), a in any::<[P; 3]>(), v in any::<P>()) {
        let pts = a.map(|p| vec2(&r, p));
        let v = vec2(&r, v);
        prop_assume!(is_admissible(&r, &pts));
        let a4 = fourth_point(&r, pts[0], pts[1], pts[2], v).unwrap();
        prop_assert_eq!(cross_ratio(&r, pts[0], pts[1], pts[2], a4).unwrap(), v);
        let units = r.is_unit(v.a) && r.is_unit(v.b) && r.is_unit(r.sub(v.a, v.b));
        prop_assert_eq!(is_admissible(&r, &[pts[0], pts[1], pts[2], a4]), units);
    }

    #[test]
    fn mobius_maps_triples(r in moduli(), a in any::<[P; 3]>(), m in any::<M>()) {
        let pts = a.map(|p| vec2(&r, p));
        let x = mat(&r, m);
        prop_assume!(is_admissible(&r, &pts) && r.is_unit(x.det(&r)));
        let img = pts.map(|p| x.apply(&r, p));
        let g = mobius_from_triples(&r, pts, img).unwrap();
        prop_assert!(pgl_equal(&r, &g, &Pgl::new(&r, x).unwrap()));
        for (p, q) in pts.iter().zip(img.iter()) {
            let mapped = apply_pgl(&r, &g, &ProjPoint::new(&r, *p).unwrap());
            prop_assert!(proj_eq(&r, mapped.rep, *q));
        }
    }

    #[test]
    fn pgl_group_laws(r in moduli(), m in any::<M>(), n in any::<M>()) {
        let (x, y) = (mat(&r, m), mat(&r, n));
        prop_assume!(r.is_unit(x.det(&r)) && r.is_unit(y.det(&r)));
        let (gx, gy) = (Pgl::new(&r, x).unwrap(), Pgl::new(&r, y).unwrap());
        prop_assert!(gx.compose(&r, &gx.inverse(&r)).is_identity(&r));
        let lhs = gx.compose(&r, &gy).inverse(&r);
        let rhs = gy.inverse(&r).compose(&r, &gx.inverse(&r));
        prop_assert!(pgl_equal(&r, &lhs, &rhs));
        let k = r.units()[(m.0 as usize) % r.units().len()];
        prop_assert!(pgl_equal(&r, &gx, &Pgl::new(&r, x.scale(&r, k)).unwrap()));
    }

    #[test]
    fn form_is_alternating_and_bilinear(r in moduli(), a in any::<P>(), b in any::<P>(), c in any::<P>(), k in any::<u32>()) {
        let (a, b, c) = (vec2(&r, a), vec2(&r, b), vec2(&r, c));
        let k = r.elem(k % r.size());
        prop_assert_eq!(form(&r, a, a).unwrap(), r.zero());
        prop_assert_eq!(form(&r, a.add(&r, b), c).unwrap(), r.add(form(&r, a, c).unwrap(), form(&r, b, c).unwrap()));
        prop_assert_eq!(form(&r, a.scale(&r, k), c).unwrap(), r.mul(k, form(&r, a, c).unwrap()));
    }
}
