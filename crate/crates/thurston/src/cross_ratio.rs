//! Skew form, cross ratio, the projective line PR^1 and PGL(2,R) over a finite ring.

use thiserror::Error;

use crate::ring::{Elem, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossRatioError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("FormNotUnit: <A,B> is not a unit")]
    FormNotUnit,
    #[error("NotAdmissible: {0}")]
    NotAdmissible(String),
}

/// Column vector (a, b).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub a: Elem,
    pub b: Elem,
}

impl Vec2 {
    pub fn new(a: Elem, b: Elem) -> Vec2 {
        Vec2 { a, b }
    }

    pub fn ints(r: &Ring, a: i64, b: i64) -> Vec2 {
        Vec2 { a: r.from_int(a), b: r.from_int(b) }
    }

    pub fn scale(self, r: &Ring, k: Elem) -> Vec2 {
        Vec2 { a: r.mul(k, self.a), b: r.mul(k, self.b) }
    }

    pub fn add(self, r: &Ring, o: Vec2) -> Vec2 {
        Vec2 { a: r.add(self.a, o.a), b: r.add(self.b, o.b) }
    }

    pub fn show(&self, r: &Ring) -> String {
        format!("({}, {})", r.show(self.a), r.show(self.b))
    }
}

/// The matrix [[a, c], [b, d]].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: Elem,
    pub c: Elem,
    pub b: Elem,
    pub d: Elem,
}

impl Mat2 {
    /// Rows `[[a, c], [b, d]]`.
    pub fn new(a: Elem, c: Elem, b: Elem, d: Elem) -> Mat2 {
        Mat2 { a, c, b, d }
    }

    pub fn ints(r: &Ring, rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2::new(r.from_int(rows[0][0]), r.from_int(rows[0][1]), r.from_int(rows[1][0]), r.from_int(rows[1][1]))
    }

    pub fn identity(r: &Ring) -> Mat2 {
        Mat2::scalar(r, r.one())
    }

    pub fn scalar(r: &Ring, k: Elem) -> Mat2 {
        Mat2::new(k, r.zero(), r.zero(), k)
    }

    /// Matrix with the given columns.
    pub fn from_cols(u: Vec2, v: Vec2) -> Mat2 {
        Mat2::new(u.a, v.a, u.b, v.b)
    }

    pub fn det(&self, r: &Ring) -> Elem {
        r.sub(r.mul(self.a, self.d), r.mul(self.b, self.c))
    }

    pub fn adjugate(&self, r: &Ring) -> Mat2 {
        Mat2::new(self.d, r.neg(self.c), r.neg(self.b), self.a)
    }

    pub fn mul(&self, r: &Ring, o: &Mat2) -> Mat2 {
        Mat2::new(
            r.add(r.mul(self.a, o.a), r.mul(self.c, o.b)),
            r.add(r.mul(self.a, o.c), r.mul(self.c, o.d)),
            r.add(r.mul(self.b, o.a), r.mul(self.d, o.b)),
            r.add(r.mul(self.b, o.c), r.mul(self.d, o.d)),
        )
    }

    pub fn apply(&self, r: &Ring, v: Vec2) -> Vec2 {
        Vec2::new(
            r.add(r.mul(self.a, v.a), r.mul(self.c, v.b)),
            r.add(r.mul(self.b, v.a), r.mul(self.d, v.b)),
        )
    }

    pub fn scale(&self, r: &Ring, k: Elem) -> Mat2 {
        Mat2::new(r.mul(k, self.a), r.mul(k, self.c), r.mul(k, self.b), r.mul(k, self.d))
    }

    pub fn inverse(&self, r: &Ring) -> Result<Mat2, RingError> {
        let di = r.inverse(self.det(r))?;
        Ok(self.adjugate(r).scale(r, di))
    }

    pub fn is_scalar(&self, r: &Ring) -> bool {
        self.b == r.zero() && self.c == r.zero() && self.a == self.d
    }

    pub fn show(&self, r: &Ring) -> String {
        format!(
            "[[{}, {}], [{}, {}]]",
            r.show(self.a),
            r.show(self.c),
            r.show(self.b),
            r.show(self.d)
        )
    }
}

/// `<A, B> = ad - bc`.
pub fn form(r: &Ring, x: Vec2, y: Vec2) -> Result<Elem, RingError> {
    let ad = r.try_mul(x.a, y.b)?;
    let bc = r.try_mul(x.b, y.a)?;
    r.try_sub(ad, bc)
}

fn f(r: &Ring, x: Vec2, y: Vec2) -> Elem {
    form(r, x, y).unwrap_or_else(|e| panic!("{e}"))
}

/// `R_{ijkl} = <A_i, A_j><A_k, A_l>` over a 1-based list.
pub fn r_symbol(r: &Ring, pts: &[Vec2; 4], i: usize, j: usize, k: usize, l: usize) -> Elem {
    r.mul(f(r, pts[i - 1], pts[j - 1]), f(r, pts[k - 1], pts[l - 1]))
}

/// `(A1, A2; A3, A4) = (R_1423, R_1324)`.
pub fn cross_ratio(r: &Ring, a1: Vec2, a2: Vec2, a3: Vec2, a4: Vec2) -> Result<Vec2, RingError> {
    let first = r.try_mul(form(r, a1, a4)?, form(r, a2, a3)?)?;
    let second = r.try_mul(form(r, a1, a3)?, form(r, a2, a4)?)?;
    Ok(Vec2::new(first, second))
}

pub fn is_admissible(r: &Ring, pts: &[Vec2]) -> bool {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            match form(r, pts[i], pts[j]) {
                Ok(x) if r.is_unit(x) => {}
                _ => return false,
            }
        }
    }
    true
}

/// X with `X A = (1,0)` and `X B = (0,1)`.
pub fn normalize_pair(r: &Ring, x: Vec2, y: Vec2) -> Result<Mat2, CrossRatioError> {
    let w = form(r, x, y)?;
    let wi = r.inverse(w).map_err(|_| CrossRatioError::FormNotUnit)?;
    Ok(Mat2::new(y.b, r.neg(y.a), r.neg(x.b), x.a).scale(r, wi))
}

/// Whether `{A1..A4}` is admissible for the target `v = (c1, c2)`, given an admissible triple.
pub fn target_admissible(r: &Ring, v: Vec2) -> bool {
    r.is_unit(v.a) && r.is_unit(v.b) && r.is_unit(r.sub(v.a, v.b))
}

/// The unique A4 with `(A1, A2; A3, A4) = v`, for an admissible triple.
pub fn fourth_point(r: &Ring, a1: Vec2, a2: Vec2, a3: Vec2, v: Vec2) -> Result<Vec2, CrossRatioError> {
    if !is_admissible(r, &[a1, a2, a3]) {
        return Err(CrossRatioError::NotAdmissible("triple is not admissible".into()));
    }
    let x = normalize_pair(r, a1, a2)?;
    let n3 = x.apply(r, a3);
    // the cross ratio scales by det(X)^2 = <A1,A2>^-2
    let w = f(r, a1, a2);
    let w2i = r.inverse(r.mul(w, w))?;
    let (c1, c2) = (r.mul(v.a, w2i), r.mul(v.b, w2i));
    let x4 = r.neg(r.div(c2, n3.b)?);
    let y4 = r.neg(r.div(c1, n3.a)?);
    let a4 = x.inverse(r)?.apply(r, Vec2::new(x4, y4));
    assert_eq!(cross_ratio(r, a1, a2, a3, a4).ok(), Some(v), "fourth point fails substitution");
    Ok(a4)
}

/// A point of PR^1, stored by any representative.
#[derive(Debug, Clone, Copy)]
pub struct ProjPoint {
    pub rep: Vec2,
}

impl ProjPoint {
    /// Requires some B with `<A, B>` a unit.
    pub fn new(r: &Ring, rep: Vec2) -> Result<ProjPoint, CrossRatioError> {
        // finite rings have stable rank 1: (a, b) is unimodular iff a + t b is a unit for some t
        let ok = r.elements().into_iter().any(|t| r.is_unit(r.add(rep.a, r.mul(t, rep.b))));
        if ok {
            Ok(ProjPoint { rep })
        } else {
            Err(CrossRatioError::NotAdmissible(format!("{} is not unimodular", rep.show(r))))
        }
    }

    /// Equality up to a unit scalar, by scanning the units.
    pub fn equals(&self, r: &Ring, other: &ProjPoint) -> bool {
        proj_eq(r, self.rep, other.rep)
    }
}

pub fn proj_eq(r: &Ring, x: Vec2, y: Vec2) -> bool {
    r.units().into_iter().any(|l| x.scale(r, l) == y)
}

/// Element of PGL(2,R), stored by a unit-determinant representative.
#[derive(Debug, Clone, Copy)]
pub struct Pgl {
    pub rep: Mat2,
}

impl Pgl {
    pub fn new(r: &Ring, rep: Mat2) -> Result<Pgl, CrossRatioError> {
        if r.is_unit(rep.det(r)) {
            Ok(Pgl { rep })
        } else {
            Err(CrossRatioError::NotAdmissible("determinant is not a unit".into()))
        }
    }

    pub fn identity(r: &Ring) -> Pgl {
        Pgl { rep: Mat2::identity(r) }
    }

    pub fn compose(&self, r: &Ring, other: &Pgl) -> Pgl {
        Pgl { rep: self.rep.mul(r, &other.rep) }
    }

    pub fn inverse(&self, r: &Ring) -> Pgl {
        Pgl { rep: self.rep.adjugate(r) }
    }

    pub fn is_identity(&self, r: &Ring) -> bool {
        self.rep.is_scalar(r)
    }
}

/// `X ~ Y` iff `X adj(Y)` is scalar.
pub fn pgl_equal(r: &Ring, x: &Pgl, y: &Pgl) -> bool {
    x.rep.mul(r, &y.rep.adjugate(r)).is_scalar(r)
}

pub fn apply_pgl(r: &Ring, x: &Pgl, p: &ProjPoint) -> ProjPoint {
    ProjPoint { rep: x.rep.apply(r, p.rep) }
}

/// Matrix sending A1, A2, A3 to multiples of (1,0), (0,1), (1,1).
fn standard_frame(r: &Ring, a: [Vec2; 3]) -> Result<Mat2, CrossRatioError> {
    if !is_admissible(r, &a) {
        return Err(CrossRatioError::NotAdmissible("triple is not admissible".into()));
    }
    let n = normalize_pair(r, a[0], a[1])?;
    let v = n.apply(r, a[2]);
    let d = Mat2::new(r.inverse(v.a)?, r.zero(), r.zero(), r.inverse(v.b)?);
    Ok(d.mul(r, &n))
}

/// The unique class X with `[X A_i] = [B_i]` for i = 1, 2, 3.
pub fn mobius_from_triples(r: &Ring, a: [Vec2; 3], b: [Vec2; 3]) -> Result<Pgl, CrossRatioError> {
    let ma = standard_frame(r, a)?;
    let mb = standard_frame(r, b)?;
    Ok(Pgl { rep: mb.inverse(r)?.mul(r, &ma) })
}
