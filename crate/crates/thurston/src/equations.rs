//! Thurston's gluing equation and the homogeneous variant (HTE): verification,
//! exhaustive solving, conversions between the two, and edge holonomies.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{Derived, Quad, Triangulation};
use crate::cross_ratio::{cross_ratio, Vec2};
use crate::ring::{Elem, Ring, RingError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqError {
    #[error("NotAShape: {0}")]
    NotAShape(String),
    #[error("MissingQuadValue: {0}")]
    MissingQuadValue(String),
    #[error("InvalidSolution: {0}")]
    InvalidSolution(String),
    #[error("NonUnitValue: {0}")]
    NonUnitValue(String),
    #[error("NotAnHTESolution: {0}")]
    NotAnHTESolution(String),
    #[error("SyntaxError: {0}")]
    SyntaxError(String),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Vertex order (t1, t2, t3, t4) used for the cross ratio of quad `m`: the quad
/// separates {t1, t2} from {t3, t4}, and with this table the companion identity
/// `y(q) = -z(q')` holds for the successor `m -> m+1`.
pub const QUAD_VERTEX_ORDER: [[u8; 4]; 3] = [[0, 1, 3, 2], [0, 2, 1, 3], [0, 3, 2, 1]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Thurston,
    Hte,
}

/// Per-tetrahedron values indexed by quad 0..2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadValues {
    pub ring: Ring,
    pub values: Vec<[Elem; 3]>,
}

impl QuadValues {
    pub fn get(&self, q: Quad) -> Elem {
        self.values[q.tet][q.m as usize]
    }

    pub fn set(&mut self, q: Quad, x: Elem) {
        self.values[q.tet][q.m as usize] = x;
    }

    fn check_shape(&self, tri: &Triangulation) -> Result<(), EqError> {
        if self.values.len() != tri.tet_count() {
            return Err(EqError::MissingQuadValue(format!(
                "{} tetrahedra but values for {}",
                tri.tet_count(),
                self.values.len()
            )));
        }
        if self.values.iter().flatten().any(|&x| !self.ring.contains(x)) {
            return Err(RingError::RingMismatch.into());
        }
        Ok(())
    }
}

/// x(q) per quad.
pub type ThurstonSolution = QuadValues;
/// z(q) per quad.
pub type HteSolution = QuadValues;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ThurstonReport {
    pub ok: bool,
    pub tet_failures: Vec<usize>,
    /// (edge id, W_e) for interior edges with W_e != 1
    pub edge_failures: Vec<(usize, Elem)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HteReport {
    pub ok: bool,
    pub tet_failures: Vec<usize>,
    /// (edge id, U_e) for every interior edge
    pub edge_defects: Vec<(usize, Elem)>,
}

/// `(x, 1/(1-x), (x-1)/x)`.
pub fn tet_completion(r: &Ring, x: Elem) -> Result<[Elem; 3], EqError> {
    if !r.is_shape(x) {
        return Err(EqError::NotAShape(r.show(x)));
    }
    let x1 = r.inverse(r.sub(r.one(), x))?;
    let x2 = r.div(r.sub(x, r.one()), x)?;
    Ok([x, x1, x2])
}

/// Holonomy of every edge (boundary edges included).
pub fn edge_holonomies(d: &Derived, x: &QuadValues) -> Vec<Elem> {
    d.edges.iter().map(|e| x.ring.product(d.quads_facing(e.id).into_iter().map(|q| x.get(q)))).collect()
}

/// W_e from a partial assignment.
pub fn edge_holonomy(
    r: &Ring,
    d: &Derived,
    e: usize,
    get: impl Fn(Quad) -> Option<Elem>,
) -> Result<Elem, EqError> {
    let mut acc = r.one();
    for q in d.quads_facing(e) {
        let v = get(q).ok_or_else(|| EqError::MissingQuadValue(format!("quad {}.{}", q.tet, q.m)))?;
        acc = r.mul(acc, v);
    }
    Ok(acc)
}

pub fn verify_thurston(tri: &Triangulation, d: &Derived, x: &QuadValues) -> Result<ThurstonReport, EqError> {
    x.check_shape(tri)?;
    let r = &x.ring;
    let mut rep = ThurstonReport::default();
    for (t, v) in x.values.iter().enumerate() {
        let ok = (0..3).all(|m| r.mul(v[(m + 1) % 3], r.sub(r.one(), v[m])) == r.one());
        if !ok {
            rep.tet_failures.push(t);
        }
    }
    let w = edge_holonomies(d, x);
    for e in d.interior_edges() {
        if w[e.id] != r.one() {
            rep.edge_failures.push((e.id, w[e.id]));
        }
    }
    rep.ok = rep.tet_failures.is_empty() && rep.edge_failures.is_empty();
    Ok(rep)
}

/// U_e = prod z(q) - prod (-z(q')).
pub fn hte_defect(d: &Derived, z: &QuadValues, e: usize) -> Elem {
    let r = &z.ring;
    let quads = d.quads_facing(e);
    let lhs = r.product(quads.iter().map(|&q| z.get(q)));
    let rhs = r.product(quads.iter().map(|&q| r.neg(z.get(q.succ()))));
    r.sub(lhs, rhs)
}

pub fn verify_hte(tri: &Triangulation, d: &Derived, z: &QuadValues) -> Result<HteReport, EqError> {
    z.check_shape(tri)?;
    let r = &z.ring;
    let mut rep = HteReport::default();
    for (t, v) in z.values.iter().enumerate() {
        if r.add(r.add(v[0], v[1]), v[2]) != r.zero() {
            rep.tet_failures.push(t);
        }
    }
    for e in d.interior_edges() {
        rep.edge_defects.push((e.id, hte_defect(d, z, e.id)));
    }
    rep.ok = rep.tet_failures.is_empty() && rep.edge_defects.iter().all(|&(_, u)| u == r.zero());
    Ok(rep)
}

/// True iff every interior edge has even degree.
pub fn even_degree_criterion(d: &Derived) -> bool {
    d.interior_edges().all(|e| e.degree() % 2 == 0)
}

/// Search order: repeatedly take the tetrahedron sharing the most edge
/// incidences with those already placed; ties go to the lower index.
pub fn tet_order(d: &Derived, n: usize) -> Vec<usize> {
    let mut edge_tets: Vec<Vec<usize>> = vec![vec![]; d.edges.len()];
    let mut tet_edges: Vec<Vec<usize>> = vec![vec![]; n];
    for e in &d.edges {
        for i in &e.incidences {
            edge_tets[e.id].push(i.tet);
            tet_edges[i.tet].push(e.id);
        }
    }
    let mut placed = vec![false; n];
    let mut touched = vec![false; d.edges.len()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |t: usize| tet_edges[t].iter().filter(|&&e| touched[e]).count();
        let best = (0..n)
            .filter(|&t| !placed[t])
            .max_by(|&a, &b| score(a).cmp(&score(b)).then(b.cmp(&a)))
            .expect("unplaced tetrahedron");
        placed[best] = true;
        for &e in &tet_edges[best] {
            touched[e] = true;
        }
        order.push(best);
    }
    order
}

struct Search<'a> {
    r: &'a Ring,
    order: Vec<usize>,
    completions: Vec<[Elem; 3]>,
    // interior edges (as facing quads) to check once depth k is assigned
    checks: Vec<Vec<Vec<Quad>>>,
    n: usize,
}

impl<'a> Search<'a> {
    fn new(tri: &Triangulation, d: &Derived, r: &'a Ring) -> Search<'a> {
        let n = tri.tet_count();
        let order = tet_order(d, n);
        let mut pos = vec![0; n];
        for (k, &t) in order.iter().enumerate() {
            pos[t] = k;
        }
        let mut checks = vec![vec![]; n];
        for e in d.interior_edges() {
            let quads = d.quads_facing(e.id);
            let last = quads.iter().map(|q| pos[q.tet]).max().expect("edge has incidences");
            checks[last].push(quads);
        }
        let completions = r
            .shapes()
            .into_iter()
            .map(|s| tet_completion(r, s).expect("shape"))
            .collect();
        Search { r, order, completions, checks, n }
    }

    fn run(&self, first: Option<usize>, limit: usize, out: &mut Vec<QuadValues>) {
        if self.n == 0 {
            out.push(QuadValues { ring: self.r.clone(), values: vec![] });
            return;
        }
        let mut values = vec![[self.r.zero(); 3]; self.n];
        self.dfs(0, first, &mut values, limit, out);
    }

    fn dfs(&self, k: usize, first: Option<usize>, values: &mut Vec<[Elem; 3]>, limit: usize, out: &mut Vec<QuadValues>) {
        let t = self.order[k];
        let choices: Vec<usize> = match (k, first) {
            (0, Some(i)) => vec![i],
            _ => (0..self.completions.len()).collect(),
        };
        for i in choices {
            if out.len() >= limit {
                return;
            }
            values[t] = self.completions[i];
            let ok = self.checks[k].iter().all(|quads| {
                self.r.product(quads.iter().map(|q| values[q.tet][q.m as usize])) == self.r.one()
            });
            if !ok {
                continue;
            }
            if k + 1 == self.n {
                out.push(QuadValues { ring: self.r.clone(), values: values.clone() });
            } else {
                self.dfs(k + 1, first, values, limit, out);
            }
        }
    }
}

/// All solutions (up to `limit`) by backtracking over one shape per tetrahedron.
pub fn solve_thurston(tri: &Triangulation, d: &Derived, r: &Ring, limit: Option<usize>) -> Vec<ThurstonSolution> {
    let search = Search::new(tri, d, r);
    let mut out = vec![];
    search.run(None, limit.unwrap_or(usize::MAX), &mut out);
    out
}

/// Same result as [`solve_thurston`], with the first tetrahedron's shape
/// choices sharded over `jobs` threads.
pub fn solve_thurston_parallel(
    tri: &Triangulation,
    d: &Derived,
    r: &Ring,
    limit: Option<usize>,
    jobs: usize,
) -> Vec<ThurstonSolution> {
    let search = Search::new(tri, d, r);
    let limit = limit.unwrap_or(usize::MAX);
    let branches = search.completions.len();
    if jobs <= 1 || tri.tet_count() == 0 || branches == 0 {
        let mut out = vec![];
        search.run(None, limit, &mut out);
        return out;
    }
    let mut tagged: Vec<(usize, Vec<QuadValues>)> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|w| {
                let search = &search;
                s.spawn(move || {
                    (w..branches)
                        .step_by(jobs)
                        .map(|b| {
                            let mut out = vec![];
                            search.run(Some(b), limit, &mut out);
                            (b, out)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("solver worker")).collect()
    });
    tagged.sort_by_key(|(b, _)| *b);
    tagged.into_iter().flat_map(|(_, v)| v).take(limit).collect()
}

/// HTE solution with units only: z(q1) = x(q1), z(q2) = -1, z(q3) = 1 - x(q1),
/// where q1 is quad `base[t]` of tetrahedron t.
pub fn thurston_to_hte(
    tri: &Triangulation,
    d: &Derived,
    x: &QuadValues,
    base: &[u8],
) -> Result<HteSolution, EqError> {
    let rep = verify_thurston(tri, d, x)?;
    if !rep.ok {
        return Err(EqError::InvalidSolution(format!(
            "tetrahedra {:?}, edges {:?}",
            rep.tet_failures,
            rep.edge_failures.iter().map(|e| e.0).collect::<Vec<_>>()
        )));
    }
    Ok(thurston_to_hte_unchecked(x, base))
}

/// The same construction without checking that `x` is a solution.
pub fn thurston_to_hte_unchecked(x: &QuadValues, base: &[u8]) -> HteSolution {
    let r = &x.ring;
    let values = x
        .values
        .iter()
        .enumerate()
        .map(|(t, v)| {
            let m = base.get(t).copied().unwrap_or(0) as usize;
            let mut z = [r.zero(); 3];
            z[m] = v[m];
            z[(m + 1) % 3] = r.neg(r.one());
            z[(m + 2) % 3] = r.sub(r.one(), v[m]);
            z
        })
        .collect();
    QuadValues { ring: r.clone(), values }
}

/// x(q) = -z(q) / z(q').
pub fn hte_to_thurston(tri: &Triangulation, d: &Derived, z: &QuadValues) -> Result<ThurstonSolution, EqError> {
    z.check_shape(tri)?;
    let r = &z.ring;
    for (t, v) in z.values.iter().enumerate() {
        if let Some(m) = (0..3).find(|&m| !r.is_unit(v[m])) {
            return Err(EqError::NonUnitValue(format!("z({t}.{m}) = {}", r.show(v[m]))));
        }
    }
    let rep = verify_hte(tri, d, z)?;
    if !rep.ok {
        return Err(EqError::NotAnHTESolution(format!("tetrahedra {:?}", rep.tet_failures)));
    }
    let values = z
        .values
        .iter()
        .map(|v| [0, 1, 2].map(|m| r.neg(r.div(v[m], v[(m + 1) % 3]).expect("unit"))))
        .collect();
    Ok(QuadValues { ring: r.clone(), values })
}

/// `F(q)` for every quad, from one vector per vertex class.
pub fn vertex_vector_cross_ratios(
    tri: &Triangulation,
    d: &Derived,
    r: &Ring,
    f: &[Vec2],
) -> Result<Vec<[Vec2; 3]>, EqError> {
    (0..tri.tet_count())
        .map(|t| {
            let a = [0u8, 1, 2, 3].map(|v| f[d.vertex_of(t, v)]);
            let mut out = [Vec2::new(r.zero(), r.zero()); 3];
            for (m, o) in QUAD_VERTEX_ORDER.iter().enumerate() {
                let p = |i: usize| a[o[i] as usize];
                out[m] = cross_ratio(r, p(0), p(1), p(2), p(3))?;
            }
            Ok(out)
        })
        .collect()
}

/// HTE solution z(q) = first component of F(q).
pub fn hte_from_vertex_vectors(tri: &Triangulation, d: &Derived, r: &Ring, f: &[Vec2]) -> Result<HteSolution, EqError> {
    let crs = vertex_vector_cross_ratios(tri, d, r, f)?;
    Ok(QuadValues { ring: r.clone(), values: crs.iter().map(|c| c.map(|v| v.a)).collect() })
}

/// w(q) = [z(q), -z(q')].
pub fn quad_cross_ratio_target(z: &QuadValues, q: Quad) -> Result<Vec2, EqError> {
    let r = &z.ring;
    let (a, b) = (z.get(q), r.neg(z.get(q.succ())));
    if !r.is_unit(a) || !r.is_unit(b) {
        return Err(EqError::NonUnitValue(format!("quad {}.{}", q.tet, q.m)));
    }
    Ok(Vec2::new(a, b))
}

#[derive(Serialize, Deserialize)]
struct SolutionFile {
    ring: String,
    kind: Kind,
    values: Vec<[serde_json::Value; 3]>,
}

pub fn solution_to_json(kind: Kind, x: &QuadValues) -> String {
    let r = &x.ring;
    let file = SolutionFile {
        ring: r.spec().to_string(),
        kind,
        values: x.values.iter().map(|v| v.map(|e| r.to_json(e))).collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

pub fn solution_from_json(text: &str) -> Result<(Kind, QuadValues), EqError> {
    let file: SolutionFile = serde_json::from_str(text).map_err(|e| EqError::SyntaxError(e.to_string()))?;
    let ring = Ring::parse(&file.ring)?;
    let values = file
        .values
        .iter()
        .map(|v| {
            Ok([ring.from_json(&v[0])?, ring.from_json(&v[1])?, ring.from_json(&v[2])?])
        })
        .collect::<Result<Vec<_>, RingError>>()?;
    Ok((file.kind, QuadValues { ring, values }))
}
