//! Command-line front end. Human-readable text goes to stdout; structured
//! documents go to `--out` paths (or stdout when no path is given).
//!
//! Exit codes: 0 success, 1 a semantically negative answer (no solution,
//! nontrivial monodromy, failed verification, localization failure), 2 bad input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::complex::{derive, fixture, vertex_links, Triangulation, FIXTURE_NAMES};
use crate::cross_ratio::Pgl;
use crate::developing::{edge_monodromy_trivial, holonomy_of_loop, seed_labeling, DualPath};
use crate::equations::{
    even_degree_criterion, hte_to_thurston, solution_from_json, solution_to_json, solve_thurston_parallel,
    thurston_to_hte, thurston_to_hte_unchecked, verify_hte, verify_thurston, EqError, Kind, QuadValues,
};
use crate::pachner::{
    apply_0_2, apply_2_3, apply_3_2, extend_solution_0_2, transfer_solution_2to3, transfer_solution_3to2,
    verify_holonomy_preservation, Correspondence, PachnerError, Variant02,
};
use crate::ring::Ring;

#[derive(Parser, Debug)]
#[command(name = "thurston", about = "Thurston's gluing equation over finite commutative rings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse and check a triangulation file.
    Validate { tri: PathBuf },
    /// Edge, vertex and degree summary.
    Stats {
        tri: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the shape set of a ring.
    Shapes {
        #[arg(long)]
        ring: String,
    },
    /// Solve Thurston's equation by exhaustive search.
    Solve {
        tri: PathBuf,
        #[arg(long)]
        ring: String,
        /// Stop after this many solutions.
        #[arg(long)]
        limit: Option<usize>,
        /// Return every solution.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a solution file against a triangulation.
    Verify { tri: PathBuf, sol: PathBuf },
    /// Convert between Thurston and HTE solutions.
    Convert {
        tri: PathBuf,
        sol: PathBuf,
        #[arg(long, value_enum)]
        to: Target,
        /// Base quad per tetrahedron for the Thurston -> HTE direction, e.g. "0,2,1".
        #[arg(long)]
        base: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Holonomy of a closed dual path.
    Holonomy {
        tri: PathBuf,
        sol: PathBuf,
        /// Steps "tet.face,tet.face,..."; empty for the trivial loop at tetrahedron 0.
        #[arg(long = "loop", allow_hyphen_values = true)]
        path: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Developing-map monodromy around every interior edge.
    Monodromy { tri: PathBuf, sol: PathBuf },
    /// Apply a Pachner move, optionally transferring a solution.
    Pachner {
        tri: PathBuf,
        sol: Option<PathBuf>,
        #[arg(long = "move", value_enum)]
        mv: MoveKind,
        /// Face "tet.face" (2-3 and 0-2 moves).
        #[arg(long)]
        face: Option<String>,
        /// Edge id (3-2 move).
        #[arg(long)]
        edge: Option<usize>,
        /// Shape of the attached block (0-2 moves); defaults to the first shape of the ring.
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sol_out: Option<PathBuf>,
        #[arg(long)]
        report_out: Option<PathBuf>,
    },
    /// Emit a built-in triangulation, or list them.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Hte,
    Thurston,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    #[value(name = "2-3")]
    TwoThree,
    #[value(name = "3-2")]
    ThreeTwo,
    #[value(name = "0-2_2")]
    ZeroTwo2,
    #[value(name = "0-2_3")]
    ZeroTwo3,
}

struct Fail {
    code: i32,
    msg: String,
}

fn input<E: std::fmt::Display>(e: E) -> Fail {
    Fail { code: 2, msg: e.to_string() }
}

fn negative(msg: impl Into<String>) -> Fail {
    Fail { code: 1, msg: msg.into() }
}

type Res = Result<(), Fail>;

fn read(path: &Path) -> Result<String, Fail> {
    std::fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_tri(path: &Path) -> Result<Triangulation, Fail> {
    Triangulation::parse(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn read_sol(path: &Path, tri: &Triangulation) -> Result<(Kind, QuadValues), Fail> {
    let (kind, sol) = solution_from_json(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if sol.values.len() != tri.tet_count() {
        return Err(input(EqError::MissingQuadValue(format!(
            "{} tetrahedra but values for {}",
            tri.tet_count(),
            sol.values.len()
        ))));
    }
    Ok((kind, sol))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, doc: &str) -> Res {
    match path {
        Some(p) => std::fs::write(p, format!("{doc}\n")).map_err(|e| input(format!("{}: {e}", p.display()))),
        None => writeln!(out, "{doc}").map_err(input),
    }
}

fn parse_face(s: &str) -> Result<(usize, u8), Fail> {
    let bad = || input(format!("bad face '{s}', expected <tet>.<face>"));
    let (t, f) = s.split_once('.').ok_or_else(bad)?;
    let t = t.trim().parse().map_err(|_| bad())?;
    let f: u8 = f.trim().parse().map_err(|_| bad())?;
    if f > 3 {
        return Err(bad());
    }
    Ok((t, f))
}

/// Thurston solutions are turned into HTE data with base quad 0.
fn as_hte(tri: &Triangulation, kind: Kind, sol: QuadValues) -> Result<QuadValues, Fail> {
    match kind {
        Kind::Hte => Ok(sol),
        Kind::Thurston => {
            let rep = verify_thurston(tri, &derive(tri), &sol).map_err(input)?;
            if !rep.tet_failures.is_empty() {
                return Err(input(EqError::InvalidSolution(format!("tetrahedra {:?}", rep.tet_failures))));
            }
            Ok(thurston_to_hte_unchecked(&sol, &vec![0; tri.tet_count()]))
        }
    }
}

fn show_pgl(r: &Ring, m: &Pgl) -> String {
    let x = m.rep;
    format!("[[{},{}],[{},{}]]", r.show(x.a), r.show(x.c), r.show(x.b), r.show(x.d))
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(f) => {
            if !f.msg.is_empty() {
                let _ = writeln!(err, "{}", f.msg);
            }
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Res {
    match cmd {
        Command::Validate { tri } => {
            let t = read_tri(&tri)?;
            writeln!(
                out,
                "valid: tets={} gluings={} boundary_faces={} closed={}",
                t.tet_count(),
                t.gluings().len(),
                t.boundary_faces().len(),
                t.is_closed()
            )
            .map_err(input)
        }
        Command::Stats { tri, out: path } => stats(&read_tri(&tri)?, out, path.as_deref()),
        Command::Shapes { ring } => {
            let r = Ring::parse(&ring).map_err(input)?;
            let s: Vec<String> = r.shapes().into_iter().map(|x| r.show(x)).collect();
            writeln!(out, "{}", s.join(" ")).map_err(input)
        }
        Command::Solve { tri, ring, limit, all, jobs, out: path } => {
            let t = read_tri(&tri)?;
            let r = Ring::parse(&ring).map_err(input)?;
            let d = derive(&t);
            let cap = if all { limit } else { Some(limit.unwrap_or(1)) };
            let sols = solve_thurston_parallel(&t, &d, &r, cap, jobs.max(1));
            if sols.is_empty() {
                writeln!(out, "no solution over {}", r.spec()).map_err(input)?;
                return Err(negative(""));
            }
            let docs: Vec<String> = sols.iter().map(|s| solution_to_json(Kind::Thurston, s)).collect();
            match path {
                None => {
                    for doc in &docs {
                        writeln!(out, "{doc}").map_err(input)?;
                    }
                    Ok(())
                }
                Some(p) => {
                    writeln!(out, "found {} solution(s)", docs.len()).map_err(input)?;
                    let doc = if all || limit.is_some() { format!("[{}]", docs.join(",")) } else { docs[0].clone() };
                    emit(out, Some(&p), &doc)
                }
            }
        }
        Command::Verify { tri, sol } => {
            let t = read_tri(&tri)?;
            let (kind, s) = read_sol(&sol, &t)?;
            let d = derive(&t);
            let r = s.ring.clone();
            let ok = match kind {
                Kind::Thurston => {
                    let rep = verify_thurston(&t, &d, &s).map_err(input)?;
                    for tf in &rep.tet_failures {
                        writeln!(out, "tetrahedron {tf}: tetrahedron equation fails").map_err(input)?;
                    }
                    for (e, w) in &rep.edge_failures {
                        writeln!(out, "edge {e}: W = {}", r.show(*w)).map_err(input)?;
                    }
                    rep.ok
                }
                Kind::Hte => {
                    let rep = verify_hte(&t, &d, &s).map_err(input)?;
                    for tf in &rep.tet_failures {
                        writeln!(out, "tetrahedron {tf}: values do not sum to zero").map_err(input)?;
                    }
                    for (e, u) in rep.edge_defects.iter().filter(|(_, u)| *u != r.zero()) {
                        writeln!(out, "edge {e}: U = {}", r.show(*u)).map_err(input)?;
                    }
                    rep.ok
                }
            };
            writeln!(out, "{}", if ok { "ok" } else { "invalid" }).map_err(input)?;
            if ok {
                Ok(())
            } else {
                Err(negative("solution does not verify"))
            }
        }
        Command::Convert { tri, sol, to, base, out: path } => {
            let t = read_tri(&tri)?;
            let (kind, s) = read_sol(&sol, &t)?;
            let d = derive(&t);
            let (k, converted) = match (kind, to) {
                (Kind::Thurston, Target::Hte) => {
                    let base: Vec<u8> = match base {
                        None => vec![0; t.tet_count()],
                        Some(b) => b
                            .split(',')
                            .map(|x| x.trim().parse::<u8>().ok().filter(|&m| m < 3))
                            .collect::<Option<Vec<_>>>()
                            .filter(|v| v.len() == t.tet_count())
                            .ok_or_else(|| input(format!("bad --base '{b}'")))?,
                    };
                    (Kind::Hte, thurston_to_hte(&t, &d, &s, &base).map_err(input)?)
                }
                (Kind::Hte, Target::Thurston) => (Kind::Thurston, hte_to_thurston(&t, &d, &s).map_err(input)?),
                (k, _) => (k, s),
            };
            emit(out, path.as_deref(), &solution_to_json(k, &converted))
        }
        Command::Holonomy { tri, sol, path, out: opath } => {
            let t = read_tri(&tri)?;
            let (kind, s) = read_sol(&sol, &t)?;
            let z = as_hte(&t, kind, s)?;
            let steps = if path.trim().is_empty() {
                vec![]
            } else {
                path.split(',').map(parse_face).collect::<Result<Vec<_>, _>>()?
            };
            let p = if steps.is_empty() {
                DualPath::new(&t, 0, &[]).map_err(input)?
            } else {
                DualPath::from_steps(&t, &steps).map_err(input)?
            };
            let init = seed_labeling(&t, &z, p.start()).map_err(input)?;
            let rho = holonomy_of_loop(&t, &z, &p, &init).map_err(input)?;
            let r = &z.ring;
            let id = rho.is_identity(r);
            writeln!(out, "holonomy {} identity={id}", show_pgl(r, &rho)).map_err(input)?;
            if let Some(op) = opath {
                let doc = serde_json::json!({
                    "ring": r.spec(),
                    "matrix": [[r.to_json(rho.rep.a), r.to_json(rho.rep.c)], [r.to_json(rho.rep.b), r.to_json(rho.rep.d)]],
                    "identity": id,
                });
                emit(out, Some(&op), &doc.to_string())?;
            }
            Ok(())
        }
        Command::Monodromy { tri, sol } => {
            let t = read_tri(&tri)?;
            let (kind, s) = read_sol(&sol, &t)?;
            let z = as_hte(&t, kind, s)?;
            let d = derive(&t);
            let mut all = true;
            for e in d.interior_edges() {
                let ok = edge_monodromy_trivial(&t, &d, &z, e.id).map_err(input)?;
                all &= ok;
                writeln!(out, "e{}: {}", e.id, if ok { "trivial" } else { "nontrivial" }).map_err(input)?;
            }
            if all {
                Ok(())
            } else {
                Err(negative("nontrivial monodromy"))
            }
        }
        Command::Pachner { tri, sol, mv, face, edge, shape, out: path, sol_out, report_out } => {
            pachner(out, &read_tri(&tri)?, sol.as_deref(), mv, face, edge, shape, path, sol_out, report_out)
        }
        Command::Fixtures { name, out: path } => match name {
            None => writeln!(out, "{}", FIXTURE_NAMES.join(" ")).map_err(input),
            Some(n) => {
                let f = fixture(&n).ok_or_else(|| input(format!("unknown fixture '{n}'")))?;
                emit(out, path.as_deref(), &f.tri.to_json())
            }
        },
    }
}

fn stats(t: &Triangulation, out: &mut dyn Write, path: Option<&Path>) -> Res {
    let d = derive(t);
    let interior: Vec<_> = d.interior_edges().collect();
    let mut line = format!("tets={} interior_edges={}", t.tet_count(), interior.len());
    for e in &interior {
        line.push_str(&format!(" degree(e{})={}", e.id, e.degree()));
    }
    writeln!(out, "{line}").map_err(input)?;
    let boundary: Vec<String> = d.edges.iter().filter(|e| !e.interior).map(|e| format!("e{}:{}", e.id, e.degree())).collect();
    writeln!(out, "boundary_edges={} {}", boundary.len(), boundary.join(" ")).map_err(input)?;
    let invalid: Vec<String> = d.edges.iter().filter(|e| !e.valid).map(|e| format!("e{}", e.id)).collect();
    if !invalid.is_empty() {
        writeln!(out, "invalid_edges: {}", invalid.join(" ")).map_err(input)?;
    }
    let links = vertex_links(t, &d);
    let vs: Vec<String> = links
        .iter()
        .map(|l| format!("v{}:chi={}{}", l.vertex_class, l.euler_characteristic, if l.closed { "" } else { ",open" }))
        .collect();
    writeln!(out, "vertices={} {}", d.vertices.len(), vs.join(" ")).map_err(input)?;
    let even = even_degree_criterion(&d);
    writeln!(out, "F3-criterion: {}", if even { "solvable" } else { "unsolvable" }).map_err(input)?;
    if let Some(p) = path {
        let doc = serde_json::json!({
            "tetrahedra": t.tet_count(),
            "closed": t.is_closed(),
            "edges": d.edges.iter().map(|e| serde_json::json!({
                "id": e.id, "degree": e.degree(), "interior": e.interior, "valid": e.valid,
            })).collect::<Vec<_>>(),
            "vertices": links.iter().map(|l| serde_json::json!({
                "id": l.vertex_class, "euler_characteristic": l.euler_characteristic, "closed": l.closed,
            })).collect::<Vec<_>>(),
            "even_degree": even,
        });
        emit(out, Some(p), &doc.to_string())?;
    }
    Ok(())
}

fn pachner_err(e: PachnerError) -> Fail {
    match e {
        PachnerError::NotInLocalization(_) => negative(e.to_string()),
        _ => input(e),
    }
}

#[allow(clippy::too_many_arguments)]
fn pachner(
    out: &mut dyn Write,
    t: &Triangulation,
    sol: Option<&Path>,
    mv: MoveKind,
    face: Option<String>,
    edge: Option<usize>,
    shape: Option<String>,
    path: Option<PathBuf>,
    sol_out: Option<PathBuf>,
    report_out: Option<PathBuf>,
) -> Res {
    let need_face = || -> Result<(usize, u8), Fail> {
        parse_face(face.as_deref().ok_or_else(|| input("this move needs --face <tet>.<face>"))?)
    };
    let sol = match sol {
        Some(p) => {
            let (kind, s) = read_sol(p, t)?;
            if kind != Kind::Thurston {
                return Err(input("solution transfer needs a Thurston solution"));
            }
            Some(s)
        }
        None => None,
    };
    let (new_tri, corr, transferred): (Triangulation, Correspondence, Option<QuadValues>) = match mv {
        MoveKind::TwoThree => {
            let (tt, f) = need_face()?;
            let m = apply_2_3(t, tt, f).map_err(pachner_err)?;
            let s2 = sol.as_ref().map(|s| transfer_solution_2to3(t, s, &m)).transpose().map_err(pachner_err)?;
            (m.tri, m.corr, s2)
        }
        MoveKind::ThreeTwo => {
            let e = edge.ok_or_else(|| input("3-2 needs --edge <id>"))?;
            let m = apply_3_2(t, e).map_err(pachner_err)?;
            let s2 = sol.as_ref().map(|s| transfer_solution_3to2(t, s, &m)).transpose().map_err(pachner_err)?;
            (m.tri, m.corr, s2)
        }
        MoveKind::ZeroTwo2 | MoveKind::ZeroTwo3 => {
            let (tt, f) = need_face()?;
            let variant = if mv == MoveKind::ZeroTwo2 { Variant02::Two } else { Variant02::Three };
            let m = apply_0_2(t, variant, tt, f).map_err(pachner_err)?;
            let s2 = match &sol {
                None => None,
                Some(s) => {
                    let r = &s.ring;
                    let x = match &shape {
                        Some(v) => r.parse_elem(v).map_err(input)?,
                        None => *r.shapes().first().ok_or_else(|| negative(format!("{} has no shapes", r.spec())))?,
                    };
                    Some(extend_solution_0_2(t, s, &m, x).map_err(pachner_err)?)
                }
            };
            (m.tri, m.corr, s2)
        }
    };
    let d = derive(&new_tri);
    writeln!(
        out,
        "tets={} interior_edges={}",
        new_tri.tet_count(),
        d.interior_edges().count()
    )
    .map_err(input)?;
    emit(out, path.as_deref(), &new_tri.to_json())?;
    if let (Some(s), Some(s2)) = (sol, transferred) {
        let rep = verify_holonomy_preservation((t, &s), (&new_tri, &s2), &corr).map_err(pachner_err)?;
        let valid = verify_thurston(&new_tri, &d, &s2).map_err(input)?.ok;
        writeln!(out, "transferred solution valid={valid} holonomies_preserved={}", rep.ok).map_err(input)?;
        emit(out, sol_out.as_deref(), &solution_to_json(Kind::Thurston, &s2))?;
        emit(out, report_out.as_deref(), &serde_json::to_string(&rep).expect("serializable"))?;
        if !(valid && rep.ok) {
            return Err(negative("transfer failed verification"));
        }
    }
    Ok(())
}
