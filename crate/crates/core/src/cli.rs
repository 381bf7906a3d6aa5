//! Command-line front end.
//!
//! Exit codes: 0 success, 1 failed verification or construction check, 2 bad
//! input, 3 oracle size cap exceeded. Errors print one line
//! `error[<kind>]: <message>` on standard error.

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::generators;
use crate::geometry::{PointSet, EPS};
use crate::graph::{classify, is_plane, openness, GraphClass, PlaneGraph};
use crate::io::{read_graph, read_points, write_graph, write_points};
use crate::oracle::{self, OracleLimits};
use crate::trace::ConstructionTrace;
use crate::{bounded_tree, convex_path, general_path, spanning_tree, svg, triangulation};

#[derive(Parser, Debug)]
#[command(name = "opsg", version, about = "Open plane straight-line graphs on point sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the graph file here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write an SVG figure.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw the largest incident angle at each vertex in the SVG.
    #[arg(long)]
    annotate: bool,
    /// Print the construction case trace.
    #[arg(long)]
    trace: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Triangulation in which every vertex has an incident angle of at least 2π/3.
    Triangulate {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 5π/3-open spanning tree.
    Tree {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 3π/2-open spanning tree of maximum degree three.
    Tree3 {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 3π/2-open spanning tree of maximum degree four.
    Tree4 {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 3π/2-open spanning path on a set in convex position.
    PathConvex {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 3π/2-open convex spanning path ending at point I.
    PathConvexFrom {
        points: PathBuf,
        i: usize,
        #[command(flatten)]
        o: Output,
    },
    /// 5π/4-open spanning path.
    Path {
        points: PathBuf,
        #[command(flatten)]
        o: Output,
    },
    /// 5π/4-open spanning path starting at hull vertex I.
    PathFrom {
        points: PathBuf,
        i: usize,
        #[command(flatten)]
        o: Output,
    },
    /// 5π/4-open spanning path starting with hull edge I J.
    PathEdge {
        points: PathBuf,
        i: usize,
        j: usize,
        #[command(flatten)]
        o: Output,
    },
    /// Exhaustive maximum openness on a small set.
    Oracle {
        points: PathBuf,
        #[arg(long, value_enum)]
        class: OracleKind,
        #[arg(long)]
        max_degree: Option<usize>,
        /// Path endpoint constraint.
        #[arg(long)]
        endpoint: Option<usize>,
        /// Required path edge.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        edge: Option<Vec<usize>>,
        /// Lower the size cap.
        #[arg(long)]
        max_n: Option<usize>,
        #[command(flatten)]
        o: Output,
    },
    /// Generate a point set.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Seed for seeded families; defaults to OPSG_SEED, then a built-in seed.
        #[arg(long, global = true)]
        seed: Option<u64>,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Check a graph file.
    Verify {
        graph: PathBuf,
        #[arg(long, value_enum)]
        class: Option<VerifyClass>,
        #[arg(long)]
        min_openness: Option<f64>,
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        annotate: bool,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OracleKind {
    Path,
    Tree,
    Triangulation,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum VerifyClass {
    Triangulation,
    Tree,
    Path,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// Triangle corners with clusters plus the barycenter.
    Barycenter { n: usize, eps: f64 },
    /// Three corner clusters, tight for spanning trees.
    ThreeWedge { n: usize, eps: f64 },
    /// Flat arc plus one far point, tight for bounded-degree trees.
    NearCollinear { n: usize, eps: f64 },
    /// Regular n-gon plus its center.
    Ngon { n: usize },
    /// Uniform points in the unit square.
    Random { n: usize },
    /// Points in convex position on the unit circle.
    RandomConvex { n: usize },
}

enum Failure {
    Lib(Error),
    Input(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_file(p: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn write_file(p: &Path, text: &str) -> Outcome {
    std::fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))
}

fn load_points(p: &Path) -> std::result::Result<PointSet, Failure> {
    Ok(read_points(&read_file(p)?)?)
}

/// Radians with 12 digits plus a multiple of π, as a fraction when one with
/// a denominator up to 12 matches.
pub fn format_angle(x: f64) -> String {
    let r = x / PI;
    let frac = (1..=12u32).find_map(|q| {
        let p = (r * q as f64).round();
        ((r * q as f64 - p).abs() < 1e-9).then_some((p as i64, q))
    });
    let pi = match frac {
        Some((0, _)) => "0".to_string(),
        Some((1, 1)) => "π".to_string(),
        Some((p, 1)) => format!("{p}π"),
        Some((1, q)) => format!("π/{q}"),
        Some((p, q)) => format!("{p}π/{q}"),
        None => format!("{r:.12}π"),
    };
    format!("{x:.12} ({pi})")
}

fn summary(g: &PlaneGraph) -> Vec<String> {
    let op = openness(g);
    vec![
        format!("n {} m {} max-degree {}", g.n(), g.edge_count(), g.max_degree()),
        format!("openness {}", format_angle(op.graph_openness)),
        format!("worst-vertex {}", op.worst_vertex()),
    ]
}

fn emit(
    out: &mut dyn Write,
    g: &PlaneGraph,
    trace: Option<&ConstructionTrace>,
    extra: &[String],
    o: &Output,
) -> Outcome {
    let mut lines: Vec<String> = extra.to_vec();
    lines.extend(summary(g));
    if o.trace {
        if let Some(t) = trace {
            lines.extend(t.to_string().lines().map(|l| format!("trace {l}")));
        }
    }
    let io = |e: std::io::Error| Failure::Input(e.to_string());
    match &o.out {
        Some(p) => {
            write_file(p, &write_graph(g))?;
            for l in &lines {
                writeln!(out, "{l}").map_err(io)?;
            }
        }
        None => {
            for l in &lines {
                writeln!(out, "# {l}").map_err(io)?;
            }
            write!(out, "{}", write_graph(g)).map_err(io)?;
        }
    }
    if let Some(p) = &o.svg {
        write_file(p, &svg::render(g, o.annotate))?;
    }
    Ok(())
}

fn path_graph(s: &PointSet, order: &[usize]) -> PlaneGraph {
    PlaneGraph::from_path(s.clone(), order)
}

fn gen_seed(seed: Option<u64>) -> std::result::Result<u64, Failure> {
    if let Some(s) = seed {
        return Ok(s);
    }
    match std::env::var("OPSG_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Input(format!("OPSG_SEED is not an integer: {v:?}"))),
        Err(_) => Ok(generators::DEFAULT_SEED),
    }
}

fn verify(g: &PlaneGraph, class: Option<VerifyClass>, min: Option<f64>, max_degree: Option<usize>) -> Outcome {
    if !is_plane(g) {
        return Err(Failure::Verify("graph has crossing edges".into()));
    }
    let classes = classify(g);
    if let Some(c) = class {
        let want = match c {
            VerifyClass::Triangulation => GraphClass::Triangulation,
            VerifyClass::Tree => GraphClass::SpanningTree,
            VerifyClass::Path => GraphClass::SpanningPath,
        };
        if !classes.contains(&want) {
            return Err(Failure::Verify(format!("graph is not a {want:?}")));
        }
    }
    if let Some(d) = max_degree {
        if g.max_degree() > d {
            return Err(Failure::Verify(format!("max degree {} exceeds {d}", g.max_degree())));
        }
    }
    if let Some(m) = min {
        let op = openness(g).graph_openness;
        if op < m - EPS {
            return Err(Failure::Verify(format!("openness {} is below {m}", format_angle(op))));
        }
    }
    Ok(())
}

fn execute(cmd: Cmd, out: &mut dyn Write) -> Outcome {
    match cmd {
        Cmd::Triangulate { points, o } => {
            let (g, t) = triangulation::open_triangulation(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class triangulation".into()], &o)
        }
        Cmd::Tree { points, o } => {
            let (g, t) = spanning_tree::open_spanning_tree(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class tree".into()], &o)
        }
        Cmd::Tree3 { points, o } => {
            let (g, t) = bounded_tree::open_tree_deg3(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class tree".into()], &o)
        }
        Cmd::Tree4 { points, o } => {
            let (g, t) = bounded_tree::open_tree_deg4(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class tree".into()], &o)
        }
        Cmd::PathConvex { points, o } => {
            let (g, t) = convex_path::open_convex_path_traced(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class path".into()], &o)
        }
        Cmd::PathConvexFrom { points, i, o } => {
            let (g, t) = convex_path::path_from_endpoint_traced(&load_points(&points)?, i)?;
            emit(out, &g, Some(&t), &["class path".into()], &o)
        }
        Cmd::Path { points, o } => {
            let (g, t) = general_path::open_path_traced(&load_points(&points)?)?;
            emit(out, &g, Some(&t), &["class path".into()], &o)
        }
        Cmd::PathFrom { points, i, o } => {
            let s = load_points(&points)?;
            let (order, t) = general_path::path_from_vertex_traced(&s, i)?;
            emit(out, &path_graph(&s, &order), Some(&t), &[format!("order {order:?}")], &o)
        }
        Cmd::PathEdge { points, i, j, o } => {
            let s = load_points(&points)?;
            let (order, t) = general_path::path_from_edge_traced(&s, i, j)?;
            emit(out, &path_graph(&s, &order), Some(&t), &[format!("order {order:?}")], &o)
        }
        Cmd::Oracle { points, class, max_degree, endpoint, edge, max_n, o } => {
            let s = load_points(&points)?;
            let limits = OracleLimits { max_n: max_n.unwrap_or(usize::MAX) };
            let edge = edge.map(|e| (e[0], e[1]));
            let r = match class {
                OracleKind::Path => oracle::max_openness_paths_with(&s, endpoint, edge, limits)?,
                OracleKind::Tree => oracle::max_openness_trees_with(&s, max_degree, limits)?,
                OracleKind::Triangulation => oracle::max_openness_triangulations_with(&s, limits)?,
            };
            let extra = vec![
                format!("class {:?}", r.class),
                format!("max-openness {}", format_angle(r.max_openness)),
                format!("enumerated {}", r.count_enumerated),
            ];
            emit(out, &r.witness, None, &extra, &o)
        }
        Cmd::Gen { family, seed, out: path } => {
            let seed = gen_seed(seed)?;
            let s = match family {
                Family::Barycenter { n, eps } => generators::barycenter_family_seeded(n, eps, seed)?,
                Family::ThreeWedge { n, eps } => generators::three_wedge_family(n, eps)?,
                Family::NearCollinear { n, eps } => generators::near_collinear_family(n, eps)?,
                Family::Ngon { n } => generators::regular_ngon_plus_center(n)?,
                Family::Random { n } => generators::random_general(n, seed)?,
                Family::RandomConvex { n } => generators::random_convex(n, seed)?,
            };
            let text = write_points(&s);
            match path {
                Some(p) => write_file(&p, &text),
                None => write!(out, "{text}").map_err(|e| Failure::Input(e.to_string())),
            }
        }
        Cmd::Verify { graph, class, min_openness, max_degree, svg: svg_path, annotate } => {
            let g = read_graph(&read_file(&graph)?)?;
            if let Some(p) = svg_path {
                write_file(&p, &svg::render(&g, annotate))?;
            }
            verify(&g, class, min_openness, max_degree)?;
            for l in summary(&g) {
                writeln!(out, "{l}").map_err(|e| Failure::Input(e.to_string()))?;
            }
            writeln!(out, "ok").map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let first = text.lines().next().unwrap_or("").trim_start_matches("error: ");
                    let _ = writeln!(err, "error[usage]: {first}");
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match execute(cli.cmd, out) {
        Ok(()) => 0,
        Err(f) => {
            let (kind, msg, code) = match f {
                Failure::Lib(e) => {
                    let code = match e {
                        Error::OracleTooLarge { .. } => 3,
                        Error::ConstructionInvariantViolated(_) => 1,
                        _ => 2,
                    };
                    (e.kind(), e.to_string(), code)
                }
                Failure::Input(m) => ("io", m, 2),
                Failure::Verify(m) => ("verification-failed", m, 1),
            };
            let _ = writeln!(err, "error[{kind}]: {msg}");
            code
        }
    }
}
