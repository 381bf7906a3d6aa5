//! End-to-end acceptance checks. Runs without the test harness so that each
//! criterion reports one PASS or FAIL line.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use opsg::bounded_tree::{open_tree_deg3, open_tree_deg4};
use opsg::convex_path::{all_zigzag_paths, open_convex_path, path_from_endpoint};
use opsg::general_path::{open_path, path_from_edge, path_from_vertex};
use opsg::generators::{
    barycenter_family, near_collinear_family, random_convex, random_general, regular_ngon_plus_center,
    three_wedge_family,
};
use opsg::geometry::{angle, convex_hull, diameter, in_orthogonal_slab, side};
use opsg::graph::path_smaller_angles;
use opsg::io::{read_graph, read_points, write_graph, write_points};
use opsg::oracle::{
    counterexample_interior_start, max_openness_paths, max_openness_trees, max_openness_triangulations,
};
use opsg::spanning_tree::open_spanning_tree;
use opsg::triangulation::open_triangulation;
use opsg::{classify, is_plane, openness, GraphClass, PlaneGraph, Point, PointSet};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

const TOL: f64 = 1e-9;
const EPSILONS: [f64; 3] = [0.1, 0.05, 0.01];

fn op(g: &PlaneGraph) -> f64 {
    openness(g).graph_openness
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    check!(t < limit, "took {t:?}, limit {limit:?}");
    Ok(format!("{:.1}s", t.as_secs_f64()))
}

/// Excess over `bound` for each eps, checked to shrink as eps shrinks.
fn tightness(name: &str, bound: f64, excess: &[f64]) -> Outcome {
    for w in excess.windows(2) {
        check!(w[1] <= w[0] + TOL, "{name}: excess grows as eps shrinks: {excess:?}");
    }
    check!(excess.iter().all(|&f| f >= -TOL), "{name}: oracle below the lower bound {bound}: {excess:?}");
    let last = excess[excess.len() - 1];
    check!(last < 0.1, "{name}: f(0.01) = {last} is not below 0.1");
    let shown: Vec<String> = excess.iter().map(|f| format!("{f:.4}")).collect();
    Ok(format!("{name} f = [{}]", shown.join(", ")))
}

fn random_sets(count: u64, lo: usize, hi: usize) -> impl Iterator<Item = (u64, PointSet)> {
    (0..count).map(move |seed| {
        let n = lo + (seed as usize * 13) % (hi - lo + 1);
        (seed, random_general(n, seed).unwrap())
    })
}

fn triangulation_bound() -> Outcome {
    let start = Instant::now();
    for (seed, s) in random_sets(500, 4, 60) {
        let (g, _) = open_triangulation(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        check!(classify(&g).contains(&GraphClass::Triangulation), "seed {seed}: not a triangulation");
        check!(op(&g) >= 2. * FRAC_PI_3 - TOL, "seed {seed}: openness {}", op(&g));
    }
    within(start, Duration::from_secs(60))
}

fn triangulation_tightness() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for n in [7, 10] {
        let f: Vec<f64> = EPSILONS
            .iter()
            .map(|&eps| {
                let s = barycenter_family(n, eps).unwrap();
                max_openness_triangulations(&s).unwrap().max_openness - 2. * FRAC_PI_3
            })
            .collect();
        notes.push(tightness(&format!("n={n}"), 2. * FRAC_PI_3, &f)?);
    }
    notes.push(within(start, Duration::from_secs(300))?);
    Ok(notes.join("; "))
}

fn spanning_tree_bound() -> Outcome {
    for (seed, s) in random_sets(500, 4, 60) {
        let (g, _) = open_spanning_tree(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        check!(classify(&g).contains(&GraphClass::SpanningTree), "seed {seed}: not a spanning tree");
        check!(op(&g) >= 5. * FRAC_PI_3 - TOL, "seed {seed}: openness {}", op(&g));
    }
    let f: Vec<f64> = EPSILONS
        .iter()
        .map(|&eps| {
            let s = three_wedge_family(6, eps).unwrap();
            max_openness_trees(&s, None).unwrap().max_openness - 5. * FRAC_PI_3
        })
        .collect();
    tightness("three-wedge n=6", 5. * FRAC_PI_3, &f)
}

fn bounded_tree_bound() -> Outcome {
    for (seed, s) in random_sets(500, 4, 60) {
        for (d, build) in [(3, open_tree_deg3 as fn(&PointSet) -> _), (4, open_tree_deg4)] {
            let (g, _) = build(&s).map_err(|e| format!("seed {seed} degree {d}: {e}"))?;
            check!(classify(&g).contains(&GraphClass::SpanningTree), "seed {seed}: not a spanning tree");
            check!(g.max_degree() <= d, "seed {seed}: degree {} > {d}", g.max_degree());
            check!(op(&g) >= 1.5 * PI - TOL, "seed {seed} degree {d}: openness {}", op(&g));
        }
    }
    let s = near_collinear_family(6, 0.01).unwrap();
    let best = max_openness_trees(&s, Some(4)).unwrap().max_openness;
    check!(best <= 1.5 * PI + 0.1, "near-collinear oracle {best}");
    Ok(format!("near-collinear excess {:.4}", best - 1.5 * PI))
}

fn convex_paths() -> Outcome {
    let mut fewest = usize::MAX;
    for seed in 0..200u64 {
        let n = 4 + (seed as usize * 7) % 37;
        let s = random_convex(n, seed).unwrap();
        let open = all_zigzag_paths(&s)
            .unwrap()
            .iter()
            .filter(|z| path_smaller_angles(&s, &z.order).iter().all(|&a| a <= FRAC_PI_2 + TOL))
            .count();
        check!(open >= 2, "seed {seed}: only {open} open zigzag paths");
        fewest = fewest.min(open);
        let g = open_convex_path(&s).map_err(|e| format!("seed {seed}: {e}"))?;
        check!(op(&g) >= 1.5 * PI - TOL, "seed {seed}: openness {}", op(&g));
        for p in 0..n {
            let g = path_from_endpoint(&s, p).map_err(|e| format!("seed {seed} endpoint {p}: {e}"))?;
            let order = g.path_order().ok_or(format!("seed {seed} endpoint {p}: not a path"))?;
            check!(order[0] == p || order[n - 1] == p, "seed {seed}: {p} is not an endpoint");
            check!(op(&g) >= 1.5 * PI - TOL, "seed {seed} endpoint {p}: openness {}", op(&g));
        }
    }
    Ok(format!("at least {fewest} open zigzag paths per set"))
}

fn is_open_general_path(s: &PointSet, order: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    order.iter().for_each(|&v| seen[v] = true);
    let g = PlaneGraph::from_path(s.clone(), order);
    order.len() == s.len()
        && seen.iter().all(|&b| b)
        && is_plane(&g)
        && path_smaller_angles(s, order).iter().all(|&a| a <= 0.75 * PI + TOL)
        && op(&g) >= 1.25 * PI - TOL
}

fn general_paths() -> Outcome {
    let mut runs = 0;
    for (seed, s) in random_sets(500, 4, 40) {
        let hull = convex_hull(&s);
        for (i, &q) in hull.iter().enumerate() {
            let order = path_from_vertex(&s, q).map_err(|e| format!("seed {seed} vertex {q}: {e}"))?;
            check!(order[0] == q && is_open_general_path(&s, &order), "seed {seed} vertex {q}: {order:?}");
            let r = hull[(i + 1) % hull.len()];
            let order = path_from_edge(&s, q, r).map_err(|e| format!("seed {seed} edge {q} {r}: {e}"))?;
            check!(is_open_general_path(&s, &order), "seed {seed} edge {q} {r}: {order:?}");
            runs += 2;
        }
    }
    Ok(format!("{runs} constructions"))
}

fn oracle_consistency() -> Outcome {
    let start = Instant::now();
    for seed in 0..100u64 {
        let n = 4 + seed as usize % 5;
        let s = random_general(n, 1000 + seed).unwrap();
        let pairs = [
            ("triangulation", max_openness_triangulations(&s), op(&open_triangulation(&s).unwrap().0)),
            ("tree", max_openness_trees(&s, None), op(&open_spanning_tree(&s).unwrap().0)),
            ("degree-3 tree", max_openness_trees(&s, Some(3)), op(&open_tree_deg3(&s).unwrap().0)),
            ("degree-4 tree", max_openness_trees(&s, Some(4)), op(&open_tree_deg4(&s).unwrap().0)),
            ("path", max_openness_paths(&s, None, None), op(&open_path(&s).unwrap())),
        ];
        for (class, best, built) in pairs {
            let best = best.map_err(|e| format!("seed {seed} {class}: {e}"))?.max_openness;
            check!(best >= built - TOL, "seed {seed} {class}: oracle {best} < construction {built}");
        }
    }
    for seed in 0..10u64 {
        let s = random_convex(6, seed).unwrap();
        let count = max_openness_triangulations(&s).unwrap().count_enumerated;
        check!(count == 14, "convex hexagon seed {seed}: {count} triangulations");
    }
    within(start, Duration::from_secs(600))
}

fn interior_start() -> Outcome {
    let s = regular_ngon_plus_center(8).unwrap();
    let best = counterexample_interior_start(&s, 8).map_err(|e| e.to_string())?.max_openness;
    check!(best < 1.5 * PI - 0.05, "center start reaches {best}");
    Ok(format!("best from the center {best:.12} = {:.4}π", best / PI))
}

fn slab_and_diameter_angles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pt = |rng: &mut ChaCha8Rng| Point::new(rng.gen_range(-100.0..100.0), rng.gen_range(-100.0..100.0));
    let mut slab = 0;
    while slab < 100_000 {
        let (p, q, r) = (pt(&mut rng), pt(&mut rng), pt(&mut rng));
        if p == q || side(p, q, r) != 1 || !in_orthogonal_slab(p, q, r) {
            continue;
        }
        slab += 1;
        check!(angle(q, p, r) <= FRAC_PI_2 + TOL, "angle at p for {p:?} {q:?} {r:?}");
        check!(angle(r, q, p) <= FRAC_PI_2 + TOL, "angle at q for {p:?} {q:?} {r:?}");
    }
    let mut sets = 0;
    while sets < 100_000 {
        let n = rng.gen_range(3..=12);
        let Ok(s) = PointSet::new((0..n).map(|_| pt(&mut rng)).collect()) else { continue };
        sets += 1;
        let (a, b) = diameter(&s).unwrap();
        for r in (0..n).filter(|&r| r != a && r != b) {
            check!(angle(s[a], s[r], s[b]) >= FRAC_PI_3 - TOL, "apex angle in {s:?}");
            let base = angle(s[r], s[a], s[b]).min(angle(s[r], s[b], s[a]));
            check!(base <= FRAC_PI_3 + TOL, "base angles in {s:?}");
        }
    }
    Ok(format!("{slab} slab triples, {sets} sets"))
}

// ---- CLI corpus ----

fn fixtures() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "pts"))
        .collect();
    v.sort();
    v
}

fn opsg(args: &[String]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_opsg")).args(args).output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "`opsg {}` exited {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

struct Job {
    args: Vec<String>,
    verify: Vec<String>,
}

fn job(cmd: &str, extra: &[String], class: &str, min: f64, max_degree: Option<usize>) -> Job {
    let mut args = vec![cmd.to_string()];
    args.extend(extra.iter().cloned());
    let mut verify = vec!["--class".into(), class.into(), "--min-openness".into(), min.to_string()];
    if let Some(d) = max_degree {
        verify.extend(["--max-degree".into(), d.to_string()]);
    }
    Job { args, verify }
}

fn jobs_for(s: &PointSet) -> Vec<Job> {
    let n = s.len();
    let hull = convex_hull(s);
    let (h0, h1) = (hull[0].to_string(), hull[1].to_string());
    let mut v = vec![
        job("triangulate", &[], "triangulation", 2. * FRAC_PI_3, None),
        job("tree", &[], "tree", 5. * FRAC_PI_3, None),
        job("tree3", &[], "tree", 1.5 * PI, Some(3)),
        job("tree4", &[], "tree", 1.5 * PI, Some(4)),
        job("path", &[], "path", 1.25 * PI, Some(2)),
        job("path-from", std::slice::from_ref(&h0), "path", 1.25 * PI, Some(2)),
        job("path-edge", &[h0, h1], "path", 1.25 * PI, Some(2)),
    ];
    if hull.len() == n {
        v.push(job("path-convex", &[], "path", 1.5 * PI, Some(2)));
        v.push(job("path-convex-from", &[(n / 2).to_string()], "path", 1.5 * PI, Some(2)));
    }
    if n <= 9 {
        let class = |c: &str| ["--class".to_string(), c.to_string()];
        v.push(job("oracle", &class("tree"), "tree", 5. * FRAC_PI_3, None));
        v.push(job("oracle", &class("path"), "path", 1.25 * PI, Some(2)));
        v.push(job("oracle", &class("triangulation"), "triangulation", 2. * FRAC_PI_3, None));
    }
    v
}

fn cli_corpus() -> Outcome {
    let files = fixtures();
    check!(files.len() == 20, "expected 20 fixtures, found {}", files.len());
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut runs = 0;
    for (k, f) in files.iter().enumerate() {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let s = read_points(&text).map_err(|e| format!("{}: {e}", f.display()))?;
        check!(read_points(&write_points(&s)).as_ref() == Ok(&s), "{}: point round trip", f.display());
        for (j, mut jb) in jobs_for(&s).into_iter().enumerate() {
            let graph = tmp.path().join(format!("{k}_{j}.psg"));
            let pic = tmp.path().join(format!("{k}_{j}.svg"));
            jb.args.insert(1, f.display().to_string());
            jb.args.extend(["--out".into(), graph.display().to_string()]);
            jb.args.extend(["--svg".into(), pic.display().to_string(), "--annotate".into(), "--trace".into()]);
            opsg(&jb.args)?;
            let written = std::fs::read_to_string(&graph).map_err(|e| e.to_string())?;
            let g = read_graph(&written).map_err(|e| format!("{}: {e}", jb.args.join(" ")))?;
            check!(write_graph(&g) == written, "`{}`: graph text does not round trip", jb.args.join(" "));
            check!(g.base() == &s, "`{}`: points changed", jb.args.join(" "));
            let mut verify = vec!["verify".to_string(), graph.display().to_string()];
            verify.extend(jb.verify);
            let said = opsg(&verify)?;
            check!(said.lines().last() == Some("ok"), "`{}` printed {said:?}", verify.join(" "));
            runs += 1;
        }
    }
    for (k, family) in
        ["random 9", "random-convex 7", "barycenter 7 0.1", "three-wedge 6 0.05", "near-collinear 8 0.02", "ngon 6"]
            .iter()
            .enumerate()
    {
        let file = tmp.path().join(format!("gen{k}.pts"));
        let mut args: Vec<String> = vec!["gen".into()];
        args.extend(family.split(' ').map(String::from));
        args.extend(["--seed".into(), "5".into(), "--out".into(), file.display().to_string()]);
        opsg(&args)?;
        let text = std::fs::read_to_string(&file).map_err(|e| e.to_string())?;
        let s = read_points(&text).map_err(|e| format!("gen {family}: {e}"))?;
        check!(write_points(&s) == text, "gen {family}: point text does not round trip");
        runs += 1;
    }
    Ok(format!("{runs} runs over {} fixtures", files.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("triangulation bound", triangulation_bound),
        ("triangulation tightness", triangulation_tightness),
        ("spanning tree bound and tightness", spanning_tree_bound),
        ("bounded-degree trees", bounded_tree_bound),
        ("convex paths", convex_paths),
        ("general paths", general_paths),
        ("oracle consistency", oracle_consistency),
        ("interior start", interior_start),
        ("slab and diameter angles", slab_and_diameter_angles),
        ("cli corpus", cli_corpus),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed().as_secs_f64();
        match r {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({note}) [{t:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{t:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
