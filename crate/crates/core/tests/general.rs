use opsg::general_path::{open_path, path_from_edge_traced, path_from_vertex_traced, GENERAL_PATH_BOUND};
use opsg::generators::{random_convex, random_general};
use opsg::geometry::{convex_hull, EPS};
use opsg::graph::openness;
use std::collections::BTreeMap;

#[test]
fn random_sets_from_every_hull_vertex_and_edge() {
    let mut cases: BTreeMap<String, usize> = BTreeMap::new();
    let mut fails = Vec::new();
    for seed in 0..600u64 {
        let n = 4 + (seed as usize * 13) % 37;
        let s = random_general(n, seed).unwrap();
        let h = convex_hull(&s);
        for (i, &q) in h.iter().enumerate() {
            match path_from_vertex_traced(&s, q) {
                Ok((o, t)) => {
                    assert_eq!(o[0], q);
                    for st in t.steps {
                        *cases.entry(st.case).or_default() += 1;
                    }
                }
                Err(e) => fails.push(format!("seed {seed} vertex {q}: {e}")),
            }
            let q2 = h[(i + 1) % h.len()];
            match path_from_edge_traced(&s, q, q2) {
                Ok((o, t)) => {
                    assert!((o[0], o[1]) == (q, q2) || (o[0], o[1]) == (q2, q));
                    for st in t.steps {
                        *cases.entry(st.case).or_default() += 1;
                    }
                }
                Err(e) => fails.push(format!("seed {seed} edge {q}-{q2}: {e}")),
            }
        }
    }
    eprintln!("{cases:?}");
    assert!(fails.is_empty(), "{} failures, first: {:?}", fails.len(), &fails[..fails.len().min(5)]);
}

#[test]
fn open_path_bound() {
    for seed in 0..200u64 {
        for s in [random_general(40, seed).unwrap(), random_convex(30, seed).unwrap()] {
            let g = open_path(&s).unwrap();
            assert!(openness(&g).graph_openness >= GENERAL_PATH_BOUND - EPS);
        }
    }
}

#[test]
fn grid_inputs() {
    use opsg::geometry::{Point, PointSet};
    use rand::{Rng, SeedableRng};
    let mut r = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let mut done = 0;
    while done < 20_000 {
        let n = r.gen_range(4..12);
        let pts: Vec<Point> =
            (0..n).map(|_| Point::new(r.gen_range(0..30) as f64 / 10., r.gen_range(0..30) as f64 / 10.)).collect();
        let Ok(s) = PointSet::new(pts) else { continue };
        done += 1;
        let h = convex_hull(&s);
        for (i, &q) in h.iter().enumerate() {
            path_from_vertex_traced(&s, q).unwrap_or_else(|e| panic!("{:?} {q}: {e}", s.points()));
            path_from_edge_traced(&s, q, h[(i + 1) % h.len()]).unwrap_or_else(|e| panic!("{:?} {q}: {e}", s.points()));
        }
    }
}
