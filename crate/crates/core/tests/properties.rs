use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use proptest::prelude::*;

use opsg::convex_path::{open_convex_path, path_from_endpoint};
use opsg::general_path::{open_path, path_from_edge, path_from_vertex};
use opsg::geometry::{
    angle, ccw_angle, convex_hull, diameter, find_collinear_triple, in_orthogonal_slab, orientation, side, Orientation,
    TAU,
};
use opsg::graph::{incident_angles, path_smaller_angles};
use opsg::io::{read_graph, read_points, write_graph, write_points};
use opsg::triangulation::open_triangulation;
use opsg::{classify, is_plane, openness, GraphClass, Point, PointSet};

fn point() -> impl Strategy<Value = Point> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point::new(x, y))
}

fn grid_point() -> impl Strategy<Value = Point> {
    (-4i32..=4, -4i32..=4).prop_map(|(x, y)| Point::new(f64::from(x), f64::from(y)))
}

fn point_set(lo: usize, hi: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(point(), lo..hi).prop_filter_map("degenerate", |v| PointSet::new(v).ok())
}

fn convex_set(lo: usize, hi: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(0.0..TAU, lo..hi).prop_filter_map("degenerate", |mut ts| {
        ts.sort_by(f64::total_cmp);
        let pts = ts.iter().map(|t| Point::new(t.cos(), t.sin())).collect();
        PointSet::new(pts).ok().filter(|s| convex_hull(s).len() == s.len())
    })
}

fn brute_collinear(p: &[Point]) -> bool {
    let n = p.len();
    (0..n).any(|i| (i + 1..n).any(|j| (j + 1..n).any(|k| orientation(p[i], p[j], p[k]) == Orientation::Collinear)))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 2000, ..ProptestConfig::default() })]

    #[test]
    fn slab_points_see_acute_base_angles(p in point(), q in point(), t in 0.0..1.0f64, h in 1e-6..50.0f64) {
        prop_assume!(p != q);
        let d = q.sub(p);
        let r = Point::new(p.x + t * d.x - h * d.y, p.y + t * d.y + h * d.x);
        prop_assume!(side(p, q, r) == 1 && in_orthogonal_slab(p, q, r));
        prop_assert!(angle(q, p, r) <= FRAC_PI_2 + 1e-9);
        prop_assert!(angle(r, q, p) <= FRAC_PI_2 + 1e-9);
    }

    #[test]
    fn diameter_angles(s in point_set(3, 12)) {
        let (a, b) = diameter(&s).unwrap();
        for r in (0..s.len()).filter(|&r| r != a && r != b) {
            prop_assert!(angle(s[a], s[r], s[b]) >= FRAC_PI_3 - 1e-9);
            prop_assert!(angle(s[r], s[a], s[b]).min(angle(s[r], s[b], s[a])) <= FRAC_PI_3 + 1e-9);
        }
    }

    #[test]
    fn diameter_is_the_longest_pair_on_the_hull(s in point_set(2, 15)) {
        let (a, b) = diameter(&s).unwrap();
        let best = (0..s.len())
            .flat_map(|i| (0..s.len()).map(move |j| (i, j)))
            .map(|(i, j)| s[i].dist2(s[j]))
            .fold(0.0, f64::max);
        prop_assert_eq!(s[a].dist2(s[b]), best);
        let hull = convex_hull(&s);
        prop_assert!(hull.contains(&a) && hull.contains(&b));
    }

    #[test]
    fn ccw_angles_of_opposite_turns_sum_to_a_full_turn(a in point(), b in point(), c in point()) {
        prop_assume!(orientation(a, b, c) != Orientation::Collinear);
        let sum = ccw_angle(a, b, c).unwrap() + ccw_angle(c, b, a).unwrap();
        prop_assert!((sum - TAU).abs() < 1e-9);
        let small = ccw_angle(a, b, c).unwrap().min(ccw_angle(c, b, a).unwrap());
        prop_assert!((small - angle(a, b, c)).abs() < 1e-9);
    }

    #[test]
    fn hull_is_counterclockwise_and_encloses(s in point_set(3, 20)) {
        let h = convex_hull(&s);
        let k = h.len();
        prop_assert!(k >= 3);
        for i in 0..k {
            let (u, v) = (s[h[i]], s[h[(i + 1) % k]]);
            for r in 0..s.len() {
                if r != h[i] && r != h[(i + 1) % k] {
                    prop_assert_eq!(side(u, v, s[r]), 1);
                }
            }
        }
    }

    #[test]
    fn collinear_detection_matches_brute_force(v in prop::collection::vec(grid_point(), 3..9)) {
        let mut v = v;
        v.sort_by(|a, b| a.lex_cmp(b));
        v.dedup();
        prop_assert_eq!(find_collinear_triple(&v).is_some(), brute_collinear(&v));
        if let Some((i, j, k)) = find_collinear_triple(&v) {
            prop_assert_eq!(orientation(v[i], v[j], v[k]), Orientation::Collinear);
        }
    }

    #[test]
    fn points_round_trip(s in point_set(1, 30)) {
        prop_assert_eq!(read_points(&write_points(&s)).unwrap(), s);
    }

    #[test]
    fn triangulations_round_trip_and_cover_the_full_turn(s in point_set(3, 25)) {
        let (g, _) = open_triangulation(&s).unwrap();
        prop_assert_eq!(&read_graph(&write_graph(&g)).unwrap(), &g);
        for v in 0..g.n() {
            let sum: f64 = incident_angles(&g, v).iter().sum();
            prop_assert!((sum - TAU).abs() < 1e-9);
        }
    }

    #[test]
    fn convex_paths(s in convex_set(3, 25)) {
        let g = open_convex_path(&s).unwrap();
        prop_assert!(is_plane(&g));
        prop_assert!(openness(&g).graph_openness >= 1.5 * PI - 1e-9);
        for q in 0..s.len() {
            let g = path_from_endpoint(&s, q).unwrap();
            let order = g.path_order().unwrap();
            prop_assert!(order[0] == q || order[order.len() - 1] == q);
            prop_assert!(openness(&g).graph_openness >= 1.5 * PI - 1e-9);
        }
    }

    #[test]
    fn general_paths(s in point_set(2, 25)) {
        let g = open_path(&s).unwrap();
        prop_assert!(classify(&g).contains(&GraphClass::SpanningPath));
        prop_assert!(openness(&g).graph_openness >= 1.25 * PI - 1e-9);
        let hull = convex_hull(&s);
        for (i, &p) in hull.iter().enumerate() {
            let order = path_from_vertex(&s, p).unwrap();
            prop_assert_eq!(order[0], p);
            prop_assert!(path_smaller_angles(&s, &order).iter().all(|&a| a <= 0.75 * PI + 1e-9));
            let q = hull[(i + 1) % hull.len()];
            let order = path_from_edge(&s, p, q).unwrap();
            prop_assert!(path_smaller_angles(&s, &order).iter().all(|&a| a <= 0.75 * PI + 1e-9));
        }
    }
}
