//! 5π/4-open spanning paths on sets in general position.
//!
//! Two mutually recursive constructions: a path starting at a hull vertex q,
//! and a path starting with a hull edge q1q2 (in either direction). Both keep
//! the smaller angle at every interior vertex at most 3π/4.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::geometry::{angle, ccw_angle, convex_hull, hull_of, side, Point, PointSet, EPS, TAU};
use crate::graph::{is_plane, path_smaller_angles, PlaneGraph};
use crate::trace::ConstructionTrace;

pub const GENERAL_PATH_BOUND: f64 = 1.25 * PI;
const THREE_QUARTERS: f64 = 0.75 * PI;

/// Where an exterior point sits relative to the outer normal cones of a hull.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeLocation {
    /// Between the cones of consecutive hull vertices (ccw order).
    BetweenCones(usize, usize),
    InCone(usize),
}

/// Locates `q` among the outer normal cones of the ccw hull `hull` of
/// `points`. Cones are closed, so boundary points land in a cone.
pub fn outer_normal_cone_locate(points: &[Point], q: Point, hull: &[usize]) -> Result<ConeLocation> {
    let h = hull.len();
    if h == 0 {
        return Err(Error::DegenerateInput("empty hull".into()));
    }
    if h == 1 {
        return if points[hull[0]] == q { Err(Error::PointNotExterior) } else { Ok(ConeLocation::InCone(hull[0])) };
    }
    let outside = if h == 2 {
        side(points[hull[0]], points[hull[1]], q) != 0 || q.sub(points[hull[0]]).dot(q.sub(points[hull[1]])) > 0.0
    } else {
        (0..h).any(|i| side(points[hull[i]], points[hull[(i + 1) % h]], q) < 0)
    };
    if !outside {
        return Err(Error::PointNotExterior);
    }
    for i in 0..h {
        let p = points[hull[i]];
        let prev = points[hull[(i + h - 1) % h]];
        let next = points[hull[(i + 1) % h]];
        let d = q.sub(p);
        if d.dot(prev.sub(p)) <= 0.0 && d.dot(next.sub(p)) <= 0.0 {
            return Ok(ConeLocation::InCone(hull[i]));
        }
    }
    for i in 0..h {
        let (a, b) = (hull[i], hull[(i + 1) % h]);
        let (pa, pb) = (points[a], points[b]);
        let facing = h == 2 || side(pa, pb, q) < 0;
        if facing && q.sub(pa).dot(pb.sub(pa)) > 0.0 && q.sub(pb).dot(pa.sub(pb)) > 0.0 {
            return Ok(ConeLocation::BetweenCones(a, b));
        }
    }
    Err(Error::ConstructionInvariantViolated("exterior point matches no normal cone".into()))
}

struct Solver<'a> {
    s: &'a PointSet,
    trace: ConstructionTrace,
}

fn without(set: &[usize], drop: &[usize]) -> Vec<usize> {
    set.iter().copied().filter(|v| !drop.contains(v)).collect()
}

fn prepend(head: &[usize], tail: Vec<usize>) -> Vec<usize> {
    let mut out = head.to_vec();
    out.extend(tail);
    out
}

impl<'a> Solver<'a> {
    fn ang(&self, a: usize, b: usize, c: usize) -> f64 {
        angle(self.s[a], self.s[b], self.s[c])
    }

    fn check(&self, what: &str, value: f64, bound: f64) -> Result<()> {
        if value > bound + EPS {
            return Err(Error::ConstructionInvariantViolated(format!("{what} = {value:.12} exceeds {bound:.12}")));
        }
        Ok(())
    }

    fn ccw(&self, a: usize, b: usize, c: usize) -> Result<f64> {
        ccw_angle(self.s[a], self.s[b], self.s[c])
    }

    /// Path on `set` starting at hull vertex `q`.
    fn solve_vertex(&mut self, set: &[usize], q: usize) -> Result<Vec<usize>> {
        let rest = without(set, &[q]);
        match rest.len() {
            0 => return Ok(vec![q]),
            1 => return Ok(vec![q, rest[0]]),
            2 => {
                let (a, b) = (rest[0], rest[1]);
                let pick = if self.ang(q, a, b) <= self.ang(q, b, a) { [q, a, b] } else { [q, b, a] };
                return Ok(pick.to_vec());
            }
            _ => {}
        }
        let k = hull_of(self.s.points(), &rest);
        let m = k.len();
        match outer_normal_cone_locate(self.s.points(), self.s[q], &k)? {
            ConeLocation::BetweenCones(y, z) => {
                self.trace.push("1.1", vec![q, y, z], "");
                self.check("angle q y z", self.ang(q, y, z), FRAC_PI_2)?;
                self.check("angle y z q", self.ang(y, z, q), FRAC_PI_2)?;
                let sub = self.solve_edge(&rest, y, z)?;
                Ok(prepend(&[q], sub))
            }
            ConeLocation::InCone(p) => {
                let i = k.iter().position(|&v| v == p).unwrap();
                // z is clockwise of y as seen from p, the hull lies between them
                let y = k[(i + m - 1) % m];
                let z = k[(i + 1) % m];
                // interior angle of the hull, below π; unsigned so slivers cannot wrap
                let zpy = self.ang(z, p, y);
                let ypq = self.ccw(y, p, q)?;
                let qpz = self.ccw(q, p, z)?;
                let sum = zpy + ypq + qpz;
                if (sum - TAU).abs() > 1e-9 {
                    return Err(Error::ConstructionInvariantViolated(format!("angles around {p} sum to {sum:.12}")));
                }
                if zpy <= ypq && zpy <= qpz {
                    let w = if qpz < ypq || (qpz == ypq && self.s[z].lex_cmp(&self.s[y]).is_lt()) { z } else { y };
                    self.trace.push("1.2.1", vec![q, w, p], "");
                    self.check("angle p w q", self.ang(p, w, q), FRAC_PI_2)?;
                    let sub = self.solve_vertex(&without(&rest, &[w]), p)?;
                    Ok(prepend(&[q, w], sub))
                } else {
                    let (w, small) = if ypq <= qpz { (y, ypq) } else { (z, qpz) };
                    self.trace.push("1.2.2", vec![q, p, w], "");
                    self.check("angle q w p", self.ang(q, w, p), FRAC_PI_2)?;
                    self.check("angle w p q", small, THREE_QUARTERS)?;
                    let sub = self.solve_edge(&rest, p, w)?;
                    Ok(prepend(&[q], sub))
                }
            }
        }
    }

    /// Path on `set` starting with hull edge q1q2 in one of its directions.
    fn solve_edge(&mut self, set: &[usize], q1: usize, q2: usize) -> Result<Vec<usize>> {
        let n = set.len();
        if n == 2 {
            return Ok(vec![q1, q2]);
        }
        let hull = hull_of(self.s.points(), set);
        let h = hull.len();
        let at = |v: usize| hull.iter().position(|&x| x == v);
        let (i1, i2) = match (at(q1), at(q2)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::NotHullEdge(q1, q2)),
        };
        // q2 follows q1 counterclockwise
        let (q1, q2) = if (i1 + 1) % h == i2 {
            (q1, q2)
        } else if (i2 + 1) % h == i1 {
            (q2, q1)
        } else {
            return Err(Error::NotHullEdge(q1, q2));
        };
        if n == 3 {
            let x = without(set, &[q1, q2])[0];
            let pick = if self.ang(q1, q2, x) <= self.ang(q2, q1, x) { [q1, q2, x] } else { [q2, q1, x] };
            return Ok(pick.to_vec());
        }
        let i1 = at(q1).unwrap();
        let b = hull[(i1 + h - 1) % h];
        let c = hull[(i1 + 2) % h];
        let alpha = self.ang(b, q1, q2);
        let omega = self.ang(q1, q2, c);
        if alpha.min(omega) < THREE_QUARTERS {
            return if alpha <= omega {
                self.trace.push("2.1", vec![q2, q1], format!("alpha={alpha:.6}"));
                let sub = self.solve_vertex(&without(set, &[q2]), q1)?;
                Ok(prepend(&[q2], sub))
            } else {
                self.trace.push("2.1", vec![q1, q2], format!("omega={omega:.6}"));
                let sub = self.solve_vertex(&without(set, &[q1]), q2)?;
                Ok(prepend(&[q1], sub))
            };
        }

        let rest = without(set, &[q1, q2]);
        let k = hull_of(self.s.points(), &rest);
        let m = k.len();
        let (o, u) = (self.s[q1], self.s[q2].sub(self.s[q1]));
        let len = u.norm();
        let u = u.unit();
        let fx = |v: usize| self.s[v].sub(o).dot(u);
        let fy = |v: usize| u.cross(self.s[v].sub(o));
        let key = |v: usize| (fx(v), fy(v));
        let left = (0..m)
            .min_by(|&a, &b| key(k[a]).0.total_cmp(&key(k[b]).0).then(key(k[a]).1.total_cmp(&key(k[b]).1)))
            .unwrap();
        let right = (0..m)
            .max_by(|&a, &b| key(k[a]).0.total_cmp(&key(k[b]).0).then(key(k[b]).1.total_cmp(&key(k[a]).1)))
            .unwrap();
        // near chain of K, from the q1 side to the q2 side
        let mut chain = vec![k[left]];
        let mut j = left;
        while j != right {
            j = (j + 1) % m;
            chain.push(k[j]);
        }
        let in_t: Vec<usize> = chain.iter().copied().filter(|&v| (0.0..=len).contains(&fx(v))).collect();

        if let Some(&p) =
            in_t.iter().min_by(|&&a, &&b| fy(a).total_cmp(&fy(b)).then_with(|| self.s[a].lex_cmp(&self.s[b])))
        {
            let alpha1 = self.ang(q2, q1, p);
            let beta = self.ang(q1, q2, p);
            self.check("alpha1", alpha1, FRAC_PI_2)?;
            self.check("beta", beta, FRAC_PI_2)?;
            let gamma2 = self.ang(q1, p, q2);
            if gamma2 > FRAC_PI_2 {
                self.trace.push("2.2.1.1", vec![q1, q2, p], "");
                let sub = self.solve_vertex(&rest, p)?;
                if sub.len() == 1 {
                    return Ok(vec![q1, q2, p]);
                }
                let p1 = sub[1];
                let (a2, a1) = (self.ang(q2, p, p1), self.ang(q1, p, p1));
                self.check("smaller angle at p", a2.min(a1), THREE_QUARTERS)?;
                let head = if a2 <= a1 { [q1, q2] } else { [q2, q1] };
                return Ok(prepend(&head, sub));
            }
            let iy = k.iter().position(|&v| v == p).unwrap();
            let y = k[(iy + m - 1) % m];
            let z = k[(iy + 1) % m];
            // mirrored branches: y with q2 leading, or z with q1 leading
            let (w, near, far) = if beta >= FRAC_PI_4 { (y, q1, q2) } else { (z, q2, q1) };
            self.trace.push("2.2.1.2", vec![q1, q2, p, w], "");
            let quad = if w == y { [q1, q2, p, y] } else { [q2, q1, p, z] };
            let turn = if w == y { 1 } else { -1 };
            if (0..4).any(|t| side(self.s[quad[t]], self.s[quad[(t + 1) % 4]], self.s[quad[(t + 2) % 4]]) != turn) {
                return Err(Error::ConstructionInvariantViolated(format!("{quad:?} is not a convex four-gon")));
            }
            self.check("alpha1", self.ang(far, near, p), FRAC_PI_2)?;
            self.check("gamma1", self.ang(near, p, w), THREE_QUARTERS)?;
            self.check("beta2", self.ang(near, far, w), FRAC_PI_2)?;
            self.check("delta", self.ang(far, w, p), THREE_QUARTERS)?;
            let sub = self.solve_edge(&rest, p, w)?;
            let head = if sub[0] == p { [far, near] } else { [near, far] };
            return Ok(prepend(&head, sub));
        }

        let e = chain
            .windows(2)
            .find(|e| fx(e[0]) < 0.0 && fx(e[1]) > len)
            .ok_or_else(|| Error::ConstructionInvariantViolated("no near edge spans the slab".into()))?;
        let (y, z) = (e[0], e[1]);
        self.trace.push("2.2.2", vec![q1, q2, y, z], "");
        self.check("angle q2 q1 z", self.ang(q2, q1, z), FRAC_PI_2)?;
        self.check("angle y q2 q1", self.ang(y, q2, q1), FRAC_PI_2)?;
        self.check("angle q2 y z", self.ang(q2, y, z), THREE_QUARTERS)?;
        self.check("angle y z q1", self.ang(y, z, q1), THREE_QUARTERS)?;
        let sub = self.solve_edge(&rest, y, z)?;
        let head = if sub[0] == z { [q2, q1] } else { [q1, q2] };
        Ok(prepend(&head, sub))
    }
}

/// Checks a path against the 3π/4 smaller-angle bound and planarity.
fn verify(s: &PointSet, order: &[usize]) -> Result<()> {
    let mut seen = vec![false; s.len()];
    for &v in order {
        if std::mem::replace(&mut seen[v], true) {
            return Err(Error::ConstructionInvariantViolated(format!("vertex {v} repeats")));
        }
    }
    if order.len() != s.len() {
        return Err(Error::ConstructionInvariantViolated("path does not span".into()));
    }
    if let Some(a) = path_smaller_angles(s, order).into_iter().find(|&a| a > THREE_QUARTERS + EPS) {
        return Err(Error::ConstructionInvariantViolated(format!("smaller angle {a:.12} exceeds 3π/4")));
    }
    if !is_plane(&PlaneGraph::from_path(s.clone(), order)) {
        return Err(Error::ConstructionInvariantViolated(format!("{order:?} crosses itself")));
    }
    Ok(())
}

pub fn path_from_vertex_traced(s: &PointSet, q: usize) -> Result<(Vec<usize>, ConstructionTrace)> {
    if q >= s.len() || !convex_hull(s).contains(&q) {
        return Err(Error::NotHullVertex(q));
    }
    let mut solver = Solver { s, trace: ConstructionTrace::new() };
    let all: Vec<usize> = (0..s.len()).collect();
    let order = solver.solve_vertex(&all, q)?;
    verify(s, &order)?;
    Ok((order, solver.trace))
}

/// Spanning path starting at hull vertex `q`.
pub fn path_from_vertex(s: &PointSet, q: usize) -> Result<Vec<usize>> {
    path_from_vertex_traced(s, q).map(|r| r.0)
}

pub fn path_from_edge_traced(s: &PointSet, q1: usize, q2: usize) -> Result<(Vec<usize>, ConstructionTrace)> {
    let hull = convex_hull(s);
    let h = hull.len();
    let adjacent = (0..h).any(|i| {
        let (a, b) = (hull[i], hull[(i + 1) % h]);
        (a, b) == (q1, q2) || (a, b) == (q2, q1)
    });
    if q1 == q2 || !adjacent {
        return Err(Error::NotHullEdge(q1, q2));
    }
    let mut solver = Solver { s, trace: ConstructionTrace::new() };
    let all: Vec<usize> = (0..s.len()).collect();
    let order = solver.solve_edge(&all, q1, q2)?;
    verify(s, &order)?;
    Ok((order, solver.trace))
}

/// Spanning path beginning with the hull edge q1q2 in one direction.
pub fn path_from_edge(s: &PointSet, q1: usize, q2: usize) -> Result<Vec<usize>> {
    path_from_edge_traced(s, q1, q2).map(|r| r.0)
}

pub fn open_path_traced(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    if s.len() < 2 {
        return Err(Error::DegenerateInput(format!("path needs at least 2 points, got {}", s.len())));
    }
    let (order, trace) = path_from_vertex_traced(s, convex_hull(s)[0])?;
    Ok((PlaneGraph::from_path(s.clone(), &order), trace))
}

/// 5π/4-open spanning path.
pub fn open_path(s: &PointSet) -> Result<PlaneGraph> {
    open_path_traced(s).map(|r| r.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::openness;

    fn set(v: &[(f64, f64)]) -> PointSet {
        PointSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn square() -> Vec<Point> {
        [(0., 0.), (1., 0.), (1., 1.), (0., 1.)].iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    #[test]
    fn locate_above_top_edge() {
        let pts = square();
        let loc = outer_normal_cone_locate(&pts, Point::new(0.5, 3.0), &[0, 1, 2, 3]).unwrap();
        assert_eq!(loc, ConeLocation::BetweenCones(2, 3));
    }

    #[test]
    fn locate_beyond_corner() {
        let pts = square();
        let loc = outer_normal_cone_locate(&pts, Point::new(2.0, 2.0), &[0, 1, 2, 3]).unwrap();
        assert_eq!(loc, ConeLocation::InCone(2));
        // on the boundary ray of the cone: closed cones win
        let loc = outer_normal_cone_locate(&pts, Point::new(1.0, 2.0), &[0, 1, 2, 3]).unwrap();
        assert_eq!(loc, ConeLocation::InCone(2));
    }

    #[test]
    fn locate_rejects_interior() {
        let pts = square();
        assert_eq!(outer_normal_cone_locate(&pts, Point::new(0.5, 0.5), &[0, 1, 2, 3]), Err(Error::PointNotExterior));
    }

    #[test]
    fn small_sets() {
        let s = set(&[(0., 0.), (1., 0.)]);
        assert_eq!(open_path(&s).unwrap().edge_count(), 1);
        let s = set(&[(0., 0.), (1., 0.), (0.2, 3.)]);
        for q in 0..3 {
            assert_eq!(path_from_vertex(&s, q).unwrap()[0], q);
        }
        assert!(matches!(open_path(&set(&[(0., 0.)])), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn case_one_one_prefix() {
        // q far above the middle of the top edge of the remaining square
        let s = set(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.), (0.5, 5.)]);
        let (order, t) = path_from_vertex_traced(&s, 4).unwrap();
        assert_eq!(t.steps[0].case, "1.1");
        assert!(order[1] == 2 || order[1] == 3);
    }

    #[test]
    fn triangle_plus_center() {
        let h = 3f64.sqrt() / 2.;
        let s = set(&[(0., 0.), (1., 0.), (0.5, h), (0.5, h / 3.)]);
        for q in 0..3 {
            let order = path_from_vertex(&s, q).unwrap();
            let g = PlaneGraph::from_path(s.clone(), &order);
            assert!(openness(&g).graph_openness >= GENERAL_PATH_BOUND - EPS);
        }
    }

    #[test]
    fn rejects_non_hull_inputs() {
        let s = set(&[(0., 0.), (4., 0.), (0., 4.), (1., 1.)]);
        assert_eq!(path_from_vertex(&s, 3), Err(Error::NotHullVertex(3)));
        assert_eq!(path_from_edge(&s, 0, 3), Err(Error::NotHullEdge(0, 3)));
    }
}
