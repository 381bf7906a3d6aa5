//! 3π/2-open spanning paths on point sets in convex position.
//!
//! Zigzag paths alternate between the two tangents from the current point to
//! the hull of the remaining points. The recursive construction extends a
//! directed segment (p, r) by the hull neighbors q, s of its endpoints on one
//! side, flipping the side whenever the angle at s is acute.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::{angle, convex_hull, diameter, HalfPlaneSide, PointSet, EPS, TAU};
use crate::graph::{openness, path_smaller_angles, PlaneGraph};
use crate::trace::ConstructionTrace;

pub const CONVEX_PATH_BOUND: f64 = 1.5 * PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigzagPath {
    pub order: Vec<usize>,
    pub start: usize,
    pub first_turn: Turn,
}

/// Hull order of a set in convex position.
struct Ring {
    hull: Vec<usize>,
    pos: Vec<usize>,
}

impl Ring {
    fn new(s: &PointSet) -> Result<Self> {
        let hull = convex_hull(s);
        if hull.len() != s.len() {
            return Err(Error::NotConvexPosition);
        }
        let mut pos = vec![0; s.len()];
        for (k, &v) in hull.iter().enumerate() {
            pos[v] = k;
        }
        Ok(Ring { hull, pos })
    }

    fn n(&self) -> usize {
        self.hull.len()
    }

    /// Counterclockwise run of hull vertices from `a` to `b`, inclusive.
    fn run(&self, a: usize, b: usize) -> Vec<usize> {
        let n = self.n();
        let (i, j) = (self.pos[a], self.pos[b]);
        let len = (j + n - i) % n + 1;
        (0..len).map(|k| self.hull[(i + k) % n]).collect()
    }

    /// S^τ(p, r) in hull order: [r, .., p] for Plus, [p, .., r] for Minus.
    fn side(&self, p: usize, r: usize, tau: HalfPlaneSide) -> Vec<usize> {
        match tau {
            HalfPlaneSide::Plus => self.run(r, p),
            HalfPlaneSide::Minus => self.run(p, r),
        }
    }

    /// Hull neighbors (q of p, s of r) inside S^τ(p, r).
    fn neighbors(&self, p: usize, r: usize, tau: HalfPlaneSide) -> (usize, usize, usize) {
        let c = self.side(p, r, tau);
        let m = c.len();
        match tau {
            HalfPlaneSide::Plus => (c[m - 2], c[1], m),
            HalfPlaneSide::Minus => (c[1], c[m - 2], m),
        }
    }
}

fn zigzag_from(ring: &Ring, start: usize, first: Turn) -> Vec<usize> {
    let n = ring.n();
    let i = ring.pos[start];
    // remaining points in ccw order starting after `start`
    let mut rest: std::collections::VecDeque<usize> = (1..n).map(|k| ring.hull[(i + k) % n]).collect();
    let mut order = vec![start];
    let mut turn = first;
    while !rest.is_empty() {
        // right tangent: ccw successor; left tangent: ccw predecessor
        let next = match turn {
            Turn::Right => rest.pop_front(),
            Turn::Left => rest.pop_back(),
        };
        order.push(next.unwrap());
        turn = match turn {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        };
    }
    order
}

fn canonical(order: &[usize]) -> Vec<usize> {
    let mut o = order.to_vec();
    if o.first() > o.last() {
        o.reverse();
    }
    o
}

/// All undirected zigzag paths, in order of first appearance over starts
/// 0..n and first turn right-then-left.
pub fn all_zigzag_paths(s: &PointSet) -> Result<Vec<ZigzagPath>> {
    let ring = Ring::new(s)?;
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for start in 0..s.len() {
        for first in [Turn::Right, Turn::Left] {
            let order = zigzag_from(&ring, start, first);
            if seen.insert(canonical(&order)) {
                out.push(ZigzagPath { order, start, first_turn: first });
            }
        }
    }
    Ok(out)
}

/// Number of smaller angles exceeding π/2 over all zigzag paths together.
pub fn zigzag_obtuse_count(s: &PointSet) -> Result<usize> {
    Ok(all_zigzag_paths(s)?
        .iter()
        .map(|z| path_smaller_angles(s, &z.order).into_iter().filter(|&a| a > FRAC_PI_2 + EPS).count())
        .sum())
}

/// Most open zigzag path among those whose smaller angles are all ≤ π/2.
pub fn best_zigzag(s: &PointSet) -> Result<PlaneGraph> {
    let paths = all_zigzag_paths(s)?;
    let good: Vec<&ZigzagPath> =
        paths.iter().filter(|z| path_smaller_angles(s, &z.order).iter().all(|&a| a <= FRAC_PI_2 + EPS)).collect();
    if s.len() >= 3 && good.len() < 2 {
        return Err(Error::ConstructionInvariantViolated(format!("only {} zigzag paths are 3π/2-open", good.len())));
    }
    let best =
        good.iter().map(|z| PlaneGraph::from_path(s.clone(), &z.order)).fold(None::<(f64, PlaneGraph)>, |acc, g| {
            let op = openness(&g).graph_openness;
            match acc {
                Some((b, _)) if b >= op => acc,
                _ => Some((op, g)),
            }
        });
    best.map(|(_, g)| g).ok_or_else(|| Error::ConstructionInvariantViolated("no zigzag path".into()))
}

fn expanding(s: &PointSet, ring: &Ring, p: usize, r: usize, tau: HalfPlaneSide) -> bool {
    let (q, sv, m) = ring.neighbors(p, r, tau);
    if m <= 3 {
        return false;
    }
    // rays q->p and s->r meet beyond pr iff they converge
    let c = s[p].sub(s[q]).cross(s[r].sub(s[sv]));
    match tau {
        HalfPlaneSide::Plus => c < 0.0,
        HalfPlaneSide::Minus => c > 0.0,
    }
}

/// Whether the rays q→p and s→r meet outside H^τ(p, r).
pub fn is_expanding(s: &PointSet, p: usize, r: usize, tau: HalfPlaneSide) -> Result<bool> {
    let ring = Ring::new(s)?;
    if p == r {
        return Err(Error::PreconditionViolated("segment endpoints coincide".into()));
    }
    Ok(expanding(s, &ring, p, r, tau))
}

fn claim_precondition(s: &PointSet, ring: &Ring, p: usize, r: usize, tau: HalfPlaneSide) -> Result<()> {
    if expanding(s, ring, p, r, tau) {
        return Err(Error::PreconditionViolated(format!("({p}, {r}) is expanding")));
    }
    for t in ring.side(p, r, tau) {
        if t != p && t != r && angle(s[t], s[r], s[p]) > FRAC_PI_2 + EPS {
            return Err(Error::PreconditionViolated(format!("point {t} makes an obtuse angle at {r}")));
        }
    }
    Ok(())
}

fn claim(
    s: &PointSet,
    ring: &Ring,
    p: usize,
    r: usize,
    tau: HalfPlaneSide,
    trace: &mut ConstructionTrace,
) -> Result<Vec<usize>> {
    let mut path = vec![p, r];
    let (mut p, mut r, mut tau) = (p, r, tau);
    loop {
        let (q, sv, m) = ring.neighbors(p, r, tau);
        match m {
            2 => return Ok(path),
            3 => {
                path.push(q);
                return Ok(path);
            }
            _ => {}
        }
        if angle(s[q], s[sv], s[r]) >= FRAC_PI_2 {
            trace.push("claim-1", vec![p, r, q, sv], "");
            path.extend([q, sv]);
            (p, r) = (q, sv);
        } else {
            let sum = angle(s[sv], s[r], s[p])
                + angle(s[r], s[p], s[q])
                + angle(s[p], s[q], s[sv])
                + angle(s[q], s[sv], s[r]);
            if (sum - TAU).abs() > 1e-9 {
                return Err(Error::ConstructionInvariantViolated(format!(
                    "quadrilateral ({p}, {r}, {sv}, {q}) has angle sum {sum}"
                )));
            }
            trace.push("claim-2", vec![p, r, sv, q], "");
            path.extend([sv, q]);
            (p, r, tau) = (sv, q, tau.flip());
        }
    }
}

/// Open spanning path of S^τ(p, r) starting with (p, r).
pub fn claim_rays_path(s: &PointSet, p: usize, r: usize, tau: HalfPlaneSide) -> Result<Vec<usize>> {
    let ring = Ring::new(s)?;
    if p == r {
        return Err(Error::PreconditionViolated("segment endpoints coincide".into()));
    }
    claim_precondition(s, &ring, p, r, tau)?;
    claim(s, &ring, p, r, tau, &mut ConstructionTrace::new())
}

/// Joins [u, v, A..] and [v, u, B..] into B reversed, u, v, A.
fn join(first: &[usize], second: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = second[2..].iter().rev().copied().collect();
    out.extend_from_slice(first);
    out
}

fn two_claims(
    s: &PointSet,
    ring: &Ring,
    u: usize,
    v: usize,
    tau: HalfPlaneSide,
    trace: &mut ConstructionTrace,
) -> Result<Vec<usize>> {
    claim_precondition(s, ring, u, v, tau)?;
    claim_precondition(s, ring, v, u, tau)?;
    let a = claim(s, ring, u, v, tau, trace)?;
    let b = claim(s, ring, v, u, tau, trace)?;
    Ok(join(&a, &b))
}

fn finish(s: &PointSet, order: Vec<usize>) -> Result<PlaneGraph> {
    let g = PlaneGraph::from_path(s.clone(), &order);
    if g.path_order().is_none() {
        return Err(Error::ConstructionInvariantViolated(format!("{order:?} is not a spanning path")));
    }
    let op = openness(&g).graph_openness;
    if op < CONVEX_PATH_BOUND - EPS {
        return Err(Error::ConstructionInvariantViolated(format!("path {order:?} has openness {op:.12}")));
    }
    Ok(g)
}

pub fn open_convex_path_order(s: &PointSet) -> Result<(Vec<usize>, ConstructionTrace)> {
    let ring = Ring::new(s)?;
    let mut trace = ConstructionTrace::new();
    if s.len() == 1 {
        return Ok((vec![0], trace));
    }
    let (p, r) = diameter(s)?;
    trace.push("diameter", vec![p, r], "");
    let order = two_claims(s, &ring, p, r, HalfPlaneSide::Plus, &mut trace)?;
    Ok((order, trace))
}

pub fn open_convex_path_traced(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    let (order, trace) = open_convex_path_order(s)?;
    Ok((finish(s, order)?, trace))
}

/// 3π/2-open spanning path through a diametrical segment.
pub fn open_convex_path(s: &PointSet) -> Result<PlaneGraph> {
    open_convex_path_traced(s).map(|r| r.0)
}

pub fn path_from_endpoint_order(s: &PointSet, p: usize) -> Result<(Vec<usize>, ConstructionTrace)> {
    let ring = Ring::new(s)?;
    let n = s.len();
    if p >= n {
        return Err(Error::PreconditionViolated(format!("index {p} out of range")));
    }
    let mut trace = ConstructionTrace::new();
    let ph = ring.run(p, ring.hull[(ring.pos[p] + n - 1) % n]);
    match n {
        1 | 2 => return Ok((ph, trace)),
        3 => {
            // the middle vertex needs the acute angle
            let (x, y) = (ph[1], ph[2]);
            let order = if angle(s[p], s[x], s[y]) <= angle(s[p], s[y], s[x]) { vec![p, x, y] } else { vec![p, y, x] };
            trace.push("triangle", order.clone(), "");
            return Ok((order, trace));
        }
        _ => {}
    }
    let last = (n - 1) / 2;
    let k = (1..=last)
        .find(|&i| !expanding(s, &ring, ph[i], ph[n - i], HalfPlaneSide::Minus))
        .ok_or_else(|| Error::ConstructionInvariantViolated("no non-expanding segment".into()))?;
    let (u, v) = (ph[k], ph[n - k]);
    let strip = |tau| -> Vec<usize> { ring.side(u, v, tau).into_iter().filter(|&t| t != u && t != v).collect() };
    let q = strip(HalfPlaneSide::Minus).into_iter().filter(|&t| angle(s[u], s[v], s[t]) > FRAC_PI_2).min();
    let w = strip(HalfPlaneSide::Plus).into_iter().filter(|&t| angle(s[v], s[u], s[t]) > FRAC_PI_2).min();
    // an obtuse witness at either end forces u on to the far side, v towards p
    let tau = match (q, w) {
        (Some(q), _) => {
            trace.push("endpoint-q", vec![u, v, q], format!("k={k}"));
            HalfPlaneSide::Plus
        }
        (None, Some(w)) => {
            trace.push("endpoint-s", vec![u, v, w], format!("k={k}"));
            HalfPlaneSide::Plus
        }
        (None, None) => {
            trace.push("endpoint-none", vec![u, v], format!("k={k}"));
            HalfPlaneSide::Minus
        }
    };
    let order = two_claims(s, &ring, u, v, tau, &mut trace)?;
    if order.first() != Some(&p) && order.last() != Some(&p) {
        return Err(Error::ConstructionInvariantViolated(format!("{p} is not an endpoint of {order:?}")));
    }
    Ok((order, trace))
}

pub fn path_from_endpoint_traced(s: &PointSet, p: usize) -> Result<(PlaneGraph, ConstructionTrace)> {
    let (order, trace) = path_from_endpoint_order(s, p)?;
    Ok((finish(s, order)?, trace))
}

/// 3π/2-open spanning path with `p` as an endpoint.
pub fn path_from_endpoint(s: &PointSet, p: usize) -> Result<PlaneGraph> {
    path_from_endpoint_traced(s, p).map(|r| r.0)
}
