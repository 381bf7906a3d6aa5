//! 2π/3-open triangulations.
//!
//! The hull is fan-triangulated from its lexicographically smallest vertex.
//! Every triangle with interior points then picks, for each corner, the
//! interior point closest to the opposite side; that point sees the opposite
//! side in an empty triangle. The three candidate angles sum to at least 2π,
//! so the largest one is at least 2π/3, and its empty triangle becomes a
//! face. The two remaining triangles recurse.

use crate::error::{Error, Result};
use crate::geometry::{angle, convex_hull, line_distance, strictly_in_triangle, PointSet};
use crate::graph::PlaneGraph;
use crate::trace::ConstructionTrace;

/// A triangle of the current subdivision and the points strictly inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleSubproblem {
    /// Counterclockwise corners.
    pub corners: [usize; 3],
    pub interior: Vec<usize>,
}

/// Outcome of one split step.
#[derive(Debug, Clone, PartialEq)]
pub struct Split {
    pub apex: usize,
    /// Corner index (0..3) the apex replaces in its empty face.
    pub opposite: usize,
    /// Candidate apices and their angles, indexed by the corner they face.
    pub candidates: [(usize, f64); 3],
    pub new_edges: Vec<(usize, usize)>,
    pub children: Vec<TriangleSubproblem>,
}

impl Split {
    pub fn apex_angle(&self) -> f64 {
        self.candidates[self.opposite].1
    }
}

/// Interior point closest to the line through corners `u`, `w`; ties by
/// lexicographic position.
fn closest_to_side(s: &PointSet, interior: &[usize], u: usize, w: usize) -> usize {
    let (pu, pw) = (s[u], s[w]);
    *interior
        .iter()
        .min_by(|&&i, &&j| {
            line_distance(pu, pw, s[i]).total_cmp(&line_distance(pu, pw, s[j])).then_with(|| s[i].lex_cmp(&s[j]))
        })
        .expect("non-empty interior")
}

pub fn split_triangle(t: &TriangleSubproblem, s: &PointSet) -> Result<Split> {
    if t.interior.is_empty() {
        return Err(Error::PreconditionViolated("triangle has no interior points".into()));
    }
    let c = t.corners;
    let mut candidates = [(0usize, 0.0f64); 3];
    for k in 0..3 {
        let (u, w) = (c[(k + 1) % 3], c[(k + 2) % 3]);
        let x = closest_to_side(s, &t.interior, u, w);
        candidates[k] = (x, angle(s[u], s[x], s[w]));
    }
    let opposite = (0..3)
        .max_by(|&i, &j| {
            let (xi, ai) = candidates[i];
            let (xj, aj) = candidates[j];
            // larger angle wins; on ties the lexicographically smaller apex
            ai.total_cmp(&aj).then_with(|| s[xj].lex_cmp(&s[xi])).then_with(|| j.cmp(&i))
        })
        .unwrap();
    let apex = candidates[opposite].0;
    let k = opposite;
    let (ck, c1, c2) = (c[k], c[(k + 1) % 3], c[(k + 2) % 3]);
    let children_corners = [[ck, c1, apex], [c2, ck, apex]];
    let mut children: Vec<TriangleSubproblem> =
        children_corners.iter().map(|&corners| TriangleSubproblem { corners, interior: Vec::new() }).collect();
    for &p in t.interior.iter().filter(|&&p| p != apex) {
        let slot = children.iter_mut().find(|ch| {
            let [a, b, cc] = ch.corners;
            strictly_in_triangle(s[a], s[b], s[cc], s[p])
        });
        match slot {
            Some(ch) => ch.interior.push(p),
            None => {
                return Err(Error::ConstructionInvariantViolated(format!(
                    "point {p} lies in the face at apex {apex}, which must be empty"
                )))
            }
        }
    }
    Ok(Split { apex, opposite, candidates, new_edges: vec![(apex, ck), (apex, c1), (apex, c2)], children })
}

/// Fan triangulation of the hull with interior points distributed.
pub fn hull_fan(s: &PointSet) -> (Vec<(usize, usize)>, Vec<TriangleSubproblem>) {
    let hull = convex_hull(s);
    let h = hull.len();
    let mut edges = Vec::new();
    for k in 0..h {
        edges.push((hull[k], hull[(k + 1) % h]));
    }
    for k in 2..h.saturating_sub(1) {
        edges.push((hull[0], hull[k]));
    }
    let mut tris: Vec<TriangleSubproblem> = (1..h.saturating_sub(1))
        .map(|k| TriangleSubproblem { corners: [hull[0], hull[k], hull[k + 1]], interior: Vec::new() })
        .collect();
    let on_hull: std::collections::HashSet<usize> = hull.iter().copied().collect();
    for p in (0..s.len()).filter(|p| !on_hull.contains(p)) {
        if let Some(t) = tris.iter_mut().find(|t| {
            let [a, b, c] = t.corners;
            strictly_in_triangle(s[a], s[b], s[c], s[p])
        }) {
            t.interior.push(p);
        }
    }
    (edges, tris)
}

/// Triangulation in which every vertex has an incident angle ≥ 2π/3.
pub fn open_triangulation(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    if s.len() < 3 {
        return Err(Error::DegenerateInput(format!("triangulation needs at least 3 points, got {}", s.len())));
    }
    let mut trace = ConstructionTrace::new();
    let (edges, tris) = hull_fan(s);
    let mut g = PlaneGraph::from_edges(s.clone(), edges);
    trace.push("fan", convex_hull(s), format!("{} triangles", tris.len()));
    let mut stack: Vec<TriangleSubproblem> = tris.into_iter().rev().collect();
    while let Some(t) = stack.pop() {
        if t.interior.is_empty() {
            continue;
        }
        let split = split_triangle(&t, s)?;
        let sum: f64 = split.candidates.iter().map(|c| c.1).sum();
        trace.push(
            "apex",
            vec![split.apex, t.corners[0], t.corners[1], t.corners[2]],
            format!("opposite={} angle={:.12} candidate_sum={:.12}", split.opposite, split.apex_angle(), sum),
        );
        for (i, j) in &split.new_edges {
            g.add_edge(*i, *j);
        }
        for ch in split.children.into_iter().rev() {
            stack.push(ch);
        }
    }
    Ok((g, trace))
}
