//! 5π/3-open spanning trees.
//!
//! Let (a, b) be a diametrical pair, c the point above ab furthest from the
//! line ab and d the point below it furthest from ab. All points lie in the
//! box bounded by the slab of (a, b) and the parallels to ab through c and d.
//! A short backbone path P over {a, b, c, d} (plus at most one extra point)
//! is chosen so that every vertex of P has a small angle (≤ π/3) enclosing a
//! cone; endpoint cones are closed by the nearer box side. The cones cover
//! all remaining points, and each remaining point is joined to the apex of
//! its cone.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::{angle, angle_between, diameter, line_distance, segments_conflict, side, PointSet, Vector, EPS};
use crate::graph::{classify, is_plane, openness, GraphClass, PlaneGraph};
use crate::trace::ConstructionTrace;

/// Openness every returned tree must reach.
pub const TREE_BOUND: f64 = 5.0 * PI / 3.0;

fn small(x: f64) -> bool {
    x <= FRAC_PI_3 + EPS
}

fn large(x: f64) -> bool {
    !small(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackboneLabel {
    Case1,
    Case2_1,
    Case2_2_1,
    Case2_2_2_1_1,
    Case2_2_2_1_2,
    Case2_2_2_2a,
    Case2_2_2_2b,
    HullEdge,
    /// n ≤ 2, no backbone needed.
    Direct,
}

impl fmt::Display for BackboneLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BackboneLabel::Case1 => "C1",
            BackboneLabel::Case2_1 => "C2_1",
            BackboneLabel::Case2_2_1 => "C2_2_1",
            BackboneLabel::Case2_2_2_1_1 => "C2_2_2_1_1",
            BackboneLabel::Case2_2_2_1_2 => "C2_2_2_1_2",
            BackboneLabel::Case2_2_2_2a => "C2_2_2_2a",
            BackboneLabel::Case2_2_2_2b => "C2_2_2_2b",
            BackboneLabel::HullEdge => "HullEdge",
            BackboneLabel::Direct => "Direct",
        };
        f.write_str(s)
    }
}

/// Named angles of the diametrical configuration.
///
/// `alpha*` sit at a, `beta*` at b (index 1 towards c, 2 towards d).
/// `gamma = gamma1 + gamma2` is the angle acb split by the segment cd;
/// `delta = delta1 + delta2` likewise at d. Primed angles are measured
/// against the slab lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleLabels {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma: f64,
    pub delta: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub alpha1p: f64,
    pub alpha2p: f64,
    pub beta1p: f64,
    pub beta2p: f64,
}

impl AngleLabels {
    pub fn compute(s: &PointSet, a: usize, b: usize, c: usize, d: usize) -> Self {
        let (pa, pb, pc, pd) = (s[a], s[b], s[c], s[d]);
        let alpha1 = angle(pb, pa, pc);
        let alpha2 = angle(pb, pa, pd);
        let beta1 = angle(pa, pb, pc);
        let beta2 = angle(pa, pb, pd);
        AngleLabels {
            alpha1,
            alpha2,
            beta1,
            beta2,
            gamma: angle(pa, pc, pb),
            delta: angle(pa, pd, pb),
            gamma1: angle(pa, pc, pd),
            gamma2: angle(pd, pc, pb),
            delta1: angle(pa, pd, pc),
            delta2: angle(pc, pd, pb),
            alpha1p: FRAC_PI_2 - alpha1,
            alpha2p: FRAC_PI_2 - alpha2,
            beta1p: FRAC_PI_2 - beta1,
            beta2p: FRAC_PI_2 - beta2,
        }
    }
}

/// Boundary ray of a cone: towards an input point (decided exactly) or along
/// a free box direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ray {
    Toward(usize),
    Dir(Vector),
}

impl Ray {
    pub fn direction(&self, s: &PointSet, apex: usize) -> Vector {
        match *self {
            Ray::Toward(q) => s[q].sub(s[apex]),
            Ray::Dir(v) => v,
        }
    }

    /// Side of `r` relative to the ray: 1 left, -1 right, 0 on.
    fn side_of(&self, s: &PointSet, apex: usize, r: usize) -> i8 {
        match *self {
            Ray::Toward(q) => side(s[apex], s[q], s[r]),
            // box sides bound every point, so nothing lies beyond them
            Ray::Dir(_) => 0,
        }
    }
}

/// Closed wedge at `apex`, swept counterclockwise from `from` to `to`
/// (sweep < π).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cone {
    pub apex: usize,
    pub from: Ray,
    pub to: Ray,
}

impl Cone {
    fn spanning(s: &PointSet, apex: usize, u: Ray, w: Ray) -> Self {
        if u.direction(s, apex).cross(w.direction(s, apex)) >= 0.0 {
            Cone { apex, from: u, to: w }
        } else {
            Cone { apex, from: w, to: u }
        }
    }

    pub fn width(&self, s: &PointSet) -> f64 {
        angle_between(self.from.direction(s, self.apex), self.to.direction(s, self.apex))
    }

    pub fn contains(&self, s: &PointSet, r: usize) -> bool {
        self.from.side_of(s, self.apex, r) >= 0 && self.to.side_of(s, self.apex, r) <= 0
    }
}

/// Selected backbone path with its cones.
#[derive(Debug, Clone, PartialEq)]
pub struct BackboneCase {
    pub label: BackboneLabel,
    pub path: Vec<usize>,
    pub cones: Vec<Cone>,
    /// Cone index per point (`None` for path vertices).
    pub assignment: Vec<Option<usize>>,
    /// Points lying in more than one visible cone.
    pub multiply_covered: usize,
    /// True if the primary case failed and another backbone was used.
    pub fallback: bool,
    pub labels: Option<AngleLabels>,
    /// (nu, rho, omega) of the five-vertex cases.
    pub extra_angles: Option<(f64, f64, f64)>,
}

/// The diametrical configuration: a, b and the extreme points c, d.
#[derive(Debug, Clone, Copy)]
struct Frame {
    a: usize,
    b: usize,
    c: Option<usize>,
    d: Option<usize>,
    /// Unit direction of ab.
    u: Vector,
}

impl Frame {
    fn new(s: &PointSet) -> Result<Self> {
        let (a, b) = diameter(s)?;
        let (pa, pb) = (s[a], s[b]);
        let extreme = |want: i8| {
            (0..s.len()).filter(|&i| i != a && i != b && side(pa, pb, s[i]) == want).max_by(|&i, &j| {
                line_distance(pa, pb, s[i]).total_cmp(&line_distance(pa, pb, s[j])).then_with(|| s[j].lex_cmp(&s[i]))
            })
        };
        Ok(Frame { a, b, c: extreme(1), d: extreme(-1), u: pb.sub(pa).unit() })
    }

    /// Box side direction at an endpoint: slab line for a/b, parallel for c/d.
    fn box_side(&self, v: usize) -> Vector {
        if v == self.a || v == self.b {
            self.u.perp()
        } else {
            self.u
        }
    }
}

fn cones_for(s: &PointSet, frame: &Frame, path: &[usize]) -> Vec<Cone> {
    let k = path.len();
    let mut cones = Vec::with_capacity(k);
    for i in 1..k - 1 {
        cones.push(Cone::spanning(s, path[i], Ray::Toward(path[i - 1]), Ray::Toward(path[i + 1])));
    }
    for (v, nb, nn) in [(path[0], path[1], path[2]), (path[k - 1], path[k - 2], path[k - 3])] {
        // the box side on the far side of the path edge from the rest of the path
        let e = s[nb].sub(s[v]);
        let side_dir = frame.box_side(v);
        let toward = e.cross(s[nn].sub(s[v])).signum();
        let side_dir = if e.cross(side_dir).signum() == toward { side_dir.neg() } else { side_dir };
        cones.push(Cone::spanning(s, v, Ray::Toward(nb), Ray::Dir(side_dir)));
    }
    cones
}

/// Endpoint cones only take points within a small angle of the path edge.
fn admits(s: &PointSet, path: &[usize], cone: &Cone, r: usize) -> bool {
    let k = path.len();
    let edge = if cone.apex == path[0] {
        Some(path[1])
    } else if cone.apex == path[k - 1] {
        Some(path[k - 2])
    } else {
        None
    };
    cone.contains(s, r) && edge.is_none_or(|q| small(angle(s[q], s[cone.apex], s[r])))
}

/// Assigns each non-path point to the first cone that contains it and whose
/// apex sees it without crossing the path.
fn assign(s: &PointSet, path: &[usize], cones: &[Cone]) -> Option<(Vec<Option<usize>>, usize)> {
    let n = s.len();
    let mut on_path = vec![false; n];
    for &v in path {
        on_path[v] = true;
    }
    let path_edges: Vec<(usize, usize)> = path.windows(2).map(|w| (w[0], w[1])).collect();
    let visible =
        |apex: usize, r: usize| path_edges.iter().all(|&(i, j)| !segments_conflict(s[apex], s[r], s[i], s[j]));
    let mut out = vec![None; n];
    let mut multi = 0;
    for r in (0..n).filter(|&r| !on_path[r]) {
        let hits: Vec<usize> =
            (0..cones.len()).filter(|&k| admits(s, path, &cones[k], r) && visible(cones[k].apex, r)).collect();
        if hits.len() > 1 {
            multi += 1;
        }
        out[r] = Some(*hits.first()?);
    }
    Some((out, multi))
}

fn path_is_small(s: &PointSet, path: &[usize]) -> bool {
    path.windows(3).all(|w| small(angle(s[w[0]], s[w[1]], s[w[2]])))
}

fn build_tree(s: &PointSet, case: &BackboneCase) -> PlaneGraph {
    let mut g = PlaneGraph::from_path(s.clone(), &case.path);
    for (r, slot) in case.assignment.iter().enumerate() {
        if let Some(k) = slot {
            g.add_edge(case.cones[*k].apex, r);
        }
    }
    g
}

fn tree_ok(g: &PlaneGraph) -> bool {
    classify(g).contains(&GraphClass::SpanningTree) && is_plane(g) && openness(g).graph_openness >= TREE_BOUND - EPS
}

/// Point of `pool` maximizing `score`, ties lexicographic.
fn argmax(s: &PointSet, pool: &[usize], score: impl Fn(usize) -> f64) -> Option<usize> {
    pool.iter().copied().max_by(|&i, &j| score(i).total_cmp(&score(j)).then_with(|| s[j].lex_cmp(&s[i])))
}

/// Points strictly on the side of line (x, y) opposite to `away`.
fn beyond(s: &PointSet, x: usize, y: usize, away: usize, skip: &[usize]) -> Vec<usize> {
    let sa = side(s[x], s[y], s[away]);
    (0..s.len()).filter(|i| !skip.contains(i)).filter(|&i| side(s[x], s[y], s[i]) == -sa).collect()
}

struct Candidate {
    label: BackboneLabel,
    path: Vec<usize>,
    labels: Option<AngleLabels>,
    extra: Option<(f64, f64, f64)>,
}

impl Candidate {
    fn new(label: BackboneLabel, path: Vec<usize>) -> Self {
        Candidate { label, path, labels: None, extra: None }
    }
}

fn five_point_extra(s: &PointSet, frame: &Frame, c: usize, e: usize, a: usize, b: usize) -> (f64, f64, f64) {
    let ce = s[e].sub(s[c]);
    let nu = angle_between(ce, frame.u).min(angle_between(ce, frame.u.neg()));
    (nu, angle(s[c], s[e], s[a]), angle(s[e], s[a], s[b]))
}

/// The case the proof dispatches to.
fn primary(s: &PointSet, frame: &Frame) -> Candidate {
    let (a0, b0) = (frame.a, frame.b);
    let (c, d) = match (frame.c, frame.d) {
        (Some(c), Some(d)) => (c, d),
        (None, Some(d)) => {
            let beta2 = angle(s[a0], s[b0], s[d]);
            let path = if small(beta2) { vec![a0, b0, d] } else { vec![b0, a0, d] };
            return Candidate::new(BackboneLabel::HullEdge, path);
        }
        (Some(c), None) => {
            let beta1 = angle(s[a0], s[b0], s[c]);
            let path = if small(beta1) { vec![a0, b0, c] } else { vec![b0, a0, c] };
            return Candidate::new(BackboneLabel::HullEdge, path);
        }
        (None, None) => return Candidate::new(BackboneLabel::Direct, vec![a0, b0]),
    };
    let l0 = AngleLabels::compute(s, a0, b0, c, d);
    let both_a = large(l0.alpha1) && large(l0.alpha2);
    let both_b = large(l0.beta1) && large(l0.beta2);
    if !both_a && !both_b {
        let path = if small(l0.alpha1) && small(l0.beta2) { vec![c, a0, b0, d] } else { vec![c, b0, a0, d] };
        let mut cand = Candidate::new(BackboneLabel::Case1, path);
        cand.labels = Some(l0);
        return cand;
    }
    // both angles large at "a" after relabeling
    let (a, b) = if both_a { (a0, b0) } else { (b0, a0) };
    let l = AngleLabels::compute(s, a, b, c, d);
    let with = |label, path: Vec<usize>| {
        let mut cand = Candidate::new(label, path);
        cand.labels = Some(l);
        cand
    };
    if small(l.beta1 + l.beta2) {
        return with(BackboneLabel::Case2_1, vec![c, b, d]);
    }
    if small(l.beta1p) && small(l.gamma2) {
        return with(BackboneLabel::Case2_2_1, vec![a, d, c, b]);
    }
    if small(l.beta2p) && small(l.delta2) {
        return with(BackboneLabel::Case2_2_1, vec![a, c, d, b]);
    }
    let skip = [a, b, c, d];
    if large(l.beta1p) && large(l.delta2) {
        let sc = beyond(s, c, b, a, &skip);
        match argmax(s, &sc, |p| angle(s[p], s[b], s[c])) {
            Some(e) if large(angle(s[e], s[b], s[c])) => {
                let mut cand = with(BackboneLabel::Case2_2_2_1_2, vec![c, e, a, b, d]);
                cand.extra = Some(five_point_extra(s, frame, c, e, a, b));
                cand
            }
            _ => with(BackboneLabel::Case2_2_2_1_1, vec![a, d, c, b]),
        }
    } else {
        let sd = beyond(s, d, b, a, &skip);
        match argmax(s, &sd, |q| angle(s[d], s[b], s[q])) {
            Some(f) if large(angle(s[d], s[b], s[f])) => {
                let mut cand = with(BackboneLabel::Case2_2_2_2b, vec![c, b, a, f, d]);
                cand.extra = Some(five_point_extra(s, frame, d, f, a, b));
                cand
            }
            _ => with(BackboneLabel::Case2_2_2_2a, vec![a, c, d, b]),
        }
    }
}

/// Label and path the case dispatch picks, before any verification.
pub fn dispatch(s: &PointSet) -> Result<(BackboneLabel, Vec<usize>)> {
    let frame = Frame::new(s)?;
    let c = primary(s, &frame);
    Ok((c.label, c.path))
}

/// Every backbone the case analysis can produce, in a fixed order.
fn all_candidates(s: &PointSet, frame: &Frame) -> Vec<Candidate> {
    let (a, b) = (frame.a, frame.b);
    let mut out = Vec::new();
    match (frame.c, frame.d) {
        (Some(c), Some(d)) => {
            let fixed: [(BackboneLabel, [usize; 4]); 8] = [
                (BackboneLabel::Case1, [c, a, b, d]),
                (BackboneLabel::Case1, [c, b, a, d]),
                (BackboneLabel::Case2_2_1, [a, d, c, b]),
                (BackboneLabel::Case2_2_1, [a, c, d, b]),
                (BackboneLabel::Case2_2_1, [b, d, c, a]),
                (BackboneLabel::Case2_2_1, [b, c, d, a]),
                (BackboneLabel::Case2_1, [c, b, d, usize::MAX]),
                (BackboneLabel::Case2_1, [c, a, d, usize::MAX]),
            ];
            for (label, p) in fixed {
                out.push(Candidate::new(label, p.iter().copied().filter(|&v| v != usize::MAX).collect()));
            }
            let skip = [a, b, c, d];
            for (x, y) in [(a, b), (b, a)] {
                let sc = beyond(s, c, y, x, &skip);
                if let Some(e) = argmax(s, &sc, |p| angle(s[p], s[y], s[c])) {
                    out.push(Candidate::new(BackboneLabel::Case2_2_2_1_2, vec![c, e, x, y, d]));
                }
                let sd = beyond(s, d, y, x, &skip);
                if let Some(f) = argmax(s, &sd, |q| angle(s[d], s[y], s[q])) {
                    out.push(Candidate::new(BackboneLabel::Case2_2_2_2b, vec![c, y, x, f, d]));
                }
            }
        }
        (None, Some(e)) | (Some(e), None) => {
            out.push(Candidate::new(BackboneLabel::HullEdge, vec![a, b, e]));
            out.push(Candidate::new(BackboneLabel::HullEdge, vec![b, a, e]));
        }
        (None, None) => {}
    }
    out
}

fn realize(s: &PointSet, frame: &Frame, cand: Candidate, fallback: bool) -> Option<BackboneCase> {
    if !path_is_small(s, &cand.path) {
        return None;
    }
    if let Some((nu, rho, omega)) = cand.extra {
        if !(small(nu) && small(rho) && small(omega)) {
            return None;
        }
    }
    let cones = cones_for(s, frame, &cand.path);
    let (assignment, multiply_covered) = assign(s, &cand.path, &cones)?;
    // the cones must partition the leftover points
    if multiply_covered > 0 {
        return None;
    }
    let case = BackboneCase {
        label: cand.label,
        path: cand.path,
        cones,
        assignment,
        multiply_covered,
        fallback,
        labels: cand.labels,
        extra_angles: cand.extra,
    };
    tree_ok(&build_tree(s, &case)).then_some(case)
}

/// Runs the case dispatch and returns a backbone whose cones cover every
/// remaining point and whose tree passes verification.
pub fn select_backbone(s: &PointSet) -> Result<BackboneCase> {
    let frame = Frame::new(s)?;
    let first = primary(s, &frame);
    if first.label == BackboneLabel::Direct {
        return Ok(BackboneCase {
            label: BackboneLabel::Direct,
            path: first.path,
            cones: Vec::new(),
            assignment: vec![None; s.len()],
            multiply_covered: 0,
            fallback: false,
            labels: None,
            extra_angles: None,
        });
    }
    let first_path = first.path.clone();
    if let Some(case) = realize(s, &frame, first, false) {
        return Ok(case);
    }
    for cand in all_candidates(s, &frame) {
        if cand.path == first_path {
            continue;
        }
        if let Some(case) = realize(s, &frame, cand, true) {
            return Ok(case);
        }
    }
    Err(Error::ConstructionInvariantViolated(format!("no backbone validates (primary path {first_path:?})")))
}

/// Joins every non-path point to the apex of its cone.
pub fn attach_leftovers(case: &BackboneCase, s: &PointSet) -> Result<PlaneGraph> {
    if case.assignment.len() != s.len() {
        return Err(Error::PreconditionViolated("assignment does not match point set".into()));
    }
    for (r, slot) in case.assignment.iter().enumerate() {
        if slot.is_none() && !case.path.contains(&r) {
            return Err(Error::PreconditionViolated(format!("point {r} has no cone")));
        }
    }
    Ok(build_tree(s, case))
}

/// Spanning tree with openness at least 5π/3.
pub fn open_spanning_tree(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    if s.len() < 2 {
        return Err(Error::DegenerateInput(format!("spanning tree needs at least 2 points, got {}", s.len())));
    }
    let case = select_backbone(s)?;
    let mut trace = ConstructionTrace::new();
    trace.push(case.label.to_string(), case.path.clone(), if case.fallback { "fallback" } else { "" });
    for (r, slot) in case.assignment.iter().enumerate() {
        if let Some(k) = slot {
            trace.push("cone", vec![r, case.cones[*k].apex], "");
        }
    }
    let g = attach_leftovers(&case, s)?;
    if !tree_ok(&g) {
        return Err(Error::ConstructionInvariantViolated(format!(
            "tree from {} has openness {:.12}",
            case.label,
            openness(&g).graph_openness
        )));
    }
    Ok((g, trace))
}
