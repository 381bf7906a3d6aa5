//! 3π/2-open spanning trees of maximum degree four and three.
//!
//! The diameter (a, b) splits the remaining points into the sets above and
//! below ab, owned by a and b. An owner o with set X takes a diametrical
//! pair (c, d) of X such that ∠dco < π/2 and builds the path o, c, d. The
//! points of X beyond the line dc are owned by d, the rest by c. Each owner
//! sees all of its set within a quarter turn of its existing edges, so every
//! vertex keeps a free angle of at least 3π/2.
//!
//! For degree four, c owns its points on both sides of oc. For degree three
//! the edge oc is replaced by the tangent path o, p, q, c and the points are
//! split among p, q and c.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::geometry::{angle, diameter, diameter_of, side, PointSet, EPS};
use crate::graph::{classify, is_plane, openness, vertex_openness, GraphClass, PlaneGraph};
use crate::trace::ConstructionTrace;

pub const BOUNDED_TREE_BOUND: f64 = 1.5 * PI;

/// A set of points handed to an owner vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub owner: usize,
    pub members: Vec<usize>,
    /// Clockwise-most and counterclockwise-most member as seen from the owner.
    pub wedge: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeBound {
    Four,
    Three,
}

impl DegreeBound {
    fn max_degree(self) -> usize {
        match self {
            DegreeBound::Four => 4,
            DegreeBound::Three => 3,
        }
    }

    fn max_sets(self) -> usize {
        match self {
            DegreeBound::Four => 2,
            DegreeBound::Three => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BoundedTree {
    pub graph: PlaneGraph,
    pub trace: ConstructionTrace,
    pub assignments: Vec<Assignment>,
}

/// Orders points by direction around `o`, clockwise first. Only valid when
/// all of them lie in an open half-plane through `o`.
fn by_direction(s: &PointSet, o: usize) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&i, &j| match side(s[o], s[i], s[j]) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

fn wedge_of(s: &PointSet, o: usize, members: &[usize]) -> (usize, usize) {
    let cmp = by_direction(s, o);
    let first = *members.iter().min_by(|a, b| cmp(a, b)).unwrap();
    let last = *members.iter().max_by(|a, b| cmp(a, b)).unwrap();
    (first, last)
}

struct Builder<'a> {
    s: &'a PointSet,
    bound: DegreeBound,
    graph: PlaneGraph,
    trace: ConstructionTrace,
    assignments: Vec<Assignment>,
    sets: Vec<usize>,
    tasks: Vec<(usize, Vec<usize>)>,
}

impl<'a> Builder<'a> {
    fn assign(&mut self, owner: usize, members: Vec<usize>) -> Result<()> {
        if members.is_empty() {
            return Ok(());
        }
        self.sets[owner] += 1;
        if self.sets[owner] > self.bound.max_sets() {
            return Err(Error::ConstructionInvariantViolated(format!("vertex {owner} owns {} sets", self.sets[owner])));
        }
        self.assignments.push(Assignment { owner, wedge: wedge_of(self.s, owner, &members), members: members.clone() });
        self.tasks.push((owner, members));
        Ok(())
    }

    fn link(&mut self, owner: usize, head: usize) -> Result<()> {
        self.graph.add_edge(owner, head);
        // invariant (ii): the owner keeps a free 3π/2 after reaching into its set
        let op = vertex_openness(&self.graph, owner);
        if op < BOUNDED_TREE_BOUND - EPS {
            return Err(Error::ConstructionInvariantViolated(format!(
                "owner {owner} drops to openness {op:.12} after edge to {head}"
            )));
        }
        Ok(())
    }

    fn step(&mut self, o: usize, x: Vec<usize>) -> Result<()> {
        let s = self.s;
        if x.len() == 1 {
            self.trace.push("single", vec![o, x[0]], "");
            return self.link(o, x[0]);
        }
        let (u, v) = diameter_of(s.points(), &x);
        let (c, d) = if angle(s[v], s[u], s[o]) <= angle(s[u], s[v], s[o]) { (u, v) } else { (v, u) };
        if angle(s[d], s[c], s[o]) >= FRAC_PI_2 + EPS {
            return Err(Error::ConstructionInvariantViolated(format!(
                "angle at {c} between {d} and owner {o} is not acute"
            )));
        }
        let o_side = side(s[d], s[c], s[o]);
        let (mut sc, mut sd) = (Vec::new(), Vec::new());
        for &e in x.iter().filter(|&&e| e != c && e != d) {
            if side(s[d], s[c], s[e]) == o_side {
                sc.push(e);
            } else {
                sd.push(e);
            }
        }
        for &e in &sc {
            if angle(s[d], s[c], s[e]) > FRAC_PI_2 + EPS {
                return Err(Error::ConstructionInvariantViolated(format!("point {e} leaves the slab of ({c}, {d})")));
            }
        }
        for &e in &sd {
            if angle(s[c], s[d], s[e]) > FRAC_PI_2 + EPS {
                return Err(Error::ConstructionInvariantViolated(format!("point {e} leaves the slab of ({c}, {d})")));
            }
        }
        let (plus, minus): (Vec<usize>, Vec<usize>) = sc.iter().partition(|&&e| side(s[o], s[c], s[e]) > 0);

        if self.bound == DegreeBound::Four || plus.is_empty() || minus.is_empty() {
            self.trace.push("split", vec![o, c, d], format!("plus={} minus={}", plus.len(), minus.len()));
            self.link(o, c)?;
            self.graph.add_edge(c, d);
            self.assign(d, sd)?;
            if self.bound == DegreeBound::Four {
                self.assign(c, plus)?;
                self.assign(c, minus)?;
            } else {
                self.assign(c, sc)?;
            }
            return Ok(());
        }

        // tangent refinement
        let (t1, t2) = wedge_of(s, o, &sc);
        let proj = |e: usize| s[e].sub(s[o]).dot(s[c].sub(s[o]));
        let (p, q) = if proj(t1) >= proj(t2) { (t1, t2) } else { (t2, t1) };
        let o_of_pq = side(s[p], s[q], s[o]);
        let p_of_qc = side(s[q], s[c], s[p]);
        let (mut ap, mut aq, mut ac) = (Vec::new(), Vec::new(), Vec::new());
        for &e in sc.iter().filter(|&&e| e != p && e != q) {
            if side(s[p], s[q], s[e]) == o_of_pq {
                ap.push(e);
            } else if side(s[q], s[c], s[e]) == p_of_qc {
                aq.push(e);
            } else {
                ac.push(e);
            }
        }
        self.trace.push("tangent", vec![o, p, q, c, d], format!("p={} q={} c={}", ap.len(), aq.len(), ac.len()));
        self.link(o, p)?;
        self.graph.add_edge(p, q);
        self.graph.add_edge(q, c);
        self.graph.add_edge(c, d);
        self.assign(d, sd)?;
        self.assign(p, ap)?;
        self.assign(q, aq)?;
        self.assign(c, ac)?;
        Ok(())
    }
}

/// Runs the construction for the given degree bound, with the per-owner
/// set assignments.
pub fn build(s: &PointSet, bound: DegreeBound) -> Result<BoundedTree> {
    let n = s.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!("tree needs at least 2 points, got {n}")));
    }
    let (a, b) = diameter(s)?;
    let mut bld = Builder {
        s,
        bound,
        graph: PlaneGraph::new(s.clone()),
        trace: ConstructionTrace::new(),
        assignments: Vec::new(),
        sets: vec![0; n],
        tasks: Vec::new(),
    };
    bld.graph.add_edge(a, b);
    let (above, below): (Vec<usize>, Vec<usize>) =
        (0..n).filter(|&i| i != a && i != b).partition(|&i| side(s[a], s[b], s[i]) > 0);
    bld.trace.push("diameter", vec![a, b], format!("above={} below={}", above.len(), below.len()));
    // below first so the set above a is expanded first
    bld.assign(b, below)?;
    bld.assign(a, above)?;
    while let Some((o, x)) = bld.tasks.pop() {
        bld.step(o, x)?;
    }
    let g = &bld.graph;
    let op = openness(g).graph_openness;
    if !classify(g).contains(&GraphClass::SpanningTree)
        || !is_plane(g)
        || g.max_degree() > bound.max_degree()
        || op < BOUNDED_TREE_BOUND - EPS
    {
        return Err(Error::ConstructionInvariantViolated(format!(
            "tree fails verification: degree {} openness {op:.12}",
            g.max_degree()
        )));
    }
    Ok(BoundedTree { graph: bld.graph, trace: bld.trace, assignments: bld.assignments })
}

/// 3π/2-open spanning tree with maximum degree four.
pub fn open_tree_deg4(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    build(s, DegreeBound::Four).map(|t| (t.graph, t.trace))
}

/// 3π/2-open spanning tree with maximum degree three.
pub fn open_tree_deg3(s: &PointSet) -> Result<(PlaneGraph, ConstructionTrace)> {
    build(s, DegreeBound::Three).map(|t| (t.graph, t.trace))
}
