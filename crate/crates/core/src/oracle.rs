//! Exhaustive maximization of openness over plane spanning paths, spanning
//! trees and triangulations of small sets.
//!
//! Paths and trees are searched depth first with branch and bound: adding an
//! edge never raises the maximum incident angle at its endpoints, so a
//! partial graph bounds every completion. Triangulations are enumerated in
//! full as maximal non-crossing edge sets, so their count is exact.

use crate::error::{Error, Result};
use crate::geometry::{angle, convex_hull, segments_conflict, PointSet, TAU};
use crate::graph::{openness, vertex_openness, PlaneGraph};

pub const PATH_CAP: usize = 10;
pub const TREE_CAP: usize = 9;
/// One above the tree cap so the ten-point tightness instances fit.
pub const TRIANGULATION_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleClass {
    Path { endpoint: Option<usize>, edge: Option<(usize, usize)> },
    Tree { max_degree: Option<usize> },
    Triangulation,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub class: OracleClass,
    pub max_openness: f64,
    pub witness: PlaneGraph,
    /// Complete candidates examined. Exact for triangulations; for paths
    /// and trees it counts only candidates that survived the bound.
    pub count_enumerated: u64,
}

/// Size caps. Each one is clamped to its hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_n: usize::MAX }
    }
}

fn check_cap(n: usize, hard: usize, limits: OracleLimits) -> Result<()> {
    let cap = hard.min(limits.max_n);
    if n > cap {
        return Err(Error::OracleTooLarge { n, cap });
    }
    Ok(())
}

/// All candidate segments in lexicographic order with their pairwise conflicts.
struct Segments {
    edges: Vec<(usize, usize)>,
    id: Vec<Vec<usize>>,
    conflict: Vec<Vec<bool>>,
}

impl Segments {
    fn new(s: &PointSet) -> Self {
        let n = s.len();
        let mut edges = Vec::new();
        let mut id = vec![vec![usize::MAX; n]; n];
        for i in 0..n {
            edges.extend((i + 1..n).map(|j| (i, j)));
        }
        for (k, &(i, j)) in edges.iter().enumerate() {
            id[i][j] = k;
            id[j][i] = k;
        }
        let m = edges.len();
        let mut conflict = vec![vec![false; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                let ((i, j), (k, l)) = (edges[a], edges[b]);
                let c = segments_conflict(s[i], s[j], s[k], s[l]);
                conflict[a][b] = c;
                conflict[b][a] = c;
            }
        }
        Segments { edges, id, conflict }
    }

    fn clashes(&self, e: usize, chosen: &[usize]) -> bool {
        chosen.iter().any(|&f| self.conflict[e][f])
    }
}

struct PathSearch<'a> {
    s: &'a PointSet,
    seg: Segments,
    edge: Option<(usize, usize)>,
    dedupe: bool,
    order: Vec<usize>,
    used: Vec<bool>,
    chosen: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    count: u64,
}

impl PathSearch<'_> {
    fn beats(&self, bound: f64) -> bool {
        self.best.as_ref().is_none_or(|(b, _)| bound > *b)
    }

    fn dfs(&mut self, partial: f64) {
        let n = self.s.len();
        if !self.beats(partial) {
            return;
        }
        if self.order.len() == n {
            if self.dedupe && self.order[0] > self.order[n - 1] {
                return;
            }
            if let Some((i, j)) = self.edge {
                if !self.chosen.contains(&self.seg.id[i][j]) {
                    return;
                }
            }
            self.count += 1;
            self.best = Some((partial, self.order.clone()));
            return;
        }
        let last = *self.order.last().unwrap();
        for w in 0..n {
            if self.used[w] {
                continue;
            }
            let e = self.seg.id[last][w];
            if self.seg.clashes(e, &self.chosen) {
                continue;
            }
            let next = match self.order.len() {
                1 => partial,
                k => partial.min(TAU - angle(self.s[self.order[k - 2]], self.s[last], self.s[w])),
            };
            self.used[w] = true;
            self.order.push(w);
            self.chosen.push(e);
            self.dfs(next);
            self.chosen.pop();
            self.order.pop();
            self.used[w] = false;
        }
    }
}

pub fn max_openness_paths_with(
    s: &PointSet,
    endpoint: Option<usize>,
    edge: Option<(usize, usize)>,
    limits: OracleLimits,
) -> Result<OracleResult> {
    let n = s.len();
    check_cap(n, PATH_CAP, limits)?;
    if let Some(q) = endpoint {
        if q >= n {
            return Err(Error::PreconditionViolated(format!("endpoint {q} out of range")));
        }
    }
    if let Some((i, j)) = edge {
        if i >= n || j >= n || i == j {
            return Err(Error::PreconditionViolated(format!("bad edge constraint ({i}, {j})")));
        }
    }
    let class = OracleClass::Path { endpoint, edge };
    let mut search = PathSearch {
        s,
        seg: Segments::new(s),
        edge,
        dedupe: endpoint.is_none(),
        order: Vec::with_capacity(n),
        used: vec![false; n],
        chosen: Vec::new(),
        best: None,
        count: 0,
    };
    let starts: Vec<usize> = match endpoint {
        Some(q) => vec![q],
        None => (0..n).collect(),
    };
    for q in starts {
        search.used[q] = true;
        search.order.push(q);
        search.dfs(TAU);
        search.order.pop();
        search.used[q] = false;
    }
    let (_, order) = search
        .best
        .ok_or_else(|| Error::PreconditionViolated("no plane spanning path meets the constraints".into()))?;
    finish(s, class, PlaneGraph::from_path(s.clone(), &order), search.count)
}

/// Maximum openness over plane spanning paths, optionally with a fixed
/// endpoint and/or a required edge.
pub fn max_openness_paths(s: &PointSet, endpoint: Option<usize>, edge: Option<(usize, usize)>) -> Result<OracleResult> {
    max_openness_paths_with(s, endpoint, edge, OracleLimits::default())
}

/// Best spanning path forced to start at `q`. Used on a regular polygon
/// with its center to show that an interior start point can lose the
/// convex-case guarantee.
pub fn counterexample_interior_start(s: &PointSet, q: usize) -> Result<OracleResult> {
    max_openness_paths(s, Some(q), None)
}

fn finish(s: &PointSet, class: OracleClass, witness: PlaneGraph, count: u64) -> Result<OracleResult> {
    debug_assert_eq!(witness.n(), s.len());
    Ok(OracleResult { class, max_openness: openness(&witness).graph_openness, witness, count_enumerated: count })
}

/// Union-find with undo, no path compression.
struct Forest {
    parent: Vec<usize>,
    size: Vec<usize>,
    log: Vec<(usize, usize)>,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest { parent: (0..n).collect(), size: vec![1; n], log: Vec::new() }
    }

    fn root(&self, mut v: usize) -> usize {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.root(a), self.root(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.log.push((a, b));
        true
    }

    fn undo(&mut self) {
        let (a, b) = self.log.pop().unwrap();
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

struct TreeSearch<'a> {
    s: &'a PointSet,
    seg: Segments,
    max_degree: usize,
    graph: PlaneGraph,
    forest: Forest,
    chosen: Vec<usize>,
    op: Vec<f64>,
    best: Option<(f64, Vec<usize>)>,
    count: u64,
}

impl TreeSearch<'_> {
    fn current(&self) -> f64 {
        self.op.iter().copied().fold(TAU, f64::min)
    }

    fn dfs(&mut self, k: usize) {
        let n = self.s.len();
        let bound = self.current();
        if self.best.as_ref().is_some_and(|(b, _)| bound <= *b) {
            return;
        }
        if self.chosen.len() == n - 1 {
            self.count += 1;
            self.best = Some((bound, self.chosen.clone()));
            return;
        }
        if self.chosen.len() + (self.seg.edges.len() - k) < n - 1 {
            return;
        }
        let (i, j) = self.seg.edges[k];
        let fits = self.graph.degrees()[i] < self.max_degree
            && self.graph.degrees()[j] < self.max_degree
            && !self.seg.clashes(k, &self.chosen);
        if fits && self.forest.union(i, j) {
            let saved = (self.op[i], self.op[j]);
            self.graph.add_edge(i, j);
            self.chosen.push(k);
            self.op[i] = vertex_openness(&self.graph, i);
            self.op[j] = vertex_openness(&self.graph, j);
            self.dfs(k + 1);
            (self.op[i], self.op[j]) = saved;
            self.chosen.pop();
            self.graph.remove_edge(i, j);
            self.forest.undo();
        }
        self.dfs(k + 1);
    }
}

pub fn max_openness_trees_with(s: &PointSet, max_degree: Option<usize>, limits: OracleLimits) -> Result<OracleResult> {
    let n = s.len();
    check_cap(n, TREE_CAP, limits)?;
    let class = OracleClass::Tree { max_degree };
    if n == 1 {
        return finish(s, class, PlaneGraph::new(s.clone()), 1);
    }
    if max_degree == Some(0) || (max_degree == Some(1) && n > 2) {
        return Err(Error::PreconditionViolated("no spanning tree has that degree bound".into()));
    }
    let mut search = TreeSearch {
        s,
        seg: Segments::new(s),
        max_degree: max_degree.unwrap_or(usize::MAX),
        graph: PlaneGraph::new(s.clone()),
        forest: Forest::new(n),
        chosen: Vec::new(),
        op: vec![TAU; n],
        best: None,
        count: 0,
    };
    search.dfs(0);
    let (_, edges) = search
        .best
        .ok_or_else(|| Error::PreconditionViolated("no plane spanning tree meets the degree bound".into()))?;
    let seg = &search.seg;
    let witness = PlaneGraph::from_edges(s.clone(), edges.iter().map(|&e| seg.edges[e]));
    finish(s, class, witness, search.count)
}

/// Maximum openness over plane spanning trees, optionally degree-bounded.
pub fn max_openness_trees(s: &PointSet, max_degree: Option<usize>) -> Result<OracleResult> {
    max_openness_trees_with(s, max_degree, OracleLimits::default())
}

struct TriSearch<'a> {
    s: &'a PointSet,
    seg: Segments,
    target: usize,
    chosen: Vec<usize>,
    /// Rejected segments no chosen segment crosses yet.
    pending: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    count: u64,
}

impl TriSearch<'_> {
    fn coverable(&self, k: usize) -> bool {
        self.pending
            .iter()
            .all(|&e| (k..self.seg.edges.len()).any(|f| self.seg.conflict[e][f] && !self.seg.clashes(f, &self.chosen)))
    }

    fn dfs(&mut self, k: usize) {
        if !self.coverable(k) {
            return;
        }
        let m = self.seg.edges.len();
        if k == m {
            if self.chosen.len() == self.target {
                self.count += 1;
                let g = PlaneGraph::from_edges(self.s.clone(), self.chosen.iter().map(|&e| self.seg.edges[e]));
                let op = openness(&g).graph_openness;
                if self.best.as_ref().is_none_or(|(b, _)| op > *b) {
                    self.best = Some((op, self.chosen.clone()));
                }
            }
            return;
        }
        if self.seg.clashes(k, &self.chosen) {
            self.dfs(k + 1);
            return;
        }
        if self.chosen.len() < self.target {
            let before = self.pending.len();
            let (kept, covered): (Vec<usize>, Vec<usize>) =
                self.pending.iter().partition(|&&e| !self.seg.conflict[e][k]);
            self.pending = kept;
            self.chosen.push(k);
            self.dfs(k + 1);
            self.chosen.pop();
            self.pending.extend(covered);
            self.pending.sort_unstable();
            debug_assert_eq!(self.pending.len(), before);
        }
        self.pending.push(k);
        self.dfs(k + 1);
        self.pending.pop();
    }
}

pub fn max_openness_triangulations_with(s: &PointSet, limits: OracleLimits) -> Result<OracleResult> {
    let n = s.len();
    check_cap(n, TRIANGULATION_CAP, limits)?;
    if n < 3 {
        return Err(Error::DegenerateInput(format!("triangulation needs at least 3 points, got {n}")));
    }
    let h = convex_hull(s).len();
    let mut search = TriSearch {
        s,
        seg: Segments::new(s),
        target: 3 * n - 3 - h,
        chosen: Vec::new(),
        pending: Vec::new(),
        best: None,
        count: 0,
    };
    search.dfs(0);
    let (_, edges) =
        search.best.ok_or_else(|| Error::ConstructionInvariantViolated("no triangulation found".into()))?;
    let seg = &search.seg;
    let witness = PlaneGraph::from_edges(s.clone(), edges.iter().map(|&e| seg.edges[e]));
    finish(s, OracleClass::Triangulation, witness, search.count)
}

/// Maximum openness over all triangulations, with their exact count.
pub fn max_openness_triangulations(s: &PointSet) -> Result<OracleResult> {
    max_openness_triangulations_with(s, OracleLimits::default())
}
