//! Plane straight-line graphs over a [`PointSet`] and their openness.

use std::collections::BTreeSet;

use crate::geometry::{angle_between, convex_hull, segments_conflict, side, PointSet, TAU};

/// Undirected edge set over indices of a shared point set.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneGraph {
    base: PointSet,
    edges: BTreeSet<(usize, usize)>,
}

fn norm_edge(i: usize, j: usize) -> (usize, usize) {
    if i < j {
        (i, j)
    } else {
        (j, i)
    }
}

impl PlaneGraph {
    pub fn new(base: PointSet) -> Self {
        PlaneGraph { base, edges: BTreeSet::new() }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range indices
    /// panic; duplicates collapse.
    pub fn from_edges(base: PointSet, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = PlaneGraph::new(base);
        for (i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    /// Path graph visiting `order` in sequence.
    pub fn from_path(base: PointSet, order: &[usize]) -> Self {
        PlaneGraph::from_edges(base, order.windows(2).map(|w| (w[0], w[1])))
    }

    /// Returns false if the edge was already present.
    pub fn add_edge(&mut self, i: usize, j: usize) -> bool {
        assert!(i != j, "self-loop at {i}");
        assert!(i < self.base.len() && j < self.base.len(), "edge ({i}, {j}) out of range");
        self.edges.insert(norm_edge(i, j))
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) -> bool {
        self.edges.remove(&norm_edge(i, j))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&norm_edge(i, j))
    }

    pub fn base(&self) -> &PointSet {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (i, j) with i < j, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(i, j)| {
                if i == v {
                    Some(j)
                } else if j == v {
                    Some(i)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n()];
        for &(i, j) in &self.edges {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Whether the edge set forms a single connected component over all points.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut comps = n;
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                comps -= 1;
            }
        }
        comps == 1
    }

    /// Vertex sequence of a spanning path, if the graph is one.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 1 {
            return if self.edges.is_empty() { Some(vec![0]) } else { None };
        }
        if self.edge_count() != n - 1 || self.max_degree() > 2 || !self.is_connected() {
            return None;
        }
        let deg = self.degrees();
        let start = (0..n).find(|&v| deg[v] == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < n {
            let next = self.neighbors(cur).into_iter().find(|&w| w != prev)?;
            prev = cur;
            cur = next;
            order.push(cur);
        }
        Some(order)
    }
}

/// Incident angles at `v`: counterclockwise gaps between radially
/// consecutive edges, starting from the radially smallest edge. Degree ≤ 1
/// gives the single value 2π.
pub fn incident_angles(g: &PlaneGraph, v: usize) -> Vec<f64> {
    let s = g.base();
    let p = s[v];
    let mut nb = g.neighbors(v);
    if nb.len() <= 1 {
        return vec![TAU];
    }
    // radial order decided by exact predicates
    let upper = |w: usize| {
        let (dx, dy) = (s[w].x - p.x, s[w].y - p.y);
        dy > 0.0 || (dy == 0.0 && dx > 0.0)
    };
    nb.sort_by(|&i, &j| upper(j).cmp(&upper(i)).then_with(|| 0.cmp(&side(p, s[i], s[j]))));
    let k = nb.len();
    (0..k)
        .map(|i| {
            let (a, b) = (nb[i], nb[(i + 1) % k]);
            let small = angle_between(s[a].sub(p), s[b].sub(p));
            match side(p, s[a], s[b]) {
                1 => small,
                -1 => TAU - small,
                _ => std::f64::consts::PI,
            }
        })
        .collect()
}

/// Per-vertex maximum incident angle and the graph-level minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct OpennessReport {
    pub per_vertex: Vec<(usize, f64)>,
    pub graph_openness: f64,
}

impl OpennessReport {
    pub fn of(&self, v: usize) -> f64 {
        self.per_vertex[v].1
    }

    /// Vertex attaining the graph openness (smallest index on ties).
    pub fn worst_vertex(&self) -> usize {
        self.per_vertex.iter().fold((0, f64::INFINITY), |best, &(v, a)| if a < best.1 { (v, a) } else { best }).0
    }
}

pub fn vertex_openness(g: &PlaneGraph, v: usize) -> f64 {
    incident_angles(g, v).into_iter().fold(0.0, f64::max)
}

pub fn openness(g: &PlaneGraph) -> OpennessReport {
    let per_vertex: Vec<(usize, f64)> = (0..g.n()).map(|v| (v, vertex_openness(g, v))).collect();
    let graph_openness = per_vertex.iter().map(|&(_, a)| a).fold(TAU, f64::min);
    OpennessReport { per_vertex, graph_openness }
}

/// True iff no two edges meet except at a shared endpoint and no edge runs
/// through a third vertex.
pub fn is_plane(g: &PlaneGraph) -> bool {
    let pts = g.base().points();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    for (k, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[k + 1..] {
            if segments_conflict(pts[a], pts[b], pts[c], pts[d]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GraphClass {
    SpanningTree,
    SpanningPath,
    Triangulation,
    MaxDegree(usize),
}

/// Class predicates of a plane graph.
pub fn classify(g: &PlaneGraph) -> BTreeSet<GraphClass> {
    let mut out = BTreeSet::new();
    let n = g.n();
    let m = g.edge_count();
    out.insert(GraphClass::MaxDegree(g.max_degree()));
    let spanning = g.is_connected();
    if spanning && m + 1 == n {
        out.insert(GraphClass::SpanningTree);
        if g.max_degree() <= 2 {
            out.insert(GraphClass::SpanningPath);
        }
    }
    if n >= 3 {
        let hull = convex_hull(g.base());
        let h = hull.len();
        let hull_edges = (0..h).all(|k| g.has_edge(hull[k], hull[(k + 1) % h]));
        if m + 3 + h == 3 * n && hull_edges && g.degrees().iter().all(|&d| d > 0) {
            out.insert(GraphClass::Triangulation);
        }
    }
    out
}

/// Smaller angle at each interior vertex of a path, in visiting order
/// (endpoints excluded).
pub fn path_smaller_angles(base: &PointSet, order: &[usize]) -> Vec<f64> {
    order.windows(3).map(|w| crate::geometry::angle(base[w[0]], base[w[1]], base[w[2]])).collect()
}
