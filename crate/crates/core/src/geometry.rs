//! Geometric primitives over finite planar point sets.
//!
//! Sign decisions (orientation, segment crossing, hull membership) go through
//! an adaptive exact orientation predicate. Angle comparisons use [`EPS`].

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Absolute tolerance for angle comparisons, in radians.
pub const EPS: f64 = 1e-9;

/// Full turn.
pub const TAU: f64 = 2.0 * PI;

/// Largest point set validated exhaustively for general position.
pub const EXHAUSTIVE_VALIDATION_LIMIT: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, o: Point) -> Vector {
        Vector::new(self.x - o.x, self.y - o.y)
    }

    pub fn dist2(self, o: Point) -> f64 {
        let d = self.sub(o);
        d.dot(d)
    }

    pub fn dist(self, o: Point) -> f64 {
        self.dist2(o).sqrt()
    }

    /// Lexicographic order on (x, y).
    pub fn lex_cmp(&self, o: &Point) -> Ordering {
        self.x.total_cmp(&o.x).then_with(|| self.y.total_cmp(&o.y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Free vector, used for directions that are not anchored at input points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector {
    pub x: f64,
    pub y: f64,
}

impl Vector {
    pub const fn new(x: f64, y: f64) -> Self {
        Vector { x, y }
    }

    pub fn dot(self, o: Vector) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Vector) -> f64 {
        self.x * o.y - self.y * o.x
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Vector {
        Vector::new(-self.x, -self.y)
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn unit(self) -> Vector {
        let n = self.norm();
        Vector::new(self.x / n, self.y / n)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Vector {
        Vector::new(-self.y, self.x)
    }

    pub fn atan2(self) -> f64 {
        self.y.atan2(self.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

/// Side of a directed line `p -> r`: `Plus` is on or left, `Minus` on or right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfPlaneSide {
    Plus,
    Minus,
}

impl HalfPlaneSide {
    pub fn flip(self) -> Self {
        match self {
            HalfPlaneSide::Plus => HalfPlaneSide::Minus,
            HalfPlaneSide::Minus => HalfPlaneSide::Plus,
        }
    }
}

/// Sign of the signed area of triangle (a, b, c), exact for all finite inputs.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let det = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if det > 0.0 {
        Orientation::CounterClockwise
    } else if det < 0.0 {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

fn orient_sign(a: Point, b: Point, c: Point) -> i8 {
    match orientation(a, b, c) {
        Orientation::CounterClockwise => 1,
        Orientation::Clockwise => -1,
        Orientation::Collinear => 0,
    }
}

/// Counterclockwise angle at `b` taking ray b->a onto ray b->c, in [0, 2π).
pub fn ccw_angle(a: Point, b: Point, c: Point) -> Result<f64> {
    if a == b || c == b {
        return Err(Error::DegenerateAngle);
    }
    Ok(ccw_between(a.sub(b), c.sub(b)))
}

/// Counterclockwise rotation from direction `u` onto direction `v`, in [0, 2π).
pub fn ccw_between(u: Vector, v: Vector) -> f64 {
    let t = u.cross(v).atan2(u.dot(v));
    if t < 0.0 {
        let t = t + TAU;
        if t >= TAU {
            // a hair clockwise of u: the largest angle below 2π
            f64::from_bits(TAU.to_bits() - 1)
        } else {
            t
        }
    } else {
        t
    }
}

/// Unsigned angle at `b` between rays b->a and b->c, in [0, π].
pub fn angle(a: Point, b: Point, c: Point) -> f64 {
    angle_between(a.sub(b), c.sub(b))
}

pub fn angle_between(u: Vector, v: Vector) -> f64 {
    u.cross(v).abs().atan2(u.dot(v))
}

/// Immutable, validated list of points in general position.
#[derive(Clone, PartialEq)]
pub struct PointSet {
    points: Arc<[Point]>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.points.iter()).finish()
    }
}

impl PointSet {
    /// Validates finiteness, distinctness and general position.
    ///
    /// Sets larger than [`EXHAUSTIVE_VALIDATION_LIMIT`] are rejected; use
    /// [`PointSet::from_trusted`] for those.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.len() > EXHAUSTIVE_VALIDATION_LIMIT {
            return Err(Error::InvalidPointSet(format!(
                "{} points exceed the exhaustive validation limit {}; use the trust flag",
                points.len(),
                EXHAUSTIVE_VALIDATION_LIMIT
            )));
        }
        check_basic(&points)?;
        if let Some((i, j, k)) = find_collinear_triple(&points) {
            return Err(Error::InvalidPointSet(format!("points {i}, {j}, {k} are collinear")));
        }
        Ok(PointSet { points: points.into() })
    }

    /// Accepts a large set after finiteness/distinctness checks and a seeded
    /// random sample of triples.
    pub fn from_trusted(points: Vec<Point>) -> Result<Self> {
        check_basic(&points)?;
        let n = points.len();
        if n >= 3 {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..10_000 {
                let t = sample(&mut rng, n, 3);
                let (i, j, k) = (t.index(0), t.index(1), t.index(2));
                if orientation(points[i], points[j], points[k]) == Orientation::Collinear {
                    return Err(Error::InvalidPointSet(format!("points {i}, {j}, {k} are collinear")));
                }
            }
        }
        Ok(PointSet { points: points.into() })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;
    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}

fn check_basic(points: &[Point]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::InvalidPointSet("empty point set".into()));
    }
    if let Some(i) = points.iter().position(|p| !p.is_finite()) {
        return Err(Error::InvalidPointSet(format!("point {i} is not finite")));
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].lex_cmp(&points[j]));
    for w in order.windows(2) {
        if points[w[0]] == points[w[1]] {
            return Err(Error::InvalidPointSet(format!("points {} and {} coincide", w[0].min(w[1]), w[0].max(w[1]))));
        }
    }
    Ok(())
}

/// Finds some collinear triple, or `None` if the set is in general position.
///
/// Around every point the other points are sorted by direction folded into
/// a half-open half-plane, so that two directions compare equal exactly when
/// the three points are collinear. All comparisons are exact.
pub fn find_collinear_triple(points: &[Point]) -> Option<(usize, usize, usize)> {
    let n = points.len();
    if n < 3 {
        return None;
    }
    let mut others: Vec<usize> = Vec::with_capacity(n - 1);
    for p in 0..n {
        let c = points[p];
        let upper = |q: usize| {
            let d = points[q].sub(c);
            d.y > 0.0 || (d.y == 0.0 && d.x > 0.0)
        };
        let cmp = |&q: &usize, &r: &usize| -> Ordering {
            let fold = if upper(q) == upper(r) { 1 } else { -1 };
            // positive: r is counterclockwise of q after folding
            match fold * orient_sign(c, points[q], points[r]) {
                1 => Ordering::Less,
                -1 => Ordering::Greater,
                _ => Ordering::Equal,
            }
        };
        others.clear();
        others.extend((0..n).filter(|&q| q != p));
        others.sort_by(cmp);
        for w in others.windows(2) {
            if orientation(c, points[w[0]], points[w[1]]) == Orientation::Collinear {
                let mut t = [p, w[0], w[1]];
                t.sort_unstable();
                return Some((t[0], t[1], t[2]));
            }
        }
    }
    None
}

/// Indices of the hull vertices of `s`, counterclockwise, starting at the
/// lexicographically smallest point.
pub fn convex_hull(s: &PointSet) -> Vec<usize> {
    let all: Vec<usize> = (0..s.len()).collect();
    hull_of(s.points(), &all)
}

/// Convex hull of the subset `idx` of `points` (monotone chain).
pub fn hull_of(points: &[Point], idx: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = idx.to_vec();
    order.sort_by(|&i, &j| points[i].lex_cmp(&points[j]).then(i.cmp(&j)));
    order.dedup();
    if order.len() <= 2 {
        return order;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(order.len() + 1);
    let turns_left = |h: &[usize], r: usize| {
        let k = h.len();
        orientation(points[h[k - 2]], points[h[k - 1]], points[r]) == Orientation::CounterClockwise
    };
    for &i in &order {
        while hull.len() >= 2 && !turns_left(&hull, i) {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len && !turns_left(&hull, i) {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// Diametrical pair of `s`; the first index has the smaller x (then y).
pub fn diameter(s: &PointSet) -> Result<(usize, usize)> {
    if s.len() < 2 {
        return Err(Error::DegenerateInput("diameter needs at least two points".into()));
    }
    let all: Vec<usize> = (0..s.len()).collect();
    Ok(diameter_of(s.points(), &all))
}

/// Diametrical pair of a subset with at least two points.
pub fn diameter_of(points: &[Point], idx: &[usize]) -> (usize, usize) {
    let mut hull = hull_of(points, idx);
    hull.sort_unstable();
    let mut best = (hull[0], hull[1]);
    let mut best_d = f64::NEG_INFINITY;
    for (k, &i) in hull.iter().enumerate() {
        for &j in &hull[k + 1..] {
            let d = points[i].dist2(points[j]);
            if d > best_d {
                best_d = d;
                best = (i, j);
            }
        }
    }
    let (i, j) = best;
    if points[j].lex_cmp(&points[i]) == Ordering::Less {
        (j, i)
    } else {
        (i, j)
    }
}

/// Whether `r` projects strictly between `p` and `q` on line pq.
pub fn in_orthogonal_slab(p: Point, q: Point, r: Point) -> bool {
    let d = q.sub(p);
    r.sub(p).dot(d) > 0.0 && r.sub(q).dot(d.neg()) > 0.0
}

/// Closed cone at `apex` swept counterclockwise from ray apex->ray1_to to
/// ray apex->ray2_to.
pub fn in_cone(apex: Point, ray1_to: Point, ray2_to: Point, r: Point) -> Result<bool> {
    if apex == ray1_to || apex == ray2_to {
        return Err(Error::DegenerateAngle);
    }
    if r == apex {
        return Ok(true);
    }
    let s1 = orient_sign(apex, ray1_to, r);
    let s2 = orient_sign(apex, r, ray2_to);
    let width = orient_sign(apex, ray1_to, ray2_to);
    let same_dir = |q: Point| orient_sign(apex, ray1_to, q) == 0 && ray1_to.sub(apex).dot(q.sub(apex)) > 0.0;
    if width == 0 && same_dir(ray2_to) {
        // zero-width cone: only the ray itself
        return Ok(s1 == 0 && same_dir(r));
    }
    if s1 == 0 && same_dir(r) {
        return Ok(true);
    }
    let r2_dir = |q: Point| orient_sign(apex, ray2_to, q) == 0 && ray2_to.sub(apex).dot(q.sub(apex)) > 0.0;
    if r2_dir(r) {
        return Ok(true);
    }
    Ok(match width {
        1 => s1 > 0 && s2 > 0,
        -1 => s1 > 0 || s2 > 0,
        // straight cone of width π
        _ => s1 > 0,
    })
}

/// Tangency points from exterior point `p` to the hull of `s`, as
/// `(left, right)`: all of `s` lies on or right of p->left and on or left
/// of p->right.
pub fn tangents_from_point(p: Point, s: &PointSet) -> Result<(usize, usize)> {
    let all: Vec<usize> = (0..s.len()).collect();
    tangents_of(s.points(), p, &all)
}

/// Tangents from `p` to the subset `idx`; ties go to the point nearest `p`.
pub fn tangents_of(points: &[Point], p: Point, idx: &[usize]) -> Result<(usize, usize)> {
    if idx.is_empty() {
        return Err(Error::DegenerateInput("tangents to an empty set".into()));
    }
    if idx.len() == 1 {
        if points[idx[0]] == p {
            return Err(Error::PointNotExterior);
        }
        return Ok((idx[0], idx[0]));
    }
    let hull = hull_of(points, idx);
    if hull.len() >= 3
        && (0..hull.len()).all(|k| {
            let a = points[hull[k]];
            let b = points[hull[(k + 1) % hull.len()]];
            orientation(a, b, p) != Orientation::Clockwise
        })
    {
        return Err(Error::PointNotExterior);
    }
    if hull.len() == 2 {
        let (a, b) = (points[hull[0]], points[hull[1]]);
        if orientation(a, b, p) == Orientation::Collinear && a.sub(p).dot(b.sub(p)) <= 0.0 {
            return Err(Error::PointNotExterior);
        }
    }
    let pick = |want: i8| -> Option<usize> {
        let mut best: Option<usize> = None;
        for &t in &hull {
            if points[t] == p {
                continue;
            }
            let ok = hull.iter().all(|&u| u == t || orient_sign(p, points[t], points[u]) * want >= 0);
            if ok {
                best = match best {
                    None => Some(t),
                    Some(b) => {
                        let (db, dt) = (p.dist2(points[b]), p.dist2(points[t]));
                        if dt < db || (dt == db && t < b) {
                            Some(t)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
        }
        best
    };
    match (pick(-1), pick(1)) {
        (Some(l), Some(r)) => Ok((l, r)),
        _ => Err(Error::PointNotExterior),
    }
}

/// Whether closed segments ab and cd intersect anywhere other than a single
/// shared endpoint.
pub fn segments_conflict(a: Point, b: Point, c: Point, d: Point) -> bool {
    let shared = [(a, c), (a, d), (b, c), (b, d)].iter().filter(|(u, v)| u == v).count();
    if shared >= 2 {
        // same segment
        return true;
    }
    let o1 = orient_sign(a, b, c);
    let o2 = orient_sign(a, b, d);
    let o3 = orient_sign(c, d, a);
    let o4 = orient_sign(c, d, b);
    if shared == 1 {
        // only a collinear overlap is a conflict
        if o1 != 0 || o2 != 0 {
            return false;
        }
        let (s, o1p, o2p) = if a == c {
            (a, b, d)
        } else if a == d {
            (a, b, c)
        } else if b == c {
            (b, a, d)
        } else {
            (b, a, c)
        };
        return o1p.sub(s).dot(o2p.sub(s)) > 0.0;
    }
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    let on = |p: Point, q: Point, r: Point| {
        r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
    };
    (o1 == 0 && on(a, b, c)) || (o2 == 0 && on(a, b, d)) || (o3 == 0 && on(c, d, a)) || (o4 == 0 && on(c, d, b))
}

/// Strict containment of `r` in triangle (a, b, c), any orientation.
pub fn strictly_in_triangle(a: Point, b: Point, c: Point, r: Point) -> bool {
    let s1 = orient_sign(a, b, r);
    let s2 = orient_sign(b, c, r);
    let s3 = orient_sign(c, a, r);
    s1 != 0 && s1 == s2 && s2 == s3
}

/// Signed side of `r` relative to directed line p->q: 1 left, -1 right, 0 on.
pub fn side(p: Point, q: Point, r: Point) -> i8 {
    orient_sign(p, q, r)
}

/// Distance from `r` to the line through `p` and `q`.
pub fn line_distance(p: Point, q: Point, r: Point) -> f64 {
    let d = q.sub(p);
    d.cross(r.sub(p)).abs() / d.norm()
}
