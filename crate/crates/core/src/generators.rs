//! Seeded point-set factories, including the tight families for each bound.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, find_collinear_triple, Point, PointSet};

/// Seed used by the families when no seed is given.
pub const DEFAULT_SEED: u64 = 0x6f70_7367;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn equilateral() -> [Point; 3] {
    [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 3f64.sqrt() / 2.0)]
}

/// Resamples offending points through `redraw` until the set is in general
/// position. `redraw(i, rng)` must return a fresh candidate for slot i.
fn settle(
    mut pts: Vec<Point>,
    mut redraw: impl FnMut(usize, &mut ChaCha8Rng) -> Point,
    r: &mut ChaCha8Rng,
) -> Result<PointSet> {
    for _ in 0..10_000 {
        if let Some(i) = first_duplicate(&pts) {
            pts[i] = redraw(i, r);
            continue;
        }
        match find_collinear_triple(&pts) {
            Some((_, _, k)) => pts[k] = redraw(k, r),
            None => return PointSet::new(pts),
        }
    }
    Err(Error::InvalidPointSet("could not reach general position".into()))
}

fn first_duplicate(pts: &[Point]) -> Option<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&i, &j| pts[i].lex_cmp(&pts[j]));
    idx.windows(2).find(|w| pts[w[0]] == pts[w[1]]).map(|w| w[0].max(w[1]))
}

fn in_disk(r: &mut ChaCha8Rng, radius: f64) -> (f64, f64) {
    loop {
        let x = r.gen_range(-1.0..1.0);
        let y = r.gen_range(-1.0..1.0);
        if x * x + y * y <= 1.0 {
            return (x * radius, y * radius);
        }
    }
}

/// Equilateral triangle of side 1 with a cluster of (n−1)/3 points at each
/// corner and one point at the barycenter. The corner itself is the first
/// point of each cluster; the others are jittered within radius `eps`.
pub fn barycenter_family(n: usize, eps: f64) -> Result<PointSet> {
    barycenter_family_seeded(n, eps, DEFAULT_SEED)
}

pub fn barycenter_family_seeded(n: usize, eps: f64, seed: u64) -> Result<PointSet> {
    if n < 4 || n % 3 != 1 {
        return Err(Error::BadShape(format!("barycenter family needs n ≡ 1 mod 3, n ≥ 4; got {n}")));
    }
    check_eps(eps)?;
    let corners = equilateral();
    let m = (n - 1) / 3;
    let mut r = rng(seed);
    let mut pts = Vec::with_capacity(n);
    let mut owner = Vec::with_capacity(n);
    for (c, &a) in corners.iter().enumerate() {
        pts.push(a);
        owner.push(Some(c));
        for _ in 1..m {
            let (dx, dy) = in_disk(&mut r, eps);
            pts.push(Point::new(a.x + dx, a.y + dy));
            owner.push(Some(c));
        }
    }
    let h = corners[2].y;
    pts.push(Point::new(0.5, h / 3.0));
    owner.push(None);
    settle(
        pts,
        |i, r| match owner[i] {
            Some(c) => {
                let (dx, dy) = in_disk(r, eps);
                Point::new(corners[c].x + dx, corners[c].y + dy)
            }
            None => Point::new(0.5, h / 3.0),
        },
        &mut r,
    )
}

/// Three clusters of n/3 points at the corners of an equilateral triangle.
/// Cluster i starts at corner A_i and runs a length of at most `eps`/4
/// towards A_{i+1}, bent slightly outward so no three points are collinear.
pub fn three_wedge_family(n: usize, eps: f64) -> Result<PointSet> {
    if n < 3 || !n.is_multiple_of(3) {
        return Err(Error::BadShape(format!("three-wedge family needs n ≡ 0 mod 3; got {n}")));
    }
    check_eps(eps)?;
    let corners = equilateral();
    let m = n / 3;
    let mut pts = Vec::with_capacity(n);
    for i in 0..3 {
        let a = corners[i];
        let u = corners[(i + 1) % 3].sub(a).unit();
        let nrm = u.perp().neg();
        for k in 0..m {
            let s = (eps / 4.0) * k as f64 / m as f64;
            pts.push(Point::new(a.x + s * u.x + s * s * nrm.x, a.y + s * u.y + s * s * nrm.y));
        }
    }
    PointSet::new(pts)
}

/// n − 1 points on a parabolic arc of width 1 and height `eps`, plus one
/// point at distance 100 below its middle.
pub fn near_collinear_family(n: usize, eps: f64) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::BadShape(format!("near-collinear family needs n ≥ 3; got {n}")));
    }
    check_eps(eps)?;
    let m = n - 1;
    let mut pts: Vec<Point> = (0..m)
        .map(|k| {
            let x = if m == 1 { 0.0 } else { -0.5 + k as f64 / (m - 1) as f64 };
            Point::new(x, eps * (1.0 - 4.0 * x * x))
        })
        .collect();
    // the far point sits off the axis so it is not collinear with mirrored pairs
    pts.push(Point::new(1e-3, -100.0));
    PointSet::new(pts)
}

/// Regular n-gon of circumradius 1 plus its center. For even n the polygon
/// is rotated and the center displaced by 1e-6 to break the collinearities
/// through the center.
pub fn regular_ngon_plus_center(n: usize) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::BadShape(format!("n-gon needs n ≥ 3; got {n}")));
    }
    let rot = if n.is_multiple_of(2) { 0.1 } else { 0.0 };
    let mut pts: Vec<Point> = (0..n)
        .map(|k| {
            let t = rot + 2.0 * PI * k as f64 / n as f64;
            Point::new(t.cos(), t.sin())
        })
        .collect();
    let center = if n.is_multiple_of(2) { Point::new(1e-6, 0.7e-6) } else { Point::new(0.0, 0.0) };
    pts.push(center);
    PointSet::new(pts)
}

/// n uniform points in the unit square, resampled until in general position.
pub fn random_general(n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::BadShape("n must be ≥ 1".into()));
    }
    let mut r = rng(seed);
    let draw = |r: &mut ChaCha8Rng| Point::new(r.gen(), r.gen());
    let pts: Vec<Point> = (0..n).map(|_| draw(&mut r)).collect();
    settle(pts, |_, r| draw(r), &mut r)
}

/// n points in convex position on the unit circle: evenly spaced angles with
/// seeded jitter of up to 40% of the spacing.
pub fn random_convex(n: usize, seed: u64) -> Result<PointSet> {
    if n == 0 {
        return Err(Error::BadShape("n must be ≥ 1".into()));
    }
    let mut r = rng(seed);
    let step = 2.0 * PI / n as f64;
    for _ in 0..1000 {
        let offset: f64 = r.gen_range(0.0..step);
        let pts: Vec<Point> = (0..n)
            .map(|k| {
                let t = offset + step * k as f64 + r.gen_range(0.0..0.4 * step);
                Point::new(t.cos(), t.sin())
            })
            .collect();
        if let Ok(s) = PointSet::new(pts) {
            if convex_hull(&s).len() == n {
                return Ok(s);
            }
        }
    }
    Err(Error::InvalidPointSet("could not sample a convex set".into()))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 0.5 {
        Ok(())
    } else {
        Err(Error::BadShape(format!("eps must lie in (0, 0.5); got {eps}")))
    }
}
