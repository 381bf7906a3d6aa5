//! SVG rendering of a plane graph in a unit viewport.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::geometry::{Point, TAU};
use crate::graph::PlaneGraph;

const MARGIN: f64 = 0.05;
const DOT: f64 = 0.005;
const ARC: f64 = 0.03;

/// Maps the bounding box into [MARGIN, 1 − MARGIN]², keeping the aspect
/// ratio and flipping y so it grows upward.
struct Frame {
    min: Point,
    scale: f64,
    offset: (f64, f64),
}

impl Frame {
    fn new(pts: &[Point]) -> Self {
        let (mut lo, mut hi) = (pts[0], pts[0]);
        for p in pts {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y);
        let inner = 1.0 - 2.0 * MARGIN;
        let scale = if span > 0.0 { inner / span } else { 1.0 };
        let offset = (MARGIN + (inner - (hi.x - lo.x) * scale) / 2.0, MARGIN + (inner - (hi.y - lo.y) * scale) / 2.0);
        Frame { min: lo, scale, offset }
    }

    fn map(&self, p: Point) -> (f64, f64) {
        let x = self.offset.0 + (p.x - self.min.x) * self.scale;
        let y = self.offset.1 + (p.y - self.min.y) * self.scale;
        (x, 1.0 - y)
    }
}

/// Start direction and width of the widest angular gap at `v`.
fn widest_gap(g: &PlaneGraph, v: usize) -> (f64, f64) {
    let s = g.base();
    let mut dirs: Vec<f64> = g.neighbors(v).iter().map(|&w| s[w].sub(s[v]).atan2()).collect();
    if dirs.len() <= 1 {
        return (dirs.first().copied().unwrap_or(0.0), TAU);
    }
    dirs.sort_by(f64::total_cmp);
    let k = dirs.len();
    (0..k)
        .map(|i| {
            let gap = if i + 1 < k { dirs[i + 1] - dirs[i] } else { dirs[0] + TAU - dirs[i] };
            (dirs[i], gap)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap()
}

/// Renders vertices and edges; with `annotate`, also the arc of the largest
/// incident angle at every vertex.
pub fn render(g: &PlaneGraph, annotate: bool) -> String {
    let s = g.base();
    let mut out = String::from(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\" width=\"800\" height=\"800\">\n\
         <rect width=\"1\" height=\"1\" fill=\"white\"/>\n",
    );
    if s.is_empty() {
        out.push_str("</svg>\n");
        return out;
    }
    let f = Frame::new(s.points());
    for (i, j) in g.edges() {
        let (a, b) = (f.map(s[i]), f.map(s[j]));
        writeln!(
            out,
            "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke=\"black\" stroke-width=\"0.002\"/>",
            a.0, a.1, b.0, b.1
        )
        .unwrap();
    }
    if annotate {
        for v in 0..s.len() {
            let (c, r) = (f.map(s[v]), ARC);
            let (start, width) = widest_gap(g, v);
            if width >= TAU {
                writeln!(
                    out,
                    "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{r}\" fill=\"none\" stroke=\"tomato\" stroke-width=\"0.0015\"/>",
                    c.0, c.1
                )
                .unwrap();
                continue;
            }
            let end = start + width;
            // y is flipped, so counterclockwise in the plane is sweep-flag 0
            let (x0, y0) = (c.0 + r * start.cos(), c.1 - r * start.sin());
            let (x1, y1) = (c.0 + r * end.cos(), c.1 - r * end.sin());
            let large = u8::from(width > PI);
            writeln!(
                out,
                "<path d=\"M {:.6} {:.6} L {x0:.6} {y0:.6} A {r} {r} 0 {large} 0 {x1:.6} {y1:.6} Z\" fill=\"tomato\" fill-opacity=\"0.3\" stroke=\"none\"/>",
                c.0, c.1
            )
            .unwrap();
        }
    }
    for v in 0..s.len() {
        let c = f.map(s[v]);
        writeln!(out, "<circle cx=\"{:.6}\" cy=\"{:.6}\" r=\"{DOT}\" fill=\"black\"/>", c.0, c.1).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::PointSet;

    #[test]
    fn draws_every_element() {
        let s = PointSet::new(vec![Point::new(0., 0.), Point::new(2., 0.), Point::new(0., 1.)]).unwrap();
        let g = PlaneGraph::from_edges(s, [(0, 1), (0, 2)]);
        let plain = render(&g, false);
        assert_eq!(plain.matches("<line").count(), 2);
        assert_eq!(plain.matches("<circle").count(), 3);
        let ann = render(&g, true);
        // two leaves get full circles, the corner gets a 3π/2 wedge
        assert_eq!(ann.matches("<path").count(), 1);
        assert!(ann.contains(" 0 1 0 "));
    }

    #[test]
    fn points_stay_inside_the_margin() {
        let s = PointSet::new(vec![Point::new(-5., 3.), Point::new(7., 3.5), Point::new(1., 20.)]).unwrap();
        let f = Frame::new(s.points());
        for p in s.points() {
            let (x, y) = f.map(*p);
            assert!((MARGIN - 1e-12..=1.0 - MARGIN + 1e-12).contains(&x));
            assert!((MARGIN - 1e-12..=1.0 - MARGIN + 1e-12).contains(&y));
        }
    }
}
