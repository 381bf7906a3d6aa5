//! Text formats for point sets and plane graphs.
//!
//! Point file: one `x y` line per point, `#` lines ignored. Graph file: a
//! `psg v1 n=<n> m=<m>` header, n point lines, then m `i j` edge lines with
//! i < j in lexicographic order. Floats are written in the shortest form
//! that reads back to the same value.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Point, PointSet};
use crate::graph::PlaneGraph;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Data lines with their 1-based line numbers, comments and blanks skipped.
fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_point(line: usize, text: &str) -> Result<Point> {
    let mut it = text.split_whitespace();
    let (Some(x), Some(y), None) = (it.next(), it.next(), it.next()) else {
        return Err(parse_err(line, "expected two coordinates"));
    };
    let num = |t: &str| -> Result<f64> {
        let v: f64 = t.parse().map_err(|_| parse_err(line, format!("bad number {t:?}")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(parse_err(line, format!("non-finite coordinate {t:?}")))
        }
    };
    Ok(Point::new(num(x)?, num(y)?))
}

fn parse_index(line: usize, t: &str) -> Result<usize> {
    t.parse().map_err(|_| parse_err(line, format!("bad index {t:?}")))
}

pub fn read_points(text: &str) -> Result<PointSet> {
    let pts = data_lines(text).map(|(n, l)| parse_point(n, l)).collect::<Result<Vec<_>>>()?;
    PointSet::new(pts)
}

pub fn write_points(s: &PointSet) -> String {
    let mut out = String::new();
    for p in s.points() {
        writeln!(out, "{} {}", p.x, p.y).unwrap();
    }
    out
}

pub fn write_graph(g: &PlaneGraph) -> String {
    let mut out = format!("psg v1 n={} m={}\n", g.n(), g.edge_count());
    out.push_str(&write_points(g.base()));
    for (i, j) in g.edges() {
        writeln!(out, "{i} {j}").unwrap();
    }
    out
}

fn header_field(line: usize, tok: Option<&str>, key: &str) -> Result<usize> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| parse_err(line, format!("header needs {key}<count>")))
}

pub fn read_graph(text: &str) -> Result<PlaneGraph> {
    let mut lines = data_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
    let mut tok = header.split_whitespace();
    if tok.next() != Some("psg") || tok.next() != Some("v1") {
        return Err(parse_err(hl, "expected header `psg v1 n=<n> m=<m>`"));
    }
    let n = header_field(hl, tok.next(), "n=")?;
    let m = header_field(hl, tok.next(), "m=")?;
    let mut pts = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(hl, format!("expected {n} points")))?;
        pts.push(parse_point(ln, l)?);
    }
    let base = PointSet::new(pts)?;
    let mut g = PlaneGraph::new(base);
    let mut last: Option<(usize, usize)> = None;
    for _ in 0..m {
        let (ln, l) = lines.next().ok_or_else(|| parse_err(hl, format!("expected {m} edges")))?;
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(parse_err(ln, "expected two vertex indices"));
        };
        let (i, j) = (parse_index(ln, a)?, parse_index(ln, b)?);
        if i >= j || j >= n {
            return Err(parse_err(ln, format!("edge ({i}, {j}) needs i < j < n")));
        }
        if last.is_some_and(|e| e >= (i, j)) {
            return Err(parse_err(ln, "edges must be sorted and distinct"));
        }
        last = Some((i, j));
        g.add_edge(i, j);
    }
    if let Some((ln, _)) = lines.next() {
        return Err(parse_err(ln, "trailing data after the edge list"));
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_round_trip_is_exact() {
        let pts = vec![Point::new(0.1, 0.2), Point::new(1.0 / 3.0, -2e-300), Point::new(12345.678901234567, 5e17)];
        let s = PointSet::new(pts).unwrap();
        let back = read_points(&write_points(&s)).unwrap();
        assert_eq!(back, s);
        for (a, b) in back.points().iter().zip(s.points()) {
            assert_eq!(a.x.to_bits(), b.x.to_bits());
            assert_eq!(a.y.to_bits(), b.y.to_bits());
        }
    }

    #[test]
    fn comments_and_blank_lines() {
        let s = read_points("# header\n0 0\n\n1 0\n  # indented\n0 1\n").unwrap();
        assert_eq!(s.len(), 3);
    }

    #[test]
    fn graph_round_trip() {
        let s = read_points("0 0\n1 0\n0 1\n").unwrap();
        let g = PlaneGraph::from_edges(s, [(2, 0), (0, 1)]);
        let text = write_graph(&g);
        assert!(text.starts_with("psg v1 n=3 m=2\n"));
        assert!(text.ends_with("0 1\n0 2\n"));
        assert_eq!(read_graph(&text).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_lines() {
        assert_eq!(read_points("0 0\n1 x\n"), Err(Error::Parse { line: 2, msg: "bad number \"x\"".into() }));
        assert!(matches!(read_points("0 0 0\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(read_points("nan 0\n"), Err(Error::Parse { .. })));
        assert!(matches!(read_graph("psg v1 n=2 m=1\n0 0\n1 1\n1 0\n"), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(read_graph("psg v2 n=0 m=0\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn invalid_sets_are_rejected() {
        assert!(matches!(read_points("0 0\n1 1\n2 2\n"), Err(Error::InvalidPointSet(_))));
    }
}
