use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::geom::{contact, format_q, on_segment, parse_q, Contact, Point};
use crate::error::{parse_err, Error, Result};
use crate::gf2::{BitMatrix, BitVec};
use crate::graph::{independent_pairs, EdgeId, EdgePair, Graph};
use crate::int::IntMatrix;

/// One transversal crossing between two distinct edges (`e < f`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCrossing {
    pub e: EdgeId,
    pub f: EdgeId,
    pub point: Point,
    /// Sign of `det(dir_e, dir_f)` at the crossing, with directions taken
    /// along the stored polylines.
    pub sign: i8,
}

/// A validated general-position PL drawing of a graph in the plane.
///
/// Each polyline is stored in its edge's orientation: the first point is the
/// tail. The default orientation runs from the lower-index endpoint.
#[derive(Clone, PartialEq, Eq)]
pub struct PlanarDrawing {
    graph: Graph,
    vertex_points: Vec<Point>,
    polylines: Vec<Vec<Point>>,
    crossings: Vec<EdgeCrossing>,
}

impl PlanarDrawing {
    /// Validates general position and records all crossings.
    pub fn new(graph: Graph, vertex_points: Vec<Point>, polylines: Vec<Vec<Point>>) -> Result<Self> {
        check_shape(&graph, &vertex_points, &polylines)?;
        let crossings = scan(&graph, &vertex_points, &polylines)?;
        Ok(PlanarDrawing { graph, vertex_points, polylines, crossings })
    }

    /// Straight-line drawing at the given vertex points.
    pub fn straight(graph: Graph, vertex_points: Vec<Point>) -> Result<Self> {
        let polylines = graph
            .edges()
            .iter()
            .map(|&(u, v)| vec![vertex_points[u].clone(), vertex_points[v].clone()])
            .collect();
        Self::new(graph, vertex_points, polylines)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_points(&self) -> &[Point] {
        &self.vertex_points
    }

    pub fn vertex_point(&self, v: usize) -> &Point {
        &self.vertex_points[v]
    }

    pub fn polyline(&self, e: EdgeId) -> &[Point] {
        &self.polylines[e]
    }

    pub fn polylines(&self) -> &[Vec<Point>] {
        &self.polylines
    }

    pub fn crossings(&self) -> &[EdgeCrossing] {
        &self.crossings
    }

    /// `true` when edge `e` is traversed from its lower-index endpoint.
    pub fn is_forward(&self, e: EdgeId) -> bool {
        self.polylines[e][0] == self.vertex_points[self.graph.edge(e).0]
    }

    /// The same drawing with edge `e` traversed the other way.
    pub fn with_reversed_edge(&self, e: EdgeId) -> PlanarDrawing {
        let mut polylines = self.polylines.clone();
        polylines[e].reverse();
        let crossings = self
            .crossings
            .iter()
            .map(|c| EdgeCrossing { sign: if c.e == e || c.f == e { -c.sign } else { c.sign }, ..c.clone() })
            .collect();
        PlanarDrawing { graph: self.graph.clone(), vertex_points: self.vertex_points.clone(), polylines, crossings }
    }

    pub(crate) fn replace_polyline_unchecked(&self, e: EdgeId, polyline: Vec<Point>) -> PlanarDrawing {
        let mut polylines = self.polylines.clone();
        polylines[e] = polyline;
        PlanarDrawing {
            graph: self.graph.clone(),
            vertex_points: self.vertex_points.clone(),
            polylines,
            crossings: Vec::new(),
        }
    }

    /// Re-runs validation, e.g. after unchecked edits.
    pub fn revalidated(self) -> Result<PlanarDrawing> {
        PlanarDrawing::new(self.graph, self.vertex_points, self.polylines)
    }

    pub fn segment_count(&self) -> usize {
        self.polylines.iter().map(|p| p.len() - 1).sum()
    }
}

impl fmt::Debug for PlanarDrawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn check_shape(graph: &Graph, points: &[Point], polylines: &[Vec<Point>]) -> Result<()> {
    if points.len() != graph.vertex_count() {
        return Err(Error::Dimension(format!(
            "{} vertex points for {} vertices",
            points.len(),
            graph.vertex_count()
        )));
    }
    if polylines.len() != graph.edge_count() {
        return Err(Error::Dimension(format!(
            "{} polylines for {} edges",
            polylines.len(),
            graph.edge_count()
        )));
    }
    let mut seen = HashMap::new();
    for (v, p) in points.iter().enumerate() {
        if let Some(w) = seen.insert(p, v) {
            return Err(Error::GeneralPosition(format!("vertices {w} and {v} share the point {p:?}")));
        }
    }
    for (e, line) in polylines.iter().enumerate() {
        let (u, v) = graph.edge(e);
        if line.len() < 2 {
            return Err(Error::GeneralPosition(format!("edge {e} has fewer than two points")));
        }
        let (first, last) = (&line[0], &line[line.len() - 1]);
        let ok = (first == &points[u] && last == &points[v]) || (first == &points[v] && last == &points[u]);
        if !ok {
            return Err(Error::GeneralPosition(format!("edge {e} does not join the points of vertices {u} and {v}")));
        }
        for (k, w) in line.windows(2).enumerate() {
            if w[0] == w[1] {
                return Err(Error::GeneralPosition(format!("edge {e} has a zero-length segment {k}")));
            }
        }
        for (k, w) in line.windows(3).enumerate() {
            if contact(&w[0], &w[1], &w[1], &w[2]) == Contact::Overlap {
                return Err(Error::GeneralPosition(format!("edge {e} folds back on itself at point {}", k + 1)));
            }
        }
    }
    Ok(())
}

struct Seg<'a> {
    edge: EdgeId,
    idx: usize,
    last: bool,
    a: &'a Point,
    b: &'a Point,
    lo: [f64; 2],
    hi: [f64; 2],
}

/// Float image of a point, widened so that exact disjointness is implied by
/// disjointness of the widened boxes.
fn approx(p: &Point) -> ([f64; 2], [f64; 2]) {
    let mut lo = [0.0; 2];
    let mut hi = [0.0; 2];
    for (k, c) in [&p.x, &p.y].into_iter().enumerate() {
        let v = c.to_f64().unwrap_or(0.0);
        let slack = 1e-9 * v.abs().max(1e-200) + 1e-300;
        if v.is_finite() {
            lo[k] = v - slack;
            hi[k] = v + slack;
        } else {
            lo[k] = f64::NEG_INFINITY;
            hi[k] = f64::INFINITY;
        }
    }
    (lo, hi)
}

fn boxes_meet(lo1: &[f64; 2], hi1: &[f64; 2], lo2: &[f64; 2], hi2: &[f64; 2]) -> bool {
    lo1[0] <= hi2[0] && lo2[0] <= hi1[0] && lo1[1] <= hi2[1] && lo2[1] <= hi1[1]
}

/// Checks general position and collects the crossings between distinct edges.
fn scan(graph: &Graph, points: &[Point], polylines: &[Vec<Point>]) -> Result<Vec<EdgeCrossing>> {
    let segs: Vec<Seg> = polylines
        .iter()
        .enumerate()
        .flat_map(|(e, line)| {
            let n = line.len() - 1;
            line.windows(2).enumerate().map(move |(k, w)| {
                let (l1, h1) = approx(&w[0]);
                let (l2, h2) = approx(&w[1]);
                Seg {
                    edge: e,
                    idx: k,
                    last: k + 1 == n,
                    a: &w[0],
                    b: &w[1],
                    lo: [l1[0].min(l2[0]), l1[1].min(l2[1])],
                    hi: [h1[0].max(h2[0]), h1[1].max(h2[1])],
                }
            })
        })
        .collect();

    // No edge interior may pass through a vertex point.
    for (v, p) in points.iter().enumerate() {
        let (plo, phi) = approx(p);
        for s in &segs {
            if !boxes_meet(&plo, &phi, &s.lo, &s.hi) || !on_segment(s.a, s.b, p) {
                continue;
            }
            let at_tail = s.idx == 0 && s.a == p;
            let at_head = s.last && s.b == p;
            if !(at_tail || at_head) {
                return Err(Error::GeneralPosition(format!(
                    "edge {} segment {} passes through vertex {v}",
                    s.edge, s.idx
                )));
            }
        }
    }

    // Sweep in x over the widened boxes; candidate pairs are handled in
    // their original order so the output does not depend on the sweep.
    let mut by_x: Vec<usize> = (0..segs.len()).collect();
    by_x.sort_by(|&a, &b| segs[a].lo[0].total_cmp(&segs[b].lo[0]));
    let mut candidates = Vec::new();
    for (k, &x) in by_x.iter().enumerate() {
        let s = &segs[x];
        for &y in &by_x[k + 1..] {
            let t = &segs[y];
            if t.lo[0] > s.hi[0] {
                break;
            }
            if boxes_meet(&s.lo, &s.hi, &t.lo, &t.hi) {
                candidates.push((x.min(y), x.max(y)));
            }
        }
    }
    candidates.sort_unstable();

    let mut out = Vec::new();
    let mut points_seen: HashMap<Point, (EdgeId, EdgeId)> = HashMap::new();
    for (x, y) in candidates {
        let (s, t) = (&segs[x], &segs[y]);
        let same = s.edge == t.edge;
        if same && t.idx == s.idx + 1 {
            continue;
        }
        match contact(s.a, s.b, t.a, t.b) {
            Contact::None => {}
            Contact::Overlap => {
                return Err(Error::GeneralPosition(format!(
                    "segments ({}, {}) and ({}, {}) overlap",
                    s.edge, s.idx, t.edge, t.idx
                )));
            }
            Contact::Touch(p) => {
                let shared_vertex = !same
                    && points
                        .iter()
                        .position(|q| *q == p)
                        .is_some_and(|v| graph.is_endpoint(s.edge, v) && graph.is_endpoint(t.edge, v));
                if !shared_vertex {
                    return Err(Error::GeneralPosition(format!(
                        "segments ({}, {}) and ({}, {}) touch at {p:?} without crossing",
                        s.edge, s.idx, t.edge, t.idx
                    )));
                }
            }
            Contact::Cross { point, sign } => {
                if let Some((e0, f0)) = points_seen.get(&point) {
                    return Err(Error::GeneralPosition(format!(
                        "three edge passes meet at {point:?} (edges {e0}, {f0}, {}, {})",
                        s.edge, t.edge
                    )));
                }
                points_seen.insert(point.clone(), (s.edge, t.edge));
                if !same {
                    out.push(EdgeCrossing { e: s.edge, f: t.edge, point, sign });
                }
            }
        }
    }
    Ok(out)
}

/// Crossing parities of a drawing, meaningful on independent pairs only.
/// Diagonal and adjacent-pair slots are kept at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMatrix {
    values: BitMatrix,
}

impl ParityMatrix {
    /// Reads the independent-pair entries of a symmetric `|E| × |E|` matrix.
    pub fn from_matrix(g: &Graph, m: &BitMatrix) -> Result<Self> {
        let n = g.edge_count();
        if m.rows() != n || m.cols() != n {
            return Err(Error::Dimension(format!(
                "parity matrix is {}x{}, graph has {n} edges",
                m.rows(),
                m.cols()
            )));
        }
        let mut values = BitMatrix::zeros(n, n);
        for p in independent_pairs(g) {
            if m.get(p.i, p.j) != m.get(p.j, p.i) {
                return Err(Error::Precondition(format!("entries ({}, {}) and ({}, {}) differ", p.i, p.j, p.j, p.i)));
            }
            values.set(p.i, p.j, m.get(p.i, p.j));
            values.set(p.j, p.i, m.get(p.i, p.j));
        }
        Ok(ParityMatrix { values })
    }

    pub fn from_pair_vector(g: &Graph, pairs: &[EdgePair], v: &BitVec) -> Self {
        let n = g.edge_count();
        let mut values = BitMatrix::zeros(n, n);
        for (k, p) in pairs.iter().enumerate() {
            values.set(p.i, p.j, v.get(k));
            values.set(p.j, p.i, v.get(k));
        }
        ParityMatrix { values }
    }

    pub fn zero(g: &Graph) -> Self {
        let n = g.edge_count();
        ParityMatrix { values: BitMatrix::zeros(n, n) }
    }

    pub fn to_pair_vector(&self, pairs: &[EdgePair]) -> BitVec {
        let mut v = BitVec::zeros(pairs.len());
        for (k, p) in pairs.iter().enumerate() {
            v.set(k, self.values.get(p.i, p.j));
        }
        v
    }

    pub fn get(&self, i: EdgeId, j: EdgeId) -> bool {
        self.values.get(i, j)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.values
    }

    pub fn edge_count(&self) -> usize {
        self.values.rows()
    }
}

/// Parity of the number of crossings for every independent pair.
pub fn crossing_parity_matrix(d: &PlanarDrawing) -> ParityMatrix {
    let g = d.graph();
    let n = g.edge_count();
    let mut values = BitMatrix::zeros(n, n);
    for c in d.crossings() {
        if !g.adjacent(c.e, c.f) {
            let b = !values.get(c.e, c.f);
            values.set(c.e, c.f, b);
            values.set(c.f, c.e, b);
        }
    }
    ParityMatrix { values }
}

/// Algebraic crossing numbers for every independent pair (zero elsewhere).
pub fn signed_crossing_matrix(d: &PlanarDrawing) -> IntMatrix {
    let g = d.graph();
    let n = g.edge_count();
    let mut sums: HashMap<(usize, usize), i64> = HashMap::new();
    for c in d.crossings() {
        if !g.adjacent(c.e, c.f) {
            *sums.entry((c.e, c.f)).or_default() += i64::from(c.sign);
        }
    }
    let mut m = IntMatrix::zeros(n, n);
    for ((e, f), s) in sums {
        m.set(e, f, BigInt::from(s));
        m.set(f, e, BigInt::from(-s));
    }
    m
}

fn write_point(out: &mut String, p: &Point) {
    out.push_str(&format_q(&p.x));
    out.push(' ');
    out.push_str(&format_q(&p.y));
}

impl fmt::Display for PlanarDrawing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "drawing")?;
        for (v, p) in self.vertex_points.iter().enumerate() {
            writeln!(f, "vertex {v} {} {}", format_q(&p.x), format_q(&p.y))?;
        }
        for (e, line) in self.polylines.iter().enumerate() {
            let mut s = String::new();
            for (k, p) in line.iter().enumerate() {
                if k > 0 {
                    s.push(' ');
                }
                write_point(&mut s, p);
            }
            writeln!(f, "edge {e} : {s}")?;
        }
        Ok(())
    }
}

/// Parses the drawing block; lines that are not `drawing`, `vertex` or
/// `edge` lines end the block. Returns the drawing and the number of lines
/// consumed from `lines`.
pub(crate) fn parse_drawing_lines(lines: &[(usize, &str)]) -> Result<(PlanarDrawing, usize)> {
    let mut it = lines.iter().peekable();
    let Some(&(ln, header)) = it.next() else {
        return Err(parse_err(0, "missing `drawing` header"));
    };
    if header != "drawing" {
        return Err(parse_err(ln, "expected `drawing` header"));
    }
    let mut used = 1;
    let mut points: Vec<Point> = Vec::new();
    let mut polylines: Vec<Vec<Point>> = Vec::new();
    while let Some(&&(ln, line)) = it.peek() {
        let mut words = line.split_whitespace();
        match words.next() {
            Some("vertex") => {
                let w: Vec<&str> = words.collect();
                if w.len() != 3 {
                    return Err(parse_err(ln, "expected `vertex <id> <x> <y>`"));
                }
                let id: usize = w[0].parse().map_err(|_| parse_err(ln, "invalid vertex id"))?;
                if id != points.len() {
                    return Err(parse_err(ln, format!("vertex ids must be consecutive; expected {}", points.len())));
                }
                let x = parse_q(w[1]).map_err(|_| parse_err(ln, format!("invalid rational `{}`", w[1])))?;
                let y = parse_q(w[2]).map_err(|_| parse_err(ln, format!("invalid rational `{}`", w[2])))?;
                points.push(Point::new(x, y));
            }
            Some("edge") => {
                let id: usize = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| parse_err(ln, "invalid edge id"))?;
                if id != polylines.len() {
                    return Err(parse_err(ln, format!("edge ids must be consecutive; expected {}", polylines.len())));
                }
                if words.next() != Some(":") {
                    return Err(parse_err(ln, "expected `:` after edge id"));
                }
                let nums: Vec<&str> = words.collect();
                if nums.len() < 4 || nums.len() % 2 != 0 {
                    return Err(parse_err(ln, "edge polyline needs an even number (>= 4) of coordinates"));
                }
                let mut line_pts = Vec::new();
                for c in nums.chunks(2) {
                    let x = parse_q(c[0]).map_err(|_| parse_err(ln, format!("invalid rational `{}`", c[0])))?;
                    let y = parse_q(c[1]).map_err(|_| parse_err(ln, format!("invalid rational `{}`", c[1])))?;
                    line_pts.push(Point::new(x, y));
                }
                polylines.push(line_pts);
            }
            _ => break,
        }
        it.next();
        used += 1;
    }
    let mut edges = Vec::new();
    for (e, line) in polylines.iter().enumerate() {
        let find = |p: &Point| points.iter().position(|q| q == p);
        let (Some(u), Some(v)) = (find(&line[0]), find(&line[line.len() - 1])) else {
            return Err(parse_err(0, format!("edge {e} does not start and end at vertex points")));
        };
        edges.push((u, v));
    }
    let graph = Graph::new(points.len(), edges)?;
    Ok((PlanarDrawing::new(graph, points, polylines)?, used))
}

pub(crate) fn content_lines(s: &str) -> Vec<(usize, &str)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

impl FromStr for PlanarDrawing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines = content_lines(s);
        let (d, used) = parse_drawing_lines(&lines)?;
        if let Some((ln, _)) = lines.get(used) {
            return Err(parse_err(*ln, "unexpected line after drawing block"));
        }
        Ok(d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use crate::graph::complete_graph;
    use crate::planar::geom::qi;

    fn pt(x: i64, y: i64) -> Point {
        Point::int(x, y)
    }

    /// Two independent edges 0–1 and 2–3 where edge 1 is a given polyline.
    fn two_arcs(arc: Vec<Point>) -> PlanarDrawing {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![pt(0, 0), pt(10, 0), arc[0].clone(), arc[arc.len() - 1].clone()];
        PlanarDrawing::new(g, pts.clone(), vec![vec![pts[0].clone(), pts[1].clone()], arc]).unwrap()
    }

    #[test]
    fn opposite_sign_double_crossing_cancels() {
        // Down through the line and back up: two crossings of opposite sign.
        let d = two_arcs(vec![pt(2, 3), pt(3, -3), pt(5, 3)]);
        assert_eq!(d.crossings().len(), 2);
        assert!(!crossing_parity_matrix(&d).get(0, 1));
        assert_eq!(*signed_crossing_matrix(&d).get(0, 1), BigInt::from(0));
    }

    #[test]
    fn equal_sign_double_crossing_adds() {
        // Spiral-like arc crossing the line twice in the same direction.
        let d = two_arcs(vec![pt(2, 3), pt(3, -3), pt(12, -3), pt(12, 5), pt(6, 5), pt(7, -2)]);
        assert_eq!(d.crossings().len(), 2);
        assert!(!crossing_parity_matrix(&d).get(0, 1));
        let s = signed_crossing_matrix(&d);
        assert_eq!(s.get(0, 1).clone().abs(), BigInt::from(2));
        assert_eq!(s.get(1, 0), &(-s.get(0, 1)));
    }

    #[test]
    fn convex_k4_has_one_odd_pair() {
        let g = complete_graph(4).unwrap();
        let pts = vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)];
        let d = PlanarDrawing::straight(g, pts).unwrap();
        let par = crossing_parity_matrix(&d);
        // edges: 01 02 03 12 13 23 ; crossing chords 02 (1) and 13 (4)
        let odd: Vec<_> = independent_pairs(d.graph()).into_iter().filter(|p| par.get(p.i, p.j)).map(|p| (p.i, p.j)).collect();
        assert_eq!(odd, vec![(1, 4)]);
        let s = signed_crossing_matrix(&d);
        assert_eq!(s.get(1, 4).clone().abs(), BigInt::from(1));
        // reversing edge 1 negates its row
        let r = signed_crossing_matrix(&d.with_reversed_edge(1));
        assert_eq!(r.get(1, 4), &(-s.get(1, 4)));
    }

    #[test]
    fn planar_k4_has_zero_parities() {
        let g = complete_graph(4).unwrap();
        let pts = vec![pt(0, 0), pt(4, 0), pt(2, 3), pt(2, 1)];
        let d = PlanarDrawing::straight(g, pts).unwrap();
        assert!(crossing_parity_matrix(&d).matrix().is_zero());
    }

    #[test]
    fn rejects_degenerate_drawings() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        // edge 2-3 passes through... a touch at (1,0)
        let pts = vec![pt(0, 0), pt(2, 0), pt(1, 0), pt(1, 2)];
        assert!(matches!(PlanarDrawing::straight(g.clone(), pts), Err(Error::GeneralPosition(_))));
        // overlap
        let pts = vec![pt(0, 0), pt(2, 0), pt(1, 1), pt(3, 1)];
        let lines = vec![vec![pts[0].clone(), pts[1].clone()], vec![pts[2].clone(), pt(1, 0), pt(3, 0), pts[3].clone()]];
        assert!(PlanarDrawing::new(g.clone(), pts, lines).is_err());
        // edge through a vertex
        let g3 = Graph::new(3, [(0, 1)]).unwrap();
        assert!(PlanarDrawing::straight(g3, vec![pt(0, 0), pt(2, 0), pt(1, 0)]).is_err());
        // triple point
        let g6 = Graph::new(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        let pts = vec![pt(-1, 0), pt(1, 0), pt(0, -1), pt(0, 1), pt(-1, -1), pt(1, 1)];
        assert!(PlanarDrawing::straight(g6, pts).is_err());
    }

    #[test]
    fn text_round_trip_is_bit_exact() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let pts = vec![
            Point::new(qi(0), qi(0)),
            Point::new(qi(10), crate::planar::geom::q(1, 3)),
            pt(2, 3),
            pt(5, 3),
        ];
        let lines = vec![
            vec![pts[1].clone(), pts[0].clone()],
            vec![pts[2].clone(), Point::new(crate::planar::geom::q(-7, 2), qi(-3)), pts[3].clone()],
        ];
        let d = PlanarDrawing::new(g, pts, lines).unwrap();
        let text = d.to_string();
        let back: PlanarDrawing = text.parse().unwrap();
        assert_eq!(back.to_string(), text);
        assert!(!back.is_forward(0));
        assert!(back.is_forward(1));
    }
}
