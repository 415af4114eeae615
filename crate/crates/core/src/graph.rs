//! Simple undirected graphs with a stable edge order.
//!
//! Edge `i` is the `i`-th entry of the edge list for the lifetime of the
//! graph; every matrix in the crate is indexed by these edge ids.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{parse_err, Error, Result};

pub type EdgeId = usize;
pub type VertexId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(VertexId, VertexId)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairKind {
    Adjacent,
    Independent,
}

/// An unordered pair of distinct edges, stored with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EdgePair {
    pub i: EdgeId,
    pub j: EdgeId,
    pub kind: PairKind,
}

impl Graph {
    /// Builds a graph; each edge is stored as `(min, max)`.
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) has an endpoint outside 0..{vertex_count}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u}, {v})")));
            }
            list.push(e);
        }
        Ok(Graph { vertex_count, edges: list })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn is_endpoint(&self, e: EdgeId, v: VertexId) -> bool {
        let (a, b) = self.edges[e];
        a == v || b == v
    }

    pub fn adjacent(&self, e: EdgeId, f: EdgeId) -> bool {
        let (a, b) = self.edges[f];
        self.is_endpoint(e, a) || self.is_endpoint(e, b)
    }

    /// Edges incident to `v`, in edge order.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(move |&e| self.is_endpoint(e, v))
    }

    /// Every unordered pair of distinct edges in lexicographic `(i, j)` order.
    pub fn edge_pairs(&self) -> impl Iterator<Item = EdgePair> + '_ {
        let m = self.edges.len();
        (0..m).flat_map(move |i| {
            (i + 1..m).map(move |j| EdgePair {
                i,
                j,
                kind: if self.adjacent(i, j) { PairKind::Adjacent } else { PairKind::Independent },
            })
        })
    }
}

/// The pairs of edges sharing no vertex, lexicographic by `(i, j)`.
pub fn independent_pairs(g: &Graph) -> Vec<EdgePair> {
    g.edge_pairs().filter(|p| p.kind == PairKind::Independent).collect()
}

/// `K_n` with edges in lexicographic order.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidGraph("complete graph needs at least one vertex".into()));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `K_{m,n}`: vertices `0..m` on one side and `m..m+n` on the other.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidGraph("complete bipartite graph needs non-empty parts".into()));
    }
    Graph::new(m + n, (0..m).flat_map(|u| (m..m + n).map(move |v| (u, v))))
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "graph {}", self.vertex_count)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty graph file"))?;
        let mut words = header.split_whitespace();
        if words.next() != Some("graph") {
            return Err(parse_err(ln, "expected `graph <vertex_count>` header"));
        }
        let n: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| parse_err(ln, "missing or invalid vertex count"))?;
        if words.next().is_some() {
            return Err(parse_err(ln, "trailing tokens after vertex count"));
        }
        let mut edges = Vec::new();
        for (ln, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| parse_err(ln, format!("invalid vertex index `{w}`"))))
                .collect::<Result<_>>()?;
            if nums.len() != 2 {
                return Err(parse_err(ln, "edge line must contain exactly two vertex indices"));
            }
            edges.push((nums[0], nums[1]));
        }
        Graph::new(n, edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_independent(g: &Graph) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..g.edge_count() {
            for j in i + 1..g.edge_count() {
                let (a, b) = g.edge(i);
                let (c, d) = g.edge(j);
                if a != c && a != d && b != c && b != d {
                    out.push((i, j));
                }
            }
        }
        out
    }

    #[test]
    fn path_has_no_independent_pairs() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(independent_pairs(&g).is_empty());
    }

    #[test]
    fn k4_has_three_matchings() {
        let g = complete_graph(4).unwrap();
        let pairs: Vec<_> = independent_pairs(&g).iter().map(|p| (p.i, p.j)).collect();
        // edges: 01 02 03 12 13 23
        assert_eq!(pairs, vec![(0, 5), (1, 4), (2, 3)]);
    }

    #[test]
    fn k33_has_eighteen_pairs() {
        let g = complete_bipartite(3, 3).unwrap();
        assert_eq!(g.edge_count(), 9);
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(independent_pairs(&g).len(), 18);
    }

    #[test]
    fn generator_sizes() {
        assert_eq!(complete_graph(3).unwrap().edge_count(), 3);
        assert_eq!(complete_graph(5).unwrap().edge_count(), 10);
        assert!(complete_graph(0).is_err());
        assert!(complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn kn_pair_count_matches_enumeration() {
        for n in 1..=8 {
            let g = complete_graph(n).unwrap();
            let c4 = if n >= 4 { n * (n - 1) * (n - 2) * (n - 3) / 24 } else { 0 };
            let pairs = independent_pairs(&g);
            assert_eq!(pairs.len(), 3 * c4);
            let listed: Vec<_> = pairs.iter().map(|p| (p.i, p.j)).collect();
            assert_eq!(listed, brute_independent(&g));
        }
    }

    #[test]
    fn independent_pairs_invariant_under_relabeling() {
        let g = complete_bipartite(3, 3).unwrap();
        let perm = [4, 0, 5, 2, 1, 3];
        let h = Graph::new(6, g.edges().iter().map(|&(u, v)| (perm[u], perm[v]))).unwrap();
        let to_set = |gr: &Graph| -> HashSet<((usize, usize), (usize, usize))> {
            independent_pairs(gr)
                .iter()
                .map(|p| {
                    let a = gr.edge(p.i);
                    let b = gr.edge(p.j);
                    (a.min(b), a.max(b))
                })
                .collect()
        };
        let mapped: HashSet<_> = to_set(&g)
            .into_iter()
            .map(|((a, b), (c, d))| {
                let e1 = (perm[a].min(perm[b]), perm[a].max(perm[b]));
                let e2 = (perm[c].min(perm[d]), perm[c].max(perm[d]));
                (e1.min(e2), e1.max(e2))
            })
            .collect();
        assert_eq!(mapped, to_set(&h));
    }

    #[test]
    fn parser_rejects_loops_and_duplicates() {
        assert!("graph 3\n0 0\n".parse::<Graph>().is_err());
        assert!("graph 3\n0 1\n1 0\n".parse::<Graph>().is_err());
        assert!("graph 2\n0 2\n".parse::<Graph>().is_err());
        let g: Graph = "graph 3\n0 1\n2 1\n".parse().unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(g.to_string().parse::<Graph>().unwrap(), g);
    }
}
