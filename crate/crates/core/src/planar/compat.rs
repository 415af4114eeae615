//! Compatibility modulo 2.
//!
//! The crossing-parity vectors (over independent pairs) realizable by plane
//! drawings of a graph form an affine space: the parities of any fixed
//! drawing plus the span of the finger moves. A finger move `(e, v)` drags
//! a thin loop of edge `e` around vertex `v`, flipping the parity of `e`
//! with every edge at `v`. Membership is a linear solve over GF(2).

use std::collections::HashMap;

use super::canonical::canonical_drawing;
use super::drawing::{crossing_parity_matrix, ParityMatrix, PlanarDrawing};
use crate::error::{Error, Result};
use crate::gf2::{in_affine_span, BitVec};
use crate::graph::{independent_pairs, EdgeId, EdgePair, Graph, VertexId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FingerMove {
    pub edge: EdgeId,
    pub vertex: VertexId,
    /// Flipped coordinates, indexed like `independent_pairs(g)`.
    pub vector: BitVec,
}

/// One `W_{e,v}` per edge `e` and vertex `v` not on `e`, edges outer.
pub fn finger_move_generators(g: &Graph) -> Vec<FingerMove> {
    let pairs = independent_pairs(g);
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, p)| ((p.i, p.j), k)).collect();
    let mut out = Vec::new();
    for e in 0..g.edge_count() {
        for v in 0..g.vertex_count() {
            if g.is_endpoint(e, v) {
                continue;
            }
            let mut vector = BitVec::zeros(pairs.len());
            for f in g.incident_edges(v) {
                if let Some(&k) = index.get(&(e.min(f), e.max(f))) {
                    vector.set(k, true);
                }
            }
            out.push(FingerMove { edge: e, vertex: v, vector });
        }
    }
    out
}

/// A linear functional vanishing on every finger move; a parity vector `t`
/// is realizable iff `Σ_{k ∈ pairs} t_k = rhs` for every check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    /// Indices into `independent_pairs(g)`.
    pub pairs: Vec<usize>,
    pub rhs: bool,
    /// Largest edge id occurring in any pair of the support.
    pub last_edge: EdgeId,
}

/// The affine class of realizable crossing-parity vectors of a graph.
#[derive(Clone, Debug)]
pub struct CompatibilityClass {
    graph: Graph,
    pairs: Vec<EdgePair>,
    base_drawing: PlanarDrawing,
    base: BitVec,
    generators: Vec<FingerMove>,
}

impl CompatibilityClass {
    pub fn new(g: &Graph) -> Self {
        let base_drawing = canonical_drawing(g);
        let pairs = independent_pairs(g);
        let base = crossing_parity_matrix(&base_drawing).to_pair_vector(&pairs);
        CompatibilityClass { graph: g.clone(), pairs, base_drawing, base, generators: finger_move_generators(g) }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn pairs(&self) -> &[EdgePair] {
        &self.pairs
    }

    pub fn base(&self) -> &BitVec {
        &self.base
    }

    pub fn base_drawing(&self) -> &PlanarDrawing {
        &self.base_drawing
    }

    pub fn generators(&self) -> &[FingerMove] {
        &self.generators
    }

    /// Finger moves turning the base parities into `target`, if any.
    pub fn certificate(&self, target: &BitVec) -> Result<Option<Vec<(EdgeId, VertexId)>>> {
        let gens: Vec<BitVec> = self.generators.iter().map(|m| m.vector.clone()).collect();
        Ok(in_affine_span(target, &self.base, &gens)?
            .map(|c| c.ones().map(|k| (self.generators[k].edge, self.generators[k].vertex)).collect()))
    }

    pub fn contains(&self, target: &BitVec) -> bool {
        self.parity_checks().iter().all(|h| h.pairs.iter().fold(false, |acc, &k| acc ^ target.get(k)) == h.rhs)
    }

    /// A basis of checks for the class, each finishing as early as possible
    /// in edge order: pairs are eliminated in order of their larger edge,
    /// so every check only involves pairs up to its `last_edge`.
    pub fn parity_checks(&self) -> Vec<ParityCheck> {
        let np = self.pairs.len();
        let ng = self.generators.len();
        let mut order: Vec<usize> = (0..np).collect();
        order.sort_by_key(|&k| (self.pairs[k].j, self.pairs[k].i));
        let mut pivots: HashMap<usize, (BitVec, BitVec)> = HashMap::new();
        let mut checks = Vec::new();
        for &k in &order {
            let mut row = BitVec::zeros(ng);
            for (gi, m) in self.generators.iter().enumerate() {
                if m.vector.get(k) {
                    row.set(gi, true);
                }
            }
            let mut combo = BitVec::zeros(np);
            combo.set(k, true);
            loop {
                match row.first_one() {
                    None => {
                        let support: Vec<usize> = combo.ones().collect();
                        let rhs = support.iter().fold(false, |acc, &p| acc ^ self.base.get(p));
                        let last_edge = support.iter().map(|&p| self.pairs[p].j).max().unwrap_or(0);
                        checks.push(ParityCheck { pairs: support, rhs, last_edge });
                        break;
                    }
                    Some(c) => match pivots.get(&c) {
                        Some((prow, pcombo)) => {
                            row.xor_assign(prow);
                            combo.xor_assign(pcombo);
                        }
                        None => {
                            pivots.insert(c, (row, combo));
                            break;
                        }
                    },
                }
            }
        }
        checks
    }
}

/// Decides whether some plane drawing of `g` has the target parities on
/// every independent pair; the certificate lists the finger moves to apply
/// to the canonical drawing.
pub fn is_compatible_mod2(g: &Graph, target: &ParityMatrix) -> Result<Option<Vec<(EdgeId, VertexId)>>> {
    if target.edge_count() != g.edge_count() {
        return Err(Error::Dimension(format!(
            "parity matrix indexed by {} edges, graph has {}",
            target.edge_count(),
            g.edge_count()
        )));
    }
    let class = CompatibilityClass::new(g);
    class.certificate(&target.to_pair_vector(class.pairs()))
}
