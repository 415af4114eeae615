//! Finger moves on concrete drawings and realization of parity targets.

use super::compat::CompatibilityClass;
use super::drawing::{crossing_parity_matrix, ParityMatrix, PlanarDrawing};
use super::geom::{inside_polygon, q, Point};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, VertexId};

const SPLITS: [(i64, i64); 9] = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)];
const SHRINKS: u32 = 14;

/// Number of distinct geometric candidates tried for one finger.
pub(crate) const FINGER_CANDIDATES: usize = SPLITS.len() * SHRINKS as usize;

/// Candidate rerouting of edge `e` around `v`, or `None` if the loop would
/// enclose another vertex or touch one.
///
/// The new polyline leaves the first segment at `P`, runs to a small
/// rectangle around `v`, goes round it and returns to `P'` just after `P`.
/// The closed curve `P A₁ A₂ A₃ A₄ P'` encloses `v` and no other vertex, so
/// the parity with every other edge changes exactly when that edge ends at
/// `v`.
fn finger_polyline(d: &PlanarDrawing, e: EdgeId, v: VertexId, candidate: usize) -> Option<Vec<Point>> {
    let (tn, td) = SPLITS[candidate / SHRINKS as usize];
    let k = (candidate % SHRINKS as usize) as u32;
    let line = d.polyline(e);
    let (a, b) = (&line[0], &line[1]);
    let p = a.lerp(b, &q(tn, td));
    let p2 = p.lerp(b, &q(1, 16 << k));
    let center = d.vertex_point(v);
    let dir = center.sub(&p);
    let size = q(1, 4 << k);
    let along = dir.scale(&size);
    let across = dir.perp().scale(&size);
    let a1 = center.sub(&along).add(&across);
    let a2 = center.add(&along).add(&across);
    let a3 = center.add(&along).sub(&across);
    let a4 = center.sub(&along).sub(&across);
    let poly = [p.clone(), a1.clone(), a2.clone(), a3.clone(), a4.clone(), p2.clone()];
    for (w, pt) in d.vertex_points().iter().enumerate() {
        match inside_polygon(&poly, pt) {
            None => return None,
            Some(inside) if inside != (w == v) => return None,
            Some(_) => {}
        }
    }
    let mut out = Vec::with_capacity(line.len() + 6);
    out.push(a.clone());
    out.extend([p, a1, a2, a3, a4, p2]);
    out.extend(line[1..].iter().cloned());
    Some(out)
}

/// Reroutes edge `e` around vertex `v`, flipping the crossing parity of `e`
/// with every edge at `v` and leaving all other parities unchanged.
/// `v` must not be an endpoint of `e`.
pub fn apply_finger(d: &PlanarDrawing, e: EdgeId, v: VertexId) -> Result<PlanarDrawing> {
    apply_finger_from(d, e, v, 0)
}

pub(crate) fn apply_finger_from(d: &PlanarDrawing, e: EdgeId, v: VertexId, first: usize) -> Result<PlanarDrawing> {
    if e >= d.graph().edge_count() || v >= d.graph().vertex_count() {
        return Err(Error::Dimension(format!("finger ({e}, {v}) out of range")));
    }
    if d.graph().is_endpoint(e, v) {
        return Err(Error::Precondition(format!("vertex {v} is an endpoint of edge {e}")));
    }
    for c in 0..FINGER_CANDIDATES {
        let candidate = (first + c) % FINGER_CANDIDATES;
        let Some(line) = finger_polyline(d, e, v, candidate) else { continue };
        match d.replace_polyline_unchecked(e, line).revalidated() {
            Ok(nd) => return Ok(nd),
            Err(Error::GeneralPosition(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(Error::GeneralPosition(format!("no general-position finger of edge {e} around vertex {v}")))
}

/// Builds a drawing of `g` whose crossing parities equal `target` on every
/// independent pair, starting from the canonical drawing and applying the
/// finger moves of the compatibility certificate. The result is checked
/// against `target` before it is returned.
pub fn realize_parity(g: &Graph, target: &ParityMatrix) -> Result<PlanarDrawing> {
    let class = CompatibilityClass::new(g);
    if target.edge_count() != g.edge_count() {
        return Err(Error::Dimension("parity matrix does not match the graph".into()));
    }
    let goal = target.to_pair_vector(class.pairs());
    let moves = class.certificate(&goal)?.ok_or(Error::Incompatible)?;
    let base = class.base_drawing().clone();

    // Fast path: apply every finger, validate once.
    let mut fast = Some(base.clone());
    for &(e, v) in &moves {
        let cur = fast.take().unwrap();
        let line = (0..FINGER_CANDIDATES).find_map(|c| finger_polyline(&cur, e, v, c));
        match line {
            Some(line) => fast = Some(cur.replace_polyline_unchecked(e, line)),
            None => break,
        }
    }
    let drawing = match fast.map(PlanarDrawing::revalidated) {
        Some(Ok(d)) => d,
        _ => {
            let mut d = base;
            for &(e, v) in &moves {
                d = apply_finger(&d, e, v)?;
            }
            d
        }
    };
    let got = crossing_parity_matrix(&drawing).to_pair_vector(class.pairs());
    if got != goal {
        return Err(Error::Verification("realized drawing does not match the target parities".into()));
    }
    Ok(drawing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::BitVec;
    use crate::graph::{complete_graph, independent_pairs};
    use crate::planar::canonical::canonical_drawing;

    #[test]
    fn finger_flips_exactly_the_incident_edges() {
        let g = complete_graph(5).unwrap();
        let d = canonical_drawing(&g);
        let before = crossing_parity_matrix(&d);
        let e = 0; // {0,1}
        let v = 3;
        let after = crossing_parity_matrix(&apply_finger(&d, e, v).unwrap());
        for p in independent_pairs(&g) {
            let flipped = before.get(p.i, p.j) != after.get(p.i, p.j);
            let expected = (p.i == e && g.is_endpoint(p.j, v)) || (p.j == e && g.is_endpoint(p.i, v));
            assert_eq!(flipped, expected, "pair {:?}", (p.i, p.j));
        }
        assert!(apply_finger(&d, 0, 1).is_err());
    }

    #[test]
    fn realize_base_returns_canonical() {
        let g = complete_graph(5).unwrap();
        let d = canonical_drawing(&g);
        let r = realize_parity(&g, &crossing_parity_matrix(&d)).unwrap();
        assert_eq!(r, d);
    }

    #[test]
    fn realize_zero_on_k4() {
        let g = complete_graph(4).unwrap();
        let r = realize_parity(&g, &ParityMatrix::zero(&g)).unwrap();
        assert!(crossing_parity_matrix(&r).matrix().is_zero());
    }

    #[test]
    fn realize_rejects_incompatible() {
        let g = complete_graph(5).unwrap();
        assert_eq!(realize_parity(&g, &ParityMatrix::zero(&g)), Err(Error::Incompatible));
    }

    #[test]
    fn realize_random_class_members() {
        let g = complete_graph(5).unwrap();
        let class = CompatibilityClass::new(&g);
        let mut seed = 99u64;
        for _ in 0..5 {
            let mut t = class.base().clone();
            for m in class.generators() {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                if (seed >> 40) & 1 == 1 {
                    t.xor_assign(&m.vector);
                }
            }
            let target = ParityMatrix::from_pair_vector(&g, class.pairs(), &t);
            let d = realize_parity(&g, &target).unwrap();
            assert_eq!(crossing_parity_matrix(&d).to_pair_vector(class.pairs()), t);
        }
        let _ = BitVec::zeros(0);
    }
}
