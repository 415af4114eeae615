use num_bigint::BigInt;

use super::drawing::PlanarDrawing;
use super::geom::{Point, Q};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Exact point on the unit circle, `((1 − t²)/(1 + t²), 2t/(1 + t²))`.
fn circle_point(t: &Q) -> Point {
    let one = Q::from_integer(BigInt::from(1));
    let t2 = t * t;
    let den = &one + &t2;
    Point::new((&one - &t2) / &den, (t + t) / &den)
}

/// Straight-line drawing with vertex `order[k]` at the `k`-th of `n`
/// rational points on an arc of the unit circle (convex position).
///
/// When three chords happen to be concurrent the circle parameters are
/// nudged by a deterministic sequence until the drawing is in general
/// position.
pub fn canonical_drawing_with_order(g: &Graph, order: &[usize]) -> Result<PlanarDrawing> {
    let n = g.vertex_count();
    let mut check = order.to_vec();
    check.sort_unstable();
    if check != (0..n).collect::<Vec<_>>() {
        return Err(Error::Dimension("vertex order is not a permutation".into()));
    }
    let n_i = n.max(1) as i64;
    for attempt in 0..64i64 {
        let mut points = vec![Point::int(0, 0); n];
        for (k, &v) in order.iter().enumerate() {
            let k = k as i64;
            // t in (-1, 1), strictly increasing in k; the nudge is far below the spacing.
            let base = Q::new(BigInt::from(2 * k - (n_i - 1)), BigInt::from(n_i));
            let nudge = Q::new(BigInt::from(attempt * ((k * k) % 97 + 1)), BigInt::from(1009 * 64 * n_i * n_i));
            points[v] = circle_point(&(base + nudge));
        }
        match PlanarDrawing::straight(g.clone(), points) {
            Ok(d) => return Ok(d),
            Err(Error::GeneralPosition(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::GeneralPosition("could not place vertices in general position".into()))
}

/// The canonical drawing: vertices in index order around a convex arc.
pub fn canonical_drawing(g: &Graph) -> PlanarDrawing {
    let order: Vec<usize> = (0..g.vertex_count()).collect();
    canonical_drawing_with_order(g, &order).expect("canonical placement succeeds for simple graphs")
}
