//! Plane picture of a surface drawing with exact coordinates.
//!
//! The disk is the half-plane `y < 1`, with ribbons attached along the line
//! `y = 1` and drawn above it. The core drawing is moved into
//! `[0,1] × [-3,-2]`. Each edge with passes leaves its core curve along a
//! vertical strand, follows private horizontal rails in `-1 < y < 1/2`,
//! climbs through each ribbon on its own track and returns down a second
//! strand next to the first. All disk segments above the core are axis
//! parallel on private rows and columns, which keeps the picture in general
//! position.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::model::{SurfaceDrawing, SurfaceSpec};
use crate::error::{Error, Result};
use crate::graph::EdgeId;
use crate::planar::geom::{on_segment, q, qi};
use crate::planar::{PlanarDrawing, Point, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Region {
    Disk,
    Ribbon(usize),
    /// The self-overlap of a twisted ribbon in the picture.
    Fold(usize),
}

pub(crate) struct Layout {
    /// The picture as a planar drawing; its crossings include artifacts.
    pub drawing: PlanarDrawing,
    regions: Vec<Vec<Region>>,
}

impl Layout {
    /// Region of the surface containing `p` on edge `e`.
    pub fn region_at(&self, e: EdgeId, p: &Point) -> Region {
        if p.y < qi(1) {
            return Region::Disk;
        }
        let line = self.drawing.polyline(e);
        for (k, w) in line.windows(2).enumerate() {
            if on_segment(&w[0], &w[1], p) {
                return self.regions[e][k];
            }
        }
        Region::Disk
    }
}

/// Columns and shape of one track through one ribbon.
struct Track {
    left: Q,
    right: Q,
    shape: TrackShape,
}

enum TrackShape {
    /// Nested arch at the given height.
    Arch(Q),
    /// Fold from the left foot up to `(x, 3)`, then an arch at `top`.
    Twist { x: Q, top: Q },
}

/// Points of a pass from the rail at `y_in` back down to the rail at `y_out`,
/// with the region of each segment.
fn pass_points(t: &Track, ribbon: usize, forward: bool, y_in: &Q, y_out: &Q) -> (Vec<Point>, Vec<Region>) {
    let mut pts;
    let mut regs;
    match &t.shape {
        TrackShape::Arch(h) => {
            pts = vec![
                Point::new(t.left.clone(), y_in.clone()),
                Point::new(t.left.clone(), h.clone()),
                Point::new(t.right.clone(), h.clone()),
                Point::new(t.right.clone(), y_out.clone()),
            ];
            regs = vec![Region::Ribbon(ribbon); 3];
        }
        TrackShape::Twist { x, top } => {
            pts = vec![
                Point::new(t.left.clone(), y_in.clone()),
                Point::new(t.left.clone(), qi(2)),
                Point::new(x.clone(), qi(3)),
                Point::new(x.clone(), top.clone()),
                Point::new(t.right.clone(), top.clone()),
                Point::new(t.right.clone(), y_out.clone()),
            ];
            regs = vec![
                Region::Ribbon(ribbon),
                Region::Fold(ribbon),
                Region::Ribbon(ribbon),
                Region::Ribbon(ribbon),
                Region::Ribbon(ribbon),
            ];
        }
    }
    if !forward {
        pts.reverse();
        regs.reverse();
        let n = pts.len();
        pts[0].y = y_in.clone();
        pts[n - 1].y = y_out.clone();
    }
    (pts, regs)
}

/// Smallest non-negative integer shear `x ↦ x + c·y` leaving no segment
/// vertical.
fn shear_for(d: &PlanarDrawing) -> Q {
    let dirs: Vec<(Q, Q)> = d
        .polylines()
        .iter()
        .flat_map(|l| l.windows(2).map(|w| (&w[1].x - &w[0].x, &w[1].y - &w[0].y)))
        .collect();
    (0i64..)
        .map(qi)
        .find(|c| dirs.iter().all(|(dx, dy)| !(dx + c * dy).is_zero()))
        .unwrap()
}

/// Assigns a track to every pass, ribbon by ribbon. Returns, per edge, the
/// list `(ribbon, forward, track)` in ribbon order, and the rightmost
/// column used.
fn assign_tracks(sd: &SurfaceDrawing) -> (Vec<Vec<(usize, bool, Track)>>, usize) {
    let r = sd.surface().ribbon_count();
    let n = sd.passes().len();
    // Passes per ribbon, in tube order.
    let mut users: Vec<Vec<(EdgeId, bool)>> = vec![Vec::new(); r];
    for &e in sd.tube_order() {
        for (k, &c) in sd.passes()[e].iter().enumerate() {
            for _ in 0..c.unsigned_abs() {
                users[k].push((e, c > 0));
            }
        }
    }
    let count = |k: usize| users[k].len() as i64;
    let mut per_edge: Vec<Vec<(usize, bool, Track)>> = (0..n).map(|_| Vec::new()).collect();
    let mut place = |k: usize, left0: i64, right0: i64, twisted: bool, base: i64| {
        let tc = count(k);
        for (idx, &(e, fwd)) in users[k].iter().enumerate() {
            let t = idx as i64 + 1;
            let track = if twisted {
                Track {
                    left: qi(left0 + t),
                    right: qi(right0 + t),
                    shape: TrackShape::Twist { x: qi(left0 + tc + 1 - t) + q(1, t + 2), top: qi(base + t) },
                }
            } else {
                Track {
                    left: qi(left0 + t),
                    right: qi(right0 + tc + 1 - t),
                    shape: TrackShape::Arch(qi(base) + q(tc + 1 - t, tc + 1)),
                }
            };
            per_edge[e].push((k, fwd, track));
        }
    };
    let mut cursor = 2i64;
    match sd.surface() {
        SurfaceSpec::Orientable(g) => {
            for i in 0..g {
                // Feet in the order A B A' B' for ribbons 2i, 2i+1.
                let (ta, tb) = (count(2 * i), count(2 * i + 1));
                let a = cursor;
                let b = a + ta + 1;
                let a2 = b + tb + 1;
                let b2 = a2 + ta + 1;
                place(2 * i, a, a2, false, 2);
                place(2 * i + 1, b, b2, false, 3);
                cursor = b2 + tb + 2;
            }
        }
        SurfaceSpec::Nonorientable(m) => {
            for k in 0..m {
                let t = count(k);
                let a = cursor;
                let a2 = a + t + 2;
                place(k, a, a2, true, 4);
                cursor = a2 + t + 2;
            }
        }
    }
    for list in &mut per_edge {
        list.sort_by_key(|(k, _, _)| *k);
    }
    (per_edge, cursor as usize)
}

/// Widest open gap of `(lo, hi)` avoiding `forbidden`; returns its 1/3 and
/// 2/3 points.
fn split_gap(lo: &Q, hi: &Q, forbidden: &BTreeSet<Q>) -> (Q, Q) {
    let mut cuts: Vec<&Q> = vec![lo];
    cuts.extend(forbidden.range(lo.clone()..=hi.clone()).filter(|x| *x > lo && *x < hi));
    cuts.push(hi);
    let (a, b) = cuts
        .windows(2)
        .map(|w| (w[0], w[1]))
        .max_by(|x, y| (x.1 - x.0).cmp(&(y.1 - y.0)))
        .unwrap();
    let w = b - a;
    (a + &w * q(1, 3), a + &w * q(2, 3))
}

pub(crate) fn layout(sd: &SurfaceDrawing) -> Result<Layout> {
    let core = sd.core();
    let graph = core.graph().clone();
    let n = graph.edge_count();

    // Move the core into [0,1] × [-3,-2] with an orientation-preserving map.
    let c = shear_for(core);
    let sheared = |p: &Point| Point::new(&p.x + &c * &p.y, p.y.clone());
    let all: Vec<Point> = core.polylines().iter().flatten().chain(core.vertex_points()).map(sheared).collect();
    let min_x = all.iter().map(|p| &p.x).min().cloned().unwrap_or_else(Q::zero);
    let max_x = all.iter().map(|p| &p.x).max().cloned().unwrap_or_else(Q::zero);
    let min_y = all.iter().map(|p| &p.y).min().cloned().unwrap_or_else(Q::zero);
    let max_y = all.iter().map(|p| &p.y).max().cloned().unwrap_or_else(Q::zero);
    let wx = if max_x > min_x { &max_x - &min_x } else { Q::one() };
    let wy = if max_y > min_y { &max_y - &min_y } else { Q::one() };
    let place = |p: &Point| {
        let s = sheared(p);
        Point::new((&s.x - &min_x) / &wx, (&s.y - &min_y) / &wy - qi(3))
    };
    let vertex_points: Vec<Point> = core.vertex_points().iter().map(place).collect();
    let mut polylines: Vec<Vec<Point>> = core.polylines().iter().map(|l| l.iter().map(place).collect()).collect();
    let mut regions: Vec<Vec<Region>> = polylines.iter().map(|l| vec![Region::Disk; l.len() - 1]).collect();

    let mut forbidden: BTreeSet<Q> = polylines.iter().flatten().map(|p| p.x.clone()).collect();
    forbidden.extend(core.crossings().iter().map(|cr| place(&cr.point).x));

    let (tracks, _) = assign_tracks(sd);
    let loops: Vec<EdgeId> = sd.tube_order().iter().copied().filter(|&e| !tracks[e].is_empty()).collect();
    let rail_count: usize = loops.iter().map(|&e| tracks[e].len() + 1).sum();
    let mut next_rail = 0i64;
    let mut rail = || {
        next_rail += 1;
        qi(-1) + q(3 * next_rail, 2 * (rail_count as i64 + 1))
    };

    for &e in &loops {
        let a = sd.attach()[e];
        let (s0, s1) = (polylines[e][a].clone(), polylines[e][a + 1].clone());
        let (lo, hi) = if s0.x < s1.x { (&s0.x, &s1.x) } else { (&s1.x, &s0.x) };
        let (x1, x2) = split_gap(lo, hi, &forbidden);
        let at = |x: &Q| s0.lerp(&s1, &((x - &s0.x) / (&s1.x - &s0.x)));
        let (p, p2) = if s0.x < s1.x { (at(&x1), at(&x2)) } else { (at(&x2), at(&x1)) };
        forbidden.insert(x1);
        forbidden.insert(x2);

        let mut pts = vec![p.clone()];
        let mut regs = vec![Region::Disk, Region::Disk];
        let mut y = rail();
        pts.push(Point::new(p.x.clone(), y.clone()));
        for (k, fwd, track) in &tracks[e] {
            let y_out = rail();
            let (pp, rr) = pass_points(track, *k, *fwd, &y, &y_out);
            regs.push(Region::Disk);
            regs.extend(rr);
            pts.extend(pp);
            y = y_out;
        }
        regs.push(Region::Disk);
        pts.push(Point::new(p2.x.clone(), y));
        regs.push(Region::Disk);
        pts.push(p2);
        regs.push(Region::Disk);

        let mut line = polylines[e][..=a].to_vec();
        line.extend(pts);
        line.extend(polylines[e][a + 1..].iter().cloned());
        let mut reg = regions[e][..a].to_vec();
        reg.extend(regs);
        reg.extend(regions[e][a + 1..].iter().copied());
        debug_assert_eq!(reg.len() + 1, line.len());
        polylines[e] = line;
        regions[e] = reg;
    }
    debug_assert_eq!(regions.len(), n);

    let drawing = PlanarDrawing::new(graph, vertex_points, polylines).map_err(|err| match err {
        Error::GeneralPosition(m) => Error::Layout(m),
        other => other,
    })?;
    Ok(Layout { drawing, regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_bipartite, complete_graph, independent_pairs, Graph};
    use crate::planar::{canonical_drawing, crossing_parity_matrix, signed_crossing_matrix};
    use crate::surface::{verify_geometric, verify_z, verify_z2, PassMode, SurfaceDrawing};
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn drawing(s: SurfaceSpec, mode: PassMode, g: &Graph, passes: Vec<Vec<i64>>) -> SurfaceDrawing {
        let n = g.edge_count();
        SurfaceDrawing::new(s, mode, canonical_drawing(g), passes, (0..n).collect(), vec![0; n]).unwrap()
    }

    #[test]
    fn empty_passes_match_the_core() {
        let g = complete_graph(5).unwrap();
        let sd = drawing(SurfaceSpec::Orientable(1), PassMode::Z2, &g, vec![vec![0, 0]; 10]);
        let core = crossing_parity_matrix(sd.core());
        let rep = verify_geometric(&sd, PassMode::Z2).unwrap();
        for p in &rep.pairs {
            assert_eq!(p.value, i64::from(core.get(p.e, p.f)));
        }
        assert!(!rep.is_embedding);
    }

    #[test]
    fn interlaced_passes_meet_once_with_negative_sign() {
        let g = complete_graph(4).unwrap();
        let pair = independent_pairs(&g)[0];
        let mut passes = vec![vec![0, 0]; 6];
        passes[pair.i] = vec![1, 0];
        passes[pair.j] = vec![0, 1];
        let sd = drawing(SurfaceSpec::Orientable(1), PassMode::Z, &g, passes);
        let core = signed_crossing_matrix(sd.core()).get(pair.i, pair.j).to_i64().unwrap();
        let geo = verify_geometric(&sd, PassMode::Z).unwrap();
        let v = geo.pairs.iter().find(|p| (p.e, p.f) == (pair.i, pair.j)).unwrap().value;
        assert_eq!(v, core - 1);
        assert_eq!(geo, verify_z(&sd).unwrap());

        // Reversing either pass flips the sign.
        let mut passes = sd.passes().to_vec();
        passes[pair.j] = vec![0, -1];
        let sd = drawing(SurfaceSpec::Orientable(1), PassMode::Z, &g, passes);
        let geo = verify_geometric(&sd, PassMode::Z).unwrap();
        let v = geo.pairs.iter().find(|p| (p.e, p.f) == (pair.i, pair.j)).unwrap().value;
        assert_eq!(v, core + 1);
    }

    #[test]
    fn parallel_and_twisted_passes() {
        let g = complete_graph(4).unwrap();
        let pair = independent_pairs(&g)[1];
        let core = crossing_parity_matrix(&canonical_drawing(&g));
        let base = i64::from(core.get(pair.i, pair.j));
        let value = |sd: &SurfaceDrawing| {
            let geo = verify_geometric(sd, PassMode::Z2).unwrap();
            assert_eq!(geo, verify_z2(sd).unwrap());
            geo.pairs.iter().find(|p| (p.e, p.f) == (pair.i, pair.j)).unwrap().value
        };
        let mut passes = vec![vec![0, 0]; 6];
        passes[pair.i] = vec![1, 0];
        passes[pair.j] = vec![1, 0];
        assert_eq!(value(&drawing(SurfaceSpec::Orientable(1), PassMode::Z2, &g, passes)), base);
        let mut passes = vec![vec![0]; 6];
        passes[pair.i] = vec![1];
        passes[pair.j] = vec![1];
        assert_eq!(value(&drawing(SurfaceSpec::Nonorientable(1), PassMode::Z2, &g, passes)), base ^ 1);
    }

    #[test]
    fn picture_adds_the_form_as_artifacts() {
        // Crossings discarded as artifacts are exactly one per interlaced
        // pass pair: the picture has the surface parities plus the form.
        let g = complete_bipartite(3, 3).unwrap();
        let passes: Vec<Vec<i64>> = (0..9).map(|e| vec![(e % 2) as i64, (e / 3 % 2) as i64, (e / 4 % 2) as i64, 1]).collect();
        let sd = drawing(SurfaceSpec::Orientable(2), PassMode::Z2, &g, passes.clone());
        let pic = crossing_parity_matrix(&layout(&sd).unwrap().drawing);
        let on_surface = verify_geometric(&sd, PassMode::Z2).unwrap();
        for (k, p) in independent_pairs(&g).into_iter().enumerate() {
            let form = super::super::verify::ribbon_form(sd.surface(), &passes[p.i], &passes[p.j]).rem_euclid(2);
            assert_eq!(i64::from(pic.get(p.i, p.j)), on_surface.pairs[k].value ^ form);
        }
    }

    fn arb_case() -> impl Strategy<Value = (usize, SurfaceSpec, bool, Vec<Vec<i64>>, Vec<usize>, u64)> {
        (0usize..3, 0usize..5, any::<bool>(), any::<u64>()).prop_flat_map(|(gi, si, z, seed)| {
            let s = match si {
                0 => SurfaceSpec::Orientable(1),
                1 => SurfaceSpec::Orientable(2),
                k => SurfaceSpec::Nonorientable(k - 1),
            };
            let z = z && s.is_orientable();
            let n = [6, 9, 10][gi];
            let r = s.ribbon_count();
            let entry = if z { -2i64..=2 } else { 0i64..=1 };
            (
                Just(gi),
                Just(s),
                Just(z),
                proptest::collection::vec(proptest::collection::vec(entry, r), n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                Just(seed),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn verifiers_agree((gi, s, z, passes, order, seed) in arb_case()) {
            let g = [complete_graph(4), complete_bipartite(3, 3), complete_graph(5)][gi].clone().unwrap();
            let core = canonical_drawing(&g);
            let attach = (0..g.edge_count())
                .map(|e| (seed >> (e % 32)) as usize % (core.polyline(e).len() - 1))
                .collect();
            let mode = if z { PassMode::Z } else { PassMode::Z2 };
            let sd = SurfaceDrawing::new(s, mode, core, passes, order, attach).unwrap();
            let comb = if z { verify_z(&sd).unwrap() } else { verify_z2(&sd).unwrap() };
            prop_assert_eq!(&verify_geometric(&sd, mode).unwrap(), &comb);
            if z {
                let mod2 = verify_z2(&sd).unwrap();
                for (a, b) in mod2.pairs.iter().zip(&comb.pairs) {
                    prop_assert_eq!(a.value, b.value.rem_euclid(2));
                }
            }
        }
    }
}
