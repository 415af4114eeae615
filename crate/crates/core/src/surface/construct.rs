//! Building surface drawings from factorizations, and reading matrices back.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::layout::layout;
use super::model::{PassMode, SurfaceDrawing, SurfaceSpec};
use super::verify::ribbon_form;
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::Graph;
use crate::int::IntMatrix;
use crate::planar::PlanarDrawing;

fn check_core(g: &Graph, f: &PlanarDrawing, cols: usize) -> Result<()> {
    if f.graph() != g {
        return Err(Error::Dimension("the drawing is not a drawing of the given graph".into()));
    }
    if cols != g.edge_count() {
        return Err(Error::Dimension(format!("factor has {cols} columns, graph has {} edges", g.edge_count())));
    }
    Ok(())
}

fn check_rows(s: SurfaceSpec, rows: usize) -> Result<()> {
    let r = s.ribbon_count();
    if rows > r || (s.is_orientable() && rows % 2 == 1) {
        return Err(Error::Dimension(format!("factor with {rows} rows does not fit {s} ({r} ribbons)")));
    }
    Ok(())
}

fn assemble(f: &PlanarDrawing, s: SurfaceSpec, mode: PassMode, passes: Vec<Vec<i64>>) -> Result<SurfaceDrawing> {
    let n = passes.len();
    SurfaceDrawing::new(s, mode, f.clone(), passes, (0..n).collect(), vec![0; n])
}

/// Splices into each edge `σ` of `f` a loop running once through ribbon
/// `k` for every `Y[k][σ] = 1`. Missing rows (a factor of lower rank) are
/// taken as zero. Loops are nested in edge order.
pub fn construct_z2_embedding(g: &Graph, f: &PlanarDrawing, y: &BitMatrix, s: SurfaceSpec) -> Result<SurfaceDrawing> {
    check_core(g, f, y.cols())?;
    check_rows(s, y.rows())?;
    let y = y.pad_rows(s.ribbon_count());
    let passes = (0..y.cols()).map(|e| (0..y.rows()).map(|k| i64::from(y.get(k, e))).collect()).collect();
    assemble(f, s, PassMode::Z2, passes)
}

/// Integer version: edge `σ` runs `|B[k][σ]|` times through ribbon `k`, in
/// the positive direction when the entry is positive.
pub fn construct_z_embedding(g: &Graph, f: &PlanarDrawing, b: &IntMatrix, s: SurfaceSpec) -> Result<SurfaceDrawing> {
    if !s.is_orientable() {
        return Err(Error::Precondition("integer embeddings are built on orientable surfaces only".into()));
    }
    check_core(g, f, b.cols())?;
    check_rows(s, b.rows())?;
    let r = s.ribbon_count();
    let mut passes = vec![vec![0i64; r]; b.cols()];
    for (e, p) in passes.iter_mut().enumerate() {
        for k in 0..b.rows() {
            p[k] = b.get(k, e).to_i64().ok_or_else(|| Error::Dimension("factor entry too large".into()))?;
        }
    }
    assemble(f, s, PassMode::Z, passes)
}

/// Matrix read back from a surface drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractedMatrix {
    Gf2(BitMatrix),
    Int(IntMatrix),
}

#[derive(Clone, Debug)]
pub struct Extraction {
    pub matrix: ExtractedMatrix,
    /// The edges as drawn in the plane picture of the surface. Its crossing
    /// parities (signed crossing numbers) on independent pairs are those of
    /// the surface drawing plus the entries of `matrix`.
    pub drawing: PlanarDrawing,
}

/// Gram matrix of the closed-up edge cycles under the surface's
/// intersection form, with zero diagonal. Orientable surfaces give an even
/// matrix. For crosscaps the diagonal is the self-intersection `yσ·yσ`, and
/// an even result gets entry `(0,0)` set to 1 so the matrix is odd. In Z
/// mode the entries are `yσᵀ H yτ`, i.e. minus the intersection numbers.
pub fn extract_matrix(sd: &SurfaceDrawing, mode: PassMode) -> Result<Extraction> {
    if mode == PassMode::Z && !sd.surface().is_orientable() {
        return Err(Error::Precondition("integer extraction needs an orientable surface".into()));
    }
    let y = sd.homology_vectors();
    let n = y.len();
    let matrix = match mode {
        PassMode::Z2 => {
            let mut a = BitMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = match sd.surface() {
                        SurfaceSpec::Orientable(_) if i == j => 0,
                        _ => ribbon_form(sd.surface(), &y[i], &y[j]),
                    };
                    a.set(i, j, v.rem_euclid(2) == 1);
                }
            }
            if !sd.surface().is_orientable() && n > 0 && a.symmetry_class().is_even {
                a.set(0, 0, true);
            }
            ExtractedMatrix::Gf2(a)
        }
        PassMode::Z => {
            let mut a = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        a.set(i, j, BigInt::from(ribbon_form(sd.surface(), &y[i], &y[j])));
                    }
                }
            }
            ExtractedMatrix::Int(a)
        }
    };
    Ok(Extraction { matrix, drawing: layout(sd)?.drawing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2::{factor_even, factor_odd, hyperbolic_matrix_gf2, rank_gf2};
    use crate::graph::{complete_bipartite, complete_graph, independent_pairs};
    use crate::int::{factor_alternating, rank_q};
    use crate::planar::{
        canonical_drawing, crossing_parity_matrix, is_compatible_mod2, realize_parity, signed_crossing_matrix,
        CompatibilityClass, ParityMatrix,
    };
    use crate::surface::{verify_geometric, verify_z, verify_z2};

    fn lcg(seed: &mut u64) -> u64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        *seed >> 33
    }

    /// First random `rows × |E|` factor whose Gram matrix lies in the class.
    fn compatible_gram(g: &Graph, rows: usize, form: &BitMatrix, seed: &mut u64) -> BitMatrix {
        let class = CompatibilityClass::new(g);
        loop {
            let mut y = BitMatrix::zeros(rows, g.edge_count());
            for r in 0..rows {
                for c in 0..g.edge_count() {
                    y.set(r, c, lcg(seed) & 1 == 1);
                }
            }
            let a = BitMatrix::gram(&y, form).unwrap();
            let pm = ParityMatrix::from_matrix(g, &a).unwrap();
            if class.contains(&pm.to_pair_vector(class.pairs())) && !y.is_zero() {
                return a;
            }
        }
    }

    #[test]
    fn zero_factor_reduces_to_the_core() {
        let g = complete_graph(4).unwrap();
        let f = canonical_drawing(&g);
        let sd = construct_z2_embedding(&g, &f, &BitMatrix::zeros(0, 6), SurfaceSpec::Orientable(1)).unwrap();
        assert!(sd.passes().iter().all(|p| p == &vec![0, 0]));
        let rep = verify_z2(&sd).unwrap();
        let core = crossing_parity_matrix(&f);
        assert!(rep.pairs.iter().all(|p| p.value == i64::from(core.get(p.e, p.f))));
    }

    #[test]
    fn k5_on_the_torus() {
        let g = complete_graph(5).unwrap();
        let mut seed = 5;
        let a = compatible_gram(&g, 2, &hyperbolic_matrix_gf2(1), &mut seed);
        assert!(rank_gf2(&a) <= 2 && a.symmetry_class().is_even);
        let f = realize_parity(&g, &ParityMatrix::from_matrix(&g, &a).unwrap()).unwrap();
        let y = factor_even(&a).unwrap();
        let sd = construct_z2_embedding(&g, &f, &y, SurfaceSpec::Orientable(1)).unwrap();
        assert!(verify_z2(&sd).unwrap().is_embedding);
        assert!(verify_geometric(&sd, PassMode::Z2).unwrap().is_embedding);

        let ex = extract_matrix(&sd, PassMode::Z2).unwrap();
        let ExtractedMatrix::Gf2(b) = ex.matrix else { panic!("expected a GF(2) matrix") };
        assert!(b.symmetry_class().is_even && rank_gf2(&b) <= 2);
        for p in independent_pairs(&g) {
            assert_eq!(b.get(p.i, p.j), a.get(p.i, p.j));
        }
        let pm = ParityMatrix::from_matrix(&g, &b).unwrap();
        assert!(is_compatible_mod2(&g, &pm).unwrap().is_some());
        assert_eq!(crossing_parity_matrix(&ex.drawing), pm);
    }

    #[test]
    fn k33_on_the_projective_plane() {
        let g = complete_bipartite(3, 3).unwrap();
        let mut seed = 11;
        let a = compatible_gram(&g, 1, &BitMatrix::identity(1), &mut seed);
        assert!(a.symmetry_class().is_odd);
        let f = realize_parity(&g, &ParityMatrix::from_matrix(&g, &a).unwrap()).unwrap();
        let y = factor_odd(&a).unwrap();
        let s = SurfaceSpec::Nonorientable(1);
        let sd = construct_z2_embedding(&g, &f, &y, s).unwrap();
        assert!(verify_z2(&sd).unwrap().is_embedding);
        assert!(verify_geometric(&sd, PassMode::Z2).unwrap().is_embedding);
        let ExtractedMatrix::Gf2(b) = extract_matrix(&sd, PassMode::Z2).unwrap().matrix else { panic!() };
        assert!(b.symmetry_class().is_odd && rank_gf2(&b) <= 1);

        // A factor of lower rank is padded with unused ribbons.
        let sd3 = construct_z2_embedding(&g, &f, &y, SurfaceSpec::Nonorientable(3)).unwrap();
        assert!(sd3.passes().iter().all(|p| p.len() == 3 && p[1] == 0 && p[2] == 0));
        assert!(verify_geometric(&sd3, PassMode::Z2).unwrap().is_embedding);
    }

    #[test]
    fn even_extraction_is_flipped_to_odd() {
        let g = complete_graph(4).unwrap();
        let f = canonical_drawing(&g);
        let sd = construct_z2_embedding(&g, &f, &BitMatrix::zeros(1, 6), SurfaceSpec::Nonorientable(1)).unwrap();
        let ExtractedMatrix::Gf2(b) = extract_matrix(&sd, PassMode::Z2).unwrap().matrix else { panic!() };
        assert!(b.get(0, 0) && b.symmetry_class().is_odd);
    }

    #[test]
    fn convex_k4_integer_round_trip() {
        let g = complete_graph(4).unwrap();
        let f = canonical_drawing(&g);
        let a = signed_crossing_matrix(&f);
        assert_eq!(rank_q(&a), 2);
        let b = factor_alternating(&a).unwrap();
        let s = SurfaceSpec::Orientable(rank_q(&a) / 2);
        let sd = construct_z_embedding(&g, &f, &b, s).unwrap();
        let rep = verify_z(&sd).unwrap();
        assert!(rep.is_embedding);
        assert_eq!(verify_geometric(&sd, PassMode::Z).unwrap(), rep);
        let ex = extract_matrix(&sd, PassMode::Z).unwrap();
        let ExtractedMatrix::Int(m) = ex.matrix else { panic!() };
        assert!(m.is_skew_symmetric());
        let pic = signed_crossing_matrix(&ex.drawing);
        for p in independent_pairs(&g) {
            assert_eq!(m.get(p.i, p.j), a.get(p.i, p.j));
            assert_eq!(pic.get(p.i, p.j), a.get(p.i, p.j));
        }
        assert!(construct_z_embedding(&g, &f, &b, SurfaceSpec::Nonorientable(2)).is_err());
    }

    #[test]
    fn doubled_passes_are_recorded() {
        let g = complete_graph(4).unwrap();
        let f = canonical_drawing(&g);
        let mut b = IntMatrix::zeros(2, 6);
        b.set(0, 0, BigInt::from(2));
        b.set(1, 5, BigInt::from(-1));
        let sd = construct_z_embedding(&g, &f, &b, SurfaceSpec::Orientable(1)).unwrap();
        assert_eq!(sd.passes()[0], vec![2, 0]);
        assert_eq!(sd.passes()[5], vec![0, -1]);
        assert_eq!(verify_geometric(&sd, PassMode::Z).unwrap(), verify_z(&sd).unwrap());
    }

    #[test]
    fn dimension_errors() {
        let g = complete_graph(4).unwrap();
        let f = canonical_drawing(&g);
        let s = SurfaceSpec::Orientable(1);
        assert!(construct_z2_embedding(&g, &f, &BitMatrix::zeros(2, 5), s).is_err());
        assert!(construct_z2_embedding(&g, &f, &BitMatrix::zeros(4, 6), s).is_err());
        assert!(construct_z2_embedding(&g, &f, &BitMatrix::zeros(1, 6), s).is_err());
        let other = complete_bipartite(2, 3).unwrap();
        assert!(construct_z2_embedding(&other, &f, &BitMatrix::zeros(2, 6), s).is_err());
    }
}
