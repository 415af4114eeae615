//! Pair-by-pair verification of surface drawings.

use std::fmt;

use num_traits::ToPrimitive;

use super::layout::{layout, Region};
use super::model::{PassMode, SurfaceDrawing, SurfaceSpec};
use crate::error::{Error, Result};
use crate::graph::{independent_pairs, EdgeId};
use crate::planar::{crossing_parity_matrix, signed_crossing_matrix};

/// The value for one independent pair: a parity (0/1) or a signed sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairValue {
    pub e: EdgeId,
    pub f: EdgeId,
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub mode: PassMode,
    /// Independent pairs in lexicographic order.
    pub pairs: Vec<PairValue>,
    pub is_embedding: bool,
}

impl VerifyReport {
    fn from_values(mode: PassMode, pairs: Vec<PairValue>) -> Self {
        let is_embedding = pairs.iter().all(|p| p.value == 0);
        VerifyReport { mode, pairs, is_embedding }
    }

    /// Pairs with a nonzero value.
    pub fn violations(&self) -> impl Iterator<Item = &PairValue> {
        self.pairs.iter().filter(|p| p.value != 0)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.mode {
            PassMode::Z2 => "parity",
            PassMode::Z => "sum",
        };
        for p in &self.pairs {
            writeln!(f, "pair {} {} {what} {}", p.e, p.f, p.value)?;
        }
        writeln!(f, "{}", if self.is_embedding { "EMBEDDING" } else { "NOT" })
    }
}

/// `yσᵀ F yτ` for the surface's intersection form on ribbon coordinates:
/// `[[0,1],[-1,0]]` blocks for handles, the identity for crosscaps. Reduced
/// modulo 2 the handle blocks become `[[0,1],[1,0]]`.
pub(crate) fn ribbon_form(surface: SurfaceSpec, ys: &[i64], yt: &[i64]) -> i64 {
    match surface {
        SurfaceSpec::Orientable(g) => (0..g).map(|i| ys[2 * i] * yt[2 * i + 1] - ys[2 * i + 1] * yt[2 * i]).sum(),
        SurfaceSpec::Nonorientable(_) => ys.iter().zip(yt).map(|(a, b)| a * b).sum(),
    }
}

/// Z₂ verification by counting: core parity plus one crossing for every
/// pair of passes through interlaced ribbons (or through the same twisted
/// ribbon). Signed pass counts are read modulo 2.
pub fn verify_z2(sd: &SurfaceDrawing) -> Result<VerifyReport> {
    let g = sd.core().graph();
    let core = crossing_parity_matrix(sd.core());
    let y = sd.passes();
    let pairs = independent_pairs(g)
        .into_iter()
        .map(|p| {
            let ribbon = ribbon_form(sd.surface(), &y[p.i], &y[p.j]).rem_euclid(2);
            PairValue { e: p.i, f: p.j, value: i64::from(core.get(p.i, p.j)) ^ ribbon }
        })
        .collect();
    Ok(VerifyReport::from_values(PassMode::Z2, pairs))
}

/// Z verification by counting: core algebraic crossing number plus the
/// intersection number of the spliced loops, `−yσᵀ H yτ`. A positive pass
/// through the first ribbon of a handle meets a positive pass through the
/// second with sign −1 in that argument order.
pub fn verify_z(sd: &SurfaceDrawing) -> Result<VerifyReport> {
    if !sd.surface().is_orientable() {
        return Err(Error::Precondition("integer verification needs an orientable surface".into()));
    }
    let g = sd.core().graph();
    let core = signed_crossing_matrix(sd.core());
    let y = sd.passes();
    let mut pairs = Vec::new();
    for p in independent_pairs(g) {
        let c = core.get(p.i, p.j).to_i64().ok_or_else(|| Error::Dimension("crossing count overflow".into()))?;
        pairs.push(PairValue { e: p.i, f: p.j, value: c - ribbon_form(sd.surface(), &y[p.i], &y[p.j]) });
    }
    Ok(VerifyReport::from_values(PassMode::Z, pairs))
}

/// Independent check: lays the edges out in the plane picture of the
/// surface (disk below, ribbons drawn above) with exact coordinates and
/// counts the crossings that lie on the surface, i.e. those inside the
/// disk or between two arcs of the same ribbon. Overlaps of different
/// ribbons and the fold of a twisted ribbon exist only in the picture and
/// are skipped.
pub fn verify_geometric(sd: &SurfaceDrawing, mode: PassMode) -> Result<VerifyReport> {
    if mode == PassMode::Z && !sd.surface().is_orientable() {
        return Err(Error::Precondition("integer verification needs an orientable surface".into()));
    }
    let lay = layout(sd)?;
    let g = sd.core().graph();
    let pairs = independent_pairs(g);
    let mut index = std::collections::HashMap::new();
    for (k, p) in pairs.iter().enumerate() {
        index.insert((p.i, p.j), k);
    }
    let mut sums = vec![0i64; pairs.len()];
    for c in lay.drawing.crossings() {
        let Some(&k) = index.get(&(c.e, c.f)) else { continue };
        let keep = match (lay.region_at(c.e, &c.point), lay.region_at(c.f, &c.point)) {
            (Region::Disk, Region::Disk) => true,
            (Region::Ribbon(a), Region::Ribbon(b)) => a == b,
            _ => false,
        };
        if keep {
            sums[k] += i64::from(c.sign);
        }
    }
    let values = pairs
        .iter()
        .zip(sums)
        .map(|(p, s)| PairValue { e: p.i, f: p.j, value: if mode == PassMode::Z2 { s.rem_euclid(2) } else { s } })
        .collect();
    Ok(VerifyReport::from_values(mode, values))
}
