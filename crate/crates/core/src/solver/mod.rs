//! Deciding Z₂-embeddability by searching for a compatible matrix of
//! bounded rank, with verified witnesses.

mod bounds;
mod search;

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

pub use bounds::{k2n_lower_bound, kmn_lower_bound};
use search::{search, Control, Form, Found, Problem};

use crate::error::{Error, Result};
use crate::gf2::{hyperbolic_matrix_gf2, BitMatrix};
use crate::graph::Graph;
use crate::planar::{realize_parity, ParityMatrix, PlanarDrawing};
use crate::surface::{
    construct_z2_embedding, verify_geometric, verify_z2, PassMode, SurfaceDrawing, SurfaceSpec, VerifyReport,
};

#[derive(Clone, Debug)]
pub struct SolverBudget {
    pub max_nodes: u64,
    pub time_cap: Duration,
    pub threads: usize,
}

impl Default for SolverBudget {
    fn default() -> Self {
        SolverBudget { max_nodes: 200_000_000, time_cap: Duration::from_secs(600), threads: 1 }
    }
}

impl SolverBudget {
    fn check(&self) -> Result<()> {
        if self.max_nodes == 0 || self.time_cap.is_zero() || self.threads == 0 {
            return Err(Error::Precondition("budget caps must be positive".into()));
        }
        Ok(())
    }
}

/// Everything needed to check a positive answer independently.
#[derive(Clone, Debug)]
pub struct Witness {
    /// The compatible matrix `A` (even for orientable, odd for crosscaps).
    pub matrix: BitMatrix,
    /// Ribbon vectors `Y`, one column per edge, with `Yᵀ F Y = A` off the
    /// diagonal.
    pub factor: BitMatrix,
    /// A plane drawing whose crossing parities equal `A`.
    pub drawing: PlanarDrawing,
    pub surface_drawing: SurfaceDrawing,
    pub report: VerifyReport,
    /// Found by a parallel search, so not necessarily the first solution in
    /// search order.
    pub parallel: bool,
    pub nodes: u64,
}

impl Witness {
    pub fn surface(&self) -> SurfaceSpec {
        self.surface_drawing.surface()
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Yes(Box<Witness>),
    No,
    /// The budget ran out before the search finished.
    Unknown,
}

impl Outcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, Outcome::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Outcome::No)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Yes(w) => Some(w),
            _ => None,
        }
    }
}

fn solve(g: &Graph, s: SurfaceSpec, budget: &SolverBudget) -> Result<Outcome> {
    budget.check()?;
    let form = match s {
        SurfaceSpec::Orientable(k) => Form::Symplectic(k),
        SurfaceSpec::Nonorientable(m) => Form::Identity(m),
    };
    if form.dim() > 64 {
        return Err(Error::Precondition("at most 64 ribbons are supported".into()));
    }
    let problem = Problem::new(g, form);
    let ctl = Control {
        max_nodes: budget.max_nodes,
        deadline: Instant::now() + budget.time_cap,
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
    };
    match search(&problem, &ctl, budget.threads) {
        Found::No => Ok(Outcome::No),
        Found::OutOfBudget => Ok(Outcome::Unknown),
        Found::Yes(y) => {
            let nodes = ctl.nodes.load(Ordering::Relaxed);
            let w = build_witness(g, s, form, &y, budget.threads > 1, nodes)?;
            Ok(Outcome::Yes(Box::new(w)))
        }
    }
}

fn build_witness(g: &Graph, s: SurfaceSpec, form: Form, y: &[u64], parallel: bool, nodes: u64) -> Result<Witness> {
    let d = form.dim();
    let mut factor = BitMatrix::zeros(d, y.len());
    for (e, &v) in y.iter().enumerate() {
        for k in 0..d {
            factor.set(k, e, v >> k & 1 == 1);
        }
    }
    let matrix = match form {
        Form::Symplectic(k) => BitMatrix::gram(&factor, &hyperbolic_matrix_gf2(k))?,
        Form::Identity(m) => {
            let mut a = BitMatrix::gram(&factor, &BitMatrix::identity(m))?;
            if a.symmetry_class().is_even && a.rows() > 0 {
                a.set(0, 0, true);
            }
            a
        }
    };
    let drawing = realize_parity(g, &ParityMatrix::from_matrix(g, &matrix)?)?;
    let surface_drawing = construct_z2_embedding(g, &drawing, &factor, s)?;
    let report = verify_z2(&surface_drawing)?;
    if !report.is_embedding {
        return Err(Error::Verification("constructed surface drawing is not a Z2-embedding".into()));
    }
    if verify_geometric(&surface_drawing, PassMode::Z2)? != report {
        return Err(Error::Verification("geometric check disagrees with the counting check".into()));
    }
    Ok(Witness { matrix, factor, drawing, surface_drawing, report, parallel, nodes })
}

/// Is there a Z₂-embedding of `g` into the orientable surface of the given
/// genus? Searches for ribbon vectors `yσ ∈ GF(2)^{2·genus}` whose
/// symplectic Gram matrix is compatible with `g`.
pub fn z2_embeddable_orientable(g: &Graph, genus: usize, budget: &SolverBudget) -> Result<Outcome> {
    solve(g, SurfaceSpec::Orientable(genus), budget)
}

/// Same question for the nonorientable surface with `m ≥ 1` crosscaps,
/// using the identity form. An even Gram matrix is made odd by setting its
/// first diagonal entry, which no independent pair sees.
pub fn z2_embeddable_nonorientable(g: &Graph, m: usize, budget: &SolverBudget) -> Result<Outcome> {
    solve(g, SurfaceSpec::new_nonorientable(m)?, budget)
}

/// Is there a Z₂-embedding into some connected closed surface of Euler
/// characteristic `e ≤ 2`? Tries the orientable surface (when `2 − e` is
/// even) and then the nonorientable one.
pub fn z2_embeddable_euler(g: &Graph, e: i64, budget: &SolverBudget) -> Result<Outcome> {
    if e > 2 {
        return Err(Error::Precondition(format!("no closed surface has Euler characteristic {e}")));
    }
    let r = (2 - e) as usize;
    let mut unknown = false;
    let mut candidates = Vec::new();
    if r % 2 == 0 {
        candidates.push(SurfaceSpec::Orientable(r / 2));
    }
    if r >= 1 {
        candidates.push(SurfaceSpec::Nonorientable(r));
    }
    for s in candidates {
        match solve(g, s, budget)? {
            Outcome::Yes(w) => return Ok(Outcome::Yes(w)),
            Outcome::Unknown => unknown = true,
            Outcome::No => {}
        }
    }
    Ok(if unknown { Outcome::Unknown } else { Outcome::No })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Orientable,
    Nonorientable,
}

#[derive(Clone, Debug)]
pub enum GenusOutcome {
    /// Smallest parameter with a Z₂-embedding, and its witness.
    Found(usize, Box<Witness>),
    /// Every parameter up to the maximum was ruled out.
    AboveMax,
    /// Parameters below this one were ruled out; this one is undecided.
    Unknown(usize),
}

/// Smallest genus (or crosscap number) admitting a Z₂-embedding, scanning
/// upward from 0 (or 1) to `max`.
pub fn z2_genus(g: &Graph, kind: SurfaceKind, max: usize, budget: &SolverBudget) -> Result<GenusOutcome> {
    let start = match kind {
        SurfaceKind::Orientable => 0,
        SurfaceKind::Nonorientable => 1,
    };
    for p in start..=max {
        let out = match kind {
            SurfaceKind::Orientable => z2_embeddable_orientable(g, p, budget)?,
            SurfaceKind::Nonorientable => z2_embeddable_nonorientable(g, p, budget)?,
        };
        match out {
            Outcome::Yes(w) => return Ok(GenusOutcome::Found(p, w)),
            Outcome::Unknown => return Ok(GenusOutcome::Unknown(p)),
            Outcome::No => {}
        }
    }
    Ok(GenusOutcome::AboveMax)
}

#[cfg(test)]
mod tests;
