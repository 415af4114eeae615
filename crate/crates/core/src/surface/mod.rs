//! Surfaces as a disk with ribbons, and drawings of graphs on them.

mod construct;
mod layout;
mod model;
mod verify;

pub use construct::{construct_z2_embedding, construct_z_embedding, extract_matrix, ExtractedMatrix, Extraction};
pub use model::{PassMode, SurfaceDrawing, SurfaceSpec};
pub use verify::{verify_geometric, verify_z, verify_z2, PairValue, VerifyReport};
