//! Plane drawings with exact rational coordinates, their crossing
//! matrices, and the decision procedure for compatibility modulo 2.

mod canonical;
mod compat;
mod drawing;
mod finger;
pub mod geom;

pub use canonical::{canonical_drawing, canonical_drawing_with_order};
pub use compat::{finger_move_generators, is_compatible_mod2, CompatibilityClass, FingerMove, ParityCheck};
pub use drawing::{crossing_parity_matrix, signed_crossing_matrix, EdgeCrossing, ParityMatrix, PlanarDrawing};
pub(crate) use drawing::{content_lines, parse_drawing_lines};
pub use finger::{apply_finger, realize_parity};
pub use geom::{Point, Q};
