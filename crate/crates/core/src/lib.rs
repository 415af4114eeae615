pub mod error;
pub mod gf2;
pub mod graph;
pub mod int;
pub mod planar;
pub mod solver;
pub mod surface;

pub use error::{Error, Result};
