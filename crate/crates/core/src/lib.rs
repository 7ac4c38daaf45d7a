//! Exact algebra and polyhedral geometry for toric resolutions of
//! Newton non-degenerate ideals.

pub mod error;
pub mod exact;
pub mod groebner;
pub mod poly;
pub mod polyhedra;
pub mod toric;
pub mod tropical;

pub use error::{Error, Result};
