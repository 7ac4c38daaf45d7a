//! Rational polyhedral cones and fans.

mod cone;
mod dd;
mod fan;
mod refine;

pub use cone::{canonical_cmp, cone_from_i64, Cone};
pub use fan::{common_refinement, validate_fan, Fan, FanData, FanViolation};
pub use refine::regular_refinement;
