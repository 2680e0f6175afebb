//! Analytic trade-off bounds and their numerical verification.

mod bounds;
mod figures;
mod verify;

pub use bounds::*;
pub use figures::*;
pub use verify::*;
