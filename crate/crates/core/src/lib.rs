//! Exact ordinal arithmetic below ε₀, the α-bicyclic monoids `B_α`, their
//! Bruck extensions, and the classified family of locally compact
//! shift-continuous topologies on `B_α` for `α ≤ ω`.

pub mod cli;
pub mod iso;
pub mod ordinal;
pub mod sample;
pub mod semigroup;
pub mod topology;
pub mod verify;

pub use ordinal::{Ordinal, OrdinalError};
pub use semigroup::{BAlphaElement, BruckElement, SemigroupError};
