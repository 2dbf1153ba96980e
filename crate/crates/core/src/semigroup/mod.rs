//! The α-bicyclic monoid, Bruck extensions over an arbitrary base semigroup,
//! and the word-reduction model of the bicyclic monoid.

mod balpha;
mod bruck;
mod text;
mod word;

use thiserror::Error;

use crate::ordinal::OrdinalError;

pub use balpha::{balpha_inverse, balpha_mul, BAlphaElement};
pub use bruck::{box_of, bruck_mul, BoxIndex, BruckElement};
pub use text::{parse_balpha_element, parse_bruck_element};
pub use word::{bicyclic_reduce, BicyclicWord, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("elements live in different monoids (levels {left} and {right})")]
    LevelMismatch { left: String, right: String },
    #[error("coordinate {coordinate} is not below {bound}")]
    OutOfRange { coordinate: String, bound: String },
    #[error("the zero element has no box")]
    ZeroHasNoBox,
    #[error("box index overflow")]
    Overflow,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}
