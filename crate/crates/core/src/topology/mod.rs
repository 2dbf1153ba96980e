//! The locally compact shift-continuous topologies `τ_{i,α}` on `B_α`,
//! `α ≤ ω`, described through decidable basic neighborhoods.
//!
//! A point `(a, b)` whose coordinates both end in a term with the same finite
//! exponent `j`, `1 ≤ j < i`, is a limit point of level `j`; every other point
//! is isolated. A basic neighborhood of a level-`j` point `(a, b)` is the
//! center together with every `(a⁻ + γ, b⁻ + δ)` where `a⁻`, `b⁻` are the
//! coordinates with their last coefficient decremented, `γ, δ < ω^j`, and the
//! `ω^(j-1)` coefficient of `γ` or of `δ` exceeds the threshold.

mod lattice;
mod nbhd;
mod witness;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::iso::IsoError;
use crate::ordinal::{Ordinal, OrdinalError};
use crate::semigroup::{BAlphaElement, SemigroupError};

pub use lattice::{
    enumerate_topologies, topology_finer, uncovered_boxes, BoxSquare, Refinement, TopologyFamily,
};
pub(crate) use nbhd::truncated_below;
pub use nbhd::{
    base_nbhd, classify_point, forced_nbhd_contains, h_inv, h_map, local_heads, nbhd_contains,
    parse_descriptor, NbhdDescriptor,
};
pub use witness::{
    continuity_witness, descriptors_disjoint, hausdorff_witness, verify_shift_inclusion, ShiftCheck,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TopologyError {
    #[error("element lives in B_({got}) but B_({expected}) was required")]
    LevelMismatch { expected: String, got: String },
    #[error("point {0} has a zero coordinate")]
    UndefinedForZeroCoordinate(String),
    #[error("target is centered at {target} but the shift maps the point to {image}")]
    TargetMismatch { target: String, image: String },
    #[error("no continuity witness found for {0}")]
    WitnessNotFound(String),
    #[error("points are equal")]
    EqualPoints,
    #[error("level {j} is not a limit level of the topology (i = {i})")]
    NotALimitLevel { j: u64, i: String },
    #[error("topologies are classified only for 1 <= alpha <= w, got {0}")]
    UnsupportedLevel(String),
    #[error("invalid topology: {0}")]
    InvalidSpec(String),
    #[error("descriptor {0} is not a basic open set of the topology")]
    InvalidDescriptor(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
    #[error(transparent)]
    Iso(#[from] IsoError),
}

/// A positive index up to `ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    Finite(u64),
    Omega,
}

impl Level {
    pub fn to_ordinal(self) -> Ordinal {
        match self {
            Level::Finite(n) => Ordinal::nat(n),
            Level::Omega => Ordinal::omega(),
        }
    }

    /// Accepts `0 < α ≤ ω`.
    pub fn from_ordinal(o: &Ordinal) -> Result<Level, TopologyError> {
        match o.as_u64() {
            Some(0) => Err(TopologyError::UnsupportedLevel(o.to_string())),
            Some(n) => Ok(Level::Finite(n)),
            None if *o == Ordinal::omega() => Ok(Level::Omega),
            None => Err(TopologyError::UnsupportedLevel(o.to_string())),
        }
    }

    /// True iff the finite number `j` is below this level.
    pub fn exceeds(self, j: u64) -> bool {
        match self {
            Level::Finite(n) => j < n,
            Level::Omega => true,
        }
    }
}

impl Ord for Level {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Level::Finite(a), Level::Finite(b)) => a.cmp(b),
            (Level::Finite(_), Level::Omega) => Ordering::Less,
            (Level::Omega, Level::Finite(_)) => Ordering::Greater,
            (Level::Omega, Level::Omega) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Level {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(n) => write!(f, "{n}"),
            Level::Omega => f.write_str("w"),
        }
    }
}

impl FromStr for Level {
    type Err = TopologyError;

    fn from_str(s: &str) -> Result<Level, TopologyError> {
        let s = s.trim();
        if s == "w" {
            return Ok(Level::Omega);
        }
        match s.parse::<u64>() {
            Ok(0) => Err(TopologyError::UnsupportedLevel(s.to_string())),
            Ok(n) => Ok(Level::Finite(n)),
            Err(_) => Err(TopologyError::Syntax {
                position: 0,
                message: format!("expected a positive number or 'w', found '{s}'"),
            }),
        }
    }
}

/// Selects `τ_{i,α}`: `1 ≤ i ≤ α ≤ ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TopologySpec {
    alpha: Level,
    i: Level,
}

impl TopologySpec {
    pub fn new(i: Level, alpha: Level) -> Result<Self, TopologyError> {
        if matches!(alpha, Level::Finite(0)) {
            return Err(TopologyError::UnsupportedLevel("0".into()));
        }
        if matches!(i, Level::Finite(0)) {
            return Err(TopologyError::InvalidSpec(
                "the index i must be positive".into(),
            ));
        }
        if i > alpha {
            return Err(TopologyError::InvalidSpec(format!(
                "i = {i} exceeds alpha = {alpha}"
            )));
        }
        Ok(TopologySpec { alpha, i })
    }

    pub fn finite(i: u64, alpha: u64) -> Result<Self, TopologyError> {
        Self::new(Level::Finite(i), Level::Finite(alpha))
    }

    pub fn alpha(&self) -> Level {
        self.alpha
    }

    pub fn i(&self) -> Level {
        self.i
    }

    /// The ordinal `α` indexing the carrier `B_α`.
    pub fn carrier_level(&self) -> Ordinal {
        self.alpha.to_ordinal()
    }

    /// True iff `(ω^j, ω^j)` is a limit point: `1 ≤ j < i`.
    pub fn is_limit_level(&self, j: u64) -> bool {
        j >= 1 && self.i.exceeds(j)
    }

    pub(crate) fn check_point(&self, x: &BAlphaElement) -> Result<(), TopologyError> {
        let expected = self.carrier_level();
        if *x.level() != expected {
            return Err(TopologyError::LevelMismatch {
                expected: expected.to_string(),
                got: x.level().to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for TopologySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau(i={}, alpha={})", self.i, self.alpha)
    }
}

/// Local type of a point in `τ_{i,α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointClass {
    Isolated,
    Limit(u64),
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::Isolated => f.write_str("isolated"),
            PointClass::Limit(j) => write!(f, "limit(j={j})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        assert!(TopologySpec::finite(2, 2).is_ok());
        assert!(TopologySpec::finite(3, 2).is_err());
        assert!(TopologySpec::finite(0, 2).is_err());
        assert!(TopologySpec::new(Level::Omega, Level::Finite(5)).is_err());
        assert!(TopologySpec::new(Level::Omega, Level::Omega).is_ok());
        assert!(TopologySpec::new(Level::Finite(7), Level::Omega).is_ok());
    }

    #[test]
    fn levels() {
        assert_eq!("w".parse::<Level>().unwrap(), Level::Omega);
        assert_eq!("4".parse::<Level>().unwrap(), Level::Finite(4));
        assert!("0".parse::<Level>().is_err());
        assert!("w+1".parse::<Level>().is_err());
        assert!(Level::Finite(1_000_000) < Level::Omega);
        assert_eq!(
            Level::from_ordinal(&Ordinal::omega()).unwrap(),
            Level::Omega
        );
        assert!(Level::from_ordinal(&(Ordinal::omega() + Ordinal::one())).is_err());
    }
}
