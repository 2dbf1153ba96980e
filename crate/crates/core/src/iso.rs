//! The isomorphism between `B_{α+1}` and the Bruck extension of `B_α`.
//!
//! `(a, b) ↦ (n, (a*, b*), m)` where `a = n·ω^α + a*` and `b = m·ω^α + b*`
//! are the modified normal forms of the two coordinates.

use std::fmt;

use thiserror::Error;

use crate::ordinal::{modified_split, Ordinal, OrdinalError};
use crate::semigroup::{BAlphaElement, BruckElement, SemigroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error("element lives in B_({got}) but B_({expected}) was required")]
    LevelMismatch { expected: String, got: String },
    #[error("the adjoined zero has no preimage")]
    ZeroNotInImage,
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
    #[error(transparent)]
    Ordinal(#[from] OrdinalError),
}

/// Which branch of the Bruck product governs `f(x)·f(y)`, where `m` is the
/// head of `x.right`, `k` the head of `y.left`, and `b*`, `c*` their tails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// `k > m`
    LeftDominates,
    /// `k < m`
    RightDominates,
    /// `k = m` and `c* > b*`
    EqualHeadsTailGreater,
    /// `k = m` and `c* ≤ b*`
    EqualHeadsTailLeq,
}

impl CaseTag {
    pub const ALL: [CaseTag; 4] = [
        CaseTag::LeftDominates,
        CaseTag::RightDominates,
        CaseTag::EqualHeadsTailGreater,
        CaseTag::EqualHeadsTailLeq,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseTag::LeftDominates => "LeftDominates",
            CaseTag::RightDominates => "RightDominates",
            CaseTag::EqualHeadsTailGreater => "EqualHeadsTailGreater",
            CaseTag::EqualHeadsTailLeq => "EqualHeadsTailLeq",
        })
    }
}

fn successor(alpha: &Ordinal) -> Result<Ordinal, IsoError> {
    Ok(alpha.checked_add(&Ordinal::one())?)
}

fn check_upper_level(alpha: &Ordinal, x: &BAlphaElement) -> Result<(), IsoError> {
    let expected = successor(alpha)?;
    if *x.level() != expected {
        return Err(IsoError::LevelMismatch {
            expected: expected.to_string(),
            got: x.level().to_string(),
        });
    }
    Ok(())
}

/// Maps an element of `B_{α+1}` into the Bruck extension over `B_α`.
pub fn to_bruck(
    alpha: &Ordinal,
    x: &BAlphaElement,
) -> Result<BruckElement<BAlphaElement>, IsoError> {
    check_upper_level(alpha, x)?;
    let a = modified_split(x.left(), alpha)?;
    let b = modified_split(x.right(), alpha)?;
    let payload = BAlphaElement::new(alpha, a.tail, b.tail)?;
    Ok(BruckElement::triple(a.head_coeff, payload, b.head_coeff))
}

/// Inverse of [`to_bruck`].
pub fn from_bruck(
    alpha: &Ordinal,
    y: &BruckElement<BAlphaElement>,
) -> Result<BAlphaElement, IsoError> {
    let BruckElement::Triple { n, payload, m } = y else {
        return Err(IsoError::ZeroNotInImage);
    };
    if payload.level() != alpha {
        return Err(IsoError::LevelMismatch {
            expected: alpha.to_string(),
            got: payload.level().to_string(),
        });
    }
    let left = Ordinal::monomial(alpha, *n).checked_add(payload.left())?;
    let right = Ordinal::monomial(alpha, *m).checked_add(payload.right())?;
    Ok(BAlphaElement::new(&successor(alpha)?, left, right)?)
}

/// Tags the Bruck-product branch used by `to_bruck(x)·to_bruck(y)`.
pub fn classify_case(
    x: &BAlphaElement,
    y: &BAlphaElement,
    alpha: &Ordinal,
) -> Result<CaseTag, IsoError> {
    check_upper_level(alpha, x)?;
    check_upper_level(alpha, y)?;
    let b = modified_split(x.right(), alpha)?;
    let c = modified_split(y.left(), alpha)?;
    Ok(match c.head_coeff.cmp(&b.head_coeff) {
        std::cmp::Ordering::Greater => CaseTag::LeftDominates,
        std::cmp::Ordering::Less => CaseTag::RightDominates,
        std::cmp::Ordering::Equal if c.tail > b.tail => CaseTag::EqualHeadsTailGreater,
        std::cmp::Ordering::Equal => CaseTag::EqualHeadsTailLeq,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{bruck_mul, parse_balpha_element, parse_bruck_element};

    fn el(level: u64, text: &str) -> BAlphaElement {
        parse_balpha_element(text, &Ordinal::nat(level)).unwrap()
    }

    fn br(level: u64, text: &str) -> BruckElement<BAlphaElement> {
        parse_bruck_element(text, &Ordinal::nat(level)).unwrap()
    }

    #[test]
    fn to_bruck_examples() {
        let one = Ordinal::one();
        assert_eq!(
            to_bruck(&one, &el(2, "(w*2 + 3, w)")).unwrap(),
            br(1, "[2, (3, 0), 1]")
        );
        assert_eq!(
            to_bruck(&one, &el(2, "(0, 0)")).unwrap(),
            br(1, "[0, (0, 0), 0]")
        );
        let two = Ordinal::nat(2);
        assert_eq!(
            to_bruck(&two, &el(3, "(w^2*3 + w, w*2 + 5)")).unwrap(),
            br(2, "[3, (w, w*2 + 5), 0]")
        );
    }

    #[test]
    fn from_bruck_examples() {
        let one = Ordinal::one();
        assert_eq!(
            from_bruck(&one, &br(1, "[2, (3, 0), 1]")).unwrap(),
            el(2, "(w*2 + 3, w)")
        );
        assert_eq!(
            from_bruck(&one, &br(1, "[0, (0, 0), 0]")).unwrap(),
            el(2, "(0, 0)")
        );
        let two = Ordinal::nat(2);
        assert_eq!(
            from_bruck(&two, &br(2, "[1, (w*4 + 1, 0), 2]")).unwrap(),
            el(3, "(w^2 + w*4 + 1, w^2*2)")
        );
        assert_eq!(
            from_bruck(&two, &BruckElement::Zero),
            Err(IsoError::ZeroNotInImage)
        );
    }

    #[test]
    fn level_checks() {
        let one = Ordinal::one();
        assert!(matches!(
            to_bruck(&one, &el(3, "(0, 0)")),
            Err(IsoError::LevelMismatch { .. })
        ));
        assert!(matches!(
            from_bruck(&one, &br(2, "[0, (w, 0), 0]")),
            Err(IsoError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn case_examples() {
        let one = Ordinal::one();
        let case = |x: &str, y: &str| classify_case(&el(2, x), &el(2, y), &one).unwrap();
        assert_eq!(case("(0, w)", "(w*2, 0)"), CaseTag::LeftDominates);
        assert_eq!(case("(0, w*2)", "(w, 0)"), CaseTag::RightDominates);
        assert_eq!(
            case("(0, w + 1)", "(w + 3, 0)"),
            CaseTag::EqualHeadsTailGreater
        );
        assert_eq!(case("(0, w + 3)", "(w + 3, 0)"), CaseTag::EqualHeadsTailLeq);
    }

    #[test]
    fn level_two_product_through_bruck() {
        // (ω,1)·(2,ω) in B_2, computed on the Bruck side.
        let one = Ordinal::one();
        let x = to_bruck(&one, &el(2, "(w, 1)")).unwrap();
        let y = to_bruck(&one, &el(2, "(2, w)")).unwrap();
        let prod = bruck_mul(&x, &y, |s, t| s.mul(t)).unwrap();
        assert_eq!(prod, br(1, "[1, (1, 0), 1]"));
        assert_eq!(from_bruck(&one, &prod).unwrap(), el(2, "(w + 1, w)"));
    }
}
