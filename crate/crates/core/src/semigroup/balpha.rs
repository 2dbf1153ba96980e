use std::fmt;
use std::sync::Arc;

use super::SemigroupError;
use crate::ordinal::Ordinal;

/// An element `(left, right)` of the α-bicyclic monoid `ω^α × ω^α`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BAlphaElement {
    level: Arc<Ordinal>,
    left: Ordinal,
    right: Ordinal,
}

impl BAlphaElement {
    /// Fails with `OutOfRange` unless both coordinates are below `ω^level`.
    pub fn new(level: &Ordinal, left: Ordinal, right: Ordinal) -> Result<Self, SemigroupError> {
        Self::with_shared_level(Arc::new(level.clone()), left, right)
    }

    pub(crate) fn with_shared_level(
        level: Arc<Ordinal>,
        left: Ordinal,
        right: Ordinal,
    ) -> Result<Self, SemigroupError> {
        for c in [&left, &right] {
            if !c.is_below_omega_pow(&level) {
                return Err(SemigroupError::OutOfRange {
                    coordinate: c.to_string(),
                    bound: crate::ordinal::omega_pow(&level).to_string(),
                });
            }
        }
        Ok(BAlphaElement { level, left, right })
    }

    /// Shorthand for finite coordinates at a finite level.
    pub fn finite(level: u64, left: u64, right: u64) -> Result<Self, SemigroupError> {
        Self::new(
            &Ordinal::nat(level),
            Ordinal::nat(left),
            Ordinal::nat(right),
        )
    }

    /// Another element of the same monoid.
    pub fn sibling(&self, left: Ordinal, right: Ordinal) -> Result<Self, SemigroupError> {
        Self::with_shared_level(self.level.clone(), left, right)
    }

    pub fn identity(level: &Ordinal) -> Self {
        BAlphaElement {
            level: Arc::new(level.clone()),
            left: Ordinal::zero(),
            right: Ordinal::zero(),
        }
    }

    pub fn level(&self) -> &Ordinal {
        &self.level
    }

    pub fn left(&self) -> &Ordinal {
        &self.left
    }

    pub fn right(&self) -> &Ordinal {
        &self.right
    }

    pub fn same_level(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.level, &other.level) || self.level == other.level
    }

    pub fn check_level(&self, other: &Self) -> Result<(), SemigroupError> {
        if self.same_level(other) {
            Ok(())
        } else {
            Err(SemigroupError::LevelMismatch {
                left: self.level.to_string(),
                right: other.level.to_string(),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SemigroupError> {
        self.check_level(other)?;
        let (a, b, c, d) = (&self.left, &self.right, &other.left, &other.right);
        let (left, right) = if b <= c {
            (a.checked_add(&c.sub_left(b)?)?, d.clone())
        } else {
            (a.clone(), d.checked_add(&b.sub_left(c)?)?)
        };
        Ok(BAlphaElement {
            level: self.level.clone(),
            left,
            right,
        })
    }

    /// `(a, b) ↦ (b, a)`.
    pub fn inverse(&self) -> Self {
        BAlphaElement {
            level: self.level.clone(),
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }

    /// `self^n`, with `self^0` the identity.
    pub fn pow(&self, n: u64) -> Result<Self, SemigroupError> {
        let mut acc = BAlphaElement {
            level: self.level.clone(),
            left: Ordinal::zero(),
            right: Ordinal::zero(),
        };
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_idempotent(&self) -> bool {
        self.left == self.right
    }
}

impl fmt::Display for BAlphaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

impl fmt::Debug for BAlphaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}]{}", self.level, self)
    }
}

pub fn balpha_mul(x: &BAlphaElement, y: &BAlphaElement) -> Result<BAlphaElement, SemigroupError> {
    x.mul(y)
}

pub fn balpha_inverse(x: &BAlphaElement) -> BAlphaElement {
    x.inverse()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::parse_balpha_element;

    fn el(level: u64, text: &str) -> BAlphaElement {
        parse_balpha_element(text, &Ordinal::nat(level)).unwrap()
    }

    #[test]
    fn bicyclic_examples() {
        let x = BAlphaElement::finite(1, 2, 3).unwrap();
        let y = BAlphaElement::finite(1, 1, 4).unwrap();
        assert_eq!(x.mul(&y).unwrap(), BAlphaElement::finite(1, 2, 6).unwrap());
        let x = BAlphaElement::finite(1, 3, 2).unwrap();
        let y = BAlphaElement::finite(1, 2, 5).unwrap();
        assert_eq!(x.mul(&y).unwrap(), BAlphaElement::finite(1, 3, 5).unwrap());
    }

    #[test]
    fn level_two_examples() {
        assert_eq!(
            el(2, "(w,1)").mul(&el(2, "(2,w)")).unwrap(),
            el(2, "(w + 1, w)")
        );
        let c = el(2, "(w^1*4 + 3, w*9)");
        assert_eq!(
            BAlphaElement::identity(&Ordinal::nat(2)).mul(&c).unwrap(),
            c
        );
        assert_eq!(
            c.mul(&BAlphaElement::identity(&Ordinal::nat(2))).unwrap(),
            c
        );
    }

    #[test]
    fn inverse_examples() {
        let x = BAlphaElement::finite(1, 2, 3).unwrap();
        assert_eq!(x.inverse(), BAlphaElement::finite(1, 3, 2).unwrap());
        let e = el(2, "(w + 1, w + 1)");
        assert_eq!(e.inverse(), e);
        assert_eq!(x.mul(&x.inverse()).unwrap().mul(&x).unwrap(), x);
    }

    #[test]
    fn level_mismatch_and_range() {
        let x = BAlphaElement::finite(1, 2, 3).unwrap();
        let y = BAlphaElement::finite(2, 2, 3).unwrap();
        assert!(matches!(
            x.mul(&y),
            Err(SemigroupError::LevelMismatch { .. })
        ));
        assert!(matches!(
            BAlphaElement::new(&Ordinal::nat(1), Ordinal::omega(), Ordinal::zero()),
            Err(SemigroupError::OutOfRange { .. })
        ));
        // B_0 is the trivial monoid.
        let z = BAlphaElement::identity(&Ordinal::zero());
        assert_eq!(z.mul(&z).unwrap(), z);
        assert!(BAlphaElement::finite(0, 1, 0).is_err());
    }

    #[test]
    fn powers() {
        let x = el(2, "(w, 1)");
        assert_eq!(x.pow(0).unwrap(), BAlphaElement::identity(&Ordinal::nat(2)));
        assert_eq!(x.pow(1).unwrap(), x);
        let mut acc = BAlphaElement::identity(&Ordinal::nat(2));
        for k in 0..9 {
            assert_eq!(x.pow(k).unwrap(), acc);
            acc = acc.mul(&x).unwrap();
        }
    }
}
