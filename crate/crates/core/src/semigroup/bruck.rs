use std::cmp::Ordering;
use std::fmt;

use super::SemigroupError;

/// An element of the Bruck extension `ℕ × S × ℕ`, with an adjoined zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BruckElement<S> {
    Zero,
    Triple { n: u64, payload: S, m: u64 },
}

impl<S> BruckElement<S> {
    pub fn triple(n: u64, payload: S, m: u64) -> Self {
        BruckElement::Triple { n, payload, m }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, BruckElement::Zero)
    }

    pub fn payload(&self) -> Option<&S> {
        match self {
            BruckElement::Zero => None,
            BruckElement::Triple { payload, .. } => Some(payload),
        }
    }
}

/// Index `[n, m]` of a box `{(n, s, m) : s ∈ S}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoxIndex {
    pub n: u64,
    pub m: u64,
}

impl fmt::Display for BoxIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.n, self.m)
    }
}

/// Bruck product; `base_mul` multiplies payloads. The adjoined zero absorbs.
pub fn bruck_mul<S, F>(
    x: &BruckElement<S>,
    y: &BruckElement<S>,
    base_mul: F,
) -> Result<BruckElement<S>, SemigroupError>
where
    S: Clone,
    F: Fn(&S, &S) -> Result<S, SemigroupError>,
{
    let (
        BruckElement::Triple {
            n: a,
            payload: s,
            m: b,
        },
        BruckElement::Triple {
            n: c,
            payload: t,
            m: d,
        },
    ) = (x, y)
    else {
        return Ok(BruckElement::Zero);
    };
    let out = match b.cmp(c) {
        Ordering::Less => BruckElement::Triple {
            n: a.checked_add(c - b).ok_or(SemigroupError::Overflow)?,
            payload: t.clone(),
            m: *d,
        },
        Ordering::Greater => BruckElement::Triple {
            n: *a,
            payload: s.clone(),
            m: d.checked_add(b - c).ok_or(SemigroupError::Overflow)?,
        },
        Ordering::Equal => BruckElement::Triple {
            n: *a,
            payload: base_mul(s, t)?,
            m: *d,
        },
    };
    Ok(out)
}

pub fn box_of<S>(x: &BruckElement<S>) -> Result<BoxIndex, SemigroupError> {
    match x {
        BruckElement::Zero => Err(SemigroupError::ZeroHasNoBox),
        BruckElement::Triple { n, m, .. } => Ok(BoxIndex { n: *n, m: *m }),
    }
}

impl<S: fmt::Display> fmt::Display for BruckElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BruckElement::Zero => f.write_str("0*"),
            BruckElement::Triple { n, payload, m } => write!(f, "[{n}, {payload}, {m}]"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{bicyclic_reduce, BAlphaElement, BicyclicWord};

    fn first(x: &&'static str, _: &&'static str) -> Result<&'static str, SemigroupError> {
        Ok(*x)
    }

    #[test]
    fn off_diagonal_cases() {
        let x = BruckElement::triple(1, "s", 2);
        let y = BruckElement::triple(3, "t", 0);
        assert_eq!(
            bruck_mul(&x, &y, first).unwrap(),
            BruckElement::triple(2, "t", 0)
        );
        let x = BruckElement::triple(2, "s", 1);
        let y = BruckElement::triple(0, "t", 3);
        assert_eq!(
            bruck_mul(&x, &y, first).unwrap(),
            BruckElement::triple(2, "s", 4)
        );
    }

    #[test]
    fn diagonal_case_over_bicyclic() {
        let b1 = |a, b| BAlphaElement::finite(1, a, b).unwrap();
        let x = BruckElement::triple(1, b1(1, 0), 2);
        let y = BruckElement::triple(2, b1(0, 2), 5);
        let got = bruck_mul(&x, &y, |s, t| s.mul(t)).unwrap();
        assert_eq!(got, BruckElement::triple(1, b1(1, 2), 5));
        let word: BicyclicWord = "qpp".parse().unwrap();
        assert_eq!(bicyclic_reduce(&word), b1(1, 2));
    }

    #[test]
    fn zero_absorbs() {
        let x = BruckElement::triple(1, "s", 2);
        let z = BruckElement::Zero;
        assert_eq!(bruck_mul(&z, &x, first).unwrap(), BruckElement::Zero);
        assert_eq!(bruck_mul(&x, &z, first).unwrap(), BruckElement::Zero);
        assert_eq!(bruck_mul(&z, &z, first).unwrap(), BruckElement::Zero);
    }

    #[test]
    fn boxes() {
        assert_eq!(
            box_of(&BruckElement::triple(3, (), 5)).unwrap(),
            BoxIndex { n: 3, m: 5 }
        );
        assert_eq!(
            box_of(&BruckElement::triple(0, (), 0)).unwrap(),
            BoxIndex { n: 0, m: 0 }
        );
        assert_eq!(
            box_of::<()>(&BruckElement::Zero),
            Err(SemigroupError::ZeroHasNoBox)
        );
    }

    #[test]
    fn overflow_is_reported() {
        let x = BruckElement::triple(u64::MAX, "s", 0);
        let y = BruckElement::triple(1, "t", 0);
        assert_eq!(bruck_mul(&x, &y, first), Err(SemigroupError::Overflow));
    }
}
