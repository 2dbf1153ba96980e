//! Ordinals below epsilon-zero in hereditary Cantor normal form.
//!
//! An [`Ordinal`] is a finite sum `c_1·ω^e_1 + … + c_k·ω^e_k` with strictly
//! decreasing exponents and positive coefficients, where each exponent is
//! itself an ordinal in the same form. The representation is canonical, so
//! structural equality coincides with ordinal equality.

pub(crate) mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

pub use parse::parse_ordinal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrdinalError {
    #[error("subtrahend is larger than the minuend")]
    SubtrahendTooLarge,
    #[error("ordinal is out of range")]
    OutOfRange,
    #[error("operation is undefined on the zero ordinal")]
    ZeroOrdinal,
    #[error("coefficient overflow")]
    Overflow,
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// Exponent of a single CNF term. Finite exponents are stored inline; an
/// `Infinite` exponent always holds an ordinal `≥ ω`.
#[derive(Clone, PartialEq, Eq, Hash)]
enum Exponent {
    Finite(u64),
    Infinite(Arc<Ordinal>),
}

impl Exponent {
    fn from_ordinal(e: &Ordinal) -> Exponent {
        match e.as_u64() {
            Some(n) => Exponent::Finite(n),
            None => Exponent::Infinite(Arc::new(e.clone())),
        }
    }

    fn to_ordinal(&self) -> Ordinal {
        match self {
            Exponent::Finite(n) => Ordinal::nat(*n),
            Exponent::Infinite(o) => (**o).clone(),
        }
    }

    fn is_canonical(&self) -> bool {
        match self {
            Exponent::Finite(_) => true,
            Exponent::Infinite(o) => o.is_canonical() && !o.is_finite(),
        }
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Exponent::Finite(a), Exponent::Finite(b)) => a.cmp(b),
            (Exponent::Finite(_), Exponent::Infinite(_)) => Ordering::Less,
            (Exponent::Infinite(_), Exponent::Finite(_)) => Ordering::Greater,
            (Exponent::Infinite(a), Exponent::Infinite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct Term {
    exp: Exponent,
    coeff: u64,
}

/// An ordinal below ε₀ in Cantor normal form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<Term>,
}

/// The modified normal form `x = head_coeff·ω^α + tail` with `tail < ω^α`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModifiedSplit {
    pub head_coeff: u64,
    pub tail: Ordinal,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Ordinal {
        Ordinal::nat(1)
    }

    pub fn omega() -> Ordinal {
        Ordinal::finite_monomial(1, 1)
    }

    pub fn nat(n: u64) -> Ordinal {
        Ordinal::finite_monomial(0, n)
    }

    /// `coeff·ω^exp` for a finite exponent.
    pub fn finite_monomial(exp: u64, coeff: u64) -> Ordinal {
        if coeff == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exp: Exponent::Finite(exp),
                coeff,
            }],
        }
    }

    /// `coeff·ω^exp`.
    pub fn monomial(exp: &Ordinal, coeff: u64) -> Ordinal {
        if coeff == 0 {
            return Ordinal::zero();
        }
        Ordinal {
            terms: vec![Term {
                exp: Exponent::from_ordinal(exp),
                coeff,
            }],
        }
    }

    /// Builds an ordinal from `(exponent, coefficient)` pairs that must already
    /// be in canonical order. Returns `None` if they are not.
    pub fn from_terms<I>(terms: I) -> Option<Ordinal>
    where
        I: IntoIterator<Item = (Ordinal, u64)>,
    {
        let ord = Ordinal {
            terms: terms
                .into_iter()
                .map(|(e, c)| Term {
                    exp: Exponent::from_ordinal(&e),
                    coeff: c,
                })
                .collect(),
        };
        ord.is_canonical().then_some(ord)
    }

    /// Builds `Σ coeffs[k]·ω^k` from a little-endian coefficient vector.
    pub fn from_finite_coeffs(coeffs: &[u64]) -> Ordinal {
        let terms = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c > 0)
            .map(|(e, &c)| Term {
                exp: Exponent::Finite(e as u64),
                coeff: c,
            })
            .collect();
        Ordinal { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for natural numbers (including zero).
    pub fn is_finite(&self) -> bool {
        self.as_u64().is_some()
    }

    pub fn as_u64(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [Term {
                exp: Exponent::Finite(0),
                coeff,
            }] => Some(*coeff),
            _ => None,
        }
    }

    /// Number of CNF terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// The CNF terms as `(exponent, coefficient)` pairs, highest exponent first.
    pub fn terms(&self) -> impl Iterator<Item = (Ordinal, u64)> + '_ {
        self.terms.iter().map(|t| (t.exp.to_ordinal(), t.coeff))
    }

    pub fn leading_exponent(&self) -> Option<Ordinal> {
        self.terms.first().map(|t| t.exp.to_ordinal())
    }

    /// Exponent of the final term when it is finite.
    pub fn last_finite_exponent(&self) -> Option<u64> {
        match self.terms.last() {
            Some(Term {
                exp: Exponent::Finite(e),
                ..
            }) => Some(*e),
            _ => None,
        }
    }

    /// Checks every structural invariant, recursively.
    pub fn is_canonical(&self) -> bool {
        self.terms
            .iter()
            .all(|t| t.coeff >= 1 && t.exp.is_canonical())
            && self.terms.windows(2).all(|w| w[0].exp > w[1].exp)
    }

    /// `self + rhs`, reporting coefficient overflow.
    pub fn checked_add(&self, rhs: &Ordinal) -> Result<Ordinal, OrdinalError> {
        let Some(first) = rhs.terms.first() else {
            return Ok(self.clone());
        };
        let mut terms: Vec<Term> = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut merged = None;
        for t in &self.terms {
            match t.exp.cmp(&first.exp) {
                Ordering::Greater => terms.push(t.clone()),
                Ordering::Equal => {
                    merged = Some(
                        t.coeff
                            .checked_add(first.coeff)
                            .ok_or(OrdinalError::Overflow)?,
                    );
                    break;
                }
                Ordering::Less => break,
            }
        }
        terms.push(Term {
            exp: first.exp.clone(),
            coeff: merged.unwrap_or(first.coeff),
        });
        terms.extend(rhs.terms[1..].iter().cloned());
        Ok(Ordinal { terms })
    }

    /// The unique `c` with `sub + c = self`.
    pub fn sub_left(&self, sub: &Ordinal) -> Result<Ordinal, OrdinalError> {
        for (i, t) in self.terms.iter().enumerate() {
            let Some(s) = sub.terms.get(i) else {
                return Ok(Ordinal {
                    terms: self.terms[i..].to_vec(),
                });
            };
            match t.exp.cmp(&s.exp) {
                Ordering::Greater => {
                    return Ok(Ordinal {
                        terms: self.terms[i..].to_vec(),
                    })
                }
                Ordering::Less => return Err(OrdinalError::SubtrahendTooLarge),
                Ordering::Equal => match t.coeff.cmp(&s.coeff) {
                    Ordering::Greater => {
                        let mut terms = Vec::with_capacity(self.terms.len() - i);
                        terms.push(Term {
                            exp: t.exp.clone(),
                            coeff: t.coeff - s.coeff,
                        });
                        terms.extend(self.terms[i + 1..].iter().cloned());
                        return Ok(Ordinal { terms });
                    }
                    Ordering::Less => return Err(OrdinalError::SubtrahendTooLarge),
                    Ordering::Equal => {}
                },
            }
        }
        if sub.terms.len() > self.terms.len() {
            Err(OrdinalError::SubtrahendTooLarge)
        } else {
            Ok(Ordinal::zero())
        }
    }

    /// True iff `self < ω^exp`.
    pub fn is_below_omega_pow(&self, exp: &Ordinal) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => t.exp < Exponent::from_ordinal(exp),
        }
    }

    /// True iff `self < ω^exp` for a finite exponent.
    pub fn is_below_omega_pow_finite(&self, exp: u64) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => t.exp < Exponent::Finite(exp),
        }
    }

    /// Coefficient of `ω^exp` in the CNF (zero when absent).
    pub fn coeff_at_finite(&self, exp: u64) -> u64 {
        let target = Exponent::Finite(exp);
        self.terms
            .iter()
            .find(|t| t.exp == target)
            .map_or(0, |t| t.coeff)
    }

    /// Drops every term whose exponent is below the finite bound `exp`.
    pub fn truncate_below_finite(&self, exp: u64) -> Ordinal {
        let bound = Exponent::Finite(exp);
        Ordinal {
            terms: self
                .terms
                .iter()
                .take_while(|t| t.exp >= bound)
                .cloned()
                .collect(),
        }
    }

    /// Little-endian coefficients when every exponent is finite.
    pub fn finite_coeffs(&self) -> Option<Vec<u64>> {
        let top = match self.terms.first() {
            None => return Some(Vec::new()),
            Some(Term {
                exp: Exponent::Finite(e),
                ..
            }) => *e,
            Some(_) => return None,
        };
        let mut out = vec![0; top as usize + 1];
        for t in &self.terms {
            if let Exponent::Finite(e) = t.exp {
                out[e as usize] = t.coeff;
            }
        }
        Some(out)
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = a.exp.cmp(&b.exp).then(a.coeff.cmp(&b.coeff));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Panics on coefficient overflow; use [`Ordinal::checked_add`] to handle it.
impl Add for &Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: &Ordinal) -> Ordinal {
        self.checked_add(rhs).expect("ordinal coefficient overflow")
    }
}

impl Add for Ordinal {
    type Output = Ordinal;

    fn add(self, rhs: Ordinal) -> Ordinal {
        &self + &rhs
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Ordinal {
        Ordinal::nat(n)
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Ordinal, OrdinalError> {
        parse_ordinal(s)
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match &t.exp {
                Exponent::Finite(0) => {
                    write!(f, "{}", t.coeff)?;
                    continue;
                }
                Exponent::Finite(1) => f.write_str("w")?,
                Exponent::Finite(e) => write!(f, "w^{e}")?,
                Exponent::Infinite(e) => write!(f, "w^({e})")?,
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

/// Total order on ordinals.
pub fn ord_compare(x: &Ordinal, y: &Ordinal) -> Ordering {
    x.cmp(y)
}

pub fn ord_add(x: &Ordinal, y: &Ordinal) -> Result<Ordinal, OrdinalError> {
    x.checked_add(y)
}

/// Left subtraction: the unique `c` with `b + c = a`; `a = b` gives zero.
pub fn ord_sub_left(a: &Ordinal, b: &Ordinal) -> Result<Ordinal, OrdinalError> {
    a.sub_left(b)
}

pub fn omega_pow(e: &Ordinal) -> Ordinal {
    Ordinal::monomial(e, 1)
}

/// Splits `x < ω^(α+1)` as `n·ω^α + x*` with `x* < ω^α`.
pub fn modified_split(x: &Ordinal, alpha: &Ordinal) -> Result<ModifiedSplit, OrdinalError> {
    let alpha_exp = Exponent::from_ordinal(alpha);
    match x.terms.first() {
        None => Ok(ModifiedSplit {
            head_coeff: 0,
            tail: Ordinal::zero(),
        }),
        Some(t) => match t.exp.cmp(&alpha_exp) {
            Ordering::Greater => Err(OrdinalError::OutOfRange),
            Ordering::Equal => Ok(ModifiedSplit {
                head_coeff: t.coeff,
                tail: Ordinal {
                    terms: x.terms[1..].to_vec(),
                },
            }),
            Ordering::Less => Ok(ModifiedSplit {
                head_coeff: 0,
                tail: x.clone(),
            }),
        },
    }
}

/// The final CNF term, or `None` for zero.
pub fn last_term(x: &Ordinal) -> Option<(Ordinal, u64)> {
    x.terms.last().map(|t| (t.exp.to_ordinal(), t.coeff))
}

/// Reduces the last coefficient by one, dropping the term when it reaches zero.
pub fn decrement_last(x: &Ordinal) -> Result<Ordinal, OrdinalError> {
    let mut terms = x.terms.clone();
    let last = terms.last_mut().ok_or(OrdinalError::ZeroOrdinal)?;
    if last.coeff == 1 {
        terms.pop();
    } else {
        last.coeff -= 1;
    }
    Ok(Ordinal { terms })
}

pub fn format_ordinal(x: &Ordinal) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        let x = o("w^2*3 + 5");
        assert_eq!(ord_compare(&x, &x), Ordering::Equal);
        assert_eq!(ord_compare(&o("w + 5"), &o("w*2")), Ordering::Less);
        assert_eq!(ord_compare(&o("w^(w)"), &o("w^5*9")), Ordering::Greater);
        assert_eq!(
            ord_compare(&o("w^(w + 1)"), &o("w^(w)*100")),
            Ordering::Greater
        );
        assert!(o("w^10") < o("w^(w)"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(
            ord_add(&Ordinal::zero(), &o("w^2*3 + 5")).unwrap(),
            o("w^2*3 + 5")
        );
        assert_eq!(ord_add(&o("w + 1"), &o("w")).unwrap(), o("w*2"));
        assert_eq!(
            ord_add(&o("w^2*2 + w*3 + 5"), &o("w*4 + 1")).unwrap(),
            o("w^2*2 + w*7 + 1")
        );
        assert_eq!(ord_add(&o("5"), &o("w^(w)")).unwrap(), o("w^(w)"));
    }

    #[test]
    fn add_overflow_is_reported() {
        let big = Ordinal::nat(u64::MAX);
        assert_eq!(ord_add(&big, &Ordinal::one()), Err(OrdinalError::Overflow));
        assert_eq!(ord_add(&Ordinal::one(), &big), Err(OrdinalError::Overflow));
        assert_eq!(ord_add(&big, &Ordinal::omega()).unwrap(), Ordinal::omega());
    }

    #[test]
    fn sub_examples() {
        let x = o("w^3 + w*2");
        assert_eq!(ord_sub_left(&x, &x).unwrap(), Ordinal::zero());
        assert_eq!(ord_sub_left(&o("w*2 + 3"), &o("w")).unwrap(), o("w + 3"));
        assert_eq!(ord_sub_left(&o("w^2"), &o("w*5 + 2")).unwrap(), o("w^2"));
        assert_eq!(
            ord_sub_left(&o("w"), &o("w + 1")),
            Err(OrdinalError::SubtrahendTooLarge)
        );
        assert_eq!(
            ord_sub_left(&o("w*2"), &o("w*3")),
            Err(OrdinalError::SubtrahendTooLarge)
        );
        assert_eq!(ord_sub_left(&o("w*2 + 3"), &o("w*2")).unwrap(), o("3"));
    }

    #[test]
    fn omega_pow_examples() {
        assert_eq!(omega_pow(&Ordinal::zero()), Ordinal::one());
        assert_eq!(omega_pow(&Ordinal::one()), Ordinal::omega());
        assert_eq!(omega_pow(&Ordinal::omega()), o("w^(w)"));
    }

    #[test]
    fn split_examples() {
        let two = Ordinal::nat(2);
        assert_eq!(
            modified_split(&Ordinal::zero(), &two).unwrap(),
            ModifiedSplit {
                head_coeff: 0,
                tail: Ordinal::zero()
            }
        );
        assert_eq!(
            modified_split(&o("w^2*2 + w*3 + 1"), &two).unwrap(),
            ModifiedSplit {
                head_coeff: 2,
                tail: o("w*3 + 1")
            }
        );
        assert_eq!(
            modified_split(&o("w*7"), &two).unwrap(),
            ModifiedSplit {
                head_coeff: 0,
                tail: o("w*7")
            }
        );
        assert_eq!(
            modified_split(&o("w^3"), &two),
            Err(OrdinalError::OutOfRange)
        );
    }

    #[test]
    fn last_term_examples() {
        assert_eq!(last_term(&o("w^2*2 + w*3 + 5")), Some((Ordinal::zero(), 5)));
        assert_eq!(last_term(&o("w^3*4")), Some((Ordinal::nat(3), 4)));
        assert_eq!(last_term(&Ordinal::zero()), None);
    }

    #[test]
    fn decrement_examples() {
        assert_eq!(decrement_last(&o("w*3 + 4")).unwrap(), o("w*3 + 3"));
        assert_eq!(decrement_last(&o("w^2")).unwrap(), Ordinal::zero());
        assert_eq!(decrement_last(&o("w^3*2 + w^2")).unwrap(), o("w^3*2"));
        assert_eq!(
            decrement_last(&Ordinal::zero()),
            Err(OrdinalError::ZeroOrdinal)
        );
    }

    #[test]
    fn validator_rejects_noncanonical_terms() {
        assert!(Ordinal::from_terms([(Ordinal::one(), 1), (Ordinal::nat(2), 1)]).is_none());
        assert!(Ordinal::from_terms([(Ordinal::one(), 0)]).is_none());
        assert!(Ordinal::from_terms([(Ordinal::omega(), 2), (Ordinal::nat(7), 1)]).is_some());
    }

    #[test]
    fn finite_helpers() {
        let x = o("w^2*3 + w + 4");
        assert_eq!(x.finite_coeffs(), Some(vec![4, 1, 3]));
        assert_eq!(Ordinal::from_finite_coeffs(&[4, 1, 3]), x);
        assert_eq!(x.coeff_at_finite(1), 1);
        assert_eq!(x.truncate_below_finite(1), o("w^2*3 + w"));
        assert!(x.is_below_omega_pow_finite(3));
        assert!(!x.is_below_omega_pow_finite(2));
        assert_eq!(o("w^(w)").finite_coeffs(), None);
    }
}
