use std::fmt;
use std::str::FromStr;

use super::{BAlphaElement, SemigroupError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    P,
    Q,
}

/// A word over `{p, q}`; the bicyclic monoid is its quotient by `pq = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BicyclicWord(pub Vec<Letter>);

impl BicyclicWord {
    /// The normal-form word `q^a p^b` representing `(a, b)`.
    pub fn normal_form(a: usize, b: usize) -> Self {
        let mut letters = vec![Letter::Q; a];
        letters.resize(a + b, Letter::P);
        BicyclicWord(letters)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        BicyclicWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the leftmost `pq` factor.
    pub fn leftmost_redex(&self) -> Option<usize> {
        self.0.windows(2).position(|w| w == [Letter::P, Letter::Q])
    }

    /// Indices of every `pq` factor.
    pub fn redexes(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| *w == [Letter::P, Letter::Q])
            .map(|(i, _)| i)
            .collect()
    }

    /// Deletes the `pq` factor starting at `at`.
    pub fn delete_at(&self, at: usize) -> Self {
        let mut letters = self.0.clone();
        letters.drain(at..at + 2);
        BicyclicWord(letters)
    }
}

impl FromStr for BicyclicWord {
    type Err = SemigroupError;

    fn from_str(s: &str) -> Result<Self, SemigroupError> {
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'p' => Ok(Letter::P),
                'q' => Ok(Letter::Q),
                other => Err(SemigroupError::Syntax {
                    position: i,
                    message: format!("expected 'p' or 'q', found '{other}'"),
                }),
            })
            .collect::<Result<_, _>>()
            .map(BicyclicWord)
    }
}

impl fmt::Display for BicyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::P => "p",
                Letter::Q => "q",
            })?;
        }
        Ok(())
    }
}

/// Reduces `w` by deleting the leftmost `pq` until none is left and reads the
/// result `q^a p^b` as the element `(a, b)` of the bicyclic monoid.
pub fn bicyclic_reduce(w: &BicyclicWord) -> BAlphaElement {
    let mut word = w.clone();
    while let Some(at) = word.leftmost_redex() {
        word = word.delete_at(at);
    }
    let a = word.0.iter().take_while(|&&l| l == Letter::Q).count();
    let b = word.len() - a;
    debug_assert!(word.0[a..].iter().all(|&l| l == Letter::P));
    BAlphaElement::finite(1, a as u64, b as u64).expect("finite coordinates lie in B_1")
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    /// Every irreducible word reachable by deleting `pq` factors in any order.
    fn all_normal_forms(w: &BicyclicWord) -> HashSet<BicyclicWord> {
        let redexes = w.redexes();
        if redexes.is_empty() {
            return HashSet::from([w.clone()]);
        }
        redexes
            .into_iter()
            .flat_map(|at| all_normal_forms(&w.delete_at(at)))
            .collect()
    }

    #[test]
    fn reduce_examples() {
        let w: BicyclicWord = "qqpppqpppp".parse().unwrap();
        assert_eq!(bicyclic_reduce(&w), BAlphaElement::finite(1, 2, 6).unwrap());
        assert_eq!(
            bicyclic_reduce(&BicyclicWord::default()),
            BAlphaElement::finite(1, 0, 0).unwrap()
        );
        let w: BicyclicWord = "pq".parse().unwrap();
        assert_eq!(bicyclic_reduce(&w), BAlphaElement::finite(1, 0, 0).unwrap());
    }

    #[test]
    fn confluent_on_all_short_words() {
        for len in 0..=10 {
            for bits in 0u32..(1 << len) {
                let w = BicyclicWord(
                    (0..len)
                        .map(|i| {
                            if bits >> i & 1 == 1 {
                                Letter::Q
                            } else {
                                Letter::P
                            }
                        })
                        .collect(),
                );
                let forms = all_normal_forms(&w);
                assert_eq!(forms.len(), 1, "{w}");
                let e = bicyclic_reduce(&w);
                let a = e.left().as_u64().unwrap() as usize;
                let b = e.right().as_u64().unwrap() as usize;
                assert!(forms.contains(&BicyclicWord::normal_form(a, b)), "{w}");
            }
        }
    }

    #[test]
    fn rejects_foreign_letters() {
        assert!(matches!(
            "pqx".parse::<BicyclicWord>(),
            Err(SemigroupError::Syntax { position: 2, .. })
        ));
        assert_eq!("qqp".parse::<BicyclicWord>().unwrap().to_string(), "qqp");
    }
}
