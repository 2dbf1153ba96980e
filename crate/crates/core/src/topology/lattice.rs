//! Box cofinality at limit points and the inclusion order on the family.

use std::fmt;

use super::{Level, TopologyError, TopologySpec};
use crate::ordinal::Ordinal;
use crate::semigroup::{BAlphaElement, BoxIndex};

/// The finite square `{(p, q) : p, q ≤ bound}` of box indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxSquare {
    pub bound: u64,
}

impl BoxSquare {
    pub fn contains(&self, b: BoxIndex) -> bool {
        b.n <= self.bound && b.m <= self.bound
    }

    pub fn iter(&self) -> impl Iterator<Item = BoxIndex> + '_ {
        (0..=self.bound).flat_map(move |n| (0..=self.bound).map(move |m| BoxIndex { n, m }))
    }
}

impl fmt::Display for BoxSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", b.n, b.m)?;
        }
        f.write_str("}")
    }
}

/// Boxes `[p, q]` of the local model at `(ω^j, ω^j)` that the `n`-th basic
/// neighborhood fails to contain; all other boxes lie inside it entirely.
pub fn uncovered_boxes(spec: &TopologySpec, j: u64, n: u64) -> Result<BoxSquare, TopologyError> {
    if !spec.is_limit_level(j) {
        return Err(TopologyError::NotALimitLevel {
            j,
            i: spec.i().to_string(),
        });
    }
    Ok(BoxSquare { bound: n })
}

/// Position of one topology relative to another in the inclusion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refinement {
    /// The first topology has strictly more open sets. The certificate is
    /// isolated in the first and a limit point in the second.
    StrictlyFiner {
        certificate: BAlphaElement,
    },
    Equal,
    /// The first topology has strictly fewer open sets. The certificate is
    /// a limit point in the first and isolated in the second.
    StrictlyCoarser {
        certificate: BAlphaElement,
    },
    /// The topologies live on different carriers.
    IncomparableLevels,
}

impl fmt::Display for Refinement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refinement::StrictlyFiner { certificate } => write!(f, "strictly-finer {certificate}"),
            Refinement::Equal => f.write_str("equal"),
            Refinement::StrictlyCoarser { certificate } => {
                write!(f, "strictly-coarser {certificate}")
            }
            Refinement::IncomparableLevels => f.write_str("incomparable-levels"),
        }
    }
}

fn diagonal_power(alpha: Level, k: u64) -> BAlphaElement {
    let w = Ordinal::finite_monomial(k, 1);
    BAlphaElement::new(&alpha.to_ordinal(), w.clone(), w).expect("k < alpha")
}

pub fn topology_finer(spec1: &TopologySpec, spec2: &TopologySpec) -> Refinement {
    if spec1.alpha() != spec2.alpha() {
        return Refinement::IncomparableLevels;
    }
    let (i1, i2) = (spec1.i(), spec2.i());
    match i1.cmp(&i2) {
        std::cmp::Ordering::Equal => Refinement::Equal,
        std::cmp::Ordering::Less => {
            let Level::Finite(k) = i1 else {
                unreachable!("i1 < i2 forces a finite i1")
            };
            Refinement::StrictlyFiner {
                certificate: diagonal_power(spec1.alpha(), k),
            }
        }
        std::cmp::Ordering::Greater => {
            let Level::Finite(k) = i2 else {
                unreachable!("i2 < i1 forces a finite i2")
            };
            Refinement::StrictlyCoarser {
                certificate: diagonal_power(spec1.alpha(), k),
            }
        }
    }
}

/// The topologies `τ_{1,α}, τ_{2,α}, …`, finest first, with `τ_{ω,ω}` as the
/// final (coarsest) member when `α = ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopologyFamily {
    alpha: Level,
}

impl TopologyFamily {
    pub fn alpha(&self) -> Level {
        self.alpha
    }

    /// Members with a finite index, in order. Infinite when `α = ω`.
    pub fn finite_members(&self) -> impl Iterator<Item = TopologySpec> {
        let alpha = self.alpha;
        let end = match alpha {
            Level::Finite(n) => n,
            Level::Omega => u64::MAX,
        };
        (1..=end).map(move |i| TopologySpec::new(Level::Finite(i), alpha).expect("1 <= i <= alpha"))
    }

    /// `τ_{ω,ω}` when `α = ω`.
    pub fn limit_member(&self) -> Option<TopologySpec> {
        (self.alpha == Level::Omega)
            .then(|| TopologySpec::new(Level::Omega, Level::Omega).expect("omega <= omega"))
    }

    /// The first `cap` finite-index members followed by the limit member.
    pub fn capped(&self, cap: u64) -> Vec<TopologySpec> {
        self.finite_members()
            .take(cap as usize)
            .chain(self.limit_member())
            .collect()
    }
}

pub fn enumerate_topologies(alpha: &Ordinal) -> Result<TopologyFamily, TopologyError> {
    Ok(TopologyFamily {
        alpha: Level::from_ordinal(alpha)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::{classify_point, PointClass};

    #[test]
    fn boxes() {
        let s = TopologySpec::finite(2, 2).unwrap();
        assert_eq!(
            uncovered_boxes(&s, 1, 0)
                .unwrap()
                .iter()
                .collect::<Vec<_>>(),
            vec![BoxIndex { n: 0, m: 0 }]
        );
        assert_eq!(
            uncovered_boxes(&s, 1, 1).unwrap().to_string(),
            "{(0, 0), (0, 1), (1, 0), (1, 1)}"
        );
        assert!(matches!(
            uncovered_boxes(&s, 2, 1),
            Err(TopologyError::NotALimitLevel { .. })
        ));
        assert!(matches!(
            uncovered_boxes(&s, 0, 1),
            Err(TopologyError::NotALimitLevel { .. })
        ));
    }

    #[test]
    fn refinement_examples() {
        let t12 = TopologySpec::finite(1, 2).unwrap();
        let t22 = TopologySpec::finite(2, 2).unwrap();
        let Refinement::StrictlyFiner { certificate } = topology_finer(&t12, &t22) else {
            panic!()
        };
        assert_eq!(certificate.to_string(), "(w, w)");
        assert_eq!(
            classify_point(&t12, &certificate).unwrap(),
            PointClass::Isolated
        );
        assert_eq!(
            classify_point(&t22, &certificate).unwrap(),
            PointClass::Limit(1)
        );
        assert_eq!(topology_finer(&t22, &t22), Refinement::Equal);
        assert!(matches!(
            topology_finer(&t22, &t12),
            Refinement::StrictlyCoarser { .. }
        ));

        let t2w = TopologySpec::new(Level::Finite(2), Level::Omega).unwrap();
        let tww = TopologySpec::new(Level::Omega, Level::Omega).unwrap();
        let Refinement::StrictlyFiner { certificate } = topology_finer(&t2w, &tww) else {
            panic!()
        };
        assert_eq!(certificate.to_string(), "(w^2, w^2)");
        assert_eq!(
            topology_finer(&t22, &TopologySpec::finite(2, 3).unwrap()),
            Refinement::IncomparableLevels
        );
    }

    #[test]
    fn families() {
        let f1 = enumerate_topologies(&Ordinal::one()).unwrap();
        assert_eq!(f1.capped(100), vec![TopologySpec::finite(1, 1).unwrap()]);
        let f3 = enumerate_topologies(&Ordinal::nat(3)).unwrap();
        let ids: Vec<_> = f3.capped(100).iter().map(|s| s.i()).collect();
        assert_eq!(
            ids,
            vec![Level::Finite(1), Level::Finite(2), Level::Finite(3)]
        );
        let fw = enumerate_topologies(&Ordinal::omega()).unwrap();
        let members = fw.capped(12);
        assert_eq!(members.len(), 13);
        assert_eq!(members.last().unwrap().i(), Level::Omega);
        assert_eq!(
            fw.finite_members().nth(1000).unwrap().i(),
            Level::Finite(1001)
        );
        assert!(enumerate_topologies(&Ordinal::zero()).is_err());
        assert!(enumerate_topologies(&(Ordinal::omega() + Ordinal::one())).is_err());
    }
}
