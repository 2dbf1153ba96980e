use std::fmt;

use super::{PointClass, TopologyError, TopologySpec};
use crate::ordinal::{decrement_last, Ordinal};
use crate::semigroup::{parse_balpha_element, BAlphaElement, SemigroupError};

/// Finite description of a basic open set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NbhdDescriptor {
    Singleton {
        center: BAlphaElement,
    },
    Base {
        center: BAlphaElement,
        level: u64,
        threshold: u64,
    },
}

impl NbhdDescriptor {
    pub fn center(&self) -> &BAlphaElement {
        match self {
            NbhdDescriptor::Singleton { center } | NbhdDescriptor::Base { center, .. } => center,
        }
    }

    pub fn threshold(&self) -> Option<u64> {
        match self {
            NbhdDescriptor::Singleton { .. } => None,
            NbhdDescriptor::Base { threshold, .. } => Some(*threshold),
        }
    }

    /// Same descriptor with a different threshold; singletons are unchanged.
    pub fn with_threshold(&self, n: u64) -> Self {
        match self {
            NbhdDescriptor::Singleton { .. } => self.clone(),
            NbhdDescriptor::Base { center, level, .. } => NbhdDescriptor::Base {
                center: center.clone(),
                level: *level,
                threshold: n,
            },
        }
    }

    /// Checks that the descriptor is a basic open set of `spec`.
    pub fn validate(&self, spec: &TopologySpec) -> Result<(), TopologyError> {
        spec.check_point(self.center())?;
        let class = classify_point(spec, self.center())?;
        let ok = match self {
            NbhdDescriptor::Singleton { .. } => class == PointClass::Isolated,
            NbhdDescriptor::Base { level, .. } => class == PointClass::Limit(*level),
        };
        if ok {
            Ok(())
        } else {
            Err(TopologyError::InvalidDescriptor(self.to_string()))
        }
    }

    /// Every member whose free coordinates `γ, δ < ω^j` have all CNF
    /// coefficients at most `bound`. The center comes first; the rest are
    /// ordered by `δ`, then `γ`, increasing.
    pub fn members_truncated(&self, bound: u64) -> Vec<BAlphaElement> {
        match self {
            NbhdDescriptor::Singleton { center } => vec![center.clone()],
            NbhdDescriptor::Base {
                center,
                level,
                threshold,
            } => {
                let a_low = decrement_last(center.left()).expect("base centers are nonzero");
                let b_low = decrement_last(center.right()).expect("base centers are nonzero");
                let locals = truncated_below(*level, bound);
                let mut out = vec![center.clone()];
                for delta in &locals {
                    let dh = delta.coeff_at_finite(level - 1);
                    for gamma in &locals {
                        if dh > *threshold || gamma.coeff_at_finite(level - 1) > *threshold {
                            let m = center
                                .sibling(&a_low + gamma, &b_low + delta)
                                .expect("members stay below the carrier bound");
                            out.push(m);
                        }
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for NbhdDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NbhdDescriptor::Singleton { center } => write!(f, "sing({center})"),
            NbhdDescriptor::Base {
                center,
                level,
                threshold,
            } => write!(f, "base({center}; j={level}; n={threshold})"),
        }
    }
}

/// Parses `sing(ELEM)` or `base(ELEM; j=J; n=N)` with `ELEM` in `B_level`.
pub fn parse_descriptor(text: &str, level: &Ordinal) -> Result<NbhdDescriptor, TopologyError> {
    let syntax = |position: usize, message: &str| TopologyError::Syntax {
        position,
        message: message.to_string(),
    };
    let trimmed = text.trim();
    let offset = text.len() - text.trim_start().len();
    let shift = |e: SemigroupError| match e {
        SemigroupError::Syntax { position, message } => TopologyError::Syntax {
            position: position + offset + 5,
            message,
        },
        other => TopologyError::Semigroup(other),
    };
    if let Some(body) = trimmed
        .strip_prefix("sing(")
        .and_then(|r| r.strip_suffix(')'))
    {
        let center = parse_balpha_element(body, level).map_err(shift)?;
        return Ok(NbhdDescriptor::Singleton { center });
    }
    let Some(body) = trimmed
        .strip_prefix("base(")
        .and_then(|r| r.strip_suffix(')'))
    else {
        return Err(syntax(offset, "expected 'sing(...)' or 'base(...)'"));
    };
    let parts: Vec<&str> = body.split(';').collect();
    let [elem, j_part, n_part] = parts.as_slice() else {
        return Err(syntax(offset + 5, "expected 'base(ELEM; j=J; n=N)'"));
    };
    let center = parse_balpha_element(elem, level).map_err(shift)?;
    let field = |part: &str, key: &str| -> Result<u64, TopologyError> {
        let at = offset + text.trim_start().find(part).unwrap_or(0);
        part.trim()
            .strip_prefix(key)
            .and_then(|v| v.trim_start().strip_prefix('='))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| syntax(at, &format!("expected '{key}=<number>'")))
    };
    Ok(NbhdDescriptor::Base {
        center,
        level: field(j_part, "j")?,
        threshold: field(n_part, "n")?,
    })
}

/// Every ordinal `γ < ω^j` whose CNF coefficients are all at most `bound`,
/// in increasing order.
pub(crate) fn truncated_below(j: u64, bound: u64) -> Vec<Ordinal> {
    let width = j as usize;
    let mut digits = vec![0u64; width];
    let mut out = Vec::new();
    loop {
        out.push(Ordinal::from_finite_coeffs(&digits));
        let mut k = 0;
        loop {
            if k == width {
                return out;
            }
            if digits[k] < bound {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
            k += 1;
        }
    }
}

pub fn classify_point(spec: &TopologySpec, x: &BAlphaElement) -> Result<PointClass, TopologyError> {
    spec.check_point(x)?;
    match (
        x.left().last_finite_exponent(),
        x.right().last_finite_exponent(),
    ) {
        (Some(j), Some(k)) if j == k && spec.is_limit_level(j) => Ok(PointClass::Limit(j)),
        _ => Ok(PointClass::Isolated),
    }
}

/// The `n`-th basic neighborhood of `p`; a singleton when `p` is isolated.
pub fn base_nbhd(
    spec: &TopologySpec,
    p: &BAlphaElement,
    n: u64,
) -> Result<NbhdDescriptor, TopologyError> {
    Ok(match classify_point(spec, p)? {
        PointClass::Isolated => NbhdDescriptor::Singleton { center: p.clone() },
        PointClass::Limit(j) => NbhdDescriptor::Base {
            center: p.clone(),
            level: j,
            threshold: n,
        },
    })
}

/// Position of `q` in the rectangle `[a⁻, a⁻ + ω^j) × [b⁻, b⁻ + ω^j)` around
/// `center = (a, b)`, reported as the `ω^(j-1)` coefficients of the offsets.
/// `None` when `q` lies outside the rectangle.
pub fn local_heads(center: &BAlphaElement, j: u64, q: &BAlphaElement) -> Option<(u64, u64)> {
    let a_low = decrement_last(center.left()).ok()?;
    let b_low = decrement_last(center.right()).ok()?;
    let gamma = q.left().sub_left(&a_low).ok()?;
    let delta = q.right().sub_left(&b_low).ok()?;
    if !gamma.is_below_omega_pow_finite(j) || !delta.is_below_omega_pow_finite(j) {
        return None;
    }
    Some((gamma.coeff_at_finite(j - 1), delta.coeff_at_finite(j - 1)))
}

pub fn nbhd_contains(d: &NbhdDescriptor, q: &BAlphaElement) -> Result<bool, TopologyError> {
    d.center().check_level(q)?;
    Ok(match d {
        NbhdDescriptor::Singleton { center } => center == q,
        NbhdDescriptor::Base {
            center,
            level,
            threshold,
        } => {
            center == q
                || local_heads(center, *level, q)
                    .is_some_and(|(hg, hd)| hg > *threshold || hd > *threshold)
        }
    })
}

fn nonzero_coordinates(p: &BAlphaElement) -> Result<(Ordinal, Ordinal), TopologyError> {
    match (decrement_last(p.left()), decrement_last(p.right())) {
        (Ok(a_low), Ok(b_low)) => Ok((a_low, b_low)),
        _ => Err(TopologyError::UndefinedForZeroCoordinate(p.to_string())),
    }
}

/// Membership in the neighborhood that every shift-continuous topology
/// assigns to `p = (a, b)`: `p` itself together with `(a⁻ + δ, b⁻ + β)` for
/// `δ < ω^e`, `β < ω^f`, where `e`, `f` are the last exponents of `a`, `b`.
pub fn forced_nbhd_contains(p: &BAlphaElement, q: &BAlphaElement) -> Result<bool, TopologyError> {
    p.check_level(q)?;
    let (a_low, b_low) = nonzero_coordinates(p)?;
    if p == q {
        return Ok(true);
    }
    let (Some((e, _)), Some((f, _))) = (
        crate::ordinal::last_term(p.left()),
        crate::ordinal::last_term(p.right()),
    ) else {
        unreachable!("nonzero coordinates have a last term");
    };
    let (Ok(delta), Ok(beta)) = (q.left().sub_left(&a_low), q.right().sub_left(&b_low)) else {
        return Ok(false);
    };
    Ok(delta.is_below_omega_pow(&e) && beta.is_below_omega_pow(&f))
}

/// `x ↦ (a⁻, 0)·x·(0, b⁻)`; sends `(ω^e, ω^f)` to `p`.
pub fn h_map(p: &BAlphaElement, x: &BAlphaElement) -> Result<BAlphaElement, TopologyError> {
    p.check_level(x)?;
    let (a_low, b_low) = nonzero_coordinates(p)?;
    let left = p.sibling(a_low, Ordinal::zero())?;
    let right = p.sibling(Ordinal::zero(), b_low)?;
    Ok(left.mul(x)?.mul(&right)?)
}

/// `x ↦ (0, a⁻)·x·(b⁻, 0)`, the inverse of [`h_map`] on its image.
pub fn h_inv(p: &BAlphaElement, x: &BAlphaElement) -> Result<BAlphaElement, TopologyError> {
    p.check_level(x)?;
    let (a_low, b_low) = nonzero_coordinates(p)?;
    let left = p.sibling(Ordinal::zero(), a_low)?;
    let right = p.sibling(b_low, Ordinal::zero())?;
    Ok(left.mul(x)?.mul(&right)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(level: u64, text: &str) -> BAlphaElement {
        parse_balpha_element(text, &Ordinal::nat(level)).unwrap()
    }

    fn spec(i: u64, alpha: u64) -> TopologySpec {
        TopologySpec::finite(i, alpha).unwrap()
    }

    fn base(level: u64, center: &str, j: u64, n: u64) -> NbhdDescriptor {
        NbhdDescriptor::Base {
            center: el(level, center),
            level: j,
            threshold: n,
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_point(&spec(2, 2), &el(2, "(w, w)")).unwrap(),
            PointClass::Limit(1)
        );
        assert_eq!(
            classify_point(&spec(2, 2), &el(2, "(w*3 + 2, w*5)")).unwrap(),
            PointClass::Isolated
        );
        assert_eq!(
            classify_point(&spec(1, 2), &el(2, "(w, w)")).unwrap(),
            PointClass::Isolated
        );
        assert_eq!(
            classify_point(&spec(3, 3), &el(3, "(w^2*2 + w, w*4)")).unwrap(),
            PointClass::Limit(1)
        );
        assert_eq!(
            classify_point(&spec(3, 3), &el(3, "(w^2, w^2*3)")).unwrap(),
            PointClass::Limit(2)
        );
        assert_eq!(
            classify_point(&spec(2, 3), &el(3, "(w^2, w^2*3)")).unwrap(),
            PointClass::Isolated
        );
        assert_eq!(
            classify_point(&spec(2, 2), &el(2, "(0, w)")).unwrap(),
            PointClass::Isolated
        );
        assert_eq!(
            classify_point(&spec(2, 2), &el(2, "(3, 5)")).unwrap(),
            PointClass::Isolated
        );
        assert!(matches!(
            classify_point(&spec(2, 2), &el(3, "(w, w)")),
            Err(TopologyError::LevelMismatch { .. })
        ));
    }

    #[test]
    fn base_nbhd_examples() {
        let s = spec(2, 2);
        assert_eq!(
            base_nbhd(&s, &el(2, "(w, w)"), 3).unwrap(),
            base(2, "(w, w)", 1, 3)
        );
        assert_eq!(
            base_nbhd(&s, &el(2, "(5, 7)"), 3).unwrap(),
            NbhdDescriptor::Singleton {
                center: el(2, "(5, 7)")
            }
        );
        assert_eq!(
            base_nbhd(&s, &el(2, "(w*2, w*3)"), 2).unwrap(),
            base(2, "(w*2, w*3)", 1, 2)
        );
    }

    #[test]
    fn membership_examples() {
        let d = base(2, "(w, w)", 1, 3);
        assert!(nbhd_contains(&d, &el(2, "(5, 2)")).unwrap());
        assert!(!nbhd_contains(&d, &el(2, "(4, w)")).unwrap());
        assert!(!nbhd_contains(&d, &el(2, "(2, 1)")).unwrap());
        assert!(nbhd_contains(&d, &el(2, "(w, w)")).unwrap());
        let d = base(2, "(w*2, w*3)", 1, 2);
        assert!(nbhd_contains(&d, &el(2, "(w + 5, w*2 + 1)")).unwrap());
        assert!(!nbhd_contains(&d, &el(2, "(5, w*2 + 9)")).unwrap());
        let s = NbhdDescriptor::Singleton {
            center: el(2, "(5, 7)"),
        };
        assert!(nbhd_contains(&s, &el(2, "(5, 7)")).unwrap());
        assert!(!nbhd_contains(&s, &el(2, "(5, 8)")).unwrap());
    }

    #[test]
    fn level_two_membership_uses_heads() {
        // Around (ω², ω²) at j = 2 the threshold applies to ω-coefficients.
        let d = base(3, "(w^2, w^2)", 2, 1);
        assert!(nbhd_contains(&d, &el(3, "(w*2, 0)")).unwrap());
        assert!(nbhd_contains(&d, &el(3, "(w + 7, w*2 + 1)")).unwrap());
        assert!(!nbhd_contains(&d, &el(3, "(w + 700, w)")).unwrap());
        assert!(!nbhd_contains(&d, &el(3, "(w^2 + 1, 0)")).unwrap());
    }

    #[test]
    fn forced_examples() {
        let p = el(2, "(w*2, w*3)");
        assert!(forced_nbhd_contains(&p, &el(2, "(w + 7, w*2 + 4)")).unwrap());
        assert!(!forced_nbhd_contains(&p, &el(2, "(w*2, w*2 + 4)")).unwrap());
        assert!(forced_nbhd_contains(&p, &p).unwrap());
        assert!(matches!(
            forced_nbhd_contains(&el(2, "(0, w)"), &p),
            Err(TopologyError::UndefinedForZeroCoordinate(_))
        ));
        // Mismatched last exponents: V = {p} ∪ {(a⁻ + δ, b⁻ + β) : δ < ω, β < 1}.
        let p = el(2, "(w*2, 3)");
        assert!(forced_nbhd_contains(&p, &el(2, "(w + 4, 2)")).unwrap());
        assert!(!forced_nbhd_contains(&p, &el(2, "(w + 4, 1)")).unwrap());
    }

    #[test]
    fn transport_examples() {
        let p = el(2, "(w*2, w*3)");
        assert_eq!(
            h_map(&p, &el(2, "(5, 3)")).unwrap(),
            el(2, "(w + 5, w*2 + 3)")
        );
        assert_eq!(h_map(&p, &el(2, "(w, w)")).unwrap(), p);
        let x = el(2, "(7, 0)");
        assert_eq!(h_inv(&p, &h_map(&p, &x).unwrap()).unwrap(), x);
        assert!(h_map(&el(2, "(0, 1)"), &x).is_err());
    }

    #[test]
    fn descriptor_text() {
        let two = Ordinal::nat(2);
        let d = parse_descriptor("base((w,w); j=1; n=3)", &two).unwrap();
        assert_eq!(d, base(2, "(w, w)", 1, 3));
        assert_eq!(d.to_string(), "base((w, w); j=1; n=3)");
        let s = parse_descriptor(" sing((5, 7)) ", &two).unwrap();
        assert_eq!(s.to_string(), "sing((5, 7))");
        assert!(matches!(
            parse_descriptor("ball((w,w))", &two),
            Err(TopologyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_descriptor("base((w,w); j=1)", &two),
            Err(TopologyError::Syntax { .. })
        ));
        assert!(matches!(
            parse_descriptor("base((w,w); j=x; n=1)", &two),
            Err(TopologyError::Syntax { .. })
        ));
    }

    #[test]
    fn truncated_enumeration() {
        let v = truncated_below(2, 2);
        assert_eq!(v.len(), 9);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(truncated_below(0, 5), vec![Ordinal::zero()]);
        let d = base(2, "(w, w)", 1, 3);
        let members = d.members_truncated(5);
        // center + pairs (g, d) in [0,5]^2 with g > 3 or d > 3
        assert_eq!(members.len(), 1 + 36 - 16);
        assert_eq!(members[1], el(2, "(4, 0)"));
    }

    #[test]
    fn validation() {
        let s = spec(2, 2);
        assert!(base(2, "(w, w)", 1, 0).validate(&s).is_ok());
        assert!(base(2, "(w, w + 1)", 1, 0).validate(&s).is_err());
        assert!(NbhdDescriptor::Singleton {
            center: el(2, "(w, w)")
        }
        .validate(&s)
        .is_err());
        assert!(NbhdDescriptor::Singleton {
            center: el(2, "(w, 1)")
        }
        .validate(&s)
        .is_ok());
    }
}
