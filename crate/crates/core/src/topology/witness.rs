//! Constructive continuity and separation witnesses.

use std::cmp::Ordering;

use super::nbhd::{base_nbhd, classify_point, local_heads, nbhd_contains, NbhdDescriptor};
use super::{PointClass, TopologyError, TopologySpec};
use crate::iso::to_bruck;
use crate::ordinal::{decrement_last, Ordinal};
use crate::semigroup::{box_of, BAlphaElement, BoxIndex};

/// Outcome of a truncated inclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftCheck {
    Ok,
    Counterexample(BAlphaElement),
}

/// Finds a basic neighborhood `V` of `x` with `l·V·r ⊆ target`.
///
/// For a limit point `x = (a, b)` of level `j` the shift factors as
/// `(a⁻ + γ, b⁻ + δ) ↦ (L + γ', R + δ')` where `(γ', δ') = l̃·(γ, δ)·r̃` is a
/// two-sided shift inside `B_j`. Either `l̃` or `r̃` swallows the whole
/// rectangle (the neighborhood collapses onto the image point), or the shift
/// acts on the boxes of `B_j ≅ B(B_{j-1})` by index arithmetic alone, and the
/// smallest admissible threshold is found by a finite search over boxes.
pub fn continuity_witness(
    spec: &TopologySpec,
    l: &BAlphaElement,
    r: &BAlphaElement,
    x: &BAlphaElement,
    target: &NbhdDescriptor,
) -> Result<NbhdDescriptor, TopologyError> {
    spec.check_point(x)?;
    spec.check_point(l)?;
    spec.check_point(r)?;
    let image = l.mul(x)?.mul(r)?;
    if *target.center() != image {
        return Err(TopologyError::TargetMismatch {
            target: target.center().to_string(),
            image: image.to_string(),
        });
    }
    target.validate(spec)?;

    let j = match classify_point(spec, x)? {
        PointClass::Isolated => return Ok(NbhdDescriptor::Singleton { center: x.clone() }),
        PointClass::Limit(j) => j,
    };
    let base = |threshold| NbhdDescriptor::Base {
        center: x.clone(),
        level: j,
        threshold,
    };
    let not_found = || TopologyError::WitnessNotFound(format!("{l}·{x}·{r} into {target}"));

    let a_low = decrement_last(x.left())?;
    let b_low = decrement_last(x.right())?;
    let outer_left = l.mul(&x.sibling(a_low, Ordinal::zero())?)?;
    let outer_right = x.sibling(Ordinal::zero(), b_low)?.mul(r)?;
    let lambda = outer_left.right();
    let rho = outer_right.left();
    if !lambda.is_below_omega_pow_finite(j) || !rho.is_below_omega_pow_finite(j) {
        return Ok(base(0));
    }

    let NbhdDescriptor::Base {
        level: target_level,
        threshold: target_n,
        ..
    } = target
    else {
        return Err(not_found());
    };
    if *target_level != j {
        return Err(not_found());
    }

    let local_level = Ordinal::nat(j);
    let low_part = |o: &Ordinal| o.sub_left(&o.truncate_below_finite(j));
    let l_local = BAlphaElement::new(&local_level, low_part(outer_left.left())?, lambda.clone())?;
    let r_local = BAlphaElement::new(&local_level, rho.clone(), low_part(outer_right.right())?)?;
    let box_level = Ordinal::nat(j - 1);
    let BoxIndex { n: p1, m: q1 } = box_of(&to_bruck(&box_level, &l_local)?)?;
    let BoxIndex { n: p2, m: q2 } = box_of(&to_bruck(&box_level, &r_local)?)?;

    // Boxes with n > target_n + q1 or m > target_n + p2 always land outside
    // the excluded square, so only the finite rectangle below matters.
    let n_limit = target_n + q1;
    let m_limit = target_n + p2;
    let shifted = |n: u64, m: u64| {
        let (p, mid) = bruck_box_mul((p1, q1), (n, m));
        bruck_box_mul((p, mid), (p2, q2))
    };
    let search_limit = n_limit.max(m_limit);
    for candidate in 0..=search_limit {
        let ok = (0..=n_limit).all(|n| {
            (0..=m_limit).all(|m| {
                if n.max(m) <= candidate {
                    return true;
                }
                let (pn, pm) = shifted(n, m);
                pn.max(pm) > *target_n
            })
        });
        if ok {
            return Ok(base(candidate));
        }
    }
    Err(not_found())
}

/// Box indices of a Bruck product.
fn bruck_box_mul((a, b): (u64, u64), (c, d): (u64, u64)) -> (u64, u64) {
    match b.cmp(&c) {
        Ordering::Less => (a + (c - b), d),
        Ordering::Greater => (a, d + (b - c)),
        Ordering::Equal => (a, d),
    }
}

/// Checks `l·v·r ∈ target` for every member `v` of `v_desc` with free
/// coefficients at most `bound`, returning the first failure.
pub fn verify_shift_inclusion(
    l: &BAlphaElement,
    v_desc: &NbhdDescriptor,
    r: &BAlphaElement,
    target: &NbhdDescriptor,
    bound: u64,
) -> Result<ShiftCheck, TopologyError> {
    for v in v_desc.members_truncated(bound) {
        let image = l.mul(&v)?.mul(r)?;
        if !nbhd_contains(target, &image)? {
            return Ok(ShiftCheck::Counterexample(v));
        }
    }
    Ok(ShiftCheck::Ok)
}

/// Half-open rectangle `[a⁻, a⁻ + ω^j) × [b⁻, b⁻ + ω^j)` of a base descriptor.
struct Rect {
    left_low: Ordinal,
    right_low: Ordinal,
    left_high: Ordinal,
    right_high: Ordinal,
}

fn rect_of(center: &BAlphaElement, j: u64) -> Result<Rect, TopologyError> {
    let left_low = decrement_last(center.left())?;
    let right_low = decrement_last(center.right())?;
    let width = Ordinal::finite_monomial(j, 1);
    Ok(Rect {
        left_high: left_low.checked_add(&width)?,
        right_high: right_low.checked_add(&width)?,
        left_low,
        right_low,
    })
}

fn rects_meet(x: &Rect, y: &Rect) -> bool {
    (&x.left_low).max(&y.left_low) < (&x.left_high).min(&y.left_high)
        && (&x.right_low).max(&y.right_low) < (&x.right_high).min(&y.right_high)
}

/// Heads at which every point of the inner rectangle sits inside the outer
/// one. Rectangles of this shape are laminar, so a meeting pair is nested.
fn nested_heads(inner: &Rect, outer: &Rect, outer_level: u64) -> Result<(u64, u64), TopologyError> {
    let g = inner.left_low.sub_left(&outer.left_low)?;
    let d = inner.right_low.sub_left(&outer.right_low)?;
    Ok((
        g.coeff_at_finite(outer_level - 1),
        d.coeff_at_finite(outer_level - 1),
    ))
}

/// Decides exactly whether two descriptors of the same monoid are disjoint.
pub fn descriptors_disjoint(
    d1: &NbhdDescriptor,
    d2: &NbhdDescriptor,
) -> Result<bool, TopologyError> {
    let (c1, c2) = (d1.center(), d2.center());
    if c1 == c2 || nbhd_contains(d1, c2)? || nbhd_contains(d2, c1)? {
        return Ok(false);
    }
    let (
        NbhdDescriptor::Base {
            level: j1,
            threshold: n1,
            ..
        },
        NbhdDescriptor::Base {
            level: j2,
            threshold: n2,
            ..
        },
    ) = (d1, d2)
    else {
        return Ok(true);
    };
    let r1 = rect_of(c1, *j1)?;
    let r2 = rect_of(c2, *j2)?;
    if !rects_meet(&r1, &r2) {
        return Ok(true);
    }
    let (inner, outer, outer_level, outer_n) = match j1.cmp(j2) {
        Ordering::Less => (&r1, &r2, *j2, *n2),
        Ordering::Greater => (&r2, &r1, *j1, *n1),
        // Equal levels and meeting rectangles force equal centers.
        Ordering::Equal => return Ok(false),
    };
    let (hg, hd) = nested_heads(inner, outer, outer_level)?;
    Ok(hg.max(hd) <= outer_n)
}

/// Disjoint basic neighborhoods of two distinct points.
pub fn hausdorff_witness(
    spec: &TopologySpec,
    p: &BAlphaElement,
    q: &BAlphaElement,
) -> Result<(NbhdDescriptor, NbhdDescriptor), TopologyError> {
    spec.check_point(p)?;
    spec.check_point(q)?;
    if p == q {
        return Err(TopologyError::EqualPoints);
    }
    let mut dp = base_nbhd(spec, p, 0)?;
    let mut dq = base_nbhd(spec, q, 0)?;

    if let (NbhdDescriptor::Base { level: jp, .. }, NbhdDescriptor::Base { level: jq, .. }) =
        (&dp, &dq)
    {
        let (jp, jq) = (*jp, *jq);
        let rp = rect_of(p, jp)?;
        let rq = rect_of(q, jq)?;
        if rects_meet(&rp, &rq) {
            match jp.cmp(&jq) {
                Ordering::Less => {
                    let (hg, hd) = nested_heads(&rp, &rq, jq)?;
                    dq = dq.with_threshold(hg.max(hd));
                }
                Ordering::Greater => {
                    let (hg, hd) = nested_heads(&rq, &rp, jp)?;
                    dp = dp.with_threshold(hg.max(hd));
                }
                Ordering::Equal => {}
            }
        }
    }

    // Exclude each center from the other neighborhood.
    for (d, other) in [(&mut dp, q), (&mut dq, p)] {
        if let NbhdDescriptor::Base {
            center,
            level,
            threshold,
        } = d
        {
            if let Some((hg, hd)) = local_heads(center, *level, other) {
                *threshold = (*threshold).max(hg).max(hd);
            }
        }
    }

    if descriptors_disjoint(&dp, &dq)? {
        Ok((dp, dq))
    } else {
        Err(TopologyError::WitnessNotFound(format!(
            "separation of {p} and {q}"
        )))
    }
}
