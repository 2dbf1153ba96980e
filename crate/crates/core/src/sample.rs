//! Seeded generators for ordinals, elements and topological configurations.

use rand::Rng;

use crate::iso::CaseTag;
use crate::ordinal::Ordinal;
use crate::semigroup::BAlphaElement;
use crate::topology::{Level, TopologySpec};

/// Coordinates sampled in `B_ω` stay below `ω^OMEGA_EXP_CAP`.
pub const OMEGA_EXP_CAP: u64 = 4;

/// Largest limit level sampled in `B_ω`, keeping truncated enumeration cheap.
pub const OMEGA_LIMIT_CAP: u64 = 2;

pub fn exp_cap(alpha: Level) -> u64 {
    match alpha {
        Level::Finite(n) => n,
        Level::Omega => OMEGA_EXP_CAP,
    }
}

fn coeff<R: Rng>(rng: &mut R, max_coeff: u64) -> u64 {
    if rng.gen_bool(0.4) {
        0
    } else {
        rng.gen_range(0..=max_coeff)
    }
}

/// An ordinal below `ω^exp_bound` with every coefficient at most `max_coeff`.
pub fn below_omega_pow<R: Rng>(rng: &mut R, exp_bound: u64, max_coeff: u64) -> Ordinal {
    if rng.gen_ratio(1, 8) {
        return Ordinal::zero();
    }
    let coeffs: Vec<u64> = (0..exp_bound).map(|_| coeff(rng, max_coeff)).collect();
    Ordinal::from_finite_coeffs(&coeffs)
}

/// A CNF with exponents drawn from `{0, …, 5, ω, ω+1, ω+2, ω·2}` and
/// coefficients in `1..=max_coeff`.
pub fn small_cnf<R: Rng>(rng: &mut R, max_coeff: u64) -> Ordinal {
    let w = Ordinal::omega();
    let mut exps = vec![
        &w + &w,
        &w + &Ordinal::nat(2),
        &w + &Ordinal::one(),
        w.clone(),
    ];
    exps.extend((0..=5).rev().map(Ordinal::nat));
    let mut terms = Vec::new();
    for e in exps {
        if rng.gen_bool(0.3) {
            terms.push((e, rng.gen_range(1..=max_coeff)));
        }
    }
    Ordinal::from_terms(terms).expect("exponents listed in decreasing order")
}

pub fn element<R: Rng>(rng: &mut R, level: &Ordinal, max_coeff: u64) -> BAlphaElement {
    let cap = match Level::from_ordinal(level) {
        Ok(l) => exp_cap(l),
        Err(_) => OMEGA_EXP_CAP,
    };
    let left = below_omega_pow(rng, cap, max_coeff);
    let right = below_omega_pow(rng, cap, max_coeff);
    BAlphaElement::new(level, left, right).expect("sampled below the carrier bound")
}

/// An ordinal below `ω^exp_bound` whose last term has exponent exactly `j`.
fn ending_at<R: Rng>(rng: &mut R, j: u64, exp_bound: u64, max_coeff: u64) -> Ordinal {
    let mut coeffs = vec![0u64; exp_bound as usize];
    for c in coeffs.iter_mut().skip(j as usize + 1) {
        *c = coeff(rng, max_coeff);
    }
    coeffs[j as usize] = rng.gen_range(1..=max_coeff.max(1));
    Ordinal::from_finite_coeffs(&coeffs)
}

/// Limit levels available to sampling under `spec`.
pub fn limit_levels(spec: &TopologySpec) -> Vec<u64> {
    let cap = match spec.alpha() {
        Level::Finite(n) => n,
        Level::Omega => OMEGA_LIMIT_CAP + 1,
    };
    (1..cap).filter(|&j| spec.is_limit_level(j)).collect()
}

/// A point of level `j`: both coordinates end in an `ω^j` term.
pub fn limit_point<R: Rng>(
    rng: &mut R,
    spec: &TopologySpec,
    j: u64,
    max_coeff: u64,
) -> BAlphaElement {
    let cap = exp_cap(spec.alpha());
    let left = ending_at(rng, j, cap, max_coeff);
    let right = ending_at(rng, j, cap, max_coeff);
    BAlphaElement::new(&spec.carrier_level(), left, right).expect("sampled below the carrier bound")
}

/// A point of the carrier, a limit point with probability about one half.
pub fn point<R: Rng>(rng: &mut R, spec: &TopologySpec, max_coeff: u64) -> BAlphaElement {
    let levels = limit_levels(spec);
    if !levels.is_empty() && rng.gen_bool(0.5) {
        let j = levels[rng.gen_range(0..levels.len())];
        limit_point(rng, spec, j, max_coeff)
    } else {
        element(rng, &spec.carrier_level(), max_coeff)
    }
}

/// A topology `τ_{i,α}` with the given `α`.
pub fn spec_for<R: Rng>(rng: &mut R, alpha: Level) -> TopologySpec {
    let i = match alpha {
        Level::Finite(n) => Level::Finite(rng.gen_range(1..=n)),
        Level::Omega if rng.gen_bool(0.5) => Level::Omega,
        Level::Omega => Level::Finite(rng.gen_range(1..=OMEGA_LIMIT_CAP + 2)),
    };
    TopologySpec::new(i, alpha).expect("1 <= i <= alpha")
}

/// A pair `(x, y)` in `B_{α+1}` whose product falls under `tag`, for finite `α`.
pub fn pair_for_case<R: Rng>(
    rng: &mut R,
    alpha: u64,
    tag: CaseTag,
    max_coeff: u64,
) -> (BAlphaElement, BAlphaElement) {
    let upper = Ordinal::nat(alpha + 1);
    let head = |rng: &mut R| rng.gen_range(0..=max_coeff);
    let (m, k) = match tag {
        CaseTag::LeftDominates => {
            let m = rng.gen_range(0..max_coeff);
            (m, rng.gen_range(m + 1..=max_coeff))
        }
        CaseTag::RightDominates => {
            let k = rng.gen_range(0..max_coeff);
            (rng.gen_range(k + 1..=max_coeff), k)
        }
        _ => {
            let h = head(rng);
            (h, h)
        }
    };
    let (b_tail, c_tail) = loop {
        let u = below_omega_pow(rng, alpha, max_coeff);
        let v = below_omega_pow(rng, alpha, max_coeff);
        let (lo, hi) = if u <= v { (u, v) } else { (v, u) };
        match tag {
            CaseTag::EqualHeadsTailGreater if lo < hi => break (lo, hi),
            CaseTag::EqualHeadsTailGreater => continue,
            CaseTag::EqualHeadsTailLeq => break (hi, lo),
            _ => break (lo, hi),
        }
    };
    let top = |h: u64, tail: &Ordinal| &Ordinal::finite_monomial(alpha, h) + tail;
    let x_left = top(head(rng), &below_omega_pow(rng, alpha, max_coeff));
    let y_right = top(head(rng), &below_omega_pow(rng, alpha, max_coeff));
    let x = BAlphaElement::new(&upper, x_left, top(m, &b_tail)).expect("below ω^(α+1)");
    let y = BAlphaElement::new(&upper, top(k, &c_tail), y_right).expect("below ω^(α+1)");
    (x, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::classify_case;
    use crate::topology::{classify_point, PointClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn stratified_pairs_hit_their_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for alpha in 1..=3 {
            for tag in CaseTag::ALL {
                for _ in 0..200 {
                    let (x, y) = pair_for_case(&mut rng, alpha, tag, 5);
                    assert_eq!(classify_case(&x, &y, &Ordinal::nat(alpha)).unwrap(), tag);
                }
            }
        }
    }

    #[test]
    fn limit_points_classify() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = TopologySpec::finite(3, 3).unwrap();
        for j in limit_levels(&spec) {
            for _ in 0..100 {
                let p = limit_point(&mut rng, &spec, j, 4);
                assert_eq!(classify_point(&spec, &p).unwrap(), PointClass::Limit(j));
            }
        }
    }

    #[test]
    fn small_cnfs_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            assert!(small_cnf(&mut rng, 50).is_canonical());
        }
    }
}
