//! Seeded property suites producing machine-readable reports.
//!
//! Cases are drawn sequentially from a ChaCha stream and checked in parallel;
//! results are collected in draw order, so a report depends only on its
//! parameters.

use std::collections::BTreeMap;
use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::iso::{classify_case, from_bruck, to_bruck, CaseTag};
use crate::ordinal::{decrement_last, parse_ordinal, Ordinal};
use crate::sample;
use crate::semigroup::{
    bicyclic_reduce, bruck_mul, BAlphaElement, BicyclicWord, BoxIndex, BruckElement,
};
use crate::topology::{
    base_nbhd, classify_point, continuity_witness, descriptors_disjoint, enumerate_topologies,
    forced_nbhd_contains, h_inv, h_map, hausdorff_witness, nbhd_contains, topology_finer,
    uncovered_boxes, verify_shift_inclusion, Level, NbhdDescriptor, PointClass, Refinement,
    ShiftCheck, TopologySpec,
};

pub const SCHEMA: u32 = 1;

/// Failures beyond this many are counted but not listed.
pub const MAX_LISTED_FAILURES: usize = 50;

/// Coefficient cap for random ordinals in the ordinal suite.
const ORDINAL_MAX_COEFF: u64 = 50;
/// Finite multiples of `ω` covered exhaustively by the ordinal suite.
const ORDINAL_OMEGA_MULTIPLES: u64 = 10;
/// Coefficient cap for sampled shifts and points.
const POINT_MAX_COEFF: u64 = 4;
/// Largest threshold used when none is given.
const DEFAULT_MAX_THRESHOLD: u64 = 6;
/// Index cap for the `α = ω` family when none is given.
const DEFAULT_LATTICE_CAP: u64 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    OrdinalAxioms,
    BalphaAssoc,
    BicyclicOracle,
    IsoHomomorphism,
    TopologyWitnesses,
    Separation,
    Boxes,
    Lattice,
    All,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 8] = [
        Suite::OrdinalAxioms,
        Suite::BalphaAssoc,
        Suite::BicyclicOracle,
        Suite::IsoHomomorphism,
        Suite::TopologyWitnesses,
        Suite::Separation,
        Suite::Boxes,
        Suite::Lattice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::OrdinalAxioms => "ordinal-axioms",
            Suite::BalphaAssoc => "balpha-assoc",
            Suite::BicyclicOracle => "bicyclic-oracle",
            Suite::IsoHomomorphism => "iso-homomorphism",
            Suite::TopologyWitnesses => "topology-witnesses",
            Suite::Separation => "separation",
            Suite::Boxes => "boxes",
            Suite::Lattice => "lattice",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyParams {
    /// Restricts the suite to one carrier level; each suite has its own default set.
    pub alpha: Option<Level>,
    pub i: Option<Level>,
    /// Threshold (or lattice cap) override.
    pub n: Option<u64>,
    /// Truncation bound and exhaustive-range bound.
    pub bound: u64,
    /// Random cases per carrier level.
    pub trials: u64,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            alpha: None,
            i: None,
            n: None,
            bound: 8,
            trials: 1000,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub expected: String,
    pub got: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub seed: u64,
    pub bound: u64,
    /// Number of checked cases, random and exhaustive.
    pub trials: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    /// Named tallies, e.g. hits per product case.
    pub counts: BTreeMap<String, u64>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

type Check = Result<(), Failure>;

fn failure(inputs: impl Display, expected: impl Display, got: impl Display) -> Failure {
    Failure {
        inputs: inputs.to_string(),
        expected: expected.to_string(),
        got: got.to_string(),
    }
}

fn expect_eq<T: PartialEq + Display>(inputs: impl Display, expected: &T, got: &T) -> Check {
    if expected == got {
        Ok(())
    } else {
        Err(failure(inputs, expected, got))
    }
}

fn expect(inputs: impl Display, expected: &str, holds: bool) -> Check {
    if holds {
        Ok(())
    } else {
        Err(failure(inputs, expected, "violated"))
    }
}

fn or_fail<T, E: Display>(inputs: &str, r: Result<T, E>) -> Result<T, Failure> {
    r.map_err(|e| failure(inputs, "no error", format!("error: {e}")))
}

struct Tally {
    trials: u64,
    failures: Vec<Failure>,
    failure_count: u64,
    counts: BTreeMap<String, u64>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            trials: 0,
            failures: Vec::new(),
            failure_count: 0,
            counts: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, trials: u64, failures: Vec<Failure>) {
        self.trials += trials;
        self.failure_count += failures.len() as u64;
        let room = MAX_LISTED_FAILURES.saturating_sub(self.failures.len());
        self.failures.extend(failures.into_iter().take(room));
    }

    /// Checks every case in parallel, keeping failures in case order.
    fn run<T: Sync>(&mut self, cases: &[T], check: impl Fn(&T) -> Check + Sync) {
        let failures: Vec<Failure> = cases.par_iter().filter_map(|c| check(c).err()).collect();
        self.absorb(cases.len() as u64, failures);
    }

    fn run_range(&mut self, count: u64, check: impl Fn(u64) -> Check + Sync) {
        let failures: Vec<Failure> = (0..count)
            .into_par_iter()
            .filter_map(|k| check(k).err())
            .collect();
        self.absorb(count, failures);
    }

    fn count(&mut self, key: String, by: u64) {
        *self.counts.entry(key).or_insert(0) += by;
    }

    fn finish(self, suite: Suite, p: &VerifyParams) -> Report {
        Report {
            schema: SCHEMA,
            suite: suite.name().to_string(),
            seed: p.seed,
            bound: p.bound,
            trials: self.trials,
            passed: self.failure_count == 0,
            failure_count: self.failure_count,
            failures: self.failures,
            counts: self.counts,
        }
    }
}

pub fn run_suite(suite: Suite, p: &VerifyParams) -> Result<Report, VerifyError> {
    if p.bound == 0 {
        return Err(VerifyError::InvalidParams("bound must be positive".into()));
    }
    let mut t = Tally::new();
    match suite {
        Suite::OrdinalAxioms => ordinal_axioms(p, &mut t),
        Suite::BalphaAssoc => balpha_assoc(p, &mut t),
        Suite::BicyclicOracle => bicyclic_oracle(p, &mut t),
        Suite::IsoHomomorphism => iso_homomorphism(p, &mut t)?,
        Suite::TopologyWitnesses => topology_witnesses(p, &mut t)?,
        Suite::Separation => separation(p, &mut t)?,
        Suite::Boxes => boxes(p, &mut t)?,
        Suite::Lattice => lattice(p, &mut t)?,
        Suite::All => return run_all(p),
    }
    Ok(t.finish(suite, p))
}

fn run_all(p: &VerifyParams) -> Result<Report, VerifyError> {
    let mut t = Tally::new();
    for suite in Suite::INDIVIDUAL {
        let r = run_suite(suite, p)?;
        let name = suite.name();
        let listed = r.failures.len() as u64;
        let failures = r
            .failures
            .into_iter()
            .map(|f| Failure {
                inputs: format!("[{name}] {}", f.inputs),
                ..f
            })
            .collect();
        t.absorb(r.trials, failures);
        t.failure_count += r.failure_count - listed;
        for (k, v) in r.counts {
            t.count(format!("{name}/{k}"), v);
        }
        t.count(format!("{name}/failures"), r.failure_count);
    }
    Ok(t.finish(Suite::All, p))
}

fn rng_for(p: &VerifyParams, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    rng.set_stream(stream);
    rng
}

fn level_spec(
    p: &VerifyParams,
    alpha: Level,
    rng: &mut ChaCha8Rng,
) -> Result<TopologySpec, VerifyError> {
    match p.i {
        Some(i) => {
            TopologySpec::new(i, alpha).map_err(|e| VerifyError::InvalidParams(e.to_string()))
        }
        None => Ok(sample::spec_for(rng, alpha)),
    }
}

fn level_stream(alpha: Level) -> u64 {
    match alpha {
        Level::Finite(n) => n,
        Level::Omega => u64::MAX,
    }
}

// ---------------------------------------------------------------- ordinals

fn ordinal_laws(x: &Ordinal, y: &Ordinal, z: &Ordinal) -> Check {
    let inputs = format!("x={x}; y={y}; z={z}");
    let add = |a: &Ordinal, b: &Ordinal| or_fail(&inputs, a.checked_add(b));
    let sub = |a: &Ordinal, b: &Ordinal| or_fail(&inputs, a.sub_left(b));

    let xy = add(x, y)?;
    let yz = add(y, z)?;
    let lhs = add(&xy, z)?;
    let rhs = add(x, &yz)?;
    expect_eq(format!("associativity: {inputs}"), &lhs, &rhs)?;

    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let diff = sub(hi, lo)?;
    expect_eq(format!("b + (a - b) = a: {inputs}"), hi, &add(lo, &diff)?)?;
    expect_eq(format!("(b + c) - b = c: {inputs}"), y, &sub(&xy, x)?)?;

    if y < z {
        let xz = add(x, z)?;
        expect(
            format!("right strict monotonicity: {inputs}"),
            "x + y < x + z",
            xy < xz,
        )?;
    }
    if x <= y {
        let xz = add(x, z)?;
        let yz2 = add(y, z)?;
        expect(
            format!("left weak monotonicity: {inputs}"),
            "x + z <= y + z",
            xz <= yz2,
        )?;
    }
    for o in [&xy, &yz, &lhs, &diff] {
        expect(
            format!("canonical output: {inputs}"),
            "canonical CNF",
            o.is_canonical(),
        )?;
    }
    for o in [x, y, z] {
        let back = or_fail(&inputs, parse_ordinal(&o.to_string()))?;
        expect_eq(format!("round trip: {inputs}"), o, &back)?;
    }
    Ok(())
}

fn ordinal_axioms(p: &VerifyParams, t: &mut Tally) {
    let mut rng = rng_for(p, 0);
    let cases: Vec<[Ordinal; 3]> = (0..p.trials)
        .map(|_| std::array::from_fn(|_| sample::small_cnf(&mut rng, ORDINAL_MAX_COEFF)))
        .collect();
    t.run(&cases, |[x, y, z]| ordinal_laws(x, y, z));

    // Every ω·a + b with a < 10 and b ≤ bound, all triples.
    let grid: Vec<Ordinal> = (0..ORDINAL_OMEGA_MULTIPLES)
        .flat_map(|a| (0..=p.bound).map(move |b| Ordinal::from_finite_coeffs(&[b, a])))
        .collect();
    let n = grid.len() as u64;
    t.run_range(n * n * n, |k| {
        let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
        ordinal_laws(&grid[x as usize], &grid[y as usize], &grid[z as usize])
    });
}

// ---------------------------------------------------------------- B_α

fn balpha_laws(x: &BAlphaElement, y: &BAlphaElement, z: &BAlphaElement) -> Check {
    let inputs = format!("level {}: x={x}; y={y}; z={z}", x.level());
    let mul = |a: &BAlphaElement, b: &BAlphaElement| or_fail(&inputs, a.mul(b));
    let lhs = mul(&mul(x, y)?, z)?;
    let rhs = mul(x, &mul(y, z)?)?;
    expect_eq(format!("associativity: {inputs}"), &lhs, &rhs)?;

    let xi = x.inverse();
    expect_eq(
        format!("x x^-1 x = x: {inputs}"),
        x,
        &mul(&mul(x, &xi)?, x)?,
    )?;
    expect_eq(
        format!("x^-1 x x^-1 = x^-1: {inputs}"),
        &xi,
        &mul(&mul(&xi, x)?, &xi)?,
    )?;

    let e = or_fail(&inputs, x.sibling(x.left().clone(), x.left().clone()))?;
    let f = or_fail(&inputs, x.sibling(y.right().clone(), y.right().clone()))?;
    let ef = mul(&e, &f)?;
    expect_eq(format!("idempotents commute: {inputs}"), &ef, &mul(&f, &e)?)?;
    expect(
        format!("product of idempotents: {inputs}"),
        "idempotent",
        ef.is_idempotent(),
    )
}

type BruckTriple = [BruckElement<BAlphaElement>; 3];

fn bruck_laws([x, y, z]: &BruckTriple) -> Check {
    let inputs = format!("x={x}; y={y}; z={z}");
    let mul = |a: &BruckElement<BAlphaElement>, b: &BruckElement<BAlphaElement>| {
        or_fail(&inputs, bruck_mul(a, b, |s, t| s.mul(t)))
    };
    let lhs = mul(&mul(x, y)?, z)?;
    let rhs = mul(x, &mul(y, z)?)?;
    expect_eq(format!("bruck associativity: {inputs}"), &lhs, &rhs)
}

fn balpha_levels(p: &VerifyParams) -> Vec<Level> {
    match p.alpha {
        Some(a) => vec![a],
        None => vec![
            Level::Finite(1),
            Level::Finite(2),
            Level::Finite(3),
            Level::Omega,
        ],
    }
}

fn bruck_element(rng: &mut ChaCha8Rng, level: &Ordinal, max: u64) -> BruckElement<BAlphaElement> {
    if rng.gen_ratio(1, 10) {
        BruckElement::Zero
    } else {
        let payload = sample::element(rng, level, max);
        BruckElement::triple(rng.gen_range(0..=max), payload, rng.gen_range(0..=max))
    }
}

fn balpha_assoc(p: &VerifyParams, t: &mut Tally) {
    for alpha in balpha_levels(p) {
        let level = alpha.to_ordinal();
        if alpha == Level::Finite(1) {
            let n = p.bound + 1;
            let side = n * n;
            t.run_range(side * side * side, |k| {
                let el = |c: u64| BAlphaElement::finite(1, c / n, c % n).expect("level 1");
                balpha_laws(
                    &el(k / (side * side)),
                    &el((k / side) % side),
                    &el(k % side),
                )
            });
        }
        let mut rng = rng_for(p, level_stream(alpha));
        let cases: Vec<[BAlphaElement; 3]> = (0..p.trials)
            .map(|_| std::array::from_fn(|_| sample::element(&mut rng, &level, p.bound)))
            .collect();
        t.run(&cases, |[x, y, z]| balpha_laws(x, y, z));

        let bruck: Vec<BruckTriple> = (0..p.trials)
            .map(|_| std::array::from_fn(|_| bruck_element(&mut rng, &level, p.bound)))
            .collect();
        t.run(&bruck, bruck_laws);
    }
}

fn bicyclic_oracle(p: &VerifyParams, t: &mut Tally) {
    let n = p.bound + 1;
    t.run_range(n * n * n * n, |k| {
        let (a, b, c, d) = (k / (n * n * n), (k / (n * n)) % n, (k / n) % n, k % n);
        let inputs = format!("({a}, {b})·({c}, {d})");
        let x = or_fail(&inputs, BAlphaElement::finite(1, a, b))?;
        let y = or_fail(&inputs, BAlphaElement::finite(1, c, d))?;
        let word = BicyclicWord::normal_form(a as usize, b as usize)
            .concat(&BicyclicWord::normal_form(c as usize, d as usize));
        let oracle = bicyclic_reduce(&word);
        expect_eq(
            format!("{inputs}, word {word}"),
            &oracle,
            &or_fail(&inputs, x.mul(&y))?,
        )
    });
}

// ---------------------------------------------------------------- iso

fn finite_levels(p: &VerifyParams, default: &[u64]) -> Result<Vec<u64>, VerifyError> {
    match p.alpha {
        Some(Level::Finite(a)) => Ok(vec![a]),
        Some(Level::Omega) => Err(VerifyError::InvalidParams(
            "this suite samples finite levels only".into(),
        )),
        None => Ok(default.to_vec()),
    }
}

fn iso_laws(
    alpha: u64,
    x: &BAlphaElement,
    y: &BAlphaElement,
    tag: CaseTag,
) -> Result<CaseTag, Failure> {
    let a = Ordinal::nat(alpha);
    let inputs = format!("alpha={alpha}: x={x}; y={y}");
    let fx = or_fail(&inputs, to_bruck(&a, x))?;
    let fy = or_fail(&inputs, to_bruck(&a, y))?;
    expect_eq(
        format!("from_bruck(to_bruck(x)) = x: {inputs}"),
        x,
        &or_fail(&inputs, from_bruck(&a, &fx))?,
    )?;
    expect_eq(
        format!("from_bruck(to_bruck(y)) = y: {inputs}"),
        y,
        &or_fail(&inputs, from_bruck(&a, &fy))?,
    )?;

    let xy = or_fail(&inputs, x.mul(y))?;
    let prod = or_fail(&inputs, bruck_mul(&fx, &fy, |s, t| s.mul(t)))?;
    expect_eq(
        format!("to_bruck(x·y) = to_bruck(x)·to_bruck(y): {inputs}"),
        &or_fail(&inputs, to_bruck(&a, &xy))?,
        &prod,
    )?;
    expect_eq(
        format!("commuting square: {inputs}"),
        &xy,
        &or_fail(&inputs, from_bruck(&a, &prod))?,
    )?;
    expect_eq(
        format!("to_bruck(from_bruck(f(x·y))) round trip: {inputs}"),
        &prod,
        &or_fail(
            &inputs,
            to_bruck(&a, &or_fail(&inputs, from_bruck(&a, &prod))?),
        )?,
    )?;

    let case = or_fail(&inputs, classify_case(x, y, &a))?;
    expect_eq(format!("sampled case: {inputs}"), &tag, &case)?;
    Ok(case)
}

fn iso_homomorphism(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    for alpha in finite_levels(p, &[1, 2, 3])? {
        let mut rng = rng_for(p, alpha);
        let cases: Vec<(BAlphaElement, BAlphaElement, CaseTag)> = (0..p.trials)
            .map(|k| {
                let tag = CaseTag::ALL[(k % 4) as usize];
                let (x, y) = sample::pair_for_case(&mut rng, alpha, tag, p.bound);
                (x, y, tag)
            })
            .collect();
        let results: Vec<Result<CaseTag, Failure>> = cases
            .par_iter()
            .map(|(x, y, tag)| iso_laws(alpha, x, y, *tag))
            .collect();
        let mut hits = [0u64; 4];
        let mut failures = Vec::new();
        for r in results {
            match r {
                Ok(case) => hits[case.index()] += 1,
                Err(f) => failures.push(f),
            }
        }
        t.absorb(cases.len() as u64, failures);
        for tag in CaseTag::ALL {
            t.count(format!("alpha={alpha}/{tag}"), hits[tag.index()]);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- topology

struct WitnessCase {
    spec: TopologySpec,
    l: BAlphaElement,
    r: BAlphaElement,
    x: BAlphaElement,
    n: u64,
}

fn witness_laws(c: &WitnessCase, bound: u64) -> Result<PointClass, Failure> {
    let inputs = format!("{}: l={}; r={}; x={}; n={}", c.spec, c.l, c.r, c.x, c.n);
    let image = or_fail(&inputs, c.l.mul(&c.x).and_then(|lx| lx.mul(&c.r)))?;
    let target = or_fail(&inputs, base_nbhd(&c.spec, &image, c.n))?;
    let inputs = format!("{inputs}; target={target}");
    let w = or_fail(
        &inputs,
        continuity_witness(&c.spec, &c.l, &c.r, &c.x, &target),
    )?;
    expect_eq(format!("witness center: {inputs}"), &c.x, w.center())?;
    or_fail(&inputs, w.validate(&c.spec))?;
    for b in [4.min(bound), bound] {
        let check = or_fail(&inputs, verify_shift_inclusion(&c.l, &w, &c.r, &target, b))?;
        if let ShiftCheck::Counterexample(v) = check {
            return Err(failure(
                format!("shift inclusion at bound {b}: {inputs}; witness={w}"),
                "ok",
                format!("counterexample {v}"),
            ));
        }
    }
    or_fail(&inputs, classify_point(&c.spec, &c.x))
}

/// Limit points with coefficients at most `max_coeff`, grouped with their level.
fn limit_points(spec: &TopologySpec, max_coeff: u64) -> Vec<(BAlphaElement, u64)> {
    let cap = sample::exp_cap(spec.alpha());
    let coords = crate::topology::truncated_below(cap, max_coeff);
    let level = spec.carrier_level();
    let mut out = Vec::new();
    for a in &coords {
        for b in &coords {
            let (Some(j), Some(k)) = (a.last_finite_exponent(), b.last_finite_exponent()) else {
                continue;
            };
            if j == k && spec.is_limit_level(j) {
                out.push((
                    BAlphaElement::new(&level, a.clone(), b.clone()).expect("below carrier"),
                    j,
                ));
            }
        }
    }
    out
}

/// Every truncated member of every `Base{p, j, n}`, `n ≤ max_n`, lies in the
/// neighborhood forced on `p` by shift-continuity.
fn forced_laws(p: &BAlphaElement, j: u64, max_n: u64, bound: u64) -> Check {
    let inputs = format!("p={p}; j={j}");
    for n in 0..=max_n {
        let base = NbhdDescriptor::Base {
            center: p.clone(),
            level: j,
            threshold: n,
        };
        for m in base.members_truncated(bound) {
            let inside = or_fail(&inputs, forced_nbhd_contains(p, &m))?;
            expect(
                format!("base member {m} in forced nbhd: {inputs}; n={n}"),
                "member",
                inside,
            )?;
        }
    }
    Ok(())
}

/// `h_inv(p, ·)` and `h_map(p, ·)` are mutually inverse on the truncated
/// rectangle below `p` and carry `Base{p, j, n}` onto `Base{(ω^j, ω^j), j, n}`.
fn transport_laws(p: &BAlphaElement, j: u64, max_n: u64, bound: u64) -> Check {
    let inputs = format!("p={p}; j={j}");
    let a_low = or_fail(&inputs, decrement_last(p.left()))?;
    let b_low = or_fail(&inputs, decrement_last(p.right()))?;
    let w = Ordinal::finite_monomial(j, 1);
    let standard = or_fail(&inputs, p.sibling(w.clone(), w))?;
    expect_eq(
        format!("h_inv(p, p): {inputs}"),
        &standard,
        &or_fail(&inputs, h_inv(p, p))?,
    )?;
    expect_eq(
        format!("h_map(p, corner): {inputs}"),
        p,
        &or_fail(&inputs, h_map(p, &standard))?,
    )?;

    let locals = crate::topology::truncated_below(j, bound);
    for delta in &locals {
        for gamma in &locals {
            let local = or_fail(&inputs, p.sibling(gamma.clone(), delta.clone()))?;
            let q = or_fail(&inputs, p.sibling(&a_low + gamma, &b_low + delta))?;
            let at = format!("{inputs}; q={q}");
            expect_eq(
                format!("h_inv(p, q): {at}"),
                &local,
                &or_fail(&at, h_inv(p, &q))?,
            )?;
            expect_eq(
                format!("h_map(p, h_inv(p, q)): {at}"),
                &q,
                &or_fail(&at, h_map(p, &local))?,
            )?;
            for n in 0..=max_n {
                let here = NbhdDescriptor::Base {
                    center: p.clone(),
                    level: j,
                    threshold: n,
                };
                let there = NbhdDescriptor::Base {
                    center: standard.clone(),
                    level: j,
                    threshold: n,
                };
                let lhs = or_fail(&at, nbhd_contains(&here, &q))?;
                let rhs = or_fail(&at, nbhd_contains(&there, &local))?;
                expect_eq(format!("transport membership: {at}; n={n}"), &lhs, &rhs)?;
            }
        }
    }
    Ok(())
}

fn witness_levels(p: &VerifyParams) -> Vec<(Level, u64)> {
    match p.alpha {
        Some(a) => vec![(a, p.trials)],
        None => vec![
            (Level::Finite(1), p.trials),
            (Level::Finite(2), p.trials),
            (Level::Finite(3), p.trials),
            (Level::Omega, (p.trials / 20).max(1)),
        ],
    }
}

fn continuity(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    let max_n = p.n.unwrap_or(DEFAULT_MAX_THRESHOLD);
    for (alpha, trials) in witness_levels(p) {
        let mut rng = rng_for(p, level_stream(alpha));
        let mut cases = Vec::new();
        for _ in 0..trials {
            let spec = level_spec(p, alpha, &mut rng)?;
            let level = spec.carrier_level();
            cases.push(WitnessCase {
                l: sample::element(&mut rng, &level, POINT_MAX_COEFF),
                r: sample::element(&mut rng, &level, POINT_MAX_COEFF),
                x: sample::point(&mut rng, &spec, POINT_MAX_COEFF),
                n: p.n.unwrap_or_else(|| rng.gen_range(0..=max_n)),
                spec,
            });
        }
        let results: Vec<Result<PointClass, Failure>> =
            cases.par_iter().map(|c| witness_laws(c, p.bound)).collect();
        let mut limits = 0;
        let mut failures = Vec::new();
        for r in results {
            match r {
                Ok(PointClass::Limit(_)) => limits += 1,
                Ok(PointClass::Isolated) => {}
                Err(f) => failures.push(f),
            }
        }
        t.absorb(cases.len() as u64, failures);
        t.count(format!("alpha={alpha}/limit-configs"), limits);
    }
    Ok(())
}

/// Runs `laws` on every limit point of `τ_{α,α}`, `α ∈ {2, 3}`, with
/// coefficients at most 4.
fn small_limit_points(
    p: &VerifyParams,
    t: &mut Tally,
    laws: impl Fn(&BAlphaElement, u64, u64, u64) -> Check + Sync,
) {
    let max_n = p.n.unwrap_or(DEFAULT_MAX_THRESHOLD);
    for alpha in [2, 3] {
        if p.alpha.is_some_and(|a| a != Level::Finite(alpha)) {
            continue;
        }
        let spec = TopologySpec::finite(alpha, alpha).expect("i = alpha");
        let points = limit_points(&spec, POINT_MAX_COEFF);
        t.count(format!("alpha={alpha}/points"), points.len() as u64);
        t.run(&points, |(q, j)| laws(q, *j, max_n, p.bound));
    }
}

fn topology_witnesses(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    continuity(p, t)?;
    small_limit_points(p, t, forced_laws);
    small_limit_points(p, t, transport_laws);
    Ok(())
}

/// Parts of the `topology-witnesses` suite, runnable on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessPart {
    /// Random shift configurations checked by truncated enumeration.
    Continuity,
    /// Basic neighborhoods sit inside the forced neighborhoods.
    ForcedContainment,
    /// Membership is transported by the translation maps.
    Transport,
}

pub fn run_witness_part(part: WitnessPart, p: &VerifyParams) -> Result<Report, VerifyError> {
    let mut t = Tally::new();
    match part {
        WitnessPart::Continuity => continuity(p, &mut t)?,
        WitnessPart::ForcedContainment => small_limit_points(p, &mut t, forced_laws),
        WitnessPart::Transport => small_limit_points(p, &mut t, transport_laws),
    }
    Ok(t.finish(Suite::TopologyWitnesses, p))
}

fn separation_laws(spec: &TopologySpec, x: &BAlphaElement, y: &BAlphaElement, bound: u64) -> Check {
    let inputs = format!("{spec}: p={x}; q={y}");
    let (dp, dq) = or_fail(&inputs, hausdorff_witness(spec, x, y))?;
    let inputs = format!("{inputs}; witnesses {dp} / {dq}");
    expect_eq(format!("first center: {inputs}"), x, dp.center())?;
    expect_eq(format!("second center: {inputs}"), y, dq.center())?;
    or_fail(&inputs, dp.validate(spec))?;
    or_fail(&inputs, dq.validate(spec))?;
    expect(
        format!("exact disjointness: {inputs}"),
        "disjoint",
        or_fail(&inputs, descriptors_disjoint(&dp, &dq))?,
    )?;
    for (d, other) in [(&dp, &dq), (&dq, &dp)] {
        for m in d.members_truncated(bound) {
            if or_fail(&inputs, nbhd_contains(other, &m))? {
                return Err(failure(
                    format!("truncated disjointness: {inputs}"),
                    "disjoint",
                    format!("common member {m}"),
                ));
            }
        }
    }
    Ok(())
}

/// A second point, often close to `x` so that neighborhoods interact.
fn partner(rng: &mut ChaCha8Rng, spec: &TopologySpec, x: &BAlphaElement) -> BAlphaElement {
    match rng.gen_range(0..3) {
        0 => sample::point(rng, spec, POINT_MAX_COEFF),
        1 => sample::point(rng, spec, 1),
        _ => {
            let d = base_nbhd(spec, x, 0).expect("same level");
            let members = d.members_truncated(2);
            members[rng.gen_range(0..members.len())].clone()
        }
    }
}

fn separation(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    let levels = match p.alpha {
        Some(a) => vec![a],
        None => vec![Level::Finite(2), Level::Finite(3)],
    };
    for alpha in levels {
        let mut rng = rng_for(p, level_stream(alpha));
        let mut cases = Vec::new();
        while (cases.len() as u64) < p.trials {
            let spec = level_spec(p, alpha, &mut rng)?;
            let max = if rng.gen_bool(0.5) {
                1
            } else {
                POINT_MAX_COEFF
            };
            let x = sample::point(&mut rng, &spec, max);
            let y = partner(&mut rng, &spec, &x);
            if x != y {
                cases.push((spec, x, y));
            }
        }
        t.run(&cases, |(spec, x, y)| separation_laws(spec, x, y, p.bound));
    }
    Ok(())
}

fn box_laws(spec: &TopologySpec, j: u64, n: u64, bound: u64) -> Check {
    let inputs = format!("{spec}: j={j}; n={n}");
    let square = or_fail(&inputs, uncovered_boxes(spec, j, n))?;
    let w = Ordinal::finite_monomial(j, 1);
    let level = spec.carrier_level();
    let center = or_fail(&inputs, BAlphaElement::new(&level, w.clone(), w))?;
    let d = NbhdDescriptor::Base {
        center,
        level: j,
        threshold: n,
    };
    let fillers = crate::topology::truncated_below(j - 1, bound);
    let range = bound.max(n + 2);
    for bp in 0..=range {
        for bq in 0..=range {
            let at = format!("{inputs}; box [{bp}, {bq}]");
            let mut covered = true;
            for g in &fillers {
                for h in &fillers {
                    let q = or_fail(
                        &at,
                        BAlphaElement::new(
                            &level,
                            &Ordinal::finite_monomial(j - 1, bp) + g,
                            &Ordinal::finite_monomial(j - 1, bq) + h,
                        ),
                    )?;
                    covered &= or_fail(&at, nbhd_contains(&d, &q))?;
                }
            }
            let listed = square.contains(BoxIndex { n: bp, m: bq });
            expect_eq(
                format!("box listed as uncovered iff not contained: {at}"),
                &!covered,
                &listed,
            )?;
            if bp.max(bq) > n {
                let corner = or_fail(
                    &at,
                    BAlphaElement::new(
                        &level,
                        Ordinal::finite_monomial(j - 1, bp),
                        Ordinal::finite_monomial(j - 1, bq),
                    ),
                )?;
                expect(
                    format!("corner element {corner} is a member: {at}"),
                    "member",
                    or_fail(&at, nbhd_contains(&d, &corner))?,
                )?;
            }
        }
    }
    Ok(())
}

fn boxes(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    let alpha = p.alpha.unwrap_or(Level::Finite(3));
    let i = p.i.unwrap_or(alpha);
    let spec =
        TopologySpec::new(i, alpha).map_err(|e| VerifyError::InvalidParams(e.to_string()))?;
    let ns: Vec<u64> = match p.n {
        Some(n) => vec![n],
        None => (0..=DEFAULT_MAX_THRESHOLD).collect(),
    };
    let cases: Vec<(u64, u64)> = [1, 2]
        .into_iter()
        .filter(|&j| spec.is_limit_level(j))
        .flat_map(|j| ns.iter().map(move |&n| (j, n)))
        .collect();
    if cases.is_empty() {
        return Err(VerifyError::InvalidParams(format!(
            "{spec} has no limit level 1 or 2"
        )));
    }
    t.run(&cases, |&(j, n)| box_laws(&spec, j, n, p.bound));
    Ok(())
}

fn lattice_family(alpha: Level, cap: u64) -> Result<Vec<TopologySpec>, VerifyError> {
    enumerate_topologies(&alpha.to_ordinal())
        .map(|f| f.capped(cap))
        .map_err(|e| VerifyError::InvalidParams(e.to_string()))
}

fn refinement_laws(s: &TopologySpec, u: &TopologySpec) -> Check {
    let inputs = format!("{s} vs {u}");
    let got = topology_finer(s, u);
    let class = |spec: &TopologySpec, c: &BAlphaElement| or_fail(&inputs, classify_point(spec, c));
    if s.alpha() != u.alpha() {
        return expect_eq(inputs, &Refinement::IncomparableLevels, &got);
    }
    match (s.i().cmp(&u.i()), &got) {
        (std::cmp::Ordering::Equal, Refinement::Equal) => Ok(()),
        (std::cmp::Ordering::Less, Refinement::StrictlyFiner { certificate }) => {
            let fine = class(s, certificate)?;
            let coarse = class(u, certificate)?;
            expect(
                format!("certificate {certificate}: {inputs}"),
                "isolated in the finer, limit in the coarser",
                fine == PointClass::Isolated && matches!(coarse, PointClass::Limit(_)),
            )
        }
        (std::cmp::Ordering::Greater, Refinement::StrictlyCoarser { certificate }) => {
            let coarse = class(s, certificate)?;
            let fine = class(u, certificate)?;
            expect(
                format!("certificate {certificate}: {inputs}"),
                "limit in the coarser, isolated in the finer",
                fine == PointClass::Isolated && matches!(coarse, PointClass::Limit(_)),
            )
        }
        (order, _) => Err(failure(inputs, format!("index order {order:?}"), got)),
    }
}

fn lattice(p: &VerifyParams, t: &mut Tally) -> Result<(), VerifyError> {
    let cap = p.n.unwrap_or(DEFAULT_LATTICE_CAP);
    let levels = match p.alpha {
        Some(a) => vec![a],
        None => vec![
            Level::Finite(1),
            Level::Finite(2),
            Level::Finite(3),
            Level::Omega,
        ],
    };
    let mut all = Vec::new();
    for &alpha in &levels {
        let family = lattice_family(alpha, cap)?;
        t.count(format!("alpha={alpha}/members"), family.len() as u64);
        let pairs: Vec<(TopologySpec, TopologySpec)> = family
            .iter()
            .flat_map(|s| family.iter().map(move |u| (*s, *u)))
            .collect();
        t.run(&pairs, |(s, u)| refinement_laws(s, u));
        all.extend(family);

        // Discreteness of τ_{1,α}, sampled with points shaped like limit points.
        let mut rng = rng_for(p, level_stream(alpha));
        let discrete = TopologySpec::new(Level::Finite(1), alpha).expect("1 <= alpha");
        let shaped = TopologySpec::new(alpha, alpha).expect("alpha <= alpha");
        let points: Vec<BAlphaElement> = (0..p.trials)
            .map(|_| sample::point(&mut rng, &shaped, POINT_MAX_COEFF))
            .collect();
        t.run(&points, |x| {
            let class = or_fail(&x.to_string(), classify_point(&discrete, x))?;
            expect_eq(format!("{discrete}: {x}"), &PointClass::Isolated, &class)
        });
    }
    let firsts: Vec<(TopologySpec, TopologySpec)> = all
        .iter()
        .flat_map(|s| all.iter().map(move |u| (*s, *u)))
        .filter(|(s, u)| s.alpha() != u.alpha())
        .collect();
    t.run(&firsts, |(s, u)| refinement_laws(s, u));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suite: Suite) -> Report {
        let p = VerifyParams {
            trials: 60,
            bound: 3,
            seed: 11,
            ..VerifyParams::default()
        };
        run_suite(suite, &p).unwrap()
    }

    #[test]
    fn every_suite_passes_small() {
        for suite in Suite::INDIVIDUAL {
            let r = quick(suite);
            assert!(r.passed, "{}: {:?}", suite.name(), r.failures);
            assert!(r.trials > 0);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(quick(Suite::Separation), quick(Suite::Separation));
        assert_eq!(
            quick(Suite::IsoHomomorphism).to_json(),
            quick(Suite::IsoHomomorphism).to_json()
        );
    }

    #[test]
    fn aggregate_counts_trials() {
        let total: u64 = Suite::INDIVIDUAL.iter().map(|s| quick(*s).trials).sum();
        let all = quick(Suite::All);
        assert_eq!(all.trials, total);
        assert!(all.passed);
    }

    #[test]
    fn iso_rejects_omega() {
        let p = VerifyParams {
            alpha: Some(Level::Omega),
            ..VerifyParams::default()
        };
        assert!(run_suite(Suite::IsoHomomorphism, &p).is_err());
    }
}
