//! Batch identity suites behind the CLI `verify` subcommand: fixed golden
//! checks plus randomized instances, reported check by check.
//!
//! Randomness is seeded, so identical invocations produce identical
//! reports and exit codes. The optional [`Fault`] hook deliberately breaks
//! one comparison; it exists so the test harness can prove the suites
//! actually fail when the code under test is wrong.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cubic::CubicInput;
use crate::kummer;
use crate::quad::{QuadCurveInput, TwistData};
use crate::quartic::QuarticInput;
use crate::rational::{rat, rat_int};

/// Default RNG seed for the randomized parts of the suites.
pub const DEFAULT_SEED: u64 = 0x504f_494e;

/// Deliberate corruption for negative-control tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// perturb the closed-form `A₁` before comparing it with the `u²¹v`
    /// coefficient of `Q`
    QuadWrongA1,
}

/// Options for a suite run.
#[derive(Debug, Clone, Copy)]
pub struct SuiteOptions {
    pub samples: u32,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            samples: 100,
            seed: DEFAULT_SEED,
            fault: None,
        }
    }
}

/// One named check with its outcome.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// on failure, enough data to replay the failing instance
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str) -> Self {
        CheckResult {
            name: name.into(),
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            passed: false,
            detail,
        }
    }

    fn expect(name: &str, ok: bool, detail: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name)
        } else {
            Self::fail(name, detail())
        }
    }
}

/// A full suite report.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Which suite to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Quad,
    Cubic,
    Quartic,
    Genus,
    All,
}

pub fn run_suite(kind: SuiteKind, opts: &SuiteOptions) -> Vec<SuiteReport> {
    match kind {
        SuiteKind::Quad => vec![quad_suite(opts)],
        SuiteKind::Cubic => vec![cubic_suite(opts)],
        SuiteKind::Quartic => vec![quartic_suite(opts)],
        SuiteKind::Genus => vec![genus_suite()],
        SuiteKind::All => vec![
            quad_suite(opts),
            cubic_suite(opts),
            quartic_suite(opts),
            genus_suite(),
        ],
    }
}

/// A random rational with numerator and denominator bounded by `height`.
fn random_rat(rng: &mut ChaCha8Rng, height: i64) -> BigRational {
    rat(rng.gen_range(-height..=height), rng.gen_range(1..=height))
}

/// Draws a random irreducible cubic input with coefficient heights ≤ 10.
pub fn random_cubic_input(rng: &mut ChaCha8Rng) -> CubicInput {
    loop {
        let a = random_rat(rng, 10);
        let b = random_rat(rng, 10);
        let c = random_rat(rng, 10);
        if let Ok(input) = CubicInput::new(a, b, c) {
            return input;
        }
    }
}

/// Draws a random valid quadratic twist input.
pub fn random_quad_input(rng: &mut ChaCha8Rng) -> QuadCurveInput {
    let squarefree_ms = [2i64, 3, 5, 6, 7, 10, 11, 13, -1, -2, -3, -5];
    loop {
        let m = squarefree_ms[rng.gen_range(0..squarefree_ms.len())];
        let a = random_rat(rng, 9);
        let b = random_rat(rng, 9);
        let c = random_rat(rng, 9);
        let d = random_rat(rng, 9);
        if c.is_zero() || d.is_zero() {
            continue;
        }
        if let Ok(input) = QuadCurveInput::new(BigInt::from(m), a, b, c, d) {
            return input;
        }
    }
}

/// Draws a random irreducible quartic input.
pub fn random_quartic_input(rng: &mut ChaCha8Rng) -> QuarticInput {
    loop {
        let p = random_rat(rng, 8);
        let q = random_rat(rng, 8);
        let r = random_rat(rng, 8);
        let s = random_rat(rng, 8);
        if let Ok(input) = QuarticInput::new(p, q, r, s) {
            return input;
        }
    }
}

fn quad_suite(opts: &SuiteOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let worked = QuadCurveInput::new(
        BigInt::from(2),
        rat_int(1),
        rat_int(1),
        rat_int(1),
        rat_int(1),
    )
    .expect("worked instance is valid");
    let data = TwistData::new(&worked).expect("twist data for the worked instance");
    checks.push(CheckResult::expect(
        "quad.q_degree_22",
        data.q_poly().degree() == 22,
        || format!("degree = {}", data.q_poly().degree()),
    ));
    checks.push(CheckResult::expect(
        "quad.q_value_at_1_1",
        data.q_poly().eval(&rat_int(1), &rat_int(1)) == rat_int(-139928683),
        || format!("Q(1,1) = {}", data.q_poly().eval(&rat_int(1), &rat_int(1))),
    ));
    checks.push(CheckResult::expect(
        "quad.x_gamma_at_1_1",
        data.x_gamma(&rat_int(1), &rat_int(1)) == Ok(rat(-169, 29)),
        || "x_gamma mismatch".into(),
    ));
    let forged = data.forge(&rat_int(1), &rat_int(1), 24);
    checks.push(CheckResult::expect(
        "quad.forge_worked_instance",
        forged.is_ok(),
        || format!("{forged:?}"),
    ));

    // randomized structural identities; the fault hook corrupts the
    // closed-form A1 to prove this check can fail
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = opts.samples.max(1).min(200);
    let mut failure = None;
    for _ in 0..samples {
        let input = random_quad_input(&mut rng);
        let data = match TwistData::new(&input) {
            Ok(d) => d,
            Err(e) => {
                failure = Some(format!("twist construction failed: {e} for {input:?}"));
                break;
            }
        };
        let ok_deg = data.q_poly().degree() == 22;
        let ok_rel = data.q_poly().twist_symmetric(input.m(), 11);
        let (a0, mut a1) = data.leading_coefficients();
        if opts.fault == Some(Fault::QuadWrongA1) {
            a1 += rat_int(1);
        }
        let ok_a0 = data.q_poly().coeff(22) == a0;
        let ok_a1 = data.q_poly().coeff(21) == a1;
        if !(ok_deg && ok_rel && ok_a0 && ok_a1) {
            failure = Some(format!(
                "instance m={} (a,b,c,d)={:?}: deg22={ok_deg} rel2={ok_rel} A0={ok_a0} A1={ok_a1}",
                input.m(),
                input.parts()
            ));
            break;
        }
    }
    checks.push(CheckResult::expect(
        "quad.random_structural_identities",
        failure.is_none(),
        || failure.unwrap(),
    ));
    SuiteReport {
        suite: "quad".into(),
        checks,
    }
}

fn cubic_suite(opts: &SuiteOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let input = CubicInput::new(rat_int(0), rat_int(0), rat_int(2)).expect("t^3 - 2");
    checks.push(CheckResult::expect(
        "cubic.identity_cbrt2",
        input.verify_identity(),
        || "identity failed for t^3 - 2".into(),
    ));
    checks.push(CheckResult::expect(
        "cubic.n_value_at_1",
        input.n_poly().eval(&rat_int(1)) == rat(-357, 16),
        || format!("N(1) = {}", input.n_poly().eval(&rat_int(1))),
    ));
    let golden: Vec<BigInt> = [1i64, 2, 3]
        .iter()
        .filter_map(|&t| input.forge(&rat_int(t), 24).ok().map(|f| f.delta))
        .collect();
    checks.push(CheckResult::expect(
        "cubic.golden_deltas",
        golden == vec![BigInt::from(-357), BigInt::from(3), BigInt::from(3741)],
        || format!("deltas = {golden:?}"),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = opts.samples.max(1).min(500);
    let mut failure = None;
    for _ in 0..samples {
        let input = random_cubic_input(&mut rng);
        if !input.verify_identity() {
            let (a, b, c) = input.coefficients();
            failure = Some(format!("identity failed for a={a} b={b} c={c}"));
            break;
        }
    }
    checks.push(CheckResult::expect(
        "cubic.random_identities",
        failure.is_none(),
        || failure.unwrap(),
    ));
    SuiteReport {
        suite: "cubic".into(),
        checks,
    }
}

fn quartic_suite(opts: &SuiteOptions) -> SuiteReport {
    let mut checks = Vec::new();
    let phi5 = QuarticInput::new(rat_int(1), rat_int(1), rat_int(1), rat_int(1))
        .expect("the 5th cyclotomic polynomial is irreducible");
    checks.push(CheckResult::expect(
        "quartic.identity_phi5",
        phi5.verify_identity(),
        || "identity failed for the 5th cyclotomic".into(),
    ));
    let seed = phi5.seed(rat_int(3), rat_int(11)).expect("(3, 11) is a seed");
    let a = phi5.a_poly().eval(&seed.u, &seed.v);
    let b = phi5.b_poly().eval(&seed.u, &seed.v);
    checks.push(CheckResult::expect(
        "quartic.golden_seed_values",
        a == rat_int(4040) && b == rat_int(3135),
        || format!("A = {a}, B = {b}"),
    ));
    let profile = phi5.pole_profile();
    checks.push(CheckResult::expect(
        "quartic.pole_profile_phi5",
        matches!(&profile, Ok(p) if p.pole_orders == (6, 5, 6) && p.d_pole_order == 17),
        || format!("{profile:?}"),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let samples = opts.samples.max(1).min(200);
    let mut failure = None;
    for _ in 0..samples {
        let input = random_quartic_input(&mut rng);
        if !input.verify_identity() {
            failure = Some(format!("identity failed for {:?}", input.coefficients()));
            break;
        }
    }
    checks.push(CheckResult::expect(
        "quartic.random_identities",
        failure.is_none(),
        || failure.unwrap(),
    ));

    let profiles = (opts.samples / 5).clamp(3, 20);
    let mut failure = None;
    for _ in 0..profiles {
        let input = random_quartic_input(&mut rng);
        match input.pole_profile() {
            Ok(p) if p.pole_orders == (6, 5, 6) && p.d_pole_order == 17 => {}
            other => {
                failure = Some(format!("{:?} for {:?}", other, input.coefficients()));
                break;
            }
        }
    }
    checks.push(CheckResult::expect(
        "quartic.random_pole_profiles",
        failure.is_none(),
        || failure.unwrap(),
    ));
    SuiteReport {
        suite: "quartic".into(),
        checks,
    }
}

fn genus_suite() -> SuiteReport {
    let mut checks = Vec::new();
    let small = (
        kummer::genus(2),
        kummer::genus(3),
        kummer::genus(4),
        kummer::genus(5),
    );
    checks.push(CheckResult::expect(
        "genus.small_values",
        matches!(
            (&small.0, &small.1, &small.2, &small.3),
            (Ok(g2), Ok(g3), Ok(g4), Ok(g5))
                if g2.is_zero() && g3.is_zero() && *g4 == BigInt::from(1) && *g5 == BigInt::from(5)
        ),
        || format!("{small:?}"),
    ));
    let mut bad = None;
    for n in 2..=64 {
        if kummer::riemann_hurwitz_check(n) != Ok(true) {
            bad = Some(n);
            break;
        }
    }
    checks.push(CheckResult::expect(
        "genus.riemann_hurwitz_2_to_64",
        bad.is_none(),
        || format!("fails at n = {}", bad.unwrap()),
    ));
    SuiteReport {
        suite: "genus".into(),
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass_with_defaults() {
        let opts = SuiteOptions {
            samples: 10,
            ..SuiteOptions::default()
        };
        for report in run_suite(SuiteKind::All, &opts) {
            assert!(
                report.all_passed(),
                "suite {} failed: {:?}",
                report.suite,
                report
                    .checks
                    .iter()
                    .filter(|c| !c.passed)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn fault_injection_makes_quad_suite_fail() {
        let opts = SuiteOptions {
            samples: 5,
            seed: DEFAULT_SEED,
            fault: Some(Fault::QuadWrongA1),
        };
        let report = &run_suite(SuiteKind::Quad, &opts)[0];
        assert!(!report.all_passed());
        let failing: Vec<&str> = report
            .checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect();
        assert_eq!(failing, vec!["quad.random_structural_identities"]);
    }

    #[test]
    fn suites_are_deterministic() {
        let opts = SuiteOptions {
            samples: 5,
            ..SuiteOptions::default()
        };
        let a = run_suite(SuiteKind::Cubic, &opts);
        let b = run_suite(SuiteKind::Cubic, &opts);
        let names = |r: &[SuiteReport]| -> Vec<(String, bool)> {
            r.iter()
                .flat_map(|s| s.checks.iter().map(|c| (c.name.clone(), c.passed)))
                .collect()
        };
        assert_eq!(names(&a), names(&b));
    }
}
