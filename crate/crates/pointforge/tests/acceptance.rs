//! Acceptance suite: one test per criterion, each printing a PASS line
//! with its timing (visible with `--nocapture`). Tolerances are exact
//! equalities throughout; the runtime budgets are asserted directly.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use pointforge::certificate::{
    search_and_forge, verify_certificate_json, CertificateStatus, CurveDescription, SearchLimits,
};
use pointforge::cubic::CubicInput;
use pointforge::elliptic::TorsionVerdict;
use pointforge::kummer;
use pointforge::quad::{QuadCurveInput, TwistData};
use pointforge::quartic::QuarticInput;
use pointforge::rational::{rat, rat_int};
use pointforge::suites::{random_cubic_input, random_quad_input, random_quartic_input};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn budget(name: &str, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    assert!(
        elapsed < limit,
        "{name}: runtime {elapsed:?} exceeds budget {limit:?}"
    );
    println!("{name} PASS ({elapsed:?})");
}

#[test]
fn criterion_1_cubic_identity_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..100 {
        let input = random_cubic_input(&mut rng);
        assert!(
            input.verify_identity(),
            "identity failed for {:?}",
            input.coefficients()
        );
    }
    budget(
        "criterion 1 (cubic identity suite, 100 random L)",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_2_cubic_golden_run() {
    let start = Instant::now();
    let input = CubicInput::new(rat_int(0), rat_int(0), rat_int(2)).unwrap();
    let curve = input.curve();
    let expected = [
        (1i64, BigInt::from(-357)),
        (2, BigInt::from(3)),
        (3, BigInt::from(3741)),
    ];
    for (t0, delta) in expected {
        let forged = input.forge(&rat_int(t0), 24).unwrap();
        assert_eq!(forged.delta, delta, "delta at t0 = {t0}");
        assert!(curve.contains(&forged.point).unwrap(), "on-curve at t0 = {t0}");
        assert_eq!(
            forged.torsion_verdict,
            TorsionVerdict::NoTorsionUpTo(24),
            "torsion at t0 = {t0}"
        );
        if t0 == 1 {
            let (x, _) = forged.point.coordinates().unwrap();
            assert_eq!(x.base().as_rational().unwrap(), rat(-17, 4));
        }
    }
    budget(
        "criterion 2 (cubic golden run, t0 in {1,2,3})",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_quadratic_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let input = random_quad_input(&mut rng);
        // TwistData::new asserts the swap–scale identities internally
        let data = TwistData::new(&input).unwrap();
        assert_eq!(data.q_poly().degree(), 22);
        assert!(data.q_poly().twist_symmetric(input.m(), 11));
        let (a0, a1) = data.leading_coefficients();
        assert_eq!(data.q_poly().coeff(22), a0);
        assert_eq!(data.q_poly().coeff(21), a1);
    }
    // the worked instance m = 2, a = b = c = d = 1
    let input = QuadCurveInput::new(
        BigInt::from(2),
        rat_int(1),
        rat_int(1),
        rat_int(1),
        rat_int(1),
    )
    .unwrap();
    let data = TwistData::new(&input).unwrap();
    assert_eq!(
        data.q_poly().eval(&rat_int(1), &rat_int(1)),
        rat_int(-139928683)
    );
    let t1 = data.twist_polys().0.eval(&rat_int(1), &rat_int(1));
    let w = data.q_poly().eval(&rat_int(1), &rat_int(1)) / t1.pow(4);
    assert_eq!(w, rat(-4825127, 24389));
    budget(
        "criterion 3 (quadratic suite, 50 random inputs + worked instance)",
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_quadratic_end_to_end() {
    let start = Instant::now();
    let desc = CurveDescription::Quadratic {
        m: BigInt::from(2),
        a: rat_int(1),
        b: rat_int(1),
        c: rat_int(1),
        d: rat_int(1),
        normalization: None,
    };
    let cert = search_and_forge(
        &desc,
        5,
        &SearchLimits {
            height: 12,
            torsion_bound: 24,
            jobs: 1,
        },
    )
    .unwrap();
    assert_eq!(cert.status, CertificateStatus::Complete);
    assert_eq!(cert.points.len(), 5);
    let curve = desc.build_curve().unwrap();
    let mut deltas = Vec::new();
    for p in &cert.points {
        assert!(curve.contains(&p.point).unwrap());
        assert_eq!(p.torsion_verdict, TorsionVerdict::NoTorsionUpTo(24));
        assert_eq!(
            pointforge::squarefree::squarefree_part(&p.delta).unwrap().delta,
            p.delta,
            "delta must be squarefree"
        );
        assert!(!deltas.contains(&p.delta), "deltas must be pairwise distinct");
        deltas.push(p.delta.clone());
    }
    budget(
        "criterion 4 (quadratic end-to-end, 5 points at height <= 12)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_quartic_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let input = random_quartic_input(&mut rng);
        assert!(
            input.verify_identity(),
            "identity failed for {:?}",
            input.coefficients()
        );
    }
    for _ in 0..20 {
        let input = random_quartic_input(&mut rng);
        let profile = input.pole_profile().unwrap();
        assert_eq!(profile.pole_orders, (6, 5, 6), "for {:?}", input.coefficients());
        assert_eq!(profile.d_pole_order, 17);
    }
    budget(
        "criterion 5 (quartic suite, 100 identities + 20 pole profiles)",
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_6_quartic_golden_run() {
    let start = Instant::now();
    let phi5 = QuarticInput::new(rat_int(1), rat_int(1), rat_int(1), rat_int(1)).unwrap();
    let seed = phi5.seed(rat_int(3), rat_int(11)).unwrap();
    assert_eq!(phi5.a_poly().eval(&seed.u, &seed.v), rat_int(4040));
    assert_eq!(phi5.b_poly().eval(&seed.u, &seed.v), rat_int(3135));
    let forged = phi5.forge(&seed, 24).unwrap();
    let (x, _) = forged.point.coordinates().unwrap();
    assert_eq!(x.base().as_rational().unwrap(), rat(808, 627));
    assert!(phi5.curve().contains(&forged.point).unwrap());

    // P = u⁴ + 1 at (0, 1) must hit the documented B = 0 skip
    let u4p1 = QuarticInput::new(rat_int(0), rat_int(0), rat_int(0), rat_int(1)).unwrap();
    let seed = u4p1.seed(rat_int(0), rat_int(1)).unwrap();
    assert_eq!(
        u4p1.forge(&seed, 24).unwrap_err(),
        pointforge::certificate::SkipReason::VanishingDenominatorB
    );
    budget(
        "criterion 6 (quartic golden run, phi5 seed (3,11) + u^4+1 skip)",
        start,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_7_genus() {
    let start = Instant::now();
    assert_eq!(kummer::genus(2).unwrap(), BigInt::from(0));
    assert_eq!(kummer::genus(3).unwrap(), BigInt::from(0));
    assert_eq!(kummer::genus(4).unwrap(), BigInt::from(1));
    for n in 2..=64 {
        assert!(kummer::riemann_hurwitz_check(n).unwrap(), "RH at n = {n}");
    }
    budget("criterion 7 (genus formula + RH check)", start, Duration::from_secs(1));
}

#[test]
fn criterion_8_certificate_integrity() {
    let start = Instant::now();
    let desc = CurveDescription::Cubic {
        a: rat_int(0),
        b: rat_int(0),
        c: rat_int(2),
    };
    let limits = SearchLimits {
        height: 3,
        torsion_bound: 24,
        jobs: 1,
    };
    let cert = search_and_forge(&desc, 3, &limits).unwrap();
    let serialized = cert.to_json_string();

    // the verifier accepts every generated certificate from bytes alone
    let report = verify_certificate_json(&serialized).unwrap();
    assert!(report.accepted, "failures: {:?}", report.failures);

    // corrupting any single field causes rejection
    let base: serde_json::Value = serde_json::from_str(&serialized).unwrap();
    let corruptions: Vec<(&str, Box<dyn Fn(&mut serde_json::Value)>)> = vec![
        ("x", Box::new(|v| v["points"][0]["x"]["base"][0] = "9/7".into())),
        ("y", Box::new(|v| v["points"][0]["y"]["radical"][0] = "9/7".into())),
        ("delta", Box::new(|v| v["points"][0]["delta"] = (-5).into())),
        (
            "verdict",
            Box::new(|v| v["points"][0]["verdict"] = serde_json::json!({"no_torsion_up_to": 7})),
        ),
    ];
    for (field, corrupt) in corruptions {
        let mut bad = base.clone();
        corrupt(&mut bad);
        let report = verify_certificate_json(&serde_json::to_string(&bad).unwrap()).unwrap();
        assert!(!report.accepted, "corrupting {field} must be detected");
    }

    // determinism across runs and across worker counts
    let again = search_and_forge(&desc, 3, &limits).unwrap().to_json_string();
    assert_eq!(serialized, again, "two identical runs must agree byte for byte");
    let parallel = search_and_forge(&desc, 3, &SearchLimits { jobs: 4, ..limits })
        .unwrap()
        .to_json_string();
    assert_eq!(serialized, parallel, "worker count must not affect output");

    // the same holds for a quadratic certificate
    let qdesc = CurveDescription::Quadratic {
        m: BigInt::from(2),
        a: rat_int(1),
        b: rat_int(1),
        c: rat_int(1),
        d: rat_int(1),
        normalization: None,
    };
    let qlimits = SearchLimits {
        height: 6,
        torsion_bound: 24,
        jobs: 1,
    };
    let qcert = search_and_forge(&qdesc, 3, &qlimits).unwrap().to_json_string();
    let qreport = verify_certificate_json(&qcert).unwrap();
    assert!(qreport.accepted, "failures: {:?}", qreport.failures);
    let qcert2 = search_and_forge(&qdesc, 3, &SearchLimits { jobs: 2, ..qlimits })
        .unwrap()
        .to_json_string();
    assert_eq!(qcert, qcert2);

    budget(
        "criterion 8 (certificate integrity + determinism)",
        start,
        Duration::from_secs(60),
    );
}
