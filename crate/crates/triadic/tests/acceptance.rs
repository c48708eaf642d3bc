//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (run with `--nocapture` to see them). Exit-code and byte-level
//! CLI criteria live in the CLI crate's acceptance suite.

use std::time::{Duration, Instant};

use num_traits::One;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use triadic::deviation::{
    induce_deviation, kii, matrix_inconsistency, pl, KiiForm, TriadDeviation,
};
use triadic::matrix::{PcMatrix, Weights};
use triadic::metric::Metric;
use triadic::scalar::{pow_u32, ratio, Rational, Scalar};
use triadic::verify::{
    check_deviation_conditions, check_metric_axioms, deviation_violation, probe_bound,
    DeviationCondition, SamplePlan,
};

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn run(n: u32, name: &str, f: impl FnOnce() -> Result<(), String>) {
    match f() {
        Ok(()) => println!("ACCEPTANCE {n} ({name}): PASS"),
        Err(e) => {
            println!("ACCEPTANCE {n} ({name}): FAIL: {e}");
            panic!("criterion {n} ({name}) failed: {e}");
        }
    }
}

fn within(start: Instant, budget: Duration, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    if elapsed <= budget {
        Ok(())
    } else {
        Err(format!("{what} took {elapsed:?}, budget {budget:?}"))
    }
}

/// 53-bit uniform in [0, 1).
fn unit(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Log-uniform over [1e-3, 1e3].
fn log_uniform(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(-3.0 + 6.0 * unit(rng))
}

#[test]
fn criterion_1_pl_counterexample_exact() {
    run(1, "PL counterexample exact", || {
        let start = Instant::now();
        let one = ratio(1, 1);
        let (two, three, five) = (ratio(2, 1), ratio(3, 1), ratio(5, 1));

        let rhs = pl(&one, &three, &five).unwrap() + pl(&one, &three, &two).unwrap();
        check!(
            rhs == ratio(13, 30),
            "PL(1,3,5)+PL(1,3,2) = {}, want 13/30",
            rhs.render()
        );

        let lhs = pl(&one, &two, &five).unwrap();
        check!(
            lhs == ratio(9, 10),
            "PL(1,2,5) = {}, want 9/10",
            lhs.render()
        );

        check!(rhs < lhs, "13/30 must be smaller than 9/10");

        let violation = deviation_violation(
            &TriadDeviation::Pl,
            DeviationCondition::GeneralizedTriangle,
            &[one, three, five, ratio(1, 1), two],
            0.0,
        );
        match violation {
            Some((l, r)) => {
                check!(
                    l == ratio(9, 10) && r == ratio(13, 30),
                    "violation sides {} vs {}",
                    l.render(),
                    r.render()
                );
            }
            None => return Err("generalized triangle not violated at (1,3,5,1,2)".into()),
        }
        within(start, Duration::from_secs(1), "exact PL computation")
    });
}

#[test]
fn criterion_2_kii_three_form_equivalence() {
    run(2, "Kii three-form equivalence", || {
        let start = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
        let mut max_gap = 0.0f64;
        let mut worst = (0.0, 0.0, 0.0);
        for _ in 0..1_000_000 {
            let (a, b, c) = (
                log_uniform(&mut rng),
                log_uniform(&mut rng),
                log_uniform(&mut rng),
            );
            let v0 = kii(&a, &b, &c, KiiForm::MinAbs).unwrap();
            let v1 = kii(&a, &b, &c, KiiForm::OneMinusMin).unwrap();
            let v2 = kii(&a, &b, &c, KiiForm::Exponential).unwrap();
            let gap = (v0 - v1).abs().max((v0 - v2).abs()).max((v1 - v2).abs());
            if gap > max_gap {
                max_gap = gap;
                worst = (a, b, c);
            }
        }
        check!(
            max_gap <= 1e-12,
            "max pairwise discrepancy {max_gap:e} at {worst:?} exceeds 1e-12"
        );
        within(
            start,
            Duration::from_secs(30),
            "1e6-triad equivalence sweep",
        )
    });
}

#[test]
fn criterion_3_ratio_metric_axioms() {
    run(3, "metric lemma for the ratio distance", || {
        let start = Instant::now();
        let plan = SamplePlan::uniform_log(3, 100_000);
        let report = check_metric_axioms::<f64>(&Metric::BoundedRatio, &plan);
        for rec in &report.axioms {
            check!(
                rec.violations == 0,
                "axiom {} has {} violations, first witness {:?}",
                rec.axiom,
                rec.violations,
                rec.first_witness
            );
        }
        // the structured head enumerates every ordered triple over the
        // grid, so all three ordering patterns of the triangle proof are
        // exercised ahead of the random tail
        let triangle = report
            .axioms
            .iter()
            .find(|r| r.axiom == "triangle")
            .unwrap();
        check!(
            triangle.checked == 27 + 100_000,
            "triangle checked {} tuples, want structured 27 + random 100000",
            triangle.checked
        );
        check!(report.is_pass(), "verdict must be pass");
        within(start, Duration::from_secs(10), "1e5-sample metric check")
    });
}

#[test]
fn criterion_4_deviation_conditions() {
    run(
        4,
        "deviation conditions for DI/EI/I1/Kii, failure for PL",
        || {
            let start = Instant::now();
            let plan = SamplePlan::uniform_log(4, 100_000);
            for name in ["DI", "EI", "I1", "Kii"] {
                let td = TriadDeviation::from_name(name).unwrap();
                let report = check_deviation_conditions::<f64>(&td, &plan);
                for rec in &report.axioms {
                    check!(
                        rec.violations == 0,
                        "{name}: condition {} has {} violations, first witness {:?}",
                        rec.axiom,
                        rec.violations,
                        rec.first_witness
                    );
                }
            }

            let report = check_deviation_conditions::<f64>(&TriadDeviation::Pl, &plan);
            check!(!report.is_pass(), "PL must fail");
            let gt = report
                .axioms
                .iter()
                .find(|r| r.axiom == "generalized-triangle")
                .ok_or("missing generalized-triangle record")?;
            check!(
                gt.violations > 0,
                "PL must violate the generalized triangle"
            );
            let w = gt.first_witness.as_ref().ok_or("missing witness")?;
            check!(
                w.inputs == ["1", "3", "5", "1", "2"],
                "structured probe witness is {:?}, want (1,3,5,1,2)",
                w.inputs
            );
            within(
                start,
                Duration::from_secs(60),
                "1e5-sample condition checks",
            )
        },
    );
}

#[test]
fn criterion_5_round_trip_induction() {
    run(5, "metric round trip through induced deviation", || {
        let metrics = [
            Metric::Discrete,
            Metric::Euclidean,
            Metric::D1,
            Metric::BoundedRatio,
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let (x, y) = (log_uniform(&mut rng), log_uniform(&mut rng));
            let (rx, ry) = (Rational::from_f64_exact(x), Rational::from_f64_exact(y));
            for d in &metrics {
                let induced = Metric::induced_from(induce_deviation(d.clone()));

                let direct = d.eval(&x, &y).unwrap();
                let via = induced.eval(&x, &y).unwrap();
                check!(
                    (direct - via).abs() <= 1e-15,
                    "{}: float round trip off by {:e}",
                    d.name(),
                    (direct - via).abs()
                );

                let direct = d.eval(&rx, &ry).unwrap();
                let via = induced.eval(&rx, &ry).unwrap();
                check!(
                    direct == via,
                    "{}: exact round trip differs at ({x}, {y})",
                    d.name()
                );
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_boundedness_probes() {
    run(6, "growth-schedule boundedness", || {
        let ks: Vec<u32> = (0..=12).collect();
        let ten = Rational::from_u64(10);

        let kii_probe = probe_bound::<Rational>(&TriadDeviation::from_name("Kii").unwrap(), &ks);
        for point in &kii_probe.points {
            let expected = Rational::one() - pow_u32(&ten, point.exponent).recip();
            check!(
                point.value == expected.render(),
                "Kii(1,10^{},1) = {}, want {}",
                point.exponent,
                point.value,
                expected.render()
            );
            let v = Rational::parse_token(&point.value).unwrap();
            check!(v < Rational::one(), "Kii reached 1 at k={}", point.exponent);
        }
        check!(!kii_probe.exceeds_one, "Kii must stay below 1");

        let pl_probe = probe_bound::<Rational>(&TriadDeviation::Pl, &ks);
        check!(
            pl_probe.first_exponent_exceeding_million == Some(7),
            "PL exceeds 1e6 first at k={:?}, want 7",
            pl_probe.first_exponent_exceeding_million
        );
        Ok(())
    });
}

#[test]
fn criterion_7_consistency_pipeline() {
    run(7, "consistent-matrix pipeline, exact", || {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let kii_td = TriadDeviation::from_name("Kii").unwrap();
        for round in 0..100 {
            let n = 2 + (rng.next_u64() % 7) as usize; // 2..=8
            let w: Vec<Rational> = (0..n)
                .map(|_| {
                    ratio(
                        1 + (rng.next_u64() % 1000) as i64,
                        1 + (rng.next_u64() % 1000) as i64,
                    )
                })
                .collect();
            let m = PcMatrix::from_weights(&Weights::new(w).unwrap());

            let report = matrix_inconsistency(&m, &kii_td);
            check!(
                report.score == ratio(0, 1),
                "round {round}: nonzero Kii score {} on a weight matrix",
                report.score.render()
            );
            check!(
                m.is_consistent(0.0),
                "round {round}: weight matrix inconsistent"
            );

            let rebuilt = PcMatrix::reconstruct_consistent(&m.adjacent_ratios())
                .map_err(|e| format!("round {round}: {e}"))?;
            check!(
                rebuilt.is_consistent(0.0),
                "round {round}: rebuilt inconsistent"
            );
            check!(rebuilt == m, "round {round}: round trip not bit-for-bit");
            check!(
                rebuilt.to_text() == m.to_text(),
                "round {round}: serialized forms differ"
            );
        }
        Ok(())
    });
}

#[test]
fn criterion_8_negative_control_harness() {
    run(8, "negative control: squared difference fails", || {
        let plan = SamplePlan::uniform_log(8, 10_000);
        let report = check_metric_axioms::<Rational>(&Metric::SquaredDiff, &plan);
        check!(
            !report.is_pass(),
            "a harness that passes everything is broken"
        );
        let triangle = report
            .axioms
            .iter()
            .find(|r| r.axiom == "triangle")
            .ok_or("missing triangle record")?;
        let w = triangle.first_witness.as_ref().ok_or("missing witness")?;
        check!(
            w.inputs == ["1", "2", "3"],
            "triangle witness {:?}, want (1,2,3)",
            w.inputs
        );
        check!(
            w.lhs == "4" && w.rhs == "2",
            "witness sides {} vs {}, want 4 vs 2",
            w.lhs,
            w.rhs
        );
        Ok(())
    });
}
