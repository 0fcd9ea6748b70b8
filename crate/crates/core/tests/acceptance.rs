//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use qhouse_core::demo::spinq_demo;
use qhouse_core::game::{
    catalog_analysis, expected_score_exact, simulate, Axis, ExtendedScore, Flavor, FlavorKind, Strategy,
};
use qhouse_core::golden::{verify_examples, GOLDEN_TOL};
use qhouse_core::qhouse::{classify, impossibility_sweep, QhClass};

struct Outcome {
    passed: bool,
    detail: String,
}

fn criterion(name: &str, budget: Duration, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= budget;
    let ok = out.passed && in_time;
    println!(
        "{} {name}: {} [{:.3}s / budget {:.0}s{}]",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        if in_time { "" } else { ", over budget" }
    );
    ok
}

fn golden() -> Outcome {
    let results = verify_examples();
    let failed: Vec<String> = results.iter().filter(|r| !r.passed).map(|r| format!("#{} {}", r.number, r.detail)).collect();
    let worst = results.iter().map(|r| r.max_distance).fold(0.0, f64::max);
    Outcome {
        passed: results.len() == 9 && failed.is_empty() && worst <= GOLDEN_TOL,
        detail: if failed.is_empty() {
            format!("{}/9 examples, worst trace distance {worst:.1e}", results.len())
        } else {
            failed.join("; ")
        },
    }
}

fn game_numbers() -> Outcome {
    let q = Flavor::new(FlavorKind::QuantumEq2);
    let r = Flavor::new(FlavorKind::RestrictedDevice);
    let exact = [
        (&q, Strategy::RandomGuess, ExtendedScore::points(50)),
        (&q, Strategy::JoinBobComputational, ExtendedScore::points(60)),
        (&q, Strategy::Tamper(Axis::Z), ExtendedScore::NegInfinity),
        (&r, Strategy::RestrictedBasisAttack, ExtendedScore::points(100)),
    ];
    let mut notes = Vec::new();
    let mut passed = true;
    for (flavor, strategy, want) in exact {
        let got = expected_score_exact(flavor, strategy);
        passed &= got == want;
        notes.push(format!("{strategy}={got}"));
    }
    let rounds = 100_000;
    for (i, (flavor, strategy, want)) in exact.iter().enumerate() {
        let s = simulate(flavor, *strategy, rounds, 1000 + i as u64);
        match want {
            ExtendedScore::Finite(_) => {
                let gap = (s.mean_finite_score - want.to_f64()).abs();
                passed &= gap <= 3.0 * s.std_error + 1e-12 && s.caught == 0;
                notes.push(format!("MC {strategy} {:.2}±{:.2}", s.mean_finite_score, s.std_error));
            }
            ExtendedScore::NegInfinity => {
                let gap = (s.catch_frequency - 1.0 / 3.0).abs();
                passed &= gap <= 3.0 * s.catch_std_error;
                notes.push(format!("MC {strategy} catch {:.4}±{:.4}", s.catch_frequency, s.catch_std_error));
            }
        }
    }
    Outcome { passed, detail: notes.join(", ") }
}

fn classical_baseline() -> Outcome {
    let c = Flavor::new(FlavorKind::ClassicalCorrBits);
    let report = catalog_analysis(&c);
    let named_local = expected_score_exact(&c, Strategy::ClassicalLocalRead);
    let named_bob = expected_score_exact(&c, Strategy::JoinBobComputational);
    let passed = report.bob_never_helps()
        && named_local == report.best_bob_free
        && named_bob.to_f64() <= report.best_bob_free.to_f64();
    Outcome {
        passed,
        detail: format!(
            "{} plans; best local {}, best with optional Bob {}, best always-Bob {}; named local read {named_local}, join-bob {named_bob}",
            report.plans.len(),
            report.best_bob_free,
            report.best_bob_optional,
            report.best_bob_always
        ),
    }
}

fn pure_factor_products() -> Outcome {
    let mut r = common::rng(0x7);
    let (mut violations, mut preserving, mut worst, mut trials) = (0, 0, 0.0f64, 0);
    for i in 0..10 {
        let rho = common::random_pure_factor_product(&mut r);
        if classify(&rho, 1e-9).unwrap() != QhClass::ProductPureFactor {
            return Outcome { passed: false, detail: format!("state {i} is not a pure-factor product") };
        }
        let rep = impossibility_sweep(&rho, 1000, 0x7000 + i, 1e-9).unwrap();
        trials += rep.trials;
        violations += rep.violations;
        preserving += rep.marginal_preserving;
        worst = worst.max(rep.max_joint_change_when_preserving);
    }
    Outcome {
        passed: violations == 0 && trials == 10_000,
        detail: format!(
            "{trials} channels on 10 states, {violations} violations, {preserving} kept rho_A, max joint change among those {worst:.1e}"
        ),
    }
}

fn discord_cross() -> Outcome {
    let cv = common::discord_cross_validation(0xD15C, 500);
    for b in &cv.boundary {
        println!("    boundary case: {b}");
    }
    for d in &cv.disagreements {
        println!("    disagreement: {d}");
    }
    Outcome {
        passed: cv.total == 500 && cv.disagreements.is_empty() && (cv.boundary.len() as f64) < 0.01 * cv.total as f64,
        detail: format!(
            "{} states, {} zero-discord, {} disagreements, {} boundary",
            cv.total,
            cv.zero_count,
            cv.disagreements.len(),
            cv.boundary.len()
        ),
    }
}

fn spinq() -> Outcome {
    let mut passed = true;
    let mut notes = Vec::new();
    let d = spinq_demo(1.0, 0.0, 1e-9).unwrap();
    let before = d.stages[0].ideal.matrix();
    let after = d.stages[1].ideal.matrix();
    let corners = [(0, 0), (0, 3), (3, 0), (3, 3)];
    let middles = [(1, 1), (1, 2), (2, 1), (2, 2)];
    for &(r, c) in &corners {
        passed &= (before[(r, c)].re - 0.5).abs() < 1e-12 && after[(r, c)].norm() < 1e-12;
    }
    for &(r, c) in &middles {
        passed &= (after[(r, c)].re - 0.5).abs() < 1e-12 && before[(r, c)].norm() < 1e-12;
    }
    let half = qhouse_core::linalg::DensityMatrix::maximally_mixed(vec![2]);
    for s in &d.stages {
        passed &= qhouse_core::linalg::trace_distance(&s.ideal_a, &half).unwrap() < 1e-12;
    }
    notes.push("corners 0.5 -> middles 0.5, rho_A = I/2".to_owned());
    let mut worst = 0.0f64;
    for eta in [1e-5, 1e-3, 0.1, 0.5, 0.9, 1.0] {
        let n = spinq_demo(eta, 0.0, 1e-9).unwrap();
        worst = worst.max((n.delta_ab_noisy - eta * n.delta_ab_ideal).abs());
        passed &= n.delta_a_noisy < 1e-12;
    }
    passed &= worst <= 1e-12;
    notes.push(format!("eta scaling worst error {worst:.1e}"));
    Outcome { passed, detail: notes.join(", ") }
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        criterion("golden examples", secs(1), golden),
        criterion("game numbers", secs(10), game_numbers),
        criterion("classical baseline", secs(1), classical_baseline),
        criterion("no effect on pure-factor products", secs(30), pure_factor_products),
        criterion("discord cross-validation", secs(60), discord_cross),
        criterion("NMR demo structure and eta scaling", secs(5), spinq),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
