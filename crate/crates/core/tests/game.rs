use qhouse_core::game::{
    catalog_analysis, exact_report, expected_score_exact, new_session, play_round, score, simulate, simulate_with,
    Action, ExtendedScore, Flavor, FlavorKind, Observation, Phase, Role, Strategy,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn monte_carlo_converges_to_exact() {
    for kind in FlavorKind::ALL {
        let flavor = Flavor::new(kind);
        for (i, strategy) in Strategy::catalog().into_iter().enumerate() {
            let exact = exact_report(&flavor, strategy);
            let s = simulate(&flavor, strategy, 100_000, 77 + i as u64);
            match exact.score {
                ExtendedScore::Finite(_) => {
                    let gap = (s.mean_finite_score - exact.score.to_f64()).abs();
                    assert!(gap <= 4.0 * s.std_error + 1e-12, "{kind} {strategy}: {s:?}");
                    assert_eq!(s.caught, 0);
                }
                ExtendedScore::NegInfinity => {
                    let p = num_traits::ToPrimitive::to_f64(&exact.catch_probability).unwrap();
                    assert!((s.catch_frequency - p).abs() <= 4.0 * s.catch_std_error, "{kind} {strategy}: {s:?}");
                }
            }
        }
    }
}

#[test]
fn simulated_transcripts_score_consistently() {
    let flavor = Flavor::new(FlavorKind::QuantumEq2);
    let mut seen = 0;
    simulate_with(&flavor, Strategy::Tamper(qhouse_core::game::Axis::X), 2000, 3, |t| {
        seen += 1;
        let s = score(t).unwrap();
        assert_eq!(Some(s), t.score);
        assert_eq!(t.caught, s == ExtendedScore::NegInfinity);
        let line = t.to_json_line();
        assert!(!line.contains('\n'));
        let back: qhouse_core::game::Transcript = serde_json::from_str(&line).unwrap();
        assert_eq!(&back, t);
    });
    assert_eq!(seen, 2000);
}

#[test]
fn classical_catalog_is_exhaustive_over_reads() {
    let report = catalog_analysis(&Flavor::new(FlavorKind::ClassicalCorrBits));
    assert_eq!(report.plans.len(), 4);
    for plan in &report.plans {
        assert!(plan.bob_optional == plan.bob_free || plan.bob_free.to_f64() < report.best_bob_free.to_f64());
    }
    assert!(report.bob_never_helps());
}

#[test]
fn replay_is_deterministic() {
    let flavor = Flavor::new(FlavorKind::QuantumEq2);
    let run = || {
        let mut s = new_session(flavor.clone(), 12345);
        play_round(&mut s, Strategy::JoinBobComputational, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
        s.transcript().clone()
    };
    assert_eq!(run(), run());
}

#[test]
fn manual_walk_through_all_phases() {
    let mut s = new_session(Flavor::new(FlavorKind::QuantumEq2), 8);
    assert_eq!(s.phase(), Phase::Step2Precheck);
    s.advance(Role::Alice, Action::Ready).unwrap();
    assert_eq!(s.advance(Role::Charlie, Action::Check).unwrap(), Observation::Checked { caught: false });
    let Observation::Operated { performed } = s.advance(Role::Charlie, Action::Operate).unwrap() else { panic!() };
    s.advance(Role::Alice, Action::Measure { basis: qhouse_core::game::Axis::Y }).unwrap();
    assert_eq!(s.phase(), Phase::Step4Decide);
    s.advance(Role::Alice, Action::ask_bob()).unwrap();
    let Observation::Scored { correct, score } = s.advance(Role::Alice, Action::Guess { performed }).unwrap() else {
        panic!()
    };
    assert!(correct);
    assert_eq!(score, ExtendedScore::points(90));
    assert!(s.advance(Role::Alice, Action::Guess { performed }).is_err());
}

#[test]
fn restricted_device_attack_is_certain() {
    let r = exact_report(&Flavor::new(FlavorKind::RestrictedDevice), Strategy::RestrictedBasisAttack);
    assert_eq!(r.win_probability, qhouse_core::game::Prob::from_integer(1));
    assert_eq!(expected_score_exact(&Flavor::new(FlavorKind::QuantumEq2), Strategy::RestrictedBasisAttack), ExtendedScore::NegInfinity);
}
