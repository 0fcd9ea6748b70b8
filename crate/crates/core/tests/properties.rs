mod common;

use common::{random_bipartite, random_cq, rng};
use proptest::prelude::*;
use qhouse_core::discord::{is_zero_discord, measurement_perturbation, DISCORD_TOL};
use qhouse_core::linalg::random::{random_density, random_ket, random_unitary};
use qhouse_core::linalg::{apply_local, trace_distance, DensityMatrix, LocalOperation};
use qhouse_core::states::pseudo_pure;
use rand::Rng;

const TOL: f64 = 1e-9;

fn local_unitary_on_all(rho: &DensityMatrix, u: &qhouse_core::linalg::ComplexMatrix) -> DensityMatrix {
    let m = rho.matrix();
    DensityMatrix::new_unchecked(&(u * m) * &u.adjoint(), rho.dims().to_vec()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_trace_of_product(seed in any::<u64>(), da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let a = random_density(da, &mut r);
        let b = random_density(db, &mut r);
        let ab = a.tensor(&b);
        prop_assert!(trace_distance(&ab.marginal_a().unwrap(), &a).unwrap() <= TOL);
        prop_assert!(trace_distance(&ab.marginal_b().unwrap(), &b).unwrap() <= TOL);
    }

    #[test]
    fn local_unitary_keeps_spectrum_and_bob(seed in any::<u64>(), da in 2usize..4, db in 2usize..4) {
        let mut r = rng(seed);
        let rho = random_density(da * db, &mut r).with_dims(vec![da, db]).unwrap();
        let u = random_unitary(da, &mut r);
        let post = apply_local(&rho, &LocalOperation::unitary(u), 0, TOL).unwrap();
        let before = rho.spectrum().eigenvalues;
        let after = post.spectrum().eigenvalues;
        for (x, y) in before.iter().zip(&after) {
            prop_assert!((x - y).abs() <= TOL);
        }
        prop_assert!(trace_distance(&rho.marginal_b().unwrap(), &post.marginal_b().unwrap()).unwrap() <= TOL);
    }

    #[test]
    fn trace_distance_is_a_unitarily_invariant_metric(seed in any::<u64>(), d in 2usize..6) {
        let mut r = rng(seed);
        let (x, y, z) = (random_density(d, &mut r), random_density(d, &mut r), random_density(d, &mut r));
        let xy = trace_distance(&x, &y).unwrap();
        let yz = trace_distance(&y, &z).unwrap();
        let xz = trace_distance(&x, &z).unwrap();
        prop_assert!(xz <= xy + yz + TOL);
        prop_assert!((0.0..=1.0 + TOL).contains(&xy));
        let u = random_unitary(d, &mut r);
        let moved = trace_distance(&local_unitary_on_all(&x, &u), &local_unitary_on_all(&y, &u)).unwrap();
        prop_assert!((moved - xy).abs() <= TOL);
    }

    #[test]
    fn measurement_is_idempotent(seed in any::<u64>(), da in 2usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let rho = random_density(da * db, &mut r).with_dims(vec![da, db]).unwrap();
        let op = LocalOperation::measure(random_unitary(da, &mut r));
        let once = apply_local(&rho, &op, 0, TOL).unwrap();
        let twice = apply_local(&once, &op, 0, TOL).unwrap();
        prop_assert!(trace_distance(&once, &twice).unwrap() <= TOL);
    }

    #[test]
    fn pseudo_pure_scales_distances(seed in any::<u64>(), eta in 0.0f64..=1.0) {
        let mut r = rng(seed);
        let psi = random_ket(4, &mut r);
        let phi = random_ket(4, &mut r);
        let ideal = trace_distance(
            &DensityMatrix::from_ket(&psi, vec![2, 2]).unwrap(),
            &DensityMatrix::from_ket(&phi, vec![2, 2]).unwrap(),
        ).unwrap();
        let noisy = trace_distance(
            &pseudo_pure(&psi, eta, vec![2, 2]).unwrap(),
            &pseudo_pure(&phi, eta, vec![2, 2]).unwrap(),
        ).unwrap();
        prop_assert!((noisy - eta * ideal).abs() <= 1e-12);
    }

    #[test]
    fn discord_verdict_ignores_bob_unitaries(seed in any::<u64>(), db in 2usize..4) {
        let mut r = rng(seed);
        let rho = if r.random_bool(0.5) { random_cq(db, &mut r) } else { random_bipartite(db, &mut r) };
        let ub = random_unitary(db, &mut r);
        let moved = apply_local(&rho, &LocalOperation::unitary(ub), 1, TOL).unwrap();
        let v0 = is_zero_discord(&rho, DISCORD_TOL, seed).unwrap();
        let v1 = is_zero_discord(&moved, DISCORD_TOL, seed).unwrap();
        prop_assert_eq!(v0.zero_discord, v1.zero_discord);
    }

    #[test]
    fn classical_quantum_states_have_zero_discord(seed in any::<u64>(), db in 2usize..4) {
        let mut r = rng(seed);
        let rho = random_cq(db, &mut r);
        let v = is_zero_discord(&rho, DISCORD_TOL, seed).unwrap();
        prop_assert!(v.zero_discord);
        let basis = v.witness_basis.unwrap();
        prop_assert!(measurement_perturbation(&rho, &basis, TOL).unwrap() <= DISCORD_TOL);
    }

    #[test]
    fn witness_basis_is_sound(seed in any::<u64>(), db in 2usize..4) {
        let mut r = rng(seed);
        let rho = if r.random_bool(0.7) { random_cq(db, &mut r) } else { random_bipartite(db, &mut r) };
        let v = is_zero_discord(&rho, DISCORD_TOL, seed).unwrap();
        if let Some(basis) = v.witness_basis {
            prop_assert!(measurement_perturbation(&rho, &basis, TOL).unwrap() <= DISCORD_TOL);
        }
    }
}
