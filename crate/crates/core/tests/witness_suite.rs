mod common;

use common::{random_bipartite, random_cq, random_product, random_pure_factor_product, rng};
use proptest::prelude::*;
use qhouse_core::linalg::random::random_simplex;
use qhouse_core::linalg::trace_distance;
use qhouse_core::qhouse::{classify, comonotone_coupling, construct_witness, verify_witness, QhClass, WitnessKind};
use rand::Rng;

const TOL: f64 = 1e-9;

#[test]
fn five_hundred_state_suite() {
    let mut r = rng(0x5eed);
    let mut counts = std::collections::BTreeMap::new();
    for i in 0..500 {
        let db = 2 + i % 2;
        let rho = match i % 5 {
            0 | 1 => random_bipartite(db, &mut r),
            2 => random_cq(db, &mut r),
            3 => random_product(db, &mut r),
            _ => random_pure_factor_product(&mut r),
        };
        let class = classify(&rho, TOL).unwrap();
        let w = construct_witness(&rho, None, TOL).unwrap();
        assert_eq!(w.is_none(), class == QhClass::ProductPureFactor, "state {i}: {class:?}");
        let Some(w) = w else { continue };
        *counts.entry(format!("{:?}", w.kind)).or_insert(0) += 1;
        let check = verify_witness(&rho, &w, TOL).unwrap();
        assert!(check.delta_a <= 1e-8, "state {i}: delta_a {}", check.delta_a);
        assert!(check.delta_ab > 1e-6, "state {i}: delta_ab {}", check.delta_ab);
        assert!(check.delta_b <= TOL, "state {i}: delta_b {}", check.delta_b);
        if w.kind == WitnessKind::SwapCorrelatedAncilla {
            let sigma = w.side_info.as_ref().unwrap();
            assert!(trace_distance(&sigma.marginal_a().unwrap(), &rho.marginal_a().unwrap()).unwrap() <= TOL);
            assert!(trace_distance(&sigma.marginal_b().unwrap(), &rho.marginal_b().unwrap()).unwrap() <= TOL);
            assert_eq!(classify(sigma, TOL).unwrap(), QhClass::NonProduct);
        }
    }
    assert!(counts.len() >= 3, "{counts:?}");
}

proptest! {
    #[test]
    fn comonotone_is_not_product(seed in any::<u64>(), n in 2usize..5, m in 2usize..5) {
        let mut r = rng(seed);
        let mut p = random_simplex(n, &mut r);
        let mut q = random_simplex(m, &mut r);
        p.sort_by(|a, b| b.total_cmp(a));
        q.sort_by(|a, b| b.total_cmp(a));
        prop_assume!(p[1] > 1e-6 && q[1] > 1e-6);
        let pi = comonotone_coupling(&p, &q);
        let gap: f64 = (0..n).flat_map(|i| (0..m).map(move |j| (i, j))).map(|(i, j)| (pi[i][j] - p[i] * q[j]).abs()).sum();
        prop_assert!(gap > 1e-9);
        for i in 0..n {
            prop_assert!((pi[i].iter().sum::<f64>() - p[i]).abs() < 1e-12);
        }
        for j in 0..m {
            prop_assert!(((0..n).map(|i| pi[i][j]).sum::<f64>() - q[j]).abs() < 1e-12);
        }
    }

    #[test]
    fn witnesses_never_signal(seed in any::<u64>()) {
        let mut r = rng(seed);
        let db = r.random_range(2..=3);
        let rho = random_bipartite(db, &mut r);
        for prefer in [None, Some(WitnessKind::SwapFresh)] {
            let w = construct_witness(&rho, prefer, TOL).unwrap().unwrap();
            prop_assert!(verify_witness(&rho, &w, TOL).unwrap().delta_b <= TOL);
        }
    }
}
