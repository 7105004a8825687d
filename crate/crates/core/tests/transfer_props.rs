mod common;

use common::{random_hermitian, C};
use hermwalk::numbertheory::relation_residual;
use hermwalk::transfer::DEFAULT_PST_TOL;
use hermwalk::{
    construct_cp, fidelity, fidelity_scan, hermitian_eigendecomposition, integer_relation,
    kronecker_time_search, pst_check_at_time, ComplexMatrix, KroneckerTarget, TransferKind,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::f64::consts::PI;

fn real_symmetric(seed: u64, n: usize) -> ComplexMatrix {
    let mut rng = StdRng::seed_from_u64(seed);
    let a = random_hermitian(&mut rng, n);
    ComplexMatrix::from_fn(n, |r, c| C::new(a[(r.min(c), r.max(c))].re, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn column_probabilities_sum_to_one(seed in any::<u64>(), n in 1usize..8, t in -20.0f64..20.0) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sd = hermitian_eigendecomposition(&random_hermitian(&mut rng, n)).unwrap();
        for a in 0..n {
            let total: f64 = (0..n).map(|b| fidelity(&sd, a, b, t).unwrap().powi(2)).sum();
            prop_assert!((total - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn time_reversal_symmetry(seed in any::<u64>(), n in 2usize..7, t in -20.0f64..20.0) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sd = hermitian_eigendecomposition(&random_hermitian(&mut rng, n)).unwrap();
        let sym = hermitian_eigendecomposition(&real_symmetric(seed, n)).unwrap();
        for a in 0..n {
            for b in 0..n {
                let f = fidelity(&sd, a, b, t).unwrap();
                prop_assert!((f - fidelity(&sd, b, a, -t).unwrap()).abs() <= 1e-12);
                let g = fidelity(&sym, a, b, t).unwrap();
                prop_assert!((g - fidelity(&sym, b, a, t).unwrap()).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn fidelity_is_lipschitz(seed in any::<u64>(), n in 2usize..7, t in 0.0f64..50.0, h in -0.5f64..0.5) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sd = hermitian_eigendecomposition(&random_hermitian(&mut rng, n)).unwrap();
        let rho = sd.spectral_radius();
        let f1 = fidelity(&sd, 0, n - 1, t).unwrap();
        let f2 = fidelity(&sd, 0, n - 1, t + h).unwrap();
        prop_assert!((f1 - f2).abs() <= rho * h.abs() + 1e-12);
    }

    #[test]
    fn relations_satisfy_residual_bound(
        xs in proptest::collection::vec(-10.0f64..10.0, 1..6),
        coeffs in proptest::collection::vec(-20i64..=20, 6),
    ) {
        let mut xs = xs;
        let m = xs.len();
        if m >= 2 {
            // Plant a relation in the last entry.
            let planted: f64 = xs[..m - 1].iter().zip(&coeffs).map(|(x, &c)| c as f64 * x).sum();
            xs[m - 1] = planted;
        }
        if let Some(a) = integer_relation(&xs, 10_000, 1e-9) {
            prop_assert!(a.iter().any(|&c| c != 0));
            prop_assert!(a.iter().all(|&c| c.abs() <= 10_000));
            prop_assert!(relation_residual(&xs, &a) <= 1e-9);
        }
    }
}

#[test]
fn scan_is_deterministic_and_has_endpoints() {
    let sd = hermitian_eigendecomposition(construct_cp(5).unwrap().adjacency()).unwrap();
    let a = fidelity_scan(&sd, 0, 2, 17.0, 513).unwrap();
    let b = fidelity_scan(&sd, 0, 2, 17.0, 513).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.first().unwrap().0, 0.0);
    assert_eq!(a.last().unwrap().0, 17.0);
}

#[test]
fn perfect_transfer_moves_every_vertex() {
    // At a transfer time the walk is a monomial, so every vertex b lands on φ(b).
    let sd = hermitian_eigendecomposition(construct_cp(3).unwrap().adjacency()).unwrap();
    let t = 4.0 * PI / (3.0 * 3f64.sqrt());
    let r = pst_check_at_time(&sd, 0, 2, t, DEFAULT_PST_TOL).unwrap();
    assert_eq!(r.kind, TransferKind::PerfectAtTime);
    let phi = r.monomial.unwrap();
    for b in 0..3 {
        let again = pst_check_at_time(&sd, b, phi.perm()[b], t, DEFAULT_PST_TOL).unwrap();
        assert_eq!(again.kind, TransferKind::PerfectAtTime);
    }
}

#[test]
fn kronecker_drives_c5_phases() {
    let freqs: Vec<f64> = (1..=2)
        .map(|k| 2.0 * (2.0 * PI * k as f64 / 5.0).sin())
        .collect();
    let phases: Vec<f64> = (1..=2).map(|k| 2.0 * PI * k as f64 / 5.0).collect();
    let target = KroneckerTarget::new(freqs.clone(), phases.clone(), 0.01, 0.0, 1e5).unwrap();
    let s = kronecker_time_search(&target).expect("finite time");
    for ((lam, alpha), p) in freqs.iter().zip(&phases).zip(&s.witnesses) {
        assert!((s.time * lam - alpha - 2.0 * PI * *p as f64).abs() < 0.01);
    }
}
