use proptest::prelude::*;
use qwsearch::evolve::{
    evolve_state, search_hamiltonian, Propagator, QuantumState, SearchInstance, WalkKind,
};
use qwsearch::graph::{BipartiteSpec, Graph};
use qwsearch::{CMatrix, CVector, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let m = CMatrix::from_fn(n, n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    (&m + m.adjoint()) * C64::new(0.5, 0.0)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> QuantumState {
    let v = CVector::from_fn(n, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    QuantumState::normalized(v).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn norm_is_conserved(seed in any::<u64>(), n in 1usize..=64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(&mut rng, n);
        let psi = random_state(&mut rng, n);
        let prop = Propagator::new(&h).unwrap();
        for t in [0.1, 1.0, 10.0, 100.0] {
            let out = prop.evolve(&psi, t).unwrap();
            prop_assert!((out.norm() - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn evolution_composes(seed in any::<u64>(), n in 1usize..=24, t1 in 0.0f64..20.0, t2 in 0.0f64..20.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hermitian(&mut rng, n);
        let psi = random_state(&mut rng, n);
        let twice = evolve_state(&h, &evolve_state(&h, &psi, t1).unwrap(), t2).unwrap();
        let once = evolve_state(&h, &psi, t1 + t2).unwrap();
        let diff = (twice.amplitudes() - once.amplitudes()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-8, "{}", diff);
    }

    #[test]
    fn zero_rate_keeps_probabilities(n1 in 1usize..12, n2 in 1usize..12, seed in any::<u64>()) {
        let spec = BipartiteSpec::new(n1, n2, 1, 0).unwrap();
        let (g, marked) = spec.complete_bipartite().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let psi = random_state(&mut rng, spec.n());
        for walk in WalkKind::ALL {
            let h = search_hamiltonian(&SearchInstance::new(walk, g.clone(), marked.clone(), 0.0).unwrap());
            let p0 = psi.probabilities();
            for t in [0.5, 3.0, 40.0] {
                let pt = evolve_state(&h, &psi, t).unwrap().probabilities();
                for (x, y) in p0.iter().zip(&pt) {
                    prop_assert!((x - y).abs() <= 1e-10);
                }
            }
        }
    }
}

#[test]
fn search_hamiltonian_is_exactly_hermitian() {
    let g = Graph::spin_example();
    for walk in WalkKind::ALL {
        let h = search_hamiltonian(&SearchInstance::new(walk, g.clone(), [1, 4], 0.37).unwrap());
        assert_eq!(h.adjoint(), h);
    }
}
