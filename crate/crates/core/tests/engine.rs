mod common;

use common::*;
use edeco::engine::{evolve, evolve_analytic, evolve_stepped, DecoherenceSpec, EvolutionSpec, LossChannel};
use edeco::quantum::{c, coherence_weight, frobenius, HilbertSpace, Operator, PureState};
use edeco::Error;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn commuting_case(seed: u64, dims: &[usize]) -> (edeco::quantum::DensityMatrix, EvolutionSpec) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<(String, usize)> = dims.iter().enumerate().map(|(i, &d)| (format!("q{i}"), d)).collect();
    let space = HilbertSpace::new(labels).unwrap();
    let n = space.dim();
    let u = random_unitary(&mut rng, &space);
    let h = in_basis(&u, &degenerate_spectrum(&mut rng, n, 3));
    let b1 = in_basis(&u, &degenerate_spectrum(&mut rng, n, 2));
    let b2 = in_basis(&u, &degenerate_spectrum(&mut rng, n, 4));
    let blocks = DecoherenceSpec::new(
        0.4,
        vec![edeco::engine::DecoherenceBlock::new(b1.plus(&b2.scaled(0.5)).unwrap()).unwrap()],
    )
    .unwrap();
    let rho = random_state(&mut rng, &space, 2);
    (rho, EvolutionSpec::new(h, 1.0).with_decoherence(blocks))
}

#[test]
fn stepped_matches_analytic_up_to_dim_64() {
    for (seed, dims) in [(1u64, vec![2]), (2, vec![3, 2]), (3, vec![4, 4]), (4, vec![2, 2, 2, 2, 2, 2])] {
        let (rho, spec) = commuting_case(seed, &dims);
        let exact = evolve_analytic(&rho, &spec).unwrap();
        let stepped = evolve_stepped(&rho, &spec.clone().stepped(2e-3)).unwrap();
        let d = frobenius(&(exact.matrix() - stepped.matrix()));
        assert!(d <= 1e-8, "dims {dims:?}: {d}");
        check_state(&exact);
        check_state(&stepped);
    }
}

#[test]
fn local_blocks_match_stepped() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = HilbertSpace::single("a", 3).unwrap();
    let b = HilbertSpace::single("b", 2).unwrap();
    let ha = in_basis(&random_unitary(&mut rng, &a), &[0.1, 0.7, -0.4]);
    let hb = in_basis(&random_unitary(&mut rng, &b), &[0.2, -0.5]);
    let space = a.concat(&b).unwrap();
    let drive = ha.embed(&space).unwrap().plus(&hb.embed(&space).unwrap().scaled(2.0)).unwrap();
    let spec = EvolutionSpec::new(drive, 2.0)
        .with_decoherence(DecoherenceSpec::local(0.3, vec![ha, hb]).unwrap());
    let rho = random_state(&mut rng, &space, 3);
    let exact = evolve_analytic(&rho, &spec).unwrap();
    let stepped = evolve_stepped(&rho, &spec.clone().stepped(2e-3)).unwrap();
    assert!(frobenius(&(exact.matrix() - stepped.matrix())) <= 1e-8);
}

#[test]
fn superposition_decay_law() {
    let q = HilbertSpace::single("atom", 2).unwrap();
    let omega0 = 1.519267e15;
    let h = Operator::from_diagonal(&q, &[0.0, omega0]).unwrap();
    let plus = PureState::normalized(q.clone(), nalgebra::dvector![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
    let sigma = 1e-33;
    for k in 0..=20 {
        let x = 0.5 * k as f64;
        let t = x / (sigma * omega0 * omega0);
        let spec = EvolutionSpec::new(h.clone(), t).with_decoherence(DecoherenceSpec::global(sigma, h.clone()).unwrap());
        let out = evolve(&plus.to_density(), &spec).unwrap();
        let coh = out.matrix()[(0, 1)].norm();
        assert!((coh - 0.5 * (-x).exp()).abs() <= 1e-9, "x={x}: {coh}");
    }
}

#[test]
fn half_decay_and_full_mixture() {
    let q = HilbertSpace::single("atom", 2).unwrap();
    let h = Operator::from_diagonal(&q, &[0.0, 3.0]).unwrap();
    let plus = PureState::normalized(q.clone(), nalgebra::dvector![c(1.0, 0.0), c(1.0, 0.0)]).unwrap().to_density();
    let t = 2f64.ln() / (0.1 * 9.0);
    let spec = EvolutionSpec::new(h.clone(), t).with_decoherence(DecoherenceSpec::global(0.1, h.clone()).unwrap());
    assert!((evolve(&plus, &spec).unwrap().matrix()[(0, 1)].norm() - 0.25).abs() < 1e-12);
    let spec = EvolutionSpec::new(h.clone(), 50.0 / 0.9).with_decoherence(DecoherenceSpec::global(0.1, h).unwrap());
    let mixed = evolve(&plus, &spec).unwrap();
    assert!(mixed.matrix()[(0, 1)].norm() < 1e-20);
    assert!((mixed.matrix()[(0, 0)].re - 0.5).abs() < 1e-15);
}

#[test]
fn pure_unitary_phase() {
    let q = HilbertSpace::single("atom", 2).unwrap();
    let w = 2.5;
    let h = Operator::from_diagonal(&q, &[0.0, w]).unwrap();
    let plus = PureState::normalized(q, nalgebra::dvector![c(1.0, 0.0), c(1.0, 0.0)]).unwrap().to_density();
    let out = evolve_analytic(&plus, &EvolutionSpec::new(h, 0.7)).unwrap();
    // ρ_eg picks up e^{−iωt}
    let expected = num_complex::Complex64::from_polar(0.5, -w * 0.7);
    assert!((out.matrix()[(1, 0)] - expected).norm() < 1e-15);
}

#[test]
fn amplitude_damping_law() {
    let q = HilbertSpace::single("atom", 2).unwrap();
    let mut lower = DMatrix::zeros(2, 2);
    lower[(0, 1)] = c(1.0, 0.0);
    let lower = Operator::new(q.clone(), lower).unwrap();
    let gamma = 0.8;
    let excited = PureState::basis(&q, 1).unwrap().to_density();
    for t in [0.1, 0.5, 1.0, 3.0] {
        let spec = EvolutionSpec::new(Operator::zeros(&q), t)
            .with_loss(LossChannel::amplitude_damping(gamma, lower.clone()).unwrap())
            .stepped(1e-3);
        let out = evolve(&excited, &spec).unwrap();
        assert!((out.matrix()[(1, 1)].re - (-gamma * t).exp()).abs() < 1e-8);
        check_state(&out);
    }
    let spec = EvolutionSpec::new(Operator::zeros(&q), 1.0)
        .with_loss(LossChannel::amplitude_damping(gamma, lower).unwrap());
    assert_eq!(evolve(&excited, &spec).unwrap_err(), Error::LossesNotSupported);
}

#[test]
fn error_cases() {
    let q = HilbertSpace::single("atom", 2).unwrap();
    let rho = PureState::basis(&q, 0).unwrap().to_density();
    let x = Operator::new(q.clone(), DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
    let z = Operator::from_diagonal(&q, &[1.0, -1.0]).unwrap();
    let spec = EvolutionSpec::new(x.clone(), 1.0).with_decoherence(DecoherenceSpec::global(1.0, z.clone()).unwrap());
    assert!(matches!(evolve_analytic(&rho, &spec), Err(Error::NonCommuting(_))));
    // the stepped path accepts non-commuting inputs
    evolve_stepped(&rho, &spec.clone().stepped(1e-3)).unwrap();
    assert!(matches!(evolve_stepped(&rho, &spec.clone().stepped(0.5)), Err(Error::StepTooLarge { .. })));
    assert!(evolve_stepped(&rho, &spec.clone().stepped(2.0)).is_err());
    let zero = EvolutionSpec::new(x, 0.0).stepped(1.0);
    assert_eq!(evolve(&rho, &zero).unwrap(), rho);
    let big = HilbertSpace::single("atom", 3).unwrap();
    let wrong = EvolutionSpec::new(Operator::identity(&big), 1.0);
    assert!(matches!(evolve(&rho, &wrong), Err(Error::DimensionMismatch { .. })));
}

#[test]
fn degenerate_coherences_are_untouched() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let space = HilbertSpace::new([("a", 3), ("b", 3)]).unwrap();
    let u = random_unitary(&mut rng, &space);
    let spectrum = degenerate_spectrum(&mut rng, 9, 3);
    let block = in_basis(&u, &spectrum);
    let rho = random_state(&mut rng, &space, 2);
    let spec = EvolutionSpec::new(Operator::zeros(&space), 5.0)
        .with_decoherence(DecoherenceSpec::global(2.0, block).unwrap());
    let out = evolve_analytic(&rho, &spec).unwrap();
    let before = u.matrix().adjoint() * rho.matrix() * u.matrix();
    let after = u.matrix().adjoint() * out.matrix() * u.matrix();
    for i in 0..9 {
        for j in 0..9 {
            let (a, b) = (before[(i, j)], after[(i, j)]);
            if spectrum[i] == spectrum[j] {
                assert!((a - b).norm() < 1e-12);
            } else {
                assert!(b.norm() <= a.norm() + 1e-12);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coherence_weight_never_grows(seed in 0u64..1000, sigma in 0.0f64..2.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let space = HilbertSpace::single("s", 5).unwrap();
        let u = random_unitary(&mut rng, &space);
        let block = in_basis(&u, &degenerate_spectrum(&mut rng, 5, 3));
        let drive = in_basis(&u, &degenerate_spectrum(&mut rng, 5, 5));
        let rho = random_state(&mut rng, &space, 1);
        let mut last = coherence_weight(&rho, &u).unwrap();
        for k in 1..=6 {
            let spec = EvolutionSpec::new(drive.clone(), 0.3 * k as f64)
                .with_decoherence(DecoherenceSpec::global(sigma, block.clone()).unwrap());
            let out = evolve_analytic(&rho, &spec).unwrap();
            let w = coherence_weight(&out, &u).unwrap();
            prop_assert!(w <= last + 1e-12);
            last = w;
        }
    }

    #[test]
    fn invariants_hold(seed in 0u64..1000, t in 0.0f64..3.0) {
        let (rho, mut spec) = commuting_case(seed, &[3, 2]);
        spec.duration = t;
        let out = evolve_analytic(&rho, &spec).unwrap();
        prop_assert!((out.trace().re - 1.0).abs() <= 1e-10);
        prop_assert!(out.hermitian_deviation() <= 1e-10);
        prop_assert!(out.min_eigenvalue() >= -1e-9);
    }
}
