use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use qdilemma::channel::{initial_state, integrate_master_equation, DecoherenceParam};
use qdilemma::game::{
    measurement_projectors, MeasurementBasis, QuantumGame, ThreeParamStrategy, TwoParamStrategy,
};
use qdilemma::linalg::Matrix4;

fn two_param() -> impl Strategy<Value = TwoParamStrategy> {
    (0.0..=PI, 0.0..=FRAC_PI_2).prop_map(|(t, p)| TwoParamStrategy::new(t, p).unwrap())
}

fn three_param() -> impl Strategy<Value = ThreeParamStrategy> {
    (0.0..=PI, -PI..=PI, -PI..=PI).prop_map(|(t, p, s)| ThreeParamStrategy::new(t, p, s).unwrap())
}

fn game(mu: f64, delta: f64) -> QuantumGame {
    QuantumGame::from_mu_delta(mu, delta).unwrap()
}

// `Strategy` above is proptest's trait; the game's enum is referenced by path.
type Move = qdilemma::game::Strategy;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn strategy_matrices_are_unitary(a in two_param(), b in three_param()) {
        prop_assert!(a.unitary().unitarity_defect() <= 1e-12);
        prop_assert!(b.unitary().unitarity_defect() <= 1e-12);
    }

    #[test]
    fn swapping_players_swaps_payoffs_2p(a in two_param(), b in two_param(), mu in 0.0..=1.0, delta in 0.0..=FRAC_PI_2) {
        let g = game(mu, delta);
        let fwd = g.payoffs(&a.into(), &b.into()).unwrap();
        let rev = g.payoffs(&b.into(), &a.into()).unwrap();
        prop_assert!((fwd.alice - rev.bob).abs() <= 1e-10);
        prop_assert!((fwd.bob - rev.alice).abs() <= 1e-10);
    }

    #[test]
    fn swapping_players_swaps_payoffs_3p(a in three_param(), b in three_param(), mu in 0.0..=1.0, delta in 0.0..=FRAC_PI_2) {
        let g = game(mu, delta);
        let fwd = g.payoffs(&a.into(), &b.into()).unwrap();
        let rev = g.payoffs(&b.into(), &a.into()).unwrap();
        prop_assert!((fwd.alice - rev.bob).abs() <= 1e-10);
        prop_assert!((fwd.bob - rev.alice).abs() <= 1e-10);
    }

    #[test]
    fn payoffs_stay_in_classical_hull(a in three_param(), b in three_param(), c in two_param(), d in two_param(), mu in 0.0..=1.0, delta in 0.0..=FRAC_PI_2) {
        let g = game(mu, delta);
        for (x, y) in [(Move::from(a), Move::from(b)), (c.into(), d.into())] {
            let p = g.payoffs(&x, &y).unwrap();
            for v in [p.alice, p.bob] {
                prop_assert!((-1e-10..=5.0 + 1e-10).contains(&v), "{v}");
            }
        }
    }

    #[test]
    fn payoffs_are_lipschitz_in_mu(a in two_param(), b in two_param(), mu in 0.0..=(1.0 - 1e-6), delta in 0.0..=FRAC_PI_2) {
        let h = 1e-6;
        let lo = game(mu, delta).payoffs(&a.into(), &b.into()).unwrap();
        let hi = game(mu + h, delta).payoffs(&a.into(), &b.into()).unwrap();
        prop_assert!(((hi.alice - lo.alice) / h).abs() <= 10.0);
        prop_assert!(((hi.bob - lo.bob) / h).abs() <= 10.0);
    }

    #[test]
    fn projectors_resolve_identity(delta in 0.0..=FRAC_PI_2) {
        let p = measurement_projectors(MeasurementBasis::new(delta).unwrap()).all();
        let sum = p.iter().fold(Matrix4::zeros(), |acc, x| acc + *x);
        prop_assert!(sum.frobenius_distance(&Matrix4::identity()) <= 1e-12);
    }

    #[test]
    fn conjugated_states_stay_valid(a in three_param(), b in three_param(), mu in 0.0..=1.0) {
        let rho = initial_state(DecoherenceParam::from_mu(mu).unwrap());
        let out = qdilemma::game::apply_strategies(&rho, &a.unitary(), &b.unitary()).unwrap();
        prop_assert!(out.validate().is_ok());
    }
}

#[test]
fn coherence_decays_strictly_with_gamma_t() {
    let coherence = |gt: f64| {
        initial_state(DecoherenceParam::from_gamma_t(gt).unwrap())
            .matrix()
            .get(0, 3)
            .norm()
    };
    let samples: Vec<f64> = (0..=60).map(|k| coherence(k as f64 * 0.25)).collect();
    assert!(samples.windows(2).all(|w| w[1] < w[0]), "{samples:?}");

    let rho0 = initial_state(DecoherenceParam::COHERENT);
    let integrated: Vec<f64> = [0.2, 0.4, 0.8, 1.6]
        .iter()
        .map(|&t| {
            integrate_master_equation(&rho0, 1.0, t, 1e-3)
                .unwrap()
                .matrix()
                .get(0, 3)
                .norm()
        })
        .collect();
    assert!(integrated.windows(2).all(|w| w[1] < w[0]), "{integrated:?}");
}

#[test]
fn lattice_states_are_valid_densities() {
    for k in 0..=10 {
        let rho = initial_state(DecoherenceParam::from_mu(k as f64 / 10.0).unwrap());
        assert!(rho.validate().is_ok());
        let ev = rho.eigenvalues();
        assert!(ev.iter().all(|&v| (-1e-10..=1.0 + 1e-10).contains(&v)));
        assert!((ev.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    }
}
