//! The trace pipeline: rho_f = (U_A (x) U_B) rho (U_A (x) U_B)^dag and
//! $_X = Tr(P_X rho_f). This is the reference every closed form is checked
//! against.

use serde::{Deserialize, Serialize};

use crate::channel::{initial_state, DecoherenceParam};
use crate::error::{Error, Result};
use crate::game::measurement::{
    payoff_operators, ClassicalPayoffs, MeasurementBasis, PayoffOperators,
};
use crate::game::strategy::Strategy;
use crate::linalg::{tensor_product, DensityMatrix4, Matrix2, Matrix4};
use crate::tolerance;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffPair {
    pub alice: f64,
    pub bob: f64,
}

impl PayoffPair {
    pub fn new(alice: f64, bob: f64) -> Self {
        Self { alice, bob }
    }

    pub fn max_abs_diff(&self, other: &PayoffPair) -> f64 {
        (self.alice - other.alice)
            .abs()
            .max((self.bob - other.bob).abs())
    }

    pub fn get(&self, player: Player) -> f64 {
        match player {
            Player::Alice => self.alice,
            Player::Bob => self.bob,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    #[serde(rename = "A")]
    Alice,
    #[serde(rename = "B")]
    Bob,
}

impl Player {
    pub fn other(self) -> Self {
        match self {
            Player::Alice => Player::Bob,
            Player::Bob => Player::Alice,
        }
    }
}

impl std::fmt::Display for Player {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Player::Alice => "A",
            Player::Bob => "B",
        })
    }
}

/// Conjugates the shared state by the players' local unitaries.
pub fn apply_strategies(
    rho: &DensityMatrix4,
    ua: &Matrix2,
    ub: &Matrix2,
) -> Result<DensityMatrix4> {
    for u in [ua, ub] {
        let defect = u.unitarity_defect();
        if !u.is_finite() || defect > tolerance::UNITARY {
            return Err(Error::NotUnitary { defect });
        }
    }
    let u = tensor_product(ua, ub);
    Ok(DensityMatrix4::new_unchecked(u.conjugate(rho.matrix())))
}

/// ($_A, $_B) = (Tr(P_A rho_f), Tr(P_B rho_f)).
pub fn trace_payoffs(
    rho_f: &DensityMatrix4,
    basis: MeasurementBasis,
    payoffs: &ClassicalPayoffs,
) -> Result<PayoffPair> {
    let ops = payoff_operators(basis, payoffs);
    expectations(&ops, rho_f.matrix())
}

fn expectations(ops: &PayoffOperators, rho_f: &Matrix4) -> Result<PayoffPair> {
    let a = ops.alice.trace_of_product(rho_f);
    let b = ops.bob.trace_of_product(rho_f);
    let imag = a.im.abs().max(b.im.abs());
    if imag > tolerance::PAYOFF_IMAGINARY {
        return Err(Error::NumericalInconsistency { imag });
    }
    Ok(PayoffPair::new(a.re, b.re))
}

/// A fully specified game: decohered state, measurement basis and classical
/// payoffs, with the state and payoff operators precomputed.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumGame {
    decoherence: DecoherenceParam,
    basis: MeasurementBasis,
    classical: ClassicalPayoffs,
    state: DensityMatrix4,
    operators: PayoffOperators,
}

impl QuantumGame {
    pub fn new(
        decoherence: DecoherenceParam,
        basis: MeasurementBasis,
        classical: ClassicalPayoffs,
    ) -> Self {
        Self {
            decoherence,
            basis,
            classical,
            state: initial_state(decoherence),
            operators: payoff_operators(basis, &classical),
        }
    }

    /// Game with the standard (3, 0, 5, 1) bimatrix.
    pub fn standard(decoherence: DecoherenceParam, basis: MeasurementBasis) -> Self {
        Self::new(decoherence, basis, ClassicalPayoffs::default())
    }

    /// Convenience constructor from raw mu and delta.
    pub fn from_mu_delta(mu: f64, delta: f64) -> Result<Self> {
        Ok(Self::standard(
            DecoherenceParam::from_mu(mu)?,
            MeasurementBasis::new(delta)?,
        ))
    }

    pub fn decoherence(&self) -> DecoherenceParam {
        self.decoherence
    }

    pub fn mu(&self) -> f64 {
        self.decoherence.mu()
    }

    pub fn basis(&self) -> MeasurementBasis {
        self.basis
    }

    pub fn delta(&self) -> f64 {
        self.basis.delta()
    }

    pub fn classical(&self) -> &ClassicalPayoffs {
        &self.classical
    }

    pub fn state(&self) -> &DensityMatrix4 {
        &self.state
    }

    pub fn operators(&self) -> &PayoffOperators {
        &self.operators
    }

    /// Full checked pipeline for a strategy profile.
    pub fn payoffs(&self, alice: &Strategy, bob: &Strategy) -> Result<PayoffPair> {
        let rho_f = apply_strategies(&self.state, &alice.unitary(), &bob.unitary())?;
        expectations(&self.operators, rho_f.matrix())
    }

    /// Unchecked pipeline for unitaries already known to be valid; the
    /// imaginary parts of the traces are dropped.
    #[inline]
    pub fn payoffs_for_unitaries(&self, ua: &Matrix2, ub: &Matrix2) -> PayoffPair {
        let rho_f = tensor_product(ua, ub).conjugate(self.state.matrix());
        PayoffPair::new(
            self.operators.alice.trace_of_product(&rho_f).re,
            self.operators.bob.trace_of_product(&rho_f).re,
        )
    }

    /// One player's payoff, unchecked.
    #[inline]
    pub fn player_payoff_for_unitaries(&self, player: Player, ua: &Matrix2, ub: &Matrix2) -> f64 {
        let rho_f = tensor_product(ua, ub).conjugate(self.state.matrix());
        let op = match player {
            Player::Alice => &self.operators.alice,
            Player::Bob => &self.operators.bob,
        };
        op.trace_of_product(&rho_f).re
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::strategy::TwoParamStrategy;
    use crate::linalg::{C64, ONE, ZERO};

    fn game(mu: f64, delta: f64) -> QuantumGame {
        QuantumGame::from_mu_delta(mu, delta).unwrap()
    }

    const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

    #[test]
    fn identity_strategies_leave_state_unchanged() {
        let rho = initial_state(DecoherenceParam::from_mu(0.4).unwrap());
        let out = apply_strategies(&rho, &Matrix2::identity(), &Matrix2::identity()).unwrap();
        assert_eq!(out, rho);
    }

    #[test]
    fn defect_defect_fixes_fully_dephased_state() {
        let rho = initial_state(DecoherenceParam::FULLY_DEPHASED);
        let d = TwoParamStrategy::D.unitary();
        let out = apply_strategies(&rho, &d, &d).unwrap();
        assert!(out.matrix().frobenius_distance(rho.matrix()) < 1e-15);
    }

    #[test]
    fn non_unitary_is_rejected() {
        let rho = initial_state(DecoherenceParam::COHERENT);
        let bad = Matrix2::diagonal([C64::new(2.0, 0.0), ONE]);
        assert!(matches!(
            apply_strategies(&rho, &bad, &Matrix2::identity()),
            Err(Error::NotUnitary { .. })
        ));
        let zero = Matrix2::diagonal([ZERO, ZERO]);
        assert!(apply_strategies(&rho, &Matrix2::identity(), &zero).is_err());
    }

    #[test]
    fn quantum_pair_pays_two_plus_mu() {
        for mu in [0.0, 0.3, 0.5, 1.0] {
            let p = game(mu, HALF_PI)
                .payoffs(&Strategy::Q, &Strategy::Q)
                .unwrap();
            assert!((p.alice - (2.0 + mu)).abs() < 1e-12);
            assert!((p.bob - (2.0 + mu)).abs() < 1e-12);
        }
    }

    #[test]
    fn sucker_outcome_without_decoherence() {
        let p = game(1.0, HALF_PI)
            .payoffs(&Strategy::C, &Strategy::D)
            .unwrap();
        assert!((p.alice - 0.0).abs() < 1e-12);
        assert!((p.bob - 5.0).abs() < 1e-12);
    }

    #[test]
    fn product_basis_defect_cooperate() {
        for mu in [0.0, 0.5, 1.0] {
            let p = game(mu, 0.0).payoffs(&Strategy::D, &Strategy::C).unwrap();
            assert!((p.alice - 2.5).abs() < 1e-12);
            assert!((p.bob - 2.5).abs() < 1e-12);
        }
    }

    #[test]
    fn unchecked_pipeline_agrees_with_checked() {
        let g = game(0.37, 0.9);
        let a = TwoParamStrategy::new(1.1, 0.2).unwrap();
        let b = TwoParamStrategy::new(2.3, 1.4).unwrap();
        let checked = g.payoffs(&a.into(), &b.into()).unwrap();
        let fast = g.payoffs_for_unitaries(&a.unitary(), &b.unitary());
        assert!(checked.max_abs_diff(&fast) < 1e-15);
        let alice = g.player_payoff_for_unitaries(Player::Alice, &a.unitary(), &b.unitary());
        assert_eq!(alice, fast.alice);
    }

    #[test]
    fn trace_payoffs_free_function_matches_game() {
        let g = game(0.6, 1.0);
        let rho_f =
            apply_strategies(g.state(), &Strategy::Q.unitary(), &Strategy::D.unitary()).unwrap();
        let p = trace_payoffs(&rho_f, g.basis(), g.classical()).unwrap();
        let q = g.payoffs(&Strategy::Q, &Strategy::D).unwrap();
        assert_eq!(p, q);
    }
}
