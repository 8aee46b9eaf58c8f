use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::equilibrium::grid::StrategyGrid;
use crate::equilibrium::pure::{
    ComponentPayoff, Deviation, DeviationSpace, EquilibriumReport, Profile,
};
use crate::error::{Error, Result};
use crate::game::{Convention, PayoffPair, Player, QuantumGame, Strategy, ThreeParamStrategy};
use crate::linalg::Matrix2;
use crate::tolerance;

/// Finite-support distribution over pure strategies of one convention.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MixedStrategy {
    support: Vec<(Strategy, f64)>,
}

impl MixedStrategy {
    pub fn new(support: Vec<(Strategy, f64)>) -> Result<Self> {
        let Some((first, _)) = support.first() else {
            return Err(Error::InvalidMixedStrategy("empty support".into()));
        };
        let convention = first.convention();
        if support.iter().any(|(s, _)| s.convention() != convention) {
            return Err(Error::InvalidMixedStrategy(
                "support mixes conventions".into(),
            ));
        }
        if let Some((_, p)) = support.iter().find(|(_, p)| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidMixedStrategy(format!(
                "probability {p} is not a finite non-negative number"
            )));
        }
        let total: f64 = support.iter().map(|(_, p)| p).sum();
        if (total - 1.0).abs() > tolerance::PROBABILITY_SUM {
            return Err(Error::InvalidMixedStrategy(format!(
                "probabilities sum to {total}"
            )));
        }
        Ok(Self { support })
    }

    pub fn pure(strategy: Strategy) -> Self {
        Self {
            support: vec![(strategy, 1.0)],
        }
    }

    pub fn support(&self) -> &[(Strategy, f64)] {
        &self.support
    }

    pub fn convention(&self) -> Convention {
        self.support[0].0.convention()
    }

    fn weighted_unitaries(&self) -> Vec<(Matrix2, f64)> {
        self.support
            .iter()
            .map(|(s, p)| (s.unitary(), *p))
            .collect()
    }
}

/// The two-point mixed equilibrium of the three-parameter game:
/// Alice plays (0, 0, psi) or (0, pi/2, psi), Bob plays (pi, phi, 0) or
/// (pi, phi, pi/2), each with probability 1/2. `psi` and `phi` are free.
pub fn flip_phase_mix(psi: f64, phi: f64) -> Result<(MixedStrategy, MixedStrategy)> {
    let s = |t, p, q| -> Result<Strategy> { Ok(ThreeParamStrategy::new(t, p, q)?.into()) };
    let alice = MixedStrategy::new(vec![
        (s(0.0, 0.0, psi)?, 0.5),
        (s(0.0, FRAC_PI_2, psi)?, 0.5),
    ])?;
    let bob = MixedStrategy::new(vec![(s(PI, phi, 0.0)?, 0.5), (s(PI, phi, FRAC_PI_2)?, 0.5)])?;
    Ok((alice, bob))
}

fn check_conventions(a: &MixedStrategy, b: &MixedStrategy) -> Result<Convention> {
    if a.convention() != b.convention() {
        return Err(Error::ConventionMismatch);
    }
    Ok(a.convention())
}

fn components(game: &QuantumGame, a: &MixedStrategy, b: &MixedStrategy) -> Vec<ComponentPayoff> {
    let mut out = Vec::with_capacity(a.support.len() * b.support.len());
    for (i, (sa, pa)) in a.support.iter().enumerate() {
        for (j, (sb, pb)) in b.support.iter().enumerate() {
            out.push(ComponentPayoff {
                alice_index: i,
                bob_index: j,
                probability: pa * pb,
                payoffs: game.payoffs_for_unitaries(&sa.unitary(), &sb.unitary()),
            });
        }
    }
    out
}

fn weighted_sum(parts: &[ComponentPayoff]) -> PayoffPair {
    parts.iter().fold(PayoffPair::new(0.0, 0.0), |acc, c| {
        PayoffPair::new(
            acc.alice + c.probability * c.payoffs.alice,
            acc.bob + c.probability * c.payoffs.bob,
        )
    })
}

/// Payoffs of every support pair, Alice's support outermost.
pub fn component_payoffs(
    game: &QuantumGame,
    alice: &MixedStrategy,
    bob: &MixedStrategy,
) -> Result<Vec<ComponentPayoff>> {
    check_conventions(alice, bob)?;
    Ok(components(game, alice, bob))
}

/// Probability-weighted trace payoffs over the product of supports.
pub fn expected_payoff_mixed(
    game: &QuantumGame,
    alice: &MixedStrategy,
    bob: &MixedStrategy,
) -> Result<PayoffPair> {
    check_conventions(alice, bob)?;
    Ok(weighted_sum(&components(game, alice, bob)))
}

/// Checks every pure grid deviation against the opponent's mix.
pub fn verify_mixed_ne(
    game: &QuantumGame,
    alice: &MixedStrategy,
    bob: &MixedStrategy,
    grid: &StrategyGrid,
    tolerance: f64,
) -> Result<EquilibriumReport> {
    let convention = check_conventions(alice, bob)?;
    let parts = components(game, alice, bob);
    let payoffs = weighted_sum(&parts);
    let space = DeviationSpace::new(grid, convention);

    let best = |player: Player, opponent: &MixedStrategy| {
        let (strategy, payoff) = space.best(game, player, &opponent.weighted_unitaries());
        Deviation {
            player,
            strategy,
            payoff,
            gain: payoff - payoffs.get(player),
        }
    };
    let alice_best = best(Player::Alice, bob);
    let bob_best = best(Player::Bob, alice);

    Ok(EquilibriumReport::from_deviations(
        Profile::Mixed {
            alice: alice.clone(),
            bob: bob.clone(),
        },
        payoffs,
        alice_best,
        bob_best,
        tolerance,
        parts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn game(mu: f64, delta: f64) -> QuantumGame {
        QuantumGame::from_mu_delta(mu, delta).unwrap()
    }

    fn sorted(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn invalid_mixes_are_rejected() {
        assert!(MixedStrategy::new(vec![]).is_err());
        assert!(MixedStrategy::new(vec![(Strategy::C, 0.5), (Strategy::D, 0.4)]).is_err());
        assert!(MixedStrategy::new(vec![(Strategy::C, 1.5), (Strategy::D, -0.5)]).is_err());
        assert!(MixedStrategy::new(vec![(Strategy::C, f64::NAN)]).is_err());
        let three: Strategy = ThreeParamStrategy::new(0.0, 0.0, 0.0).unwrap().into();
        assert!(MixedStrategy::new(vec![(Strategy::C, 0.5), (three, 0.5)]).is_err());
        assert!(MixedStrategy::new(vec![(Strategy::C, 0.5), (Strategy::D, 0.5)]).is_ok());
    }

    #[test]
    fn point_masses_reduce_to_pure_payoffs() {
        let g = game(0.35, 1.1);
        let m = expected_payoff_mixed(
            &g,
            &MixedStrategy::pure(Strategy::Q),
            &MixedStrategy::pure(Strategy::D),
        )
        .unwrap();
        assert_eq!(m, g.payoffs(&Strategy::Q, &Strategy::D).unwrap());
    }

    #[test]
    fn flip_phase_mix_pays_five_halves_everywhere() {
        for (psi, phi) in [(0.0, 0.0), (0.7, -1.3), (-PI, PI)] {
            let (a, b) = flip_phase_mix(psi, phi).unwrap();
            for mu in [0.0, 0.3, 1.0] {
                for delta in [0.0, 0.4, FRAC_PI_2] {
                    let p = expected_payoff_mixed(&game(mu, delta), &a, &b).unwrap();
                    assert!((p.alice - 2.5).abs() < 1e-12 && (p.bob - 2.5).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn flip_phase_mix_is_ne_without_decoherence() {
        let (a, b) = flip_phase_mix(0.0, 0.0).unwrap();
        let grid = StrategyGrid::new(13, 13, 13).unwrap();
        let r = verify_mixed_ne(&game(1.0, FRAC_PI_2), &a, &b, &grid, 1e-9).unwrap();
        assert!(r.is_ne, "gain {}", r.worst_deviation_gain);
        let alice = sorted(r.components.iter().map(|c| c.payoffs.alice).collect());
        let want = [0.0, 0.0, 5.0, 5.0];
        assert!(
            alice.iter().zip(want).all(|(x, y)| (x - y).abs() < 1e-12),
            "{alice:?}"
        );
    }

    #[test]
    fn flip_phase_mix_components_collapse_when_fully_dephased() {
        let (a, b) = flip_phase_mix(0.4, 2.0).unwrap();
        let grid = StrategyGrid::new(13, 13, 13).unwrap();
        let r = verify_mixed_ne(&game(0.0, 0.9), &a, &b, &grid, 1e-9).unwrap();
        assert!(r.is_ne);
        assert!(r
            .components
            .iter()
            .all(|c| (c.payoffs.alice - 2.5).abs() < 1e-12 && (c.payoffs.bob - 2.5).abs() < 1e-12));
    }

    #[test]
    fn cooperate_pair_as_mix_is_not_ne() {
        let c = MixedStrategy::pure(Strategy::C);
        let r = verify_mixed_ne(
            &game(1.0, FRAC_PI_2),
            &c,
            &c,
            &StrategyGrid::new(5, 5, 1).unwrap(),
            1e-9,
        )
        .unwrap();
        assert!(!r.is_ne);
        assert!((r.worst_deviation_gain - 2.0).abs() < 1e-12);
        assert_eq!(r.components.len(), 1);
    }
}
