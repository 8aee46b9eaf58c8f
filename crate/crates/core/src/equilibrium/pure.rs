//! Best responses and pure-profile Nash checks over a deviation grid.

use rayon::prelude::*;
use serde::Serialize;

use crate::equilibrium::grid::StrategyGrid;
use crate::equilibrium::mixed::MixedStrategy;
use crate::error::{Error, Result};
use crate::game::{Convention, PayoffPair, Player, QuantumGame, Strategy, ThreeParamStrategy};
use crate::linalg::Matrix2;
use crate::tolerance;

/// A single unilateral deviation and what it earns.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Deviation {
    pub player: Player,
    pub strategy: Strategy,
    /// Deviator's payoff after deviating.
    pub payoff: f64,
    /// Improvement over the deviator's payoff at the profile.
    pub gain: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Profile {
    Pure {
        alice: Strategy,
        bob: Strategy,
    },
    Mixed {
        alice: MixedStrategy,
        bob: MixedStrategy,
    },
}

/// Payoffs of one pair of support strategies in a mixed profile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComponentPayoff {
    pub alice_index: usize,
    pub bob_index: usize,
    pub probability: f64,
    pub payoffs: PayoffPair,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EquilibriumReport {
    pub profile: Profile,
    pub payoffs: PayoffPair,
    pub is_ne: bool,
    /// Largest unilateral gain found for either player.
    pub worst_deviation_gain: f64,
    /// The deviation achieving `worst_deviation_gain`.
    pub witness: Deviation,
    pub alice_best: Deviation,
    pub bob_best: Deviation,
    pub tolerance: f64,
    /// Per support pair; empty for pure profiles.
    pub components: Vec<ComponentPayoff>,
}

impl EquilibriumReport {
    pub(crate) fn from_deviations(
        profile: Profile,
        payoffs: PayoffPair,
        alice_best: Deviation,
        bob_best: Deviation,
        tolerance: f64,
        components: Vec<ComponentPayoff>,
    ) -> Self {
        let witness = if bob_best.gain > alice_best.gain {
            bob_best
        } else {
            alice_best
        };
        Self {
            profile,
            payoffs,
            is_ne: witness.gain <= tolerance,
            worst_deviation_gain: witness.gain,
            witness,
            alice_best,
            bob_best,
            tolerance,
            components,
        }
    }

    /// The pure profile, if this report is for one.
    pub fn pure_profile(&self) -> Option<(Strategy, Strategy)> {
        match self.profile {
            Profile::Pure { alice, bob } => Some((alice, bob)),
            Profile::Mixed { .. } => None,
        }
    }
}

/// Grid points with their unitaries, built once per scan.
pub(crate) struct DeviationSpace {
    pub points: Vec<Strategy>,
    pub unitaries: Vec<Matrix2>,
}

impl DeviationSpace {
    pub fn new(grid: &StrategyGrid, convention: Convention) -> Self {
        let points = grid.points(convention);
        let unitaries = points.iter().map(Strategy::unitary).collect();
        Self { points, unitaries }
    }

    /// Deviator payoff at every grid point against a weighted set of opponent
    /// unitaries, in grid order.
    pub fn payoffs_against(
        &self,
        game: &QuantumGame,
        player: Player,
        opponent: &[(Matrix2, f64)],
    ) -> Vec<f64> {
        self.unitaries
            .par_iter()
            .map(|u| {
                opponent
                    .iter()
                    .map(|(v, w)| {
                        let (ua, ub) = match player {
                            Player::Alice => (u, v),
                            Player::Bob => (v, u),
                        };
                        w * game.player_payoff_for_unitaries(player, ua, ub)
                    })
                    .sum()
            })
            .collect()
    }

    /// Best grid point against the opponent mix; ties go to the earliest
    /// point in grid order.
    pub fn best(
        &self,
        game: &QuantumGame,
        player: Player,
        opponent: &[(Matrix2, f64)],
    ) -> (Strategy, f64) {
        let payoffs = self.payoffs_against(game, player, opponent);
        let mut best = 0;
        for (k, &p) in payoffs.iter().enumerate() {
            if p > payoffs[best] + tolerance::BEST_RESPONSE_TIE {
                best = k;
            }
        }
        (self.points[best], payoffs[best])
    }
}

/// The grid point maximising `player`'s payoff against a fixed opponent.
pub fn best_response(
    game: &QuantumGame,
    opponent: &Strategy,
    player: Player,
    grid: &StrategyGrid,
) -> (Strategy, f64) {
    let space = DeviationSpace::new(grid, opponent.convention());
    space.best(game, player, &[(opponent.unitary(), 1.0)])
}

fn deviation(
    space: &DeviationSpace,
    game: &QuantumGame,
    player: Player,
    opponent: &Strategy,
    baseline: f64,
) -> Deviation {
    let (strategy, payoff) = space.best(game, player, &[(opponent.unitary(), 1.0)]);
    Deviation {
        player,
        strategy,
        payoff,
        gain: payoff - baseline,
    }
}

/// Checks every unilateral grid deviation from (alice, bob).
pub fn verify_pure_ne(
    game: &QuantumGame,
    alice: &Strategy,
    bob: &Strategy,
    grid: &StrategyGrid,
    tolerance: f64,
) -> Result<EquilibriumReport> {
    let convention = alice.convention();
    if bob.convention() != convention {
        return Err(Error::ConventionMismatch);
    }
    let space = DeviationSpace::new(grid, convention);
    Ok(verify_in_space(&space, game, alice, bob, tolerance))
}

pub(crate) fn verify_in_space(
    space: &DeviationSpace,
    game: &QuantumGame,
    alice: &Strategy,
    bob: &Strategy,
    tolerance: f64,
) -> EquilibriumReport {
    let payoffs = game.payoffs_for_unitaries(&alice.unitary(), &bob.unitary());
    let alice_best = deviation(space, game, Player::Alice, bob, payoffs.alice);
    let bob_best = deviation(space, game, Player::Bob, alice, payoffs.bob);
    EquilibriumReport::from_deviations(
        Profile::Pure {
            alice: *alice,
            bob: *bob,
        },
        payoffs,
        alice_best,
        bob_best,
        tolerance,
        Vec::new(),
    )
}

/// All ordered pairs of the named moves C, D, Q. In the three-parameter
/// convention the moves are embedded as (theta, phi, psi = 0).
pub fn default_candidates(convention: Convention) -> Vec<(Strategy, Strategy)> {
    let named: Vec<Strategy> = match convention {
        Convention::TwoParam => vec![Strategy::C, Strategy::D, Strategy::Q],
        Convention::ThreeParam => [Strategy::C, Strategy::D, Strategy::Q]
            .iter()
            .map(|s| {
                ThreeParamStrategy::new(s.theta(), s.phi(), 0.0)
                    .expect("named moves are in range")
                    .into()
            })
            .collect(),
    };
    named
        .iter()
        .flat_map(|a| named.iter().map(move |b| (*a, *b)))
        .collect()
}

/// One report per candidate, in candidate order.
pub fn enumerate_pure_ne(
    game: &QuantumGame,
    candidates: &[(Strategy, Strategy)],
    grid: &StrategyGrid,
    tolerance: f64,
) -> Result<Vec<EquilibriumReport>> {
    let Some((first, _)) = candidates.first() else {
        return Err(Error::invalid(
            "candidates",
            0.0,
            "a non-empty candidate list",
        ));
    };
    let convention = first.convention();
    if candidates
        .iter()
        .any(|(a, b)| a.convention() != convention || b.convention() != convention)
    {
        return Err(Error::ConventionMismatch);
    }
    let space = DeviationSpace::new(grid, convention);
    Ok(candidates
        .par_iter()
        .map(|(a, b)| verify_in_space(&space, game, a, b, tolerance))
        .collect())
}
