//! Nash-equilibrium search over discretised strategy spaces.

pub mod grid;
pub mod mixed;
pub mod pure;
pub mod threshold;

pub use grid::StrategyGrid;
pub use mixed::{
    component_payoffs, expected_payoff_mixed, flip_phase_mix, verify_mixed_ne, MixedStrategy,
};
pub use pure::{
    best_response, default_candidates, enumerate_pure_ne, verify_pure_ne, ComponentPayoff,
    Deviation, EquilibriumReport, Profile,
};
pub use threshold::{ne_threshold, ThresholdDirection, ThresholdKind, ThresholdResult};
