//! Strategies, measurement, and payoffs of the quantized game.

pub mod closed_form;
pub mod cross_validate;
pub mod measurement;
pub mod payoff;
pub mod strategy;

pub use closed_form::{
    closed_form_2p_entangled, closed_form_2p_general, closed_form_3p, closed_form_product,
};
pub use cross_validate::{cross_validate, DiscrepancyReport, FormulaFamily, SampleRestriction};
pub use measurement::{
    measurement_projectors, payoff_operators, ClassicalPayoffs, MeasurementBasis, PayoffOperators,
    Projectors,
};
pub use payoff::{apply_strategies, trace_payoffs, PayoffPair, Player, QuantumGame};
pub use strategy::{
    unitary_2p, unitary_3p, Convention, Strategy, ThreeParamStrategy, TwoParamStrategy,
};
