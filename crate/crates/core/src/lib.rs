//! Prisoners' Dilemma played on a two-qubit state that has undergone
//! collective dephasing.
//!
//! The engine builds the dephased state, applies the players' local
//! unitaries, measures payoffs with basis-dependent projectors, and searches
//! for pure and mixed Nash equilibria over discretised strategy spaces.
//!
//! ```
//! use qdilemma::game::{QuantumGame, Strategy};
//!
//! let game = QuantumGame::from_mu_delta(0.5, std::f64::consts::FRAC_PI_2).unwrap();
//! let p = game.payoffs(&Strategy::Q, &Strategy::Q).unwrap();
//! assert!((p.alice - 2.5).abs() < 1e-12);
//! ```

pub mod channel;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod linalg;
pub mod suite;
pub mod tolerance;

pub use error::{Error, Result};
