//! Seeded comparison of each closed-form family against the trace pipeline.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::closed_form::{
    closed_form_2p_entangled, closed_form_2p_general, closed_form_3p, closed_form_product,
};
use crate::game::payoff::{PayoffPair, QuantumGame};
use crate::game::strategy::{Strategy, ThreeParamStrategy, TwoParamStrategy};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaFamily {
    #[serde(rename = "2p_general")]
    TwoParamGeneral,
    #[serde(rename = "2p_entangled")]
    TwoParamEntangled,
    #[serde(rename = "product")]
    Product,
    #[serde(rename = "3p")]
    ThreeParam,
}

impl FormulaFamily {
    pub const ALL: [FormulaFamily; 4] = [
        FormulaFamily::TwoParamGeneral,
        FormulaFamily::TwoParamEntangled,
        FormulaFamily::Product,
        FormulaFamily::ThreeParam,
    ];
}

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaFamily::TwoParamGeneral => "2p_general",
            FormulaFamily::TwoParamEntangled => "2p_entangled",
            FormulaFamily::Product => "product",
            FormulaFamily::ThreeParam => "3p",
        })
    }
}

/// Optional subspace the samples are drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleRestriction {
    Unrestricted,
    /// phi_A = phi_B.
    EqualPhi,
    /// theta_A = theta_B = 0.
    ZeroTheta,
}

impl fmt::Display for SampleRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SampleRestriction::Unrestricted => "unrestricted",
            SampleRestriction::EqualPhi => "equal_phi",
            SampleRestriction::ZeroTheta => "zero_theta",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub alice: Strategy,
    pub bob: Strategy,
    pub mu: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscrepancyReport {
    pub family: FormulaFamily,
    pub restriction: SampleRestriction,
    pub n_samples: usize,
    pub seed: u64,
    /// Per-player max |closed form - trace|.
    pub max_abs_deviation: PayoffPair,
    pub mean_abs_deviation: PayoffPair,
    /// Sample with the largest deviation for either player.
    pub worst_sample: Sample,
    pub worst_closed_form: PayoffPair,
    pub worst_trace: PayoffPair,
}

impl DiscrepancyReport {
    pub fn max_deviation(&self) -> f64 {
        self.max_abs_deviation.alice.max(self.max_abs_deviation.bob)
    }
}

fn draw_theta(rng: &mut ChaCha8Rng, restriction: SampleRestriction) -> f64 {
    match restriction {
        SampleRestriction::ZeroTheta => 0.0,
        _ => rng.random_range(0.0..=PI),
    }
}

fn draw_sample(
    rng: &mut ChaCha8Rng,
    family: FormulaFamily,
    restriction: SampleRestriction,
) -> Result<Sample> {
    let theta_a = draw_theta(rng, restriction);
    let theta_b = draw_theta(rng, restriction);
    let mu = rng.random_range(0.0..=1.0);
    let (alice, bob): (Strategy, Strategy) = match family {
        FormulaFamily::ThreeParam => {
            let phi_a = rng.random_range(-PI..=PI);
            let phi_b = if restriction == SampleRestriction::EqualPhi {
                phi_a
            } else {
                rng.random_range(-PI..=PI)
            };
            let psi_a = rng.random_range(-PI..=PI);
            let psi_b = rng.random_range(-PI..=PI);
            (
                ThreeParamStrategy::new(theta_a, phi_a, psi_a)?.into(),
                ThreeParamStrategy::new(theta_b, phi_b, psi_b)?.into(),
            )
        }
        _ => {
            let phi_a = rng.random_range(0.0..=FRAC_PI_2);
            let phi_b = if restriction == SampleRestriction::EqualPhi {
                phi_a
            } else {
                rng.random_range(0.0..=FRAC_PI_2)
            };
            (
                TwoParamStrategy::new(theta_a, phi_a)?.into(),
                TwoParamStrategy::new(theta_b, phi_b)?.into(),
            )
        }
    };
    let delta = match family {
        FormulaFamily::TwoParamEntangled => FRAC_PI_2,
        FormulaFamily::Product => 0.0,
        _ => rng.random_range(0.0..=FRAC_PI_2),
    };
    Ok(Sample {
        alice,
        bob,
        mu,
        delta,
    })
}

/// Evaluates the family's closed form at a sample.
pub fn evaluate_closed_form(family: FormulaFamily, s: &Sample) -> Result<PayoffPair> {
    use Strategy::{ThreeParam, TwoParam};
    match (family, s.alice, s.bob) {
        (FormulaFamily::TwoParamGeneral, TwoParam(a), TwoParam(b)) => {
            Ok(closed_form_2p_general(&a, &b, s.mu, s.delta))
        }
        (FormulaFamily::TwoParamEntangled, TwoParam(a), TwoParam(b)) => {
            Ok(closed_form_2p_entangled(&a, &b, s.mu))
        }
        (FormulaFamily::Product, TwoParam(a), TwoParam(b)) => Ok(closed_form_product(&a, &b, s.mu)),
        (FormulaFamily::ThreeParam, ThreeParam(a), ThreeParam(b)) => {
            Ok(closed_form_3p(&a, &b, s.mu, s.delta))
        }
        _ => Err(Error::ConventionMismatch),
    }
}

/// Draws `n_samples` parameter tuples from `seed` and compares the family's
/// closed form with the trace pipeline on each.
pub fn cross_validate(
    family: FormulaFamily,
    restriction: SampleRestriction,
    n_samples: usize,
    seed: u64,
) -> Result<DiscrepancyReport> {
    if n_samples == 0 {
        return Err(Error::invalid("n_samples", 0.0, "at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut max_dev = PayoffPair::new(0.0, 0.0);
    let mut sum_dev = PayoffPair::new(0.0, 0.0);
    let mut worst: Option<(f64, Sample, PayoffPair, PayoffPair)> = None;

    for _ in 0..n_samples {
        let sample = draw_sample(&mut rng, family, restriction)?;
        let closed = evaluate_closed_form(family, &sample)?;
        let game = QuantumGame::from_mu_delta(sample.mu, sample.delta)?;
        let traced = game.payoffs(&sample.alice, &sample.bob)?;

        let da = (closed.alice - traced.alice).abs();
        let db = (closed.bob - traced.bob).abs();
        max_dev.alice = max_dev.alice.max(da);
        max_dev.bob = max_dev.bob.max(db);
        sum_dev.alice += da;
        sum_dev.bob += db;
        let d = da.max(db);
        if worst.as_ref().is_none_or(|w| d > w.0) {
            worst = Some((d, sample, closed, traced));
        }
    }

    let (_, worst_sample, worst_closed_form, worst_trace) = worst.expect("n_samples >= 1");
    let n = n_samples as f64;
    Ok(DiscrepancyReport {
        family,
        restriction,
        n_samples,
        seed,
        max_abs_deviation: max_dev,
        mean_abs_deviation: PayoffPair::new(sum_dev.alice / n, sum_dev.bob / n),
        worst_sample,
        worst_closed_form,
        worst_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_samples_is_an_error() {
        assert!(cross_validate(
            FormulaFamily::Product,
            SampleRestriction::Unrestricted,
            0,
            1
        )
        .is_err());
    }

    #[test]
    fn reports_are_deterministic_in_seed() {
        let a = cross_validate(
            FormulaFamily::ThreeParam,
            SampleRestriction::Unrestricted,
            50,
            9,
        )
        .unwrap();
        let b = cross_validate(
            FormulaFamily::ThreeParam,
            SampleRestriction::Unrestricted,
            50,
            9,
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn restrictions_shape_the_samples() {
        let r = cross_validate(
            FormulaFamily::TwoParamGeneral,
            SampleRestriction::ZeroTheta,
            20,
            4,
        )
        .unwrap();
        assert_eq!(r.worst_sample.alice.theta(), 0.0);
        assert_eq!(r.worst_sample.bob.theta(), 0.0);
        let r = cross_validate(
            FormulaFamily::TwoParamEntangled,
            SampleRestriction::EqualPhi,
            20,
            4,
        )
        .unwrap();
        assert_eq!(r.worst_sample.alice.phi(), r.worst_sample.bob.phi());
        assert_eq!(r.worst_sample.delta, FRAC_PI_2);
    }

    #[test]
    fn mismatched_family_and_strategy_is_rejected() {
        let s = Sample {
            alice: Strategy::C,
            bob: Strategy::D,
            mu: 1.0,
            delta: 0.0,
        };
        assert_eq!(
            evaluate_closed_form(FormulaFamily::ThreeParam, &s),
            Err(Error::ConventionMismatch)
        );
    }
}
