use std::path::PathBuf;

use qdilemma::channel::DecoherenceParam;
use qdilemma::equilibrium::StrategyGrid;
use qdilemma::game::{ClassicalPayoffs, Convention, MeasurementBasis};
use serde::Serialize;

use crate::args::Common;
use crate::error::{validation, CliResult};
use crate::parse;

/// Whether a command takes a fixed decoherence level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoherence {
    Required,
    /// The command scans decoherence itself; the reason names the scan.
    Forbidden(&'static str),
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub decoherence: Option<DecoherenceParam>,
    pub gamma_t: Option<f64>,
    pub basis: MeasurementBasis,
    pub delta_given: bool,
    pub convention: Convention,
    pub classical: ClassicalPayoffs,
    pub grid: StrategyGrid,
    pub tolerance: f64,
    pub seed: u64,
    pub output: Option<PathBuf>,
    pub json: bool,
}

/// The part of the configuration echoed in JSON output.
#[derive(Serialize)]
pub struct ConfigRecord {
    pub mu: Option<f64>,
    pub gamma_t: Option<f64>,
    pub delta: f64,
    pub convention: Convention,
    pub payoffs: ClassicalPayoffs,
    pub grid: StrategyGrid,
    pub tolerance: f64,
    pub seed: u64,
}

impl RunConfig {
    pub fn resolve(
        common: &Common,
        decoherence: Decoherence,
        default_convention: Convention,
    ) -> CliResult<Self> {
        let given = common.mu.is_some() || common.gamma_t.is_some();
        let (param, gamma_t) = match decoherence {
            Decoherence::Forbidden(why) => {
                if given {
                    return Err(validation(format!(
                        "--mu/--gamma-t: not accepted here ({why})"
                    )));
                }
                (None, None)
            }
            Decoherence::Required => match (common.mu, common.gamma_t) {
                (Some(mu), None) => (
                    Some(
                        DecoherenceParam::from_mu(mu)
                            .map_err(|e| validation(format!("--mu: {e}")))?,
                    ),
                    None,
                ),
                (None, Some(gt)) => (
                    Some(
                        DecoherenceParam::from_gamma_t(gt)
                            .map_err(|e| validation(format!("--gamma-t: {e}")))?,
                    ),
                    Some(gt),
                ),
                _ => {
                    return Err(validation(
                        "--mu/--gamma-t: exactly one is required (mu in [0, 1], gamma_t >= 0)",
                    ))
                }
            },
        };

        let delta = match &common.delta {
            Some(text) => parse::angle("--delta", text)?,
            None => std::f64::consts::FRAC_PI_2,
        };
        let basis =
            MeasurementBasis::new(delta).map_err(|e| validation(format!("--delta: {e}")))?;

        let convention = common
            .convention
            .map(Convention::from)
            .unwrap_or(default_convention);
        let classical = parse::payoffs(&common.payoffs)?;

        let base = StrategyGrid::default_for(convention);
        let grid = StrategyGrid::new(
            common.n_theta.unwrap_or(base.n_theta()),
            common.n_phi.unwrap_or(base.n_phi()),
            common.n_psi.unwrap_or(base.n_psi()),
        )
        .map_err(|e| validation(format!("--n-theta/--n-phi/--n-psi: {e}")))?;

        if !(common.tolerance.is_finite() && common.tolerance >= 0.0) {
            return Err(validation(format!(
                "--tolerance = {}: expected a finite value >= 0",
                common.tolerance
            )));
        }

        Ok(Self {
            decoherence: param,
            gamma_t,
            basis,
            delta_given: common.delta.is_some(),
            convention,
            classical,
            grid,
            tolerance: common.tolerance,
            seed: common.seed,
            output: common.output.clone(),
            json: common.json,
        })
    }

    /// Decoherence for commands resolved with `Decoherence::Required`.
    pub fn param(&self) -> DecoherenceParam {
        self.decoherence.expect("decoherence resolved as required")
    }

    pub fn record(&self) -> ConfigRecord {
        ConfigRecord {
            mu: self.decoherence.map(|d| d.mu()),
            gamma_t: self.gamma_t,
            delta: self.basis.delta(),
            convention: self.convention,
            payoffs: self.classical,
            grid: self.grid,
            tolerance: self.tolerance,
            seed: self.seed,
        }
    }
}
