use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdilemma::equilibrium::ThresholdDirection;
use qdilemma::game::Convention;

#[derive(Debug, Parser)]
#[command(
    name = "qdilemma",
    version,
    about = "Quantum Prisoners' Dilemma under collective dephasing"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Payoffs of one strategy profile, with applicable closed forms.
    Payoff {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        profile: ProfileArgs,
    },
    /// Payoffs of one profile along a parameter range, as CSV.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Parameter to vary.
        #[arg(long, value_enum)]
        param: SweepParam,
        #[arg(long, allow_hyphen_values = true)]
        start: String,
        #[arg(long, allow_hyphen_values = true)]
        stop: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
    },
    /// Nash-equilibrium check of every pair of named moves.
    FindNe {
        #[command(flatten)]
        common: Common,
    },
    /// Decoherence level at which a profile gains or loses NE status.
    Threshold {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        profile: ProfileArgs,
        /// Expected side of the NE region; inferred when omitted.
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
        /// Bisection bracket width.
        #[arg(long, default_value_t = 1e-6)]
        threshold_tol: f64,
    },
    /// Runs the reproduction suite; exit code 1 if any check fails.
    VerifyPaper {
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Integrates the master equation and compares with the closed-form state.
    OracleCheck {
        /// Comma-separated gamma*t values.
        #[arg(long, value_delimiter = ',', default_values_t = [0.1, 0.5, 1.0, 3.0], allow_hyphen_values = true)]
        gamma_t: Vec<f64>,
        #[arg(long, default_value_t = 1e-4)]
        dt: f64,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Verifies the two-point mixed equilibrium of the three-parameter game.
    MixedNe {
        #[command(flatten)]
        common: Common,
        /// Alice's free psi.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        psi: String,
        /// Bob's free phi.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        phi: String,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Decoherence factor exp(-2 gamma t) in [0, 1].
    #[arg(long, conflicts_with = "gamma_t", allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Dimensionless dephasing time gamma*t >= 0.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma_t: Option<f64>,
    /// Measurement-basis entanglement in [0, pi/2] (default pi/2).
    #[arg(long, allow_hyphen_values = true)]
    pub delta: Option<String>,
    #[arg(long, value_enum)]
    pub convention: Option<ConventionArg>,
    /// Classical payoffs R,S,T,P.
    #[arg(long, default_value = "3,0,5,1", allow_hyphen_values = true)]
    pub payoffs: String,
    #[arg(long)]
    pub n_theta: Option<usize>,
    #[arg(long)]
    pub n_phi: Option<usize>,
    #[arg(long)]
    pub n_psi: Option<usize>,
    /// NE tolerance in payoff units.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// C, D, Q, "theta,phi" or "theta,phi,psi".
    #[arg(long, allow_hyphen_values = true)]
    pub alice: String,
    #[arg(long, allow_hyphen_values = true)]
    pub bob: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    #[value(name = "2p")]
    TwoParam,
    #[value(name = "3p")]
    ThreeParam,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::TwoParam => Convention::TwoParam,
            ConventionArg::ThreeParam => Convention::ThreeParam,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Mu,
    Delta,
    #[value(name = "gamma-t", alias = "gamma_t")]
    GammaT,
}

impl SweepParam {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepParam::Mu => "mu",
            SweepParam::Delta => "delta",
            SweepParam::GammaT => "gamma_t",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    #[value(name = "ne_above", alias = "ne-above")]
    NeAbove,
    #[value(name = "ne_below", alias = "ne-below")]
    NeBelow,
}

impl From<DirectionArg> for ThresholdDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::NeAbove => ThresholdDirection::NeAbove,
            DirectionArg::NeBelow => ThresholdDirection::NeBelow,
        }
    }
}
