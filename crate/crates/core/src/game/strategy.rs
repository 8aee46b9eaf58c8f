//! Player moves and their SU(2) unitaries.
//!
//! The two parameterisations are deliberately separate types: the
//! three-parameter unitary at psi = 0 is not the two-parameter unitary at the
//! same (theta, phi), so mixing them would silently change payoffs.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix2, C64, ONE, ZERO};

/// U = cos(theta/2) R(phi) + sin(theta/2) C, with theta in [0, pi] and
/// phi in [0, pi/2].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TwoParamStrategy {
    theta: f64,
    phi: f64,
}

impl TwoParamStrategy {
    /// Cooperate.
    pub const C: Self = Self {
        theta: 0.0,
        phi: 0.0,
    };
    /// Defect.
    pub const D: Self = Self {
        theta: PI,
        phi: 0.0,
    };
    /// The quantum move.
    pub const Q: Self = Self {
        theta: 0.0,
        phi: FRAC_PI_2,
    };

    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI, "[0, pi]")?;
        check_range("phi", phi, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unitary(&self) -> Matrix2 {
        unitary_2p(self)
    }

    /// "C", "D" or "Q" when the strategy is exactly one of the named moves.
    pub fn name(&self) -> Option<&'static str> {
        if *self == Self::C {
            Some("C")
        } else if *self == Self::D {
            Some("D")
        } else if *self == Self::Q {
            Some("Q")
        } else {
            None
        }
    }
}

/// [[e^{i phi} cos(theta/2), i e^{i psi} sin(theta/2)],
///  [i e^{-i psi} sin(theta/2), e^{-i phi} cos(theta/2)]]
/// with theta in [0, pi] and phi, psi in [-pi, pi].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThreeParamStrategy {
    theta: f64,
    phi: f64,
    psi: f64,
}

impl ThreeParamStrategy {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI, "[0, pi]")?;
        check_range("phi", phi, -PI, PI, "[-pi, pi]")?;
        check_range("psi", psi, -PI, PI, "[-pi, pi]")?;
        Ok(Self { theta, phi, psi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn unitary(&self) -> Matrix2 {
        unitary_3p(self)
    }
}

fn check_range(name: &'static str, v: f64, lo: f64, hi: f64, label: &str) -> Result<()> {
    if v.is_finite() && v >= lo && v <= hi {
        Ok(())
    } else {
        Err(Error::invalid(name, v, format!("a value in {label}")))
    }
}

pub fn unitary_2p(s: &TwoParamStrategy) -> Matrix2 {
    let (sin_half, cos_half) = (s.theta / 2.0).sin_cos();
    let rot = Matrix2::diagonal([C64::from_polar(1.0, s.phi), C64::from_polar(1.0, -s.phi)]);
    // C|0> = -|1>, C|1> = |0>
    let flip = Matrix2::from_rows([[ZERO, ONE], [-ONE, ZERO]]);
    rot * cos_half + flip * sin_half
}

pub fn unitary_3p(s: &ThreeParamStrategy) -> Matrix2 {
    let (sin_half, cos_half) = (s.theta / 2.0).sin_cos();
    let i = C64::i();
    Matrix2::from_rows([
        [
            C64::from_polar(cos_half, s.phi),
            i * C64::from_polar(sin_half, s.psi),
        ],
        [
            i * C64::from_polar(sin_half, -s.psi),
            C64::from_polar(cos_half, -s.phi),
        ],
    ])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Convention {
    #[serde(rename = "2p")]
    TwoParam,
    #[serde(rename = "3p")]
    ThreeParam,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::TwoParam => "2p",
            Convention::ThreeParam => "3p",
        })
    }
}

/// A pure strategy in either convention.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "convention")]
pub enum Strategy {
    #[serde(rename = "2p")]
    TwoParam(TwoParamStrategy),
    #[serde(rename = "3p")]
    ThreeParam(ThreeParamStrategy),
}

impl Strategy {
    pub const C: Self = Strategy::TwoParam(TwoParamStrategy::C);
    pub const D: Self = Strategy::TwoParam(TwoParamStrategy::D);
    pub const Q: Self = Strategy::TwoParam(TwoParamStrategy::Q);

    pub fn convention(&self) -> Convention {
        match self {
            Strategy::TwoParam(_) => Convention::TwoParam,
            Strategy::ThreeParam(_) => Convention::ThreeParam,
        }
    }

    pub fn unitary(&self) -> Matrix2 {
        match self {
            Strategy::TwoParam(s) => s.unitary(),
            Strategy::ThreeParam(s) => s.unitary(),
        }
    }

    pub fn theta(&self) -> f64 {
        match self {
            Strategy::TwoParam(s) => s.theta,
            Strategy::ThreeParam(s) => s.theta,
        }
    }

    pub fn phi(&self) -> f64 {
        match self {
            Strategy::TwoParam(s) => s.phi,
            Strategy::ThreeParam(s) => s.phi,
        }
    }

    pub fn psi(&self) -> Option<f64> {
        match self {
            Strategy::TwoParam(_) => None,
            Strategy::ThreeParam(s) => Some(s.psi),
        }
    }

    pub fn name(&self) -> Option<&'static str> {
        match self {
            Strategy::TwoParam(s) => s.name(),
            Strategy::ThreeParam(_) => None,
        }
    }
}

impl From<TwoParamStrategy> for Strategy {
    fn from(s: TwoParamStrategy) -> Self {
        Strategy::TwoParam(s)
    }
}

impl From<ThreeParamStrategy> for Strategy {
    fn from(s: ThreeParamStrategy) -> Self {
        Strategy::ThreeParam(s)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.name() {
            return f.write_str(name);
        }
        match self {
            Strategy::TwoParam(s) => write!(f, "({:.6}, {:.6})", s.theta, s.phi),
            Strategy::ThreeParam(s) => {
                write!(f, "({:.6}, {:.6}, {:.6})", s.theta, s.phi, s.psi)
            }
        }
    }
}
