//! Measurement projectors interpolating between the product basis
//! (delta = 0) and the maximally entangled basis (delta = pi/2), and the
//! payoff operators built from them.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix4, C64, ZERO};

/// Entanglement of the measurement basis, delta in [0, pi/2].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct MeasurementBasis {
    delta: f64,
}

impl MeasurementBasis {
    pub const PRODUCT: Self = Self { delta: 0.0 };
    pub const ENTANGLED: Self = Self { delta: FRAC_PI_2 };

    pub fn new(delta: f64) -> Result<Self> {
        if delta.is_finite() && (0.0..=FRAC_PI_2).contains(&delta) {
            Ok(Self { delta })
        } else {
            Err(Error::invalid("delta", delta, "a value in [0, pi/2]"))
        }
    }

    pub fn delta(self) -> f64 {
        self.delta
    }
}

impl TryFrom<f64> for MeasurementBasis {
    type Error = Error;

    fn try_from(delta: f64) -> Result<Self> {
        Self::new(delta)
    }
}

impl From<MeasurementBasis> for f64 {
    fn from(b: MeasurementBasis) -> f64 {
        b.delta
    }
}

/// Rank-one projectors labelled by the classical outcome they reward.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Projectors {
    pub p00: Matrix4,
    pub p11: Matrix4,
    pub p10: Matrix4,
    pub p01: Matrix4,
}

impl Projectors {
    pub fn all(&self) -> [Matrix4; 4] {
        [self.p00, self.p11, self.p10, self.p01]
    }
}

/// Basis vectors in |00>, |01>, |10>, |11> order:
/// psi00 = cos(d/2)|00> + i sin(d/2)|11>
/// psi11 = cos(d/2)|11> + i sin(d/2)|00>
/// psi10 = cos(d/2)|10> - i sin(d/2)|01>
/// psi01 = cos(d/2)|01> - i sin(d/2)|10>
pub fn measurement_vectors(b: MeasurementBasis) -> [[C64; 4]; 4] {
    let (s, c) = (b.delta / 2.0).sin_cos();
    let c = C64::new(c, 0.0);
    let is = C64::new(0.0, s);
    [
        [c, ZERO, ZERO, is],
        [is, ZERO, ZERO, c],
        [ZERO, -is, c, ZERO],
        [ZERO, c, -is, ZERO],
    ]
}

pub fn measurement_projectors(b: MeasurementBasis) -> Projectors {
    let [v00, v11, v10, v01] = measurement_vectors(b);
    Projectors {
        p00: Matrix4::outer(&v00),
        p11: Matrix4::outer(&v11),
        p10: Matrix4::outer(&v10),
        p01: Matrix4::outer(&v01),
    }
}

/// Entries of the classical bimatrix, seen from the row player.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalPayoffs {
    /// Both cooperate.
    pub reward: f64,
    /// Cooperating against a defector.
    pub sucker: f64,
    /// Defecting against a cooperator.
    pub temptation: f64,
    /// Both defect.
    pub punishment: f64,
}

impl Default for ClassicalPayoffs {
    fn default() -> Self {
        Self {
            reward: 3.0,
            sucker: 0.0,
            temptation: 5.0,
            punishment: 1.0,
        }
    }
}

impl ClassicalPayoffs {
    pub fn new(reward: f64, sucker: f64, temptation: f64, punishment: f64) -> Result<Self> {
        for (name, v) in [
            ("reward", reward),
            ("sucker", sucker),
            ("temptation", temptation),
            ("punishment", punishment),
        ] {
            if !v.is_finite() {
                return Err(Error::invalid(name, v, "a finite payoff"));
            }
        }
        Ok(Self {
            reward,
            sucker,
            temptation,
            punishment,
        })
    }

    fn entries(&self) -> [f64; 4] {
        [self.reward, self.sucker, self.temptation, self.punishment]
    }

    pub fn min(&self) -> f64 {
        self.entries().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.entries().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn sum(&self) -> f64 {
        self.entries().iter().sum()
    }

    /// Classical bimatrix lookup: `true` means defect.
    pub fn classical(&self, alice_defects: bool, bob_defects: bool) -> (f64, f64) {
        match (alice_defects, bob_defects) {
            (false, false) => (self.reward, self.reward),
            (false, true) => (self.sucker, self.temptation),
            (true, false) => (self.temptation, self.sucker),
            (true, true) => (self.punishment, self.punishment),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PayoffOperators {
    pub alice: Matrix4,
    pub bob: Matrix4,
}

/// P_A = R P00 + P P11 + T P10 + S P01 and P_B with T and S swapped.
pub fn payoff_operators(b: MeasurementBasis, c: &ClassicalPayoffs) -> PayoffOperators {
    let p = measurement_projectors(b);
    let common = p.p00 * c.reward + p.p11 * c.punishment;
    PayoffOperators {
        alice: common + p.p10 * c.temptation + p.p01 * c.sucker,
        bob: common + p.p10 * c.sucker + p.p01 * c.temptation,
    }
}
