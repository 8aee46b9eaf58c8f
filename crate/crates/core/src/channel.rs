//! Collective dephasing of the shared two-qubit state.
//!
//! Every downstream quantity depends on elapsed dephasing only through
//! mu = exp(-2 gamma t), so the engine is parameterised by mu directly and
//! mu = 0 stands for complete decoherence. The master-equation integrator is
//! an independent check on the closed form, not part of the payoff path.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{DensityMatrix4, Matrix4, C64, I, ONE, ZERO};
use crate::tolerance;

/// Decoherence level mu = exp(-2 gamma t), in [0, 1].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct DecoherenceParam {
    mu: f64,
}

impl DecoherenceParam {
    pub const COHERENT: Self = Self { mu: 1.0 };
    pub const FULLY_DEPHASED: Self = Self { mu: 0.0 };

    pub fn from_mu(mu: f64) -> Result<Self> {
        if mu.is_finite() && (0.0..=1.0).contains(&mu) {
            Ok(Self { mu })
        } else {
            Err(Error::invalid("mu", mu, "a value in [0, 1]"))
        }
    }

    /// Builds mu from the dimensionless product gamma * t.
    pub fn from_gamma_t(gamma_t: f64) -> Result<Self> {
        if gamma_t.is_finite() && gamma_t >= 0.0 {
            Ok(Self {
                mu: (-2.0 * gamma_t).exp(),
            })
        } else {
            Err(Error::invalid("gamma_t", gamma_t, "a finite value >= 0"))
        }
    }

    pub fn mu(self) -> f64 {
        self.mu
    }

    /// gamma * t = -ln(mu) / 2; infinite at mu = 0.
    pub fn gamma_t(self) -> f64 {
        -self.mu.ln() / 2.0
    }
}

impl TryFrom<f64> for DecoherenceParam {
    type Error = Error;

    fn try_from(mu: f64) -> Result<Self> {
        Self::from_mu(mu)
    }
}

impl From<DecoherenceParam> for f64 {
    fn from(p: DecoherenceParam) -> f64 {
        p.mu
    }
}

pub fn decoherence_from_gamma_t(gamma_t: f64) -> Result<DecoherenceParam> {
    DecoherenceParam::from_gamma_t(gamma_t)
}

/// (|00> + i|11>) / sqrt(2).
pub fn phi_plus() -> [C64; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [C64::new(h, 0.0), ZERO, ZERO, I * h]
}

/// The shared state after dephasing:
/// (1 - mu)/2 (|00><00| + |11><11|) + mu |phi+><phi+|.
pub fn initial_state(p: DecoherenceParam) -> DensityMatrix4 {
    let mu = p.mu();
    let classical = Matrix4::diagonal([ONE, ZERO, ZERO, ONE]) * (0.5 * (1.0 - mu));
    let entangled = Matrix4::outer(&phi_plus()) * mu;
    DensityMatrix4::new_unchecked(classical + entangled)
}

/// Generator of collective dephasing on two qubits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CollectiveDephasing {
    jz: Matrix4,
}

impl Default for CollectiveDephasing {
    fn default() -> Self {
        Self::new()
    }
}

impl CollectiveDephasing {
    /// J_z = (sigma_z (x) 1 + 1 (x) sigma_z) / 2 = diag(1, 0, 0, -1).
    pub fn new() -> Self {
        Self {
            jz: Matrix4::diagonal([ONE, ZERO, ZERO, -ONE]),
        }
    }

    pub fn jz(&self) -> &Matrix4 {
        &self.jz
    }

    /// d rho / dt = (gamma / 2) (2 J rho J - J^2 rho - rho J^2).
    pub fn rhs(&self, gamma: f64, rho: &Matrix4) -> Matrix4 {
        let j = self.jz;
        let j2 = j * j;
        let sandwich = (j * *rho * j) * 2.0;
        (sandwich - j2 * *rho - *rho * j2) * (gamma / 2.0)
    }
}

/// Integrates the collective-dephasing master equation with classical RK4.
///
/// The step count is ceil(t / dt) with the step shrunk to land exactly on t.
/// The result is re-Hermitised and validated at a 1e-8 tolerance.
pub fn integrate_master_equation(
    rho0: &DensityMatrix4,
    gamma: f64,
    t: f64,
    dt: f64,
) -> Result<DensityMatrix4> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::invalid("gamma", gamma, "a finite value >= 0"));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::invalid("t", t, "a finite value >= 0"));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::invalid("dt", dt, "a finite value > 0"));
    }
    if t == 0.0 {
        return Ok(*rho0);
    }
    if dt > t {
        return Err(Error::invalid(
            "dt",
            dt,
            format!("a step no larger than t = {t}"),
        ));
    }

    let gen = CollectiveDephasing::new();
    let steps = (t / dt).ceil() as usize;
    let h = t / steps as f64;
    let mut rho = *rho0.matrix();
    for _ in 0..steps {
        let k1 = gen.rhs(gamma, &rho);
        let k2 = gen.rhs(gamma, &(rho + k1 * (h / 2.0)));
        let k3 = gen.rhs(gamma, &(rho + k2 * (h / 2.0)));
        let k4 = gen.rhs(gamma, &(rho + k3 * h));
        rho = rho + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }

    DensityMatrix4::with_tolerance(rho.hermitian_part(), tolerance::INTEGRATOR_VALIDATION)
}
