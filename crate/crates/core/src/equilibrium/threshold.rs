use std::fmt;

use serde::Serialize;

use crate::channel::DecoherenceParam;
use crate::equilibrium::grid::StrategyGrid;
use crate::equilibrium::pure::{verify_in_space, DeviationSpace};
use crate::error::{Error, Result};
use crate::game::{ClassicalPayoffs, MeasurementBasis, QuantumGame, Strategy};

/// Number of evenly spaced mu values scanned before bisecting.
pub const SCAN_POINTS: usize = 101;

/// Which side of the boundary the profile is an equilibrium on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdDirection {
    NeAbove,
    NeBelow,
}

impl fmt::Display for ThresholdDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ThresholdDirection::NeAbove => "ne_above",
            ThresholdDirection::NeBelow => "ne_below",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdKind {
    /// A single boundary inside [0, 1].
    Boundary,
    /// NE at every scanned mu.
    Always,
    /// NE at no scanned mu.
    Never,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ThresholdResult {
    pub kind: ThresholdKind,
    /// Observed side of the NE region; `None` unless `kind` is `Boundary`.
    pub direction: Option<ThresholdDirection>,
    /// Boundary location; 0 for `Always`, `None` for `Never`.
    pub mu_star: Option<f64>,
    /// -ln(mu*) / 2, infinite when mu* = 0.
    pub gamma_t_star: Option<f64>,
    /// Width of the final bisection bracket.
    pub bracket: Option<(f64, f64)>,
    pub iterations: usize,
}

/// Locates the mu at which `profile` stops (or starts) being a grid Nash
/// equilibrium.
///
/// The NE indicator is first scanned at mu = k/100; more than one change of
/// verdict is rejected as `NotMonotone`. A single change is refined by
/// bisection until the bracket is no wider than `tol`, and the midpoint is
/// returned. When `direction` is given it must match the scan.
pub fn ne_threshold(
    profile: (Strategy, Strategy),
    basis: MeasurementBasis,
    classical: &ClassicalPayoffs,
    grid: &StrategyGrid,
    direction: Option<ThresholdDirection>,
    ne_tolerance: f64,
    tol: f64,
) -> Result<ThresholdResult> {
    let (alice, bob) = profile;
    if alice.convention() != bob.convention() {
        return Err(Error::ConventionMismatch);
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", tol, "a positive finite number"));
    }
    if !(ne_tolerance.is_finite() && ne_tolerance >= 0.0) {
        return Err(Error::invalid(
            "tolerance",
            ne_tolerance,
            "a non-negative finite number",
        ));
    }

    let space = DeviationSpace::new(grid, alice.convention());
    let is_ne = |mu: f64| -> Result<bool> {
        let game = QuantumGame::new(DecoherenceParam::from_mu(mu)?, basis, *classical);
        Ok(verify_in_space(&space, &game, &alice, &bob, ne_tolerance).is_ne)
    };

    let last = (SCAN_POINTS - 1) as f64;
    let mus: Vec<f64> = (0..SCAN_POINTS).map(|k| k as f64 / last).collect();
    let verdicts = mus.iter().map(|&m| is_ne(m)).collect::<Result<Vec<_>>>()?;

    let changes: Vec<usize> = (1..verdicts.len())
        .filter(|&k| verdicts[k] != verdicts[k - 1])
        .collect();
    if changes.len() > 1 {
        return Err(Error::NotMonotone {
            sign_changes: changes.len(),
        });
    }

    let Some(&k) = changes.first() else {
        if direction.is_some() && !verdicts[0] {
            return Err(Error::ValidationFailed(
                "profile is not an equilibrium at any scanned mu".into(),
            ));
        }
        let always = verdicts[0];
        return Ok(ThresholdResult {
            kind: if always {
                ThresholdKind::Always
            } else {
                ThresholdKind::Never
            },
            direction: None,
            mu_star: always.then_some(0.0),
            gamma_t_star: always.then_some(f64::INFINITY),
            bracket: None,
            iterations: 0,
        });
    };

    let observed = if verdicts[k] {
        ThresholdDirection::NeAbove
    } else {
        ThresholdDirection::NeBelow
    };
    if let Some(want) = direction {
        if want != observed {
            return Err(Error::ValidationFailed(format!(
                "requested {want} but the scan shows {observed}"
            )));
        }
    }

    let (mut lo, mut hi) = (mus[k - 1], mus[k]);
    let low_verdict = verdicts[k - 1];
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if is_ne(mid)? == low_verdict {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    let mu_star = 0.5 * (lo + hi);
    Ok(ThresholdResult {
        kind: ThresholdKind::Boundary,
        direction: Some(observed),
        mu_star: Some(mu_star),
        gamma_t_star: Some(DecoherenceParam::from_mu(mu_star)?.gamma_t()),
        bracket: Some((lo, hi)),
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    fn run(
        profile: (Strategy, Strategy),
        delta: f64,
        dir: Option<ThresholdDirection>,
    ) -> Result<ThresholdResult> {
        ne_threshold(
            profile,
            MeasurementBasis::new(delta).unwrap(),
            &ClassicalPayoffs::default(),
            &StrategyGrid::new(37, 19, 1).unwrap(),
            dir,
            1e-9,
            1e-6,
        )
    }

    #[test]
    fn quantum_pair_threshold_is_one_seventh() {
        let r = run(
            (Strategy::Q, Strategy::Q),
            FRAC_PI_2,
            Some(ThresholdDirection::NeAbove),
        )
        .unwrap();
        assert_eq!(r.kind, ThresholdKind::Boundary);
        assert!((r.mu_star.unwrap() - 1.0 / 7.0).abs() < 1e-6);
        let (lo, hi) = r.bracket.unwrap();
        assert!(hi - lo <= 1e-6);
    }

    #[test]
    fn quantum_defect_threshold_is_one_seventh() {
        let r = run((Strategy::Q, Strategy::D), FRAC_PI_2, None).unwrap();
        assert_eq!(r.direction, Some(ThresholdDirection::NeBelow));
        assert!((r.mu_star.unwrap() - 1.0 / 7.0).abs() < 1e-6);
        let g = r.gamma_t_star.unwrap();
        assert!((g - 7f64.ln() / 2.0).abs() < 1e-5);
    }

    #[test]
    fn product_basis_defect_cooperate_is_always_ne() {
        let r = run((Strategy::D, Strategy::C), 0.0, None).unwrap();
        assert_eq!(r.kind, ThresholdKind::Always);
        assert_eq!(r.mu_star, Some(0.0));
    }

    #[test]
    fn never_ne_profile_is_reported() {
        let r = run((Strategy::C, Strategy::C), FRAC_PI_2, None).unwrap();
        assert_eq!(r.kind, ThresholdKind::Never);
        assert_eq!(r.mu_star, None);
        assert!(run(
            (Strategy::C, Strategy::C),
            FRAC_PI_2,
            Some(ThresholdDirection::NeAbove)
        )
        .is_err());
    }

    #[test]
    fn interior_ne_window_is_not_monotone() {
        use crate::game::TwoParamStrategy;
        use std::f64::consts::PI;
        let classical = ClassicalPayoffs::new(
            0.30589785963372274,
            4.310344136020008,
            -0.0948931917273792,
            5.773490618978297,
        )
        .unwrap();
        let a = TwoParamStrategy::new(8.0 * PI / 9.0, 0.3 * PI).unwrap();
        let b = TwoParamStrategy::new(8.0 * PI / 9.0, 0.35 * PI).unwrap();
        let r = ne_threshold(
            (a.into(), b.into()),
            MeasurementBasis::new(0.5).unwrap(),
            &classical,
            &StrategyGrid::new(19, 11, 1).unwrap(),
            None,
            1e-9,
            1e-6,
        );
        assert_eq!(r, Err(Error::NotMonotone { sign_changes: 2 }));
    }

    #[test]
    fn wrong_direction_is_rejected() {
        assert!(matches!(
            run(
                (Strategy::Q, Strategy::Q),
                FRAC_PI_2,
                Some(ThresholdDirection::NeBelow)
            ),
            Err(Error::ValidationFailed(_))
        ));
    }
}
