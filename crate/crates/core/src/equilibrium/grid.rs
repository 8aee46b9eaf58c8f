use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{Convention, Strategy, ThreeParamStrategy, TwoParamStrategy};

/// Evenly spaced deviation grid over a convention's parameter box, endpoints
/// included.
///
/// Two-parameter: theta in [0, pi] x phi in [0, pi/2] (`n_psi` unused).
/// Three-parameter: theta in [0, pi] x phi in [-pi, pi] x psi in [-pi, pi].
///
/// All counts are odd so the midpoints (theta = pi/2, and phi = psi = 0 in
/// the three-parameter box) are sample points; together with the endpoints
/// this puts C, D and Q on every two-parameter grid exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategyGrid {
    n_theta: usize,
    n_phi: usize,
    n_psi: usize,
}

impl StrategyGrid {
    pub fn new(n_theta: usize, n_phi: usize, n_psi: usize) -> Result<Self> {
        if n_theta < 3 || n_theta.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_theta = {n_theta}: must be odd and >= 3"
            )));
        }
        if n_phi < 3 || n_phi.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_phi = {n_phi}: must be odd and >= 3"
            )));
        }
        if n_psi == 0 || n_psi.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_psi = {n_psi}: must be odd and >= 1"
            )));
        }
        Ok(Self {
            n_theta,
            n_phi,
            n_psi,
        })
    }

    /// 181 x 91 over the two-parameter box (1 degree steps).
    pub fn default_two_param() -> Self {
        Self {
            n_theta: 181,
            n_phi: 91,
            n_psi: 1,
        }
    }

    /// 61 x 61 x 61 over the three-parameter box.
    pub fn default_three_param() -> Self {
        Self {
            n_theta: 61,
            n_phi: 61,
            n_psi: 61,
        }
    }

    pub fn default_for(convention: Convention) -> Self {
        match convention {
            Convention::TwoParam => Self::default_two_param(),
            Convention::ThreeParam => Self::default_three_param(),
        }
    }

    /// Halves the spacing along every axis (n -> 2n - 1). An axis with a
    /// single sample stays single.
    pub fn refined(&self) -> Self {
        let r = |n: usize| if n == 1 { 1 } else { 2 * n - 1 };
        Self {
            n_theta: r(self.n_theta),
            n_phi: r(self.n_phi),
            n_psi: r(self.n_psi),
        }
    }

    pub fn n_theta(&self) -> usize {
        self.n_theta
    }

    pub fn n_phi(&self) -> usize {
        self.n_phi
    }

    pub fn n_psi(&self) -> usize {
        self.n_psi
    }

    pub fn len(&self, convention: Convention) -> usize {
        match convention {
            Convention::TwoParam => self.n_theta * self.n_phi,
            Convention::ThreeParam => self.n_theta * self.n_phi * self.n_psi,
        }
    }

    /// Grid points in theta-major, then phi, then psi order, each axis
    /// ascending. Best-response tie-breaking relies on this order.
    pub fn points(&self, convention: Convention) -> Vec<Strategy> {
        let thetas = linspace(0.0, PI, self.n_theta);
        match convention {
            Convention::TwoParam => {
                let phis = linspace(0.0, FRAC_PI_2, self.n_phi);
                let mut out = Vec::with_capacity(self.len(convention));
                for &t in &thetas {
                    for &p in &phis {
                        out.push(
                            TwoParamStrategy::new(t, p)
                                .expect("grid stays in range")
                                .into(),
                        );
                    }
                }
                out
            }
            Convention::ThreeParam => {
                let phis = linspace(-PI, PI, self.n_phi);
                let psis = if self.n_psi == 1 {
                    vec![0.0]
                } else {
                    linspace(-PI, PI, self.n_psi)
                };
                let mut out = Vec::with_capacity(self.len(convention));
                for &t in &thetas {
                    for &p in &phis {
                        for &s in &psis {
                            out.push(
                                ThreeParamStrategy::new(t, p, s)
                                    .expect("grid stays in range")
                                    .into(),
                            );
                        }
                    }
                }
                out
            }
        }
    }
}

/// `n` evenly spaced samples from `start` to `stop` inclusive. Interior
/// points are computed as start + (stop - start) * (i / (n - 1)) so dyadic
/// fractions of the range land exactly.
pub(crate) fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    if i == n - 1 {
                        stop
                    } else {
                        start + (stop - start) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invalid_counts_are_rejected() {
        assert!(StrategyGrid::new(2, 3, 1).is_err());
        assert!(StrategyGrid::new(4, 3, 1).is_err());
        assert!(StrategyGrid::new(3, 4, 1).is_err());
        assert!(StrategyGrid::new(3, 3, 0).is_err());
        assert!(StrategyGrid::new(3, 3, 2).is_err());
        assert!(StrategyGrid::new(3, 3, 1).is_ok());
    }

    #[test]
    fn two_param_grid_contains_named_points() {
        for grid in [
            StrategyGrid::new(3, 3, 1).unwrap(),
            StrategyGrid::default_two_param(),
            StrategyGrid::new(7, 5, 1).unwrap().refined(),
        ] {
            let pts = grid.points(Convention::TwoParam);
            assert_eq!(pts.len(), grid.len(Convention::TwoParam));
            for named in [Strategy::C, Strategy::D, Strategy::Q] {
                assert!(pts.contains(&named), "{named} missing from {grid:?}");
            }
        }
    }

    #[test]
    fn three_param_grid_has_quarter_turns() {
        let pts = StrategyGrid::default_three_param().points(Convention::ThreeParam);
        assert_eq!(pts.len(), 61 * 61 * 61);
        let want = |t: f64, p: f64, s: f64| ThreeParamStrategy::new(t, p, s).unwrap().into();
        for s in [
            want(0.0, 0.0, 0.0),
            want(PI, 0.0, FRAC_PI_2),
            want(0.0, FRAC_PI_2, -FRAC_PI_2),
        ] {
            assert!(pts.contains(&s));
        }
    }

    #[test]
    fn points_are_theta_major_ascending() {
        let pts = StrategyGrid::new(3, 3, 1)
            .unwrap()
            .points(Convention::TwoParam);
        let pairs: Vec<(f64, f64)> = pts.iter().map(|s| (s.theta(), s.phi())).collect();
        let mut sorted = pairs.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pairs, sorted);
    }

    #[test]
    fn refinement_keeps_counts_odd() {
        let g = StrategyGrid::default_two_param().refined();
        assert_eq!((g.n_theta(), g.n_phi(), g.n_psi()), (361, 181, 1));
        assert!(StrategyGrid::new(g.n_theta(), g.n_phi(), g.n_psi()).is_ok());
    }
}
