use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use qdilemma::game::{
    ClassicalPayoffs, Convention, Strategy, ThreeParamStrategy, TwoParamStrategy,
};

use crate::error::{validation, CliResult};

/// Radians, or one of `pi`, `pi/2`, `pi/4` with an optional leading minus.
pub fn angle(field: &str, text: &str) -> CliResult<f64> {
    let t = text.trim();
    let (sign, body) = match t.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim()),
        None => (1.0, t),
    };
    let value = match body.to_ascii_lowercase().as_str() {
        "pi" => PI,
        "pi/2" => FRAC_PI_2,
        "pi/4" => FRAC_PI_4,
        _ => body.parse::<f64>().map_err(|_| {
            validation(format!(
                "{field}: cannot parse {text:?} as an angle (radians, pi, pi/2 or pi/4)"
            ))
        })?,
    };
    if !value.is_finite() {
        return Err(validation(format!(
            "{field}: angle must be finite, got {text:?}"
        )));
    }
    Ok(sign * value)
}

/// `C`, `D`, `Q` (two-parameter only) or a comma-separated angle tuple
/// matching the convention.
pub fn strategy(field: &str, text: &str, convention: Convention) -> CliResult<Strategy> {
    let named = match text.trim().to_ascii_uppercase().as_str() {
        "C" => Some(Strategy::C),
        "D" => Some(Strategy::D),
        "Q" => Some(Strategy::Q),
        _ => None,
    };
    if let Some(s) = named {
        if convention != Convention::TwoParam {
            return Err(validation(format!(
                "{field}: shorthand {text:?} is only defined for the 2p convention; give theta,phi,psi"
            )));
        }
        return Ok(s);
    }
    let parts = text
        .split(',')
        .map(|p| angle(field, p))
        .collect::<CliResult<Vec<f64>>>()?;
    let built = match (convention, parts.as_slice()) {
        (Convention::TwoParam, [t, p]) => TwoParamStrategy::new(*t, *p).map(Strategy::from),
        (Convention::ThreeParam, [t, p, s]) => {
            ThreeParamStrategy::new(*t, *p, *s).map(Strategy::from)
        }
        (Convention::TwoParam, _) => {
            return Err(validation(format!(
                "{field}: expected C, D, Q or theta,phi for the 2p convention, got {text:?}"
            )))
        }
        (Convention::ThreeParam, _) => {
            return Err(validation(format!(
                "{field}: expected theta,phi,psi for the 3p convention, got {text:?}"
            )))
        }
    };
    built.map_err(|e| validation(format!("{field}: {e}")))
}

/// `R,S,T,P`.
pub fn payoffs(text: &str) -> CliResult<ClassicalPayoffs> {
    let v = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| validation(format!("--payoffs: cannot parse {p:?} as a number")))
        })
        .collect::<CliResult<Vec<f64>>>()?;
    match v.as_slice() {
        [r, s, t, p] => {
            ClassicalPayoffs::new(*r, *s, *t, *p).map_err(|e| validation(format!("--payoffs: {e}")))
        }
        _ => Err(validation(format!(
            "--payoffs: expected four values R,S,T,P, got {text:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_literals() {
        assert_eq!(angle("x", "pi").unwrap(), PI);
        assert_eq!(angle("x", "-pi/2").unwrap(), -FRAC_PI_2);
        assert_eq!(angle("x", "PI/4").unwrap(), FRAC_PI_4);
        assert_eq!(angle("x", "0.25").unwrap(), 0.25);
        assert!(angle("x", "tau").is_err());
        assert!(angle("x", "inf").is_err());
    }

    #[test]
    fn strategies() {
        assert_eq!(
            strategy("a", "q", Convention::TwoParam).unwrap(),
            Strategy::Q
        );
        assert_eq!(
            strategy("a", "pi,0", Convention::TwoParam).unwrap(),
            Strategy::D
        );
        assert!(strategy("a", "Q", Convention::ThreeParam).is_err());
        assert!(strategy("a", "0,0", Convention::ThreeParam).is_err());
        assert!(strategy("a", "0,2", Convention::TwoParam).is_err());
        let s = strategy("a", "0,-pi,pi/2", Convention::ThreeParam).unwrap();
        assert_eq!(s.psi(), Some(FRAC_PI_2));
    }

    #[test]
    fn payoff_list() {
        assert_eq!(payoffs("3,0,5,1").unwrap(), ClassicalPayoffs::default());
        assert!(payoffs("3,0,5").is_err());
        assert!(payoffs("3,0,x,1").is_err());
    }
}
