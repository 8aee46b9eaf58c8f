//! Published closed-form payoff expressions, evaluated literally.
//!
//! These are claims to be checked against the trace pipeline, not
//! alternatives to it. In particular the general two-parameter Bob payoff and
//! the three-parameter pair are known not to agree with the operator
//! formalism everywhere; see `cross_validate`.

use crate::game::payoff::PayoffPair;
use crate::game::strategy::{ThreeParamStrategy, TwoParamStrategy};

struct Halves {
    cos2_a: f64,
    sin2_a: f64,
    cos2_b: f64,
    sin2_b: f64,
    sin_ab: f64,
}

fn halves(theta_a: f64, theta_b: f64) -> Halves {
    let (sa, ca) = (theta_a / 2.0).sin_cos();
    let (sb, cb) = (theta_b / 2.0).sin_cos();
    Halves {
        cos2_a: ca * ca,
        sin2_a: sa * sa,
        cos2_b: cb * cb,
        sin2_b: sb * sb,
        sin_ab: theta_a.sin() * theta_b.sin(),
    }
}

/// Two-parameter payoffs for arbitrary decoherence mu and basis delta.
pub fn closed_form_2p_general(
    a: &TwoParamStrategy,
    b: &TwoParamStrategy,
    mu: f64,
    delta: f64,
) -> PayoffPair {
    let h = halves(a.theta(), b.theta());
    let (pa, pb) = (a.phi(), b.phi());
    let sd = delta.sin();

    let shared = (2.0 + mu * (2.0 * (pa + pb)).cos() * sd) * h.cos2_a * h.cos2_b
        + (2.0 - mu * sd) * h.sin2_a * h.sin2_b
        - 0.25 * (mu + 2.0 * sd) * h.sin_ab * (pa + pb).sin()
        - 1.25 * h.sin_ab * (pa - pb).sin() * sd;

    let alice = shared
        + 2.5 * (1.0 - mu * (2.0 * pa).cos() * sd) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 + mu * (2.0 * pb).cos() * sd) * h.sin2_a * h.cos2_b;
    let bob = shared
        + 2.5 * (1.0 + mu * (2.0 * pa).cos() * sd) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 - mu * (2.0 * pb).cos() * sd) * h.sin2_a * h.cos2_b;
    PayoffPair::new(alice, bob)
}

/// Two-parameter payoffs with the maximally entangled measurement basis.
pub fn closed_form_2p_entangled(a: &TwoParamStrategy, b: &TwoParamStrategy, mu: f64) -> PayoffPair {
    let h = halves(a.theta(), b.theta());
    let (pa, pb) = (a.phi(), b.phi());

    let shared = (2.0 + mu * (2.0 * (pa + pb)).cos()) * h.cos2_a * h.cos2_b
        + (2.0 - mu) * h.sin2_a * h.sin2_b
        - 0.25 * (2.0 + mu) * h.sin_ab * (pa + pb).sin()
        - 1.25 * h.sin_ab * (pa - pb).sin();

    let alice = shared
        + 2.5 * (1.0 - mu * (2.0 * pa).cos()) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 + mu * (2.0 * pb).cos()) * h.sin2_a * h.cos2_b;
    let bob = shared
        + 2.5 * (1.0 + mu * (2.0 * pa).cos()) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 - mu * (2.0 * pb).cos()) * h.sin2_a * h.cos2_b;
    PayoffPair::new(alice, bob)
}

/// Product-basis payoffs. The published expression is a single formula
/// shared by both players.
pub fn closed_form_product(a: &TwoParamStrategy, b: &TwoParamStrategy, mu: f64) -> PayoffPair {
    let h = halves(a.theta(), b.theta());
    let v = 2.0 - h.cos2_a * h.cos2_b + 0.5 * h.cos2_b + 0.5 * h.cos2_a
        - 0.25 * mu * h.sin_ab * (a.phi() + b.phi()).sin();
    PayoffPair::new(v, v)
}

/// Three-parameter payoffs for arbitrary mu and delta.
pub fn closed_form_3p(
    a: &ThreeParamStrategy,
    b: &ThreeParamStrategy,
    mu: f64,
    delta: f64,
) -> PayoffPair {
    let h = halves(a.theta(), b.theta());
    let (pa, pb, qa, qb) = (a.phi(), b.phi(), a.psi(), b.psi());
    let sd = delta.sin();

    let shared = (2.0 + mu * (2.0 * (pa + pb)).cos() * sd) * h.cos2_a * h.cos2_b
        + (2.0 - mu * (2.0 * (qa + qb)).cos() * sd) * h.sin2_a * h.sin2_b;
    let cross_common = mu * (pa + pb - qa - qb).sin() + sd * 2.0 * (pa + pb + qa + qb).sin();
    let cross_split = sd * 5.0 * (pa - pb + qa - qb).sin();

    let alice = shared
        + 2.5 * (1.0 - mu * (2.0 * (pa - qb)).cos() * sd) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 + mu * (2.0 * (pb - qa)).cos() * sd) * h.sin2_a * h.cos2_b
        + 0.25 * h.sin_ab * (cross_common - cross_split);
    let bob = shared
        + 2.5 * (1.0 + mu * (2.0 * (pa - qb)).cos() * sd) * h.cos2_a * h.sin2_b
        + 2.5 * (1.0 - mu * (2.0 * (pb - qa)).cos() * sd) * h.sin2_a * h.cos2_b
        + 0.25 * h.sin_ab * (cross_common + cross_split);
    PayoffPair::new(alice, bob)
}
