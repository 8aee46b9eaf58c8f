use std::f64::consts::FRAC_PI_2;

use qdilemma::channel::{initial_state, integrate_master_equation, DecoherenceParam};
use qdilemma::equilibrium::{
    default_candidates, enumerate_pure_ne, flip_phase_mix, ne_threshold, verify_mixed_ne,
    EquilibriumReport, ThresholdKind, ThresholdResult,
};
use qdilemma::game::{
    closed_form_2p_entangled, closed_form_2p_general, closed_form_3p, closed_form_product,
    Convention, FormulaFamily, MeasurementBasis, PayoffPair, QuantumGame, Strategy,
};
use qdilemma::suite::{run_suite, CriterionOutcome, SuiteOptions, SUITE_SEED};
use qdilemma::tolerance;
use rayon::prelude::*;
use serde::Serialize;

use crate::args::{ProfileArgs, SweepParam};
use crate::config::{ConfigRecord, RunConfig};
use crate::error::{validation, CliError, CliResult};
use crate::format::{decimal, number};
use crate::parse;

pub const SCHEMA_VERSION: u32 = 1;

/// Rendered command output plus the failure to report after printing it.
pub struct Rendered {
    pub body: String,
    pub failure: Option<CliError>,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Self {
            body,
            failure: None,
        }
    }
}

#[derive(Serialize)]
struct Envelope<'a, C: Serialize, R: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: C,
    results: Vec<R>,
}

fn to_json<C: Serialize, R: Serialize>(command: &str, config: C, results: Vec<R>) -> String {
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        results,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("report serializes");
    s.push('\n');
    s
}

fn game(cfg: &RunConfig) -> QuantumGame {
    QuantumGame::new(cfg.param(), cfg.basis, cfg.classical)
}

fn profile(p: &ProfileArgs, convention: Convention) -> CliResult<(Strategy, Strategy)> {
    Ok((
        parse::strategy("--alice", &p.alice, convention)?,
        parse::strategy("--bob", &p.bob, convention)?,
    ))
}

#[derive(Serialize)]
struct ClosedFormRow {
    family: FormulaFamily,
    payoff_a: f64,
    payoff_b: f64,
    deviation: f64,
}

#[derive(Serialize)]
struct PayoffRow {
    alice: Strategy,
    bob: Strategy,
    payoff_a: f64,
    payoff_b: f64,
    closed_forms: Vec<ClosedFormRow>,
}

fn near(x: f64, target: f64) -> bool {
    (x - target).abs() <= tolerance::CLOSED_FORM_APPLICABILITY
}

/// Closed forms whose assumptions match the profile and basis. Printed
/// expressions assume the default bimatrix.
fn applicable_closed_forms(
    cfg: &RunConfig,
    a: &Strategy,
    b: &Strategy,
) -> Vec<(FormulaFamily, PayoffPair)> {
    if cfg.classical != Default::default() {
        return Vec::new();
    }
    let mu = cfg.param().mu();
    let delta = cfg.basis.delta();
    let mut out = Vec::new();
    match (a, b) {
        (Strategy::TwoParam(a), Strategy::TwoParam(b)) => {
            out.push((
                FormulaFamily::TwoParamGeneral,
                closed_form_2p_general(a, b, mu, delta),
            ));
            if near(delta, FRAC_PI_2) {
                out.push((
                    FormulaFamily::TwoParamEntangled,
                    closed_form_2p_entangled(a, b, mu),
                ));
            }
            if near(delta, 0.0) {
                out.push((FormulaFamily::Product, closed_form_product(a, b, mu)));
            }
        }
        (Strategy::ThreeParam(a), Strategy::ThreeParam(b)) => {
            out.push((FormulaFamily::ThreeParam, closed_form_3p(a, b, mu, delta)));
        }
        _ => {}
    }
    out
}

pub fn payoff(cfg: &RunConfig, p: &ProfileArgs) -> CliResult<Rendered> {
    let (a, b) = profile(p, cfg.convention)?;
    let traced = game(cfg).payoffs(&a, &b)?;
    let closed: Vec<ClosedFormRow> = applicable_closed_forms(cfg, &a, &b)
        .into_iter()
        .map(|(family, v)| ClosedFormRow {
            family,
            payoff_a: v.alice,
            payoff_b: v.bob,
            deviation: v.max_abs_diff(&traced),
        })
        .collect();

    if cfg.json {
        let row = PayoffRow {
            alice: a,
            bob: b,
            payoff_a: traced.alice,
            payoff_b: traced.bob,
            closed_forms: closed,
        };
        return Ok(Rendered::ok(to_json("payoff", cfg.record(), vec![row])));
    }
    let mut s = format!(
        "payoff_a={}\npayoff_b={}\n",
        decimal(traced.alice),
        decimal(traced.bob)
    );
    for c in &closed {
        s += &format!(
            "closed_form {}: payoff_a={} payoff_b={} deviation={:e}\n",
            c.family,
            decimal(c.payoff_a),
            decimal(c.payoff_b),
            c.deviation
        );
    }
    Ok(Rendered::ok(s))
}

/// Inclusive grid start, start + step, ... capped at `stop`.
fn sweep_values(start: f64, stop: f64, step: f64) -> CliResult<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(validation(format!(
            "--step = {step}: expected a finite value > 0"
        )));
    }
    if start > stop {
        return Err(validation(format!(
            "--start = {start} exceeds --stop = {stop}"
        )));
    }
    let span = (stop - start) / step;
    if span > 1e6 {
        return Err(validation(format!(
            "--step = {step}: at most 1e6 steps allowed, range needs {span:.0}"
        )));
    }
    let n = (span + 1e-9).floor() as usize + 1;
    Ok((0..n)
        .map(|k| (start + k as f64 * step).min(stop))
        .collect())
}

fn sweep_point(
    param: SweepParam,
    value: f64,
    cfg: &RunConfig,
) -> CliResult<(DecoherenceParam, MeasurementBasis)> {
    let name = format!("--start/--stop ({})", param.column_name());
    let wrap = |e: qdilemma::Error| validation(format!("{name}: {e}"));
    Ok(match param {
        SweepParam::Mu => (DecoherenceParam::from_mu(value).map_err(wrap)?, cfg.basis),
        SweepParam::GammaT => (
            DecoherenceParam::from_gamma_t(value).map_err(wrap)?,
            cfg.basis,
        ),
        SweepParam::Delta => (cfg.param(), MeasurementBasis::new(value).map_err(wrap)?),
    })
}

#[derive(Serialize)]
struct SweepRow {
    param: &'static str,
    value: f64,
    alice: Strategy,
    bob: Strategy,
    payoff_a: f64,
    payoff_b: f64,
}

pub const CSV_HEADER: [&str; 10] = [
    "param", "value", "theta_a", "phi_a", "psi_a", "theta_b", "phi_b", "psi_b", "payoff_a",
    "payoff_b",
];

fn csv_body(rows: &[SweepRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    let psi = |s: &Strategy| s.psi().map(number).unwrap_or_default();
    for r in rows {
        w.write_record([
            r.param.to_string(),
            number(r.value),
            number(r.alice.theta()),
            number(r.alice.phi()),
            psi(&r.alice),
            number(r.bob.theta()),
            number(r.bob.phi()),
            psi(&r.bob),
            number(r.payoff_a),
            number(r.payoff_b),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
}

pub fn sweep(
    cfg: &RunConfig,
    p: &ProfileArgs,
    param: SweepParam,
    start: &str,
    stop: &str,
    step: &str,
) -> CliResult<Rendered> {
    if param == SweepParam::Delta && cfg.delta_given {
        return Err(validation("--delta: not accepted when sweeping delta"));
    }
    let (a, b) = profile(p, cfg.convention)?;
    let values = sweep_values(
        parse::angle("--start", start)?,
        parse::angle("--stop", stop)?,
        parse::angle("--step", step)?,
    )?;
    let points = values
        .iter()
        .map(|&v| sweep_point(param, v, cfg))
        .collect::<CliResult<Vec<_>>>()?;

    let rows = values
        .par_iter()
        .zip(points.par_iter())
        .map(|(&value, &(d, basis))| {
            let pay = QuantumGame::new(d, basis, cfg.classical).payoffs(&a, &b)?;
            Ok(SweepRow {
                param: param.column_name(),
                value,
                alice: a,
                bob: b,
                payoff_a: pay.alice,
                payoff_b: pay.bob,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    if cfg.json {
        return Ok(Rendered::ok(to_json("sweep", cfg.record(), rows)));
    }
    Ok(Rendered::ok(csv_body(&rows)))
}

fn profile_label(r: &EquilibriumReport) -> String {
    r.pure_profile()
        .map(|(a, b)| format!("({a},{b})"))
        .unwrap_or_else(|| "mixed".into())
}

pub fn find_ne(cfg: &RunConfig) -> CliResult<Rendered> {
    let reports = enumerate_pure_ne(
        &game(cfg),
        &default_candidates(cfg.convention),
        &cfg.grid,
        cfg.tolerance,
    )?;
    if cfg.json {
        return Ok(Rendered::ok(to_json("find-ne", cfg.record(), reports)));
    }
    let mut s = String::new();
    for r in &reports {
        s += &format!(
            "{} is_ne={} payoff_a={} payoff_b={} worst_gain={} witness={}:{}\n",
            profile_label(r),
            r.is_ne,
            decimal(r.payoffs.alice),
            decimal(r.payoffs.bob),
            decimal(r.worst_deviation_gain),
            r.witness.player,
            r.witness.strategy,
        );
    }
    let set: Vec<String> = reports
        .iter()
        .filter(|r| r.is_ne)
        .map(profile_label)
        .collect();
    s += &format!("ne_set={{{}}}\n", set.join(","));
    Ok(Rendered::ok(s))
}

#[derive(Serialize)]
struct ThresholdRow {
    alice: Strategy,
    bob: Strategy,
    #[serde(flatten)]
    result: ThresholdResult,
}

pub fn threshold(
    cfg: &RunConfig,
    p: &ProfileArgs,
    direction: Option<crate::args::DirectionArg>,
    tol: f64,
) -> CliResult<Rendered> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(validation(format!(
            "--threshold-tol = {tol}: expected a finite value > 0"
        )));
    }
    let (a, b) = profile(p, cfg.convention)?;
    let result = ne_threshold(
        (a, b),
        cfg.basis,
        &cfg.classical,
        &cfg.grid,
        direction.map(Into::into),
        cfg.tolerance,
        tol,
    )?;
    if cfg.json {
        let row = ThresholdRow {
            alice: a,
            bob: b,
            result,
        };
        return Ok(Rendered::ok(to_json("threshold", cfg.record(), vec![row])));
    }
    let s = match result.kind {
        ThresholdKind::Always => "always NE\nmu_star=0\n".to_string(),
        ThresholdKind::Never => "never NE\n".to_string(),
        ThresholdKind::Boundary => format!(
            "mu_star={}\ngamma_t_star={}\ndirection={}\n",
            number(result.mu_star.expect("boundary has mu_star")),
            number(result.gamma_t_star.expect("boundary has gamma_t")),
            result.direction.expect("boundary has a direction"),
        ),
    };
    Ok(Rendered::ok(s))
}

#[derive(Serialize)]
struct SuiteConfig {
    seed: u64,
}

#[derive(Serialize)]
struct SuiteJson<'a> {
    schema_version: u32,
    command: &'static str,
    config: SuiteConfig,
    results: &'a [CriterionOutcome],
    discrepancy_reports: &'a [qdilemma::game::DiscrepancyReport],
    all_passed: bool,
}

pub fn verify_paper(seed: Option<u64>, json: bool) -> CliResult<Rendered> {
    let seed = seed.unwrap_or(SUITE_SEED);
    let report = run_suite(&SuiteOptions {
        seed,
        ..SuiteOptions::default()
    });
    let passed = report.criteria.iter().filter(|c| c.passed).count();
    let total = report.criteria.len();
    let body = if json {
        let out = SuiteJson {
            schema_version: SCHEMA_VERSION,
            command: "verify-paper",
            config: SuiteConfig { seed },
            results: &report.criteria,
            discrepancy_reports: &report.discrepancy_reports,
            all_passed: report.all_passed(),
        };
        let mut s = serde_json::to_string_pretty(&out).expect("report serializes");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for c in &report.criteria {
            s += &c.summary_line();
            s.push('\n');
        }
        for r in &report.discrepancy_reports {
            s += &format!(
                "discrepancy {}: max |closed form - trace| = {} over {} samples\n",
                r.family,
                number(r.max_deviation()),
                r.n_samples
            );
        }
        s += &format!("{passed}/{total} criteria passed\n");
        s
    };
    let failure = (!report.all_passed()).then(|| {
        CliError::VerificationFailed(format!("{} of {total} criteria failed", total - passed))
    });
    Ok(Rendered { body, failure })
}

#[derive(Serialize)]
struct OracleRow {
    gamma_t: f64,
    dt: f64,
    frobenius_distance: f64,
    within_tolerance: bool,
}

/// Frobenius tolerance between the integrated and closed-form states.
pub const ORACLE_TOLERANCE: f64 = 1e-6;

pub fn oracle_check(gamma_ts: &[f64], dt: f64, json: bool) -> CliResult<Rendered> {
    if gamma_ts.is_empty() {
        return Err(validation("--gamma-t: at least one value is required"));
    }
    let params = gamma_ts
        .iter()
        .map(|&g| {
            DecoherenceParam::from_gamma_t(g).map_err(|e| validation(format!("--gamma-t: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    if !(dt.is_finite() && dt > 0.0) {
        return Err(validation(format!(
            "--dt = {dt}: expected a finite value > 0"
        )));
    }
    let rho0 = initial_state(DecoherenceParam::COHERENT);
    let rows = gamma_ts
        .iter()
        .zip(&params)
        .map(|(&gt, &p)| {
            let integrated = integrate_master_equation(&rho0, 1.0, gt, dt)?;
            let d = integrated
                .matrix()
                .frobenius_distance(initial_state(p).matrix());
            Ok(OracleRow {
                gamma_t: gt,
                dt,
                frobenius_distance: d,
                within_tolerance: d <= ORACLE_TOLERANCE,
            })
        })
        .collect::<CliResult<Vec<_>>>()?;

    let bad = rows.iter().filter(|r| !r.within_tolerance).count();
    let body = if json {
        #[derive(Serialize)]
        struct Cfg {
            dt: f64,
            tolerance: f64,
        }
        to_json(
            "oracle-check",
            Cfg {
                dt,
                tolerance: ORACLE_TOLERANCE,
            },
            rows,
        )
    } else {
        rows.iter()
            .map(|r| {
                format!(
                    "gamma_t={} distance={:e} {}\n",
                    number(r.gamma_t),
                    r.frobenius_distance,
                    if r.within_tolerance { "ok" } else { "EXCEEDS" }
                )
            })
            .collect()
    };
    let failure = (bad > 0).then(|| {
        CliError::VerificationFailed(format!("{bad} distance(s) exceed {ORACLE_TOLERANCE:e}"))
    });
    Ok(Rendered { body, failure })
}

#[derive(Serialize)]
struct MixedConfig {
    #[serde(flatten)]
    base: ConfigRecord,
    psi: f64,
    phi: f64,
}

pub fn mixed_ne(cfg: &RunConfig, psi: &str, phi: &str) -> CliResult<Rendered> {
    if cfg.convention != Convention::ThreeParam {
        return Err(validation("--convention: mixed-ne uses the 3p convention"));
    }
    let psi = parse::angle("--psi", psi)?;
    let phi = parse::angle("--phi", phi)?;
    let (a, b) = flip_phase_mix(psi, phi).map_err(|e| validation(format!("--psi/--phi: {e}")))?;
    let report = verify_mixed_ne(&game(cfg), &a, &b, &cfg.grid, cfg.tolerance)?;

    if cfg.json {
        let c = MixedConfig {
            base: cfg.record(),
            psi,
            phi,
        };
        return Ok(Rendered::ok(to_json("mixed-ne", c, vec![report])));
    }
    let mut s = String::new();
    for c in &report.components {
        s += &format!(
            "A{} B{} probability={} payoff_a={} payoff_b={}\n",
            c.alice_index + 1,
            c.bob_index + 1,
            number(c.probability),
            decimal(c.payoffs.alice),
            decimal(c.payoffs.bob)
        );
    }
    s += &format!(
        "average payoff_a={} payoff_b={}\nis_ne={} worst_gain={} witness={}:{}\n",
        decimal(report.payoffs.alice),
        decimal(report.payoffs.bob),
        report.is_ne,
        decimal(report.worst_deviation_gain),
        report.witness.player,
        report.witness.strategy
    );
    Ok(Rendered::ok(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_values_are_inclusive_and_capped() {
        let v = sweep_values(0.0, 1.0, 0.1).unwrap();
        assert_eq!(v.len(), 11);
        assert_eq!(*v.last().unwrap(), 1.0);
        assert_eq!(sweep_values(0.0, 0.0, 0.5).unwrap(), vec![0.0]);
        assert!(sweep_values(1.0, 0.0, 0.1).is_err());
        assert!(sweep_values(0.0, 1.0, 0.0).is_err());
        assert!(sweep_values(0.0, 1.0, 1e-7).is_err());
    }

    #[test]
    fn csv_leaves_psi_empty_in_two_param() {
        let rows = [SweepRow {
            param: "mu",
            value: 0.5,
            alice: Strategy::Q,
            bob: Strategy::D,
            payoff_a: 3.75,
            payoff_b: 0.25,
        }];
        let body = csv_body(&rows);
        let mut lines = body.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
        assert_eq!(
            lines.next().unwrap(),
            "mu,0.5,0,1.57079632679,,3.14159265359,0,,3.75,0.25"
        );
        assert!(!body.contains('\r'));
    }
}
