//! `price`, `sweep`, `simulate` and `calibrate`.

use std::io::Write;

use ldpcdo::models::{calibrate_flat_hazard, validate_assumptions};
use ldpcdo::pricer::{
    dominant_state, mixture_protection_asymptotic, protection_leg_asymptotic, spread_asymptotic,
    theoretical_price_star,
};
use ldpcdo::sim::{is_price, mc_price, simulate_paths, tilt_diagnostics, Mode};
use ldpcdo::{AsymptoticPrice, DefaultCurve, MixtureStates, TrancheSpec};
use serde_json::{json, Map, Value};

use crate::config::{PaymentDates, RunConfig, SimMode};
use crate::CliError;

fn price_json(p: &AsymptoticPrice) -> Value {
    json!({
        "value": p.value,
        "log10_value": p.log10_value(),
        "exponent_nats": p.exponent,
        "granularity": p.granularity,
        "prefactor": p.prefactor,
        "bracket": p.bracket,
        "kappa": p.kappa,
    })
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

/// Asymptotic report for the configured tranche, homogeneous or mixture.
pub fn price(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let tranche = cfg.tranche()?;
    let n = cfg.pool_size()?;
    let report = match cfg.mixture_states()? {
        Some(states) => mixture_report(n, &tranche, &states)?,
        None => homogeneous_report(&cfg.curve, n, &tranche)?,
    };
    write_json(out, &report)
}

fn homogeneous_report(curve: &DefaultCurve, n: u64, tranche: &TrancheSpec) -> Result<Value, CliError> {
    let checks = validate_assumptions(curve, tranche.alpha(), tranche.t_expiry(), n)?;
    let f = checks.f_t_minus;
    let prot = protection_leg_asymptotic(n, tranche, f)?;
    let spread = spread_asymptotic(n, tranche, f)?;
    let star = theoretical_price_star(n, tranche.alpha(), f)?;
    Ok(json!({
        "n": n,
        "alpha": tranche.alpha(),
        "beta": tranche.beta(),
        "f_t_minus": f,
        "assumptions": checks,
        "rate": prot.exponent / n as f64,
        "protection": price_json(&prot),
        "spread": price_json(&spread),
        "price_star": price_json(&star),
    }))
}

fn mixture_report(n: u64, tranche: &TrancheSpec, states: &MixtureStates) -> Result<Value, CliError> {
    let mix = mixture_protection_asymptotic(n, tranche, states)?;
    let annuity = tranche.annuity();
    let contributions: Vec<Value> = states
        .states()
        .iter()
        .zip(&mix.terms)
        .enumerate()
        .map(|(i, (s, t))| {
            let weighted = s.weight * t.value;
            json!({
                "state": i,
                "weight": s.weight,
                "f_t_minus": s.f_t_minus,
                "rate": t.exponent / n as f64,
                "value": t.value,
                "log10_value": t.log10_value(),
                "contribution": weighted,
                "log10_contribution": (s.weight.ln() + t.log_value) / std::f64::consts::LN_10,
            })
        })
        .collect();
    let dominant = match dominant_state(states, tranche.alpha()) {
        Ok(d) => {
            let approx = d.approximate_protection(n, tranche)?;
            json!({"state": d.index, "rate": d.rate, "f_t_minus": d.f_t_minus, "approximate_protection": approx})
        }
        Err(e @ ldpcdo::Error::Tie(..)) => json!({"error": e.to_string()}),
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "n": n,
        "alpha": tranche.alpha(),
        "beta": tranche.beta(),
        "protection": {"value": mix.value, "log10_value": mix.value.log10()},
        "spread": {"value": mix.value / annuity, "log10_value": (mix.value / annuity).log10()},
        "states": contributions,
        "dominant": dominant,
    }))
}

/// Quantity written to the sweep `value` column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum SweepQuantity {
    #[default]
    Spread,
    Star,
    Protection,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub n: u64,
    pub alpha: f64,
    pub beta: f64,
    pub f_t_minus: f64,
    pub granularity: f64,
    pub exponent_nats: f64,
    pub value: f64,
    pub log10_value: f64,
}

pub const SWEEP_HEADER: &str = "N,alpha,beta,f_t_minus,granularity,exponent_nats,value,log10_value";

impl SweepRow {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n,
            self.alpha,
            self.beta,
            self.f_t_minus,
            self.granularity,
            self.exponent_nats,
            self.value,
            self.log10_value
        )
    }
}

pub fn sweep_rows(
    curve: &DefaultCurve,
    tranche: &TrancheSpec,
    n_from: u64,
    n_to: u64,
    n_step: u64,
    quantity: SweepQuantity,
) -> Result<Vec<SweepRow>, CliError> {
    if n_from == 0 || n_step == 0 || n_to < n_from {
        return Err(CliError::Config("sweep range needs 1 ≤ n-from ≤ n-to and n-step ≥ 1".into()));
    }
    let f = curve.cdf_left_limit(tranche.t_expiry());
    (n_from..=n_to)
        .step_by(n_step as usize)
        .map(|n| {
            let p = match quantity {
                SweepQuantity::Spread => spread_asymptotic(n, tranche, f)?,
                SweepQuantity::Star => theoretical_price_star(n, tranche.alpha(), f)?,
                SweepQuantity::Protection => protection_leg_asymptotic(n, tranche, f)?,
            };
            Ok(SweepRow {
                n,
                alpha: tranche.alpha(),
                beta: tranche.beta(),
                f_t_minus: f,
                granularity: p.granularity,
                exponent_nats: p.exponent,
                value: p.value,
                log10_value: p.log10_value(),
            })
        })
        .collect()
}

pub fn sweep(
    cfg: &RunConfig,
    n_from: u64,
    n_to: u64,
    n_step: u64,
    quantity: SweepQuantity,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let rows = sweep_rows(&cfg.curve, &cfg.tranche()?, n_from, n_to, n_step, quantity)?;
    writeln!(out, "{SWEEP_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv())?;
    }
    Ok(())
}

pub const SIMULATE_HEADER: &str = "path,defaults_before_T,prot,prem,weight";

/// Per-path CSV to `csv` and a JSON summary to `summary`.
pub fn simulate(cfg: &RunConfig, csv: &mut dyn Write, summary: &mut dyn Write) -> Result<(), CliError> {
    let tranche = cfg.tranche()?;
    let n = cfg.pool_size()?;
    let sim = cfg.simulation;
    let mode = match sim.mode {
        SimMode::Plain => Mode::Plain,
        SimMode::Tilted => Mode::Tilted,
    };
    let rows = simulate_paths(&cfg.curve, &tranche, n, sim.n_paths, sim.seed, mode)?;
    writeln!(csv, "{SIMULATE_HEADER}")?;
    for r in &rows {
        writeln!(csv, "{},{},{},{},{}", r.path, r.defaults_before_t, r.prot, r.prem, r.weight)?;
    }
    let report = match mode {
        Mode::Plain => {
            let p = mc_price(&cfg.curve, &tranche, n, sim.n_paths, sim.seed)?;
            json!({
                "mode": "plain",
                "n": n,
                "protection": p.protection,
                "premium": p.premium,
                "spread": p.spread,
                "spread_std_error": p.spread_std_error,
                "log10_spread": p.spread.log10(),
            })
        }
        Mode::Tilted => {
            let p = is_price(&cfg.curve, &tranche, n, sim.n_paths, sim.seed)?;
            let d = tilt_diagnostics(&cfg.curve, &tranche, n, sim.n_paths, sim.seed)?;
            let buckets: Map<String, Value> = d
                .buckets
                .values()
                .map(|b| (format!("{}", b.s), serde_json::to_value(b).expect("bucket serializes")))
                .collect();
            json!({
                "mode": "tilted",
                "n": n,
                "scaled_estimate": p.scaled,
                "exponent_nats": p.exponent,
                "kappa": p.kappa,
                "protection": p.price,
                "log10_protection": p.log_price / std::f64::consts::LN_10,
                "std_error": p.std_error,
                "relative_error": p.relative_error,
                "density_warning": p.density_warning,
                "before_expiry_frequency": d.before_expiry_frequency,
                "buckets": buckets,
            })
        }
    };
    write_json(summary, &report)
}

/// Calibrates a flat hazard; curve JSON to `out`, `λ` and `F(T−)` to `info`.
pub fn calibrate(
    spread: f64,
    dates: &PaymentDates,
    rate: f64,
    t_expiry: f64,
    out: &mut dyn Write,
    info: &mut dyn Write,
) -> Result<(), CliError> {
    let curve = calibrate_flat_hazard(spread, &dates.expand(t_expiry), rate, t_expiry)?;
    let lambda = match &curve {
        DefaultCurve::ReducedForm(r) => r.pieces()[0].lambda,
        _ => unreachable!("calibration returns a reduced-form curve"),
    };
    serde_json::to_writer(&mut *out, &curve).map_err(std::io::Error::from)?;
    writeln!(out)?;
    writeln!(info, "lambda = {lambda}")?;
    writeln!(info, "F(T-) = {}", curve.cdf_left_limit(t_expiry))?;
    Ok(())
}
