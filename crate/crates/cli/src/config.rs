//! JSON run configuration.

use std::path::Path;

use ldpcdo::pricer::{gaussian_copula_states, quarterly_dates};
use ldpcdo::{DefaultCurve, MixtureStates, TrancheSpec};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub curve: DefaultCurve,
    pub tranche: TrancheConfig,
    #[serde(default)]
    pub pool: Option<PoolConfig>,
    #[serde(default)]
    pub simulation: SimulationConfig,
    #[serde(default)]
    pub mixture: Option<MixtureConfig>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrancheConfig {
    pub alpha: f64,
    pub beta: f64,
    pub t_expiry: f64,
    pub payment_dates: PaymentDates,
    #[serde(default)]
    pub riskless_rate: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PaymentDates {
    Named(DateMacro),
    Explicit(Vec<f64>),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DateMacro {
    Quarterly,
}

impl PaymentDates {
    pub fn expand(&self, t_expiry: f64) -> Vec<f64> {
        match self {
            PaymentDates::Named(DateMacro::Quarterly) => quarterly_dates(t_expiry),
            PaymentDates::Explicit(d) => d.clone(),
        }
    }

    /// `quarterly` or a comma-separated list of times.
    pub fn parse(s: &str) -> Result<Self, String> {
        if s.trim() == "quarterly" {
            return Ok(PaymentDates::Named(DateMacro::Quarterly));
        }
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|e| format!("bad payment date {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(PaymentDates::Explicit)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoolConfig {
    pub n: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SimMode {
    Plain,
    Tilted,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    #[serde(default = "default_paths")]
    pub n_paths: u64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_mode")]
    pub mode: SimMode,
}

fn default_paths() -> u64 {
    100_000
}

fn default_mode() -> SimMode {
    SimMode::Plain
}

impl Default for SimulationConfig {
    fn default() -> Self {
        SimulationConfig {
            n_paths: default_paths(),
            seed: 0,
            mode: default_mode(),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MixtureConfig {
    States(Vec<StateConfig>),
    Copula(CopulaConfig),
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateConfig {
    pub p: f64,
    pub f: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CopulaConfig {
    pub p: f64,
    pub rho: f64,
    pub m: u32,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub n: Option<u64>,
    pub seed: Option<u64>,
    pub paths: Option<u64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::Config(format!("at `{path}`: {}", e.into_inner()))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn apply(&mut self, o: Overrides) {
        if let Some(n) = o.n {
            self.pool = Some(PoolConfig { n });
        }
        if let Some(seed) = o.seed {
            self.simulation.seed = seed;
        }
        if let Some(paths) = o.paths {
            self.simulation.n_paths = paths;
        }
    }

    pub fn tranche(&self) -> Result<TrancheSpec, CliError> {
        let t = &self.tranche;
        TrancheSpec::new(
            t.alpha,
            t.beta,
            t.t_expiry,
            t.payment_dates.expand(t.t_expiry),
            t.riskless_rate,
        )
        .map_err(|e| CliError::Config(format!("at `tranche`: {e}")))
    }

    pub fn pool_size(&self) -> Result<u64, CliError> {
        match self.pool {
            Some(PoolConfig { n }) if n >= 1 => Ok(n),
            Some(_) => Err(CliError::Config("at `pool.n`: pool size must be at least 1".into())),
            None => Err(CliError::Config("at `pool`: missing pool size (set `pool.n` or pass --n)".into())),
        }
    }

    pub fn mixture_states(&self) -> Result<Option<MixtureStates>, CliError> {
        let states = match &self.mixture {
            None => return Ok(None),
            Some(MixtureConfig::States(s)) => {
                MixtureStates::from_pairs(&s.iter().map(|x| (x.p, x.f)).collect::<Vec<_>>())
            }
            Some(MixtureConfig::Copula(c)) => gaussian_copula_states(c.p, c.rho, c.m),
        };
        states
            .map(Some)
            .map_err(|e| CliError::Config(format!("at `mixture`: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"{
        "curve": {"kind": "reduced_form", "hazard": [{"until": 5.0, "lambda": 0.05}]},
        "tranche": {"alpha": 0.1, "beta": 0.2, "t_expiry": 5.0, "payment_dates": "quarterly"},
        "pool": {"n": 100}
    }"#;

    #[test]
    fn parses_minimal_config() {
        let c = RunConfig::from_json(BASE).unwrap();
        assert_eq!(c.tranche().unwrap().payment_dates().len(), 20);
        assert_eq!(c.pool_size().unwrap(), 100);
        assert_eq!(c.simulation.mode, SimMode::Plain);
        assert!(c.mixture_states().unwrap().is_none());
    }

    #[test]
    fn error_names_path() {
        let bad = BASE.replace("\"alpha\": 0.1", "\"alpha\": \"x\"");
        let err = RunConfig::from_json(&bad).unwrap_err().to_string();
        assert!(err.contains("tranche.alpha"), "{err}");
        let bad_curve = BASE.replace("\"lambda\": 0.05", "\"lambda\": -1");
        let err = RunConfig::from_json(&bad_curve).unwrap_err().to_string();
        assert!(err.contains("curve"), "{err}");
        let unknown = BASE.replace("\"pool\"", "\"pol\"");
        assert!(RunConfig::from_json(&unknown).is_err());
    }

    #[test]
    fn mixture_blocks() {
        let with_states = BASE.replace(
            "\"pool\": {\"n\": 100}",
            "\"pool\": {\"n\": 100}, \"mixture\": {\"states\": [{\"p\": 0.5, \"f\": 0.02}, {\"p\": 0.5, \"f\": 0.05}]}",
        );
        assert_eq!(RunConfig::from_json(&with_states).unwrap().mixture_states().unwrap().unwrap().len(), 2);
        let copula = BASE.replace(
            "\"pool\": {\"n\": 100}",
            "\"pool\": {\"n\": 100}, \"mixture\": {\"copula\": {\"p\": 0.03, \"rho\": 0.3, \"m\": 4}}",
        );
        assert_eq!(RunConfig::from_json(&copula).unwrap().mixture_states().unwrap().unwrap().len(), 33);
    }

    #[test]
    fn explicit_dates_and_overrides() {
        let mut c = RunConfig::from_json(&BASE.replace("\"quarterly\"", "[1.0, 5.0]")).unwrap();
        assert_eq!(c.tranche().unwrap().payment_dates(), &[1.0, 5.0]);
        c.apply(Overrides {
            n: Some(7),
            seed: Some(3),
            paths: Some(11),
        });
        assert_eq!(c.pool_size().unwrap(), 7);
        assert_eq!((c.simulation.seed, c.simulation.n_paths), (3, 11));
        assert!(PaymentDates::parse("1, 2.5").is_ok());
        assert!(PaymentDates::parse("1,x").is_err());
    }
}
