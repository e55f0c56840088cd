//! Plain and importance-sampled Monte Carlo pricing of the tranche legs.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ldp::TiltedMeasure;
use crate::models::{validate_assumptions, DefaultCurve};
use crate::pricer::TrancheSpec;

use super::rng::PathStreams;
use super::scenario::{count_before, HorizonSampler, SamplingLaw, TrancheLadder};
use super::stats::{Compensated, PairMoments};

/// Paths per reduction block. Block boundaries are fixed, so results do not
/// depend on how blocks are scheduled.
const BLOCK: u64 = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Plain,
    Tilted,
}

/// A Monte Carlo sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: u64,
    pub seed: u64,
    pub mode: Mode,
}

/// Plain Monte Carlo result for both legs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct McPrice {
    pub protection: Estimate,
    pub premium: Estimate,
    /// `E[P^prot] / E[P^prem]`.
    pub spread: f64,
    /// Delta-method standard error of the spread.
    pub spread_std_error: f64,
}

/// Importance-sampled protection leg.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IsPrice {
    /// Estimate of `I_N`, the protection leg with `e^{−N𝔍}` factored out.
    pub scaled: Estimate,
    /// `N·𝔍(α)`.
    pub exponent: f64,
    pub kappa: f64,
    pub price: f64,
    pub log_price: f64,
    pub std_error: f64,
    pub relative_error: f64,
    /// `F` looked flat just before expiry on the probe grid.
    pub density_warning: bool,
}

/// One simulated path in the form written to the `simulate` CSV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathRecord {
    pub path: u64,
    pub defaults_before_t: u64,
    pub prot: f64,
    pub prem: f64,
    /// `1` under the physical law, `e^{−κγ}` under the tilted law.
    pub weight: f64,
}

fn check_run(n: u64, n_paths: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("pool size must be at least 1"));
    }
    if n_paths < 2 {
        return Err(Error::invalid("at least two paths are required"));
    }
    Ok(())
}

/// Runs `visit(path, sorted_times_up_to_T)` over all paths and reduces the
/// per-block accumulators in block order.
fn run_blocks<A, V>(sampler: &HorizonSampler<'_>, n: u64, n_paths: u64, seed: u64, visit: V) -> Vec<A>
where
    A: Default + Send,
    V: Fn(&mut A, u64, &[f64]) + Sync,
{
    let streams = PathStreams::new(seed);
    let blocks = n_paths.div_ceil(BLOCK);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut acc = A::default();
            let mut buf = Vec::new();
            for p in b * BLOCK..((b + 1) * BLOCK).min(n_paths) {
                sampler.fill(n, &mut streams.stream(p), &mut buf);
                visit(&mut acc, p, &buf);
            }
            acc
        })
        .collect()
}

fn estimate(mean: f64, variance: f64, n_paths: u64, seed: u64, mode: Mode) -> Estimate {
    Estimate {
        mean,
        std_error: (variance / n_paths as f64).sqrt(),
        n_paths,
        seed,
        mode,
    }
}

/// Plain Monte Carlo estimates of both legs and the par spread.
pub fn mc_price(curve: &DefaultCurve, tranche: &TrancheSpec<f64>, n: u64, n_paths: u64, seed: u64) -> Result<McPrice> {
    check_run(n, n_paths)?;
    let ladder = TrancheLadder::new(tranche, n);
    let sampler = HorizonSampler::new(SamplingLaw::Physical(curve), tranche.t_expiry());
    let blocks = run_blocks(&sampler, n, n_paths, seed, |m: &mut PairMoments, _, times| {
        m.push(ladder.protection(times), ladder.premium(times));
    });
    let mut total = PairMoments::default();
    for b in &blocks {
        total.merge(b);
    }
    let (mx, my) = (total.mean_x(), total.mean_y());
    if my <= 0.0 {
        return Err(Error::UndefinedSpread);
    }
    let (vx, vy, cxy) = total.covariance();
    let spread = mx / my;
    let spread_var = (vx - 2.0 * spread * cxy + spread * spread * vy) / (my * my);
    Ok(McPrice {
        protection: estimate(mx, vx, n_paths, seed, Mode::Plain),
        premium: estimate(my, vy, n_paths, seed, Mode::Plain),
        spread,
        spread_std_error: (spread_var.max(0.0) / n_paths as f64).sqrt(),
    })
}

/// `e^{−κγ}` for `γ = k − Nα > 0`, zero otherwise.
fn tilt_weight(ladder: &TrancheLadder, kappa: f64, k: u64) -> f64 {
    if k < ladder.lattice().first_loss_count() {
        0.0
    } else {
        (-kappa * ladder.lattice().excess(k)).exp()
    }
}

#[derive(Default)]
struct Moments {
    sum: Compensated,
    sum_sq: Compensated,
}

/// Importance-sampled protection leg under the tilted law:
/// `E[P^prot] = Ẽ[P^prot e^{−κγ} 1{γ>0}] · e^{−N𝔍(α)}`.
pub fn is_price(curve: &DefaultCurve, tranche: &TrancheSpec<f64>, n: u64, n_paths: u64, seed: u64) -> Result<IsPrice> {
    check_run(n, n_paths)?;
    let law = SamplingLaw::tilted(curve, tranche.alpha(), tranche.t_expiry())?;
    let measure = tilted(&law);
    let density_warning = !validate_assumptions(curve, tranche.alpha(), tranche.t_expiry(), n)?.density_ok;
    let kappa = measure.kappa();
    let ladder = TrancheLadder::new(tranche, n);
    let sampler = HorizonSampler::new(law, tranche.t_expiry());
    let t_expiry = tranche.t_expiry();
    let blocks = run_blocks(&sampler, n, n_paths, seed, |m: &mut Moments, _, times| {
        let k = count_before(times, t_expiry);
        let w = tilt_weight(&ladder, kappa, k);
        if w > 0.0 {
            let x = ladder.protection(times) * w;
            m.sum.add(x);
            m.sum_sq.add(x * x);
        }
    });
    let (mut sum, mut sum_sq) = (Compensated::default(), Compensated::default());
    for b in &blocks {
        sum.merge(&b.sum);
        sum_sq.merge(&b.sum_sq);
    }
    let np = n_paths as f64;
    let mean = sum.value() / np;
    let variance = ((sum_sq.value() - np * mean * mean) / (np - 1.0)).max(0.0);
    let scaled = estimate(mean, variance, n_paths, seed, Mode::Tilted);
    let exponent = n as f64 * measure.rate();
    let log_price = mean.ln() - exponent;
    let factor = (-exponent).exp();
    Ok(IsPrice {
        scaled,
        exponent,
        kappa,
        price: log_price.exp(),
        log_price,
        std_error: scaled.std_error * factor,
        relative_error: if mean > 0.0 { scaled.std_error / mean } else { f64::INFINITY },
        density_warning,
    })
}

fn tilted(law: &SamplingLaw<'_>) -> TiltedMeasure<f64> {
    match *law {
        SamplingLaw::Tilted(_, m) => m,
        SamplingLaw::Physical(_) => unreachable!("constructed as tilted"),
    }
}

/// Per-path legs for export, under the physical or the tilted law.
pub fn simulate_paths(
    curve: &DefaultCurve,
    tranche: &TrancheSpec<f64>,
    n: u64,
    n_paths: u64,
    seed: u64,
    mode: Mode,
) -> Result<Vec<PathRecord>> {
    if n == 0 {
        return Err(Error::invalid("pool size must be at least 1"));
    }
    let law = match mode {
        Mode::Plain => SamplingLaw::Physical(curve),
        Mode::Tilted => SamplingLaw::tilted(curve, tranche.alpha(), tranche.t_expiry())?,
    };
    let kappa = match law {
        SamplingLaw::Tilted(_, m) => Some(m.kappa()),
        SamplingLaw::Physical(_) => None,
    };
    let ladder = TrancheLadder::new(tranche, n);
    let sampler = HorizonSampler::new(law, tranche.t_expiry());
    let t_expiry = tranche.t_expiry();
    let blocks = run_blocks(&sampler, n, n_paths, seed, |rows: &mut Vec<PathRecord>, p, times| {
        let k = count_before(times, t_expiry);
        rows.push(PathRecord {
            path: p,
            defaults_before_t: k,
            prot: ladder.protection(times),
            prem: ladder.premium(times),
            weight: kappa.map_or(1.0, |kap| (-kap * ladder.lattice().excess(k)).exp()),
        });
    });
    Ok(blocks.into_iter().flatten().collect())
}

/// Statistics of the paths with a given number of defaults before expiry,
/// under the tilted law.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TiltBucket {
    pub defaults_before_t: u64,
    /// `γ = k − Nα`.
    pub s: f64,
    pub hits: u64,
    /// Empirical probability of the bucket.
    pub pmf: f64,
    /// `pmf · √(2πNα(1−α))`.
    pub pmf_ratio: f64,
    /// Conditional mean protection leg, when `γ > 0`.
    pub mean_protection: Option<f64>,
    /// `mean_protection / (e^{−RT} γ / ((β−α)N))`.
    pub protection_ratio: Option<f64>,
    /// Conditional mean of `T − τ^α`, `τ^α` the first time `L > α`.
    pub mean_time_to_expiry: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltReport {
    pub n: u64,
    pub n_paths: u64,
    pub seed: u64,
    pub alpha: f64,
    pub kappa: f64,
    /// Fraction of all simulated names defaulting before expiry; `α` in law.
    pub before_expiry_frequency: f64,
    /// Non-empty buckets keyed by default count.
    pub buckets: BTreeMap<u64, TiltBucket>,
}

#[derive(Default)]
struct BucketSums {
    hits: u64,
    prot: Compensated,
    lead: Compensated,
}

type BucketMap = BTreeMap<u64, BucketSums>;

/// Conditional statistics of the tilted law bucketed by `γ`.
pub fn tilt_diagnostics(
    curve: &DefaultCurve,
    tranche: &TrancheSpec<f64>,
    n: u64,
    n_paths: u64,
    seed: u64,
) -> Result<TiltReport> {
    check_run(n, n_paths)?;
    let law = SamplingLaw::tilted(curve, tranche.alpha(), tranche.t_expiry())?;
    let measure = tilted(&law);
    let ladder = TrancheLadder::new(tranche, n);
    let sampler = HorizonSampler::new(law, tranche.t_expiry());
    let t_expiry = tranche.t_expiry();
    let first = ladder.lattice().first_loss_count();
    let blocks = run_blocks(&sampler, n, n_paths, seed, |map: &mut BucketMap, _, times| {
        let k = count_before(times, t_expiry);
        let e = map.entry(k).or_default();
        e.hits += 1;
        if k >= first {
            e.prot.add(ladder.protection(times));
            e.lead.add(t_expiry - times[first as usize - 1]);
        }
    });
    let mut merged: BucketMap = BTreeMap::new();
    for block in &blocks {
        for (&k, b) in block {
            let e = merged.entry(k).or_default();
            e.hits += b.hits;
            e.prot.merge(&b.prot);
            e.lead.merge(&b.lead);
        }
    }
    let alpha = tranche.alpha();
    let nf = n as f64;
    let local_scale = (2.0 * std::f64::consts::PI * nf * alpha * (1.0 - alpha)).sqrt();
    let edge = tranche.discount(t_expiry) / (tranche.width() * nf);
    let mut defaults = Compensated::default();
    let buckets = merged
        .into_iter()
        .map(|(k, b)| {
            defaults.add(k as f64 * b.hits as f64);
            let s = ladder.lattice().excess(k);
            let pmf = b.hits as f64 / n_paths as f64;
            let hits = b.hits as f64;
            let (mean_protection, protection_ratio, mean_time_to_expiry) = if k >= first {
                let mp = b.prot.value() / hits;
                (Some(mp), Some(mp / (edge * s)), Some(b.lead.value() / hits))
            } else {
                (None, None, None)
            };
            let bucket = TiltBucket {
                defaults_before_t: k,
                s,
                hits: b.hits,
                pmf,
                pmf_ratio: pmf * local_scale,
                mean_protection,
                protection_ratio,
                mean_time_to_expiry,
            };
            (k, bucket)
        })
        .collect();
    Ok(TiltReport {
        n,
        n_paths,
        seed,
        alpha,
        kappa: measure.kappa(),
        before_expiry_frequency: defaults.value() / (nf * n_paths as f64),
        buckets,
    })
}
