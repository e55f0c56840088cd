//! Default scenarios under the physical or tilted law, and exact leg values.

use rand::Rng;

use crate::error::Result;
use crate::ldp::{tilted_split, TiltedMeasure};
use crate::models::{DefaultCurve, Time};
use crate::pricer::TrancheSpec;
use crate::scalar::AttachmentLattice;

/// Slack on CDF comparisons used only to skip the inverse for names that
/// certainly survive past expiry; the computed time decides the rest.
const SKIP_SLACK: f64 = 1e-12;

/// Law from which the default times of one scenario are drawn.
#[derive(Debug, Clone, Copy)]
pub enum SamplingLaw<'a> {
    Physical(&'a DefaultCurve),
    Tilted(&'a DefaultCurve, TiltedMeasure<f64>),
}

impl<'a> SamplingLaw<'a> {
    /// The tilted law for attachment `alpha` and expiry `t_expiry`.
    pub fn tilted(curve: &'a DefaultCurve, alpha: f64, t_expiry: f64) -> Result<Self> {
        Ok(SamplingLaw::Tilted(curve, tilted_split(curve, alpha, t_expiry)?))
    }

    pub fn curve(&self) -> &'a DefaultCurve {
        match *self {
            SamplingLaw::Physical(c) | SamplingLaw::Tilted(c, _) => c,
        }
    }

    pub fn is_tilted(&self) -> bool {
        matches!(self, SamplingLaw::Tilted(..))
    }

    /// Default time for a single uniform `u ∈ [0,1)`.
    ///
    /// Under the tilted law `u < α` selects `[0,T)` and the rest of the unit
    /// interval is mapped onto `[F(T−), 1)`, so both branches reuse the
    /// curve's own inverse.
    pub fn time_from_uniform(&self, u: f64) -> Time {
        match *self {
            SamplingLaw::Physical(c) => c.quantile(u),
            SamplingLaw::Tilted(c, m) => {
                if u < m.alpha {
                    let v = u * m.f_t_minus / m.alpha;
                    c.quantile(v).min(m.t_expiry.next_down())
                } else {
                    c.quantile(after_level(&m, u)).max(m.t_expiry)
                }
            }
        }
    }
}

fn after_level(m: &TiltedMeasure<f64>, u: f64) -> f64 {
    m.f_t_minus + (u - m.alpha) * (1.0 - m.f_t_minus) / (1.0 - m.alpha)
}

/// Precomputed sampler that only materializes default times `≤ T`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct HorizonSampler<'a> {
    law: SamplingLaw<'a>,
    t_expiry: f64,
    /// `F(T)`; larger levels map past expiry.
    f_t: f64,
}

impl<'a> HorizonSampler<'a> {
    pub(crate) fn new(law: SamplingLaw<'a>, t_expiry: f64) -> Self {
        HorizonSampler {
            law,
            t_expiry,
            f_t: law.curve().cdf(t_expiry),
        }
    }

    fn within_horizon(&self, u: f64) -> Option<Time> {
        let reachable = match self.law {
            SamplingLaw::Physical(_) => u <= self.f_t + SKIP_SLACK,
            SamplingLaw::Tilted(_, m) => u < m.alpha || after_level(&m, u) <= self.f_t + SKIP_SLACK,
        };
        if !reachable {
            return None;
        }
        let t = self.law.time_from_uniform(u);
        (t <= self.t_expiry).then_some(t)
    }

    /// Draws `n` names and leaves the sorted default times `≤ T` in `buf`.
    pub(crate) fn fill<R: Rng + ?Sized>(&self, n: u64, rng: &mut R, buf: &mut Vec<Time>) {
        buf.clear();
        for _ in 0..n {
            if let Some(t) = self.within_horizon(rng.random::<f64>()) {
                buf.push(t);
            }
        }
        buf.sort_unstable_by(f64::total_cmp);
    }
}

/// One draw of all `N` default times, in name order.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub default_times: Vec<Time>,
}

/// Defaults of a scenario up to and including expiry, in time order.
#[derive(Debug, Clone, PartialEq)]
pub struct LossPath {
    pub n: u64,
    /// Sorted default times `≤ T`; ties keep ascending name order.
    pub times: Vec<Time>,
    /// Number of defaults strictly before `T`.
    pub defaults_before_t: u64,
}

impl Scenario {
    pub fn n(&self) -> u64 {
        self.default_times.len() as u64
    }

    pub fn loss_path(&self, t_expiry: f64) -> LossPath {
        let mut named: Vec<(Time, usize)> = self
            .default_times
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, t)| t <= t_expiry)
            .map(|(i, t)| (t, i))
            .collect();
        named.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let times: Vec<Time> = named.into_iter().map(|(t, _)| t).collect();
        let defaults_before_t = count_before(&times, t_expiry);
        LossPath {
            n: self.n(),
            times,
            defaults_before_t,
        }
    }

    pub fn defaults_before(&self, t_expiry: f64) -> u64 {
        self.default_times.iter().filter(|&&t| t < t_expiry).count() as u64
    }
}

pub(crate) fn count_before(sorted: &[Time], t: f64) -> u64 {
    sorted.partition_point(|&s| s < t) as u64
}

/// Draws `n` independent default times from `law`, one uniform per name.
pub fn simulate_scenario<R: Rng + ?Sized>(law: &SamplingLaw<'_>, n: u64, stream: &mut R) -> Scenario {
    Scenario {
        default_times: (0..n).map(|_| law.time_from_uniform(stream.random::<f64>())).collect(),
    }
}

/// Tranche loss `L̄` for every default count, with discounting at the
/// premium dates, for a fixed pool size.
#[derive(Debug, Clone)]
pub struct TrancheLadder {
    n: u64,
    lattice: AttachmentLattice<f64>,
    tranche_loss: Vec<f64>,
    dates: Vec<f64>,
    date_discounts: Vec<f64>,
    rate: f64,
    t_expiry: f64,
}

impl TrancheLadder {
    pub fn new(tranche: &TrancheSpec<f64>, n: u64) -> Self {
        let lattice = AttachmentLattice::new(n, tranche.alpha());
        let first = lattice.first_loss_count();
        let nf = n as f64;
        let tranche_loss = (0..=n)
            .map(|k| if k < first { 0.0 } else { tranche.tranche_loss(k as f64 / nf) })
            .collect();
        TrancheLadder {
            n,
            lattice,
            tranche_loss,
            dates: tranche.payment_dates().to_vec(),
            date_discounts: tranche.payment_dates().iter().map(|&t| tranche.discount(t)).collect(),
            rate: tranche.riskless_rate(),
            t_expiry: tranche.t_expiry(),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn lattice(&self) -> &AttachmentLattice<f64> {
        &self.lattice
    }

    pub fn t_expiry(&self) -> f64 {
        self.t_expiry
    }

    /// `L̄` after `k` defaults.
    pub fn tranche_loss(&self, k: u64) -> f64 {
        self.tranche_loss[k as usize]
    }

    /// `Σ_{s<T} e^{−Rs} ΔL̄_s` over sorted default times.
    pub fn protection(&self, sorted: &[Time]) -> f64 {
        let before = count_before(sorted, self.t_expiry) as usize;
        let first = self.lattice.first_loss_count() as usize;
        let mut value = 0.0;
        for k in first.max(1)..=before {
            let jump = self.tranche_loss[k] - self.tranche_loss[k - 1];
            if jump == 0.0 {
                break;
            }
            value += (-self.rate * sorted[k - 1]).exp() * jump;
        }
        value
    }

    /// `Σ_{t∈𝒯} e^{−Rt}(1 − L̄_t)` with `L̄` right-continuous.
    pub fn premium(&self, sorted: &[Time]) -> f64 {
        let mut k = 0usize;
        let mut value = 0.0;
        for (&t, &d) in self.dates.iter().zip(&self.date_discounts) {
            while k < sorted.len() && sorted[k] <= t {
                k += 1;
            }
            value += d * (1.0 - self.tranche_loss[k]);
        }
        value
    }
}

/// Exact protection leg `∫_{[0,T)} e^{−Rs} dL̄_s` of one scenario.
pub fn protection_leg_value(scenario: &Scenario, tranche: &TrancheSpec<f64>) -> f64 {
    let path = scenario.loss_path(tranche.t_expiry());
    TrancheLadder::new(tranche, scenario.n()).protection(&path.times)
}

/// Exact premium leg `Σ_{t∈𝒯} e^{−Rt}(1 − L̄_t)` of one scenario.
pub fn premium_leg_value(scenario: &Scenario, tranche: &TrancheSpec<f64>) -> f64 {
    let path = scenario.loss_path(tranche.t_expiry());
    TrancheLadder::new(tranche, scenario.n()).premium(&path.times)
}
