use serde::{Deserialize, Serialize};

use super::quadrature::integrate;
use crate::error::{Error, Result};

/// Time axis point in the compactified `[0, ∞]`; `f64::INFINITY` is the
/// "never defaults" point and sorts after every finite time.
pub type Time = f64;

pub const NEVER: Time = f64::INFINITY;

const QUAD_TOL: f64 = 1e-12;

/// Interpolation rule for tabulated curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Right-continuous step function; each grid point carries an atom.
    #[default]
    Step,
    /// Piecewise-linear CDF between grid points.
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HazardPiece {
    /// Right end of the piece in years; the last piece extends to infinity.
    pub until: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    ReducedForm,
    Merton,
    Tabulated,
}

/// Piecewise-constant hazard rate.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedForm {
    pieces: Vec<HazardPiece>,
    // cumulative hazard at the left edge of each piece
    left_cum: Vec<f64>,
}

impl ReducedForm {
    fn new(pieces: Vec<HazardPiece>) -> Result<Self> {
        if pieces.is_empty() {
            return Err(Error::invalid("reduced-form curve needs at least one hazard piece"));
        }
        let mut prev = 0.0;
        for p in &pieces {
            if !(p.lambda > 0.0 && p.lambda.is_finite()) {
                return Err(Error::invalid(format!("hazard rate must be positive and finite, got {}", p.lambda)));
            }
            if !(p.until > prev) {
                return Err(Error::invalid("hazard piece ends must be strictly increasing and positive"));
            }
            prev = p.until;
        }
        let mut left_cum = Vec::with_capacity(pieces.len());
        let mut acc = 0.0;
        let mut left = 0.0;
        for p in &pieces {
            left_cum.push(acc);
            acc += p.lambda * (p.until - left);
            left = p.until;
        }
        Ok(ReducedForm { pieces, left_cum })
    }

    pub fn pieces(&self) -> &[HazardPiece] {
        &self.pieces
    }

    fn piece_index(&self, t: f64) -> usize {
        // last piece is open-ended
        self.pieces
            .iter()
            .position(|p| t < p.until)
            .unwrap_or(self.pieces.len() - 1)
    }

    fn left_edge(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.pieces[i - 1].until
        }
    }

    /// `∫₀ᵗ λ`.
    pub fn cumulative_hazard(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        if t.is_infinite() {
            return f64::INFINITY;
        }
        let i = self.piece_index(t);
        self.left_cum[i] + self.pieces[i].lambda * (t - self.left_edge(i))
    }

    pub fn hazard(&self, t: f64) -> f64 {
        self.pieces[self.piece_index(t.max(0.0))].lambda
    }

    fn quantile(&self, v: f64) -> Time {
        if v <= 0.0 {
            return 0.0;
        }
        let target = -(-v).ln_1p();
        if !target.is_finite() {
            return NEVER;
        }
        let i = self
            .left_cum
            .iter()
            .rposition(|&c| c <= target)
            .unwrap_or(0);
        self.left_edge(i) + (target - self.left_cum[i]) / self.pieces[i].lambda
    }

    /// `∫_{[0,T)} e^{−Rs} dF(s)` in closed form, piece by piece.
    pub(crate) fn discounted_default(&self, rate: f64, t_expiry: f64) -> f64 {
        let mut total = 0.0;
        for (i, p) in self.pieces.iter().enumerate() {
            let a = self.left_edge(i);
            if a >= t_expiry {
                break;
            }
            let b = if i + 1 == self.pieces.len() {
                t_expiry
            } else {
                p.until.min(t_expiry)
            };
            let c = rate + p.lambda;
            let start = (-self.left_cum[i] - rate * a).exp();
            total += start * p.lambda / c * -(-c * (b - a)).exp_m1();
        }
        total
    }
}

/// First passage of a geometric Brownian valuation below a barrier.
#[derive(Debug, Clone, PartialEq)]
pub struct Merton {
    sigma: f64,
    theta: f64,
    barrier: f64,
    distance: f64,
    log_drift: f64,
    finite_mass: f64,
}

impl Merton {
    fn new(sigma: f64, theta: f64, barrier: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::invalid(format!("Merton volatility must be positive, got {sigma}")));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("Merton drift must be finite"));
        }
        if !(barrier > 0.0 && barrier < 1.0) {
            return Err(Error::invalid(format!("Merton barrier must lie in (0,1), got {barrier}")));
        }
        let distance = (1.0 / barrier).ln();
        let log_drift = theta - 0.5 * sigma * sigma;
        // The log-valuation drifts away from the barrier when log_drift > 0, so
        // the barrier is hit with probability exp(−2·drift·distance/σ²).
        let finite_mass = if log_drift > 0.0 {
            (-2.0 * log_drift * distance / (sigma * sigma)).exp()
        } else {
            1.0
        };
        Ok(Merton {
            sigma,
            theta,
            barrier,
            distance,
            log_drift,
            finite_mass,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn barrier(&self) -> f64 {
        self.barrier
    }

    pub fn density(&self, t: f64) -> f64 {
        if !(t > 0.0) || t.is_infinite() {
            return 0.0;
        }
        let s2 = self.sigma * self.sigma;
        let m = self.log_drift * t + self.distance;
        self.distance / (2.0 * std::f64::consts::PI * s2 * t * t * t).sqrt() * (-(m * m) / (2.0 * s2 * t)).exp()
    }

    // Geometric panels keep the adaptive rule from stepping over the peak of
    // the first-passage density on long horizons.
    fn integral(&self, a: f64, b: f64) -> f64 {
        if b <= a {
            return 0.0;
        }
        let mut total = 0.0;
        let mut lo = a;
        let mut width = (1.0 / 64.0f64).max(a);
        while lo < b {
            let hi = (lo + width).min(b);
            total += integrate(|s| self.density(s), lo, hi, QUAD_TOL * 1e-2);
            lo = hi;
            width *= 2.0;
        }
        total
    }

    fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            0.0
        } else if t.is_infinite() {
            self.finite_mass
        } else {
            self.integral(0.0, t).min(self.finite_mass)
        }
    }

    fn quantile(&self, v: f64) -> Time {
        if v <= 0.0 {
            return 0.0;
        }
        if v >= self.finite_mass {
            return NEVER;
        }
        let (mut lo, mut f_lo) = (0.0, 0.0);
        let mut hi = 1.0;
        loop {
            let f_hi = f_lo + self.integral(lo, hi);
            if f_hi >= v {
                break;
            }
            lo = hi;
            f_lo = f_hi;
            hi *= 2.0;
            if hi > 1e9 {
                return NEVER;
            }
        }
        // safeguarded Newton on the incremental integral from the lower end
        for _ in 0..200 {
            let d = self.density(lo);
            let newton = if d > 0.0 { lo + (v - f_lo) / d } else { f64::NAN };
            let x = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
            let fx = f_lo + self.integral(lo, x);
            if fx >= v {
                hi = x;
            } else {
                lo = x;
                f_lo = fx;
            }
            if hi - lo <= 1e-13 * hi.max(1e-300) || (v - f_lo).abs() <= 1e-15 {
                break;
            }
        }
        hi
    }

    pub(crate) fn discounted_default(&self, rate: f64, t_expiry: f64) -> f64 {
        let mut total = 0.0;
        let mut lo = 0.0;
        let mut width = 1.0 / 64.0;
        while lo < t_expiry {
            let hi = (lo + width).min(t_expiry);
            total += integrate(|s| (-rate * s).exp() * self.density(s), lo, hi, QUAD_TOL * 1e-2);
            lo = hi;
            width *= 2.0;
        }
        total
    }
}

/// CDF given on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    times: Vec<f64>,
    cdf: Vec<f64>,
    interp: Interpolation,
}

impl Tabulated {
    fn new(times: Vec<f64>, cdf: Vec<f64>, interp: Interpolation) -> Result<Self> {
        if times.is_empty() || times.len() != cdf.len() {
            return Err(Error::invalid("tabulated curve needs equally long, non-empty time and cdf arrays"));
        }
        if times[0] != 0.0 {
            return Err(Error::invalid("tabulated time grid must start at 0"));
        }
        if times.windows(2).any(|w| !(w[1] > w[0]) || !w[1].is_finite()) {
            return Err(Error::invalid("tabulated time grid must be finite and strictly increasing"));
        }
        if cdf.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::invalid("tabulated cdf values must lie in [0,1]"));
        }
        if cdf.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::invalid("tabulated cdf values must be nondecreasing"));
        }
        Ok(Tabulated { times, cdf, interp })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }
    pub fn interpolation(&self) -> Interpolation {
        self.interp
    }

    fn cdf_at(&self, t: f64) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        let last = self.times.len() - 1;
        // index of the last grid point ≤ t
        let i = self.times.partition_point(|&s| s <= t) - 1;
        match self.interp {
            Interpolation::Step => self.cdf[i],
            Interpolation::Linear => {
                if i == last {
                    self.cdf[last]
                } else {
                    let w = (t - self.times[i]) / (self.times[i + 1] - self.times[i]);
                    self.cdf[i] + w * (self.cdf[i + 1] - self.cdf[i])
                }
            }
        }
    }

    fn left_limit(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        match self.interp {
            Interpolation::Step => {
                let below = self.times.partition_point(|&s| s < t);
                self.cdf[below - 1]
            }
            Interpolation::Linear => self.cdf_at(t),
        }
    }

    fn quantile(&self, v: f64) -> Time {
        let Some(i) = self.cdf.iter().position(|&c| c >= v) else {
            return NEVER;
        };
        match self.interp {
            Interpolation::Step => self.times[i],
            Interpolation::Linear => {
                if i == 0 {
                    0.0
                } else {
                    let (c0, c1) = (self.cdf[i - 1], self.cdf[i]);
                    let (t0, t1) = (self.times[i - 1], self.times[i]);
                    (t0 + (v - c0) / (c1 - c0) * (t1 - t0)).clamp(t0, t1)
                }
            }
        }
    }

    pub(crate) fn discounted_default(&self, rate: f64, t_expiry: f64) -> f64 {
        let mut total = 0.0;
        match self.interp {
            Interpolation::Step => {
                let mut prev = 0.0;
                for (&t, &c) in self.times.iter().zip(&self.cdf) {
                    if t >= t_expiry {
                        break;
                    }
                    total += (-rate * t).exp() * (c - prev);
                    prev = c;
                }
            }
            Interpolation::Linear => {
                total += self.cdf[0];
                for i in 1..self.times.len() {
                    let (a, b) = (self.times[i - 1], self.times[i].min(t_expiry));
                    if a >= t_expiry {
                        break;
                    }
                    let slope = (self.cdf[i] - self.cdf[i - 1]) / (self.times[i] - self.times[i - 1]);
                    let seg = if rate == 0.0 {
                        b - a
                    } else {
                        (-rate * a).exp() * -(-rate * (b - a)).exp_m1() / rate
                    };
                    total += slope * seg;
                }
            }
        }
        total
    }
}

/// Marginal law of a single name's default time on `[0, ∞]`.
///
/// Curves are immutable once built and can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveSpec", into = "CurveSpec")]
pub enum DefaultCurve {
    ReducedForm(ReducedForm),
    Merton(Merton),
    Tabulated(Tabulated),
}

/// JSON representation of a curve, validated into a [`DefaultCurve`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CurveSpec {
    ReducedForm {
        hazard: Vec<HazardPiece>,
    },
    Merton {
        sigma: f64,
        theta: f64,
        barrier: f64,
    },
    Tabulated {
        times: Vec<f64>,
        cdf: Vec<f64>,
        #[serde(default)]
        interp: Interpolation,
    },
}

impl TryFrom<CurveSpec> for DefaultCurve {
    type Error = Error;

    fn try_from(spec: CurveSpec) -> Result<Self> {
        match spec {
            CurveSpec::ReducedForm { hazard } => DefaultCurve::reduced_form(hazard),
            CurveSpec::Merton { sigma, theta, barrier } => DefaultCurve::merton(sigma, theta, barrier),
            CurveSpec::Tabulated { times, cdf, interp } => DefaultCurve::tabulated(times, cdf, interp),
        }
    }
}

impl From<DefaultCurve> for CurveSpec {
    fn from(curve: DefaultCurve) -> Self {
        match curve {
            DefaultCurve::ReducedForm(r) => CurveSpec::ReducedForm { hazard: r.pieces },
            DefaultCurve::Merton(m) => CurveSpec::Merton {
                sigma: m.sigma,
                theta: m.theta,
                barrier: m.barrier,
            },
            DefaultCurve::Tabulated(t) => CurveSpec::Tabulated {
                times: t.times,
                cdf: t.cdf,
                interp: t.interp,
            },
        }
    }
}

impl DefaultCurve {
    pub fn reduced_form(hazard: Vec<HazardPiece>) -> Result<Self> {
        ReducedForm::new(hazard).map(DefaultCurve::ReducedForm)
    }

    /// Constant hazard `λ` on the whole half-line.
    pub fn flat_hazard(lambda: f64) -> Result<Self> {
        Self::reduced_form(vec![HazardPiece { until: 1.0, lambda }])
    }

    /// Flat hazard chosen so that `F(t_expiry) = f_t_minus`.
    pub fn flat_hazard_hitting(f_t_minus: f64, t_expiry: f64) -> Result<Self> {
        if !(f_t_minus > 0.0 && f_t_minus < 1.0 && t_expiry > 0.0) {
            return Err(Error::invalid("target default probability must lie in (0,1) with positive horizon"));
        }
        Self::flat_hazard(-(-f_t_minus).ln_1p() / t_expiry)
    }

    pub fn merton(sigma: f64, theta: f64, barrier: f64) -> Result<Self> {
        Merton::new(sigma, theta, barrier).map(DefaultCurve::Merton)
    }

    pub fn tabulated(times: Vec<f64>, cdf: Vec<f64>, interp: Interpolation) -> Result<Self> {
        Tabulated::new(times, cdf, interp).map(DefaultCurve::Tabulated)
    }

    pub fn kind(&self) -> CurveKind {
        match self {
            DefaultCurve::ReducedForm(_) => CurveKind::ReducedForm,
            DefaultCurve::Merton(_) => CurveKind::Merton,
            DefaultCurve::Tabulated(_) => CurveKind::Tabulated,
        }
    }

    /// `F(t) = μ[0, t]`; zero for negative `t`.
    pub fn cdf(&self, t: Time) -> f64 {
        if t < 0.0 {
            return 0.0;
        }
        match self {
            DefaultCurve::ReducedForm(r) => -(-r.cumulative_hazard(t)).exp_m1(),
            DefaultCurve::Merton(m) => m.cdf(t),
            DefaultCurve::Tabulated(tab) => tab.cdf_at(t),
        }
    }

    /// `F(t−) = sup_{s<t} F(s)`.
    pub fn cdf_left_limit(&self, t: Time) -> f64 {
        match self {
            DefaultCurve::Tabulated(tab) => tab.left_limit(t),
            _ if t <= 0.0 => 0.0,
            _ => self.cdf(t),
        }
    }

    /// Density on `(0, ∞)` for the absolutely continuous models.
    pub fn density(&self, t: Time) -> Option<f64> {
        match self {
            DefaultCurve::ReducedForm(r) if t > 0.0 => Some(r.hazard(t) * (-r.cumulative_hazard(t)).exp()),
            DefaultCurve::ReducedForm(_) => Some(0.0),
            DefaultCurve::Merton(m) => Some(m.density(t)),
            DefaultCurve::Tabulated(_) => None,
        }
    }

    /// `μ{∞} = 1 − lim_{t→∞} F(t)`.
    pub fn mass_at_infinity(&self) -> f64 {
        match self {
            DefaultCurve::ReducedForm(_) => 0.0,
            DefaultCurve::Merton(m) => 1.0 - m.finite_mass,
            DefaultCurve::Tabulated(t) => 1.0 - t.cdf[t.cdf.len() - 1],
        }
    }

    /// Generalized inverse `inf{t : F(t) ≥ v}`, returning [`NEVER`] when the
    /// level is not reached at any finite time.
    pub fn quantile(&self, v: f64) -> Time {
        match self {
            DefaultCurve::ReducedForm(r) => r.quantile(v),
            DefaultCurve::Merton(m) => m.quantile(v),
            DefaultCurve::Tabulated(t) => t.quantile(v),
        }
    }

    /// `E[e^{−Rτ} 1{τ<T}]`: the protection leg of a unit CDS.
    pub fn discounted_default(&self, rate: f64, t_expiry: f64) -> f64 {
        match self {
            DefaultCurve::ReducedForm(r) => r.discounted_default(rate, t_expiry),
            DefaultCurve::Merton(m) => m.discounted_default(rate, t_expiry),
            DefaultCurve::Tabulated(t) => t.discounted_default(rate, t_expiry),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn step(times: &[f64], cdf: &[f64]) -> DefaultCurve {
        DefaultCurve::tabulated(times.to_vec(), cdf.to_vec(), Interpolation::Step).unwrap()
    }

    #[test]
    fn reduced_form_cdf_examples() {
        let c = DefaultCurve::flat_hazard(0.05).unwrap();
        assert_eq!(c.cdf(0.0), 0.0);
        assert!((c.cdf(5.0) - 0.221_199_216_928_595_13).abs() < 1e-15);
        assert_eq!(c.cdf(-1.0), 0.0);
        assert_eq!(c.cdf_left_limit(5.0), c.cdf(5.0));
    }

    #[test]
    fn piecewise_hazard_accumulates() {
        let c = DefaultCurve::reduced_form(vec![
            HazardPiece { until: 1.0, lambda: 0.01 },
            HazardPiece { until: 3.0, lambda: 0.04 },
        ])
        .unwrap();
        let expect = 1.0 - (-(0.01 + 0.04 * 2.0 + 0.04 * 1.5f64)).exp();
        assert!((c.cdf(4.5) - expect).abs() < 1e-15);
        // quantile inverts the cdf across piece boundaries
        for t in [0.3, 1.0, 2.2, 7.0] {
            assert!((c.quantile(c.cdf(t)) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_inversion() {
        let c = DefaultCurve::flat_hazard(0.05).unwrap();
        let u: f64 = 0.3;
        assert!((c.quantile(u) - (-(1.0 - u).ln() / 0.05)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_hazard() {
        assert!(DefaultCurve::flat_hazard(0.0).is_err());
        assert!(DefaultCurve::reduced_form(vec![]).is_err());
        assert!(DefaultCurve::reduced_form(vec![
            HazardPiece { until: 2.0, lambda: 0.1 },
            HazardPiece { until: 1.0, lambda: 0.1 },
        ])
        .is_err());
    }

    #[test]
    fn tabulated_step_semantics() {
        let c = step(&[0.0, 1.0, 2.0, 3.0], &[0.0, 0.2, 0.3, 0.5]);
        assert_eq!(c.cdf(2.0), 0.3);
        assert!((c.cdf_left_limit(2.0) - (c.cdf(2.0) - 0.1)).abs() < 1e-15);
        assert_eq!(c.cdf(1.5), 0.2);
        assert_eq!(c.cdf(100.0), 0.5);
        assert_eq!(c.mass_at_infinity(), 0.5);
        assert_eq!(c.quantile(0.25), 2.0);
        assert_eq!(c.quantile(0.2), 1.0);
        assert_eq!(c.quantile(0.6), NEVER);
    }

    #[test]
    fn tabulated_flat_region_left_limit() {
        let c = step(&[0.0, 1.0, 3.0], &[0.0, 0.3, 0.3]);
        assert_eq!(c.cdf_left_limit(2.0), 0.3);
    }

    #[test]
    fn all_mass_at_infinity() {
        let c = step(&[0.0, 1.0], &[0.0, 0.0]);
        assert_eq!(c.mass_at_infinity(), 1.0);
        for u in [0.0001, 0.5, 0.999] {
            assert_eq!(c.quantile(u), NEVER);
        }
    }

    #[test]
    fn tabulated_linear() {
        let c = DefaultCurve::tabulated(vec![0.0, 2.0, 4.0], vec![0.0, 0.2, 0.6], Interpolation::Linear).unwrap();
        assert!((c.cdf(1.0) - 0.1).abs() < 1e-15);
        assert!((c.cdf(3.0) - 0.4).abs() < 1e-15);
        assert_eq!(c.cdf_left_limit(3.0), c.cdf(3.0));
        assert!((c.quantile(0.4) - 3.0).abs() < 1e-12);
        assert!((c.discounted_default(0.0, 3.0) - 0.4).abs() < 1e-15);
    }

    #[test]
    fn tabulated_validation() {
        assert!(DefaultCurve::tabulated(vec![0.0, 1.0], vec![0.5, 0.4], Interpolation::Step).is_err());
        assert!(DefaultCurve::tabulated(vec![0.0, 0.0], vec![0.1, 0.2], Interpolation::Step).is_err());
        assert!(DefaultCurve::tabulated(vec![1.0], vec![0.1], Interpolation::Step).is_err());
        assert!(DefaultCurve::tabulated(vec![0.0], vec![1.5], Interpolation::Step).is_err());
    }

    #[test]
    fn merton_validation() {
        assert!(DefaultCurve::merton(0.0, 0.02, 0.6).is_err());
        assert!(DefaultCurve::merton(0.3, 0.02, 1.0).is_err());
        assert!(DefaultCurve::merton(0.3, 0.02, 0.6).is_ok());
    }

    #[test]
    fn merton_escape_probability() {
        // μ = 0.2 − 0.02 = 0.18, d = ln 2, σ² = 0.04: hit with probability e^{−2μd/σ²} = 2^{−9}
        let c = DefaultCurve::merton(0.2, 0.2, 0.5).unwrap();
        assert!((c.mass_at_infinity() - (1.0 - 2f64.powi(-9))).abs() < 1e-15);
        assert!((c.cdf(400.0) - 2f64.powi(-9)).abs() < 1e-9);
        let stuck = DefaultCurve::merton(0.3, 0.02, 0.6).unwrap();
        assert_eq!(stuck.mass_at_infinity(), 0.0);
    }

    #[test]
    fn json_blocks_parse() {
        let c: DefaultCurve =
            serde_json::from_str(r#"{"kind":"reduced_form","hazard":[{"until":5.0,"lambda":0.05}]}"#).unwrap();
        assert_eq!(c.kind(), CurveKind::ReducedForm);
        let m: DefaultCurve = serde_json::from_str(r#"{"kind":"merton","sigma":0.3,"theta":0.02,"barrier":0.6}"#).unwrap();
        assert_eq!(m.kind(), CurveKind::Merton);
        let t: DefaultCurve =
            serde_json::from_str(r#"{"kind":"tabulated","times":[0,1,2],"cdf":[0,0.1,0.3],"interp":"step"}"#).unwrap();
        assert_eq!(t.cdf(1.5), 0.1);
        let bad = serde_json::from_str::<DefaultCurve>(r#"{"kind":"reduced_form","hazard":[{"until":5.0,"lambda":-1}]}"#);
        assert!(bad.is_err());
        let back: DefaultCurve = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        assert_eq!(back, m);
    }
}
