use super::curve::{DefaultCurve, HazardPiece};
use crate::error::{Error, Result};

const LAMBDA_MIN: f64 = 1e-12;
const LAMBDA_MAX: f64 = 10.0;

/// `Σ_{t∈𝒯} e^{−Rt} (1 − F(t))`: premium annuity of a unit CDS.
pub fn cds_premium_annuity(curve: &DefaultCurve, payment_dates: &[f64], riskless_rate: f64) -> f64 {
    payment_dates
        .iter()
        .map(|&t| (-riskless_rate * t).exp() * (1.0 - curve.cdf(t)))
        .sum()
}

/// Spread equating the expected protection and premium legs of a CDS.
pub fn cds_fair_spread(curve: &DefaultCurve, payment_dates: &[f64], riskless_rate: f64, t_expiry: f64) -> Result<f64> {
    let annuity = cds_premium_annuity(curve, payment_dates, riskless_rate);
    if annuity <= 0.0 {
        return Err(Error::UndefinedSpread);
    }
    Ok(curve.discounted_default(riskless_rate, t_expiry) / annuity)
}

struct FlatLegs<'a> {
    dates: &'a [f64],
    rate: f64,
    t_expiry: f64,
}

impl FlatLegs<'_> {
    // (ratio, d ratio / dλ)
    fn ratio(&self, lambda: f64) -> (f64, f64) {
        let c = self.rate + lambda;
        let tail = (-c * self.t_expiry).exp();
        let hit = -(-c * self.t_expiry).exp_m1();
        let prot = lambda / c * hit;
        let d_prot = self.rate / (c * c) * hit + lambda / c * self.t_expiry * tail;
        let (annuity, d_annuity) = self.dates.iter().fold((0.0, 0.0), |(a, da), &t| {
            let df = (-c * t).exp();
            (a + df, da - t * df)
        });
        (prot / annuity, (d_prot * annuity - prot * d_annuity) / (annuity * annuity))
    }
}

/// Flat hazard rate reproducing a quoted CDS spread.
///
/// Solves `S·Σ e^{−Rt}e^{−λt} = ∫₀ᵀ e^{−Rs} λe^{−λs} ds` by bisection on
/// `λ ∈ [1e−12, 10]` followed by a Newton polish.
pub fn calibrate_flat_hazard(spread: f64, payment_dates: &[f64], riskless_rate: f64, t_expiry: f64) -> Result<DefaultCurve> {
    if !(spread > 0.0 && spread.is_finite()) {
        return Err(Error::invalid(format!("spread must be positive, got {spread}")));
    }
    if !(t_expiry > 0.0 && t_expiry.is_finite()) {
        return Err(Error::invalid(format!("expiry must be positive, got {t_expiry}")));
    }
    if !(riskless_rate >= 0.0 && riskless_rate.is_finite()) {
        return Err(Error::invalid(format!("riskless rate must be non-negative, got {riskless_rate}")));
    }
    if payment_dates.is_empty() || payment_dates.iter().any(|&t| !(t >= 0.0 && t <= t_expiry)) {
        return Err(Error::invalid("payment dates must be non-empty and lie in [0, T]"));
    }
    let legs = FlatLegs {
        dates: payment_dates,
        rate: riskless_rate,
        t_expiry,
    };
    let (lo_ratio, _) = legs.ratio(LAMBDA_MIN);
    let (hi_ratio, _) = legs.ratio(LAMBDA_MAX);
    if spread < lo_ratio || spread > hi_ratio {
        return Err(Error::NoRoot(format!(
            "spread {spread} outside the attainable range [{lo_ratio:.3e}, {hi_ratio:.6}] for λ ∈ [{LAMBDA_MIN:e}, {LAMBDA_MAX}]"
        )));
    }
    let (mut lo, mut hi) = (LAMBDA_MIN, LAMBDA_MAX);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if legs.ratio(mid).0 < spread {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..3 {
        let (r, dr) = legs.ratio(lambda);
        if dr <= 0.0 {
            break;
        }
        let next = lambda - (r - spread) / dr;
        if next > lo && next < hi {
            lambda = next;
        }
    }
    let residual = (legs.ratio(lambda).0 - spread).abs() / spread;
    if residual > 1e-12 {
        return Err(Error::NoRoot(format!("calibration residual {residual:e} above 1e-12")));
    }
    DefaultCurve::reduced_form(vec![HazardPiece { until: t_expiry, lambda }])
}
