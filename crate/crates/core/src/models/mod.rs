//! Default-time distributions, assumption checks and single-name CDS calibration.

mod calibrate;
mod curve;
pub mod quadrature;

pub use calibrate::{calibrate_flat_hazard, cds_fair_spread, cds_premium_annuity};
pub use curve::{
    CurveKind, CurveSpec, DefaultCurve, HazardPiece, Interpolation, Merton, ReducedForm, Tabulated, Time, NEVER,
};

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Inverse-CDF draw of one default time; [`NEVER`] with probability `μ{∞}`.
pub fn sample_default_time<R: Rng + ?Sized>(curve: &DefaultCurve, stream: &mut R) -> Time {
    curve.quantile(stream.random::<f64>())
}

/// Outcome of checking a (curve, attachment, expiry) triple against the
/// investment-grade and no-flat-before-expiry conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionReport {
    pub f_t_minus: f64,
    /// `α > F(T−)`.
    pub ig_ok: bool,
    /// `F` strictly increases into `T` on the dyadic probe grid.
    pub density_ok: bool,
    /// Chebychev bound on `P{L_{T−} > α}`, only meaningful when `ig_ok`.
    pub chebychev_bound: Option<f64>,
}

const DENSITY_PROBES: i32 = 10;

pub fn validate_assumptions(
    curve: &DefaultCurve,
    alpha: f64,
    t_expiry: f64,
    pool_size: u64,
) -> Result<AssumptionReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("attachment α must lie in (0,1), got {alpha}")));
    }
    if !(t_expiry > 0.0 && t_expiry.is_finite()) {
        return Err(Error::invalid(format!("expiry must be positive, got {t_expiry}")));
    }
    if pool_size == 0 {
        return Err(Error::invalid("pool size must be at least 1"));
    }
    let f = curve.cdf_left_limit(t_expiry);
    let ig_ok = alpha > f;
    let density_ok = (1..=DENSITY_PROBES).all(|k| {
        let probe = t_expiry - t_expiry / 2f64.powi(k);
        f - curve.cdf(probe) > 0.0
    });
    let chebychev_bound = ig_ok.then(|| {
        let variance = f * (1.0 - f) / pool_size as f64;
        variance / ((alpha - f) * (alpha - f))
    });
    Ok(AssumptionReport {
        f_t_minus: f,
        ig_ok,
        density_ok,
        chebychev_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chebychev_example() {
        // flat hazard with F(T) = 0.03
        let curve = DefaultCurve::flat_hazard_hitting(0.03, 5.0).unwrap();
        let r = validate_assumptions(&curve, 0.1, 5.0, 100).unwrap();
        assert!((r.f_t_minus - 0.03).abs() < 1e-15);
        assert!(r.ig_ok && r.density_ok);
        assert!((r.chebychev_bound.unwrap() - 0.059_387_755_102_040_816).abs() < 1e-12);
    }

    #[test]
    fn ig_failure_has_no_bound() {
        let curve = DefaultCurve::flat_hazard_hitting(0.2, 5.0).unwrap();
        let r = validate_assumptions(&curve, 0.1, 5.0, 100).unwrap();
        assert!(!r.ig_ok);
        assert_eq!(r.chebychev_bound, None);
    }

    #[test]
    fn flat_before_expiry_fails_density_probe() {
        let curve = DefaultCurve::tabulated(vec![0.0, 0.1], vec![0.0, 1.0], Interpolation::Step).unwrap();
        let r = validate_assumptions(&curve, 0.5, 1.0, 10).unwrap();
        assert!(!r.density_ok);
        let ramp = DefaultCurve::tabulated(vec![0.0, 2.0], vec![0.0, 0.5], Interpolation::Linear).unwrap();
        assert!(validate_assumptions(&ramp, 0.5, 1.0, 10).unwrap().density_ok);
        let early_ramp = DefaultCurve::tabulated(vec![0.0, 0.999], vec![0.0, 0.01], Interpolation::Linear).unwrap();
        assert!(!validate_assumptions(&early_ramp, 0.5, 1.0, 10).unwrap().density_ok);
    }

    #[test]
    fn rejects_bad_parameters() {
        let curve = DefaultCurve::flat_hazard(0.01).unwrap();
        assert!(validate_assumptions(&curve, 0.0, 1.0, 10).is_err());
        assert!(validate_assumptions(&curve, 1.0, 1.0, 10).is_err());
        assert!(validate_assumptions(&curve, 0.1, 0.0, 10).is_err());
    }
}
