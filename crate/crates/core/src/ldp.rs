//! Bernoulli relative entropy, the tilting exponent and the explicit
//! minimizing (tilted) default-time law.
//!
//! Everything here is a pure function of a handful of probabilities, written
//! against [`Scalar`] so it runs in `f32` or `f64`.

use crate::error::{Error, Result};
use crate::models::DefaultCurve;
use crate::scalar::Scalar;

fn as_f64<F: Scalar>(x: F) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `x ln(x/y)` with `0 ln 0 = 0`, accurate when `x ≈ y`.
fn xlogxy<F: Scalar>(x: F, y: F) -> F {
    if x == F::zero() {
        F::zero()
    } else {
        x * ((x - y) / y).ln_1p()
    }
}

/// Relative entropy of a Bernoulli(`a1`) law with respect to Bernoulli(`a2`),
/// in nats, `+∞` when `a1` is not absolutely continuous w.r.t. `a2`.
///
/// The boundary points `(0,0)` and `(1,1)` are given the continuous value 0.
pub fn hbar<F: Scalar>(a1: F, a2: F) -> F {
    let (zero, one) = (F::zero(), F::one());
    let inside = |x: F| x > zero && x < one;
    if inside(a1) && inside(a2) {
        xlogxy(a1, a2) + xlogxy(one - a1, one - a2)
    } else if a1 == one && inside(a2) {
        -a2.ln()
    } else if a1 == zero && a2 >= zero && a2 < one {
        -(-a2).ln_1p()
    } else if a1 == one && a2 == one {
        zero
    } else {
        F::infinity()
    }
}

/// `∂ℏ/∂a1 = ln( a1/(1−a1) · (1−a2)/a2 )`, the log odds ratio.
pub fn hbar_slope<F: Scalar>(a1: F, a2: F) -> F {
    let one = F::one();
    (a1 / (one - a1) * ((one - a2) / a2)).ln()
}

/// A Bernoulli relative entropy together with its arguments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointEntropy<F> {
    pub a1: F,
    pub a2: F,
    pub value: F,
}

impl<F: Scalar> TwoPointEntropy<F> {
    pub fn new(a1: F, a2: F) -> Self {
        TwoPointEntropy { a1, a2, value: hbar(a1, a2) }
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
    }
}

/// Checks `0 < F(T−) < 1`, `0 < α < 1` and `α > F(T−)`.
pub(crate) fn check_investment_grade<F: Scalar>(alpha: F, f_t_minus: F) -> Result<()> {
    let (zero, one) = (F::zero(), F::one());
    if !(f_t_minus > zero && f_t_minus < one) {
        return Err(Error::DegenerateCurve(as_f64(f_t_minus)));
    }
    if !(alpha > zero && alpha < one) {
        return Err(Error::invalid(format!("attachment α must lie in (0,1), got {alpha}")));
    }
    if alpha <= f_t_minus {
        return Err(Error::not_investment_grade(as_f64(alpha), as_f64(f_t_minus)));
    }
    Ok(())
}

/// Large-deviation rate `𝔍(α) = ℏ(α, F(T−))` of `{L_{T−} ≥ α}`.
pub fn rate_function<F: Scalar>(alpha: F, f_t_minus: F) -> Result<F> {
    check_investment_grade(alpha, f_t_minus)?;
    Ok(hbar(alpha, f_t_minus))
}

/// Tilting exponent `κ = ln( α/(1−α) · (1−F(T−))/F(T−) ) > 0`.
pub fn kappa<F: Scalar>(alpha: F, f_t_minus: F) -> Result<F> {
    check_investment_grade(alpha, f_t_minus)?;
    Ok(hbar_slope(alpha, f_t_minus))
}

/// The minimizing law: `μ` rescaled by `α/F(T−)` on `[0,T)` and by
/// `(1−α)/(1−F(T−))` on `[T,∞]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TiltedMeasure<F> {
    pub alpha: F,
    pub f_t_minus: F,
    pub scale_before: F,
    pub scale_after: F,
    pub t_expiry: F,
}

impl<F: Scalar> TiltedMeasure<F> {
    pub fn new(alpha: F, f_t_minus: F, t_expiry: F) -> Result<Self> {
        check_investment_grade(alpha, f_t_minus)?;
        if !(t_expiry > F::zero()) {
            return Err(Error::invalid("expiry must be positive"));
        }
        let one = F::one();
        Ok(TiltedMeasure {
            alpha,
            f_t_minus,
            scale_before: alpha / f_t_minus,
            scale_after: (one - alpha) / (one - f_t_minus),
            t_expiry,
        })
    }

    /// Log density ratio `φ*` on `[0,T)`.
    pub fn phi_before(&self) -> F {
        self.scale_before.ln()
    }

    /// Log density ratio `φ*` on `[T,∞]`.
    pub fn phi_after(&self) -> F {
        self.scale_after.ln()
    }

    pub fn total_mass(&self) -> F {
        self.scale_before * self.f_t_minus + self.scale_after * (F::one() - self.f_t_minus)
    }

    pub fn rate(&self) -> F {
        hbar(self.alpha, self.f_t_minus)
    }

    pub fn kappa(&self) -> F {
        hbar_slope(self.alpha, self.f_t_minus)
    }

    /// Tilted probability of defaulting before expiry, equal to `α`.
    pub fn mass_before(&self) -> F {
        self.scale_before * self.f_t_minus
    }
}

/// Builds the tilted law for a curve, attachment and expiry.
pub fn tilted_split(curve: &DefaultCurve, alpha: f64, t_expiry: f64) -> Result<TiltedMeasure<f64>> {
    let f = curve.cdf_left_limit(t_expiry);
    TiltedMeasure::new(alpha, f, t_expiry)
}

/// Law on `{[0,T), [T,∞]}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPointLaw<F> {
    pub before: F,
    pub after: F,
}

impl<F: Scalar> TwoPointLaw<F> {
    pub fn new(before: F) -> Result<Self> {
        if !(before >= F::zero() && before <= F::one()) {
            return Err(Error::invalid(format!("mass before expiry must lie in [0,1], got {before}")));
        }
        Ok(TwoPointLaw { before, after: F::one() - before })
    }
}

/// `H(μ′|μ) − [∫φ dμ′ − ln ∫e^φ dμ]` for the step function
/// `φ = phi_before·1_[0,T) + phi_after·1_[T,∞]`. Never negative; zero at the
/// log density ratio of `μ′` with respect to `μ`.
pub fn entropy_dual_gap<F: Scalar>(phi_before: F, phi_after: F, mu_prime: TwoPointLaw<F>, mu: TwoPointLaw<F>) -> F {
    let entropy = hbar(mu_prime.before, mu.before);
    if !entropy.is_finite() {
        return F::infinity();
    }
    let zero = F::zero();
    let linear = |phi: F, w: F| if w == zero { zero } else { phi * w };
    let expected = linear(phi_before, mu_prime.before) + linear(phi_after, mu_prime.after);
    let terms = [(phi_before, mu.before), (phi_after, mu.after)];
    let peak = terms
        .iter()
        .filter(|(_, w)| *w > zero)
        .map(|(p, _)| *p)
        .fold(F::neg_infinity(), F::max);
    let log_mgf = peak
        + terms
            .iter()
            .filter(|(_, w)| *w > zero)
            .map(|&(p, w)| w * (p - peak).exp())
            .sum::<F>()
            .ln();
    entropy - (expected - log_mgf)
}

#[cfg(test)]
mod tests {
    use super::*;

    const H_10_03: f64 = 0.052_986_103_076_787_619;

    #[test]
    fn hbar_examples() {
        assert_eq!(hbar(0.3, 0.3), 0.0);
        assert!((hbar(1.0, 0.25) - 4f64.ln()).abs() < 1e-15);
        assert!((hbar(0.1, 0.03) - H_10_03).abs() < 1e-15);
        assert_eq!(hbar(0.5, 0.0), f64::INFINITY);
        assert!((hbar(0.0, 0.2) - (1.0f64 / 0.8).ln()).abs() < 1e-15);
        assert_eq!(hbar(0.0, 0.0), 0.0);
        assert_eq!(hbar(1.0, 1.0), 0.0);
        assert_eq!(hbar(0.0, 1.0), f64::INFINITY);
        assert_eq!(hbar(1.0, 0.0), f64::INFINITY);
        assert_eq!(hbar(0.4, 1.0), f64::INFINITY);
    }

    #[test]
    fn rate_and_kappa_examples() {
        assert!((rate_function(0.1, 0.03).unwrap() - H_10_03).abs() < 1e-15);
        assert!((kappa(0.1f64, 0.03).unwrap() - 1.278_874_112_499_053_7).abs() < 1e-14);
        assert!(matches!(rate_function(0.1, 0.1), Err(Error::AssumptionViolated { .. })));
        assert!(matches!(kappa(0.05, 0.1), Err(Error::AssumptionViolated { .. })));
        assert!(rate_function(0.100_001, 0.1).unwrap() < 1e-10);
        assert_eq!(hbar_slope(0.2, 0.2), 0.0);
    }

    #[test]
    fn kappa_identity() {
        let k = kappa(0.1f64, 0.03).unwrap();
        let lhs = (-k).exp() / (1.0 - (-k).exp()).powi(2);
        assert!((lhs - 0.534_489_795_918_367_35).abs() < 1e-14);
    }

    #[test]
    fn single_precision_agrees() {
        let h32 = hbar(0.1f32, 0.03f32);
        assert!((h32 as f64 - H_10_03).abs() < 1e-6);
        let k32 = kappa(0.1f32, 0.03f32).unwrap();
        assert!((k32 as f64 - 1.278_874_112_499_053_7).abs() < 1e-5);
    }

    #[test]
    fn tilted_split_example() {
        let m = TiltedMeasure::new(0.1f64, 0.03, 5.0).unwrap();
        assert!((m.scale_before - 10.0 / 3.0).abs() < 1e-15);
        assert!((m.scale_after - 0.9 / 0.97).abs() < 1e-15);
        assert!((m.total_mass() - 1.0).abs() <= 1e-15);
        assert!(m.scale_before > 1.0 && m.scale_after < 1.0);
        assert!(matches!(TiltedMeasure::new(0.1, 0.0, 5.0), Err(Error::DegenerateCurve(_))));
        assert!(matches!(TiltedMeasure::new(0.1, 0.2, 5.0), Err(Error::AssumptionViolated { .. })));
    }

    #[test]
    fn tilted_split_from_curve() {
        let curve = DefaultCurve::flat_hazard_hitting(0.03, 5.0).unwrap();
        let m = tilted_split(&curve, 0.1, 5.0).unwrap();
        assert!((m.f_t_minus - 0.03).abs() < 1e-15);
        let never = DefaultCurve::tabulated(vec![0.0, 6.0], vec![0.0, 1.0], crate::models::Interpolation::Step).unwrap();
        assert!(matches!(tilted_split(&never, 0.1, 5.0), Err(Error::DegenerateCurve(_))));
    }

    #[test]
    fn dual_gap_zero_at_extremal() {
        let m = TiltedMeasure::new(0.1f64, 0.03, 5.0).unwrap();
        let mu = TwoPointLaw::new(0.03f64).unwrap();
        let tilted = TwoPointLaw::new(0.1).unwrap();
        let gap = entropy_dual_gap(m.phi_before(), m.phi_after(), tilted, mu);
        assert!(gap.abs() < 1e-12, "{gap}");
        let zero_phi = entropy_dual_gap(0.0, 0.0, tilted, mu);
        assert!((zero_phi - hbar(0.1, 0.03)).abs() < 1e-15);
    }
}
