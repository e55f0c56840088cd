//! Closed-form large-pool asymptotics of the protection leg and spread.

use crate::error::{Error, Result};
use crate::ldp::{check_investment_grade, hbar, hbar_slope};
use crate::scalar::{AttachmentLattice, Scalar};

use super::tranche::TrancheSpec;

/// Decomposed asymptotic price
/// `value = prefactor · e^{−κ·granularity} · bracket · e^{−exponent}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticPrice<F> {
    pub value: F,
    /// `ln value`, finite even when `value` underflows.
    pub log_value: F,
    /// `N·𝔍(α)` in nats.
    pub exponent: F,
    pub prefactor: F,
    /// `⌈Nα⌉ − Nα`.
    pub granularity: F,
    /// `α(1−α)F(1−F)/(α−F)² + granularity · α(1−F)/(α−F)`.
    pub bracket: F,
    pub kappa: F,
}

impl<F: Scalar> AsymptoticPrice<F> {
    fn assemble(prefactor: F, granularity: F, bracket: F, exponent: F, kappa: F) -> Self {
        let log_value = prefactor.ln() - kappa * granularity + bracket.ln() - exponent;
        AsymptoticPrice {
            value: log_value.exp(),
            log_value,
            exponent,
            prefactor,
            granularity,
            bracket,
            kappa,
        }
    }

    pub fn log10_value(&self) -> F {
        self.log_value / F::LN_10()
    }

    /// Same decomposition with the prefactor divided by `divisor`.
    fn rescaled(&self, divisor: F) -> Self {
        Self::assemble(self.prefactor / divisor, self.granularity, self.bracket, self.exponent, self.kappa)
    }
}

/// `e^{−κ}/(1−e^{−κ})²` written without κ.
pub fn bracket_leading<F: Scalar>(alpha: F, f_t_minus: F) -> F {
    let one = F::one();
    let gap = alpha - f_t_minus;
    alpha * (one - alpha) * f_t_minus * (one - f_t_minus) / (gap * gap)
}

/// `1/(1−e^{−κ})` written without κ.
pub fn bracket_linear<F: Scalar>(alpha: F, f_t_minus: F) -> F {
    alpha * (F::one() - f_t_minus) / (alpha - f_t_minus)
}

fn core_terms<F: Scalar>(n: u64, alpha: F, f_t_minus: F) -> Result<(F, F, F, F)> {
    if n == 0 {
        return Err(Error::invalid("pool size must be at least 1"));
    }
    check_investment_grade(alpha, f_t_minus)?;
    let g = AttachmentLattice::new(n, alpha).granularity;
    let bracket = bracket_leading(alpha, f_t_minus) + g * bracket_linear(alpha, f_t_minus);
    let exponent = F::from_count(n) * hbar(alpha, f_t_minus);
    Ok((g, bracket, exponent, hbar_slope(alpha, f_t_minus)))
}

fn n_three_halves<F: Scalar>(n: u64) -> F {
    let nf = F::from_count(n);
    nf * nf.sqrt()
}

/// Large-pool asymptotic of the expected protection leg, error term dropped.
pub fn protection_leg_asymptotic<F: Scalar>(n: u64, tranche: &TrancheSpec<F>, f_t_minus: F) -> Result<AsymptoticPrice<F>> {
    let alpha = tranche.alpha();
    let (g, bracket, exponent, kappa) = core_terms(n, alpha, f_t_minus)?;
    let two_pi = F::lit(2.0) * F::PI();
    let prefactor = tranche.discount(tranche.t_expiry())
        / (n_three_halves::<F>(n) * tranche.width() * (two_pi * alpha * (F::one() - alpha)).sqrt());
    Ok(AsymptoticPrice::assemble(prefactor, g, bracket, exponent, kappa))
}

/// Asymptotic par spread: the protection asymptotic over the annuity.
pub fn spread_asymptotic<F: Scalar>(n: u64, tranche: &TrancheSpec<F>, f_t_minus: F) -> Result<AsymptoticPrice<F>> {
    Ok(protection_leg_asymptotic(n, tranche, f_t_minus)?.rescaled(tranche.annuity()))
}

/// Contract-free price `S*_N`: the asymptotic spread without the factor
/// `e^{−RT}/(Σe^{−Rt} (β−α) √(2π))`.
pub fn theoretical_price_star<F: Scalar>(n: u64, alpha: F, f_t_minus: F) -> Result<AsymptoticPrice<F>> {
    let (g, bracket, exponent, kappa) = core_terms(n, alpha, f_t_minus)?;
    let prefactor = F::one() / (n_three_halves::<F>(n) * (alpha * (F::one() - alpha)).sqrt());
    Ok(AsymptoticPrice::assemble(prefactor, g, bracket, exponent, kappa))
}

/// The factor separating [`theoretical_price_star`] from [`spread_asymptotic`].
pub fn price_star_scale<F: Scalar>(tranche: &TrancheSpec<F>) -> F {
    let two_pi = F::lit(2.0) * F::PI();
    tranche.discount(tranche.t_expiry()) / (tranche.annuity() * tranche.width() * two_pi.sqrt())
}

/// Truncated geometric sum, its closed-form limit and the truncation bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricSum<F> {
    pub truncated: F,
    pub closed_form: F,
    pub bound: F,
}

impl<F: Scalar> GeometricSum<F> {
    pub fn within_bound(&self) -> bool {
        let rounding = F::lit(8.0) * F::epsilon() * self.closed_form.abs();
        (self.truncated - self.closed_form).abs() <= self.bound + rounding
    }
}

/// Compares `Σ_{s ≤ N^{1/4}} s e^{−κs}` over `s ∈ {g, g+1, …}` with its
/// untruncated closed form.
pub fn tilted_geometric_sum<F: Scalar>(n: u64, alpha: F, kappa: F) -> Result<GeometricSum<F>> {
    if n == 0 {
        return Err(Error::invalid("pool size must be at least 1"));
    }
    if !(kappa > F::zero() && kappa.is_finite()) {
        return Err(Error::invalid(format!("κ must be positive, got {kappa}")));
    }
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(Error::invalid(format!("attachment α must lie in (0,1), got {alpha}")));
    }
    let one = F::one();
    let g = AttachmentLattice::new(n, alpha).granularity;
    let cutoff = F::from_count(n).sqrt().sqrt();

    let mut truncated = F::zero();
    let mut s = g;
    while s <= cutoff {
        truncated += s * (-kappa * s).exp();
        s += one;
    }

    let decay = (-kappa).exp();
    let tail = one - decay;
    let closed_form = (-kappa * g).exp() * (decay / (tail * tail) + g / tail);
    let bound = F::lit(4.0) * (-one).exp() * (-(kappa / F::lit(2.0)) * (cutoff - one)).exp() / (kappa * tail * tail);
    Ok(GeometricSum {
        truncated,
        closed_form,
        bound,
    })
}
