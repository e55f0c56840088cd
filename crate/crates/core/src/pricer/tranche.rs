use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Tranche contract terms.
#[derive(Debug, Clone, PartialEq)]
pub struct TrancheSpec<F> {
    alpha: F,
    beta: F,
    t_expiry: F,
    payment_dates: Vec<F>,
    riskless_rate: F,
}

impl<F: Scalar> TrancheSpec<F> {
    /// `alpha ∈ [0,1)`, `beta ∈ (alpha,1]`, positive expiry, strictly
    /// increasing non-empty payment dates in `[0, T]`, non-negative rate.
    ///
    /// A zero attachment is accepted for simulation and enumeration; the
    /// asymptotic formulas additionally require `alpha > F(T−) > 0`.
    pub fn new(alpha: F, beta: F, t_expiry: F, payment_dates: Vec<F>, riskless_rate: F) -> Result<Self> {
        let (zero, one) = (F::zero(), F::one());
        if !(alpha >= zero && alpha < one) {
            return Err(Error::invalid(format!("attachment α must lie in [0,1), got {alpha}")));
        }
        if !(beta > alpha && beta <= one) {
            return Err(Error::invalid(format!("detachment β must lie in (α,1], got {beta}")));
        }
        if !(t_expiry > zero && t_expiry.is_finite()) {
            return Err(Error::invalid(format!("expiry must be positive, got {t_expiry}")));
        }
        if !(riskless_rate >= zero && riskless_rate.is_finite()) {
            return Err(Error::invalid(format!("riskless rate must be non-negative, got {riskless_rate}")));
        }
        if payment_dates.is_empty() {
            return Err(Error::invalid("at least one payment date is required"));
        }
        if payment_dates.iter().any(|&t| !(t >= zero && t <= t_expiry)) {
            return Err(Error::invalid("payment dates must lie in [0, T]"));
        }
        if payment_dates.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::invalid("payment dates must be strictly increasing"));
        }
        Ok(TrancheSpec {
            alpha,
            beta,
            t_expiry,
            payment_dates,
            riskless_rate,
        })
    }

    /// Tranche with quarterly premiums `{0.25, 0.5, …, T}`.
    pub fn quarterly(alpha: F, beta: F, t_expiry: F, riskless_rate: F) -> Result<Self> {
        Self::new(alpha, beta, t_expiry, quarterly_dates(t_expiry), riskless_rate)
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }
    pub fn beta(&self) -> F {
        self.beta
    }
    pub fn width(&self) -> F {
        self.beta - self.alpha
    }
    pub fn t_expiry(&self) -> F {
        self.t_expiry
    }
    pub fn payment_dates(&self) -> &[F] {
        &self.payment_dates
    }
    pub fn riskless_rate(&self) -> F {
        self.riskless_rate
    }

    pub fn discount(&self, t: F) -> F {
        (-self.riskless_rate * t).exp()
    }

    /// `Σ_{t∈𝒯} e^{−Rt}`: the premium leg when no tranche loss occurs.
    pub fn annuity(&self) -> F {
        self.payment_dates.iter().map(|&t| self.discount(t)).sum()
    }

    /// Fraction of the tranche consumed at notional loss `loss`.
    pub fn tranche_loss(&self, loss: F) -> F {
        ((loss - self.alpha) / self.width()).max(F::zero()).min(F::one())
    }
}

/// `{0.25, 0.5, …, T}`; `T` itself is appended when it is not a quarter.
pub fn quarterly_dates<F: Scalar>(t_expiry: F) -> Vec<F> {
    let quarter = F::lit(0.25);
    let steps = (t_expiry / quarter).lattice_ceil();
    let whole = steps.to_u64().unwrap_or(0);
    let mut dates: Vec<F> = (1..=whole)
        .map(|k| quarter * F::from_count(k))
        .filter(|&t| t < t_expiry)
        .collect();
    dates.push(t_expiry);
    dates
}
