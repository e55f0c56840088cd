//! Finite-state mixtures of homogeneous pools and their asymptotic prices.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ldp::hbar;
use crate::scalar::Scalar;

use super::asymptotic::{protection_leg_asymptotic, AsymptoticPrice};
use super::normal::{inverse_std_normal_cdf, std_normal_cdf, std_normal_sf};
use super::tranche::TrancheSpec;

/// One systemic state: its probability and the conditional `F(T−)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureState<F> {
    pub weight: F,
    pub f_t_minus: F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixtureStates<F> {
    states: Vec<MixtureState<F>>,
}

/// Neumaier compensated sum.
pub(crate) fn compensated_sum<F: Scalar>(terms: impl IntoIterator<Item = F>) -> F {
    let mut sum = F::zero();
    let mut comp = F::zero();
    for x in terms {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

impl<F: Scalar> MixtureStates<F> {
    /// Weights must be positive and sum to one within `1e−12`; each
    /// conditional probability must lie in `(0,1)`.
    pub fn new(states: Vec<MixtureState<F>>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::invalid("a mixture needs at least one state"));
        }
        for (i, s) in states.iter().enumerate() {
            if !(s.weight > F::zero() && s.weight.is_finite()) {
                return Err(Error::invalid(format!("state {i}: weight must be positive, got {}", s.weight)));
            }
            if !(s.f_t_minus > F::zero() && s.f_t_minus < F::one()) {
                return Err(Error::invalid(format!(
                    "state {i}: conditional default probability must lie in (0,1), got {}",
                    s.f_t_minus
                )));
            }
        }
        let total = compensated_sum(states.iter().map(|s| s.weight));
        let tol = F::lit(1e-12).max(F::lit(8.0) * F::epsilon() * F::from_count(states.len() as u64));
        if (total - F::one()).abs() > tol {
            return Err(Error::invalid(format!("state weights sum to {total}, not 1")));
        }
        Ok(MixtureStates { states })
    }

    pub fn from_pairs(pairs: &[(F, F)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|&(weight, f_t_minus)| MixtureState { weight, f_t_minus })
                .collect(),
        )
    }

    pub fn states(&self) -> &[MixtureState<F>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `Σ p(x) f_x`, the unconditional default probability.
    pub fn mean_default_probability(&self) -> F {
        compensated_sum(self.states.iter().map(|s| s.weight * s.f_t_minus))
    }

    fn check_states(&self, alpha: F) -> Result<()> {
        for (i, s) in self.states.iter().enumerate() {
            if alpha <= s.f_t_minus {
                return Err(Error::AssumptionViolated {
                    alpha: alpha.to_f64().unwrap_or(f64::NAN),
                    f_t_minus: s.f_t_minus.to_f64().unwrap_or(f64::NAN),
                    state: Some(i),
                });
            }
        }
        Ok(())
    }
}

/// Mixture protection asymptotic with its per-state terms.
#[derive(Debug, Clone, PartialEq)]
pub struct MixturePrice<F> {
    pub value: F,
    /// Per-state asymptotics, in state order (not yet weighted).
    pub terms: Vec<AsymptoticPrice<F>>,
}

/// `Σ_x p(x) · protection_leg_asymptotic(n, tranche, f_x)`.
pub fn mixture_protection_asymptotic<F: Scalar>(
    n: u64,
    tranche: &TrancheSpec<F>,
    states: &MixtureStates<F>,
) -> Result<MixturePrice<F>> {
    states.check_states(tranche.alpha())?;
    let terms = states
        .states
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            protection_leg_asymptotic(n, tranche, s.f_t_minus).map_err(|e| match e {
                Error::AssumptionViolated { alpha, f_t_minus, .. } => Error::AssumptionViolated {
                    alpha,
                    f_t_minus,
                    state: Some(i),
                },
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let value = compensated_sum(states.states.iter().zip(&terms).map(|(s, t)| s.weight * t.value));
    Ok(MixturePrice { value, terms })
}

/// The state whose entropy `ℏ(α, f_x)` is smallest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DominantState<F> {
    pub index: usize,
    pub weight: F,
    pub f_t_minus: F,
    pub rate: F,
}

impl<F: Scalar> DominantState<F> {
    /// Single-term approximation `p(x*) · protection_leg_asymptotic(n, tranche, f_{x*})`.
    pub fn approximate_protection(&self, n: u64, tranche: &TrancheSpec<F>) -> Result<F> {
        Ok(self.weight * protection_leg_asymptotic(n, tranche, self.f_t_minus)?.value)
    }
}

/// Finds the unique state minimizing `ℏ(α, f_x)`; rates within `1e−12` of
/// each other are a tie.
pub fn dominant_state<F: Scalar>(states: &MixtureStates<F>, alpha: F) -> Result<DominantState<F>> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(Error::invalid(format!("attachment α must lie in (0,1), got {alpha}")));
    }
    states.check_states(alpha)?;
    let rates: Vec<F> = states.states.iter().map(|s| hbar(alpha, s.f_t_minus)).collect();
    let mut best = 0;
    for (i, &r) in rates.iter().enumerate().skip(1) {
        if r < rates[best] {
            best = i;
        }
    }
    let tol = F::lit(1e-12);
    if let Some(other) = (0..rates.len()).find(|&i| i != best && (rates[i] - rates[best]).abs() <= tol) {
        return Err(Error::Tie(best.min(other), best.max(other)));
    }
    let s = states.states[best];
    Ok(DominantState {
        index: best,
        weight: s.weight,
        f_t_minus: s.f_t_minus,
        rate: rates[best],
    })
}

/// Discretized one-factor Gaussian copula on the grid `x_i = i/M`,
/// `i ∈ {−M², …, M²}`, with the two outermost cells lumping the tails.
///
/// Cell probabilities are taken from whichever tail of `Φ` is accurate for
/// the cell. States whose probability underflows to zero, or whose
/// conditional default probability rounds to 0 or 1, are omitted and the
/// remaining weights renormalized.
pub fn gaussian_copula_states(p_default: f64, rho: f64, m: u32) -> Result<MixtureStates<f64>> {
    if !(p_default > 0.0 && p_default < 1.0) {
        return Err(Error::invalid(format!("default probability must lie in (0,1), got {p_default}")));
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::invalid(format!("correlation ρ must lie in (0,1), got {rho}")));
    }
    if m == 0 {
        return Err(Error::invalid("grid resolution M must be at least 1"));
    }
    let m = m as i64;
    let half = m * m;
    let scale = 2.0 * m as f64;
    // Boundary between cells i and i+1 sits at (2i+1)/(2M).
    let boundary = |i: i64| (2 * i + 1) as f64 / scale;
    let cell = |i: i64| -> f64 {
        if i == -half {
            return std_normal_cdf(boundary(i));
        }
        if i == half {
            return std_normal_sf(boundary(i - 1));
        }
        let (lo, hi) = (boundary(i - 1), boundary(i));
        if hi <= 0.0 {
            std_normal_cdf(hi) - std_normal_cdf(lo)
        } else if lo >= 0.0 {
            std_normal_sf(lo) - std_normal_sf(hi)
        } else {
            (0.5 - std_normal_cdf(lo)) + (0.5 - std_normal_sf(hi))
        }
    };
    let shift = inverse_std_normal_cdf(p_default)?;
    let denom = (1.0 - rho * rho).sqrt();
    let mut states: Vec<MixtureState<f64>> = (-half..=half)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / m as f64;
            MixtureState {
                weight: cell(i),
                f_t_minus: std_normal_cdf((shift - rho * x) / denom),
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|s| s.weight > 0.0 && s.f_t_minus > 0.0 && s.f_t_minus < 1.0)
        .collect();
    let kept = compensated_sum(states.iter().map(|s| s.weight));
    for s in &mut states {
        s.weight /= kept;
    }
    MixtureStates::new(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tranche() -> TrancheSpec<f64> {
        TrancheSpec::new(0.1, 0.2, 1.0, vec![1.0], 0.0).unwrap()
    }

    #[test]
    fn single_state_is_homogeneous() {
        let s = MixtureStates::from_pairs(&[(1.0, 0.03)]).unwrap();
        let mix = mixture_protection_asymptotic(100, &tranche(), &s).unwrap();
        let hom = protection_leg_asymptotic(100, &tranche(), 0.03).unwrap();
        assert_eq!(mix.value, hom.value);
    }

    #[test]
    fn duplicate_states() {
        let s = MixtureStates::from_pairs(&[(0.5, 0.03), (0.5, 0.03)]).unwrap();
        let mix = mixture_protection_asymptotic(100, &tranche(), &s).unwrap();
        let hom = protection_leg_asymptotic(100, &tranche(), 0.03).unwrap();
        assert_relative_eq!(mix.value, hom.value, max_relative = 1e-15);
    }

    #[test]
    fn dominated_by_riskier_state() {
        let s = MixtureStates::from_pairs(&[(0.5, 0.02), (0.5, 0.05)]).unwrap();
        let mix = mixture_protection_asymptotic(400, &tranche(), &s).unwrap();
        let dom = dominant_state(&s, 0.1).unwrap();
        assert_eq!(dom.index, 1);
        let approx = dom.approximate_protection(400, &tranche()).unwrap();
        assert!((mix.value - approx) / mix.value < 0.01);
    }

    #[test]
    fn offending_state_named() {
        let s = MixtureStates::from_pairs(&[(0.5, 0.02), (0.5, 0.15)]).unwrap();
        let err = mixture_protection_asymptotic(400, &tranche(), &s).unwrap_err();
        assert!(matches!(err, Error::AssumptionViolated { state: Some(1), .. }));
        assert!(err.to_string().contains("state 1"));
    }

    #[test]
    fn ties() {
        let s = MixtureStates::from_pairs(&[(0.5, 0.04), (0.5, 0.04)]).unwrap();
        assert_eq!(dominant_state(&s, 0.1), Err(Error::Tie(0, 1)));
        let one = MixtureStates::from_pairs(&[(1.0, 0.04)]).unwrap();
        assert_eq!(dominant_state(&one, 0.1).unwrap().index, 0);
    }

    #[test]
    fn weights_validated() {
        assert!(MixtureStates::from_pairs(&[(0.5, 0.04)]).is_err());
        assert!(MixtureStates::from_pairs(&[(1.0, 0.0)]).is_err());
        assert!(MixtureStates::<f64>::from_pairs(&[]).is_err());
    }

    #[test]
    fn copula_weights_sum_to_one() {
        for m in [1, 2, 4, 8, 16, 32] {
            let s = gaussian_copula_states(0.03, 0.3, m).unwrap();
            let total = compensated_sum(s.states().iter().map(|x| x.weight));
            assert!((total - 1.0).abs() <= 1e-14, "m={m} total={total}");
            assert!(s.states().iter().all(|x| x.weight >= 0.0));
        }
    }

    #[test]
    fn copula_total_probability() {
        let mut last = f64::INFINITY;
        for m in [4, 8, 16] {
            let s = gaussian_copula_states(0.03, 0.3, m).unwrap();
            let err = (s.mean_default_probability() - 0.03).abs();
            assert!(err < last, "m={m}");
            last = err;
        }
        assert!(last < 1e-4);
    }

    #[test]
    fn copula_small_correlation() {
        let s = gaussian_copula_states(0.03, 1e-9, 4).unwrap();
        assert!(s.states().iter().all(|x| (x.f_t_minus - 0.03).abs() < 1e-8));
    }

    #[test]
    fn copula_rejects_bad_rho() {
        assert!(gaussian_copula_states(0.03, -0.2, 4).is_err());
        assert!(gaussian_copula_states(0.03, 1.0, 4).is_err());
        assert!(gaussian_copula_states(0.03, 0.2, 0).is_err());
    }
}
