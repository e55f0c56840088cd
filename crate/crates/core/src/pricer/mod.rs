//! Closed-form asymptotic prices for homogeneous pools and finite-state
//! mixtures.

mod asymptotic;
mod mixture;
mod normal;
mod tranche;

pub use crate::scalar::granularity;
pub use asymptotic::{
    bracket_leading, bracket_linear, price_star_scale, protection_leg_asymptotic, spread_asymptotic,
    theoretical_price_star, tilted_geometric_sum, AsymptoticPrice, GeometricSum,
};
pub use mixture::{
    dominant_state, gaussian_copula_states, mixture_protection_asymptotic, DominantState, MixturePrice,
    MixtureState, MixtureStates,
};
pub use normal::{inverse_std_normal_cdf, inverse_std_normal_sf, std_normal_cdf, std_normal_pdf, std_normal_sf};
pub use tranche::{quarterly_dates, TrancheSpec};
