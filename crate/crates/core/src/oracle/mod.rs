//! Exact and brute-force reference computations.

mod binomial;
mod entropy;
mod enumerate;
mod law;

pub use binomial::{binomial_pmf, binomial_tail, ln_gamma, local_clt_scan};
pub use entropy::{rate_min_bruteforce, RateScan};
pub use enumerate::{enumerate_exact_price, enumerate_exact_price_capped, ExactPrice, MAX_ATOMS, MAX_POOL, OUTCOME_CAP};
pub use law::DiscreteLaw;
