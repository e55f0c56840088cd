//! Large-pool pricing of investment-grade synthetic CDO tranches.
//!
//! The crate combines large-deviation asymptotics for the protection leg,
//! an exponentially tilted importance sampler, plain Monte Carlo, and exact
//! reference computations used to cross-check them.
//!
//! ```
//! use ldpcdo::{pricer, TrancheSpec};
//!
//! let tranche = TrancheSpec::new(0.1, 0.2, 1.0, vec![1.0], 0.0).unwrap();
//! let price = pricer::protection_leg_asymptotic(100, &tranche, 0.03).unwrap();
//! assert!(price.value > 3.5e-5 && price.value < 3.6e-5);
//! ```

// Validation is written `!(x > 0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature nodes and frozen reference values keep their published digits.
#![allow(clippy::excessive_precision)]

pub mod error;
pub mod ldp;
pub mod models;
pub mod oracle;
pub mod pricer;
pub mod scalar;
pub mod sim;

pub use error::{Error, Result};
pub use models::{DefaultCurve, Time, NEVER};

pub type TrancheSpec = pricer::TrancheSpec<f64>;
pub type TrancheSpec32 = pricer::TrancheSpec<f32>;
pub type AsymptoticPrice = pricer::AsymptoticPrice<f64>;
pub type AsymptoticPrice32 = pricer::AsymptoticPrice<f32>;
pub type MixtureStates = pricer::MixtureStates<f64>;
pub type MixtureStates32 = pricer::MixtureStates<f32>;
pub type TiltedMeasure = ldp::TiltedMeasure<f64>;
pub type TiltedMeasure32 = ldp::TiltedMeasure<f32>;
pub type TwoPointEntropy = ldp::TwoPointEntropy<f64>;
