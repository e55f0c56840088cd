//! Monte Carlo simulation of default scenarios and tranche legs.

mod engine;
mod rng;
mod scenario;
mod stats;

pub use engine::{
    is_price, mc_price, simulate_paths, tilt_diagnostics, Estimate, IsPrice, McPrice, Mode, PathRecord, TiltBucket,
    TiltReport,
};
pub use rng::PathStreams;
pub use scenario::{
    premium_leg_value, protection_leg_value, simulate_scenario, LossPath, SamplingLaw, Scenario, TrancheLadder,
};
