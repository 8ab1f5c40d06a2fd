//! Multi-copy channel simulation and rate curves.

mod channel;
mod decode;
mod monte_carlo;
mod rate;

pub use channel::{synthesize, synthesize_with, trial_rng, Channel, ChannelTrace};
pub use decode::{read_and_decode, simulate, IndexErrorRate, SimulationConfig, SimulationReport};
pub use monte_carlo::{monte_carlo_errors, McEstimate};
pub use rate::{
    lambda1_csv, lambda1_table, rate_curve, rate_curve_csv, sig9, Family, RateCurveSpec, RatePoint,
    SweepParam, CSV_HEADER,
};
