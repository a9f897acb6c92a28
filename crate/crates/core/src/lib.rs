//! Reservoir computing built from stochastic p-bit nodes.
//!
//! A p-bit is a binary unit that flips between -1 and +1 with a probability
//! controlled by its input; the long-time average of its output follows
//! tanh of the drive. Networks of leaky-filtered p-bits behave like echo
//! state networks and can be trained with a ridge-regression readout.
//!
//! The crate provides:
//! - the single-node model ([`pbit`]) with a counter-based RNG ([`rng`])
//!   so every trajectory is a pure function of the seed,
//! - sparse random reservoirs scaled to a target spectral radius
//!   ([`reservoir`], [`spectral`]),
//! - ridge-regression readout training ([`readout`]),
//! - benchmark signal generators ([`tasks`]): Mackey-Glass time series and
//!   a nonlinear FIR channel for equalization,
//! - error metrics ([`metrics`]) and a device power model ([`power`]),
//! - a batch experiment runner ([`experiment`]) behind the `pbit-rc` CLI.

pub mod error;
pub mod experiment;
pub mod metrics;
pub mod pbit;
pub mod power;
pub mod readout;
pub mod reservoir;
pub mod rng;
pub mod sparse;
pub mod spectral;
pub mod tasks;

pub use error::{Error, Result};
pub use pbit::{node_step, pbit_sample, NodeKind, PBitParams};
pub use readout::{predict, predict_one, ridge_fit, FeatureLayout, ReadoutWeights, RidgeConfig};
pub use reservoir::{
    build_weights, reservoir_step, run_free, run_teacher_forced, FeatureSpec, ReservoirConfig,
    ReservoirState, WeightSet,
};
pub use rng::RngStream;
pub use sparse::CsrMatrix;
pub use spectral::{scale_spectral_radius, spectral_radius};
