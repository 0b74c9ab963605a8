//! # swarmnet
//!
//! Deterministic simulation and analysis toolkit for drone-swarm
//! infrastructure inspection over 5G and 6G networks.
//!
//! The crate is organised by subsystem:
//!
//! - [`types`], [`geometry`], [`rng`]: shared value types, planar geometry and
//!   the seeded substream contract every stochastic component draws from.
//! - [`netperf`]: closed-form collision-rate and detection-time models and the
//!   Monte Carlo harness that produces the 5G/6G comparison table.
//! - [`mission`]: rule-based request parsing, validation and the structured
//!   mission document.
//! - [`planner`]: energy-aware role assignment, boustrophedon coverage,
//!   energy estimation and charging reroutes.
//! - [`semcomm`]: schema-driven semantic codec over a shared knowledge base
//!   and raw-vs-semantic bandwidth accounting.
//! - [`sim`]: discrete-event mission engine and policy comparison.
//! - [`report`]: template-based inspection reports.
//! - [`cli`]: subcommand implementations behind the `swarmnet` binary.

pub mod cli;
pub mod document;
pub mod geometry;
pub mod mission;
pub mod netperf;
pub mod planner;
pub mod report;
pub mod rng;
pub mod semcomm;
pub mod sim;
pub mod stats;
pub mod types;

pub use geometry::{GeoPoint, Polygon};
pub use rng::{derive_stream, sample_exponential, sample_poisson, Label, RngStream};
pub use types::{NetworkKind, NetworkProfile, SwarmConfig};

/// Version string embedded in manifests and report provenance blocks.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Errors raised when a numeric parameter falls outside its domain.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParamError {
    #[error("parameter `{name}` must be {requirement}, got {value}")]
    OutOfRange {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
}

impl ParamError {
    pub(crate) fn out_of_range(name: &'static str, requirement: &'static str, value: f64) -> Self {
        ParamError::OutOfRange {
            name,
            requirement,
            value,
        }
    }
}
