//! Network and swarm parameter types shared across the crate.
//!
//! All times are milliseconds and all rates are plain fractions unless a
//! field name says otherwise.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ParamError;

/// Cellular network generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NetworkKind {
    #[serde(rename = "5g")]
    FiveG,
    #[serde(rename = "6g")]
    SixG,
}

impl NetworkKind {
    pub const ALL: [NetworkKind; 2] = [NetworkKind::FiveG, NetworkKind::SixG];

    pub fn label(self) -> &'static str {
        match self {
            NetworkKind::FiveG => "5G",
            NetworkKind::SixG => "6G",
        }
    }

    /// Built-in profile for this generation.
    pub fn profile(self) -> NetworkProfile {
        match self {
            NetworkKind::FiveG => NetworkProfile::five_g(),
            NetworkKind::SixG => NetworkProfile::six_g(),
        }
    }
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for NetworkKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "5g" | "fiveg" => Ok(NetworkKind::FiveG),
            "6g" | "sixg" => Ok(NetworkKind::SixG),
            other => Err(format!("unknown network `{other}`, expected 5g or 6g")),
        }
    }
}

/// Latency, reliability and base collision rate of one network generation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NetworkProfile {
    pub name: NetworkKind,
    /// Base one-way latency `L_b` in milliseconds.
    pub base_latency_ms: f64,
    /// Delivery probability per transmission attempt, strictly inside (0, 1).
    pub reliability: f64,
    /// Base collision rate, a fraction in [0, 1).
    pub base_collision_rate: f64,
}

impl NetworkProfile {
    /// 5G: 1 ms latency, 99.999 % reliability, base collision rate 0.02.
    pub const fn five_g() -> Self {
        NetworkProfile {
            name: NetworkKind::FiveG,
            base_latency_ms: 1.0,
            reliability: 0.99999,
            base_collision_rate: 0.02,
        }
    }

    /// 6G: 0.5 ms latency, 99.999999 % reliability, base collision rate 0.001.
    pub const fn six_g() -> Self {
        NetworkProfile {
            name: NetworkKind::SixG,
            base_latency_ms: 0.5,
            reliability: 0.99999999,
            base_collision_rate: 0.001,
        }
    }

    pub fn new(
        name: NetworkKind,
        base_latency_ms: f64,
        reliability: f64,
        base_collision_rate: f64,
    ) -> Result<Self, ParamError> {
        let profile = NetworkProfile {
            name,
            base_latency_ms,
            reliability,
            base_collision_rate,
        };
        profile.validate()?;
        Ok(profile)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.base_latency_ms > 0.0 && self.base_latency_ms.is_finite()) {
            return Err(ParamError::out_of_range(
                "base_latency_ms",
                "positive and finite",
                self.base_latency_ms,
            ));
        }
        if !(self.reliability > 0.0 && self.reliability < 1.0) {
            return Err(ParamError::out_of_range(
                "reliability",
                "strictly between 0 and 1",
                self.reliability,
            ));
        }
        if !(self.base_collision_rate >= 0.0 && self.base_collision_rate < 1.0) {
            return Err(ParamError::out_of_range(
                "base_collision_rate",
                "in [0, 1)",
                self.base_collision_rate,
            ));
        }
        Ok(())
    }

    /// Probability that a single transmission attempt is lost.
    pub fn loss_probability(&self) -> f64 {
        1.0 - self.reliability
    }
}

/// Swarm sizing parameters for the closed-form network model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    /// Number of drones `n`.
    pub n_drones: u32,
    /// Reference swarm size `n_0` that normalises the collision term.
    pub reference_size: u32,
    /// Maximum supported swarm size `n_max` for the congestion factor.
    pub max_swarm: u32,
    /// Mean number of faults per simulation period.
    pub fault_rate_mean: f64,
    /// Permit `n_drones > max_swarm`; the congestion law is then extrapolated.
    #[serde(default)]
    pub allow_extrapolation: bool,
}

impl SwarmConfig {
    pub const DEFAULT_REFERENCE_SIZE: u32 = 10;
    pub const DEFAULT_MAX_SWARM: u32 = 50;
    pub const DEFAULT_FAULT_RATE_MEAN: f64 = 5.0;

    /// Swarm of `n_drones` with `n_0 = 10`, `n_max = 50` and `μ = 5`.
    pub fn with_drones(n_drones: u32) -> Self {
        SwarmConfig {
            n_drones,
            reference_size: Self::DEFAULT_REFERENCE_SIZE,
            max_swarm: Self::DEFAULT_MAX_SWARM,
            fault_rate_mean: Self::DEFAULT_FAULT_RATE_MEAN,
            allow_extrapolation: false,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n_drones < 1 {
            return Err(ParamError::out_of_range("n_drones", "at least 1", 0.0));
        }
        if self.reference_size < 1 {
            return Err(ParamError::out_of_range("reference_size", "at least 1", 0.0));
        }
        if self.max_swarm < 1 {
            return Err(ParamError::out_of_range("max_swarm", "at least 1", 0.0));
        }
        if self.n_drones > self.max_swarm && !self.allow_extrapolation {
            return Err(ParamError::out_of_range(
                "n_drones",
                "at most max_swarm unless allow_extrapolation is set",
                f64::from(self.n_drones),
            ));
        }
        if !(self.fault_rate_mean > 0.0 && self.fault_rate_mean.is_finite()) {
            return Err(ParamError::out_of_range(
                "fault_rate_mean",
                "positive and finite",
                self.fault_rate_mean,
            ));
        }
        Ok(())
    }

    /// The `(1 + n / n_max)` multiplier applied to base latency.
    pub fn congestion_factor(&self) -> f64 {
        1.0 + f64::from(self.n_drones) / f64::from(self.max_swarm)
    }
}

impl Default for SwarmConfig {
    fn default() -> Self {
        SwarmConfig::with_drones(10)
    }
}
