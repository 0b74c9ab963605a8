//! Closed-form swarm network model and its Monte Carlo harness.
//!
//! Two collision-rate readings are supported:
//!
//! - [`CollisionMode::LiteralFormula`] evaluates
//!   `P_c(n) = α · (n / n_0) · (1 − R)` as a probability.
//! - [`CollisionMode::TableCalibrated`] drops the `(1 − R)` factor and reports
//!   `100 · α · n / n_0` percent. Only this reading reproduces the reference
//!   5G/6G comparison table; the literal form lands five to seven orders of
//!   magnitude lower.
//!
//! Detection time is `T_d = L_b · (1 + n / n_max) + ε` with `ε ~ Exp(mean L_b)`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::labels;
use crate::rng::{derive_stream, sample_exponential, sample_poisson, sample_standard_normal};
use crate::stats::{Metric, TrialStats};
use crate::types::{NetworkKind, NetworkProfile, SwarmConfig};
use crate::ParamError;

/// Collision-rate noise coefficient fitted to the reference standard
/// deviations: `σ = c · sqrt(CR%)`.
pub const DEFAULT_CR_NOISE_COEFF: f64 = 0.04;

/// Iterations per configuration in the reference protocol.
pub const TABLE1_ITERATIONS: usize = 100;

/// Swarm sizes in the reference comparison.
pub const TABLE1_SWARM_SIZES: [u32; 5] = [10, 20, 30, 40, 50];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum CollisionMode {
    #[default]
    TableCalibrated,
    LiteralFormula,
}

/// Result of [`collision_prob`]. `saturated` is set when the calibrated
/// percentage had to be clamped at 100.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionEstimate {
    /// Fraction for `LiteralFormula`, percent for `TableCalibrated`.
    pub value: f64,
    pub saturated: bool,
}

pub fn collision_prob(
    profile: &NetworkProfile,
    swarm: &SwarmConfig,
    mode: CollisionMode,
) -> Result<CollisionEstimate, ParamError> {
    profile.validate()?;
    if swarm.n_drones < 1 || swarm.reference_size < 1 {
        return Err(ParamError::out_of_range(
            "n_drones/reference_size",
            "at least 1",
            f64::from(swarm.n_drones.min(swarm.reference_size)),
        ));
    }
    let scale = f64::from(swarm.n_drones) / f64::from(swarm.reference_size);
    let raw = profile.base_collision_rate * scale;
    Ok(match mode {
        CollisionMode::LiteralFormula => {
            let p = raw * profile.loss_probability();
            CollisionEstimate {
                value: p.min(1.0),
                saturated: p > 1.0,
            }
        }
        CollisionMode::TableCalibrated => {
            if raw > 1.0 {
                log::warn!(
                    "calibrated collision rate {:.3}% saturates; clamped to 100%",
                    raw * 100.0
                );
            }
            CollisionEstimate {
                value: 100.0 * raw.min(1.0),
                saturated: raw > 1.0,
            }
        }
    })
}

/// Deterministic part of the detection time, `L_b · (1 + n / n_max)`.
pub fn detection_floor_ms(profile: &NetworkProfile, swarm: &SwarmConfig) -> f64 {
    profile.base_latency_ms * swarm.congestion_factor()
}

/// Closed-form `E[T_d] = L_b · (1 + n / n_max) + L_b`.
pub fn expected_detection_time_ms(profile: &NetworkProfile, swarm: &SwarmConfig) -> f64 {
    detection_floor_ms(profile, swarm) + profile.base_latency_ms
}

pub fn sample_detection_time<R: Rng + ?Sized>(
    profile: &NetworkProfile,
    swarm: &SwarmConfig,
    rng: &mut R,
) -> Result<f64, ParamError> {
    if swarm.max_swarm < 1 {
        return Err(ParamError::out_of_range("max_swarm", "at least 1", 0.0));
    }
    let eps = sample_exponential(rng, profile.base_latency_ms)?;
    Ok(detection_floor_ms(profile, swarm) + eps)
}

/// One Monte Carlo configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerfScenario {
    pub profile: NetworkProfile,
    pub swarm: SwarmConfig,
    pub iterations: usize,
    pub cr_noise_coeff: f64,
    pub mode: CollisionMode,
}

impl PerfScenario {
    /// Published protocol: calibrated mode, 100 iterations, `c = 0.04`.
    pub fn table1(network: NetworkKind, n_drones: u32) -> Self {
        PerfScenario {
            profile: network.profile(),
            swarm: SwarmConfig::with_drones(n_drones),
            iterations: TABLE1_ITERATIONS,
            cr_noise_coeff: DEFAULT_CR_NOISE_COEFF,
            mode: CollisionMode::TableCalibrated,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        self.profile.validate()?;
        self.swarm.validate()?;
        if self.iterations < 1 {
            return Err(ParamError::out_of_range("iterations", "at least 1", 0.0));
        }
        if !(self.cr_noise_coeff >= 0.0 && self.cr_noise_coeff.is_finite()) {
            return Err(ParamError::out_of_range(
                "cr_noise_coeff",
                "non-negative and finite",
                self.cr_noise_coeff,
            ));
        }
        Ok(())
    }
}

/// Samples produced by one Monte Carlo iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationSample {
    /// Collision rate in percent (calibrated) or the literal probability
    /// scaled to percent.
    pub cr_sample: f64,
    /// Mean detection time over this iteration's faults; `None` without faults.
    pub dt_mean: Option<f64>,
    pub n_faults: u64,
}

pub fn run_iteration<R: Rng + ?Sized>(
    scenario: &PerfScenario,
    rng: &mut R,
) -> Result<IterationSample, ParamError> {
    let n_faults = sample_poisson(rng, scenario.swarm.fault_rate_mean)?;
    let dt_mean = if n_faults == 0 {
        None
    } else {
        let mut total = 0.0;
        for _ in 0..n_faults {
            total += sample_detection_time(&scenario.profile, &scenario.swarm, rng)?;
        }
        Some(total / n_faults as f64)
    };
    let center = match scenario.mode {
        CollisionMode::TableCalibrated => {
            collision_prob(&scenario.profile, &scenario.swarm, scenario.mode)?.value
        }
        CollisionMode::LiteralFormula => {
            100.0 * collision_prob(&scenario.profile, &scenario.swarm, scenario.mode)?.value
        }
    };
    let z = sample_standard_normal(rng);
    let cr_sample = if scenario.cr_noise_coeff == 0.0 {
        center
    } else {
        (center + scenario.cr_noise_coeff * center.sqrt() * z).max(0.0)
    };
    Ok(IterationSample {
        cr_sample,
        dt_mean,
        n_faults,
    })
}

/// Aggregates for one configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioStats {
    pub collision: TrialStats,
    /// Absent when fewer than two iterations saw a fault.
    pub detection: Option<TrialStats>,
    pub iterations_with_faults: usize,
}

/// Run every iteration of `scenario` under `master_seed`. Iteration `i` draws
/// from `derive_stream(master_seed, ["iter", i])`, so results do not depend on
/// thread scheduling.
pub fn run_scenario(scenario: &PerfScenario, master_seed: u64) -> Result<ScenarioStats, ParamError> {
    scenario.validate()?;
    if scenario.iterations < 2 {
        return Err(ParamError::out_of_range(
            "iterations",
            "at least 2 for sample statistics",
            scenario.iterations as f64,
        ));
    }
    let samples: Vec<IterationSample> = (0..scenario.iterations)
        .into_par_iter()
        .map(|i| {
            let mut stream = derive_stream(master_seed, &labels!["iter", i]);
            run_iteration(scenario, &mut stream)
        })
        .collect::<Result<_, _>>()?;

    let cr: Vec<f64> = samples.iter().map(|s| s.cr_sample).collect();
    let dt: Vec<f64> = samples.iter().filter_map(|s| s.dt_mean).collect();
    let collision = TrialStats::from_samples(Metric::CollisionRatePct, &cr)
        .expect("at least two iterations");
    Ok(ScenarioStats {
        collision,
        iterations_with_faults: dt.len(),
        detection: TrialStats::from_samples(Metric::DetectionTimeMs, &dt),
    })
}

/// One row of the 5G/6G comparison table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub drones: u32,
    pub network: NetworkKind,
    pub collision: TrialStats,
    pub detection: Option<TrialStats>,
}

/// All ten configurations (`n ∈ {10..50}` × {5G, 6G}) in table order.
pub fn table1_report(master_seed: u64, iterations: usize) -> Result<Vec<Table1Row>, ParamError> {
    let mut rows = Vec::with_capacity(TABLE1_SWARM_SIZES.len() * 2);
    for &n in &TABLE1_SWARM_SIZES {
        for network in NetworkKind::ALL {
            let scenario = PerfScenario {
                iterations,
                ..PerfScenario::table1(network, n)
            };
            let stats = run_scenario(&scenario, master_seed)?;
            rows.push(Table1Row {
                drones: n,
                network,
                collision: stats.collision,
                detection: stats.detection,
            });
        }
    }
    Ok(rows)
}

/// Published means, `(drones, network, CR %, DT ms)`.
pub const PUBLISHED_TABLE1_MEANS: [(u32, NetworkKind, f64, f64); 10] = [
    (10, NetworkKind::FiveG, 1.995, 2.12),
    (10, NetworkKind::SixG, 0.101, 1.10),
    (20, NetworkKind::FiveG, 4.003, 2.34),
    (20, NetworkKind::SixG, 0.200, 1.21),
    (30, NetworkKind::FiveG, 6.013, 2.70),
    (30, NetworkKind::SixG, 0.303, 1.26),
    (40, NetworkKind::FiveG, 7.999, 2.77),
    (40, NetworkKind::SixG, 0.398, 1.39),
    (50, NetworkKind::FiveG, 10.011, 2.96),
    (50, NetworkKind::SixG, 0.503, 1.54),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::testing::ZeroSource;

    fn swarm(n: u32) -> SwarmConfig {
        SwarmConfig::with_drones(n)
    }

    #[test]
    fn calibrated_collision_centres() {
        let g5 = collision_prob(&NetworkProfile::five_g(), &swarm(10), CollisionMode::TableCalibrated)
            .unwrap();
        assert!((g5.value - 2.0).abs() < 1e-12);
        let g6 = collision_prob(&NetworkProfile::six_g(), &swarm(50), CollisionMode::TableCalibrated)
            .unwrap();
        assert!((g6.value - 0.5).abs() < 1e-12);
        assert!(!g6.saturated);
    }

    #[test]
    fn literal_collision_probability() {
        let p = collision_prob(&NetworkProfile::five_g(), &swarm(10), CollisionMode::LiteralFormula)
            .unwrap();
        // 0.02 · 1 · (1 − 0.99999)
        let expected = 0.02 * (1.0 - 0.99999);
        assert_eq!(p.value, expected);
        assert!((p.value - 2e-7).abs() < 1e-18);
    }

    #[test]
    fn calibrated_saturates_at_hundred_percent() {
        let profile = NetworkProfile::new(NetworkKind::FiveG, 1.0, 0.9, 0.5).unwrap();
        let mut s = swarm(50);
        s.reference_size = 10;
        let est = collision_prob(&profile, &s, CollisionMode::TableCalibrated).unwrap();
        assert_eq!(est.value, 100.0);
        assert!(est.saturated);
    }

    #[test]
    fn detection_time_with_zero_noise_is_the_floor() {
        let t = sample_detection_time(&NetworkProfile::six_g(), &swarm(50), &mut ZeroSource).unwrap();
        assert_eq!(t, 1.0);
        assert_eq!(expected_detection_time_ms(&NetworkProfile::six_g(), &swarm(50)), 1.5);
        assert!((expected_detection_time_ms(&NetworkProfile::five_g(), &swarm(10)) - 2.2).abs() < 1e-12);
    }

    #[test]
    fn zero_noise_iteration_returns_centre() {
        let scenario = PerfScenario {
            cr_noise_coeff: 0.0,
            ..PerfScenario::table1(NetworkKind::FiveG, 30)
        };
        let mut s = derive_stream(3, &labels!["x"]);
        let it = run_iteration(&scenario, &mut s).unwrap();
        assert!((it.cr_sample - 6.0).abs() < 1e-12);
    }

    #[test]
    fn fault_free_fraction_matches_poisson_zero_mass() {
        let scenario = PerfScenario::table1(NetworkKind::SixG, 20);
        let n = 200_000u64;
        let empty = (0..n)
            .filter(|&i| {
                let mut s = derive_stream(77, &labels!["pz", i]);
                run_iteration(&scenario, &mut s).unwrap().dt_mean.is_none()
            })
            .count();
        let p = (-5.0f64).exp();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        assert!(((empty as f64 / n as f64) - p).abs() < 4.0 * se);
    }

    #[test]
    fn scenario_is_reproducible() {
        let scenario = PerfScenario::table1(NetworkKind::FiveG, 20);
        let a = run_scenario(&scenario, 1234).unwrap();
        let b = run_scenario(&scenario, 1234).unwrap();
        assert_eq!(a, b);
        let c = run_scenario(&scenario, 1235).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn scenario_needs_two_iterations() {
        let scenario = PerfScenario {
            iterations: 1,
            ..PerfScenario::table1(NetworkKind::FiveG, 20)
        };
        assert!(run_scenario(&scenario, 1).is_err());
    }

    #[test]
    fn pathological_fault_rate_leaves_detection_absent() {
        let mut scenario = PerfScenario::table1(NetworkKind::FiveG, 20);
        scenario.swarm.fault_rate_mean = 1e-9;
        scenario.iterations = 50;
        let stats = run_scenario(&scenario, 9).unwrap();
        assert!(stats.detection.is_none());
        assert_eq!(stats.iterations_with_faults, 0);
    }

    #[test]
    fn table1_has_ten_rows_in_order() {
        let rows = table1_report(42, 20).unwrap();
        assert_eq!(rows.len(), 10);
        for (row, (n, net, _, _)) in rows.iter().zip(PUBLISHED_TABLE1_MEANS.iter()) {
            assert_eq!(row.drones, *n);
            assert_eq!(row.network, *net);
        }
    }
}
