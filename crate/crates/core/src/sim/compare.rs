//! Paired-seed comparison of allocation policies.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{run_mission, SimConfig, SimOutcome};
use super::SimError;
use crate::geometry::{GeoPoint, Polygon};
use crate::mission::{Constraints, MissionSpec, MissionType, Objective, OutputKind, Sensor};
use crate::planner::{AllocationPolicy, DroneState};
use crate::rng::derive_stream;
use crate::stats::sign_test_p_value;
use crate::types::{NetworkKind, NetworkProfile};
use crate::ParamError;

/// Minimum number of paired seeds for a policy comparison.
pub const MIN_SEEDS: usize = 10;

/// How to draw a fleet for one seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FleetSpec {
    pub n_drones: u32,
    pub battery_capacity_j: f64,
    /// Initial charge is uniform on `[battery_pct_min, battery_pct_max]`.
    pub battery_pct_min: f64,
    pub battery_pct_max: f64,
    pub start: GeoPoint,
}

impl Default for FleetSpec {
    fn default() -> Self {
        FleetSpec {
            n_drones: 6,
            battery_capacity_j: 300_000.0,
            battery_pct_min: 40.0,
            battery_pct_max: 100.0,
            start: GeoPoint::new(0.0, 0.0),
        }
    }
}

impl FleetSpec {
    pub fn validate(&self) -> Result<(), ParamError> {
        if self.n_drones < 1 {
            return Err(ParamError::out_of_range("n_drones", "at least 1", 0.0));
        }
        if !(self.battery_capacity_j > 0.0 && self.battery_capacity_j.is_finite()) {
            return Err(ParamError::out_of_range(
                "battery_capacity_j",
                "positive and finite",
                self.battery_capacity_j,
            ));
        }
        let (lo, hi) = (self.battery_pct_min, self.battery_pct_max);
        if !(0.0..=100.0).contains(&lo) || !(lo..=100.0).contains(&hi) {
            return Err(ParamError::out_of_range(
                "battery_pct_min",
                "0 <= min <= max <= 100",
                lo,
            ));
        }
        Ok(())
    }

    /// Fleet for `seed`, drawn from its own substream so that every policy
    /// sees the same drones.
    pub fn sample(&self, seed: u64) -> Vec<DroneState> {
        let mut rng = derive_stream(seed, &["fleet".into()]);
        (0..self.n_drones)
            .map(|id| {
                let u: f64 = rng.random();
                let pct = self.battery_pct_min + u * (self.battery_pct_max - self.battery_pct_min);
                DroneState::new(id, self.start, pct, self.battery_capacity_j)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Scenario {
    pub mission: MissionSpec,
    pub fleet: FleetSpec,
    pub network: NetworkProfile,
    pub sim: SimConfig,
}

impl Default for Scenario {
    /// Patrolled road survey of a 300 m square by six drones over 6G,
    /// capped at 30 minutes.
    fn default() -> Self {
        Scenario {
            mission: MissionSpec {
                mission_id: "msn-default".into(),
                mission_type: MissionType::RoadInspection,
                objectives: vec![Objective::FaultDetection],
                sensors: [Sensor::RGB].into_iter().collect(),
                expected_outputs: vec![OutputKind::FaultReport],
                constraints: Constraints {
                    max_duration_min: 30.0,
                    min_battery_reserve_pct: 20.0,
                },
                perimeter: Polygon::rectangle(GeoPoint::new(0.0, 0.0), 300.0, 300.0),
            },
            fleet: FleetSpec::default(),
            network: NetworkKind::SixG.profile(),
            sim: SimConfig {
                patrol: true,
                ..SimConfig::default()
            },
        }
    }
}

impl Scenario {
    pub fn run(&self, policy: AllocationPolicy, seed: u64) -> Result<SimOutcome, SimError> {
        self.fleet.validate()?;
        let drones = self.fleet.sample(seed);
        run_mission(&self.mission, &drones, &self.network, policy, seed, &self.sim)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedRow {
    pub seed: u64,
    pub a_operational_ms: f64,
    pub b_operational_ms: f64,
    pub delta_ms: f64,
    pub a_coverage: f64,
    pub b_coverage: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyComparison {
    pub policy_a: AllocationPolicy,
    pub policy_b: AllocationPolicy,
    pub rows: Vec<PairedRow>,
    pub mean_a_ms: f64,
    pub mean_b_ms: f64,
    /// Mean of `a − b` over seeds.
    pub mean_delta_ms: f64,
    pub wins: u64,
    pub losses: u64,
    pub ties: u64,
    /// One-sided sign-test p-value for "a outlasts b".
    pub sign_test_p: f64,
}

/// Run both policies on every seed and pair the operational times.
pub fn compare(
    scenario: &Scenario,
    seeds: &[u64],
    a: AllocationPolicy,
    b: AllocationPolicy,
) -> Result<PolicyComparison, SimError> {
    let rows: Vec<PairedRow> = seeds
        .par_iter()
        .map(|&seed| {
            let ra = scenario.run(a, seed)?;
            let rb = scenario.run(b, seed)?;
            Ok(PairedRow {
                seed,
                a_operational_ms: ra.operational_time_ms,
                b_operational_ms: rb.operational_time_ms,
                delta_ms: ra.operational_time_ms - rb.operational_time_ms,
                a_coverage: ra.coverage_fraction,
                b_coverage: rb.coverage_fraction,
            })
        })
        .collect::<Result<_, SimError>>()?;
    let n = rows.len().max(1) as f64;
    let mean = |f: fn(&PairedRow) -> f64| rows.iter().map(f).sum::<f64>() / n;
    let wins = rows.iter().filter(|r| r.delta_ms > 0.0).count() as u64;
    let losses = rows.iter().filter(|r| r.delta_ms < 0.0).count() as u64;
    Ok(PolicyComparison {
        policy_a: a,
        policy_b: b,
        mean_a_ms: mean(|r| r.a_operational_ms),
        mean_b_ms: mean(|r| r.b_operational_ms),
        mean_delta_ms: mean(|r| r.delta_ms),
        wins,
        losses,
        ties: rows.len() as u64 - wins - losses,
        sign_test_p: sign_test_p_value(wins, losses),
        rows,
    })
}

/// Energy-aware against static allocation over at least ten paired seeds.
pub fn compare_policies(scenario: &Scenario, seeds: &[u64]) -> Result<PolicyComparison, SimError> {
    if seeds.len() < MIN_SEEDS {
        return Err(SimError::TooFewSeeds {
            min: MIN_SEEDS,
            got: seeds.len(),
        });
    }
    compare(
        scenario,
        seeds,
        AllocationPolicy::EnergyAware,
        AllocationPolicy::Static,
    )
}
