//! Energy-aware role assignment, coverage planning and charging reroutes.

mod coverage;
mod energy;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{read_document, write_document, DocumentError};
use crate::geometry::{GeoPoint, PolygonError};
use crate::mission::{validate, MissionSpec, MissionType, Objective, Sensor, Violation};
use crate::sim::{InferenceTable, TaskKind};
use crate::ParamError;

pub use coverage::{
    distance_to_sweeps, path_length, plan_coverage, CoveragePlan, Sweep, SweepLine,
};
pub use energy::{
    energy_breakdown, estimate_energy, EnergyBreakdown, EnergyModel, Workload,
    COMPUTE_POWER_RANGE_W,
};

pub const PLAN_SCHEMA: &str = "swarmnet.plan";

/// Battery level below which a drone is moved to low-power duty.
pub const LOW_BATTERY_THRESHOLD_PCT: f64 = 30.0;

/// Distance under which a drone counts as already at a station.
pub const AT_STATION_TOLERANCE_M: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Role {
    Collector,
    Computer,
    Relay,
    Charging,
    Idle,
}

impl Role {
    /// Roles that fly sweeps and capture frames.
    pub fn sweeps(self) -> bool {
        matches!(self, Role::Collector | Role::Computer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AllocationPolicy {
    EnergyAware,
    Static,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroneState {
    pub drone_id: u32,
    pub position: GeoPoint,
    pub battery_pct: f64,
    pub battery_capacity_j: f64,
    pub role: Role,
    #[serde(default)]
    pub waypoints: Vec<GeoPoint>,
    #[serde(default)]
    pub charging_target: Option<GeoPoint>,
}

impl DroneState {
    pub fn new(drone_id: u32, position: GeoPoint, battery_pct: f64, battery_capacity_j: f64) -> Self {
        DroneState {
            drone_id,
            position,
            battery_pct,
            battery_capacity_j,
            role: Role::Idle,
            waypoints: Vec::new(),
            charging_target: None,
        }
    }

    pub fn available_energy_j(&self) -> f64 {
        self.battery_pct / 100.0 * self.battery_capacity_j
    }

    pub fn validate(&self) -> Result<(), PlannerError> {
        if !(0.0..=100.0).contains(&self.battery_pct) {
            return Err(PlannerError::Param(ParamError::out_of_range(
                "battery_pct",
                "in [0, 100]",
                self.battery_pct,
            )));
        }
        if !(self.battery_capacity_j > 0.0 && self.battery_capacity_j.is_finite()) {
            return Err(PlannerError::Param(ParamError::out_of_range(
                "battery_capacity_j",
                "positive and finite",
                self.battery_capacity_j,
            )));
        }
        if self.role == Role::Charging && self.charging_target.is_none() {
            return Err(PlannerError::ChargingWithoutTarget(self.drone_id));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlannerError {
    #[error("invalid perimeter: {0}")]
    InvalidPerimeter(PolygonError),
    #[error("at least one collector is required")]
    NoCollectors,
    #[error("sweep spacing must be positive, got {0}")]
    InvalidSpacing(f64),
    #[error("no charging station is configured")]
    NoChargingStation,
    #[error("the fleet is empty")]
    EmptyFleet,
    #[error("drone {0} is charging without a station target")]
    ChargingWithoutTarget(u32),
    #[error("mission is invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidMission(Vec<Violation>),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

/// Non-fatal conditions attached to a plan or reroute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum PlanWarning {
    /// Every drone was below the low-battery threshold; the plan only relays.
    DegradedMission,
    EnergyShortfall {
        drone_id: u32,
        required_j: f64,
        available_j: f64,
    },
    SurplusCollectors { count: usize },
    /// Sweep work no drone could afford; kept in `TaskPlan::unassigned`.
    PartialCoverage { unassigned_m: f64 },
    NoChargingStation { drone_id: u32 },
}

/// Planner tunables that sit outside the mission document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PlannerConfig {
    pub energy: EnergyModel,
    pub spacing_m: f64,
    pub charging_stations: Vec<GeoPoint>,
    pub base_station: GeoPoint,
    pub cruise_speed_mps: f64,
    pub capture_interval_ms: f64,
    pub message_bytes: u32,
    pub low_battery_pct: f64,
    /// Low-battery drones at or above this level may relay instead of charging.
    pub relay_floor_pct: f64,
    pub max_relays: usize,
    pub inference: InferenceTable,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        PlannerConfig {
            energy: EnergyModel::default(),
            spacing_m: 20.0,
            charging_stations: vec![GeoPoint::new(0.0, 0.0)],
            base_station: GeoPoint::new(0.0, 0.0),
            cruise_speed_mps: 10.0,
            capture_interval_ms: 1000.0,
            message_bytes: 64,
            low_battery_pct: LOW_BATTERY_THRESHOLD_PCT,
            relay_floor_pct: 15.0,
            max_relays: 1,
            inference: InferenceTable::default(),
        }
    }
}

impl PlannerConfig {
    pub fn frames_per_m(&self) -> f64 {
        1.0 / (self.cruise_speed_mps * self.capture_interval_ms / 1000.0)
    }

    /// Joules per metre of sweep for `tasks`: cruise plus per-frame compute
    /// and transmission.
    pub fn sweep_cost_per_m(&self, tasks: &[TaskKind]) -> f64 {
        let compute_s: f64 = tasks
            .iter()
            .filter_map(|t| self.inference.delay_ms(*t).ok())
            .sum::<f64>()
            / 1000.0;
        let per_frame = self.energy.compute_power_w * compute_s
            + self.energy.tx_j_per_bit * f64::from(self.message_bytes) * 8.0;
        self.energy.cruise_j_per_m + per_frame * self.frames_per_m()
    }
}

/// Onboard tasks run per captured frame for a role on a mission.
pub fn tasks_for(role: Role, spec: &MissionSpec) -> Vec<TaskKind> {
    let light = match spec.mission_type {
        MissionType::RoadInspection => TaskKind::RoadQualityClassify,
        _ => TaskKind::SceneClassify,
    };
    let heavy = match spec.mission_type {
        MissionType::RoadInspection => TaskKind::PotholeDetect,
        _ if spec.sensors.contains(&Sensor::Thermal) => TaskKind::ThermalScan,
        _ if spec.sensors.contains(&Sensor::LiDAR) => TaskKind::LidarMap,
        _ => TaskKind::SceneClassify,
    };
    match role {
        Role::Collector => vec![light],
        Role::Computer if heavy == light => vec![light],
        Role::Computer => vec![light, heavy],
        Role::Relay | Role::Charging | Role::Idle => Vec::new(),
    }
}

pub(crate) fn needs_compute(spec: &MissionSpec) -> bool {
    spec.sensors.contains(&Sensor::Thermal)
        || spec.sensors.contains(&Sensor::LiDAR)
        || spec
            .objectives
            .iter()
            .any(|o| matches!(o, Objective::FaultDetection | Objective::SeverityAssessment))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Assignment {
    pub drone_id: u32,
    pub role: Role,
    pub waypoints: Vec<GeoPoint>,
    pub tasks: Vec<TaskKind>,
    pub estimated_energy_j: f64,
    #[serde(default)]
    pub charging_target: Option<GeoPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskPlan {
    pub policy: AllocationPolicy,
    pub degraded: bool,
    pub charging_stations: Vec<GeoPoint>,
    pub assignments: Vec<Assignment>,
    /// Sweep remainders that no drone could afford at planning time.
    #[serde(default)]
    pub unassigned: Vec<Vec<GeoPoint>>,
    #[serde(default)]
    pub warnings: Vec<PlanWarning>,
}

impl TaskPlan {
    pub fn assignment(&self, drone_id: u32) -> Option<&Assignment> {
        self.assignments.iter().find(|a| a.drone_id == drone_id)
    }

    pub fn to_document(&self) -> Result<String, PlannerError> {
        Ok(write_document(PLAN_SCHEMA, self)?)
    }

    pub fn from_document(text: &str) -> Result<TaskPlan, PlannerError> {
        Ok(read_document(PLAN_SCHEMA, text)?)
    }
}

/// Split a polyline after `max_len` metres of travel.
fn split_path(waypoints: &[GeoPoint], max_len: f64) -> (Vec<GeoPoint>, Vec<GeoPoint>) {
    if waypoints.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut head = vec![waypoints[0]];
    let mut used = 0.0;
    for i in 1..waypoints.len() {
        let seg = waypoints[i - 1].distance(&waypoints[i]);
        if used + seg <= max_len {
            used += seg;
            head.push(waypoints[i]);
            continue;
        }
        let t = ((max_len - used) / seg).clamp(0.0, 1.0);
        let cut = waypoints[i - 1].lerp(&waypoints[i], t);
        if t > 0.0 {
            head.push(cut);
        }
        let mut tail = vec![cut];
        tail.extend_from_slice(&waypoints[i..]);
        if head.len() < 2 {
            head.clear();
        }
        return (head, tail);
    }
    (head, Vec::new())
}

/// Outcome of [`reroute_to_charging`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reroute {
    pub station: GeoPoint,
    /// Empty when the drone is already at the station.
    pub waypoints: Vec<GeoPoint>,
    pub role: Role,
    pub distance_m: f64,
    pub energy_shortfall: bool,
}

/// Send `drone` to the nearest station. If even the nearest is out of reach
/// on the remaining charge it is still chosen, with `energy_shortfall` set.
pub fn reroute_to_charging(
    drone: &DroneState,
    stations: &[GeoPoint],
    model: &EnergyModel,
) -> Result<Reroute, PlannerError> {
    let (station, distance_m) = stations
        .iter()
        .map(|s| (*s, drone.position.distance(s)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(PlannerError::NoChargingStation)?;
    if distance_m <= AT_STATION_TOLERANCE_M {
        return Ok(Reroute {
            station,
            waypoints: Vec::new(),
            role: Role::Charging,
            distance_m,
            energy_shortfall: false,
        });
    }
    let needed = model.cruise_j_per_m * distance_m;
    Ok(Reroute {
        station,
        waypoints: vec![station],
        role: Role::Charging,
        distance_m,
        energy_shortfall: needed > drone.available_energy_j(),
    })
}

fn relay_point(spec: &MissionSpec, config: &PlannerConfig) -> GeoPoint {
    spec.perimeter.centroid().lerp(&config.base_station, 0.5)
}

/// Assign roles, sweeps and energy budgets to every drone.
///
/// `EnergyAware`: drones strictly below the low-battery threshold relay or
/// charge; the rest are ranked by available energy, the top third become
/// `Computer` (when the mission needs onboard compute) and the others
/// `Collector`. Sweep work beyond a drone's budget (available energy minus
/// the mission reserve) is left in `unassigned`.
///
/// `Static`: roles cycle Collector, Computer, Relay by fleet index and
/// battery is ignored; over-budget drones are only flagged.
pub fn assign_roles(
    drones: &[DroneState],
    spec: &MissionSpec,
    policy: AllocationPolicy,
    config: &PlannerConfig,
) -> Result<TaskPlan, PlannerError> {
    if drones.is_empty() {
        return Err(PlannerError::EmptyFleet);
    }
    let violations = validate(spec);
    if !violations.is_empty() {
        return Err(PlannerError::InvalidMission(violations));
    }
    config.energy.validate()?;
    for d in drones {
        d.validate()?;
    }

    let mut roles: Vec<(usize, Role)> = Vec::with_capacity(drones.len());
    let mut warnings = Vec::new();
    let mut degraded = false;
    match policy {
        AllocationPolicy::Static => {
            const CYCLE: [Role; 3] = [Role::Collector, Role::Computer, Role::Relay];
            roles.extend((0..drones.len()).map(|i| (i, CYCLE[i % CYCLE.len()])));
        }
        AllocationPolicy::EnergyAware => {
            let (mut healthy, mut low): (Vec<usize>, Vec<usize>) = (0..drones.len())
                .partition(|&i| drones[i].battery_pct >= config.low_battery_pct);
            let by_energy = |a: &usize, b: &usize| {
                drones[*b]
                    .available_energy_j()
                    .total_cmp(&drones[*a].available_energy_j())
                    .then(drones[*a].drone_id.cmp(&drones[*b].drone_id))
            };
            healthy.sort_by(by_energy);
            low.sort_by(by_energy);
            if healthy.is_empty() {
                degraded = true;
                warnings.push(PlanWarning::DegradedMission);
                roles.extend(low.iter().map(|&i| (i, Role::Relay)));
            } else {
                let n_comp = if needs_compute(spec) {
                    healthy.len().div_ceil(3)
                } else {
                    0
                };
                for (rank, &i) in healthy.iter().enumerate() {
                    let role = if rank < n_comp {
                        Role::Computer
                    } else {
                        Role::Collector
                    };
                    roles.push((i, role));
                }
                let mut relays = 0;
                for &i in &low {
                    let can_relay = drones[i].battery_pct >= config.relay_floor_pct
                        && relays < config.max_relays;
                    if can_relay || config.charging_stations.is_empty() {
                        if !can_relay {
                            warnings.push(PlanWarning::NoChargingStation {
                                drone_id: drones[i].drone_id,
                            });
                        }
                        relays += 1;
                        roles.push((i, Role::Relay));
                    } else {
                        roles.push((i, Role::Charging));
                    }
                }
            }
        }
    }

    let sweepers: Vec<(usize, Role)> = roles.iter().copied().filter(|(_, r)| r.sweeps()).collect();
    let coverage = if sweepers.is_empty() {
        None
    } else {
        Some(plan_coverage(&spec.perimeter, sweepers.len(), config.spacing_m)?)
    };
    if let Some(c) = &coverage {
        if !c.surplus_collectors.is_empty() {
            warnings.push(PlanWarning::SurplusCollectors {
                count: c.surplus_collectors.len(),
            });
        }
    }

    let duration_s = spec.constraints.max_duration_min * 60.0;
    let reserve_frac = spec.constraints.min_battery_reserve_pct / 100.0;
    let relay_at = relay_point(spec, config);
    let mut unassigned = Vec::new();
    let mut assignments = Vec::with_capacity(drones.len());
    let mut sweep_iter = coverage.iter().flat_map(|c| c.sweeps.iter());

    for (i, role) in roles {
        let d = &drones[i];
        let budget = (d.available_energy_j() - reserve_frac * d.battery_capacity_j).max(0.0);
        let tasks = tasks_for(role, spec);
        let mut charging_target = None;
        let (waypoints, estimate) = match role {
            Role::Collector | Role::Computer => {
                let sweep = sweep_iter.next().cloned().unwrap_or_default();
                if sweep.is_empty() {
                    (Vec::new(), 0.0)
                } else {
                    let transit = d.position.distance(&sweep.waypoints[0]);
                    let transit_j = config.energy.cruise_j_per_m * transit;
                    let per_m = config.sweep_cost_per_m(&tasks);
                    let full_j = transit_j + per_m * sweep.path_length();
                    if policy == AllocationPolicy::EnergyAware && full_j > budget {
                        let affordable_m = ((budget - transit_j) / per_m).max(0.0);
                        let (head, tail) = split_path(&sweep.waypoints, affordable_m);
                        let est = if head.is_empty() {
                            0.0
                        } else {
                            transit_j + per_m * path_length(&head)
                        };
                        if !tail.is_empty() {
                            unassigned.push(tail);
                        }
                        (head, est)
                    } else {
                        if full_j > budget {
                            warnings.push(PlanWarning::EnergyShortfall {
                                drone_id: d.drone_id,
                                required_j: full_j,
                                available_j: budget,
                            });
                        }
                        (sweep.waypoints, full_j)
                    }
                }
            }
            Role::Relay => {
                let transit_j = config.energy.cruise_j_per_m * d.position.distance(&relay_at);
                let hover_j = config.energy.hover_w * duration_s;
                let full = transit_j + hover_j;
                let est = if policy == AllocationPolicy::EnergyAware {
                    full.min(budget)
                } else {
                    if full > budget {
                        warnings.push(PlanWarning::EnergyShortfall {
                            drone_id: d.drone_id,
                            required_j: full,
                            available_j: budget,
                        });
                    }
                    full
                };
                (vec![relay_at], est)
            }
            Role::Charging => {
                let r = reroute_to_charging(d, &config.charging_stations, &config.energy)?;
                if r.energy_shortfall {
                    warnings.push(PlanWarning::EnergyShortfall {
                        drone_id: d.drone_id,
                        required_j: config.energy.cruise_j_per_m * r.distance_m,
                        available_j: d.available_energy_j(),
                    });
                }
                charging_target = Some(r.station);
                let est = (config.energy.cruise_j_per_m * r.distance_m).min(d.available_energy_j());
                (r.waypoints, est)
            }
            Role::Idle => (Vec::new(), 0.0),
        };
        assignments.push(Assignment {
            drone_id: d.drone_id,
            role,
            waypoints,
            tasks,
            estimated_energy_j: estimate,
            charging_target,
        });
    }
    assignments.sort_by_key(|a| a.drone_id);

    if !unassigned.is_empty() {
        warnings.push(PlanWarning::PartialCoverage {
            unassigned_m: unassigned.iter().map(|p| path_length(p)).sum(),
        });
    }

    Ok(TaskPlan {
        policy,
        degraded,
        charging_stations: config.charging_stations.clone(),
        assignments,
        unassigned,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mission::tests::sample_spec;

    fn drone(id: u32, pct: f64) -> DroneState {
        DroneState::new(id, GeoPoint::new(0.0, 0.0), pct, 300_000.0)
    }

    #[test]
    fn low_battery_drone_is_demoted() {
        let fleet = vec![drone(0, 25.0), drone(1, 90.0), drone(2, 80.0)];
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::EnergyAware, &PlannerConfig::default())
            .unwrap();
        let role = plan.assignment(0).unwrap().role;
        assert!(matches!(role, Role::Relay | Role::Charging), "{role:?}");
        assert!(plan.assignment(0).unwrap().tasks.is_empty());
    }

    #[test]
    fn full_battery_drone_takes_compute() {
        let fleet = vec![drone(0, 100.0), drone(1, 60.0), drone(2, 55.0)];
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::EnergyAware, &PlannerConfig::default())
            .unwrap();
        assert_eq!(plan.assignment(0).unwrap().role, Role::Computer);
        assert!(plan
            .assignment(0)
            .unwrap()
            .tasks
            .contains(&TaskKind::PotholeDetect));
    }

    #[test]
    fn threshold_is_strict() {
        let fleet = vec![drone(0, 30.0)];
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::EnergyAware, &PlannerConfig::default())
            .unwrap();
        assert!(plan.assignment(0).unwrap().role.sweeps());
        assert!(!plan.degraded);
    }

    #[test]
    fn all_low_gives_degraded_relay_plan() {
        let fleet = vec![drone(0, 10.0), drone(1, 29.9)];
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::EnergyAware, &PlannerConfig::default())
            .unwrap();
        assert!(plan.degraded);
        assert!(plan.warnings.contains(&PlanWarning::DegradedMission));
        assert!(plan.assignments.iter().all(|a| a.role == Role::Relay));
    }

    #[test]
    fn static_cycles_by_index() {
        let fleet: Vec<_> = (0..5).map(|i| drone(i, if i == 1 { 5.0 } else { 90.0 })).collect();
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::Static, &PlannerConfig::default())
            .unwrap();
        let roles: Vec<Role> = plan.assignments.iter().map(|a| a.role).collect();
        assert_eq!(
            roles,
            vec![Role::Collector, Role::Computer, Role::Relay, Role::Collector, Role::Computer]
        );
        // the 5 % drone keeps its compute role and is flagged
        assert!(plan
            .warnings
            .iter()
            .any(|w| matches!(w, PlanWarning::EnergyShortfall { drone_id: 1, .. })));
    }

    #[test]
    fn energy_aware_budgets_respect_reserve() {
        let mut fleet: Vec<_> = (0..4).map(|i| drone(i, 35.0 + 10.0 * i as f64)).collect();
        for d in &mut fleet {
            d.battery_capacity_j = 40_000.0;
        }
        let spec = sample_spec();
        let cfg = PlannerConfig::default();
        let plan = assign_roles(&fleet, &spec, AllocationPolicy::EnergyAware, &cfg).unwrap();
        let reserve = spec.constraints.min_battery_reserve_pct / 100.0;
        for a in &plan.assignments {
            let d = fleet.iter().find(|d| d.drone_id == a.drone_id).unwrap();
            let budget = d.available_energy_j() - reserve * d.battery_capacity_j;
            assert!(a.estimated_energy_j <= budget + 1e-6, "{a:?}");
        }
        assert!(!plan.unassigned.is_empty());
    }

    #[test]
    fn reroute_picks_nearest() {
        let d = drone(0, 80.0);
        let stations = [GeoPoint::new(500.0, 0.0), GeoPoint::new(0.0, 100.0)];
        let r = reroute_to_charging(&d, &stations, &EnergyModel::default()).unwrap();
        assert_eq!(r.station, GeoPoint::new(0.0, 100.0));
        assert!(!r.energy_shortfall);
        assert_eq!(r.role, Role::Charging);
    }

    #[test]
    fn reroute_flags_shortfall() {
        // 1 % of 300 kJ = 3 kJ reaches 60 m at 50 J/m; both stations are further
        let d = drone(0, 1.0);
        let stations = [GeoPoint::new(100.0, 0.0), GeoPoint::new(500.0, 0.0)];
        let r = reroute_to_charging(&d, &stations, &EnergyModel::default()).unwrap();
        assert_eq!(r.station, GeoPoint::new(100.0, 0.0));
        assert!(r.energy_shortfall);
    }

    #[test]
    fn reroute_at_station_is_empty() {
        let d = drone(0, 10.0);
        let r = reroute_to_charging(&d, &[GeoPoint::new(0.0, 0.0)], &EnergyModel::default()).unwrap();
        assert!(r.waypoints.is_empty());
        assert_eq!(r.role, Role::Charging);
        assert!(matches!(
            reroute_to_charging(&d, &[], &EnergyModel::default()),
            Err(PlannerError::NoChargingStation)
        ));
    }

    #[test]
    fn split_path_cuts_inside_a_segment() {
        let pts = [
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(10.0, 0.0),
            GeoPoint::new(10.0, 10.0),
        ];
        let (head, tail) = split_path(&pts, 15.0);
        assert_eq!(head.last().unwrap(), &GeoPoint::new(10.0, 5.0));
        assert_eq!(tail[0], GeoPoint::new(10.0, 5.0));
        assert_eq!(path_length(&head) + path_length(&tail), 20.0);
        let (head, tail) = split_path(&pts, 0.0);
        assert!(head.is_empty());
        assert_eq!(path_length(&tail), 20.0);
    }

    #[test]
    fn plan_document_round_trip() {
        let fleet = vec![drone(0, 25.0), drone(1, 90.0), drone(2, 80.0)];
        let plan = assign_roles(&fleet, &sample_spec(), AllocationPolicy::EnergyAware, &PlannerConfig::default())
            .unwrap();
        let doc = plan.to_document().unwrap();
        assert_eq!(TaskPlan::from_document(&doc).unwrap(), plan);
    }
}
