//! Discrete-event mission simulation.

mod compare;
mod engine;
mod event;
mod faults;
mod network;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use compare::{
    compare, compare_policies, FleetSpec, MIN_SEEDS, PairedRow, PolicyComparison, Scenario,
};
pub use engine::{
    message_log_csv, run_mission, DroneOutcome, EndReason, EnergyLedger, FaultRecord,
    MessageRecord, MessageStatus, MessageSummary, SimConfig, SimOutcome, TraceEntry,
    OUTCOME_SCHEMA,
};
pub use event::{Event, EventKind, EventQueue};
pub use faults::{fault_process, FaultInjection};
pub use network::{delivery_delay_ms, send_with_retries, transmit, Attempt, RetryPolicy, SendResult};

/// Onboard inference workloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    RoadQualityClassify,
    PotholeDetect,
    SceneClassify,
    ThermalScan,
    LidarMap,
}

impl TaskKind {
    pub const ALL: [TaskKind; 5] = [
        TaskKind::RoadQualityClassify,
        TaskKind::PotholeDetect,
        TaskKind::SceneClassify,
        TaskKind::ThermalScan,
        TaskKind::LidarMap,
    ];

    /// Measured per-frame latency for the tasks that have one.
    pub const fn builtin_delay_ms(self) -> Option<f64> {
        match self {
            TaskKind::RoadQualityClassify => Some(80.0),
            TaskKind::PotholeDetect => Some(115.0),
            _ => None,
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskKind::RoadQualityClassify => "road_quality_classify",
            TaskKind::PotholeDetect => "pothole_detect",
            TaskKind::SceneClassify => "scene_classify",
            TaskKind::ThermalScan => "thermal_scan",
            TaskKind::LidarMap => "lidar_map",
        })
    }
}

impl std::str::FromStr for TaskKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TaskKind::ALL
            .into_iter()
            .find(|k| k.to_string() == s)
            .ok_or_else(|| SimError::UnknownTask(s.to_owned()))
    }
}

/// Per-frame inference latencies. Built-in measurements always win; other
/// kinds must be configured.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferenceTable {
    #[serde(default)]
    pub configured_ms: BTreeMap<TaskKind, f64>,
}

impl Default for InferenceTable {
    /// Builds in placeholder latencies for the kinds without a measurement.
    fn default() -> Self {
        InferenceTable {
            configured_ms: BTreeMap::from([
                (TaskKind::SceneClassify, 80.0),
                (TaskKind::ThermalScan, 150.0),
                (TaskKind::LidarMap, 250.0),
            ]),
        }
    }
}

impl InferenceTable {
    /// Only the built-in measurements.
    pub fn builtin_only() -> Self {
        InferenceTable {
            configured_ms: BTreeMap::new(),
        }
    }

    pub fn with(mut self, task: TaskKind, delay_ms: f64) -> Self {
        self.configured_ms.insert(task, delay_ms);
        self
    }

    pub fn delay_ms(&self, task: TaskKind) -> Result<f64, SimError> {
        if let Some(ms) = task.builtin_delay_ms() {
            return Ok(ms);
        }
        match self.configured_ms.get(&task) {
            Some(&ms) if ms >= 0.0 && ms.is_finite() => Ok(ms),
            Some(&ms) => Err(SimError::Param(crate::ParamError::out_of_range(
                "inference delay",
                "non-negative and finite",
                ms,
            ))),
            None => Err(SimError::UnknownTask(task.to_string())),
        }
    }
}

/// Per-frame latency of `task` under `table`.
pub fn inference_delay(task: TaskKind, table: &InferenceTable) -> Result<f64, SimError> {
    table.delay_ms(task)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("no inference latency configured for task `{0}`")]
    UnknownTask(String),
    #[error(transparent)]
    Param(#[from] crate::ParamError),
    #[error(transparent)]
    Planner(#[from] crate::planner::PlannerError),
    #[error(transparent)]
    Codec(#[from] crate::semcomm::CodecError),
    #[error(transparent)]
    Document(#[from] crate::document::DocumentError),
    #[error("event budget of {0} exhausted before the mission ended")]
    EventBudgetExceeded(u64),
    #[error("policy comparison needs at least {min} seeds, got {got}")]
    TooFewSeeds { min: usize, got: usize },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measured_delays() {
        let t = InferenceTable::builtin_only();
        assert_eq!(inference_delay(TaskKind::RoadQualityClassify, &t), Ok(80.0));
        assert_eq!(inference_delay(TaskKind::PotholeDetect, &t), Ok(115.0));
    }

    #[test]
    fn builtins_cannot_be_overridden() {
        let t = InferenceTable::builtin_only().with(TaskKind::PotholeDetect, 1.0);
        assert_eq!(t.delay_ms(TaskKind::PotholeDetect), Ok(115.0));
    }

    #[test]
    fn configured_passthrough_and_unknown() {
        let t = InferenceTable::builtin_only();
        assert!(matches!(t.delay_ms(TaskKind::ThermalScan), Err(SimError::UnknownTask(_))));
        let t = t.with(TaskKind::ThermalScan, 200.0);
        assert_eq!(t.delay_ms(TaskKind::ThermalScan), Ok(200.0));
        let bad = InferenceTable::builtin_only().with(TaskKind::LidarMap, -1.0);
        assert!(bad.delay_ms(TaskKind::LidarMap).is_err());
    }

    #[test]
    fn task_names_round_trip() {
        for k in TaskKind::ALL {
            assert_eq!(k.to_string().parse::<TaskKind>().unwrap(), k);
        }
        assert!("sonar_ping".parse::<TaskKind>().is_err());
    }
}
