//! Structured inspection missions: schema, validation, parsing and the
//! mission document format.

mod rules;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{read_document, write_document, DocumentError};
use crate::geometry::Polygon;

pub use rules::{
    parse_request, IntentProvider, IntentRule, RuleTable, DEFAULT_RULES, RULE_TABLE_VERSION,
};

pub const MISSION_SCHEMA: &str = "swarmnet.mission";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MissionType {
    RoadInspection,
    BuildingInspection,
    BridgeInspection,
    PowerLineInspection,
    FireHydrantInspection,
    ConstructionMonitoring,
}

impl MissionType {
    pub const ALL: [MissionType; 6] = [
        MissionType::RoadInspection,
        MissionType::BuildingInspection,
        MissionType::BridgeInspection,
        MissionType::PowerLineInspection,
        MissionType::FireHydrantInspection,
        MissionType::ConstructionMonitoring,
    ];

    /// Objectives that make sense for this kind of infrastructure.
    pub fn compatible_objectives(self) -> &'static [Objective] {
        use Objective::*;
        match self {
            MissionType::RoadInspection
            | MissionType::BuildingInspection
            | MissionType::BridgeInspection
            | MissionType::PowerLineInspection => {
                &[RoutineInspection, FaultDetection, SeverityAssessment]
            }
            MissionType::FireHydrantInspection => &[RoutineInspection, FaultDetection],
            MissionType::ConstructionMonitoring => &[RoutineInspection, ProgressMonitoring],
        }
    }
}

impl fmt::Display for MissionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Objective {
    RoutineInspection,
    FaultDetection,
    SeverityAssessment,
    ProgressMonitoring,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::RoutineInspection,
        Objective::FaultDetection,
        Objective::SeverityAssessment,
        Objective::ProgressMonitoring,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sensor {
    RGB,
    Thermal,
    LiDAR,
}

impl Sensor {
    pub const ALL: [Sensor; 3] = [Sensor::RGB, Sensor::Thermal, Sensor::LiDAR];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OutputKind {
    FaultReport,
    SeverityMap,
    CoverageLog,
}

impl OutputKind {
    pub const ALL: [OutputKind; 3] = [
        OutputKind::FaultReport,
        OutputKind::SeverityMap,
        OutputKind::CoverageLog,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Constraints {
    pub max_duration_min: f64,
    pub min_battery_reserve_pct: f64,
}

impl Default for Constraints {
    fn default() -> Self {
        Constraints {
            max_duration_min: 60.0,
            min_battery_reserve_pct: 20.0,
        }
    }
}

/// A fully specified inspection mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionSpec {
    pub mission_id: String,
    pub mission_type: MissionType,
    pub objectives: Vec<Objective>,
    pub sensors: BTreeSet<Sensor>,
    pub expected_outputs: Vec<OutputKind>,
    pub constraints: Constraints,
    pub perimeter: Polygon,
}

/// Fallback values for fields a request does not mention.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MissionDefaults {
    pub mission_id: Option<String>,
    pub perimeter: Option<Polygon>,
    pub expected_outputs: Option<Vec<OutputKind>>,
    pub constraints: Option<Constraints>,
}

/// Machine-readable invariant violations reported by [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ViolationCode {
    EmptyMissionId,
    EmptyObjectives,
    EmptySensors,
    InvalidPerimeter,
    ReserveOutOfRange,
    DurationNotPositive,
    ObjectiveMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.code, self.detail)
    }
}

/// Every invariant violation in `spec`; empty means valid.
pub fn validate(spec: &MissionSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |code, detail: String| out.push(Violation { code, detail });
    if spec.mission_id.trim().is_empty() {
        push(ViolationCode::EmptyMissionId, "mission_id is empty".into());
    }
    if spec.objectives.is_empty() {
        push(ViolationCode::EmptyObjectives, "no objectives".into());
    }
    if spec.sensors.is_empty() {
        push(ViolationCode::EmptySensors, "no sensors".into());
    }
    if let Err(e) = spec.perimeter.validate() {
        push(ViolationCode::InvalidPerimeter, e.to_string());
    }
    let reserve = spec.constraints.min_battery_reserve_pct;
    if !(0.0..=100.0).contains(&reserve) {
        push(
            ViolationCode::ReserveOutOfRange,
            format!("min_battery_reserve_pct {reserve} outside [0, 100]"),
        );
    }
    let duration = spec.constraints.max_duration_min;
    if !(duration > 0.0 && duration.is_finite()) {
        push(
            ViolationCode::DurationNotPositive,
            format!("max_duration_min {duration} is not positive"),
        );
    }
    let compatible = spec.mission_type.compatible_objectives();
    if !spec.objectives.is_empty() && !spec.objectives.iter().any(|o| compatible.contains(o)) {
        push(
            ViolationCode::ObjectiveMismatch,
            format!("no objective fits {}", spec.mission_type),
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MissionError {
    #[error("no intent rule matched the request; recognised keywords include: {}", .candidates.join(", "))]
    UnrecognizedIntent { candidates: Vec<String> },
    #[error("incomplete mission: {0}")]
    IncompleteMission(String),
    #[error("mission is invalid: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error(transparent)]
    Document(#[from] DocumentError),
}

fn join_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Serialise a valid mission into its document form.
pub fn serialize(spec: &MissionSpec) -> Result<String, MissionError> {
    let violations = validate(spec);
    if !violations.is_empty() {
        return Err(MissionError::Invalid(violations));
    }
    Ok(write_document(MISSION_SCHEMA, spec)?)
}

/// Parse and validate a mission document.
pub fn deserialize(text: &str) -> Result<MissionSpec, MissionError> {
    let spec: MissionSpec = read_document(MISSION_SCHEMA, text)?;
    let violations = validate(&spec);
    if !violations.is_empty() {
        return Err(MissionError::Invalid(violations));
    }
    Ok(spec)
}
