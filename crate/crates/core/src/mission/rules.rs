//! Keyword rule table that turns free-text requests into missions.
//!
//! Rules are tried in order and the first one whose keyword appears wins.
//! A keyword matches at the start of a word, so `pothole` also matches
//! `potholes`. The table is a deterministic stand-in for a language-model
//! intent extractor; anything implementing [`IntentProvider`] can replace it.

use std::collections::BTreeSet;

use sha2::{Digest, Sha256};

use super::{
    validate, Constraints, MissionError, MissionSpec, MissionType, Objective, OutputKind, Sensor,
};
use crate::geometry::{GeoPoint, Polygon};
use crate::mission::MissionDefaults;

/// Bumped whenever rule contents or ordering change.
pub const RULE_TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy)]
pub struct IntentRule {
    pub keywords: &'static [&'static str],
    pub mission_type: MissionType,
    pub objectives: &'static [Objective],
    pub sensors: &'static [Sensor],
    pub outputs: &'static [OutputKind],
}

pub const DEFAULT_RULES: &[IntentRule] = &[
    IntentRule {
        keywords: &["power line", "powerline", "electric pole", "utility pole", "transmission line", "pylon"],
        mission_type: MissionType::PowerLineInspection,
        objectives: &[Objective::FaultDetection],
        sensors: &[Sensor::RGB, Sensor::Thermal],
        outputs: &[OutputKind::FaultReport],
    },
    IntentRule {
        keywords: &["hydrant"],
        mission_type: MissionType::FireHydrantInspection,
        objectives: &[Objective::RoutineInspection],
        sensors: &[Sensor::RGB],
        outputs: &[OutputKind::CoverageLog],
    },
    IntentRule {
        keywords: &["bridge", "overpass", "viaduct"],
        mission_type: MissionType::BridgeInspection,
        objectives: &[Objective::FaultDetection, Objective::SeverityAssessment],
        sensors: &[Sensor::RGB, Sensor::LiDAR],
        outputs: &[OutputKind::FaultReport, OutputKind::SeverityMap],
    },
    IntentRule {
        keywords: &["construction", "build progress", "site progress"],
        mission_type: MissionType::ConstructionMonitoring,
        objectives: &[Objective::ProgressMonitoring],
        sensors: &[Sensor::RGB, Sensor::LiDAR],
        outputs: &[OutputKind::CoverageLog],
    },
    IntentRule {
        keywords: &["building", "facade", "roof", "tower block"],
        mission_type: MissionType::BuildingInspection,
        objectives: &[Objective::RoutineInspection],
        sensors: &[Sensor::RGB, Sensor::Thermal],
        outputs: &[OutputKind::FaultReport],
    },
    IntentRule {
        keywords: &["road", "pothole", "pavement", "street", "highway", "asphalt"],
        mission_type: MissionType::RoadInspection,
        objectives: &[Objective::FaultDetection],
        sensors: &[Sensor::RGB],
        outputs: &[OutputKind::FaultReport],
    },
];

const OBJECTIVE_KEYWORDS: &[(&str, Objective)] = &[
    ("routine", Objective::RoutineInspection),
    ("patrol", Objective::RoutineInspection),
    ("survey", Objective::RoutineInspection),
    ("fault", Objective::FaultDetection),
    ("defect", Objective::FaultDetection),
    ("crack", Objective::FaultDetection),
    ("anomal", Objective::FaultDetection),
    ("pothole", Objective::FaultDetection),
    ("corrosion", Objective::FaultDetection),
    ("severity", Objective::SeverityAssessment),
    ("damage", Objective::SeverityAssessment),
    ("assess", Objective::SeverityAssessment),
    ("progress", Objective::ProgressMonitoring),
];

const SENSOR_KEYWORDS: &[(&str, Sensor)] = &[
    ("rgb", Sensor::RGB),
    ("camera", Sensor::RGB),
    ("photo", Sensor::RGB),
    ("visual", Sensor::RGB),
    ("thermal", Sensor::Thermal),
    ("infrared", Sensor::Thermal),
    ("heat", Sensor::Thermal),
    ("lidar", Sensor::LiDAR),
    ("point cloud", Sensor::LiDAR),
    ("3d map", Sensor::LiDAR),
];

const OUTPUT_KEYWORDS: &[(&str, OutputKind)] = &[
    ("report", OutputKind::FaultReport),
    ("severity map", OutputKind::SeverityMap),
    ("heat map", OutputKind::SeverityMap),
    ("coverage log", OutputKind::CoverageLog),
    ("log", OutputKind::CoverageLog),
];

/// Produces a mission from a natural-language request.
pub trait IntentProvider {
    fn provide(&self, text: &str, defaults: &MissionDefaults) -> Result<MissionSpec, MissionError>;
}

/// First-match keyword rule table.
#[derive(Debug, Clone, Copy)]
pub struct RuleTable {
    pub rules: &'static [IntentRule],
}

impl Default for RuleTable {
    fn default() -> Self {
        RuleTable {
            rules: DEFAULT_RULES,
        }
    }
}

/// Lowercase words joined by single spaces, padded on both ends.
fn normalize(text: &str) -> String {
    let mut out = String::from(" ");
    for word in text
        .split(|c: char| !(c.is_alphanumeric() || c == '.' || c == '%'))
        .filter(|w| !w.is_empty())
    {
        out.push_str(&word.to_lowercase());
        out.push(' ');
    }
    out
}

fn mentions(normalized: &str, keyword: &str) -> bool {
    normalized.contains(&format!(" {keyword}"))
}

fn words(normalized: &str) -> Vec<&str> {
    normalized.split_whitespace().collect()
}

fn parse_number(s: &str) -> Option<f64> {
    s.trim_end_matches(['m', '%'])
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite() && *v > 0.0)
}

/// `120x80`, `120 x 80 m`, `120m x 80m` → rectangle anchored at the origin.
fn extract_rectangle(ws: &[&str]) -> Option<Polygon> {
    for (i, w) in ws.iter().enumerate() {
        if let Some((a, b)) = w.split_once('x') {
            if let (Some(wd), Some(ht)) = (parse_number(a), parse_number(b)) {
                return Some(Polygon::rectangle(GeoPoint::new(0.0, 0.0), wd, ht));
            }
        }
        if *w == "x" && i > 0 && i + 1 < ws.len() {
            if let (Some(wd), Some(ht)) = (parse_number(ws[i - 1]), parse_number(ws[i + 1])) {
                return Some(Polygon::rectangle(GeoPoint::new(0.0, 0.0), wd, ht));
            }
        }
    }
    None
}

fn extract_duration_min(ws: &[&str]) -> Option<f64> {
    ws.windows(2).find_map(|pair| {
        let unit = pair[1];
        let value = parse_number(pair[0])?;
        if unit.starts_with("min") {
            Some(value)
        } else if unit == "h" || unit.starts_with("hour") {
            Some(value * 60.0)
        } else {
            None
        }
    })
}

fn extract_reserve_pct(ws: &[&str]) -> Option<f64> {
    let idx = ws.iter().position(|w| w.starts_with("reserve"))?;
    let lo = idx.saturating_sub(3);
    let hi = (idx + 4).min(ws.len());
    ws[lo..hi]
        .iter()
        .filter(|w| w.ends_with('%'))
        .find_map(|w| w.trim_end_matches('%').parse::<f64>().ok())
}

fn mission_id_for(text: &str) -> String {
    let digest = Sha256::digest(text.trim().as_bytes());
    let hex: String = digest[..4].iter().map(|b| format!("{b:02x}")).collect();
    format!("msn-{hex}")
}

impl RuleTable {
    /// Every keyword, in table order, for error messages.
    pub fn keywords(&self) -> Vec<String> {
        self.rules
            .iter()
            .flat_map(|r| r.keywords.iter().map(|k| (*k).to_owned()))
            .collect()
    }

    pub fn match_rule(&self, text: &str) -> Option<&IntentRule> {
        let norm = normalize(text);
        self.rules
            .iter()
            .find(|r| r.keywords.iter().any(|k| mentions(&norm, k)))
    }
}

impl IntentProvider for RuleTable {
    fn provide(&self, text: &str, defaults: &MissionDefaults) -> Result<MissionSpec, MissionError> {
        if text.trim().is_empty() {
            return Err(MissionError::IncompleteMission("request text is empty".into()));
        }
        let norm = normalize(text);
        let ws = words(&norm);
        let rule = self
            .match_rule(text)
            .ok_or_else(|| MissionError::UnrecognizedIntent {
                candidates: self.keywords(),
            })?;

        let compatible = rule.mission_type.compatible_objectives();
        let mut objectives: Vec<Objective> = Objective::ALL
            .into_iter()
            .filter(|o| compatible.contains(o))
            .filter(|o| {
                OBJECTIVE_KEYWORDS
                    .iter()
                    .any(|(k, obj)| obj == o && mentions(&norm, k))
            })
            .collect();
        if objectives.is_empty() {
            objectives = rule.objectives.to_vec();
        }

        let mut sensors: BTreeSet<Sensor> = rule.sensors.iter().copied().collect();
        sensors.extend(
            SENSOR_KEYWORDS
                .iter()
                .filter(|(k, _)| mentions(&norm, k))
                .map(|(_, s)| *s),
        );

        let mut outputs: Vec<OutputKind> = OutputKind::ALL
            .into_iter()
            .filter(|o| {
                OUTPUT_KEYWORDS
                    .iter()
                    .any(|(k, out)| out == o && mentions(&norm, k))
            })
            .collect();
        if outputs.is_empty() {
            outputs = defaults
                .expected_outputs
                .clone()
                .unwrap_or_else(|| rule.outputs.to_vec());
        }

        let base = defaults.constraints.unwrap_or_default();
        let constraints = Constraints {
            max_duration_min: extract_duration_min(&ws).unwrap_or(base.max_duration_min),
            min_battery_reserve_pct: extract_reserve_pct(&ws).unwrap_or(base.min_battery_reserve_pct),
        };

        let perimeter = extract_rectangle(&ws)
            .or_else(|| defaults.perimeter.clone())
            .ok_or_else(|| {
                MissionError::IncompleteMission(
                    "no perimeter in the request and no default perimeter".into(),
                )
            })?;

        let spec = MissionSpec {
            mission_id: defaults
                .mission_id
                .clone()
                .unwrap_or_else(|| mission_id_for(text)),
            mission_type: rule.mission_type,
            objectives,
            sensors,
            expected_outputs: outputs,
            constraints,
            perimeter,
        };
        let violations = validate(&spec);
        if violations.is_empty() {
            Ok(spec)
        } else {
            Err(MissionError::Invalid(violations))
        }
    }
}

/// Parse `text` with the built-in rule table.
pub fn parse_request(text: &str, defaults: &MissionDefaults) -> Result<MissionSpec, MissionError> {
    RuleTable::default().provide(text, defaults)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> MissionDefaults {
        MissionDefaults {
            perimeter: Some(Polygon::rectangle(GeoPoint::new(0.0, 0.0), 200.0, 50.0)),
            ..MissionDefaults::default()
        }
    }

    #[test]
    fn road_pothole_request() {
        let spec = parse_request("inspect the road segment for potholes", &defaults()).unwrap();
        assert_eq!(spec.mission_type, MissionType::RoadInspection);
        assert_eq!(spec.objectives, vec![Objective::FaultDetection]);
        assert!(spec.sensors.contains(&Sensor::RGB));
    }

    #[test]
    fn thermal_power_line_request() {
        let spec = parse_request("check thermal anomalies on power lines", &defaults()).unwrap();
        assert_eq!(spec.mission_type, MissionType::PowerLineInspection);
        assert!(spec.sensors.contains(&Sensor::Thermal));
        assert!(spec.objectives.contains(&Objective::FaultDetection));
    }

    #[test]
    fn empty_request_is_incomplete() {
        assert!(matches!(
            parse_request("", &defaults()),
            Err(MissionError::IncompleteMission(_))
        ));
        assert!(matches!(
            parse_request("   \n", &defaults()),
            Err(MissionError::IncompleteMission(_))
        ));
    }

    #[test]
    fn unmatched_request_lists_candidates() {
        match parse_request("water the plants", &defaults()) {
            Err(MissionError::UnrecognizedIntent { candidates }) => {
                assert!(candidates.iter().any(|c| c == "road"));
                assert!(candidates.iter().any(|c| c == "hydrant"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_perimeter_without_default() {
        assert!(matches!(
            parse_request("inspect the bridge", &MissionDefaults::default()),
            Err(MissionError::IncompleteMission(_))
        ));
    }

    #[test]
    fn inline_dimensions_duration_and_reserve() {
        let spec = parse_request(
            "survey the construction site 120x80 m within 45 minutes keeping a 25% battery reserve",
            &MissionDefaults::default(),
        )
        .unwrap();
        assert_eq!(spec.mission_type, MissionType::ConstructionMonitoring);
        assert_eq!(spec.perimeter.area(), 9600.0);
        assert_eq!(spec.constraints.max_duration_min, 45.0);
        assert_eq!(spec.constraints.min_battery_reserve_pct, 25.0);
        assert!(spec.objectives.contains(&Objective::RoutineInspection));
    }

    #[test]
    fn first_match_wins() {
        // mentions both a bridge and a road; bridge precedes road in the table
        let spec = parse_request("check the bridge deck where the road crosses", &defaults()).unwrap();
        assert_eq!(spec.mission_type, MissionType::BridgeInspection);
    }

    #[test]
    fn parsing_is_deterministic() {
        let a = parse_request("assess damage on the building facade", &defaults()).unwrap();
        let b = parse_request("assess damage on the building facade", &defaults()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.objectives, vec![Objective::SeverityAssessment]);
        assert!(a.mission_id.starts_with("msn-"));
    }

    #[test]
    fn rule_table_is_total() {
        let rules = DEFAULT_RULES;
        for t in MissionType::ALL {
            assert!(rules.iter().any(|r| r.mission_type == t), "{t:?} unreachable");
            let req = rules.iter().find(|r| r.mission_type == t).unwrap().keywords[0];
            let spec = parse_request(&format!("inspect the {req}"), &defaults()).unwrap();
            assert_eq!(spec.mission_type, t, "keyword {req} shadowed");
        }
        for o in Objective::ALL {
            assert!(rules.iter().any(|r| r.objectives.contains(&o)), "{o:?}");
        }
        for s in Sensor::ALL {
            assert!(rules.iter().any(|r| r.sensors.contains(&s)), "{s:?}");
        }
        for k in OutputKind::ALL {
            assert!(rules.iter().any(|r| r.outputs.contains(&k)), "{k:?}");
        }
        for r in rules {
            assert!(r
                .objectives
                .iter()
                .all(|o| r.mission_type.compatible_objectives().contains(o)));
        }
    }
}
