use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const KIND_ROAD_QUALITY: u16 = 1;
pub const KIND_POTHOLE_DETECTION: u16 = 2;
pub const KIND_TELEMETRY: u16 = 3;
pub const KIND_HEARTBEAT: u16 = 4;
pub const KIND_FAULT_DETECTION: u16 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldEncoding {
    Bool,
    U8,
    U16,
    U32,
    I16,
    I32,
    F32,
    F64,
}

impl FieldEncoding {
    pub const fn width(self) -> usize {
        match self {
            FieldEncoding::Bool | FieldEncoding::U8 => 1,
            FieldEncoding::U16 | FieldEncoding::I16 => 2,
            FieldEncoding::U32 | FieldEncoding::I32 | FieldEncoding::F32 => 4,
            FieldEncoding::F64 => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub name: String,
    pub semantic_type: String,
    pub unit: String,
    pub encoding: FieldEncoding,
}

impl FieldDescriptor {
    pub fn new(name: &str, semantic_type: &str, unit: &str, encoding: FieldEncoding) -> Self {
        FieldDescriptor {
            name: name.to_owned(),
            semantic_type: semantic_type.to_owned(),
            unit: unit.to_owned(),
            encoding,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MessageSchema {
    pub name: String,
    pub fields: Vec<FieldDescriptor>,
}

impl MessageSchema {
    pub fn payload_width(&self) -> usize {
        self.fields.iter().map(|f| f.encoding.width()).sum()
    }
}

/// Versioned message schemas shared by encoder and decoder. Immutable once
/// built.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnowledgeBase {
    pub kb_id: u32,
    pub version: u16,
    pub schemas: BTreeMap<u16, MessageSchema>,
}

impl KnowledgeBase {
    pub fn new(kb_id: u32, version: u16) -> Self {
        KnowledgeBase {
            kb_id,
            version,
            schemas: BTreeMap::new(),
        }
    }

    pub fn with_schema(mut self, kind: u16, schema: MessageSchema) -> Self {
        self.schemas.insert(kind, schema);
        self
    }

    pub fn schema(&self, kind: u16) -> Option<&MessageSchema> {
        self.schemas.get(&kind)
    }

    /// Predicted payload size for `kind`, header included.
    pub fn payload_size(&self, kind: u16) -> Option<usize> {
        self.schema(kind).map(|s| super::HEADER_LEN + s.payload_width())
    }

    /// Built-in inspection knowledge base (id 1, version 1).
    pub fn inspection_default() -> Self {
        use FieldEncoding::*;
        let f = FieldDescriptor::new;
        KnowledgeBase::new(1, 1)
            .with_schema(
                KIND_ROAD_QUALITY,
                MessageSchema {
                    name: "RoadQuality".into(),
                    fields: vec![
                        f("material", "road.material_class", "class", U8),
                        f("friction_level", "road.friction_level", "level", U8),
                        f("unevenness_level", "road.unevenness_level", "level", U8),
                    ],
                },
            )
            .with_schema(
                KIND_POTHOLE_DETECTION,
                MessageSchema {
                    name: "PotholeDetection".into(),
                    fields: vec![
                        f("x_m", "position.x", "m", F32),
                        f("y_m", "position.y", "m", F32),
                        f("diameter_cm", "defect.size", "cm", U16),
                        f("confidence_pct", "detection.confidence", "%", U8),
                    ],
                },
            )
            .with_schema(
                KIND_TELEMETRY,
                MessageSchema {
                    name: "Telemetry".into(),
                    fields: vec![
                        f("x_m", "position.x", "m", F32),
                        f("y_m", "position.y", "m", F32),
                        f("battery_pct", "energy.battery", "%", U8),
                        f("role", "swarm.role", "enum", U8),
                    ],
                },
            )
            .with_schema(
                KIND_HEARTBEAT,
                MessageSchema {
                    name: "Heartbeat".into(),
                    fields: vec![],
                },
            )
            .with_schema(
                KIND_FAULT_DETECTION,
                MessageSchema {
                    name: "FaultDetection".into(),
                    fields: vec![
                        f("fault_id", "fault.id", "id", U32),
                        f("x_m", "position.x", "m", F32),
                        f("y_m", "position.y", "m", F32),
                        f("severity", "fault.severity", "level", U8),
                        f("observed_ms", "time.observed", "ms", F64),
                    ],
                },
            )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Value {
    Bool(bool),
    U8(u8),
    U16(u16),
    U32(u32),
    I16(i16),
    I32(i32),
    F32(f32),
    F64(f64),
}

impl Value {
    pub fn encoding(&self) -> FieldEncoding {
        match self {
            Value::Bool(_) => FieldEncoding::Bool,
            Value::U8(_) => FieldEncoding::U8,
            Value::U16(_) => FieldEncoding::U16,
            Value::U32(_) => FieldEncoding::U32,
            Value::I16(_) => FieldEncoding::I16,
            Value::I32(_) => FieldEncoding::I32,
            Value::F32(_) => FieldEncoding::F32,
            Value::F64(_) => FieldEncoding::F64,
        }
    }

    pub fn as_f64(&self) -> f64 {
        match *self {
            Value::Bool(b) => f64::from(u8::from(b)),
            Value::U8(v) => f64::from(v),
            Value::U16(v) => f64::from(v),
            Value::U32(v) => f64::from(v),
            Value::I16(v) => f64::from(v),
            Value::I32(v) => f64::from(v),
            Value::F32(v) => f64::from(v),
            Value::F64(v) => v,
        }
    }

    /// Convert `x` to the given encoding, if it is representable.
    pub fn from_f64(encoding: FieldEncoding, x: f64) -> Option<Value> {
        fn int<T: TryFrom<i64>>(x: f64) -> Option<T> {
            if x.fract() != 0.0 || !x.is_finite() {
                return None;
            }
            T::try_from(x as i64).ok()
        }
        Some(match encoding {
            FieldEncoding::Bool if x == 0.0 || x == 1.0 => Value::Bool(x == 1.0),
            FieldEncoding::Bool => return None,
            FieldEncoding::U8 => Value::U8(int(x)?),
            FieldEncoding::U16 => Value::U16(int(x)?),
            FieldEncoding::U32 => Value::U32(int(x)?),
            FieldEncoding::I16 => Value::I16(int(x)?),
            FieldEncoding::I32 => Value::I32(int(x)?),
            FieldEncoding::F32 => Value::F32(x as f32),
            FieldEncoding::F64 => Value::F64(x),
        })
    }
}

/// A decoded semantic message: the knowledge-base identity it was encoded
/// against, its kind, and named field values in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct SemanticMessage {
    pub kb_id: u32,
    pub kb_version: u16,
    pub kind: u16,
    pub fields: Vec<(String, Value)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegistryError {
    #[error("knowledge base {kb_id} version {version} is not newer than published version {latest}")]
    NonMonotoneVersion { kb_id: u32, version: u16, latest: u16 },
    #[error("knowledge base {kb_id} version {version} was already published with different schemas")]
    ConflictingContent { kb_id: u32, version: u16 },
}

/// Published knowledge bases. Versions per `kb_id` only move forward and a
/// `(kb_id, version)` pair always maps to one schema set.
#[derive(Debug, Clone, Default)]
pub struct KbRegistry {
    published: BTreeMap<(u32, u16), KnowledgeBase>,
}

impl KbRegistry {
    pub fn publish(&mut self, kb: KnowledgeBase) -> Result<(), RegistryError> {
        if let Some(existing) = self.published.get(&(kb.kb_id, kb.version)) {
            return if *existing == kb {
                Ok(())
            } else {
                Err(RegistryError::ConflictingContent {
                    kb_id: kb.kb_id,
                    version: kb.version,
                })
            };
        }
        if let Some(latest) = self.latest(kb.kb_id) {
            if kb.version <= latest.version {
                return Err(RegistryError::NonMonotoneVersion {
                    kb_id: kb.kb_id,
                    version: kb.version,
                    latest: latest.version,
                });
            }
        }
        self.published.insert((kb.kb_id, kb.version), kb);
        Ok(())
    }

    pub fn get(&self, kb_id: u32, version: u16) -> Option<&KnowledgeBase> {
        self.published.get(&(kb_id, version))
    }

    pub fn latest(&self, kb_id: u32) -> Option<&KnowledgeBase> {
        self.published
            .range((kb_id, 0)..=(kb_id, u16::MAX))
            .next_back()
            .map(|(_, kb)| kb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_enforces_monotone_versions() {
        let mut reg = KbRegistry::default();
        let v1 = KnowledgeBase::inspection_default();
        reg.publish(v1.clone()).unwrap();
        // republishing identical content is idempotent
        reg.publish(v1.clone()).unwrap();
        let mut changed = v1.clone();
        changed.schemas.remove(&KIND_HEARTBEAT);
        assert!(matches!(
            reg.publish(changed.clone()),
            Err(RegistryError::ConflictingContent { .. })
        ));
        changed.version = 2;
        reg.publish(changed.clone()).unwrap();
        let mut old = v1.clone();
        old.version = 0;
        assert!(matches!(
            reg.publish(old),
            Err(RegistryError::NonMonotoneVersion { latest: 2, .. })
        ));
        assert_eq!(reg.latest(1).unwrap().version, 2);
        assert_eq!(reg.get(1, 1), Some(&v1));
    }

    #[test]
    fn value_conversion_checks_range() {
        assert_eq!(Value::from_f64(FieldEncoding::U8, 255.0), Some(Value::U8(255)));
        assert_eq!(Value::from_f64(FieldEncoding::U8, 256.0), None);
        assert_eq!(Value::from_f64(FieldEncoding::I16, -3.0), Some(Value::I16(-3)));
        assert_eq!(Value::from_f64(FieldEncoding::U16, 1.5), None);
        assert_eq!(Value::from_f64(FieldEncoding::Bool, 1.0), Some(Value::Bool(true)));
        assert_eq!(Value::from_f64(FieldEncoding::Bool, 2.0), None);
    }
}
