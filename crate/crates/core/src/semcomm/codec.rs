use thiserror::Error;

use super::kb::{FieldEncoding, KnowledgeBase, SemanticMessage, Value};

pub const HEADER_LEN: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("payload encoded against knowledge base {found_id} v{found_version}, decoder has {expected_id} v{expected_version}")]
    KnowledgeBaseMismatch {
        expected_id: u32,
        expected_version: u16,
        found_id: u32,
        found_version: u16,
    },
    #[error("malformed payload: {0}")]
    MalformedPayload(String),
    #[error("schema violation at field `{field}`: {reason}")]
    SchemaViolation { field: String, reason: String },
    #[error("message kind {0} is not defined in the knowledge base")]
    UnknownKind(u16),
}

fn violation(field: &str, reason: impl Into<String>) -> CodecError {
    CodecError::SchemaViolation {
        field: field.to_owned(),
        reason: reason.into(),
    }
}

/// Encode named field values as a compact payload for `kind`.
///
/// Fields must appear in schema order with the declared encodings.
pub fn encode(
    fields: &[(String, Value)],
    kb: &KnowledgeBase,
    kind: u16,
) -> Result<Vec<u8>, CodecError> {
    let schema = kb.schema(kind).ok_or(CodecError::UnknownKind(kind))?;
    let mut out = Vec::with_capacity(HEADER_LEN + schema.payload_width());
    out.extend_from_slice(&kb.kb_id.to_be_bytes());
    out.extend_from_slice(&kb.version.to_be_bytes());
    out.extend_from_slice(&kind.to_be_bytes());

    for (i, desc) in schema.fields.iter().enumerate() {
        let Some((name, value)) = fields.get(i) else {
            return Err(violation(&desc.name, "missing"));
        };
        if *name != desc.name {
            return Err(violation(
                &desc.name,
                format!("expected field `{}`, got `{name}`", desc.name),
            ));
        }
        if value.encoding() != desc.encoding {
            return Err(violation(
                &desc.name,
                format!("declared {:?}, got {:?}", desc.encoding, value.encoding()),
            ));
        }
        match *value {
            Value::Bool(b) => out.push(u8::from(b)),
            Value::U8(v) => out.push(v),
            Value::U16(v) => out.extend_from_slice(&v.to_be_bytes()),
            Value::U32(v) => out.extend_from_slice(&v.to_be_bytes()),
            Value::I16(v) => out.extend_from_slice(&v.to_be_bytes()),
            Value::I32(v) => out.extend_from_slice(&v.to_be_bytes()),
            Value::F32(v) => out.extend_from_slice(&v.to_be_bytes()),
            Value::F64(v) => out.extend_from_slice(&v.to_be_bytes()),
        }
    }
    if let Some((name, _)) = fields.get(schema.fields.len()) {
        return Err(violation(name, "not declared in the schema"));
    }
    Ok(out)
}

fn take<const N: usize>(bytes: &[u8], at: &mut usize) -> Result<[u8; N], CodecError> {
    let end = *at + N;
    let slice = bytes.get(*at..end).ok_or_else(|| {
        CodecError::MalformedPayload(format!(
            "truncated: need {N} bytes at offset {at}, have {}",
            bytes.len()
        ))
    })?;
    *at = end;
    Ok(slice.try_into().expect("slice length checked"))
}

/// Decode a payload. The knowledge base identity in the header must match
/// `kb` exactly.
pub fn decode(bytes: &[u8], kb: &KnowledgeBase) -> Result<SemanticMessage, CodecError> {
    if bytes.len() < HEADER_LEN {
        return Err(CodecError::MalformedPayload(format!(
            "payload of {} bytes is shorter than the {HEADER_LEN}-byte header",
            bytes.len()
        )));
    }
    let mut at = 0;
    let kb_id = u32::from_be_bytes(take(bytes, &mut at)?);
    let kb_version = u16::from_be_bytes(take(bytes, &mut at)?);
    let kind = u16::from_be_bytes(take(bytes, &mut at)?);
    if kb_id != kb.kb_id || kb_version != kb.version {
        return Err(CodecError::KnowledgeBaseMismatch {
            expected_id: kb.kb_id,
            expected_version: kb.version,
            found_id: kb_id,
            found_version: kb_version,
        });
    }
    let schema = kb.schema(kind).ok_or(CodecError::UnknownKind(kind))?;

    let mut fields = Vec::with_capacity(schema.fields.len());
    for desc in &schema.fields {
        let value = match desc.encoding {
            FieldEncoding::Bool => match take::<1>(bytes, &mut at)?[0] {
                0 => Value::Bool(false),
                1 => Value::Bool(true),
                b => {
                    return Err(CodecError::MalformedPayload(format!(
                        "field `{}` has invalid bool byte {b}",
                        desc.name
                    )))
                }
            },
            FieldEncoding::U8 => Value::U8(take::<1>(bytes, &mut at)?[0]),
            FieldEncoding::U16 => Value::U16(u16::from_be_bytes(take(bytes, &mut at)?)),
            FieldEncoding::U32 => Value::U32(u32::from_be_bytes(take(bytes, &mut at)?)),
            FieldEncoding::I16 => Value::I16(i16::from_be_bytes(take(bytes, &mut at)?)),
            FieldEncoding::I32 => Value::I32(i32::from_be_bytes(take(bytes, &mut at)?)),
            FieldEncoding::F32 => Value::F32(f32::from_be_bytes(take(bytes, &mut at)?)),
            FieldEncoding::F64 => Value::F64(f64::from_be_bytes(take(bytes, &mut at)?)),
        };
        fields.push((desc.name.clone(), value));
    }
    if at != bytes.len() {
        return Err(CodecError::MalformedPayload(format!(
            "{} trailing bytes after the last field",
            bytes.len() - at
        )));
    }
    Ok(SemanticMessage {
        kb_id,
        kb_version,
        kind,
        fields,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semcomm::kb::{KIND_HEARTBEAT, KIND_POTHOLE_DETECTION, KIND_ROAD_QUALITY};

    fn road(material: u8, friction: u8, uneven: u8) -> Vec<(String, Value)> {
        vec![
            ("material".into(), Value::U8(material)),
            ("friction_level".into(), Value::U8(friction)),
            ("unevenness_level".into(), Value::U8(uneven)),
        ]
    }

    #[test]
    fn road_quality_is_eleven_bytes() {
        let kb = KnowledgeBase::inspection_default();
        let bytes = encode(&road(2, 1, 3), &kb, KIND_ROAD_QUALITY).unwrap();
        assert_eq!(bytes, vec![0, 0, 0, 1, 0, 1, 0, 1, 2, 1, 3]);
        assert_eq!(kb.payload_size(KIND_ROAD_QUALITY), Some(11));
        let msg = decode(&bytes, &kb).unwrap();
        assert_eq!(msg.fields, road(2, 1, 3));
        assert_eq!(msg.kind, KIND_ROAD_QUALITY);
    }

    #[test]
    fn header_only_message() {
        let kb = KnowledgeBase::inspection_default();
        let bytes = encode(&[], &kb, KIND_HEARTBEAT).unwrap();
        assert_eq!(bytes.len(), HEADER_LEN);
        assert!(decode(&bytes, &kb).unwrap().fields.is_empty());
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let kb = KnowledgeBase::inspection_default();
        let bytes = encode(&road(0, 0, 0), &kb, KIND_ROAD_QUALITY).unwrap();
        let mut newer = kb.clone();
        newer.version = 2;
        assert!(matches!(
            decode(&bytes, &newer),
            Err(CodecError::KnowledgeBaseMismatch { found_version: 1, expected_version: 2, .. })
        ));
    }

    #[test]
    fn truncated_and_trailing_bytes_are_malformed() {
        let kb = KnowledgeBase::inspection_default();
        let bytes = encode(&road(1, 2, 3), &kb, KIND_ROAD_QUALITY).unwrap();
        assert!(matches!(
            decode(&bytes[..10], &kb),
            Err(CodecError::MalformedPayload(_))
        ));
        assert!(matches!(decode(&bytes[..3], &kb), Err(CodecError::MalformedPayload(_))));
        let mut long = bytes.clone();
        long.push(0);
        assert!(matches!(decode(&long, &kb), Err(CodecError::MalformedPayload(_))));
    }

    #[test]
    fn schema_violation_names_the_field() {
        let kb = KnowledgeBase::inspection_default();
        let mut f = road(1, 2, 3);
        f[1].1 = Value::U16(2);
        match encode(&f, &kb, KIND_ROAD_QUALITY) {
            Err(CodecError::SchemaViolation { field, .. }) => assert_eq!(field, "friction_level"),
            other => panic!("{other:?}"),
        }
        f.truncate(2);
        match encode(&f, &kb, KIND_ROAD_QUALITY) {
            Err(CodecError::SchemaViolation { field, .. }) => assert_eq!(field, "friction_level"),
            other => panic!("{other:?}"),
        }
        let mut extra = road(1, 2, 3);
        extra.push(("bogus".into(), Value::U8(0)));
        match encode(&extra, &kb, KIND_ROAD_QUALITY) {
            Err(CodecError::SchemaViolation { field, .. }) => assert_eq!(field, "bogus"),
            other => panic!("{other:?}"),
        }
        assert_eq!(encode(&[], &kb, 999), Err(CodecError::UnknownKind(999)));
    }

    #[test]
    fn floats_survive_bit_exact() {
        let kb = KnowledgeBase::inspection_default();
        let fields = vec![
            ("x_m".into(), Value::F32(-0.0)),
            ("y_m".into(), Value::F32(f32::MIN_POSITIVE)),
            ("diameter_cm".into(), Value::U16(65535)),
            ("confidence_pct".into(), Value::U8(99)),
        ];
        let bytes = encode(&fields, &kb, KIND_POTHOLE_DETECTION).unwrap();
        let back = decode(&bytes, &kb).unwrap();
        match back.fields[0].1 {
            Value::F32(v) => assert!(v == 0.0 && v.is_sign_negative()),
            _ => unreachable!(),
        }
        assert_eq!(back.fields[1..], fields[1..]);
    }
}
