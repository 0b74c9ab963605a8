//! Semantic communication: schema-driven compact encoding over a shared
//! knowledge base, and raw-vs-semantic bandwidth accounting.
//!
//! # Payload layout
//!
//! ```text
//! offset  size  field
//! 0       4     kb_id        (u32, big-endian)
//! 4       2     kb_version   (u16, big-endian)
//! 6       2     kind         (u16, big-endian)
//! 8       ...   field values in schema order, each big-endian at its
//!               declared width (bool is one byte, 0 or 1)
//! ```
//!
//! There is no padding and no length prefix; the payload size is exactly
//! `8 + Σ width` for the message kind.

mod bandwidth;
mod codec;
mod kb;

pub use bandwidth::{
    bandwidth_table, default_profiles, raw_bandwidth, reduction_ratio, semantic_bandwidth,
    BandwidthRow, MessageRate, Reduction, SemanticConfig, TransmissionMode, VideoProfile,
};
pub use codec::{decode, encode, CodecError, HEADER_LEN};
pub use kb::{
    FieldDescriptor, FieldEncoding, KbRegistry, KnowledgeBase, MessageSchema, RegistryError,
    SemanticMessage, Value, KIND_FAULT_DETECTION, KIND_HEARTBEAT, KIND_POTHOLE_DETECTION,
    KIND_ROAD_QUALITY, KIND_TELEMETRY,
};
