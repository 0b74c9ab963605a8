//! C bindings for swarmnet.
//!
//! Every fallible function returns a [`SwarmnetStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`swarmnet_last_error`]. Handles are opaque and must be
//! released with their matching `_free` function; strings and byte buffers
//! returned by the library are released with [`swarmnet_string_free`] and
//! [`swarmnet_bytes_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use swarmnet::mission::{self, MissionDefaults, MissionSpec};
use swarmnet::netperf::{self, CollisionMode, Table1Row};
use swarmnet::planner::AllocationPolicy;
use swarmnet::semcomm::{self, CodecError, KnowledgeBase, Value, VideoProfile};
use swarmnet::sim::{self, FleetSpec, InferenceTable, SimConfig, TaskKind};
use swarmnet::{GeoPoint, NetworkKind, Polygon, SwarmConfig};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmnetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidUtf8 = 3,
    ParseError = 4,
    KnowledgeBaseMismatch = 5,
    CodecError = 6,
    SimulationError = 7,
    OutOfBounds = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmnetNetwork {
    FiveG = 0,
    SixG = 1,
}

impl From<SwarmnetNetwork> for NetworkKind {
    fn from(n: SwarmnetNetwork) -> Self {
        match n {
            SwarmnetNetwork::FiveG => NetworkKind::FiveG,
            SwarmnetNetwork::SixG => NetworkKind::SixG,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmnetCollisionMode {
    Calibrated = 0,
    Literal = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmnetTask {
    RoadQualityClassify = 0,
    PotholeDetect = 1,
    SceneClassify = 2,
    ThermalScan = 3,
    LidarMap = 4,
}

impl From<SwarmnetTask> for TaskKind {
    fn from(t: SwarmnetTask) -> Self {
        match t {
            SwarmnetTask::RoadQualityClassify => TaskKind::RoadQualityClassify,
            SwarmnetTask::PotholeDetect => TaskKind::PotholeDetect,
            SwarmnetTask::SceneClassify => TaskKind::SceneClassify,
            SwarmnetTask::ThermalScan => TaskKind::ThermalScan,
            SwarmnetTask::LidarMap => TaskKind::LidarMap,
        }
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmnetPolicy {
    EnergyAware = 0,
    Static = 1,
}

/// One row of the network comparison table. Detection fields are zero when
/// `has_detection` is 0.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwarmnetTable1Row {
    pub drones: u32,
    pub network: SwarmnetNetwork,
    pub cr_mean: f64,
    pub cr_std: f64,
    pub cr_ci_low: f64,
    pub cr_ci_high: f64,
    pub has_detection: u8,
    pub dt_mean: f64,
    pub dt_std: f64,
    pub dt_ci_low: f64,
    pub dt_ci_high: f64,
}

/// Opaque result of [`swarmnet_table1_run`].
pub struct SwarmnetTable1 {
    rows: Vec<Table1Row>,
}

/// Opaque knowledge base.
pub struct SwarmnetKb {
    kb: KnowledgeBase,
}

/// Opaque semantic message under construction or after decoding.
pub struct SwarmnetMessage {
    kind: u16,
    fields: Vec<(String, Value)>,
    names: Vec<CString>,
}

/// Opaque validated mission.
pub struct SwarmnetMission {
    spec: MissionSpec,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

struct Failure(SwarmnetStatus, String);

impl Failure {
    fn new(status: SwarmnetStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

type FfiResult = Result<(), Failure>;

fn guard(f: impl FnOnce() -> FfiResult) -> SwarmnetStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwarmnetStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SwarmnetStatus::Panic
        }
    }
}

fn invalid(msg: impl ToString) -> Failure {
    Failure::new(SwarmnetStatus::InvalidArgument, msg)
}

unsafe fn out<'a, T>(p: *mut T, name: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(SwarmnetStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn handle<'a, T>(p: *const T, name: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(SwarmnetStatus::NullPointer, format!("`{name}` is null")))
}

unsafe fn text<'a>(p: *const c_char, name: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SwarmnetStatus::NullPointer, format!("`{name}` is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(SwarmnetStatus::InvalidUtf8, format!("`{name}`: {e}")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|e| Failure::new(SwarmnetStatus::InvalidArgument, e))
}

fn codec_failure(e: CodecError) -> Failure {
    match e {
        CodecError::KnowledgeBaseMismatch { .. } => {
            Failure::new(SwarmnetStatus::KnowledgeBaseMismatch, e)
        }
        other => Failure::new(SwarmnetStatus::CodecError, other),
    }
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn swarmnet_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn swarmnet_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `data`/`len` must be null/0 or a buffer returned by this library.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_bytes_free(data: *mut u8, len: usize) {
    if !data.is_null() {
        drop(Box::from_raw(ptr::slice_from_raw_parts_mut(data, len)));
    }
}

/// Collision rate for `n_drones` on the built-in network profile: a
/// percentage in calibrated mode, a probability in literal mode.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_collision_prob(
    n_drones: u32,
    network: SwarmnetNetwork,
    mode: SwarmnetCollisionMode,
    out_value: *mut f64,
) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_value, "out_value")?;
        let mode = match mode {
            SwarmnetCollisionMode::Calibrated => CollisionMode::TableCalibrated,
            SwarmnetCollisionMode::Literal => CollisionMode::LiteralFormula,
        };
        let profile = NetworkKind::from(network).profile();
        let est = netperf::collision_prob(&profile, &SwarmConfig::with_drones(n_drones), mode)
            .map_err(invalid)?;
        *o = est.value;
        Ok(())
    })
}

/// Closed-form expected detection time in milliseconds.
///
/// # Safety
/// `out_ms` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_expected_detection_time(
    n_drones: u32,
    network: SwarmnetNetwork,
    out_ms: *mut f64,
) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_ms, "out_ms")?;
        let swarm = SwarmConfig::with_drones(n_drones);
        swarm.validate().map_err(invalid)?;
        *o = netperf::expected_detection_time_ms(&NetworkKind::from(network).profile(), &swarm);
        Ok(())
    })
}

/// Onboard inference delay of `task` with the default latency table.
///
/// # Safety
/// `out_ms` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_inference_delay(task: SwarmnetTask, out_ms: *mut f64) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_ms, "out_ms")?;
        *o = sim::inference_delay(task.into(), &InferenceTable::default()).map_err(invalid)?;
        Ok(())
    })
}

/// Raw video bit rate in bits per second.
///
/// # Safety
/// `out_bps` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_raw_bandwidth(
    width_px: u32,
    height_px: u32,
    fps: f64,
    bits_per_pixel: f64,
    out_bps: *mut f64,
) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_bps, "out_bps")?;
        let profile = VideoProfile::new(width_px, height_px, fps, bits_per_pixel);
        profile.validate().map_err(invalid)?;
        *o = semcomm::raw_bandwidth(&profile);
        Ok(())
    })
}

/// Semantic message bit rate in bits per second.
///
/// # Safety
/// `out_bps` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_semantic_bandwidth(
    message_bytes: f64,
    rate_hz: f64,
    out_bps: *mut f64,
) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_bps, "out_bps")?;
        if !(message_bytes > 0.0 && rate_hz > 0.0 && message_bytes.is_finite() && rate_hz.is_finite()) {
            return Err(invalid("message size and rate must be positive and finite"));
        }
        *o = semcomm::semantic_bandwidth(message_bytes, rate_hz);
        Ok(())
    })
}

/// Run the ten-row network comparison.
///
/// # Safety
/// `out_table` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_table1_run(
    seed: u64,
    iterations: usize,
    out_table: *mut *mut SwarmnetTable1,
) -> SwarmnetStatus {
    guard(|| {
        let o = out(out_table, "out_table")?;
        let rows = netperf::table1_report(seed, iterations).map_err(invalid)?;
        *o = Box::into_raw(Box::new(SwarmnetTable1 { rows }));
        Ok(())
    })
}

/// # Safety
/// `table` must be a live handle from [`swarmnet_table1_run`].
#[no_mangle]
pub unsafe extern "C" fn swarmnet_table1_len(table: *const SwarmnetTable1) -> usize {
    table.as_ref().map_or(0, |t| t.rows.len())
}

/// # Safety
/// `table` must be a live handle and `out_row` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_table1_row(
    table: *const SwarmnetTable1,
    index: usize,
    out_row: *mut SwarmnetTable1Row,
) -> SwarmnetStatus {
    guard(|| {
        let t = handle(table, "table")?;
        let o = out(out_row, "out_row")?;
        let r = t.rows.get(index).ok_or_else(|| {
            Failure::new(
                SwarmnetStatus::OutOfBounds,
                format!("row {index} of {}", t.rows.len()),
            )
        })?;
        let d = r.detection.as_ref();
        let dt = |f: fn(&swarmnet::stats::TrialStats) -> f64| d.map_or(0.0, f);
        *o = SwarmnetTable1Row {
            drones: r.drones,
            network: match r.network {
                NetworkKind::FiveG => SwarmnetNetwork::FiveG,
                NetworkKind::SixG => SwarmnetNetwork::SixG,
            },
            cr_mean: r.collision.mean,
            cr_std: r.collision.std,
            cr_ci_low: r.collision.ci_low,
            cr_ci_high: r.collision.ci_high,
            has_detection: u8::from(d.is_some()),
            dt_mean: dt(|s| s.mean),
            dt_std: dt(|s| s.std),
            dt_ci_low: dt(|s| s.ci_low),
            dt_ci_high: dt(|s| s.ci_high),
        };
        Ok(())
    })
}

/// # Safety
/// `table` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_table1_free(table: *mut SwarmnetTable1) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Built-in inspection knowledge base.
#[no_mangle]
pub extern "C" fn swarmnet_kb_default() -> *mut SwarmnetKb {
    Box::into_raw(Box::new(SwarmnetKb {
        kb: KnowledgeBase::inspection_default(),
    }))
}

/// Copy of `kb` carrying a different version number.
///
/// # Safety
/// `kb` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_kb_with_version(kb: *const SwarmnetKb, version: u16) -> *mut SwarmnetKb {
    match kb.as_ref() {
        Some(k) => {
            let mut kb = k.kb.clone();
            kb.version = version;
            Box::into_raw(Box::new(SwarmnetKb { kb }))
        }
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `kb` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_kb_free(kb: *mut SwarmnetKb) {
    if !kb.is_null() {
        drop(Box::from_raw(kb));
    }
}

/// Empty message of `kind`; fill it with [`swarmnet_message_set`].
#[no_mangle]
pub extern "C" fn swarmnet_message_new(kind: u16) -> *mut SwarmnetMessage {
    Box::into_raw(Box::new(SwarmnetMessage {
        kind,
        fields: Vec::new(),
        names: Vec::new(),
    }))
}

/// Append a field. The value is converted to the schema's encoding; integer
/// fields reject fractional or out-of-range values.
///
/// # Safety
/// `kb` and `msg` must be live handles and `name` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_set(
    kb: *const SwarmnetKb,
    msg: *mut SwarmnetMessage,
    name: *const c_char,
    value: f64,
) -> SwarmnetStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let m = out(msg, "msg")?;
        let name = text(name, "name")?;
        let schema = kb
            .schema(m.kind)
            .ok_or_else(|| codec_failure(CodecError::UnknownKind(m.kind)))?;
        let field = schema
            .fields
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| invalid(format!("kind {} has no field `{name}`", m.kind)))?;
        let v = Value::from_f64(field.encoding, value).ok_or_else(|| {
            invalid(format!("{value} does not fit field `{name}` ({:?})", field.encoding))
        })?;
        m.fields.push((name.to_owned(), v));
        m.names.push(CString::new(name).map_err(invalid)?);
        Ok(())
    })
}

/// # Safety
/// `msg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_kind(msg: *const SwarmnetMessage) -> u16 {
    msg.as_ref().map_or(0, |m| m.kind)
}

/// # Safety
/// `msg` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_field_count(msg: *const SwarmnetMessage) -> usize {
    msg.as_ref().map_or(0, |m| m.fields.len())
}

/// Field `index` of `msg`. `out_name` stays valid while `msg` lives.
///
/// # Safety
/// `msg` must be a live handle; out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_field(
    msg: *const SwarmnetMessage,
    index: usize,
    out_name: *mut *const c_char,
    out_value: *mut f64,
) -> SwarmnetStatus {
    guard(|| {
        let m = handle(msg, "msg")?;
        let n = out(out_name, "out_name")?;
        let v = out(out_value, "out_value")?;
        let (_, value) = m.fields.get(index).ok_or_else(|| {
            Failure::new(SwarmnetStatus::OutOfBounds, format!("field {index} of {}", m.fields.len()))
        })?;
        *n = m.names[index].as_ptr();
        *v = value.as_f64();
        Ok(())
    })
}

/// Encode `msg` under `kb`. Free the buffer with [`swarmnet_bytes_free`].
///
/// # Safety
/// Handles must be live and out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_encode(
    kb: *const SwarmnetKb,
    msg: *const SwarmnetMessage,
    out_data: *mut *mut u8,
    out_len: *mut usize,
) -> SwarmnetStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let m = handle(msg, "msg")?;
        let d = out(out_data, "out_data")?;
        let l = out(out_len, "out_len")?;
        let bytes = semcomm::encode(&m.fields, kb, m.kind).map_err(codec_failure)?;
        *l = bytes.len();
        *d = Box::into_raw(bytes.into_boxed_slice()).cast();
        Ok(())
    })
}

/// Decode `len` bytes under `kb`. A header naming another knowledge base or
/// version fails with `KnowledgeBaseMismatch`.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out_msg` must be valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_decode(
    kb: *const SwarmnetKb,
    data: *const u8,
    len: usize,
    out_msg: *mut *mut SwarmnetMessage,
) -> SwarmnetStatus {
    guard(|| {
        let kb = &handle(kb, "kb")?.kb;
        let o = out(out_msg, "out_msg")?;
        if data.is_null() && len > 0 {
            return Err(Failure::new(SwarmnetStatus::NullPointer, "`data` is null"));
        }
        let bytes = if len == 0 { &[][..] } else { std::slice::from_raw_parts(data, len) };
        let msg = semcomm::decode(bytes, kb).map_err(codec_failure)?;
        let names = msg
            .fields
            .iter()
            .map(|(n, _)| CString::new(n.as_str()).map_err(invalid))
            .collect::<Result<_, _>>()?;
        *o = Box::into_raw(Box::new(SwarmnetMessage {
            kind: msg.kind,
            fields: msg.fields,
            names,
        }));
        Ok(())
    })
}

/// # Safety
/// `msg` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_message_free(msg: *mut SwarmnetMessage) {
    if !msg.is_null() {
        drop(Box::from_raw(msg));
    }
}

/// Mission from a free-text request. When the request names no area, a
/// rectangle of `width_m` by `height_m` at the origin is used; pass zeros to
/// require the request to name one.
///
/// # Safety
/// `request` must be a NUL-terminated string and `out_mission` valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_mission_parse(
    request: *const c_char,
    width_m: f64,
    height_m: f64,
    out_mission: *mut *mut SwarmnetMission,
) -> SwarmnetStatus {
    guard(|| {
        let req = text(request, "request")?;
        let o = out(out_mission, "out_mission")?;
        let defaults = MissionDefaults {
            perimeter: (width_m > 0.0 && height_m > 0.0)
                .then(|| Polygon::rectangle(GeoPoint::new(0.0, 0.0), width_m, height_m)),
            ..MissionDefaults::default()
        };
        let spec = mission::parse_request(req, &defaults)
            .map_err(|e| Failure::new(SwarmnetStatus::ParseError, e))?;
        *o = Box::into_raw(Box::new(SwarmnetMission { spec }));
        Ok(())
    })
}

/// Parse and validate a mission document.
///
/// # Safety
/// `document` must be a NUL-terminated string and `out_mission` valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_mission_from_document(
    document: *const c_char,
    out_mission: *mut *mut SwarmnetMission,
) -> SwarmnetStatus {
    guard(|| {
        let doc = text(document, "document")?;
        let o = out(out_mission, "out_mission")?;
        let spec = mission::deserialize(doc).map_err(|e| Failure::new(SwarmnetStatus::ParseError, e))?;
        *o = Box::into_raw(Box::new(SwarmnetMission { spec }));
        Ok(())
    })
}

/// Mission document text. Free with [`swarmnet_string_free`].
///
/// # Safety
/// `mission` must be a live handle and `out_document` valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_mission_to_document(
    mission: *const SwarmnetMission,
    out_document: *mut *mut c_char,
) -> SwarmnetStatus {
    guard(|| {
        let m = handle(mission, "mission")?;
        let o = out(out_document, "out_document")?;
        *o = to_c_string(mission::serialize(&m.spec).map_err(invalid)?)?;
        Ok(())
    })
}

/// Simulate `mission` with a default fleet of `n_drones` and return the
/// outcome document. Free it with [`swarmnet_string_free`].
///
/// # Safety
/// `mission` must be a live handle and `out_document` valid.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_simulate(
    mission: *const SwarmnetMission,
    n_drones: u32,
    network: SwarmnetNetwork,
    policy: SwarmnetPolicy,
    seed: u64,
    out_document: *mut *mut c_char,
) -> SwarmnetStatus {
    guard(|| {
        let m = handle(mission, "mission")?;
        let o = out(out_document, "out_document")?;
        let fleet = FleetSpec {
            n_drones,
            ..FleetSpec::default()
        };
        fleet.validate().map_err(invalid)?;
        let policy = match policy {
            SwarmnetPolicy::EnergyAware => AllocationPolicy::EnergyAware,
            SwarmnetPolicy::Static => AllocationPolicy::Static,
        };
        let sim_failure = |e: sim::SimError| Failure::new(SwarmnetStatus::SimulationError, e);
        let outcome = sim::run_mission(
            &m.spec,
            &fleet.sample(seed),
            &NetworkKind::from(network).profile(),
            policy,
            seed,
            &SimConfig::default(),
        )
        .map_err(sim_failure)?;
        *o = to_c_string(outcome.to_document().map_err(sim_failure)?)?;
        Ok(())
    })
}

/// # Safety
/// `mission` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn swarmnet_mission_free(mission: *mut SwarmnetMission) {
    if !mission.is_null() {
        drop(Box::from_raw(mission));
    }
}
