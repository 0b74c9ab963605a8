use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::event::{EventKind, EventQueue};
use super::faults::{fault_process, FaultInjection};
use super::network::{transmit, Attempt, RetryPolicy};
use super::SimError;
use crate::document::{read_document, write_document};
use crate::geometry::GeoPoint;
use crate::mission::{validate, MissionSpec, MissionType};
use crate::planner::{
    assign_roles, needs_compute, path_length, plan_coverage, reroute_to_charging,
    AllocationPolicy, DroneState, PlanWarning, PlannerConfig, Role, tasks_for,
};
use crate::rng::{derive_stream, RngStream};
use crate::semcomm::{
    encode, KnowledgeBase, TransmissionMode, Value, VideoProfile, KIND_FAULT_DETECTION,
    KIND_ROAD_QUALITY, KIND_TELEMETRY,
};
use crate::types::{NetworkKind, NetworkProfile, SwarmConfig};
use crate::ParamError;

use super::TaskKind;

pub const OUTCOME_SCHEMA: &str = "swarmnet.outcome";

/// Positions closer than this are treated as the same place.
const SAME_PLACE_M: f64 = 1e-6;
/// Battery checks fire this long after the predicted crossing so the level
/// is strictly past the threshold.
const CHECK_SLACK_MS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SimConfig {
    pub planner: PlannerConfig,
    /// `n_max` of the congestion law used for per-message delay.
    pub max_swarm: u32,
    /// Mean faults per mission period (the duration cap).
    pub fault_rate_mean: f64,
    pub sensor_range_m: f64,
    pub transmission: TransmissionMode,
    /// Frame geometry used for raw transmission.
    pub camera: VideoProfile,
    pub retry: RetryPolicy,
    pub charge_power_w: f64,
    /// Charging stops at this battery level, percent.
    pub charge_target_pct: f64,
    /// Keep re-flying the coverage until the duration cap.
    pub patrol: bool,
    /// Forward through an on-station relay drone when one exists.
    pub route_via_relay: bool,
    /// Share of energy spent on communication quoted as motivation for
    /// semantic transmission; reported next to the simulated share, never
    /// used in the dynamics.
    pub reference_comm_share: f64,
    pub max_events: u64,
    /// Record every processed event in [`SimOutcome::trace`].
    pub trace: bool,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            planner: PlannerConfig::default(),
            max_swarm: SwarmConfig::DEFAULT_MAX_SWARM,
            fault_rate_mean: SwarmConfig::DEFAULT_FAULT_RATE_MEAN,
            sensor_range_m: 10.0,
            transmission: TransmissionMode::Semantic,
            camera: VideoProfile::new(1280, 720, 30.0, 24.0),
            retry: RetryPolicy::default(),
            charge_power_w: 1000.0,
            charge_target_pct: 100.0,
            patrol: false,
            route_via_relay: true,
            reference_comm_share: 0.85,
            max_events: 50_000_000,
            trace: false,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        self.planner.energy.validate()?;
        self.camera.validate()?;
        let positive = [
            ("cruise_speed_mps", self.planner.cruise_speed_mps),
            ("capture_interval_ms", self.planner.capture_interval_ms),
            ("spacing_m", self.planner.spacing_m),
            ("charge_power_w", self.charge_power_w),
            ("retry.timeout_factor", self.retry.timeout_factor),
        ];
        for (name, v) in positive {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ParamError::out_of_range(name, "positive and finite", v).into());
            }
        }
        if !(self.sensor_range_m >= 0.0 && self.sensor_range_m.is_finite()) {
            return Err(ParamError::out_of_range(
                "sensor_range_m",
                "non-negative and finite",
                self.sensor_range_m,
            )
            .into());
        }
        if !(self.fault_rate_mean >= 0.0 && self.fault_rate_mean.is_finite()) {
            return Err(ParamError::out_of_range(
                "fault_rate_mean",
                "non-negative and finite",
                self.fault_rate_mean,
            )
            .into());
        }
        if self.max_swarm < 1 {
            return Err(ParamError::out_of_range("max_swarm", "at least 1", 0.0).into());
        }
        let t = self.charge_target_pct;
        if !(t > self.planner.low_battery_pct && t <= 100.0) {
            return Err(ParamError::out_of_range(
                "charge_target_pct",
                "above the low-battery threshold and at most 100",
                t,
            )
            .into());
        }
        Ok(())
    }
}

/// Energy consumed by category, joules.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub cruise_j: f64,
    pub hover_j: f64,
    pub compute_j: f64,
    pub tx_j: f64,
}

impl EnergyLedger {
    pub fn total(&self) -> f64 {
        self.cruise_j + self.hover_j + self.compute_j + self.tx_j
    }

    fn add(&mut self, other: &EnergyLedger) {
        self.cruise_j += other.cruise_j;
        self.hover_j += other.hover_j;
        self.compute_j += other.compute_j;
        self.tx_j += other.tx_j;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndReason {
    CoverageComplete,
    DurationCap,
    /// No drone left that can still perform sweep work.
    SwarmExhausted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroneOutcome {
    pub drone_id: u32,
    pub final_role: Role,
    pub initial_j: f64,
    pub final_j: f64,
    pub charged_j: f64,
    pub ledger: EnergyLedger,
    pub distance_m: f64,
    pub charge_sessions: u32,
    pub depleted_at_ms: Option<f64>,
}

impl DroneOutcome {
    /// Battery drop net of charging; equals `ledger.total()` up to rounding.
    pub fn net_drop_j(&self) -> f64 {
        self.initial_j + self.charged_j - self.final_j
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultRecord {
    pub fault_id: u32,
    pub kind: String,
    pub position: GeoPoint,
    pub occur_ms: f64,
    /// Placeholder level; no severity model is applied.
    pub severity: u8,
    pub detected: bool,
    /// Capture time of the frame whose message confirmed the fault.
    pub pass_ms: Option<f64>,
    pub detected_ms: Option<f64>,
    pub latency_ms: Option<f64>,
    pub detected_by: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MessageStatus {
    InFlight,
    Delivered,
    /// Retry cap exhausted on some hop.
    Lost,
    /// A sender on the path ran out of energy.
    SenderDepleted,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MessageRecord {
    pub message_id: u64,
    pub source_drone: u32,
    pub kind: String,
    pub bits: u64,
    pub created_ms: f64,
    pub relayed: bool,
    pub attempts: u32,
    pub status: MessageStatus,
    pub delivered_ms: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MessageSummary {
    pub sent: u64,
    pub delivered: u64,
    pub lost: u64,
    pub retransmissions: u64,
    pub bits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub time_ms: f64,
    pub kind: EventKind,
    pub subject: u64,
    pub scheduled_at_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimOutcome {
    pub seed: u64,
    pub policy: AllocationPolicy,
    pub network: NetworkKind,
    pub transmission: TransmissionMode,
    pub end_reason: EndReason,
    pub operational_time_ms: f64,
    pub coverage_fraction: f64,
    pub coverage_passes: u32,
    pub events_processed: u64,
    pub reference_comm_share: f64,
    pub warnings: Vec<PlanWarning>,
    pub messages: MessageSummary,
    pub drones: Vec<DroneOutcome>,
    pub faults: Vec<FaultRecord>,
    /// Exported separately, see [`message_log_csv`].
    #[serde(skip)]
    pub message_log: Vec<MessageRecord>,
    #[serde(skip)]
    pub trace: Vec<TraceEntry>,
}

impl SimOutcome {
    pub fn total_ledger(&self) -> EnergyLedger {
        let mut sum = EnergyLedger::default();
        for d in &self.drones {
            sum.add(&d.ledger);
        }
        sum
    }

    /// Fraction of consumed energy spent transmitting.
    pub fn tx_share(&self) -> f64 {
        let l = self.total_ledger();
        if l.total() > 0.0 {
            l.tx_j / l.total()
        } else {
            0.0
        }
    }

    pub fn faults_detected(&self) -> usize {
        self.faults.iter().filter(|f| f.detected).count()
    }

    pub fn energy_shortfall_warnings(&self) -> usize {
        self.warnings
            .iter()
            .filter(|w| matches!(w, PlanWarning::EnergyShortfall { .. }))
            .count()
    }

    pub fn to_document(&self) -> Result<String, SimError> {
        Ok(write_document(OUTCOME_SCHEMA, self)?)
    }

    /// Parse an outcome document. The message log and trace are not part of
    /// the document and come back empty.
    pub fn from_document(text: &str) -> Result<SimOutcome, SimError> {
        Ok(read_document(OUTCOME_SCHEMA, text)?)
    }
}

/// The message log as comma-separated rows with a header.
pub fn message_log_csv(outcome: &SimOutcome) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for m in &outcome.message_log {
        w.serialize(m)?;
    }
    if outcome.message_log.is_empty() {
        w.write_record([
            "message_id", "source_drone", "kind", "bits", "created_ms", "relayed", "attempts",
            "status", "delivered_ms",
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, Copy)]
struct Waypoint {
    p: GeoPoint,
    /// The leg ending here is sweep work.
    sweep: bool,
}

/// A chunk of sweep work: reached by transit, then flown leg by leg.
fn chunk_from(points: &[GeoPoint]) -> Vec<Waypoint> {
    points
        .iter()
        .enumerate()
        .map(|(i, &p)| Waypoint { p, sweep: i > 0 })
        .collect()
}

fn has_sweep(route: &VecDeque<Waypoint>) -> bool {
    route.iter().any(|w| w.sweep)
}

#[derive(Debug, Clone, Copy)]
enum Activity {
    Landed,
    Hover,
    Moving {
        from: GeoPoint,
        to: GeoPoint,
        depart_ms: f64,
        arrive_ms: f64,
        sweep: bool,
    },
    Charging,
}

#[derive(Debug)]
struct DroneRt {
    id: u32,
    role: Role,
    tasks: Vec<TaskKind>,
    pos: GeoPoint,
    battery_j: f64,
    capacity_j: f64,
    initial_j: f64,
    activity: Activity,
    route: VecDeque<Waypoint>,
    home_route: Vec<Waypoint>,
    charging_target: Option<GeoPoint>,
    last_ms: f64,
    ledger: EnergyLedger,
    charged_j: f64,
    distance_m: f64,
    charge_sessions: u32,
    depleted_at: Option<f64>,
    /// Guards ArriveWaypoint, StartCharging and ChargeComplete.
    motion_epoch: u64,
    /// Guards the capture chain.
    role_epoch: u64,
    check_epoch: u64,
    replan_pending: bool,
    last_capture_pos: GeoPoint,
}

impl DroneRt {
    fn alive(&self) -> bool {
        self.depleted_at.is_none()
    }

    fn pct(&self) -> f64 {
        100.0 * self.battery_j / self.capacity_j
    }
}

#[derive(Debug)]
struct FaultState {
    inj: FaultInjection,
    active: bool,
    in_flight: u32,
    detected: Option<(f64, f64, u32)>,
    pending: Option<(f64, u32)>,
}

#[derive(Debug)]
struct Frame {
    drone: usize,
    pass_ms: f64,
    pos: GeoPoint,
    faults: Vec<u32>,
}

#[derive(Debug)]
struct Msg {
    record: MessageRecord,
    source: usize,
    sender: usize,
    relay: Option<usize>,
    at_relay: bool,
    hop_attempts: u32,
    pass_ms: f64,
    faults: Vec<u32>,
}

struct Engine<'a> {
    spec: &'a MissionSpec,
    cfg: &'a SimConfig,
    policy: AllocationPolicy,
    profile: NetworkProfile,
    swarm: SwarmConfig,
    kb: KnowledgeBase,
    q: EventQueue,
    drones: Vec<DroneRt>,
    faults: Vec<FaultState>,
    frames: Vec<Frame>,
    msgs: Vec<Msg>,
    pool: VecDeque<Vec<Waypoint>>,
    pass_chunks: Vec<Vec<GeoPoint>>,
    abandoned_m: f64,
    total_sweep_m: f64,
    swept_m: f64,
    passes: u32,
    relay_at: GeoPoint,
    server_delay_ms: f64,
    net_rng: RngStream,
    content_rng: RngStream,
    warnings: Vec<PlanWarning>,
    trace: Vec<TraceEntry>,
    ended: Option<(f64, EndReason)>,
    events: u64,
    laps: Vec<u32>,
}

/// Run one mission to completion.
///
/// The fleet is planned with `policy`, then simulated event by event until
/// coverage completes (unless patrolling), the duration cap passes, or no
/// drone can do sweep work any more. All randomness derives from `seed`.
pub fn run_mission(
    spec: &MissionSpec,
    drones: &[DroneState],
    profile: &NetworkProfile,
    policy: AllocationPolicy,
    seed: u64,
    config: &SimConfig,
) -> Result<SimOutcome, SimError> {
    let violations = validate(spec);
    if !violations.is_empty() {
        return Err(crate::planner::PlannerError::InvalidMission(violations).into());
    }
    config.validate()?;
    profile.validate()?;
    let mut engine = Engine::new(spec, drones, profile, policy, seed, config)?;
    engine.run()?;
    Ok(engine.finish(seed))
}

impl<'a> Engine<'a> {
    fn new(
        spec: &'a MissionSpec,
        fleet: &[DroneState],
        profile: &NetworkProfile,
        policy: AllocationPolicy,
        seed: u64,
        cfg: &'a SimConfig,
    ) -> Result<Self, SimError> {
        let plan = assign_roles(fleet, spec, policy, &cfg.planner)?;
        let heavy = tasks_for(Role::Computer, spec);
        let mut server_delay_ms = 0.0;
        for t in heavy.iter().chain(tasks_for(Role::Collector, spec).iter()) {
            cfg.planner.inference.delay_ms(*t)?;
        }
        for t in &heavy {
            server_delay_ms += cfg.planner.inference.delay_ms(*t)?;
        }

        let mut swarm = SwarmConfig::with_drones(fleet.len() as u32);
        swarm.max_swarm = cfg.max_swarm;

        let mut pass_chunks: Vec<Vec<GeoPoint>> = Vec::new();
        let mut drones = Vec::with_capacity(fleet.len());
        let mut sorted: Vec<&DroneState> = fleet.iter().collect();
        sorted.sort_by_key(|d| d.drone_id);
        for d in sorted {
            let a = plan.assignment(d.drone_id).expect("planner assigns every drone");
            let route: Vec<Waypoint> = match a.role {
                Role::Collector | Role::Computer => {
                    if a.waypoints.len() >= 2 {
                        pass_chunks.push(a.waypoints.clone());
                    }
                    chunk_from(&a.waypoints)
                }
                _ => a
                    .waypoints
                    .iter()
                    .map(|&p| Waypoint { p, sweep: false })
                    .collect(),
            };
            let battery_j = d.available_energy_j();
            drones.push(DroneRt {
                id: d.drone_id,
                role: a.role,
                tasks: a.tasks.clone(),
                pos: d.position,
                battery_j,
                capacity_j: d.battery_capacity_j,
                initial_j: battery_j,
                activity: Activity::Landed,
                home_route: route.clone(),
                route: route.into(),
                charging_target: a.charging_target,
                last_ms: 0.0,
                ledger: EnergyLedger::default(),
                charged_j: 0.0,
                distance_m: 0.0,
                charge_sessions: 0,
                depleted_at: None,
                motion_epoch: 0,
                role_epoch: 0,
                check_epoch: 0,
                replan_pending: false,
                last_capture_pos: d.position,
            });
        }
        let mut pool: VecDeque<Vec<Waypoint>> = VecDeque::new();
        for tail in &plan.unassigned {
            if tail.len() >= 2 {
                pass_chunks.push(tail.clone());
                pool.push_back(chunk_from(tail));
            }
        }
        if pass_chunks.is_empty() {
            // Nobody was healthy enough to sweep at planning time; the work
            // waits in the pool for recharged drones.
            let cov = plan_coverage(&spec.perimeter, fleet.len(), cfg.planner.spacing_m)?;
            for s in cov.sweeps.iter().filter(|s| s.waypoints.len() >= 2) {
                pass_chunks.push(s.waypoints.clone());
                pool.push_back(chunk_from(&s.waypoints));
            }
        }
        let total_sweep_m = pass_chunks.iter().map(|c| path_length(c)).sum();

        let period_ms = spec.constraints.max_duration_min * 60_000.0;
        let mut fault_rng = derive_stream(seed, &["faults".into()]);
        let injected =
            fault_process(&spec.perimeter, period_ms, cfg.fault_rate_mean, &mut fault_rng)?;
        let faults = injected
            .into_iter()
            .map(|inj| FaultState {
                inj,
                active: false,
                in_flight: 0,
                detected: None,
                pending: None,
            })
            .collect();

        Ok(Engine {
            spec,
            cfg,
            policy,
            profile: *profile,
            swarm,
            kb: KnowledgeBase::inspection_default(),
            q: EventQueue::new(),
            drones,
            faults,
            frames: Vec::new(),
            msgs: Vec::new(),
            pool,
            pass_chunks,
            abandoned_m: 0.0,
            total_sweep_m,
            swept_m: 0.0,
            passes: 0,
            relay_at: spec.perimeter.centroid().lerp(&cfg.planner.base_station, 0.5),
            server_delay_ms,
            net_rng: derive_stream(seed, &["network".into()]),
            content_rng: derive_stream(seed, &["content".into()]),
            warnings: plan.warnings,
            trace: Vec::new(),
            ended: None,
            events: 0,
            laps: vec![0; fleet.len()],
        })
    }

    fn energy_aware(&self) -> bool {
        self.policy == AllocationPolicy::EnergyAware
    }

    fn has_stations(&self) -> bool {
        !self.cfg.planner.charging_stations.is_empty()
    }

    fn run(&mut self) -> Result<(), SimError> {
        let period_ms = self.spec.constraints.max_duration_min * 60_000.0;
        for f in &self.faults {
            self.q
                .schedule(f.inj.time_ms, EventKind::FaultOccur, u64::from(f.inj.fault_id), 0);
        }
        self.q.schedule(period_ms, EventKind::MissionEnd, 0, 0);
        for i in 0..self.drones.len() {
            if self.drones[i].role.sweeps() {
                self.start_capture_chain(i, 0.0);
            }
            self.begin_next_leg(i, 0.0);
        }
        self.dispatch(0.0);
        self.check_exhausted(0.0);

        let mut processed: u64 = 0;
        while self.ended.is_none() {
            let Some(ev) = self.q.pop() else { break };
            processed += 1;
            if processed > self.cfg.max_events {
                return Err(SimError::EventBudgetExceeded(self.cfg.max_events));
            }
            if self.cfg.trace {
                self.trace.push(TraceEntry {
                    time_ms: ev.time_ms,
                    kind: ev.kind,
                    subject: ev.subject,
                    scheduled_at_ms: ev.scheduled_at_ms,
                });
            }
            let now = ev.time_ms;
            let s = ev.subject as usize;
            match ev.kind {
                EventKind::SensorCapture => self.on_capture(s, ev.epoch, now),
                EventKind::Inference => self.on_inference(s, now),
                EventKind::Encode => self.on_encode(s, now)?,
                EventKind::Transmit => self.on_transmit(s, now),
                EventKind::Deliver => self.on_deliver(s, now),
                EventKind::FaultOccur => self.faults[s].active = true,
                EventKind::FaultDetect => self.on_fault_detect(s, now),
                EventKind::BatteryCheck => self.on_battery_check(s, ev.epoch, now),
                EventKind::Replan => self.on_replan(s, now),
                EventKind::ArriveWaypoint => self.on_arrive(s, ev.epoch, now),
                EventKind::StartCharging => self.on_start_charging(s, ev.epoch, now),
                EventKind::ChargeComplete => self.on_charge_complete(s, ev.epoch, now),
                EventKind::MissionEnd => self.ended = Some((now, EndReason::DurationCap)),
            }
        }
        let end = self
            .ended
            .map_or(self.q.now_ms(), |(t, _)| t);
        for i in 0..self.drones.len() {
            self.settle(i, end);
        }
        if self.ended.is_none() {
            self.ended = Some((end, EndReason::DurationCap));
        }
        self.events = processed;
        Ok(())
    }

    // ---- energy and motion ----------------------------------------------

    fn draw_w(&self, activity: &Activity) -> f64 {
        let e = &self.cfg.planner.energy;
        match activity {
            Activity::Moving { .. } => e.cruise_j_per_m * self.cfg.planner.cruise_speed_mps,
            Activity::Hover => e.hover_w,
            Activity::Landed | Activity::Charging => 0.0,
        }
    }

    /// Bring drone `i`'s battery, position and ledger up to `now`. Returns
    /// false if the drone is (or just became) depleted.
    fn settle(&mut self, i: usize, now: f64) -> bool {
        let power = self.draw_w(&self.drones[i].activity);
        let target_j = self.drones[i].capacity_j * self.cfg.charge_target_pct / 100.0;
        let charge_w = self.cfg.charge_power_w;
        let d = &mut self.drones[i];
        if !d.alive() {
            return false;
        }
        let from_ms = d.last_ms;
        if now <= from_ms {
            return true;
        }
        d.last_ms = now;
        let dt_s = (now - from_ms) / 1000.0;
        let mut depleted_at = None;
        match d.activity {
            Activity::Landed => {}
            Activity::Charging => {
                let add = (charge_w * dt_s).min((target_j - d.battery_j).max(0.0));
                d.battery_j += add;
                d.charged_j += add;
            }
            Activity::Hover => {
                let need = power * dt_s;
                if need >= d.battery_j {
                    depleted_at = Some(from_ms + d.battery_j / power * 1000.0);
                    d.ledger.hover_j += d.battery_j;
                    d.battery_j = 0.0;
                } else {
                    d.battery_j -= need;
                    d.ledger.hover_j += need;
                }
            }
            Activity::Moving {
                from,
                to,
                depart_ms,
                arrive_ms,
                sweep,
            } => {
                let need = power * dt_s;
                let end_ms = if need >= d.battery_j {
                    let t = from_ms + d.battery_j / power * 1000.0;
                    depleted_at = Some(t);
                    d.ledger.cruise_j += d.battery_j;
                    d.battery_j = 0.0;
                    t
                } else {
                    d.battery_j -= need;
                    d.ledger.cruise_j += need;
                    now
                };
                let frac = ((end_ms - depart_ms) / (arrive_ms - depart_ms)).clamp(0.0, 1.0);
                let p = from.lerp(&to, frac);
                let moved = d.pos.distance(&p);
                d.distance_m += moved;
                if sweep {
                    self.swept_m += moved;
                }
                d.pos = p;
            }
        }
        if let Some(t) = depleted_at {
            self.mark_depleted(i, t);
            return false;
        }
        true
    }

    /// Stop the current leg, putting its destination back on the route.
    fn interrupt_leg(&mut self, i: usize) {
        let d = &mut self.drones[i];
        if let Activity::Moving { to, sweep, .. } = d.activity {
            d.route.push_front(Waypoint { p: to, sweep });
            d.activity = Activity::Hover;
            d.motion_epoch += 1;
        }
    }

    /// Remove any sweep work from drone `i`'s route. Energy-aware runs hand
    /// it back to the pool; static runs abandon it.
    fn release_work(&mut self, i: usize) {
        let d = &mut self.drones[i];
        if !has_sweep(&d.route) {
            d.route.clear();
            return;
        }
        if d.route.front().is_some_and(|w| w.sweep) {
            d.route.push_front(Waypoint { p: d.pos, sweep: false });
        }
        let chunk: Vec<Waypoint> = d.route.drain(..).collect();
        if self.energy_aware() {
            self.pool.push_front(chunk);
        } else {
            self.abandoned_m += chunk
                .windows(2)
                .filter(|w| w[1].sweep)
                .map(|w| w[0].p.distance(&w[1].p))
                .sum::<f64>();
        }
    }

    fn mark_depleted(&mut self, i: usize, t: f64) {
        self.interrupt_leg(i);
        let d = &mut self.drones[i];
        d.depleted_at = Some(t);
        d.battery_j = 0.0;
        d.activity = Activity::Landed;
        d.motion_epoch += 1;
        d.role_epoch += 1;
        d.check_epoch += 1;
        self.release_work(i);
        let now = self.q.now_ms();
        self.dispatch(now);
        self.check_exhausted(now);
    }

    fn begin_next_leg(&mut self, i: usize, now: f64) {
        if !self.settle(i, now) {
            return;
        }
        let speed = self.cfg.planner.cruise_speed_mps;
        loop {
            let d = &mut self.drones[i];
            let Some(w) = d.route.pop_front() else {
                self.on_route_complete(i, now);
                return;
            };
            let dist = d.pos.distance(&w.p);
            if dist <= SAME_PLACE_M {
                continue;
            }
            let arrive_ms = now + dist / speed * 1000.0;
            d.activity = Activity::Moving {
                from: d.pos,
                to: w.p,
                depart_ms: now,
                arrive_ms,
                sweep: w.sweep,
            };
            d.motion_epoch += 1;
            let epoch = d.motion_epoch;
            self.q
                .schedule(arrive_ms, EventKind::ArriveWaypoint, i as u64, epoch);
            self.schedule_check(i, now);
            return;
        }
    }

    fn on_route_complete(&mut self, i: usize, now: f64) {
        let role = self.drones[i].role;
        match role {
            Role::Relay => {
                self.drones[i].activity = Activity::Hover;
                self.schedule_check(i, now);
            }
            Role::Charging => {
                let d = &mut self.drones[i];
                d.activity = Activity::Landed;
                d.motion_epoch += 1;
                let at_station = d.charging_target.is_some_and(|s| {
                    d.pos.distance(&s) <= crate::planner::AT_STATION_TOLERANCE_M
                });
                if at_station {
                    let epoch = d.motion_epoch;
                    self.q
                        .schedule(now, EventKind::StartCharging, i as u64, epoch);
                }
                self.schedule_check(i, now);
            }
            Role::Collector | Role::Computer => {
                if !self.drones[i].home_route.is_empty() || self.energy_aware() {
                    self.laps[i] += 1;
                }
                if self.energy_aware() {
                    if let Some(chunk) = self.pool.pop_front() {
                        self.drones[i].route = chunk.into();
                        self.begin_next_leg(i, now);
                    } else {
                        self.make_idle(i);
                        if self.has_stations() {
                            self.send_to_charge(i, now);
                        } else {
                            self.drones[i].activity = Activity::Landed;
                            self.schedule_check(i, now);
                        }
                    }
                } else if self.cfg.patrol && self.drones[i].home_route.iter().any(|w| w.sweep) {
                    let home = self.drones[i].home_route.clone();
                    self.drones[i].route = home.into();
                    self.begin_next_leg(i, now);
                } else {
                    self.drones[i].activity = Activity::Landed;
                    self.schedule_check(i, now);
                }
                self.check_pass_complete(now);
                self.check_exhausted(now);
            }
            Role::Idle => {
                self.drones[i].activity = Activity::Landed;
                self.schedule_check(i, now);
            }
        }
    }

    fn make_idle(&mut self, i: usize) {
        let d = &mut self.drones[i];
        d.role = Role::Idle;
        d.tasks.clear();
        d.role_epoch += 1;
        d.charging_target = None;
    }

    fn set_sweeper(&mut self, i: usize, role: Role, now: f64) {
        let tasks = tasks_for(role, self.spec);
        let d = &mut self.drones[i];
        d.role = role;
        d.tasks = tasks;
        d.charging_target = None;
        self.start_capture_chain(i, now);
    }

    fn start_capture_chain(&mut self, i: usize, now: f64) {
        let d = &mut self.drones[i];
        d.role_epoch += 1;
        d.last_capture_pos = d.pos;
        let epoch = d.role_epoch;
        self.q.schedule(
            now + self.cfg.planner.capture_interval_ms,
            EventKind::SensorCapture,
            i as u64,
            epoch,
        );
    }

    /// Schedule a battery check at the next level the drone will cross
    /// under its current continuous draw.
    fn schedule_check(&mut self, i: usize, now: f64) {
        let power = self.draw_w(&self.drones[i].activity);
        let ea = self.energy_aware();
        let stations = self.has_stations();
        let p = &self.cfg.planner;
        let d = &mut self.drones[i];
        d.check_epoch += 1;
        if !d.alive() || power <= 0.0 {
            return;
        }
        let mut next = 0.0_f64;
        if ea {
            let level_pct = match d.role {
                Role::Collector | Role::Computer => Some(p.low_battery_pct),
                Role::Relay if stations => Some(p.relay_floor_pct),
                _ => None,
            };
            if let Some(pct) = level_pct {
                let level = pct / 100.0 * d.capacity_j;
                if level < d.battery_j {
                    next = level;
                }
            }
        }
        let dt_ms = (d.battery_j - next) / power * 1000.0 + CHECK_SLACK_MS;
        let epoch = d.check_epoch;
        self.q
            .schedule(now + dt_ms, EventKind::BatteryCheck, i as u64, epoch);
    }

    /// Queue a replan if an energy-aware drone has crossed its threshold.
    fn check_thresholds(&mut self, i: usize, now: f64) {
        if !self.energy_aware() {
            return;
        }
        let stations = self.has_stations();
        let p = &self.cfg.planner;
        let d = &mut self.drones[i];
        if !d.alive() || d.replan_pending {
            return;
        }
        let pct = d.pct();
        let crossed = match d.role {
            Role::Collector | Role::Computer => pct < p.low_battery_pct,
            Role::Relay => stations && pct < p.relay_floor_pct,
            _ => false,
        };
        if crossed {
            d.replan_pending = true;
            self.q.schedule(now, EventKind::Replan, i as u64, 0);
        }
    }

    fn on_battery_check(&mut self, i: usize, epoch: u64, now: f64) {
        if epoch != self.drones[i].check_epoch || !self.settle(i, now) {
            return;
        }
        self.check_thresholds(i, now);
        self.schedule_check(i, now);
    }

    fn on_replan(&mut self, i: usize, now: f64) {
        self.drones[i].replan_pending = false;
        if !self.settle(i, now) {
            return;
        }
        let p = &self.cfg.planner;
        let d = &self.drones[i];
        let pct = d.pct();
        match d.role {
            Role::Collector | Role::Computer if pct < p.low_battery_pct => self.demote(i, now),
            Role::Relay if self.has_stations() && pct < p.relay_floor_pct => {
                self.send_to_charge(i, now)
            }
            _ => {}
        }
    }

    fn demote(&mut self, i: usize, now: f64) {
        self.interrupt_leg(i);
        self.release_work(i);
        let p = &self.cfg.planner;
        let relays = self
            .drones
            .iter()
            .enumerate()
            .filter(|(j, d)| *j != i && d.alive() && d.role == Role::Relay)
            .count();
        let can_relay = self.drones[i].pct() >= p.relay_floor_pct && relays < p.max_relays;
        if can_relay || !self.has_stations() {
            if !can_relay {
                self.warnings.push(PlanWarning::NoChargingStation {
                    drone_id: self.drones[i].id,
                });
            }
            self.make_idle(i);
            let relay_at = self.relay_at;
            let d = &mut self.drones[i];
            d.role = Role::Relay;
            d.route = VecDeque::from([Waypoint {
                p: relay_at,
                sweep: false,
            }]);
            self.begin_next_leg(i, now);
        } else {
            self.send_to_charge(i, now);
        }
        self.dispatch(now);
    }

    fn send_to_charge(&mut self, i: usize, now: f64) {
        self.interrupt_leg(i);
        self.release_work(i);
        let d = &self.drones[i];
        let snapshot = DroneState::new(d.id, d.pos, d.pct(), d.capacity_j);
        let energy = self.cfg.planner.energy;
        match reroute_to_charging(&snapshot, &self.cfg.planner.charging_stations, &energy) {
            Ok(r) => {
                if r.energy_shortfall {
                    self.warnings.push(PlanWarning::EnergyShortfall {
                        drone_id: d.id,
                        required_j: energy.cruise_j_per_m * r.distance_m,
                        available_j: d.battery_j,
                    });
                }
                self.make_idle(i);
                let d = &mut self.drones[i];
                d.role = Role::Charging;
                d.charging_target = Some(r.station);
                d.route = r
                    .waypoints
                    .iter()
                    .map(|&p| Waypoint { p, sweep: false })
                    .collect();
                self.begin_next_leg(i, now);
            }
            Err(_) => {
                self.drones[i].activity = Activity::Landed;
                self.schedule_check(i, now);
            }
        }
    }

    fn on_arrive(&mut self, i: usize, epoch: u64, now: f64) {
        if epoch != self.drones[i].motion_epoch || !self.settle(i, now) {
            return;
        }
        let d = &mut self.drones[i];
        if let Activity::Moving { to, .. } = d.activity {
            d.pos = to;
        }
        d.activity = Activity::Hover;
        self.check_thresholds(i, now);
        self.begin_next_leg(i, now);
    }

    fn on_start_charging(&mut self, i: usize, epoch: u64, now: f64) {
        if epoch != self.drones[i].motion_epoch || !self.settle(i, now) {
            return;
        }
        let target_j = self.drones[i].capacity_j * self.cfg.charge_target_pct / 100.0;
        let charge_w = self.cfg.charge_power_w;
        let d = &mut self.drones[i];
        d.activity = Activity::Charging;
        d.charge_sessions += 1;
        d.motion_epoch += 1;
        let epoch = d.motion_epoch;
        let dt_ms = ((target_j - d.battery_j).max(0.0) / charge_w) * 1000.0;
        self.q
            .schedule(now + dt_ms, EventKind::ChargeComplete, i as u64, epoch);
        self.schedule_check(i, now);
    }

    fn on_charge_complete(&mut self, i: usize, epoch: u64, now: f64) {
        if epoch != self.drones[i].motion_epoch || !self.settle(i, now) {
            return;
        }
        self.make_idle(i);
        self.drones[i].activity = Activity::Landed;
        self.schedule_check(i, now);
        self.dispatch(now);
    }

    /// Hand pooled sweep work to idle, healthy drones (energy-aware only).
    fn dispatch(&mut self, now: f64) {
        if !self.energy_aware() || self.ended.is_some() {
            return;
        }
        while !self.pool.is_empty() {
            let low = self.cfg.planner.low_battery_pct;
            let Some(i) = self.drones.iter().position(|d| {
                d.alive()
                    && d.role == Role::Idle
                    && matches!(d.activity, Activity::Landed)
                    && d.pct() >= low
            }) else {
                break;
            };
            if !self.settle(i, now) {
                continue;
            }
            let sweepers = self.drones.iter().filter(|d| d.alive() && d.role.sweeps()).count();
            let computers = self
                .drones
                .iter()
                .filter(|d| d.alive() && d.role == Role::Computer)
                .count();
            let role = if needs_compute(self.spec) && computers < (sweepers + 1).div_ceil(3) {
                Role::Computer
            } else {
                Role::Collector
            };
            self.set_sweeper(i, role, now);
            let chunk = self.pool.pop_front().expect("pool checked non-empty");
            self.drones[i].route = chunk.into();
            self.begin_next_leg(i, now);
        }
    }

    fn check_pass_complete(&mut self, now: f64) {
        if self.ended.is_some() || !self.pool.is_empty() || self.abandoned_m > 0.0 {
            return;
        }
        let busy = self.drones.iter().any(|d| {
            has_sweep(&d.route) || matches!(d.activity, Activity::Moving { sweep: true, .. })
        });
        if busy {
            return;
        }
        self.passes += 1;
        if !self.cfg.patrol {
            self.ended = Some((now, EndReason::CoverageComplete));
        } else if self.energy_aware() {
            let chunks: Vec<Vec<Waypoint>> =
                self.pass_chunks.iter().map(|c| chunk_from(c)).collect();
            self.pool.extend(chunks);
            self.dispatch(now);
        }
    }

    fn check_exhausted(&mut self, now: f64) {
        if self.ended.is_some() {
            return;
        }
        let ea = self.energy_aware();
        let patrol = self.cfg.patrol;
        let can_contribute = self.drones.iter().any(|d| {
            d.alive()
                && (ea
                    || has_sweep(&d.route)
                    || matches!(d.activity, Activity::Moving { sweep: true, .. })
                    || (patrol && d.role.sweeps() && d.home_route.iter().any(|w| w.sweep)))
        });
        if !can_contribute {
            self.ended = Some((now, EndReason::SwarmExhausted));
        }
    }

    // ---- sensing and communication ---------------------------------------

    fn on_capture(&mut self, i: usize, epoch: u64, now: f64) {
        if epoch != self.drones[i].role_epoch || !self.settle(i, now) {
            return;
        }
        self.check_thresholds(i, now);
        let range = self.cfg.sensor_range_m;
        let d = &self.drones[i];
        if !d.role.sweeps() {
            return;
        }
        let (a, b) = (d.last_capture_pos, d.pos);
        if matches!(d.activity, Activity::Moving { sweep: true, .. }) {
            let mut seen = Vec::new();
            for f in self.faults.iter_mut() {
                let claimable = f.active
                    && f.detected.is_none()
                    && f.pending.is_none()
                    && f.in_flight == 0;
                if claimable && f.inj.position.distance_to_segment(&a, &b) < range {
                    f.in_flight += 1;
                    seen.push(f.inj.fault_id);
                }
            }
            let frame = self.frames.len();
            self.frames.push(Frame {
                drone: i,
                pass_ms: now,
                pos: b,
                faults: seen,
            });
            let next = match self.cfg.transmission {
                TransmissionMode::Semantic => EventKind::Inference,
                TransmissionMode::Raw => EventKind::Encode,
            };
            self.q.schedule(now, next, frame as u64, 0);
        }
        let d = &mut self.drones[i];
        d.last_capture_pos = d.pos;
        self.q.schedule(
            now + self.cfg.planner.capture_interval_ms,
            EventKind::SensorCapture,
            i as u64,
            epoch,
        );
    }

    fn drop_frame(&mut self, f: usize) {
        let ids = std::mem::take(&mut self.frames[f].faults);
        for id in ids {
            self.faults[id as usize].in_flight -= 1;
        }
    }

    fn on_inference(&mut self, f: usize, now: f64) {
        let i = self.frames[f].drone;
        if !self.settle(i, now) {
            self.drop_frame(f);
            return;
        }
        let table = &self.cfg.planner.inference;
        let delay_ms: f64 = self.drones[i]
            .tasks
            .iter()
            .map(|t| table.delay_ms(*t).expect("task latencies checked at start"))
            .sum();
        let cost = self.cfg.planner.energy.compute_power_w * delay_ms / 1000.0;
        let d = &mut self.drones[i];
        if cost > d.battery_j {
            d.ledger.compute_j += d.battery_j;
            d.battery_j = 0.0;
            self.mark_depleted(i, now);
            self.drop_frame(f);
            return;
        }
        d.battery_j -= cost;
        d.ledger.compute_j += cost;
        self.q.schedule(now + delay_ms, EventKind::Encode, f as u64, 0);
        self.check_thresholds(i, now);
    }

    fn new_message(&mut self, f: usize, kind: &str, bits: u64, faults: Vec<u32>, now: f64) {
        let frame = &self.frames[f];
        let id = self.msgs.len() as u64;
        self.msgs.push(Msg {
            record: MessageRecord {
                message_id: id,
                source_drone: self.drones[frame.drone].id,
                kind: kind.to_owned(),
                bits,
                created_ms: now,
                relayed: false,
                attempts: 0,
                status: MessageStatus::InFlight,
                delivered_ms: None,
            },
            source: frame.drone,
            sender: frame.drone,
            relay: None,
            at_relay: false,
            hop_attempts: 0,
            pass_ms: frame.pass_ms,
            faults,
        });
        self.q.schedule(now, EventKind::Transmit, id, 0);
    }

    fn on_encode(&mut self, f: usize, now: f64) -> Result<(), SimError> {
        let faults = std::mem::take(&mut self.frames[f].faults);
        match self.cfg.transmission {
            TransmissionMode::Raw => {
                let bits = self.cfg.camera.frame_bits().round() as u64;
                self.new_message(f, "RawFrame", bits, faults, now);
            }
            TransmissionMode::Semantic => {
                let frame = &self.frames[f];
                let d = &self.drones[frame.drone];
                let (kind, fields) = if self.spec.mission_type == MissionType::RoadInspection {
                    let mut level = || Value::U8(self.content_rng.random_range(0..4u8));
                    (
                        KIND_ROAD_QUALITY,
                        vec![
                            ("material".to_owned(), level()),
                            ("friction_level".to_owned(), level()),
                            ("unevenness_level".to_owned(), level()),
                        ],
                    )
                } else {
                    (
                        KIND_TELEMETRY,
                        vec![
                            ("x_m".to_owned(), Value::F32(frame.pos.x_m as f32)),
                            ("y_m".to_owned(), Value::F32(frame.pos.y_m as f32)),
                            ("battery_pct".to_owned(), Value::U8(d.pct().round().clamp(0.0, 100.0) as u8)),
                            ("role".to_owned(), Value::U8(d.role as u8)),
                        ],
                    )
                };
                let pass_ms = frame.pass_ms;
                let payload = encode(&fields, &self.kb, kind)?;
                let name = self.kb.schema(kind).map_or("", |s| s.name.as_str()).to_owned();
                self.new_message(f, &name, 8 * payload.len() as u64, Vec::new(), now);
                for id in faults {
                    let inj = &self.faults[id as usize].inj;
                    let fields = vec![
                        ("fault_id".to_owned(), Value::U32(id)),
                        ("x_m".to_owned(), Value::F32(inj.position.x_m as f32)),
                        ("y_m".to_owned(), Value::F32(inj.position.y_m as f32)),
                        ("severity".to_owned(), Value::U8(inj.severity)),
                        ("observed_ms".to_owned(), Value::F64(pass_ms)),
                    ];
                    let payload = encode(&fields, &self.kb, KIND_FAULT_DETECTION)?;
                    self.new_message(f, "FaultDetection", 8 * payload.len() as u64, vec![id], now);
                }
            }
        }
        Ok(())
    }

    fn fail_message(&mut self, m: usize, status: MessageStatus) {
        self.msgs[m].record.status = status;
        let ids = std::mem::take(&mut self.msgs[m].faults);
        for id in ids {
            self.faults[id as usize].in_flight -= 1;
        }
    }

    fn find_relay(&self, sender: usize) -> Option<usize> {
        self.drones.iter().enumerate().position(|(j, d)| {
            j != sender
                && d.alive()
                && d.role == Role::Relay
                && matches!(d.activity, Activity::Hover)
                && d.pos.distance(&self.relay_at) <= crate::planner::AT_STATION_TOLERANCE_M
        })
    }

    fn on_transmit(&mut self, m: usize, now: f64) {
        let sender = self.msgs[m].sender;
        if !self.settle(sender, now) {
            self.fail_message(m, MessageStatus::SenderDepleted);
            return;
        }
        if self.cfg.route_via_relay && self.msgs[m].record.attempts == 0 {
            let relay = self.find_relay(sender);
            self.msgs[m].relay = relay;
            self.msgs[m].record.relayed = relay.is_some();
        }
        let cost = self.cfg.planner.energy.tx_j_per_bit * self.msgs[m].record.bits as f64;
        let d = &mut self.drones[sender];
        if cost > d.battery_j {
            d.ledger.tx_j += d.battery_j;
            d.battery_j = 0.0;
            self.mark_depleted(sender, now);
            self.fail_message(m, MessageStatus::SenderDepleted);
            return;
        }
        d.battery_j -= cost;
        d.ledger.tx_j += cost;
        let msg = &mut self.msgs[m];
        msg.record.attempts += 1;
        msg.hop_attempts += 1;
        match transmit(&self.profile, &self.swarm, &mut self.net_rng) {
            Attempt::Delivered { delay_ms } => {
                self.q.schedule(now + delay_ms, EventKind::Deliver, m as u64, 0);
            }
            Attempt::Dropped if msg.hop_attempts <= self.cfg.retry.retry_cap => {
                let timeout = self.cfg.retry.timeout_ms(&self.profile);
                self.q.schedule(now + timeout, EventKind::Transmit, m as u64, 0);
            }
            Attempt::Dropped => self.fail_message(m, MessageStatus::Lost),
        }
        self.check_thresholds(sender, now);
    }

    fn on_deliver(&mut self, m: usize, now: f64) {
        let msg = &mut self.msgs[m];
        if let (Some(relay), false) = (msg.relay, msg.at_relay) {
            msg.at_relay = true;
            msg.sender = relay;
            msg.hop_attempts = 0;
            self.q.schedule(now, EventKind::Transmit, m as u64, 0);
            return;
        }
        msg.record.status = MessageStatus::Delivered;
        msg.record.delivered_ms = Some(now);
        let source_id = self.drones[msg.source].id;
        let pass_ms = msg.pass_ms;
        let analysis_ms = match self.cfg.transmission {
            TransmissionMode::Semantic => 0.0,
            TransmissionMode::Raw => self.server_delay_ms,
        };
        for id in std::mem::take(&mut msg.faults) {
            let f = &mut self.faults[id as usize];
            f.in_flight -= 1;
            if f.detected.is_none() && f.pending.is_none() {
                f.pending = Some((pass_ms, source_id));
                self.q
                    .schedule(now + analysis_ms, EventKind::FaultDetect, u64::from(id), 0);
            }
        }
    }

    fn on_fault_detect(&mut self, id: usize, now: f64) {
        let f = &mut self.faults[id];
        if let Some((pass_ms, by)) = f.pending.take() {
            f.detected = Some((pass_ms, now, by));
        }
    }

    // ---- results -------------------------------------------------------

    fn finish(self, seed: u64) -> SimOutcome {
        let (end_ms, end_reason) = self.ended.unwrap_or((self.q.now_ms(), EndReason::DurationCap));
        let passes = if self.energy_aware() {
            self.passes
        } else {
            let laps = self
                .drones
                .iter()
                .zip(&self.laps)
                .filter(|(d, _)| d.home_route.iter().any(|w| w.sweep))
                .map(|(_, &l)| l)
                .min()
                .unwrap_or(0);
            self.passes.max(laps)
        };
        let coverage_fraction = if passes > 0 || self.total_sweep_m <= 0.0 {
            1.0
        } else {
            (self.swept_m / self.total_sweep_m).min(1.0)
        };
        let drones = self
            .drones
            .iter()
            .map(|d| DroneOutcome {
                drone_id: d.id,
                final_role: d.role,
                initial_j: d.initial_j,
                final_j: d.battery_j,
                charged_j: d.charged_j,
                ledger: d.ledger,
                distance_m: d.distance_m,
                charge_sessions: d.charge_sessions,
                depleted_at_ms: d.depleted_at,
            })
            .collect();
        let kind = match self.spec.mission_type {
            MissionType::RoadInspection => "pothole",
            _ => "structural_defect",
        };
        let faults = self
            .faults
            .iter()
            .map(|f| FaultRecord {
                fault_id: f.inj.fault_id,
                kind: kind.to_owned(),
                position: f.inj.position,
                occur_ms: f.inj.time_ms,
                severity: f.inj.severity,
                detected: f.detected.is_some(),
                pass_ms: f.detected.map(|d| d.0),
                detected_ms: f.detected.map(|d| d.1),
                latency_ms: f.detected.map(|d| d.1 - d.0),
                detected_by: f.detected.map(|d| d.2),
            })
            .collect();
        let message_log: Vec<MessageRecord> = self.msgs.into_iter().map(|m| m.record).collect();
        let mut summary = MessageSummary::default();
        for m in &message_log {
            summary.sent += 1;
            summary.bits += m.bits;
            let hops = if m.relayed { 2 } else { 1 };
            summary.retransmissions += u64::from(m.attempts.saturating_sub(hops));
            match m.status {
                MessageStatus::Delivered => summary.delivered += 1,
                MessageStatus::Lost | MessageStatus::SenderDepleted => summary.lost += 1,
                MessageStatus::InFlight => {}
            }
        }
        SimOutcome {
            seed,
            policy: self.policy,
            network: self.profile.name,
            transmission: self.cfg.transmission,
            end_reason,
            operational_time_ms: end_ms,
            coverage_fraction,
            coverage_passes: passes,
            events_processed: self.events,
            reference_comm_share: self.cfg.reference_comm_share,
            warnings: self.warnings,
            messages: summary,
            drones,
            faults,
            message_log,
            trace: self.trace,
        }
    }
}
