//! Template-based inspection reports.
//!
//! A [`ReportBundle`] collects everything a report shows; [`render`] turns it
//! into Markdown or a structured document. Free text can be supplied by a
//! [`NarrativeProvider`]; the built-in template writes none.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::document::{read_document, write_document, DocumentError};
use crate::mission::MissionSpec;
use crate::netperf::Table1Row;
use crate::sim::SimOutcome;

pub const REPORT_SCHEMA: &str = "swarmnet.report";

/// Hex SHA-256 of a configuration's canonical text.
pub fn config_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes())
        .iter()
        .fold(String::with_capacity(64), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: String,
    pub version: String,
}

impl Provenance {
    pub fn new(seed: u64, config_hash: String) -> Self {
        Provenance {
            seed,
            config_hash,
            version: crate::VERSION.to_owned(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionSummary {
    pub mission_id: String,
    pub mission_type: String,
    pub objectives: Vec<String>,
    pub policy: String,
    pub network: String,
    pub transmission: String,
    pub end_reason: String,
    pub operational_time_s: f64,
    pub faults_injected: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaultRow {
    pub fault_id: u32,
    pub kind: String,
    pub x_m: f64,
    pub y_m: f64,
    pub detection_latency_ms: f64,
    pub detected_by: u32,
    /// Placeholder level carried through from the simulation.
    pub severity: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageSummary {
    pub coverage_fraction: f64,
    pub passes: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyRow {
    pub drone_id: u32,
    pub final_role: String,
    pub cruise_j: f64,
    pub hover_j: f64,
    pub compute_j: f64,
    pub tx_j: f64,
    pub charged_j: f64,
}

impl EnergyRow {
    pub fn total_j(&self) -> f64 {
        self.cruise_j + self.hover_j + self.compute_j + self.tx_j
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergySummary {
    pub drones: Vec<EnergyRow>,
    pub tx_share: f64,
    /// Motivating figure from the configuration, shown for comparison only.
    pub reference_comm_share: f64,
}

/// A pre-formatted table of network statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsTable {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportBundle {
    pub title: String,
    pub mission: Option<MissionSummary>,
    /// Detected faults only; each row comes from a detection event.
    #[serde(default)]
    pub faults: Vec<FaultRow>,
    pub coverage: Option<CoverageSummary>,
    pub energy: Option<EnergySummary>,
    #[serde(default)]
    pub network_tables: Vec<StatsTable>,
    pub provenance: Provenance,
}

impl ReportBundle {
    pub fn new(title: &str, provenance: Provenance) -> Self {
        ReportBundle {
            title: title.to_owned(),
            mission: None,
            faults: Vec::new(),
            coverage: None,
            energy: None,
            network_tables: Vec::new(),
            provenance,
        }
    }

    /// Report for one simulated mission.
    pub fn from_outcome(spec: &MissionSpec, outcome: &SimOutcome, config_hash: String) -> Self {
        let mut b = ReportBundle::new(
            &format!("Inspection report {}", spec.mission_id),
            Provenance::new(outcome.seed, config_hash),
        );
        b.mission = Some(MissionSummary {
            mission_id: spec.mission_id.clone(),
            mission_type: format!("{:?}", spec.mission_type),
            objectives: spec.objectives.iter().map(|o| format!("{o:?}")).collect(),
            policy: format!("{:?}", outcome.policy),
            network: outcome.network.label().to_owned(),
            transmission: outcome.transmission.to_string(),
            end_reason: serde_plain(&outcome.end_reason),
            operational_time_s: outcome.operational_time_ms / 1000.0,
            faults_injected: outcome.faults.len(),
        });
        b.faults = outcome
            .faults
            .iter()
            .filter_map(|f| {
                Some(FaultRow {
                    fault_id: f.fault_id,
                    kind: f.kind.clone(),
                    x_m: f.position.x_m,
                    y_m: f.position.y_m,
                    detection_latency_ms: f.latency_ms?,
                    detected_by: f.detected_by?,
                    severity: f.severity,
                })
            })
            .collect();
        b.coverage = Some(CoverageSummary {
            coverage_fraction: outcome.coverage_fraction,
            passes: outcome.coverage_passes,
        });
        b.energy = Some(EnergySummary {
            drones: outcome
                .drones
                .iter()
                .map(|d| EnergyRow {
                    drone_id: d.drone_id,
                    final_role: format!("{:?}", d.final_role),
                    cruise_j: d.ledger.cruise_j,
                    hover_j: d.ledger.hover_j,
                    compute_j: d.ledger.compute_j,
                    tx_j: d.ledger.tx_j,
                    charged_j: d.charged_j,
                })
                .collect(),
            tx_share: outcome.tx_share(),
            reference_comm_share: outcome.reference_comm_share,
        });
        b.network_tables.push(StatsTable {
            title: "Messages".into(),
            columns: ["sent", "delivered", "lost", "retransmissions", "bits"]
                .map(String::from)
                .to_vec(),
            rows: vec![vec![
                outcome.messages.sent.to_string(),
                outcome.messages.delivered.to_string(),
                outcome.messages.lost.to_string(),
                outcome.messages.retransmissions.to_string(),
                outcome.messages.bits.to_string(),
            ]],
        });
        b
    }

    /// Report for the 5G/6G Monte Carlo comparison.
    pub fn from_table1(rows: &[Table1Row], seed: u64, config_hash: String) -> Self {
        let mut b = ReportBundle::new("Network performance comparison", Provenance::new(seed, config_hash));
        b.network_tables.push(table1_stats(rows));
        b
    }
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    toml::Value::try_from(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn opt(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(String::new, |x| format!("{x:.decimals$}"))
}

/// Table 1 style statistics with fixed decimals.
pub fn table1_stats(rows: &[Table1Row]) -> StatsTable {
    StatsTable {
        title: "Collision rate (%) and detection time (ms)".into(),
        columns: [
            "drones", "network", "cr_mean", "cr_std", "cr_ci_low", "cr_ci_high", "dt_mean",
            "dt_std", "dt_ci_low", "dt_ci_high",
        ]
        .map(String::from)
        .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                let c = &r.collision;
                let d = r.detection.as_ref();
                vec![
                    r.drones.to_string(),
                    r.network.label().to_owned(),
                    format!("{:.4}", c.mean),
                    format!("{:.4}", c.std),
                    format!("{:.4}", c.ci_low),
                    format!("{:.4}", c.ci_high),
                    opt(d.map(|s| s.mean), 4),
                    opt(d.map(|s| s.std), 4),
                    opt(d.map(|s| s.ci_low), 4),
                    opt(d.map(|s| s.ci_high), 4),
                ]
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Markdown,
    StructuredDocument,
}

/// Source of free-text commentary inserted into Markdown reports.
pub trait NarrativeProvider {
    fn narrative(&self, bundle: &ReportBundle) -> Option<String>;
}

/// Writes no commentary; the tables speak for themselves.
pub struct TemplateOnly;

impl NarrativeProvider for TemplateOnly {
    fn narrative(&self, _: &ReportBundle) -> Option<String> {
        None
    }
}

pub fn render(bundle: &ReportBundle, format: ReportFormat) -> Result<String, DocumentError> {
    render_with(bundle, format, &TemplateOnly)
}

pub fn render_with(
    bundle: &ReportBundle,
    format: ReportFormat,
    narrative: &dyn NarrativeProvider,
) -> Result<String, DocumentError> {
    match format {
        ReportFormat::StructuredDocument => write_document(REPORT_SCHEMA, bundle),
        ReportFormat::Markdown => Ok(markdown(bundle, narrative)),
    }
}

pub fn parse_report(text: &str) -> Result<ReportBundle, DocumentError> {
    read_document(REPORT_SCHEMA, text)
}

fn md_table(out: &mut String, columns: &[String], rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", columns.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(columns.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out.push('\n');
}

fn markdown(b: &ReportBundle, narrative: &dyn NarrativeProvider) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}\n", b.title);
    if let Some(text) = narrative.narrative(b) {
        let _ = writeln!(out, "{text}\n");
    }
    if let Some(m) = &b.mission {
        out.push_str("## Mission\n\n");
        let _ = writeln!(out, "- Mission: {} ({})", m.mission_id, m.mission_type);
        let _ = writeln!(out, "- Objectives: {}", m.objectives.join(", "));
        let _ = writeln!(out, "- Allocation: {}", m.policy);
        let _ = writeln!(out, "- Network: {} ({} transmission)", m.network, m.transmission);
        let _ = writeln!(out, "- Operational time: {:.1} s (ended: {})", m.operational_time_s, m.end_reason);
        let _ = writeln!(out, "- Faults injected: {}\n", m.faults_injected);
    }

    out.push_str("## Faults\n\n");
    let _ = writeln!(out, "{} faults detected\n", b.faults.len());
    if !b.faults.is_empty() {
        let cols = ["id", "type", "x (m)", "y (m)", "latency (ms)", "drone", "severity"]
            .map(String::from);
        let rows: Vec<Vec<String>> = b
            .faults
            .iter()
            .map(|f| {
                vec![
                    f.fault_id.to_string(),
                    f.kind.clone(),
                    format!("{:.2}", f.x_m),
                    format!("{:.2}", f.y_m),
                    format!("{:.3}", f.detection_latency_ms),
                    f.detected_by.to_string(),
                    f.severity.to_string(),
                ]
            })
            .collect();
        md_table(&mut out, &cols, &rows);
    }

    if let Some(c) = &b.coverage {
        out.push_str("## Coverage\n\n");
        let _ = writeln!(out, "- Coverage: {:.3}", c.coverage_fraction);
        let _ = writeln!(out, "- Full passes: {}\n", c.passes);
    }

    if let Some(e) = &b.energy {
        out.push_str("## Energy\n\n");
        let cols = [
            "drone", "final role", "cruise (J)", "hover (J)", "compute (J)", "tx (J)", "total (J)",
            "charged (J)",
        ]
        .map(String::from);
        let rows: Vec<Vec<String>> = e
            .drones
            .iter()
            .map(|d| {
                vec![
                    d.drone_id.to_string(),
                    d.final_role.clone(),
                    format!("{:.1}", d.cruise_j),
                    format!("{:.1}", d.hover_j),
                    format!("{:.1}", d.compute_j),
                    format!("{:.6}", d.tx_j),
                    format!("{:.1}", d.total_j()),
                    format!("{:.1}", d.charged_j),
                ]
            })
            .collect();
        md_table(&mut out, &cols, &rows);
        let _ = writeln!(
            out,
            "Transmission share of consumed energy: {:.3e} (reference figure: {:.2})\n",
            e.tx_share, e.reference_comm_share
        );
    }

    for t in &b.network_tables {
        let _ = writeln!(out, "## {}\n", t.title);
        md_table(&mut out, &t.columns, &t.rows);
    }

    let p = &b.provenance;
    out.push_str("## Provenance\n\n");
    let _ = writeln!(out, "- Seed: {}", p.seed);
    let _ = writeln!(out, "- Config hash: {}", p.config_hash);
    let _ = writeln!(out, "- Version: {}", p.version);
    out
}
