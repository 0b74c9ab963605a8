//! Subcommands behind the `swarmnet` binary.
//!
//! Settings resolve as flags, then `SWARMNET_*` environment variables, then
//! the scenario file, then built-in defaults. Every run writes its outputs,
//! the fully resolved `config.toml` and a `manifest.toml` into the output
//! directory; feeding `config.toml` back in replays the run exactly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::document::{read_document, write_document, DocumentError};
use crate::mission::{self, MissionDefaults, MissionError, MissionSpec};
use crate::netperf::{table1_report, TABLE1_ITERATIONS};
use crate::planner::{assign_roles, AllocationPolicy, PlannerError};
use crate::report::{config_hash, render, table1_stats, ReportBundle, ReportFormat, StatsTable};
use crate::semcomm::{bandwidth_table, default_profiles, SemanticConfig, TransmissionMode, VideoProfile};
use crate::sim::{compare, message_log_csv, FleetSpec, Scenario, SimConfig, SimError, MIN_SEEDS};
use crate::types::{NetworkKind, NetworkProfile};
use crate::ParamError;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_OUT: &str = "out";
pub const DEFAULT_COMPARE_SEEDS: usize = 30;
pub const CONFIG_SCHEMA: &str = "swarmnet.scenario";
pub const MANIFEST_SCHEMA: &str = "swarmnet.manifest";

/// Exit status contract: 0 success, 1 validation error, 2 runtime error.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Runtime(_) => 2,
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Serialize(_) => CliError::Runtime(e.to_string()),
            _ => CliError::Validation(e.to_string()),
        }
    }
}

impl From<MissionError> for CliError {
    fn from(e: MissionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<PlannerError> for CliError {
    fn from(e: PlannerError) -> Self {
        match e {
            PlannerError::Document(d) => d.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Codec(_) | SimError::EventBudgetExceeded(_) => CliError::Runtime(e.to_string()),
            SimError::Document(d) => d.into(),
            SimError::Planner(p) => p.into(),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PolicyArg {
    Energy,
    Static,
}

impl From<PolicyArg> for AllocationPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Energy => AllocationPolicy::EnergyAware,
            PolicyArg::Static => AllocationPolicy::Static,
        }
    }
}

/// Where the mission comes from. At most one source may be set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MissionSource {
    /// Mission document, relative to the scenario file.
    pub path: Option<PathBuf>,
    /// Free-text request run through the intent rules.
    pub request: Option<String>,
    /// Inline mission.
    pub spec: Option<MissionSpec>,
    /// Fallbacks for fields a request leaves out.
    pub defaults: Option<MissionDefaults>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BandwidthSettings {
    pub profiles: Option<Vec<VideoProfile>>,
    pub semantic: SemanticConfig,
}

/// Scenario file. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    /// Monte Carlo iterations per table configuration.
    pub iterations: Option<usize>,
    /// Paired seeds for policy comparison.
    pub seeds: Option<usize>,
    pub network: Option<NetworkKind>,
    pub policy: Option<PolicyArg>,
    pub mode: Option<TransmissionMode>,
    /// Full profile replacing the built-in one for `network`.
    pub network_profile: Option<NetworkProfile>,
    pub mission: MissionSource,
    pub fleet: Option<FleetSpec>,
    pub sim: Option<SimConfig>,
    pub bandwidth: Option<BandwidthSettings>,
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<ScenarioConfig, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg: ScenarioConfig = read_document(CONFIG_SCHEMA, &text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        if let Some(p) = &cfg.mission.path {
            if p.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                cfg.mission.path = Some(base.join(p));
            }
        }
        Ok(cfg)
    }

    fn load_opt(path: Option<&Path>) -> Result<ScenarioConfig, CliError> {
        path.map_or_else(|| Ok(ScenarioConfig::default()), ScenarioConfig::load)
    }

    fn resolve_mission(&self) -> Result<MissionSpec, CliError> {
        let m = &self.mission;
        let sources = [m.path.is_some(), m.request.is_some(), m.spec.is_some()];
        if sources.iter().filter(|s| **s).count() > 1 {
            return Err(CliError::Validation(
                "mission: set only one of `path`, `request` and `spec`".into(),
            ));
        }
        let spec = if let Some(path) = &m.path {
            let text = fs::read_to_string(path).map_err(|e| {
                CliError::Validation(format!("mission.path {}: {e}", path.display()))
            })?;
            mission::deserialize(&text)?
        } else if let Some(req) = &m.request {
            mission::parse_request(req, &self.mission_defaults())?
        } else if let Some(spec) = &m.spec {
            spec.clone()
        } else {
            Scenario::default().mission
        };
        let violations = mission::validate(&spec);
        if !violations.is_empty() {
            return Err(MissionError::Invalid(violations).into());
        }
        Ok(spec)
    }

    fn mission_defaults(&self) -> MissionDefaults {
        let mut d = self.mission.defaults.clone().unwrap_or_default();
        if d.perimeter.is_none() {
            d.perimeter = Some(Scenario::default().mission.perimeter);
        }
        d
    }

    fn network_profile(&self) -> Result<NetworkProfile, CliError> {
        let kind = self.network.unwrap_or(NetworkKind::SixG);
        let profile = match self.network_profile {
            Some(p) if self.network.is_some_and(|k| k != p.name) => {
                return Err(CliError::Validation(format!(
                    "network `{}` conflicts with network_profile.name `{}`",
                    kind, p.name
                )))
            }
            Some(p) => p,
            None => kind.profile(),
        };
        profile.validate()?;
        Ok(profile)
    }

    fn scenario(&self) -> Result<Scenario, CliError> {
        let mut sim = self.sim.clone().unwrap_or_else(|| Scenario::default().sim);
        if let Some(mode) = self.mode {
            sim.transmission = mode;
        }
        sim.validate()?;
        let fleet = self.fleet.clone().unwrap_or_default();
        fleet.validate()?;
        Ok(Scenario {
            mission: self.resolve_mission()?,
            fleet,
            network: self.network_profile()?,
            sim,
        })
    }

    /// Freeze every setting so the written copy replays without the
    /// original files.
    fn resolved(&self, scenario: &Scenario, policy: Option<PolicyArg>) -> ScenarioConfig {
        ScenarioConfig {
            seed: self.seed,
            out: None,
            iterations: self.iterations,
            seeds: self.seeds,
            network: Some(scenario.network.name),
            policy,
            mode: Some(scenario.sim.transmission),
            network_profile: Some(scenario.network),
            mission: MissionSource {
                spec: Some(scenario.mission.clone()),
                ..MissionSource::default()
            },
            fleet: Some(scenario.fleet.clone()),
            sim: Some(scenario.sim.clone()),
            bandwidth: None,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, env = "SWARMNET_SEED")]
    pub seed: Option<u64>,
    #[arg(long, env = "SWARMNET_OUT")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ScenarioArgs {
    #[arg(long)]
    pub network: Option<NetworkKind>,
    #[arg(long)]
    pub drones: Option<u32>,
    #[arg(long, value_enum)]
    pub policy: Option<PolicyArg>,
    #[arg(long)]
    pub mode: Option<TransmissionMode>,
}

#[derive(Debug, Parser)]
#[command(name = "swarmnet", version, about = "Drone-swarm inspection simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo 5G/6G collision-rate and detection-time table.
    Table1 {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long)]
        iterations: Option<usize>,
    },
    /// Run one mission through the discrete-event engine.
    Simulate {
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Raw versus semantic bit rates per video profile.
    Bandwidth {
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Turn a free-text request into a mission document.
    Parse {
        text: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Assign roles and routes for a mission document.
    Plan {
        mission: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
    /// Paired-seed comparison of energy-aware and static allocation.
    Compare {
        config: Option<PathBuf>,
        #[arg(long)]
        seeds: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        scenario: ScenarioArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputEntry {
    pub file: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub seed: u64,
    pub config_hash: String,
    pub version: String,
    pub outputs: Vec<OutputEntry>,
}

/// Files produced by one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub message: String,
}

struct Outputs {
    dir: PathBuf,
    entries: Vec<(String, String)>,
}

impl Outputs {
    fn new(dir: PathBuf) -> Self {
        Outputs {
            dir,
            entries: Vec::new(),
        }
    }

    fn add(&mut self, name: &str, content: String) {
        self.entries.push((name.to_owned(), content));
    }

    /// Write every file plus the manifest. Content is built first so a
    /// validation failure leaves no partial output.
    fn finish(self, command: &str, seed: u64, config_text: &str, message: String) -> Result<RunSummary, CliError> {
        let io = |path: &Path, e: std::io::Error| CliError::Runtime(format!("cannot write {}: {e}", path.display()));
        fs::create_dir_all(&self.dir).map_err(|e| io(&self.dir, e))?;
        let mut files = Vec::new();
        let mut manifest = Manifest {
            command: command.to_owned(),
            seed,
            config_hash: config_hash(config_text),
            version: crate::VERSION.to_owned(),
            outputs: Vec::new(),
        };
        let mut entries = self.entries;
        entries.push(("config.toml".into(), config_text.to_owned()));
        for (name, content) in &entries {
            let path = self.dir.join(name);
            fs::write(&path, content).map_err(|e| io(&path, e))?;
            manifest.outputs.push(OutputEntry {
                file: name.clone(),
                sha256: config_hash(content),
            });
            files.push(path);
        }
        let path = self.dir.join("manifest.toml");
        fs::write(&path, write_document(MANIFEST_SCHEMA, &manifest)?).map_err(|e| io(&path, e))?;
        files.push(path);
        Ok(RunSummary {
            out_dir: self.dir,
            files,
            message,
        })
    }
}

fn seed_of(common: &CommonArgs, file: &ScenarioConfig) -> u64 {
    common.seed.or(file.seed).unwrap_or(DEFAULT_SEED)
}

fn out_of(common: &CommonArgs, file: &ScenarioConfig) -> PathBuf {
    common
        .out
        .clone()
        .or_else(|| file.out.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT))
}

fn apply_flags(file: &mut ScenarioConfig, args: &ScenarioArgs) -> Result<(), CliError> {
    if let Some(n) = args.network {
        if file.network_profile.is_some_and(|p| p.name != n) {
            // an explicit flag wins over a file override for another network
            file.network_profile = None;
        }
        file.network = Some(n);
    }
    if let Some(p) = args.policy {
        file.policy = Some(p);
    }
    if let Some(m) = args.mode {
        file.mode = Some(m);
    }
    if let Some(n) = args.drones {
        if n == 0 {
            return Err(CliError::Validation("--drones must be at least 1".into()));
        }
        file.fleet.get_or_insert_with(FleetSpec::default).n_drones = n;
    }
    Ok(())
}

fn config_text(cfg: &ScenarioConfig) -> Result<String, CliError> {
    Ok(write_document(CONFIG_SCHEMA, cfg)?)
}

fn fmt_row(values: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    // writing into memory cannot fail
    w.write_record(values).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn csv_table(t: &StatsTable) -> String {
    let mut out = fmt_row(&t.columns);
    for r in &t.rows {
        out.push_str(&fmt_row(r));
    }
    out
}

fn md_table(t: &StatsTable) -> String {
    let mut out = format!("| {} |\n|{}\n", t.columns.join(" | "), "---|".repeat(t.columns.len()));
    for r in &t.rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out
}

pub fn cmd_table1(common: &CommonArgs, iterations: Option<usize>) -> Result<RunSummary, CliError> {
    let file = ScenarioConfig::default();
    let seed = seed_of(common, &file);
    let iterations = iterations.unwrap_or(TABLE1_ITERATIONS);
    let rows = table1_report(seed, iterations)?;
    let table = table1_stats(&rows);
    let resolved = ScenarioConfig {
        seed: Some(seed),
        iterations: Some(iterations),
        ..ScenarioConfig::default()
    };
    let cfg = config_text(&resolved)?;
    let mut out = Outputs::new(out_of(common, &file));
    out.add("table1.csv", csv_table(&table));
    out.add(
        "table1.md",
        format!("# {}\n\n{}\n{iterations} iterations per row, seed {seed}.\n", table.title, md_table(&table)),
    );
    let bundle = ReportBundle::from_table1(&rows, seed, config_hash(&cfg));
    out.add("report.md", render(&bundle, ReportFormat::Markdown)?);
    out.finish("table1", seed, &cfg, format!("{} rows", rows.len()))
}

pub fn cmd_simulate(
    config: Option<&Path>,
    common: &CommonArgs,
    args: &ScenarioArgs,
) -> Result<RunSummary, CliError> {
    let mut file = ScenarioConfig::load_opt(config)?;
    apply_flags(&mut file, args)?;
    let seed = seed_of(common, &file);
    let policy = file.policy.unwrap_or(PolicyArg::Energy);
    let scenario = file.scenario()?;
    let outcome = scenario.run(policy.into(), seed)?;
    let resolved = ScenarioConfig {
        seed: Some(seed),
        ..file.resolved(&scenario, Some(policy))
    };
    let cfg = config_text(&resolved)?;
    let bundle = ReportBundle::from_outcome(&scenario.mission, &outcome, config_hash(&cfg));
    let mut out = Outputs::new(out_of(common, &file));
    out.add("outcome.toml", outcome.to_document()?);
    out.add("messages.csv", message_log_csv(&outcome)?);
    out.add("report.md", render(&bundle, ReportFormat::Markdown)?);
    out.add("report.toml", render(&bundle, ReportFormat::StructuredDocument)?);
    let message = format!(
        "{:?} after {:.1} s, coverage {:.3}, {} of {} faults detected",
        outcome.end_reason,
        outcome.operational_time_ms / 1000.0,
        outcome.coverage_fraction,
        outcome.faults_detected(),
        outcome.faults.len()
    );
    out.finish("simulate", seed, &cfg, message)
}

pub fn cmd_bandwidth(config: Option<&Path>, common: &CommonArgs) -> Result<RunSummary, CliError> {
    let file = ScenarioConfig::load_opt(config)?;
    let seed = seed_of(common, &file);
    let settings = file.bandwidth.clone().unwrap_or_default();
    let profiles = settings.profiles.clone().unwrap_or_else(default_profiles);
    let rows = bandwidth_table(&profiles, &settings.semantic)?;
    let table = StatsTable {
        title: "Raw versus semantic bandwidth".into(),
        columns: [
            "profile", "width_px", "height_px", "fps", "bits_per_pixel", "mode", "bits_per_second",
            "reduction", "clamped",
        ]
        .map(String::from)
        .to_vec(),
        rows: rows
            .iter()
            .map(|r| {
                vec![
                    r.profile.label(),
                    r.profile.width_px.to_string(),
                    r.profile.height_px.to_string(),
                    format!("{:.3}", r.profile.fps),
                    format!("{:.3}", r.profile.bits_per_pixel),
                    r.mode.to_string(),
                    format!("{:.3}", r.bits_per_second),
                    format!("{:.6}", r.reduction),
                    r.clamped.to_string(),
                ]
            })
            .collect(),
    };
    let resolved = ScenarioConfig {
        seed: Some(seed),
        bandwidth: Some(BandwidthSettings {
            profiles: Some(profiles),
            semantic: settings.semantic,
        }),
        ..ScenarioConfig::default()
    };
    let cfg = config_text(&resolved)?;
    let mut out = Outputs::new(out_of(common, &file));
    out.add("bandwidth.csv", csv_table(&table));
    out.add("bandwidth.md", format!("# {}\n\n{}", table.title, md_table(&table)));
    let min = rows
        .iter()
        .filter(|r| r.mode == TransmissionMode::Semantic)
        .map(|r| r.reduction)
        .fold(f64::INFINITY, f64::min);
    out.finish("bandwidth", seed, &cfg, format!("minimum semantic reduction {min:.6}"))
}

pub fn cmd_parse(text: &str, config: Option<&Path>, common: &CommonArgs) -> Result<RunSummary, CliError> {
    let mut file = ScenarioConfig::load_opt(config)?;
    let seed = seed_of(common, &file);
    file.mission = MissionSource {
        request: Some(text.to_owned()),
        defaults: file.mission.defaults.clone(),
        ..MissionSource::default()
    };
    let spec = file.resolve_mission()?;
    let doc = mission::serialize(&spec)?;
    let resolved = ScenarioConfig {
        seed: Some(seed),
        mission: MissionSource {
            spec: Some(spec.clone()),
            ..MissionSource::default()
        },
        ..ScenarioConfig::default()
    };
    let cfg = config_text(&resolved)?;
    let mut out = Outputs::new(out_of(common, &file));
    out.add("mission.toml", doc);
    out.finish("parse", seed, &cfg, format!("{} ({})", spec.mission_id, spec.mission_type))
}

pub fn cmd_plan(
    mission_path: &Path,
    config: Option<&Path>,
    common: &CommonArgs,
    args: &ScenarioArgs,
) -> Result<RunSummary, CliError> {
    let mut file = ScenarioConfig::load_opt(config)?;
    if file.mission.request.is_some() || file.mission.spec.is_some() {
        return Err(CliError::Validation(
            "plan takes its mission from the command line; remove [mission] from the config".into(),
        ));
    }
    file.mission.path = Some(mission_path.to_owned());
    apply_flags(&mut file, args)?;
    let seed = seed_of(common, &file);
    let policy = file.policy.unwrap_or(PolicyArg::Energy);
    let scenario = file.scenario()?;
    let drones = scenario.fleet.sample(seed);
    let plan = assign_roles(&drones, &scenario.mission, policy.into(), &scenario.sim.planner)?;
    let resolved = ScenarioConfig {
        seed: Some(seed),
        ..file.resolved(&scenario, Some(policy))
    };
    let cfg = config_text(&resolved)?;
    let mut out = Outputs::new(out_of(common, &file));
    out.add("plan.toml", plan.to_document()?);
    let message = format!(
        "{} assignments, {} warnings{}",
        plan.assignments.len(),
        plan.warnings.len(),
        if plan.degraded { ", degraded" } else { "" }
    );
    out.finish("plan", seed, &cfg, message)
}

pub fn cmd_compare(
    config: Option<&Path>,
    seeds: Option<usize>,
    common: &CommonArgs,
    args: &ScenarioArgs,
) -> Result<RunSummary, CliError> {
    let mut file = ScenarioConfig::load_opt(config)?;
    if args.policy.is_some() {
        return Err(CliError::Validation("--policy does not apply to compare".into()));
    }
    apply_flags(&mut file, args)?;
    let base = seed_of(common, &file);
    let n = seeds.or(file.seeds).unwrap_or(DEFAULT_COMPARE_SEEDS);
    if n < MIN_SEEDS {
        return Err(SimError::TooFewSeeds { min: MIN_SEEDS, got: n }.into());
    }
    let seed_list: Vec<u64> = (0..n as u64).map(|i| base.wrapping_add(i)).collect();
    let scenario = file.scenario()?;
    let cmp = compare(
        &scenario,
        &seed_list,
        AllocationPolicy::EnergyAware,
        AllocationPolicy::Static,
    )?;
    let table = StatsTable {
        title: "Operational time by seed".into(),
        columns: [
            "seed",
            "energy_aware_s",
            "static_s",
            "delta_s",
            "energy_aware_coverage",
            "static_coverage",
        ]
        .map(String::from)
        .to_vec(),
        rows: cmp
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.seed.to_string(),
                    format!("{:.3}", r.a_operational_ms / 1000.0),
                    format!("{:.3}", r.b_operational_ms / 1000.0),
                    format!("{:.3}", r.delta_ms / 1000.0),
                    format!("{:.4}", r.a_coverage),
                    format!("{:.4}", r.b_coverage),
                ]
            })
            .collect(),
    };
    let resolved = ScenarioConfig {
        seed: Some(base),
        seeds: Some(n),
        ..file.resolved(&scenario, None)
    };
    let cfg = config_text(&resolved)?;
    let summary = format!(
        "EnergyAware mean {:.3} s, Static mean {:.3} s, wins {}, losses {}, ties {}, sign test p = {:.3e}",
        cmp.mean_a_ms / 1000.0,
        cmp.mean_b_ms / 1000.0,
        cmp.wins,
        cmp.losses,
        cmp.ties,
        cmp.sign_test_p
    );
    let mut out = Outputs::new(out_of(common, &file));
    out.add("compare.csv", csv_table(&table));
    out.add(
        "compare.md",
        format!("# Allocation policy comparison\n\n{summary}\n\n{}", md_table(&table)),
    );
    out.add("compare.toml", write_document("swarmnet.comparison", &cmp)?);
    out.finish("compare", base, &cfg, summary)
}

pub fn execute(cli: Cli) -> Result<RunSummary, CliError> {
    match cli.command {
        Command::Table1 { common, iterations } => cmd_table1(&common, iterations),
        Command::Simulate {
            config,
            common,
            scenario,
        } => cmd_simulate(config.as_deref(), &common, &scenario),
        Command::Bandwidth { config, common } => cmd_bandwidth(config.as_deref(), &common),
        Command::Parse { text, config, common } => cmd_parse(&text, config.as_deref(), &common),
        Command::Plan {
            mission,
            config,
            common,
            scenario,
        } => cmd_plan(&mission, config.as_deref(), &common, &scenario),
        Command::Compare {
            config,
            seeds,
            common,
            scenario,
        } => cmd_compare(config.as_deref(), seeds, &common, &scenario),
    }
}

/// Parse `args`, run, report and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(summary) => {
            println!("{}", summary.message);
            println!("wrote {} files to {}", summary.files.len(), summary.out_dir.display());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
