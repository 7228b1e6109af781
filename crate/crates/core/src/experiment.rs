//! Seeded experiment grid over mobility model x node density x velocity.
//!
//! Within a cell every trace is processed once: each snapshot graph is built
//! a single time and fed to the ORA and LORA trackers of every session and to
//! both CDS trackers, so the two strategies always see identical topology.
//!
//! Seeds are derived, never drawn: the trace seed is
//! `derive_seed(base_seed, [TRACE, model, density, velocity bits, index])`
//! and the session seed uses the `SESSIONS` tag in place of `TRACE`.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cds::{CdsTimeline, CdsTracker};
use crate::error::{Error, Result};
use crate::graph::build_static_graph;
use crate::metrics::{CdsMetrics, SessionMetrics};
use crate::mobility::{generate_trace, MobilityModel, MobilityScenario, MobilityTrace, Region};
use crate::routing::{PathTimeline, PathTracker, SdSession, Strategy};

const TAG_TRACE: u64 = 0x0074_7261_6365;
const TAG_SESSIONS: u64 = 0x7365_7373_696f_6e73;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit mix of a base seed and a list of components.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(base), |h, &p| splitmix64(h ^ splitmix64(p)))
}

/// Identifies one grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CellKey {
    pub model: MobilityModel,
    pub density: usize,
    pub velocity: f64,
}

impl CellKey {
    fn model_index(&self) -> u64 {
        MobilityModel::ALL
            .iter()
            .position(|m| *m == self.model)
            .expect("model listed in ALL") as u64
    }

    pub fn trace_seed(&self, base_seed: u64, trace_index: usize) -> u64 {
        derive_seed(
            base_seed,
            &[
                TAG_TRACE,
                self.model_index(),
                self.density as u64,
                self.velocity.to_bits(),
                trace_index as u64,
            ],
        )
    }

    pub fn session_seed(&self, base_seed: u64, trace_index: usize) -> u64 {
        derive_seed(
            base_seed,
            &[
                TAG_SESSIONS,
                self.model_index(),
                self.density as u64,
                self.velocity.to_bits(),
                trace_index as u64,
            ],
        )
    }
}

/// Experiment configuration. Every field has a default, so a plan file only
/// needs the fields it overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentPlan {
    pub models: Vec<MobilityModel>,
    pub densities: Vec<usize>,
    /// m/s
    pub velocities: Vec<f64>,
    pub traces_per_cell: usize,
    pub sessions_per_trace: usize,
    pub region: Region,
    /// Transmission range in meters.
    pub range: f64,
    /// Seconds.
    pub duration: f64,
    /// Seconds between topology snapshots.
    pub sample_interval: f64,
    /// Seconds; applies to Random Waypoint and City Section.
    pub pause_time: f64,
    /// Session start times are drawn uniformly from the sample instants in
    /// `[first, last]` seconds.
    pub session_start_window: [f64; 2],
    pub base_seed: u64,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            models: MobilityModel::ALL.to_vec(),
            densities: vec![50, 100, 150],
            velocities: vec![2.5, 12.5, 25.0],
            traces_per_cell: 5,
            sessions_per_trace: 20,
            region: Region::default(),
            range: 250.0,
            duration: 1000.0,
            sample_interval: 0.25,
            pause_time: 0.0,
            session_start_window: [1.0, 20.0],
            base_seed: 1,
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        if self.models.is_empty() {
            return Err(Error::config("models", "must list at least one model"));
        }
        if self.densities.is_empty() || self.densities.iter().any(|&d| d < 2) {
            return Err(Error::config("densities", "must be non-empty with every value >= 2"));
        }
        if self.velocities.is_empty()
            || self.velocities.iter().any(|v| !(v.is_finite() && *v >= 0.0))
        {
            return Err(Error::config("velocities", "must be non-empty finite values >= 0"));
        }
        if self.traces_per_cell == 0 {
            return Err(Error::config("traces_per_cell", "must be positive"));
        }
        if self.sessions_per_trace == 0 {
            return Err(Error::config("sessions_per_trace", "must be positive"));
        }
        let min_density = *self.densities.iter().min().expect("non-empty");
        if self.sessions_per_trace > min_density * (min_density - 1) / 2 {
            return Err(Error::config(
                "sessions_per_trace",
                format!("exceeds the {} distinct pairs of {min_density} nodes", min_density * (min_density - 1) / 2),
            ));
        }
        if !(self.range.is_finite() && self.range > 0.0) {
            return Err(Error::config("range", "must be positive"));
        }
        self.region
            .validate(self.models.iter().any(MobilityModel::is_grid))?;
        // Scenario checks cover duration, sample interval and pause time.
        self.scenario(
            CellKey {
                model: self.models[0],
                density: min_density,
                velocity: self.velocities[0],
            },
            0,
        )
        .validate()?;
        self.session_window().validate(self.duration)?;
        Ok(())
    }

    pub fn session_window(&self) -> SessionWindow {
        SessionWindow {
            first: self.session_start_window[0],
            last: self.session_start_window[1],
            sample_interval: self.sample_interval,
        }
    }

    /// Cells in `(model, density, velocity)` order.
    pub fn cells(&self) -> Vec<CellKey> {
        let mut models = self.models.clone();
        models.sort();
        models.dedup();
        let mut densities = self.densities.clone();
        densities.sort_unstable();
        densities.dedup();
        let mut velocities = self.velocities.clone();
        velocities.sort_by(f64::total_cmp);
        velocities.dedup();
        let mut cells = Vec::new();
        for &model in &models {
            for &density in &densities {
                for &velocity in &velocities {
                    cells.push(CellKey {
                        model,
                        density,
                        velocity,
                    });
                }
            }
        }
        cells
    }

    pub fn scenario(&self, key: CellKey, trace_index: usize) -> MobilityScenario {
        MobilityScenario {
            model: key.model,
            node_count: key.density,
            velocity: key.velocity,
            pause_time: self.pause_time,
            duration: self.duration,
            sample_interval: self.sample_interval,
            seed: key.trace_seed(self.base_seed, trace_index),
        }
    }
}

/// Sample instants from which session start times are drawn.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SessionWindow {
    pub first: f64,
    pub last: f64,
    pub sample_interval: f64,
}

impl Default for SessionWindow {
    fn default() -> Self {
        SessionWindow {
            first: 1.0,
            last: 20.0,
            sample_interval: 0.25,
        }
    }
}

impl SessionWindow {
    fn validate(&self, duration: f64) -> Result<()> {
        let ok = self.first.is_finite()
            && self.last.is_finite()
            && self.first >= self.sample_interval - 1e-9
            && self.first <= self.last
            && self.last <= duration + 1e-9;
        if !ok {
            return Err(Error::config(
                "session_start_window",
                format!("must satisfy sample_interval <= first <= last <= duration ({duration})"),
            ));
        }
        Ok(())
    }

    fn first_snapshot(&self) -> usize {
        (self.first / self.sample_interval).round() as usize
    }

    fn slots(&self) -> usize {
        ((self.last - self.first) / self.sample_interval).round() as usize + 1
    }
}

/// `count` distinct unordered node pairs drawn uniformly without replacement,
/// each with a start snapshot uniform over the window `1.0, 1.25, ..., 20.0`
/// seconds.
pub fn select_sessions(seed: u64, node_count: usize, count: usize) -> Result<Vec<SdSession>> {
    select_sessions_in(seed, node_count, count, &SessionWindow::default())
}

/// [`select_sessions`] with an explicit start window. For each session the
/// pair is drawn first (source, then destination, rejecting repeats of an
/// unordered pair), then the start slot.
pub fn select_sessions_in(
    seed: u64,
    node_count: usize,
    count: usize,
    window: &SessionWindow,
) -> Result<Vec<SdSession>> {
    let pairs = node_count * node_count.saturating_sub(1) / 2;
    if count > pairs {
        return Err(Error::config(
            "sessions_per_trace",
            format!("{count} sessions requested but only {pairs} distinct pairs exist"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used = HashSet::with_capacity(count);
    let first = window.first_snapshot();
    let slots = window.slots();
    let mut sessions = Vec::with_capacity(count);
    while sessions.len() < count {
        let source = rng.gen_range(0..node_count);
        let mut destination = rng.gen_range(0..node_count - 1);
        if destination >= source {
            destination += 1;
        }
        if !used.insert((source.min(destination), source.max(destination))) {
            continue;
        }
        let start_snapshot = first + rng.gen_range(0..slots);
        sessions.push(SdSession {
            source,
            destination,
            start_snapshot,
        });
    }
    Ok(sessions)
}

/// Every timeline produced for one trace of a cell.
#[derive(Debug, Clone)]
pub struct TraceRun {
    pub trace_index: usize,
    pub trace_seed: u64,
    pub sessions: Vec<SdSession>,
    pub ora_paths: Vec<PathTimeline>,
    pub lora_paths: Vec<PathTimeline>,
    pub ora_cds: CdsTimeline,
    pub lora_cds: CdsTimeline,
}

impl TraceRun {
    /// Snapshots where both strategies had a path, and how many of those had
    /// a LORA path shorter than the ORA one.
    pub fn dominance(&self) -> (usize, usize) {
        let mut checked = 0;
        let mut violations = 0;
        for (ora, lora) in self.ora_paths.iter().zip(&self.lora_paths) {
            for (o, l) in ora.entries().iter().zip(lora.entries()) {
                if let (Some(o), Some(l)) = (o, l) {
                    checked += 1;
                    if l.hop_count() < o.hop_count() {
                        violations += 1;
                    }
                }
            }
        }
        (checked, violations)
    }
}

/// Generates trace `trace_index` of `key` and runs both strategies on it.
pub fn run_trace(plan: &ExperimentPlan, key: CellKey, trace_index: usize) -> Result<TraceRun> {
    let scenario = plan.scenario(key, trace_index);
    let trace = generate_trace(&scenario, &plan.region)?;
    let sessions = select_sessions_in(
        key.session_seed(plan.base_seed, trace_index),
        key.density,
        plan.sessions_per_trace,
        &plan.session_window(),
    )?;
    run_on_trace(&trace, plan.range, trace_index, sessions)
}

/// Runs ORA and LORA paths for `sessions` and both CDS strategies on an
/// existing trace.
pub fn run_on_trace(
    trace: &MobilityTrace,
    range: f64,
    trace_index: usize,
    sessions: Vec<SdSession>,
) -> Result<TraceRun> {
    let dt = trace.scenario.sample_interval;
    let mut ora = Vec::with_capacity(sessions.len());
    let mut lora = Vec::with_capacity(sessions.len());
    for &s in &sessions {
        if s.start_snapshot > trace.len() {
            return Err(Error::config(
                "session.start_snapshot",
                format!("{} exceeds trace length {}", s.start_snapshot, trace.len()),
            ));
        }
        ora.push(PathTracker::new(Strategy::Ora, s, dt)?);
        lora.push(PathTracker::new(Strategy::Lora, s, dt)?);
    }
    let mut ora_cds = CdsTracker::new(Strategy::Ora, dt);
    let mut lora_cds = CdsTracker::new(Strategy::Lora, dt);

    for i in 1..=trace.len() {
        let graph = build_static_graph(
            trace.positions(i),
            range,
            i,
            trace.scenario.snapshot_time(i),
        );
        for tracker in ora.iter_mut().chain(lora.iter_mut()) {
            tracker.step(&graph)?;
        }
        ora_cds.step(&graph);
        lora_cds.step(&graph);
    }

    Ok(TraceRun {
        trace_index,
        trace_seed: trace.scenario.seed,
        sessions,
        ora_paths: ora.into_iter().map(PathTracker::finish).collect(),
        lora_paths: lora.into_iter().map(PathTracker::finish).collect(),
        ora_cds: ora_cds.finish(),
        lora_cds: lora_cds.finish(),
    })
}

/// Mean, sample standard deviation and sample count of one metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub count: usize,
    pub mean: Option<f64>,
    pub std_dev: Option<f64>,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        if count == 0 {
            return Summary {
                count,
                mean: None,
                std_dev: None,
            };
        }
        let mean = values.iter().sum::<f64>() / count as f64;
        let std_dev = (count > 1).then(|| {
            let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (count - 1) as f64).sqrt()
        });
        Summary {
            count,
            mean: Some(mean),
            std_dev,
        }
    }
}

/// Cell-level averages for one strategy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrategyAggregate {
    /// Per-session time-averaged hop count (sessions that ever had a path).
    pub hop_count: Summary,
    /// Per-session fraction of snapshots with an s-d path.
    pub connectivity: Summary,
    /// Per-session mean route lifetime in seconds (LORA only).
    pub route_lifetime: Option<Summary>,
    /// Per-trace time-averaged CDS size.
    pub cds_size: Summary,
    /// Per-trace mean CDS lifetime in seconds (LORA only).
    pub cds_lifetime: Option<Summary>,
    /// Per-trace fraction of snapshots with a connected network.
    pub cds_connected_fraction: Summary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellAggregate {
    pub key: CellKey,
    pub traces: usize,
    pub sessions: usize,
    pub ora: StrategyAggregate,
    pub lora: StrategyAggregate,
    /// `(LORA - ORA) / ORA * 100` on mean hop count.
    pub percent_increase_hops: Option<f64>,
    /// `(LORA - ORA) / ORA * 100` on mean CDS size.
    pub percent_increase_cds: Option<f64>,
    /// Snapshots where both strategies had a path.
    pub dominance_checked: usize,
    /// Of those, snapshots where the LORA path was shorter than the ORA one.
    pub dominance_violations: usize,
}

fn percent_increase(ora: &Summary, lora: &Summary) -> Option<f64> {
    match (ora.mean, lora.mean) {
        (Some(o), Some(l)) if o > 0.0 => Some((l - o) / o * 100.0),
        _ => None,
    }
}

#[derive(Debug, Default)]
struct Samples {
    hop: Vec<f64>,
    connectivity: Vec<f64>,
    route_lifetime: Vec<f64>,
    cds_size: Vec<f64>,
    cds_lifetime: Vec<f64>,
    cds_connected: Vec<f64>,
}

impl Samples {
    fn add_session(&mut self, m: &SessionMetrics) {
        self.hop.extend(m.time_avg_hop_count);
        self.connectivity.push(m.connectivity_fraction);
        self.route_lifetime.extend(m.avg_route_lifetime);
    }

    fn add_cds(&mut self, m: &CdsMetrics) {
        self.cds_size.extend(m.avg_cds_size);
        self.cds_lifetime.extend(m.avg_cds_lifetime);
        self.cds_connected.push(m.connected_fraction);
    }

    fn summarize(&self, strategy: Strategy) -> StrategyAggregate {
        let lora_only = |v: &[f64]| (strategy == Strategy::Lora).then(|| Summary::of(v));
        StrategyAggregate {
            hop_count: Summary::of(&self.hop),
            connectivity: Summary::of(&self.connectivity),
            route_lifetime: lora_only(&self.route_lifetime),
            cds_size: Summary::of(&self.cds_size),
            cds_lifetime: lora_only(&self.cds_lifetime),
            cds_connected_fraction: Summary::of(&self.cds_connected),
        }
    }
}

/// Averages one trace run's metrics into a cell.
pub fn aggregate(key: CellKey, runs: &[TraceRun]) -> CellAggregate {
    let mut ora = Samples::default();
    let mut lora = Samples::default();
    let mut checked = 0;
    let mut violations = 0;
    let mut sessions = 0;
    for run in runs {
        for tl in &run.ora_paths {
            ora.add_session(&SessionMetrics::from_timeline(tl));
        }
        for tl in &run.lora_paths {
            lora.add_session(&SessionMetrics::from_timeline(tl));
        }
        ora.add_cds(&CdsMetrics::from_timeline(&run.ora_cds));
        lora.add_cds(&CdsMetrics::from_timeline(&run.lora_cds));
        let (c, v) = run.dominance();
        checked += c;
        violations += v;
        sessions += run.sessions.len();
    }
    let ora = ora.summarize(Strategy::Ora);
    let lora = lora.summarize(Strategy::Lora);
    CellAggregate {
        key,
        traces: runs.len(),
        sessions,
        percent_increase_hops: percent_increase(&ora.hop_count, &lora.hop_count),
        percent_increase_cds: percent_increase(&ora.cds_size, &lora.cds_size),
        ora,
        lora,
        dominance_checked: checked,
        dominance_violations: violations,
    }
}

/// Runs every trace of one cell and aggregates.
pub fn run_cell(plan: &ExperimentPlan, key: CellKey) -> Result<CellAggregate> {
    plan.validate()?;
    run_cell_unchecked(plan, key)
}

fn run_cell_unchecked(plan: &ExperimentPlan, key: CellKey) -> Result<CellAggregate> {
    let runs: Vec<TraceRun> = (0..plan.traces_per_cell)
        .into_par_iter()
        .map(|t| run_trace(plan, key, t))
        .collect::<Result<_>>()?;
    Ok(aggregate(key, &runs))
}

/// Runs every cell of the plan. Output order is [`ExperimentPlan::cells`]
/// regardless of how work is scheduled.
pub fn run_plan(plan: &ExperimentPlan) -> Result<Vec<CellAggregate>> {
    plan.validate()?;
    plan.cells()
        .into_par_iter()
        .map(|key| run_cell_unchecked(plan, key))
        .collect()
}
