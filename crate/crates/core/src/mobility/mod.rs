//! Seeded node-mobility trace generation.
//!
//! Three models are supported: Random Waypoint (free movement inside the
//! region), City Section and Manhattan (movement restricted to a square street
//! grid). Every trace is a pure function of its [`MobilityScenario`] and
//! [`Region`]; all randomness comes from one ChaCha8 stream seeded with
//! `scenario.seed`.
//!
//! Draw order on that stream is fixed:
//!
//! 1. initial placement for nodes `0..n` in id order (Random Waypoint draws
//!    `x` then `y`; grid models draw a column then a row intersection index);
//! 2. the full trajectory of node 0 over the horizon, then node 1, and so on.
//!    Within a trajectory, draws happen in the order the node makes decisions.
//!
//! Snapshot `i` (1-based) is the position of every node at time
//! `i * sample_interval`; the initial placement at time 0 is not reported.

mod city_section;
mod io;
mod manhattan;
mod random_waypoint;
mod trace;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use city_section::street_route;
pub use io::{read_trace, read_trace_csv, sidecar_path, write_trace, TraceSidecar};
pub use manhattan::{turn_options, Heading};
pub use trace::{validate_trace, TraceViolation, ViolationKind};

/// Slack applied to geometric trace invariants, in meters.
pub const POSITION_EPSILON: f64 = 1e-9;

/// Rectangular simulation area anchored at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub width: f64,
    pub height: f64,
    /// Side of one square street block; only meaningful for grid models.
    pub block_length: f64,
}

impl Default for Region {
    fn default() -> Self {
        Region {
            width: 1000.0,
            height: 1000.0,
            block_length: 100.0,
        }
    }
}

impl Region {
    pub fn validate(&self, grid: bool) -> Result<()> {
        if !(self.width.is_finite() && self.width > 0.0) {
            return Err(Error::config("region.width", "must be a positive number"));
        }
        if !(self.height.is_finite() && self.height > 0.0) {
            return Err(Error::config("region.height", "must be a positive number"));
        }
        if grid {
            if !(self.block_length.is_finite() && self.block_length > 0.0) {
                return Err(Error::config(
                    "region.block_length",
                    "must be a positive number for grid models",
                ));
            }
            if !is_integer_multiple(self.width, self.block_length) {
                return Err(Error::config(
                    "region.width",
                    "must be an integer multiple of block_length",
                ));
            }
            if !is_integer_multiple(self.height, self.block_length) {
                return Err(Error::config(
                    "region.height",
                    "must be an integer multiple of block_length",
                ));
            }
        }
        Ok(())
    }

    /// Number of blocks along the x axis.
    pub fn columns(&self) -> usize {
        (self.width / self.block_length).round() as usize
    }

    /// Number of blocks along the y axis.
    pub fn rows(&self) -> usize {
        (self.height / self.block_length).round() as usize
    }

    /// Coordinates of the street intersection `(column, row)`.
    pub fn intersection(&self, column: usize, row: usize) -> NodePosition {
        NodePosition {
            x: column as f64 * self.block_length,
            y: row as f64 * self.block_length,
        }
    }

    pub fn contains(&self, p: NodePosition, eps: f64) -> bool {
        p.x >= -eps && p.x <= self.width + eps && p.y >= -eps && p.y <= self.height + eps
    }

    /// True when `p` lies on a horizontal or vertical street line.
    pub fn on_street(&self, p: NodePosition, eps: f64) -> bool {
        off_line(p.x, self.block_length) <= eps || off_line(p.y, self.block_length) <= eps
    }

    fn clamp(&self, p: NodePosition) -> NodePosition {
        NodePosition {
            x: p.x.clamp(0.0, self.width),
            y: p.y.clamp(0.0, self.height),
        }
    }
}

fn off_line(coord: f64, block: f64) -> f64 {
    (coord - (coord / block).round() * block).abs()
}

fn is_integer_multiple(value: f64, unit: f64) -> bool {
    let ratio = value / unit;
    ratio >= 1.0 - 1e-9 && (ratio - ratio.round()).abs() <= 1e-9
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NodePosition {
    pub x: f64,
    pub y: f64,
}

impl NodePosition {
    pub fn new(x: f64, y: f64) -> Self {
        NodePosition { x, y }
    }

    pub fn distance(&self, other: &NodePosition) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MobilityModel {
    #[serde(rename = "rwp", alias = "random-waypoint")]
    RandomWaypoint,
    #[serde(rename = "city", alias = "city-section")]
    CitySection,
    #[serde(rename = "manhattan")]
    Manhattan,
}

impl MobilityModel {
    pub const ALL: [MobilityModel; 3] = [
        MobilityModel::RandomWaypoint,
        MobilityModel::CitySection,
        MobilityModel::Manhattan,
    ];

    /// Short identifier used in files and on the command line.
    pub fn key(&self) -> &'static str {
        match self {
            MobilityModel::RandomWaypoint => "rwp",
            MobilityModel::CitySection => "city",
            MobilityModel::Manhattan => "manhattan",
        }
    }

    pub fn is_grid(&self) -> bool {
        !matches!(self, MobilityModel::RandomWaypoint)
    }
}

impl fmt::Display for MobilityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for MobilityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rwp" | "random-waypoint" | "randomwaypoint" => Ok(MobilityModel::RandomWaypoint),
            "city" | "city-section" | "citysection" => Ok(MobilityModel::CitySection),
            "manhattan" => Ok(MobilityModel::Manhattan),
            other => Err(Error::config(
                "model",
                format!("unknown mobility model `{other}` (expected rwp, city or manhattan)"),
            )),
        }
    }
}

/// Everything needed to reproduce one mobility trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobilityScenario {
    pub model: MobilityModel,
    pub node_count: usize,
    /// Node speed in m/s. Zero produces a static trace.
    pub velocity: f64,
    /// Dwell time at each waypoint (Random Waypoint and City Section only).
    pub pause_time: f64,
    pub duration: f64,
    pub sample_interval: f64,
    pub seed: u64,
}

impl MobilityScenario {
    pub fn validate(&self) -> Result<()> {
        if self.node_count < 2 {
            return Err(Error::config("node_count", "must be at least 2"));
        }
        if !(self.velocity.is_finite() && self.velocity >= 0.0) {
            return Err(Error::config("velocity", "must be a finite number >= 0"));
        }
        if !(self.pause_time.is_finite() && self.pause_time >= 0.0) {
            return Err(Error::config("pause_time", "must be a finite number >= 0"));
        }
        if !(self.sample_interval.is_finite() && self.sample_interval > 0.0) {
            return Err(Error::config("sample_interval", "must be positive"));
        }
        if !(self.duration.is_finite() && self.duration > 0.0) {
            return Err(Error::config("duration", "must be positive"));
        }
        if !is_integer_multiple(self.duration, self.sample_interval) {
            return Err(Error::config(
                "duration",
                "must be a positive integer multiple of sample_interval",
            ));
        }
        Ok(())
    }

    /// Number of snapshots `T` in the trace.
    pub fn snapshot_count(&self) -> usize {
        (self.duration / self.sample_interval).round() as usize
    }

    /// Simulation time of 1-based snapshot `i`.
    pub fn snapshot_time(&self, i: usize) -> f64 {
        i as f64 * self.sample_interval
    }
}

/// Sampled positions of every node at snapshots `1..=T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MobilityTrace {
    pub scenario: MobilityScenario,
    pub region: Region,
    /// `snapshots[i - 1][node]` is the position at snapshot `i`.
    pub snapshots: Vec<Vec<NodePosition>>,
}

impl MobilityTrace {
    pub fn len(&self) -> usize {
        self.snapshots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.snapshots.is_empty()
    }

    /// Positions at 1-based snapshot `i`.
    pub fn positions(&self, i: usize) -> &[NodePosition] {
        &self.snapshots[i - 1]
    }
}

/// Time-stamped corner of a piecewise-linear trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Waypoint {
    pub t: f64,
    pub pos: NodePosition,
}

/// Generates a trace for `scenario` inside `region`.
pub fn generate_trace(scenario: &MobilityScenario, region: &Region) -> Result<MobilityTrace> {
    scenario.validate()?;
    region.validate(scenario.model.is_grid())?;

    let mut rng = ChaCha8Rng::seed_from_u64(scenario.seed);
    let n = scenario.node_count;

    let starts: Vec<NodePosition> = (0..n)
        .map(|_| match scenario.model {
            MobilityModel::RandomWaypoint => random_waypoint::random_point(&mut rng, region),
            MobilityModel::CitySection | MobilityModel::Manhattan => {
                let (c, r) = random_intersection(&mut rng, region);
                region.intersection(c, r)
            }
        })
        .collect();

    let t_count = scenario.snapshot_count();
    let mut snapshots = vec![vec![NodePosition::default(); n]; t_count];
    for (node, start) in starts.into_iter().enumerate() {
        let path = match scenario.model {
            MobilityModel::RandomWaypoint => {
                random_waypoint::trajectory(&mut rng, region, scenario, start)
            }
            MobilityModel::CitySection => city_section::trajectory(&mut rng, region, scenario, start),
            MobilityModel::Manhattan => manhattan::trajectory(&mut rng, region, scenario, start),
        };
        let mut cursor = 0;
        for (k, row) in snapshots.iter_mut().enumerate() {
            let t = scenario.snapshot_time(k + 1);
            row[node] = region.clamp(sample(&path, &mut cursor, t));
        }
    }

    Ok(MobilityTrace {
        scenario: scenario.clone(),
        region: *region,
        snapshots,
    })
}

pub(crate) fn random_intersection<R: Rng>(rng: &mut R, region: &Region) -> (usize, usize) {
    let c = rng.gen_range(0..=region.columns());
    let r = rng.gen_range(0..=region.rows());
    (c, r)
}

/// Position along `path` at time `t`; `cursor` only moves forward so that
/// sampling increasing times is linear overall.
fn sample(path: &[Waypoint], cursor: &mut usize, t: f64) -> NodePosition {
    while *cursor + 1 < path.len() && path[*cursor + 1].t < t {
        *cursor += 1;
    }
    let a = path[*cursor];
    let Some(b) = path.get(*cursor + 1) else {
        return a.pos;
    };
    let span = b.t - a.t;
    if span <= 0.0 {
        return b.pos;
    }
    let f = ((t - a.t) / span).clamp(0.0, 1.0);
    NodePosition {
        x: a.pos.x + (b.pos.x - a.pos.x) * f,
        y: a.pos.y + (b.pos.y - a.pos.y) * f,
    }
}
