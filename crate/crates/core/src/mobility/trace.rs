use std::fmt;

use super::{MobilityTrace, POSITION_EPSILON};

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    /// Snapshot count or per-snapshot node count does not match the scenario.
    Shape { expected: usize, found: usize },
    OutOfBounds { x: f64, y: f64 },
    OffStreet { x: f64, y: f64 },
    TooFast { displacement: f64, limit: f64 },
}

/// First invariant violation found in a trace. `snapshot` is 1-based.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceViolation {
    pub snapshot: usize,
    pub node: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for TraceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "snapshot {}", self.snapshot)?;
        if let Some(node) = self.node {
            write!(f, ", node {node}")?;
        }
        match &self.kind {
            ViolationKind::Shape { expected, found } => {
                write!(f, ": expected {expected} entries, found {found}")
            }
            ViolationKind::OutOfBounds { x, y } => {
                write!(f, ": position ({x}, {y}) lies outside the region")
            }
            ViolationKind::OffStreet { x, y } => {
                write!(f, ": position ({x}, {y}) is not on a street line")
            }
            ViolationKind::TooFast { displacement, limit } => write!(
                f,
                ": moved {displacement} m since the previous snapshot (limit {limit} m)"
            ),
        }
    }
}

impl std::error::Error for TraceViolation {}

/// Checks shape, region bounds, street adherence (grid models) and the
/// per-snapshot speed bound. Returns the first violation in snapshot-major,
/// node-minor order.
pub fn validate_trace(trace: &MobilityTrace) -> Result<(), TraceViolation> {
    let scenario = &trace.scenario;
    let region = &trace.region;
    let expected = scenario.snapshot_count();
    if trace.snapshots.len() != expected {
        return Err(TraceViolation {
            snapshot: trace.snapshots.len().min(expected) + 1,
            node: None,
            kind: ViolationKind::Shape {
                expected,
                found: trace.snapshots.len(),
            },
        });
    }
    let limit = scenario.velocity * scenario.sample_interval + POSITION_EPSILON;
    let grid = scenario.model.is_grid();
    for (k, row) in trace.snapshots.iter().enumerate() {
        let snapshot = k + 1;
        if row.len() != scenario.node_count {
            return Err(TraceViolation {
                snapshot,
                node: None,
                kind: ViolationKind::Shape {
                    expected: scenario.node_count,
                    found: row.len(),
                },
            });
        }
        for (node, p) in row.iter().enumerate() {
            let at = |kind| TraceViolation {
                snapshot,
                node: Some(node),
                kind,
            };
            if !region.contains(*p, POSITION_EPSILON) || !p.x.is_finite() || !p.y.is_finite() {
                return Err(at(ViolationKind::OutOfBounds { x: p.x, y: p.y }));
            }
            if grid && !region.on_street(*p, POSITION_EPSILON) {
                return Err(at(ViolationKind::OffStreet { x: p.x, y: p.y }));
            }
            if k > 0 {
                let displacement = trace.snapshots[k - 1][node].distance(p);
                if displacement > limit {
                    return Err(at(ViolationKind::TooFast {
                        displacement,
                        limit,
                    }));
                }
            }
        }
    }
    Ok(())
}
