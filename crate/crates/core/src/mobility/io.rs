//! Trace CSV (`snapshot,time_s,node_id,x_m,y_m`) plus a JSON sidecar holding
//! the scenario and region. Snapshots and node ids in the file are 0-based;
//! file snapshot `k` is in-memory snapshot `k + 1` at time `(k + 1) * dt`.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{MobilityScenario, MobilityTrace, NodePosition, Region};
use crate::error::{Error, Result};

pub const TRACE_HEADER: [&str; 5] = ["snapshot", "time_s", "node_id", "x_m", "y_m"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSidecar {
    pub scenario: MobilityScenario,
    pub region: Region,
}

/// `runs/t.csv` -> `runs/t.json`.
pub fn sidecar_path(csv_path: &Path) -> PathBuf {
    csv_path.with_extension("json")
}

/// Writes the trace CSV to `csv_path` and its sidecar next to it.
pub fn write_trace(trace: &MobilityTrace, csv_path: &Path) -> Result<PathBuf> {
    let file = File::create(csv_path).map_err(|e| Error::io(csv_path, e))?;
    let mut out = BufWriter::new(file);
    write_trace_csv(trace, &mut out).map_err(|e| Error::io(csv_path, e))?;
    out.flush().map_err(|e| Error::io(csv_path, e))?;

    let sidecar = sidecar_path(csv_path);
    let meta = TraceSidecar {
        scenario: trace.scenario.clone(),
        region: trace.region,
    };
    let mut json = serde_json::to_string_pretty(&meta)?;
    json.push('\n');
    std::fs::write(&sidecar, json).map_err(|e| Error::io(&sidecar, e))?;
    Ok(sidecar)
}

pub fn write_trace_csv<W: Write>(trace: &MobilityTrace, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{}", TRACE_HEADER.join(","))?;
    for (k, row) in trace.snapshots.iter().enumerate() {
        let time = trace.scenario.snapshot_time(k + 1);
        for (node, p) in row.iter().enumerate() {
            writeln!(out, "{k},{time:.6},{node},{:.12},{:.12}", p.x, p.y)?;
        }
    }
    Ok(())
}

/// Reads a trace CSV; the sidecar defaults to [`sidecar_path`].
pub fn read_trace(csv_path: &Path, sidecar: Option<&Path>) -> Result<MobilityTrace> {
    let sidecar = sidecar.map(Path::to_path_buf).unwrap_or_else(|| sidecar_path(csv_path));
    let meta_text = std::fs::read_to_string(&sidecar).map_err(|e| Error::io(&sidecar, e))?;
    let meta: TraceSidecar = serde_json::from_str(&meta_text)?;
    let file = File::open(csv_path).map_err(|e| Error::io(csv_path, e))?;
    read_trace_csv(file, csv_path, meta.scenario, meta.region)
}

pub fn read_trace_csv<R: Read>(
    input: R,
    path: &Path,
    scenario: MobilityScenario,
    region: Region,
) -> Result<MobilityTrace> {
    let bad = |line: usize, reason: String| Error::TraceFormat {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = reader.headers()?.clone();
    if header.iter().ne(TRACE_HEADER) {
        return Err(bad(1, format!("expected header `{}`", TRACE_HEADER.join(","))));
    }

    let t_count = scenario.snapshot_count();
    let n = scenario.node_count;
    let mut snapshots = vec![vec![NodePosition::new(f64::NAN, f64::NAN); n]; t_count];
    let mut seen = vec![false; t_count * n];
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record?;
        if record.len() != 5 {
            return Err(bad(line, format!("expected 5 fields, found {}", record.len())));
        }
        let int = |j: usize| {
            record[j]
                .trim()
                .parse::<usize>()
                .map_err(|e| bad(line, format!("{}: {e}", TRACE_HEADER[j])))
        };
        let float = |j: usize| {
            record[j]
                .trim()
                .parse::<f64>()
                .map_err(|e| bad(line, format!("{}: {e}", TRACE_HEADER[j])))
        };
        let (k, node) = (int(0)?, int(2)?);
        let (time, x, y) = (float(1)?, float(3)?, float(4)?);
        if k >= t_count {
            return Err(bad(line, format!("snapshot {k} beyond trace length {t_count}")));
        }
        if node >= n {
            return Err(bad(line, format!("node_id {node} beyond node count {n}")));
        }
        if (time - scenario.snapshot_time(k + 1)).abs() > 1e-6 {
            return Err(bad(line, format!("time_s {time} does not match snapshot {k}")));
        }
        if std::mem::replace(&mut seen[k * n + node], true) {
            return Err(bad(line, format!("duplicate row for snapshot {k}, node {node}")));
        }
        snapshots[k][node] = NodePosition::new(x, y);
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(bad(
            0,
            format!("missing row for snapshot {}, node {}", missing / n, missing % n),
        ));
    }
    Ok(MobilityTrace {
        scenario,
        region,
        snapshots,
    })
}
