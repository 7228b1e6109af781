//! Generates a short trace under each mobility model, checks it against the
//! trace invariants and writes it as CSV plus JSON sidecar.
//!
//! ```text
//! cargo run --example generate_trace -- [output-dir]
//! ```

use std::path::PathBuf;

use manet_sim::mobility::{
    generate_trace, read_trace, validate_trace, write_trace, MobilityModel, MobilityScenario,
    Region,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("manet-sim-traces"));
    std::fs::create_dir_all(&dir)?;
    let region = Region::default();

    for model in MobilityModel::ALL {
        let scenario = MobilityScenario {
            model,
            node_count: 20,
            velocity: 12.5,
            pause_time: 0.0,
            duration: 60.0,
            sample_interval: 0.25,
            seed: 7,
        };
        let trace = generate_trace(&scenario, &region)?;
        validate_trace(&trace)?;

        let csv = dir.join(format!("{}.csv", model.key()));
        let sidecar = write_trace(&trace, &csv)?;
        let reread = read_trace(&csv, None)?;
        validate_trace(&reread)?;

        let last = trace.positions(trace.len());
        let on_street = last.iter().filter(|&&p| region.on_street(p, 1e-9)).count();
        println!(
            "{:<10} {} snapshots, node 0 ends at ({:.1}, {:.1}), {}/{} nodes on a street line -> {} (+ {})",
            model.to_string(),
            trace.len(),
            last[0].x,
            last[0].y,
            on_street,
            last.len(),
            csv.display(),
            sidecar.file_name().unwrap_or_default().to_string_lossy()
        );
    }
    Ok(())
}
