//! Runs the full default grid (3 models x 3 densities x 3 velocities, 5
//! traces and 20 sessions per cell) and writes results.csv, results.json and
//! the plot tables. Takes about a minute in release mode.
//!
//! ```text
//! cargo run --release --example full_grid -- [output-dir]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use manet_sim::experiment::{run_plan, ExperimentPlan};
use manet_sim::report::write_reports;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("results"));
    let plan = ExperimentPlan::default();
    let started = Instant::now();
    let cells = run_plan(&plan)?;
    println!("{} cells in {:.1} s", cells.len(), started.elapsed().as_secs_f64());

    println!("{:<10}{:>8}{:>8}{:>10}{:>10}{:>9}{:>10}{:>10}{:>9}", "model", "nodes", "m/s", "hop ORA", "hop LORA", "incr %", "CDS ORA", "CDS LORA", "incr %");
    for c in &cells {
        let f = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.2}"));
        println!(
            "{:<10}{:>8}{:>8}{:>10}{:>10}{:>9}{:>10}{:>10}{:>9}",
            c.key.model.to_string(),
            c.key.density,
            c.key.velocity,
            f(c.ora.hop_count.mean),
            f(c.lora.hop_count.mean),
            f(c.percent_increase_hops),
            f(c.ora.cds_size.mean),
            f(c.lora.cds_size.mean),
            f(c.percent_increase_cds),
        );
    }
    for path in write_reports(&dir, &cells)? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
