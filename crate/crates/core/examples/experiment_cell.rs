//! Runs one cell of the experiment grid at full scale and prints the ORA/LORA
//! comparison.
//!
//! ```text
//! cargo run --release --example experiment_cell -- manhattan 100 12.5
//! ```

use std::time::Instant;

use manet_sim::experiment::{run_cell, CellKey, ExperimentPlan};
use manet_sim::mobility::MobilityModel;

fn fmt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.3}"))
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let model: MobilityModel = args.next().as_deref().unwrap_or("rwp").parse()?;
    let density: usize = args.next().as_deref().unwrap_or("50").parse()?;
    let velocity: f64 = args.next().as_deref().unwrap_or("2.5").parse()?;

    let plan = ExperimentPlan::default();
    let key = CellKey {
        model,
        density,
        velocity,
    };
    let started = Instant::now();
    let cell = run_cell(&plan, key)?;
    println!(
        "{model} / {density} nodes / {velocity} m/s: {} traces, {} sessions, {:.1} s",
        cell.traces,
        cell.sessions,
        started.elapsed().as_secs_f64()
    );
    println!("{:<24}{:>10}{:>10}", "metric", "ORA", "LORA");
    let rows = [
        ("hop count", cell.ora.hop_count.mean, cell.lora.hop_count.mean),
        ("connectivity", cell.ora.connectivity.mean, cell.lora.connectivity.mean),
        ("route lifetime (s)", None, cell.lora.route_lifetime.and_then(|s| s.mean)),
        ("CDS size", cell.ora.cds_size.mean, cell.lora.cds_size.mean),
        ("CDS lifetime (s)", None, cell.lora.cds_lifetime.and_then(|s| s.mean)),
    ];
    for (name, ora, lora) in rows {
        println!("{name:<24}{:>10}{:>10}", fmt(ora), fmt(lora));
    }
    println!(
        "hop-count increase {}%, CDS-size increase {}%, dominance violations {}/{}",
        fmt(cell.percent_increase_hops),
        fmt(cell.percent_increase_cds),
        cell.dominance_violations,
        cell.dominance_checked
    );
    Ok(())
}
