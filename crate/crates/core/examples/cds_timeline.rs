//! Maximum-density connected dominating sets: a single construction on a
//! small graph, then ORA and LORA sequences over a Manhattan trace.

use manet_sim::cds::{lora_cds_timeline, max_density_cds, ora_cds_timeline, validate_cds};
use manet_sim::graph::{MobileGraph, StaticGraph};
use manet_sim::metrics::CdsMetrics;
use manet_sim::mobility::{generate_trace, MobilityModel, MobilityScenario, Region};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A five-node line a-b-c-d-e is dominated by its three inner nodes.
    let line = StaticGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
    let cds = max_density_cds(&line)?;
    println!("line of five: CDS {:?}, valid {}", cds.cds_nodes, validate_cds(&line, &cds.cds_nodes));

    let scenario = MobilityScenario {
        model: MobilityModel::Manhattan,
        node_count: 100,
        velocity: 2.5,
        pause_time: 0.0,
        duration: 200.0,
        sample_interval: 0.25,
        seed: 21,
    };
    let trace = generate_trace(&scenario, &Region::default())?;
    let mg = MobileGraph::from_trace(&trace, 250.0);
    let ora = ora_cds_timeline(&mg);
    let lora = lora_cds_timeline(&mg);

    for (name, tl) in [("ORA", &ora), ("LORA", &lora)] {
        let m = CdsMetrics::from_timeline(tl);
        println!(
            "{name:<5} mean size {}  connected {:.3}  mean lifetime {}",
            m.avg_cds_size.map_or("-".into(), |s| format!("{s:.3}")),
            m.connected_fraction,
            m.avg_cds_lifetime.map_or("-".into(), |s| format!("{s:.2} s")),
        );
    }
    let (o, l) = (
        CdsMetrics::from_timeline(&ora).avg_cds_size,
        CdsMetrics::from_timeline(&lora).avg_cds_size,
    );
    if let (Some(o), Some(l)) = (o, l) {
        println!("LORA sets are {:.2}% larger on average", (l - o) / o * 100.0);
    }
    Ok(())
}
