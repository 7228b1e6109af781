//! Follows one source-destination session under ORA (recompute every
//! snapshot) and LORA (keep a path until it breaks) on the same trace.

use manet_sim::graph::MobileGraph;
use manet_sim::metrics::SessionMetrics;
use manet_sim::mobility::{generate_trace, MobilityModel, MobilityScenario, Region};
use manet_sim::routing::{lora_path_timeline, ora_path_timeline, PathEvent, SdSession};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenario = MobilityScenario {
        model: MobilityModel::CitySection,
        node_count: 60,
        velocity: 12.5,
        pause_time: 0.0,
        duration: 120.0,
        sample_interval: 0.25,
        seed: 3,
    };
    let trace = generate_trace(&scenario, &Region::default())?;
    let mg = MobileGraph::from_trace(&trace, 250.0);
    let session = SdSession {
        source: 4,
        destination: 41,
        start_snapshot: 20,
    };

    let ora = ora_path_timeline(&mg, session)?;
    let lora = lora_path_timeline(&mg, session)?;

    let mut longer = 0;
    for (o, l) in ora.entries().iter().zip(lora.entries()) {
        if let (Some(o), Some(l)) = (o, l) {
            assert!(l.hop_count() >= o.hop_count());
            longer += (l.hop_count() > o.hop_count()) as usize;
        }
    }
    let discoveries = lora
        .events()
        .iter()
        .filter(|e| e.1 == PathEvent::Discovered)
        .count();

    for (name, tl) in [("ORA", &ora), ("LORA", &lora)] {
        let m = SessionMetrics::from_timeline(tl);
        println!(
            "{name:<5} connectivity {:.3}  time-averaged hops {}  mean route lifetime {}",
            m.connectivity_fraction,
            m.time_avg_hop_count.map_or("-".into(), |h| format!("{h:.3}")),
            m.avg_route_lifetime.map_or("-".into(), |s| format!("{s:.2} s")),
        );
    }
    println!(
        "LORA discovered {discoveries} paths and ran longer than ORA on {longer} of {} snapshots",
        lora.len()
    );
    println!("first LORA events:");
    for record in lora.to_records().iter().take(6) {
        println!("  {}", serde_json::to_string(record)?);
    }
    Ok(())
}
