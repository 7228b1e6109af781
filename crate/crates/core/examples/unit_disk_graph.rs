//! Builds the unit-disk snapshot graphs of a trace and reports how degree
//! and connectivity evolve, next to a motionless trace whose graphs never
//! change.

use manet_sim::cds::is_connected;
use manet_sim::graph::{build_static_graph, MobileGraph, StaticGraph};
use manet_sim::mobility::{generate_trace, MobilityModel, MobilityScenario, NodePosition, Region};

fn summary(g: &StaticGraph) -> String {
    let n = g.node_count();
    let max = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    format!(
        "t={:>6.2}s edges={:>4} mean degree={:>5.2} max degree={:>3} connected={}",
        g.time,
        g.edge_count(),
        2.0 * g.edge_count() as f64 / n as f64,
        max,
        is_connected(g)
    )
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Two nodes exactly one range apart are linked; a hair further they are not.
    let pair = [NodePosition::new(0.0, 0.0), NodePosition::new(250.0, 0.0)];
    assert!(build_static_graph(&pair, 250.0, 1, 0.25).has_edge(0, 1));

    for velocity in [25.0, 0.0] {
        let scenario = MobilityScenario {
            model: MobilityModel::RandomWaypoint,
            node_count: 50,
            velocity,
            pause_time: 0.0,
            duration: 100.0,
            sample_interval: 0.25,
            seed: 11,
        };
        let trace = generate_trace(&scenario, &Region::default())?;
        let mg = MobileGraph::from_trace(&trace, 250.0);
        println!("velocity {velocity} m/s, {} snapshots", mg.len());
        for i in [1, 100, 200, 400] {
            println!("  {}", summary(&mg.get(i)));
        }
        let first = mg.get(1);
        let unchanged = mg.iter().filter(|g| g.edges().eq(first.edges())).count();
        println!("  snapshots with the same edge set as the first: {unchanged}/{}", mg.len());
    }
    Ok(())
}
