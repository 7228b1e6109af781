//! The metric definitions on hand-built timelines.

use manet_sim::cds::CdsTimeline;
use manet_sim::metrics::{
    average_cds_lifetime, average_cds_size, average_route_lifetime, percent_connectivity,
    time_averaged_hop_count,
};
use manet_sim::routing::{Path, PathTimeline, SdSession, Strategy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let session = SdSession {
        source: 0,
        destination: 9,
        start_snapshot: 1,
    };

    // A 2-hop path for 2 snapshots, a 3-hop path for 3, another 2-hop path for 5.
    let mut entries = vec![Some(Path::new(vec![0, 1, 9])); 2];
    entries.extend(vec![Some(Path::new(vec![0, 2, 3, 9])); 3]);
    entries.extend(vec![Some(Path::new(vec![0, 4, 9])); 5]);
    let tl = PathTimeline::from_entries(Strategy::Lora, session, 0.25, entries);
    println!("time-averaged hop count: {:?}", time_averaged_hop_count(&tl));
    println!("route lifetime: {:?} s", average_route_lifetime(&tl)?);

    let mut entries = vec![Some(Path::new(vec![0, 9])); 93];
    entries.extend(vec![None; 7]);
    let tl = PathTimeline::from_entries(Strategy::Ora, session, 0.25, entries);
    println!("connectivity with 93 of 100 snapshots connected: {:?}", percent_connectivity(&tl));
    println!("ORA route lifetime is undefined: {}", average_route_lifetime(&tl).unwrap_err());

    let sets = |sizes: &[usize]| -> Vec<Option<Vec<usize>>> {
        sizes
            .iter()
            .enumerate()
            .map(|(k, &s)| Some((0..s).map(|v| v + 10 * k).collect()))
            .collect()
    };
    let ora = CdsTimeline::from_entries(Strategy::Ora, 0.25, sets(&[3, 2, 3, 2, 2]));
    let lora = CdsTimeline::from_entries(Strategy::Lora, 0.25, vec![Some(vec![1, 2, 3]); 5]);
    println!("CDS sizes 3,2,3,2,2 average {:?}", average_cds_size(&ora));
    println!("one CDS held for 5 snapshots: size {:?}, lifetime {:?} s", average_cds_size(&lora), average_cds_lifetime(&lora)?);
    Ok(())
}
