//! Session- and timeline-level metrics.
//!
//! Everything is computed in snapshot units; lifetimes are converted to
//! seconds with the timeline's sample interval only at the end.

use serde::{Deserialize, Serialize};

use crate::cds::{CdsEvent, CdsTimeline};
use crate::error::{Error, Result};
use crate::routing::{PathEvent, PathTimeline, Strategy};

/// Fraction of session snapshots in which an s-d path exists. `None` for an
/// empty timeline.
pub fn percent_connectivity(timeline: &PathTimeline) -> Option<f64> {
    if timeline.is_empty() {
        return None;
    }
    let present = timeline.entries().iter().filter(|e| e.is_some()).count();
    Some(present as f64 / timeline.len() as f64)
}

/// Sum over maximal runs of an unchanged path of `hops * run length`,
/// divided by the number of path-bearing snapshots. `None` when no path ever
/// existed.
pub fn time_averaged_hop_count(timeline: &PathTimeline) -> Option<f64> {
    let mut weighted = 0usize;
    let mut bearing = 0usize;
    let entries = timeline.entries();
    let mut k = 0;
    while k < entries.len() {
        let Some(path) = &entries[k] else {
            k += 1;
            continue;
        };
        let run = entries[k..]
            .iter()
            .take_while(|e| e.as_ref() == Some(path))
            .count();
        weighted += path.hop_count() * run;
        bearing += run;
        k += run;
    }
    (bearing > 0).then(|| weighted as f64 / bearing as f64)
}

fn mean_run_seconds(runs: &[usize], sample_interval: f64) -> Option<f64> {
    if runs.is_empty() {
        return None;
    }
    let total: usize = runs.iter().sum();
    Some(total as f64 / runs.len() as f64 * sample_interval)
}

/// Lengths, in snapshots, of each discovered path's period of use.
pub fn route_runs(timeline: &PathTimeline) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current: Option<usize> = None;
    for &(_, event) in timeline.events() {
        match event {
            PathEvent::Discovered => {
                runs.extend(current.replace(1));
            }
            PathEvent::Revalidated => {
                if let Some(c) = current.as_mut() {
                    *c += 1;
                }
            }
            PathEvent::Broken | PathEvent::Unreachable => runs.extend(current.take()),
        }
    }
    runs.extend(current);
    runs
}

/// Mean time a LORA path stays in use, in seconds. Routes are recomputed
/// every snapshot under ORA, so ORA timelines are rejected.
pub fn average_route_lifetime(timeline: &PathTimeline) -> Result<Option<f64>> {
    if timeline.strategy != Strategy::Lora {
        return Err(Error::NotApplicable("route lifetime is defined for LORA timelines only"));
    }
    Ok(mean_run_seconds(&route_runs(timeline), timeline.sample_interval))
}

/// Mean CDS size over snapshots that have one.
pub fn average_cds_size(timeline: &CdsTimeline) -> Option<f64> {
    let sizes: Vec<usize> = timeline.entries().iter().flatten().map(Vec::len).collect();
    if sizes.is_empty() {
        return None;
    }
    Some(sizes.iter().sum::<usize>() as f64 / sizes.len() as f64)
}

/// Lengths, in snapshots, of each constructed CDS's period of use.
pub fn cds_runs(timeline: &CdsTimeline) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current: Option<usize> = None;
    for &(_, event) in timeline.events() {
        match event {
            CdsEvent::Constructed => runs.extend(current.replace(1)),
            CdsEvent::Revalidated => {
                if let Some(c) = current.as_mut() {
                    *c += 1;
                }
            }
            CdsEvent::Invalidated | CdsEvent::Disconnected => runs.extend(current.take()),
        }
    }
    runs.extend(current);
    runs
}

/// Mean time a LORA CDS stays valid, in seconds; the analogue of route
/// lifetime.
pub fn average_cds_lifetime(timeline: &CdsTimeline) -> Result<Option<f64>> {
    if timeline.strategy != Strategy::Lora {
        return Err(Error::NotApplicable("CDS lifetime is defined for LORA timelines only"));
    }
    Ok(mean_run_seconds(&cds_runs(timeline), timeline.sample_interval))
}

/// Fraction of snapshots whose whole graph was connected (a CDS existed).
pub fn cds_connected_fraction(timeline: &CdsTimeline) -> Option<f64> {
    if timeline.is_empty() {
        return None;
    }
    let present = timeline.entries().iter().filter(|e| e.is_some()).count();
    Some(present as f64 / timeline.len() as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SessionMetrics {
    pub connectivity_fraction: f64,
    /// LORA only.
    pub avg_route_lifetime: Option<f64>,
    /// `None` when no path ever existed.
    pub time_avg_hop_count: Option<f64>,
}

impl SessionMetrics {
    pub fn from_timeline(timeline: &PathTimeline) -> Self {
        SessionMetrics {
            connectivity_fraction: percent_connectivity(timeline).unwrap_or(0.0),
            avg_route_lifetime: average_route_lifetime(timeline).ok().flatten(),
            time_avg_hop_count: time_averaged_hop_count(timeline),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdsMetrics {
    pub avg_cds_size: Option<f64>,
    /// LORA only.
    pub avg_cds_lifetime: Option<f64>,
    pub connected_fraction: f64,
}

impl CdsMetrics {
    pub fn from_timeline(timeline: &CdsTimeline) -> Self {
        CdsMetrics {
            avg_cds_size: average_cds_size(timeline),
            avg_cds_lifetime: average_cds_lifetime(timeline).ok().flatten(),
            connected_fraction: cds_connected_fraction(timeline).unwrap_or(0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::routing::{Path, SdSession};

    fn session() -> SdSession {
        SdSession {
            source: 0,
            destination: 9,
            start_snapshot: 1,
        }
    }

    /// A path with `hops` hops; `tag` makes otherwise equal-length paths
    /// distinct.
    fn path(hops: usize, tag: usize) -> Path {
        let mut nodes = vec![0];
        nodes.extend((1..hops).map(|i| 100 * tag + i));
        nodes.push(9);
        Path::new(nodes)
    }

    fn timeline(strategy: Strategy, entries: Vec<Option<Path>>) -> PathTimeline {
        PathTimeline::from_entries(strategy, session(), 0.25, entries)
    }

    #[test]
    fn hop_count_worked_example() {
        let mut entries = vec![Some(path(2, 1)); 2];
        entries.extend(vec![Some(path(3, 2)); 3]);
        entries.extend(vec![Some(path(2, 3)); 5]);
        let tl = timeline(Strategy::Lora, entries);
        assert_eq!(time_averaged_hop_count(&tl), Some(2.3));
    }

    #[test]
    fn constant_path_average() {
        let tl = timeline(Strategy::Ora, vec![Some(path(4, 1)); 7]);
        assert_eq!(time_averaged_hop_count(&tl), Some(4.0));
    }

    #[test]
    fn connectivity_ratio() {
        let mut entries = vec![Some(path(1, 0)); 93];
        entries.extend(vec![None; 7]);
        let tl = timeline(Strategy::Ora, entries);
        assert_eq!(percent_connectivity(&tl), Some(0.93));
        let full = timeline(Strategy::Ora, vec![Some(path(1, 0)); 100]);
        assert_eq!(percent_connectivity(&full), Some(1.0));
    }

    #[test]
    fn disconnected_snapshots_excluded_from_hop_average() {
        let tl = timeline(
            Strategy::Ora,
            vec![Some(path(2, 0)), None, None, Some(path(4, 0))],
        );
        assert_eq!(time_averaged_hop_count(&tl), Some(3.0));
        assert_eq!(percent_connectivity(&tl), Some(0.5));
        let never = timeline(Strategy::Ora, vec![None; 3]);
        assert_eq!(time_averaged_hop_count(&never), None);
    }

    #[test]
    fn route_lifetimes() {
        let tl = timeline(Strategy::Lora, vec![Some(path(3, 1)); 40]);
        assert_eq!(average_route_lifetime(&tl).unwrap(), Some(10.0));

        // 8 s then 12 s at 0.25 s per snapshot, separated by an outage.
        let mut entries = vec![Some(path(3, 1)); 32];
        entries.push(None);
        entries.extend(vec![Some(path(2, 2)); 48]);
        let tl = timeline(Strategy::Lora, entries);
        assert_eq!(route_runs(&tl), vec![32, 48]);
        assert_eq!(average_route_lifetime(&tl).unwrap(), Some(10.0));
    }

    #[test]
    fn back_to_back_routes_are_separate_runs() {
        let mut entries = vec![Some(path(3, 1)); 4];
        entries.extend(vec![Some(path(3, 2)); 2]);
        let tl = timeline(Strategy::Lora, entries);
        assert_eq!(route_runs(&tl), vec![4, 2]);
    }

    #[test]
    fn lifetime_rejects_ora() {
        let tl = timeline(Strategy::Ora, vec![Some(path(3, 1)); 4]);
        assert!(matches!(average_route_lifetime(&tl), Err(Error::NotApplicable(_))));
        assert_eq!(SessionMetrics::from_timeline(&tl).avg_route_lifetime, None);
    }

    fn cds_of(size: usize, tag: usize) -> Option<Vec<usize>> {
        Some((0..size).map(|i| tag * 100 + i).collect())
    }

    #[test]
    fn cds_size_averages() {
        let lora = CdsTimeline::from_entries(Strategy::Lora, 0.25, vec![cds_of(3, 1); 5]);
        assert_eq!(average_cds_size(&lora), Some(3.0));
        let ora = CdsTimeline::from_entries(
            Strategy::Ora,
            0.25,
            vec![cds_of(3, 1), cds_of(2, 2), cds_of(3, 3), cds_of(2, 4), cds_of(2, 4)],
        );
        assert_eq!(average_cds_size(&ora), Some(2.4));
    }

    #[test]
    fn cds_lifetimes() {
        let tl = CdsTimeline::from_entries(Strategy::Lora, 0.25, vec![cds_of(4, 1); 20]);
        assert_eq!(average_cds_lifetime(&tl).unwrap(), Some(5.0));
        let mut entries = vec![cds_of(4, 1); 8];
        entries.extend(vec![cds_of(5, 2); 16]);
        let tl = CdsTimeline::from_entries(Strategy::Lora, 0.25, entries);
        assert_eq!(average_cds_lifetime(&tl).unwrap(), Some(3.0));
        let ora = CdsTimeline::from_entries(Strategy::Ora, 0.25, vec![cds_of(4, 1); 3]);
        assert!(average_cds_lifetime(&ora).is_err());
    }

    #[test]
    fn cds_absent_snapshots_excluded() {
        let tl = CdsTimeline::from_entries(
            Strategy::Lora,
            0.25,
            vec![cds_of(4, 1), None, cds_of(6, 2), cds_of(6, 2)],
        );
        assert_eq!(average_cds_size(&tl), Some(16.0 / 3.0));
        assert_eq!(cds_runs(&tl), vec![1, 2]);
        assert_eq!(cds_connected_fraction(&tl), Some(0.75));
        let none = CdsTimeline::from_entries(Strategy::Ora, 0.25, vec![None; 2]);
        assert_eq!(average_cds_size(&none), None);
    }
}
