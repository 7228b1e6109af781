//! Maximum-density connected dominating sets, their validation, and ORA/LORA
//! sequences over a mobile graph.

use std::cmp::Reverse;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MobileGraph, StaticGraph};
use crate::routing::Strategy;

/// Traversal from node 0 reaches every node. An empty graph is reported as
/// not connected since no CDS can be built on it.
pub fn is_connected(graph: &StaticGraph) -> bool {
    let n = graph.node_count();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut visited = 1;
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                visited += 1;
                queue.push_back(v);
            }
        }
    }
    visited == n
}

/// Output of [`max_density_cds`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CdsResult {
    /// CDS members in insertion order; the first is the seed.
    pub cds_nodes: Vec<usize>,
    /// `covered[v]` is true for members and their neighbors.
    pub covered: Vec<bool>,
}

impl CdsResult {
    pub fn covered_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.covered.iter().enumerate().filter(|c| *c.1).map(|c| c.0)
    }

    pub fn len(&self) -> usize {
        self.cds_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cds_nodes.is_empty()
    }
}

/// MaxD-CDS: start from the highest-degree node, then repeatedly add the
/// covered non-member with the most uncovered neighbors until every node is
/// covered. Ties go to the lowest node id.
///
/// Fails with [`Error::Disconnected`] unless the graph is connected.
pub fn max_density_cds(graph: &StaticGraph) -> Result<CdsResult> {
    if !is_connected(graph) {
        return Err(Error::Disconnected {
            snapshot: graph.snapshot_index,
        });
    }
    let n = graph.node_count();
    // uncovered[v]: neighbors of v not yet covered.
    let mut uncovered: Vec<usize> = (0..n).map(|v| graph.degree(v)).collect();
    let mut covered = vec![false; n];
    let mut in_cds = vec![false; n];
    let mut covered_count = 0;
    let mut cds_nodes = Vec::new();

    let seed = (0..n)
        .max_by_key(|&v| (graph.degree(v), Reverse(v)))
        .expect("connected graph has a node");
    let mut next = seed;
    loop {
        in_cds[next] = true;
        cds_nodes.push(next);
        for v in std::iter::once(next).chain(graph.neighbors(next).iter().copied()) {
            if !covered[v] {
                covered[v] = true;
                covered_count += 1;
                for &w in graph.neighbors(v) {
                    uncovered[w] -= 1;
                }
            }
        }
        if covered_count == n {
            break;
        }
        // A connected graph always has a covered node bordering the
        // uncovered part.
        next = (0..n)
            .filter(|&v| covered[v] && !in_cds[v] && uncovered[v] > 0)
            .max_by_key(|&v| (uncovered[v], Reverse(v)))
            .expect("connected graph leaves a frontier node");
    }
    Ok(CdsResult { cds_nodes, covered })
}

/// True iff `cds_nodes` induces a connected subgraph of `graph` and every
/// other node has a neighbor in it. Empty sets and out-of-range ids are
/// rejected.
pub fn validate_cds(graph: &StaticGraph, cds_nodes: &[usize]) -> bool {
    let n = graph.node_count();
    if cds_nodes.is_empty() || cds_nodes.iter().any(|&v| v >= n) {
        return false;
    }
    let mut member = vec![false; n];
    for &v in cds_nodes {
        member[v] = true;
    }
    let members: Vec<usize> = (0..n).filter(|&v| member[v]).collect();

    // Traverse the subgraph induced by the members.
    let mut reached = vec![false; n];
    let mut queue = VecDeque::from([members[0]]);
    reached[members[0]] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for &v in graph.neighbors(u) {
            if member[v] && !reached[v] {
                reached[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    if count != members.len() {
        return false;
    }

    (0..n).all(|v| member[v] || graph.neighbors(v).iter().any(|&u| member[u]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CdsEvent {
    Constructed,
    Revalidated,
    Invalidated,
    Disconnected,
}

/// Per-snapshot CDS under one strategy, covering snapshots `1..=T`.
#[derive(Debug, Clone, PartialEq)]
pub struct CdsTimeline {
    pub strategy: Strategy,
    pub sample_interval: f64,
    entries: Vec<Option<Vec<usize>>>,
    events: Vec<(usize, CdsEvent)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CdsEventRecord {
    pub snapshot: usize,
    pub event: CdsEvent,
    pub cds_nodes: Option<Vec<usize>>,
}

impl CdsTimeline {
    fn new(strategy: Strategy, sample_interval: f64) -> Self {
        CdsTimeline {
            strategy,
            sample_interval,
            entries: Vec::new(),
            events: Vec::new(),
        }
    }

    /// Timeline over snapshots `1..=entries.len()` with events synthesized
    /// as the given strategy would have logged them.
    pub fn from_entries(
        strategy: Strategy,
        sample_interval: f64,
        entries: Vec<Option<Vec<usize>>>,
    ) -> Self {
        let mut tl = CdsTimeline::new(strategy, sample_interval);
        let mut prev: Option<&Vec<usize>> = None;
        for (k, entry) in entries.iter().enumerate() {
            let snapshot = k + 1;
            match (strategy, prev, entry) {
                (Strategy::Lora, Some(p), Some(e)) if p == e => {
                    tl.events.push((snapshot, CdsEvent::Revalidated))
                }
                (Strategy::Lora, Some(_), e) => {
                    tl.events.push((snapshot, CdsEvent::Invalidated));
                    tl.events.push((snapshot, construction_event(e)));
                }
                (_, _, e) => tl.events.push((snapshot, construction_event(e))),
            }
            prev = entry.as_ref();
        }
        tl.entries = entries;
        tl
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Option<Vec<usize>>] {
        &self.entries
    }

    /// CDS at 1-based snapshot `i`.
    pub fn entry(&self, i: usize) -> Option<&[usize]> {
        i.checked_sub(1)
            .and_then(|k| self.entries.get(k))
            .and_then(|e| e.as_deref())
    }

    pub fn events(&self) -> &[(usize, CdsEvent)] {
        &self.events
    }

    pub fn to_records(&self) -> Vec<CdsEventRecord> {
        self.events
            .iter()
            .map(|&(snapshot, event)| {
                let nodes = match event {
                    CdsEvent::Invalidated => self.entry(snapshot - 1),
                    CdsEvent::Disconnected => None,
                    _ => self.entry(snapshot),
                };
                CdsEventRecord {
                    snapshot,
                    event,
                    cds_nodes: nodes.map(<[usize]>::to_vec),
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_records())?)
    }
}

fn construction_event(e: &Option<Vec<usize>>) -> CdsEvent {
    if e.is_some() {
        CdsEvent::Constructed
    } else {
        CdsEvent::Disconnected
    }
}

/// Incremental ORA/LORA CDS maintenance, fed one snapshot at a time.
#[derive(Debug)]
pub struct CdsTracker {
    timeline: CdsTimeline,
    current: Option<Vec<usize>>,
}

impl CdsTracker {
    pub fn new(strategy: Strategy, sample_interval: f64) -> Self {
        CdsTracker {
            timeline: CdsTimeline::new(strategy, sample_interval),
            current: None,
        }
    }

    pub fn step(&mut self, graph: &StaticGraph) {
        let snapshot = graph.snapshot_index;
        debug_assert_eq!(snapshot, self.timeline.entries.len() + 1);
        let events = &mut self.timeline.events;
        if self.timeline.strategy == Strategy::Lora {
            if let Some(cds) = &self.current {
                if validate_cds(graph, cds) {
                    events.push((snapshot, CdsEvent::Revalidated));
                    self.timeline.entries.push(self.current.clone());
                    return;
                }
                events.push((snapshot, CdsEvent::Invalidated));
                self.current = None;
            }
        }
        self.current = max_density_cds(graph).ok().map(|r| r.cds_nodes);
        events.push((snapshot, construction_event(&self.current)));
        self.timeline.entries.push(self.current.clone());
    }

    pub fn current(&self) -> Option<&[usize]> {
        self.current.as_deref()
    }

    pub fn finish(self) -> CdsTimeline {
        self.timeline
    }
}

fn cds_timeline(strategy: Strategy, mg: &MobileGraph<'_>) -> CdsTimeline {
    let mut tracker = CdsTracker::new(strategy, mg.sample_interval());
    for g in mg.iter() {
        tracker.step(&g);
    }
    tracker.finish()
}

/// Fresh MaxD-CDS at every connected snapshot.
pub fn ora_cds_timeline(mg: &MobileGraph<'_>) -> CdsTimeline {
    cds_timeline(Strategy::Ora, mg)
}

/// Keeps the current CDS while it validates; rebuilds when it does not.
pub fn lora_cds_timeline(mg: &MobileGraph<'_>) -> CdsTimeline {
    cds_timeline(Strategy::Lora, mg)
}
