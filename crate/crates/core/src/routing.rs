//! Minimum-hop s-d paths per snapshot (ORA) and reuse-until-broken
//! timelines (LORA).

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{MobileGraph, StaticGraph};

/// How a communication structure is maintained across snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Recompute the optimal structure at every snapshot.
    Ora,
    /// Keep the current structure until it stops existing.
    Lora,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Ora => "ora",
            Strategy::Lora => "lora",
        })
    }
}

/// Node sequence from source to destination.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<usize>);

impl Path {
    /// Panics on an empty sequence.
    pub fn new(nodes: Vec<usize>) -> Self {
        assert!(!nodes.is_empty(), "a path has at least one node");
        Path(nodes)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn hop_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn source(&self) -> usize {
        self.0[0]
    }

    pub fn destination(&self) -> usize {
        self.0[self.0.len() - 1]
    }
}

/// A tracked source-destination pair. `start_snapshot` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SdSession {
    pub source: usize,
    pub destination: usize,
    pub start_snapshot: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathEvent {
    Discovered,
    Revalidated,
    Broken,
    Unreachable,
}

/// True iff every consecutive pair of `path` is an edge of `graph`.
pub fn path_exists(graph: &StaticGraph, path: &Path) -> bool {
    let nodes = path.nodes();
    nodes.len() == 1 && nodes[0] < graph.node_count()
        || nodes.windows(2).all(|w| graph.has_edge(w[0], w[1]))
}

/// Minimum-hop path from `s` to `d`, or `None` when `d` is unreachable.
///
/// Neighbors are expanded in ascending id order, so among equal-hop paths the
/// result is deterministic.
pub fn bfs_min_hop(graph: &StaticGraph, s: usize, d: usize) -> Result<Option<Path>> {
    MinHopSearch::default().find(graph, s, d)
}

/// BFS with reusable buffers, for callers that search many snapshots.
#[derive(Debug, Default)]
pub struct MinHopSearch {
    parent: Vec<usize>,
    queue: VecDeque<usize>,
}

const UNSEEN: usize = usize::MAX;

impl MinHopSearch {
    pub fn find(&mut self, graph: &StaticGraph, s: usize, d: usize) -> Result<Option<Path>> {
        let n = graph.node_count();
        for id in [s, d] {
            if id >= n {
                return Err(Error::InvalidNode { id, node_count: n });
            }
        }
        if s == d {
            return Ok(Some(Path(vec![s])));
        }
        self.parent.clear();
        self.parent.resize(n, UNSEEN);
        self.queue.clear();
        self.parent[s] = s;
        self.queue.push_back(s);
        'search: while let Some(u) = self.queue.pop_front() {
            for &v in graph.neighbors(u) {
                if self.parent[v] == UNSEEN {
                    self.parent[v] = u;
                    // The parent of d is fixed on discovery; exploring the
                    // rest of the graph cannot change the path.
                    if v == d {
                        break 'search;
                    }
                    self.queue.push_back(v);
                }
            }
        }
        if self.parent[d] == UNSEEN {
            return Ok(None);
        }
        let mut nodes = vec![d];
        let mut at = d;
        while at != s {
            at = self.parent[at];
            nodes.push(at);
        }
        nodes.reverse();
        Ok(Some(Path(nodes)))
    }
}

/// Per-snapshot paths of one session under one strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct PathTimeline {
    pub strategy: Strategy,
    pub session: SdSession,
    pub sample_interval: f64,
    /// `entries[k]` belongs to snapshot `session.start_snapshot + k`.
    entries: Vec<Option<Path>>,
    events: Vec<(usize, PathEvent)>,
}

/// JSON debug record for one timeline event.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathEventRecord {
    pub snapshot: usize,
    pub event: PathEvent,
    pub path: Option<Path>,
}

impl PathTimeline {
    fn new(strategy: Strategy, session: SdSession, sample_interval: f64) -> Self {
        PathTimeline {
            strategy,
            session,
            sample_interval,
            entries: Vec::new(),
            events: Vec::new(),
        }
    }

    /// Builds a timeline from explicit entries starting at
    /// `session.start_snapshot`. Events are synthesized from the entries as
    /// the given strategy would have logged them.
    pub fn from_entries(
        strategy: Strategy,
        session: SdSession,
        sample_interval: f64,
        entries: Vec<Option<Path>>,
    ) -> Self {
        let mut tl = PathTimeline::new(strategy, session, sample_interval);
        let mut prev: Option<&Path> = None;
        for (k, entry) in entries.iter().enumerate() {
            let snapshot = session.start_snapshot + k;
            match (strategy, prev, entry) {
                (Strategy::Lora, Some(p), Some(e)) if p == e => {
                    tl.events.push((snapshot, PathEvent::Revalidated))
                }
                (Strategy::Lora, Some(_), e) => {
                    tl.events.push((snapshot, PathEvent::Broken));
                    tl.events.push((snapshot, discovery_event(e)));
                }
                (_, _, e) => tl.events.push((snapshot, discovery_event(e))),
            }
            prev = entry.as_ref();
        }
        tl.entries = entries;
        tl
    }

    pub fn start_snapshot(&self) -> usize {
        self.session.start_snapshot
    }

    /// Number of snapshots in the session window.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Option<Path>] {
        &self.entries
    }

    /// Path at 1-based snapshot `i`; `None` outside the window or when absent.
    pub fn entry(&self, i: usize) -> Option<&Path> {
        i.checked_sub(self.session.start_snapshot)
            .and_then(|k| self.entries.get(k))
            .and_then(Option::as_ref)
    }

    /// `(snapshot, event)` pairs in order. A snapshot may log `broken`
    /// followed by `discovered` or `unreachable`.
    pub fn events(&self) -> &[(usize, PathEvent)] {
        &self.events
    }

    pub fn to_records(&self) -> Vec<PathEventRecord> {
        self.events
            .iter()
            .map(|&(snapshot, event)| {
                let path = match event {
                    PathEvent::Broken => self.entry(snapshot - 1),
                    PathEvent::Unreachable => None,
                    _ => self.entry(snapshot),
                };
                PathEventRecord {
                    snapshot,
                    event,
                    path: path.cloned(),
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_records())?)
    }
}

fn discovery_event(found: &Option<Path>) -> PathEvent {
    if found.is_some() {
        PathEvent::Discovered
    } else {
        PathEvent::Unreachable
    }
}

/// Incremental ORA/LORA path maintenance, fed one snapshot at a time.
#[derive(Debug)]
pub struct PathTracker {
    timeline: PathTimeline,
    current: Option<Path>,
    search: MinHopSearch,
}

impl PathTracker {
    pub fn new(strategy: Strategy, session: SdSession, sample_interval: f64) -> Result<Self> {
        if session.source == session.destination {
            return Err(Error::config("session", "source and destination must differ"));
        }
        if session.start_snapshot == 0 {
            return Err(Error::config("session.start_snapshot", "snapshots are 1-based"));
        }
        Ok(PathTracker {
            timeline: PathTimeline::new(strategy, session, sample_interval),
            current: None,
            search: MinHopSearch::default(),
        })
    }

    /// Advances to `graph`. Snapshots before the session start are ignored;
    /// later ones must arrive in order.
    pub fn step(&mut self, graph: &StaticGraph) -> Result<()> {
        let snapshot = graph.snapshot_index;
        let session = self.timeline.session;
        if snapshot < session.start_snapshot {
            return Ok(());
        }
        debug_assert_eq!(snapshot, session.start_snapshot + self.timeline.entries.len());
        let events = &mut self.timeline.events;
        if self.timeline.strategy == Strategy::Lora {
            if let Some(path) = &self.current {
                if path_exists(graph, path) {
                    events.push((snapshot, PathEvent::Revalidated));
                    self.timeline.entries.push(self.current.clone());
                    return Ok(());
                }
                events.push((snapshot, PathEvent::Broken));
                self.current = None;
            }
        }
        self.current = self.search.find(graph, session.source, session.destination)?;
        events.push((snapshot, discovery_event(&self.current)));
        self.timeline.entries.push(self.current.clone());
        Ok(())
    }

    /// Path in use after the latest step.
    pub fn current(&self) -> Option<&Path> {
        self.current.as_ref()
    }

    pub fn finish(self) -> PathTimeline {
        self.timeline
    }
}

fn path_timeline(strategy: Strategy, mg: &MobileGraph<'_>, session: SdSession) -> Result<PathTimeline> {
    let mut tracker = PathTracker::new(strategy, session, mg.sample_interval())?;
    if session.start_snapshot > mg.len() {
        return Err(Error::config(
            "session.start_snapshot",
            format!("{} exceeds mobile graph length {}", session.start_snapshot, mg.len()),
        ));
    }
    for i in session.start_snapshot..=mg.len() {
        tracker.step(&mg.get(i))?;
    }
    Ok(tracker.finish())
}

/// Minimum-hop path at every snapshot of the session.
pub fn ora_path_timeline(mg: &MobileGraph<'_>, session: SdSession) -> Result<PathTimeline> {
    path_timeline(Strategy::Ora, mg, session)
}

/// Reuses the discovered path while all of its edges exist; rediscovers on
/// the first snapshot where it breaks or while none is known.
pub fn lora_path_timeline(mg: &MobileGraph<'_>, session: SdSession) -> Result<PathTimeline> {
    path_timeline(Strategy::Lora, mg, session)
}
