//! Unit-disk snapshots and the mobile graph built from a trace.

use std::borrow::Cow;
use std::io::Write;

use crate::mobility::{MobilityTrace, NodePosition};

/// Undirected unit-disk graph at one snapshot, in compressed adjacency form.
///
/// Neighbor lists are sorted ascending and contain no self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct StaticGraph {
    pub snapshot_index: usize,
    pub time: f64,
    offsets: Vec<usize>,
    neighbors: Vec<usize>,
}

impl StaticGraph {
    /// Graph over `node_count` nodes from an undirected edge list. Duplicate
    /// edges and self-loops are dropped.
    pub fn from_edges(node_count: usize, edges: &[(usize, usize)]) -> Self {
        let mut lists = vec![Vec::new(); node_count];
        for &(a, b) in edges {
            assert!(a < node_count && b < node_count, "edge ({a}, {b}) out of range");
            if a != b {
                lists[a].push(b);
                lists[b].push(a);
            }
        }
        for l in &mut lists {
            l.sort_unstable();
            l.dedup();
        }
        Self::from_lists(0, 0.0, lists)
    }

    fn from_lists(snapshot_index: usize, time: f64, lists: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(lists.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::new();
        for l in lists {
            neighbors.extend(l);
            offsets.push(neighbors.len());
        }
        StaticGraph {
            snapshot_index,
            time,
            offsets,
            neighbors,
        }
    }

    pub fn with_snapshot(mut self, snapshot_index: usize, time: f64) -> Self {
        self.snapshot_index = snapshot_index;
        self.time = time;
        self
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.node_count() && b < self.node_count() && self.neighbors(a).binary_search(&b).is_ok()
    }

    /// Each undirected edge once, as `(low, high)`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count())
            .flat_map(move |a| self.neighbors(a).iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }

    /// Debug dump: one `u v` line per edge.
    pub fn write_edge_list<W: Write>(&self, out: &mut W) -> std::io::Result<()> {
        for (a, b) in self.edges() {
            writeln!(out, "{a} {b}")?;
        }
        Ok(())
    }
}

/// Unit-disk graph: nodes `a` and `b` are linked iff their Euclidean distance
/// is at most `range`.
pub fn build_static_graph(
    positions: &[NodePosition],
    range: f64,
    snapshot_index: usize,
    time: f64,
) -> StaticGraph {
    assert!(range > 0.0, "transmission range must be positive");
    let n = positions.len();
    let mut degree = vec![0usize; n];
    let mut pairs = Vec::new();
    for (a, pa) in positions.iter().enumerate() {
        for (b, pb) in positions.iter().enumerate().skip(a + 1) {
            let dx = pa.x - pb.x;
            if dx.abs() > range {
                continue;
            }
            let dy = pa.y - pb.y;
            if (dx * dx + dy * dy).sqrt() <= range {
                pairs.push((a, b));
                degree[a] += 1;
                degree[b] += 1;
            }
        }
    }

    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for d in &degree {
        offsets.push(offsets.last().unwrap() + d);
    }
    let mut fill = offsets[..n].to_vec();
    let mut neighbors = vec![0; pairs.len() * 2];
    // Pairs arrive sorted by (a, b) with a < b, so every list is filled in
    // ascending order: first the lower ids that reach it, then its own row.
    for &(a, b) in &pairs {
        neighbors[fill[a]] = b;
        fill[a] += 1;
        neighbors[fill[b]] = a;
        fill[b] += 1;
    }
    let g = StaticGraph {
        snapshot_index,
        time,
        offsets,
        neighbors,
    };
    debug_assert!((0..n).all(|v| g.neighbors(v).windows(2).all(|w| w[0] < w[1])));
    g
}

enum Source<'a> {
    Trace { trace: &'a MobilityTrace, range: f64 },
    Graphs { graphs: Vec<StaticGraph>, sample_interval: f64 },
}

/// Ordered sequence `G_1 .. G_T` of static graphs.
///
/// When built from a trace, graphs are constructed on demand, so a full
/// 4000-snapshot run never holds more than one graph at a time.
pub struct MobileGraph<'a> {
    source: Source<'a>,
}

impl<'a> MobileGraph<'a> {
    pub fn from_trace(trace: &'a MobilityTrace, range: f64) -> Self {
        assert!(range > 0.0, "transmission range must be positive");
        MobileGraph {
            source: Source::Trace { trace, range },
        }
    }

    /// Wraps explicit snapshots; they are renumbered `1..=len` and stamped
    /// with time `i * sample_interval`.
    pub fn from_graphs(graphs: Vec<StaticGraph>, sample_interval: f64) -> MobileGraph<'static> {
        assert!(sample_interval > 0.0, "sample interval must be positive");
        let graphs = graphs
            .into_iter()
            .enumerate()
            .map(|(k, g)| g.with_snapshot(k + 1, (k + 1) as f64 * sample_interval))
            .collect();
        MobileGraph {
            source: Source::Graphs {
                graphs,
                sample_interval,
            },
        }
    }

    pub fn sample_interval(&self) -> f64 {
        match &self.source {
            Source::Trace { trace, .. } => trace.scenario.sample_interval,
            Source::Graphs { sample_interval, .. } => *sample_interval,
        }
    }

    pub fn len(&self) -> usize {
        match &self.source {
            Source::Trace { trace, .. } => trace.len(),
            Source::Graphs { graphs, .. } => graphs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Graph at 1-based snapshot `i`.
    pub fn get(&self, i: usize) -> Cow<'_, StaticGraph> {
        assert!(i >= 1 && i <= self.len(), "snapshot {i} out of range 1..={}", self.len());
        match &self.source {
            Source::Trace { trace, range } => Cow::Owned(build_static_graph(
                trace.positions(i),
                *range,
                i,
                trace.scenario.snapshot_time(i),
            )),
            Source::Graphs { graphs, .. } => Cow::Borrowed(&graphs[i - 1]),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Cow<'_, StaticGraph>> + '_ {
        (1..=self.len()).map(move |i| self.get(i))
    }
}
