//! Independent oracles shared by the integration and acceptance tests. None
//! of these reuse library graph code beyond constructing the graph under test.

#![allow(dead_code)]

use manet_sim::graph::{build_static_graph, StaticGraph};
use manet_sim::mobility::NodePosition;
use rand::Rng;

pub const RANGE: f64 = 250.0;

pub fn random_points<R: Rng>(rng: &mut R, n: usize, side: f64) -> Vec<NodePosition> {
    (0..n)
        .map(|_| NodePosition::new(rng.gen_range(0.0..=side), rng.gen_range(0.0..=side)))
        .collect()
}

/// Dense adjacency from pairwise distances.
pub fn adjacency(points: &[NodePosition], range: f64) -> Vec<Vec<bool>> {
    let n = points.len();
    let mut adj = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            let d = ((points[a].x - points[b].x).powi(2) + (points[a].y - points[b].y).powi(2)).sqrt();
            adj[a][b] = a != b && d <= range;
        }
    }
    adj
}

/// Shortest hop counts between every pair by Floyd-Warshall.
pub fn all_pairs_hops(adj: &[Vec<bool>]) -> Vec<Vec<Option<usize>>> {
    let n = adj.len();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for a in 0..n {
        d[a][a] = 0;
        for b in 0..n {
            if adj[a][b] {
                d[a][b] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| (x < inf).then_some(x)).collect())
        .collect()
}

pub fn connected_oracle(adj: &[Vec<bool>]) -> bool {
    !adj.is_empty() && all_pairs_hops(adj)[0].iter().all(Option::is_some)
}

/// Side length giving an expected degree of about `degree` for `n` nodes.
pub fn side_for_degree(n: usize, degree: f64) -> f64 {
    RANGE * (std::f64::consts::PI * n as f64 / degree).sqrt()
}

/// Rejection-samples a connected unit-disk graph on `n` nodes.
pub fn random_connected_udg<R: Rng>(rng: &mut R, n: usize) -> (StaticGraph, Vec<Vec<bool>>) {
    let side = side_for_degree(n, 8.0).max(1.0);
    loop {
        let pts = random_points(rng, n, side);
        let adj = adjacency(&pts, RANGE);
        if connected_oracle(&adj) {
            return (build_static_graph(&pts, RANGE, 1, 0.25), adj);
        }
    }
}

/// Brute-force CDS check: non-empty, dominating, and connected when induced.
pub fn is_cds_oracle(adj: &[Vec<bool>], set: &[usize]) -> bool {
    let n = adj.len();
    if set.is_empty() || set.iter().any(|&v| v >= n) {
        return false;
    }
    let member: Vec<bool> = (0..n).map(|v| set.contains(&v)).collect();
    let dominated = (0..n).all(|v| member[v] || (0..n).any(|u| member[u] && adj[u][v]));
    if !dominated {
        return false;
    }
    // Grow the component of set[0] inside the induced subgraph to a fixpoint.
    let mut reached = vec![false; n];
    reached[set[0]] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for u in 0..n {
            for v in 0..n {
                if reached[u] && member[v] && !reached[v] && adj[u][v] {
                    reached[v] = true;
                    changed = true;
                }
            }
        }
    }
    set.iter().all(|&v| reached[v])
}

/// Size of a minimum CDS by exhaustive search over all vertex subsets,
/// using closed-neighborhood bitmasks. Intended for n <= 16.
pub fn min_cds_size(adj: &[Vec<bool>]) -> usize {
    let n = adj.len();
    assert!((1..=16).contains(&n), "exhaustive search is limited to small graphs");
    let closed: Vec<u32> = (0..n)
        .map(|v| (0..n).filter(|&u| u == v || adj[v][u]).fold(0, |m, u| m | 1 << u))
        .collect();
    let all = (1u32 << n) - 1;
    let mut best = n;
    for mask in 1..=all {
        let k = mask.count_ones() as usize;
        if k >= best {
            continue;
        }
        let covered = (0..n)
            .filter(|&v| mask & 1 << v != 0)
            .fold(0, |m, v| m | closed[v]);
        if covered != all {
            continue;
        }
        let mut reached = 1u32 << mask.trailing_zeros();
        loop {
            let grown = (0..n)
                .filter(|&v| reached & 1 << v != 0)
                .fold(reached, |m, v| m | (closed[v] & mask));
            if grown == reached {
                break;
            }
            reached = grown;
        }
        if reached == mask {
            best = k;
        }
    }
    best
}
