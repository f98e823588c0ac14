//! Hop-count shortest paths on the directed channel multigraph.
//!
//! Parallel directed edges are distinct edges, so two parallel channels
//! double the number of shortest paths through them.

use std::collections::VecDeque;

use crate::graph::{EdgeId, NodeIx, PcnGraph};

/// Shortest-path DAG rooted at one source.
#[derive(Clone, Debug)]
pub struct SourceDag {
    pub source: NodeIx,
    pub dist: Vec<Option<u32>>,
    /// Number of shortest paths from the source, per node.
    pub sigma: Vec<u64>,
    /// Nodes in non-decreasing distance order (reachable ones only).
    pub order: Vec<NodeIx>,
    /// DAG edges entering each node.
    pub preds: Vec<Vec<EdgeId>>,
}

pub fn bfs(g: &PcnGraph, source: NodeIx) -> SourceDag {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![0u64; n];
    let mut preds = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    sigma[source] = 1;
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        let dv = dist[v].expect("queued nodes are reached");
        for &e in g.out_edges(v) {
            let w = g.edge(e).to;
            match dist[w] {
                None => {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
                Some(dw) if dw != dv + 1 => continue,
                Some(_) => {}
            }
            sigma[w] += sigma[v];
            preds[w].push(e);
        }
    }
    SourceDag {
        source,
        dist,
        sigma,
        order,
        preds,
    }
}

/// Distances and path counts *into* `sink`, by BFS over reversed edges.
pub fn bfs_to(g: &PcnGraph, sink: NodeIx) -> (Vec<Option<u32>>, Vec<u64>) {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut sigma = vec![0u64; n];
    let mut queue = VecDeque::new();
    dist[sink] = Some(0);
    sigma[sink] = 1;
    queue.push_back(sink);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].expect("queued nodes are reached");
        for &e in g.in_edges(v) {
            let w = g.edge(e).from;
            match dist[w] {
                None => {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
                Some(dw) if dw != dv + 1 => continue,
                Some(_) => {}
            }
            sigma[w] += sigma[v];
        }
    }
    (dist, sigma)
}

pub fn hop_distances(g: &PcnGraph, source: NodeIx) -> Vec<Option<u32>> {
    let n = g.node_count();
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    dist[source] = Some(0);
    queue.push_back(source);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v].unwrap();
        for &e in g.out_edges(v) {
            let w = g.edge(e).to;
            if dist[w].is_none() {
                dist[w] = Some(dv + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Path statistics for one ordered pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStats {
    pub source: NodeIx,
    pub sink: NodeIx,
    /// Hop count; `None` when the sink is unreachable.
    pub distance: Option<u32>,
    pub path_count: u64,
    /// Non-zero `m_e(s, r)` entries, sorted by edge id.
    pub per_edge_counts: Vec<(EdgeId, u64)>,
}

impl PathStats {
    pub fn edge_count(&self, e: EdgeId) -> u64 {
        self.per_edge_counts
            .binary_search_by_key(&e, |&(id, _)| id)
            .map(|i| self.per_edge_counts[i].1)
            .unwrap_or(0)
    }
}

/// Exact statistics for every ordered pair of distinct nodes.
#[derive(Clone, Debug)]
pub struct AllPairsPathStats {
    n: usize,
    dist: Vec<Option<u32>>,
    count: Vec<u64>,
    per_edge: Vec<Vec<(EdgeId, u64)>>,
}

impl AllPairsPathStats {
    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn distance(&self, s: NodeIx, r: NodeIx) -> Option<u32> {
        self.dist[s * self.n + r]
    }

    pub fn path_count(&self, s: NodeIx, r: NodeIx) -> u64 {
        self.count[s * self.n + r]
    }

    pub fn edge_count(&self, s: NodeIx, r: NodeIx, e: EdgeId) -> u64 {
        let row = &self.per_edge[s * self.n + r];
        row.binary_search_by_key(&e, |&(id, _)| id)
            .map(|i| row[i].1)
            .unwrap_or(0)
    }

    /// Statistics for `(s, r)`. Panics when `s == r`.
    pub fn get(&self, s: NodeIx, r: NodeIx) -> PathStats {
        assert_ne!(s, r, "path stats are defined for distinct nodes only");
        let k = s * self.n + r;
        PathStats {
            source: s,
            sink: r,
            distance: self.dist[k],
            path_count: self.count[k],
            per_edge_counts: self.per_edge[k].clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = PathStats> + '_ {
        (0..self.n).flat_map(move |s| {
            (0..self.n)
                .filter(move |&r| r != s)
                .map(move |r| self.get(s, r))
        })
    }
}

/// Distances, path counts and per-edge path counts for all ordered pairs.
///
/// An edge `x -> y` lies on a shortest `s -> r` path iff
/// `d(s, x) + 1 + d(y, r) = d(s, r)`, and then it carries
/// `sigma_s(x) * sigma^r(y)` of them.
pub fn all_pairs_path_stats(g: &PcnGraph) -> AllPairsPathStats {
    let n = g.node_count();
    let from: Vec<SourceDag> = (0..n).map(|s| bfs(g, s)).collect();
    let to: Vec<(Vec<Option<u32>>, Vec<u64>)> = (0..n).map(|r| bfs_to(g, r)).collect();
    let edges: Vec<(EdgeId, NodeIx, NodeIx)> = g
        .enabled_edges()
        .map(|(e, edge)| (e, edge.from, edge.to))
        .collect();

    let mut dist = vec![None; n * n];
    let mut count = vec![0u64; n * n];
    let mut per_edge = vec![Vec::new(); n * n];
    for s in 0..n {
        for r in 0..n {
            if s == r {
                continue;
            }
            let k = s * n + r;
            let Some(d) = from[s].dist[r] else { continue };
            dist[k] = Some(d);
            count[k] = from[s].sigma[r];
            let (dist_to, sigma_to) = &to[r];
            for &(e, x, y) in &edges {
                if let (Some(dx), Some(dy)) = (from[s].dist[x], dist_to[y]) {
                    if dx + 1 + dy == d {
                        per_edge[k].push((e, from[s].sigma[x] * sigma_to[y]));
                    }
                }
            }
        }
    }
    AllPairsPathStats {
        n,
        dist,
        count,
        per_edge,
    }
}

/// Brandes-style accumulation of pair weights along shortest paths from `source`.
///
/// For every target `t` the weight `weight(t)` is split evenly over the
/// shortest `source -> t` paths. Each directed edge receives the total weight
/// of the paths crossing it (added to `edge_flow`), and every node other than
/// the source receives the weight of paths it forwards, i.e. paths on which it
/// is neither the first nor the last node (added to `transit`). Targets that
/// are unreachable contribute nothing.
pub fn accumulate_flows(
    g: &PcnGraph,
    dag: &SourceDag,
    weight: impl Fn(NodeIx) -> f64,
    edge_flow: &mut [f64],
    transit: &mut [f64],
) {
    let n = g.node_count();
    let mut delta = vec![0.0f64; n];
    for &w in dag.order.iter().rev() {
        if w == dag.source {
            continue;
        }
        let through_w = weight(w) + delta[w];
        if through_w == 0.0 {
            continue;
        }
        let sigma_w = dag.sigma[w] as f64;
        for &e in &dag.preds[w] {
            let v = g.edge(e).from;
            let share = dag.sigma[v] as f64 / sigma_w * through_w;
            edge_flow[e] += share;
            delta[v] += share;
        }
    }
    for (v, d) in delta.into_iter().enumerate() {
        if v != dag.source {
            transit[v] += d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{Channel, Node};

    fn graph(n: usize, chans: &[(usize, usize)]) -> PcnGraph {
        let mut g = PcnGraph::new();
        for i in 0..n {
            g.add_node(Node::new(format!("n{i}"), 1.0, 1.0)).unwrap();
        }
        for &(a, b) in chans {
            g.insert_channel(Channel::new(format!("n{a}"), format!("n{b}"), 1, 1))
                .unwrap();
        }
        g
    }

    #[test]
    fn directed_path_has_unique_routes() {
        // Only the forward directions: A -> B -> C.
        let g = graph(3, &[(0, 1), (1, 2)]).without_edges(&[1, 3]);
        let st = all_pairs_path_stats(&g);
        assert_eq!(st.distance(0, 2), Some(2));
        assert_eq!(st.path_count(0, 2), 1);
        assert_eq!(st.edge_count(0, 2, 0), 1);
        assert_eq!(st.distance(2, 0), None);
        assert_eq!(st.path_count(2, 0), 0);
    }

    #[test]
    fn four_cycle_has_two_routes_to_the_opposite_corner() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let st = all_pairs_path_stats(&g).get(0, 2);
        assert_eq!(st.distance, Some(2));
        assert_eq!(st.path_count, 2);
        // A->B, B->C, A->D, D->C each on exactly one path.
        assert_eq!(st.per_edge_counts, vec![(0, 1), (2, 1), (5, 1), (7, 1)]);
    }

    #[test]
    fn parallel_channels_double_the_count() {
        let g = graph(3, &[(0, 1), (0, 1), (1, 2)]);
        let st = all_pairs_path_stats(&g).get(0, 2);
        assert_eq!(st.path_count, 2);
        assert_eq!(st.edge_count(0), 1);
        assert_eq!(st.edge_count(2), 1);
        assert_eq!(st.edge_count(4), 2);
    }

    #[test]
    fn flows_split_over_ties() {
        let g = graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let dag = bfs(&g, 0);
        let mut flow = vec![0.0; g.edge_slots()];
        let mut transit = vec![0.0; 4];
        accumulate_flows(&g, &dag, |t| if t == 2 { 1.0 } else { 0.0 }, &mut flow, &mut transit);
        assert_eq!(flow[0], 0.5);
        assert_eq!(flow[7], 0.5);
        assert_eq!(transit, vec![0.0, 0.5, 0.0, 0.5]);
    }
}
