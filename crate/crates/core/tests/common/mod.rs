//! Instance generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use pcn_attach::graph::EdgeId;
use pcn_attach::{Channel, Coins, GlobalParams, Node, PcnGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn node_name(i: usize) -> String {
    format!("n{i}")
}

/// Connected graph on `n` nodes: a random spanning tree plus each other pair
/// with probability `extra`. Balances in `1..=20`, rates in `[0.5, 3)`,
/// exponents in `[0, 2)`.
pub fn random_connected(rng: &mut ChaCha8Rng, n: usize, extra: f64) -> PcnGraph {
    let mut g = PcnGraph::new();
    for i in 0..n {
        g.add_node(Node::new(node_name(i), rng.gen_range(0.5..3.0), rng.gen_range(0.0..2.0)))
            .unwrap();
    }
    let mut has = vec![vec![false; n]; n];
    for i in 1..n {
        let j = rng.gen_range(0..i);
        has[i][j] = true;
        has[j][i] = true;
    }
    for i in 0..n {
        for j in i + 1..n {
            if !has[i][j] && rng.gen_bool(extra) {
                has[i][j] = true;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if has[i][j] {
                let (a, b) = (rng.gen_range(1..=20u64), rng.gen_range(1..=20u64));
                g.insert_channel(Channel::new(node_name(i), node_name(j), a, b)).unwrap();
            }
        }
    }
    g
}

/// Random digraph with up to `max_channels` channels, parallel channels
/// allowed; each direction survives with probability 2/3.
pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize, max_channels: usize) -> PcnGraph {
    let mut g = PcnGraph::new();
    for i in 0..n {
        g.add_node(Node::new(node_name(i), 1.0, 1.0)).unwrap();
    }
    for _ in 0..rng.gen_range(0..=max_channels) {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let bal = |rng: &mut ChaCha8Rng| u64::from(rng.gen_bool(2.0 / 3.0));
        let (x, y) = (bal(rng), bal(rng));
        g.insert_channel(Channel::new(node_name(a), node_name(b), x, y)).unwrap();
    }
    g.reduced_subgraph(Coins(1))
}

pub fn random_params(rng: &mut ChaCha8Rng) -> GlobalParams {
    GlobalParams {
        f_avg: rng.gen_range(0.2..2.0),
        f_avg_t: rng.gen_range(0.05..1.0),
        c: Coins(rng.gen_range(1..=3)),
        r: rng.gen_range(0.0..0.1),
        ..GlobalParams::default()
    }
}

pub fn random_joiner(rng: &mut ChaCha8Rng) -> Node {
    Node::new("joiner", rng.gen_range(0.5..3.0), rng.gen_range(0.0..2.0))
}

/// Shortest-path statistics by enumerating every simple path.
pub struct NaivePaths {
    pub distance: Option<usize>,
    pub count: u64,
    /// Indexed by edge id.
    pub per_edge: Vec<u64>,
}

pub fn naive_paths(g: &PcnGraph, s: usize, r: usize) -> NaivePaths {
    let mut found: Vec<Vec<EdgeId>> = Vec::new();
    let mut visited = vec![false; g.node_count()];
    let mut stack = Vec::new();
    visited[s] = true;
    walk(g, s, r, &mut visited, &mut stack, &mut found);
    let distance = found.iter().map(Vec::len).min();
    let mut per_edge = vec![0; g.edge_slots()];
    let mut count = 0;
    for p in found.iter().filter(|p| Some(p.len()) == distance) {
        count += 1;
        for &e in p {
            per_edge[e] += 1;
        }
    }
    NaivePaths {
        distance,
        count,
        per_edge,
    }
}

fn walk(g: &PcnGraph, at: usize, r: usize, visited: &mut [bool], stack: &mut Vec<EdgeId>, found: &mut Vec<Vec<EdgeId>>) {
    if at == r {
        found.push(stack.clone());
        return;
    }
    for &e in g.out_edges(at) {
        if !g.is_enabled(e) {
            continue;
        }
        let to = g.edge(e).to;
        if visited[to] {
            continue;
        }
        visited[to] = true;
        stack.push(e);
        walk(g, to, r, visited, stack, found);
        stack.pop();
        visited[to] = false;
    }
}

/// Rank factors seen by `observer`, straight from the definition: rank the
/// other nodes by in-degree (edges from the observer ignored) and give each
/// tie group the mean of `1 / r^s` over the ranks it occupies.
pub fn oracle_rank_factors(g: &PcnGraph, observer: usize, s: f64) -> Vec<f64> {
    let n = g.node_count();
    let indeg = |v: usize| {
        g.in_edges(v)
            .iter()
            .filter(|&&e| g.is_enabled(e) && g.edge(e).from != observer)
            .count()
    };
    let degrees: Vec<usize> = (0..n).map(indeg).collect();
    let mut out = vec![0.0; n];
    for v in (0..n).filter(|&v| v != observer) {
        let above = (0..n)
            .filter(|&w| w != observer && degrees[w] > degrees[v])
            .count();
        let ties = (0..n)
            .filter(|&w| w != observer && degrees[w] == degrees[v])
            .count();
        let mut sum = 0.0;
        for rank in above + 1..=above + ties {
            sum += 1.0 / (rank as f64).powf(s);
        }
        out[v] = sum / ties as f64;
    }
    out
}

/// Every connected simple graph on `n` nodes, one per isomorphism class, as
/// edge lists.
pub fn connected_graph_classes(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        if !is_connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u32;
                for &(a, b) in &edges {
                    let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
                    let k = pairs.iter().position(|&q| q == (x, y)).unwrap();
                    m |= 1 << k;
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(edges);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..n {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Unit-balance graph with nodes `v0 .. v{n-1}` and the given edges.
pub fn unit_graph(n: usize, edges: &[(usize, usize)]) -> PcnGraph {
    let mut g = PcnGraph::new();
    for i in 0..n {
        g.add_node(Node::new(format!("v{i}"), 1.0, 1.0)).unwrap();
    }
    for &(a, b) in edges {
        g.insert_channel(Channel::new(format!("v{a}"), format!("v{b}"), 1, 1)).unwrap();
    }
    g
}
