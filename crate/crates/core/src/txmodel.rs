//! Who pays whom, and how much of that traffic crosses each edge.
//!
//! A node `u` ranks every other node by in-degree in the graph with `u`
//! removed. Nodes sharing an in-degree form a tie group that occupies a run of
//! consecutive ranks, and each member gets the mean Zipf weight `1 / r^s` of
//! that run. Transaction probabilities are the rank factors normalized over
//! all other nodes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, NodeIx, PcnGraph};
use crate::paths::{accumulate_flows, bfs};

#[derive(Clone, Debug, PartialEq)]
pub struct RankFactorTable {
    pub observer: NodeIx,
    /// `factors[v]` is `rf(v)`; the observer's own slot is `0.0`.
    pub factors: Vec<f64>,
    pub normalizer: f64,
}

impl RankFactorTable {
    pub fn probability(&self, v: NodeIx) -> f64 {
        self.factors[v] / self.normalizer
    }
}

fn zipf_weight(rank: usize, s: f64) -> f64 {
    (rank as f64).powf(-s)
}

/// Rank factors seen by `observer` with Zipf exponent `s`.
pub fn rank_factors(g: &PcnGraph, observer: NodeIx, s: f64) -> Result<RankFactorTable> {
    let n = g.node_count();
    if observer >= n {
        return Err(Error::InvalidParameter(format!("node index {observer} out of range")));
    }
    if n < 2 {
        return Err(Error::SingletonGraph);
    }
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParameter(format!("zipf exponent {s} must be >= 0")));
    }
    let mut ranked: Vec<(usize, NodeIx)> = (0..n)
        .filter(|&v| v != observer)
        .map(|v| (g.in_degree_without(v, observer), v))
        .collect();
    ranked.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut factors = vec![0.0; n];
    let mut start = 0;
    while start < ranked.len() {
        let degree = ranked[start].0;
        let end = ranked[start..]
            .iter()
            .position(|&(d, _)| d != degree)
            .map_or(ranked.len(), |k| start + k);
        // Ranks are 1-based: the group holds ranks start+1 ..= end.
        let mean = (start + 1..=end).map(|r| zipf_weight(r, s)).sum::<f64>() / (end - start) as f64;
        for &(_, v) in &ranked[start..end] {
            factors[v] = mean;
        }
        start = end;
    }
    let normalizer = factors.iter().sum();
    Ok(RankFactorTable {
        observer,
        factors,
        normalizer,
    })
}

/// Probability that `u` pays `v`, using `u`'s own Zipf exponent.
pub fn trans_prob(g: &PcnGraph, u: &NodeId, v: &NodeId) -> Result<f64> {
    let ui = g.index_of(u)?;
    let vi = g.index_of(v)?;
    if ui == vi {
        return Err(Error::SameNode(u.clone()));
    }
    Ok(rank_factors(g, ui, g.node(ui).zipf_s)?.probability(vi))
}

/// Row-stochastic matrix of transaction probabilities.
///
/// A row may be all zeros for a node that never sends.
#[derive(Clone, Debug, PartialEq)]
pub struct TransProbMatrix {
    n: usize,
    p: Vec<f64>,
}

impl TransProbMatrix {
    /// Every node uses its own `zipf_s`.
    pub fn zipf(g: &PcnGraph) -> Self {
        Self::build(g, |u| g.node(u).zipf_s)
    }

    /// Every node uses the same exponent `s`.
    pub fn zipf_uniform(g: &PcnGraph, s: f64) -> Self {
        Self::build(g, |_| s)
    }

    fn build(g: &PcnGraph, exponent: impl Fn(NodeIx) -> f64) -> Self {
        let n = g.node_count();
        let mut p = vec![0.0; n * n];
        if n >= 2 {
            for u in 0..n {
                let rf = rank_factors(g, u, exponent(u)).expect("valid node and exponent");
                for v in 0..n {
                    if v != u {
                        p[u * n + v] = rf.probability(v);
                    }
                }
            }
        }
        TransProbMatrix { n, p }
    }

    /// Builds a matrix from explicit rows; every non-empty row must sum to one.
    pub fn from_rows(n: usize, rows: &[(NodeIx, Vec<(NodeIx, f64)>)]) -> Result<Self> {
        let mut p = vec![0.0; n * n];
        for (u, row) in rows {
            let mut sum = 0.0;
            for &(v, q) in row {
                if v == *u {
                    return Err(Error::InvalidParameter(format!(
                        "node {u} cannot transact with itself"
                    )));
                }
                if !(q.is_finite() && q >= 0.0) {
                    return Err(Error::InvalidParameter(format!("probability {q} out of range")));
                }
                p[u * n + v] += q;
                sum += q;
            }
            if !row.is_empty() && (sum - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "transaction probabilities of node {u} sum to {sum}"
                )));
            }
        }
        Ok(TransProbMatrix { n, p })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: NodeIx, v: NodeIx) -> f64 {
        self.p[u * self.n + v]
    }

    pub fn row(&self, u: NodeIx) -> &[f64] {
        &self.p[u * self.n..(u + 1) * self.n]
    }
}

/// Per-edge probabilities and rates, plus per-node aggregates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeRateTable {
    /// Probability-weighted betweenness `p_e`, indexed by edge id.
    pub p_e: Vec<f64>,
    /// Transaction rate `lambda_e`, indexed by edge id.
    pub lambda: Vec<f64>,
    /// Rate of transactions each node forwards as an intermediary.
    pub transit: Vec<f64>,
    /// Rate of routable transactions each node sends.
    pub sent: Vec<f64>,
    /// Rate of routable transactions each node receives.
    pub received: Vec<f64>,
}

impl EdgeRateTable {
    pub fn lambda(&self, e: EdgeId) -> f64 {
        self.lambda[e]
    }
}

/// Edge probabilities and rates from a probability matrix.
///
/// With `total = Some(n)` every rate is `n * p_e`. With `None`, each source
/// `s` contributes its own `n_tx`, so `lambda_e = sum_s N_s sum_r
/// (m_e(s,r) / m(s,r)) p(s,r)`; the two agree when all senders share one rate.
pub fn edge_rates(g: &PcnGraph, probs: &TransProbMatrix, total: Option<f64>) -> EdgeRateTable {
    let senders: Vec<f64> = match total {
        Some(total) => vec![total; g.node_count()],
        None => g.nodes().iter().map(|node| node.n_tx).collect(),
    };
    edge_rates_weighted(g, probs, &senders)
}

/// Like [`edge_rates`] with an explicit per-sender rate vector.
pub fn edge_rates_weighted(g: &PcnGraph, probs: &TransProbMatrix, sender_rate: &[f64]) -> EdgeRateTable {
    rates_core(g, probs, sender_rate, None)
}

/// Per-edge rates counting only transactions that neither start nor end at `node`.
///
/// On `node`'s own channels this is exactly the traffic it forwards.
pub fn forwarded_rates(
    g: &PcnGraph,
    probs: &TransProbMatrix,
    sender_rate: &[f64],
    node: NodeIx,
) -> Vec<f64> {
    rates_core(g, probs, sender_rate, Some(node)).lambda
}

fn rates_core(
    g: &PcnGraph,
    probs: &TransProbMatrix,
    sender_rate: &[f64],
    skip: Option<NodeIx>,
) -> EdgeRateTable {
    let n = g.node_count();
    let slots = g.edge_slots();
    let mut p_e = vec![0.0; slots];
    let mut lambda = vec![0.0; slots];
    let mut transit = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    let mut sent = vec![0.0; n];
    let mut received = vec![0.0; n];
    for s in 0..n {
        let row = probs.row(s);
        if Some(s) == skip || row.iter().all(|&q| q == 0.0) {
            continue;
        }
        let dag = bfs(g, s);
        let reach = |t: NodeIx| t != s && Some(t) != skip && dag.dist[t].is_some();
        accumulate_flows(g, &dag, |t| if reach(t) { row[t] } else { 0.0 }, &mut p_e, &mut scratch);
        let rate = sender_rate[s];
        if rate > 0.0 {
            accumulate_flows(
                g,
                &dag,
                |t| if reach(t) { rate * row[t] } else { 0.0 },
                &mut lambda,
                &mut transit,
            );
            for t in (0..n).filter(|&t| reach(t)) {
                sent[s] += rate * row[t];
                received[t] += rate * row[t];
            }
        }
    }
    EdgeRateTable {
        p_e,
        lambda,
        transit,
        sent,
        received,
    }
}

/// Total rate over every enabled directed edge incident to `u`, both directions.
pub fn node_flow_rate(g: &PcnGraph, rates: &EdgeRateTable, u: &NodeId) -> Result<f64> {
    let ui = g.index_of(u)?;
    Ok(g
        .out_edges(ui)
        .iter()
        .chain(g.in_edges(ui))
        .map(|&e| rates.lambda[e])
        .sum())
}
