//! The channel graph.
//!
//! Every channel contributes two directed edges, `a -> b` with capacity
//! `balance_a` and `b -> a` with capacity `balance_b`. Edge ids are stable:
//! channel `c` owns edges `2c` and `2c + 1`, and a capacity-reduced subgraph
//! keeps the same ids with some edges disabled.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::Coins;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(String);

impl NodeId {
    pub fn new(id: impl Into<String>) -> Self {
        NodeId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for NodeId {
    fn from(s: &str) -> Self {
        NodeId::new(s)
    }
}

impl From<String> for NodeId {
    fn from(s: String) -> Self {
        NodeId(s)
    }
}

/// Index of a node inside one [`PcnGraph`].
pub type NodeIx = usize;

/// Index of a directed edge; see the module docs for the numbering.
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: NodeId,
    /// Transactions sent per unit of time.
    pub n_tx: f64,
    /// Zipf exponent of this node's transaction distribution.
    pub zipf_s: f64,
}

impl Node {
    pub fn new(id: impl Into<NodeId>, n_tx: f64, zipf_s: f64) -> Self {
        Node {
            id: id.into(),
            n_tx,
            zipf_s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Channel {
    pub endpoint_a: NodeId,
    pub endpoint_b: NodeId,
    pub balance_a: Coins,
    pub balance_b: Coins,
}

impl Channel {
    pub fn new(
        a: impl Into<NodeId>,
        b: impl Into<NodeId>,
        balance_a: impl Into<Coins>,
        balance_b: impl Into<Coins>,
    ) -> Self {
        Channel {
            endpoint_a: a.into(),
            endpoint_b: b.into(),
            balance_a: balance_a.into(),
            balance_b: balance_b.into(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    pub from: NodeIx,
    pub to: NodeIx,
    pub capacity: Coins,
}

#[derive(Clone, Debug, Default)]
pub struct PcnGraph {
    nodes: Vec<Node>,
    index: HashMap<NodeId, NodeIx>,
    channels: Vec<Channel>,
    edges: Vec<DirectedEdge>,
    enabled: Vec<bool>,
    out_adj: Vec<Vec<EdgeId>>,
    in_adj: Vec<Vec<EdgeId>>,
}

impl PcnGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node and returns its index.
    pub fn add_node(&mut self, node: Node) -> Result<NodeIx> {
        if self.index.contains_key(&node.id) {
            return Err(Error::DuplicateNode(node.id));
        }
        if !(node.n_tx.is_finite() && node.n_tx >= 0.0) {
            return Err(Error::field(
                format!("node `{}`.n_tx", node.id),
                "must be finite and >= 0",
            ));
        }
        if !(node.zipf_s.is_finite() && node.zipf_s >= 0.0) {
            return Err(Error::field(
                format!("node `{}`.zipf_s", node.id),
                "must be finite and >= 0",
            ));
        }
        let ix = self.nodes.len();
        self.index.insert(node.id.clone(), ix);
        self.nodes.push(node);
        self.out_adj.push(Vec::new());
        self.in_adj.push(Vec::new());
        Ok(ix)
    }

    /// Appends a channel in place and returns its index.
    pub fn insert_channel(&mut self, channel: Channel) -> Result<usize> {
        let a = self.index_of(&channel.endpoint_a)?;
        let b = self.index_of(&channel.endpoint_b)?;
        if a == b {
            return Err(Error::SelfLoop(channel.endpoint_a));
        }
        let c = self.channels.len();
        self.push_edge(a, b, channel.balance_a);
        self.push_edge(b, a, channel.balance_b);
        self.channels.push(channel);
        Ok(c)
    }

    fn push_edge(&mut self, from: NodeIx, to: NodeIx, capacity: Coins) {
        let e = self.edges.len();
        self.edges.push(DirectedEdge { from, to, capacity });
        self.enabled.push(true);
        self.out_adj[from].push(e);
        self.in_adj[to].push(e);
    }

    /// Returns a new graph with `channel` added; `self` is left untouched.
    pub fn add_channel(&self, channel: Channel) -> Result<PcnGraph> {
        let mut g = self.clone();
        g.insert_channel(channel)?;
        Ok(g)
    }

    /// Keeps only the directed edges able to forward a payment of `tx_size`.
    pub fn reduced_subgraph(&self, tx_size: Coins) -> PcnGraph {
        let mut g = self.clone();
        for e in 0..g.edges.len() {
            if g.enabled[e] && g.edges[e].capacity < tx_size {
                g.enabled[e] = false;
            }
        }
        g.rebuild_adjacency();
        g
    }

    /// Returns a copy with the given directed edges disabled.
    pub fn without_edges(&self, edges: &[EdgeId]) -> PcnGraph {
        let mut g = self.clone();
        for &e in edges {
            g.enabled[e] = false;
        }
        g.rebuild_adjacency();
        g
    }

    /// Returns a copy where every channel touching `node` is dropped.
    pub fn without_channels_of(&self, node: NodeIx) -> PcnGraph {
        let mut g = PcnGraph::new();
        for n in &self.nodes {
            g.add_node(n.clone()).expect("nodes were valid");
        }
        for (c, ch) in self.channels.iter().enumerate() {
            let (ea, eb) = (2 * c, 2 * c + 1);
            if self.edges[ea].from == node || self.edges[ea].to == node {
                continue;
            }
            let nc = g.insert_channel(ch.clone()).expect("channel was valid");
            g.enabled[2 * nc] = self.enabled[ea];
            g.enabled[2 * nc + 1] = self.enabled[eb];
        }
        g.rebuild_adjacency();
        g
    }

    fn rebuild_adjacency(&mut self) {
        for adj in self.out_adj.iter_mut().chain(self.in_adj.iter_mut()) {
            adj.clear();
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if self.enabled[e] {
                self.out_adj[edge.from].push(e);
                self.in_adj[edge.to].push(e);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn channel_count(&self) -> usize {
        self.channels.len()
    }

    /// Number of directed edge slots, enabled or not (`2 * channels`).
    pub fn edge_slots(&self) -> usize {
        self.edges.len()
    }

    /// Number of enabled directed edges.
    pub fn edge_count(&self) -> usize {
        self.enabled.iter().filter(|&&on| on).count()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, ix: NodeIx) -> &Node {
        &self.nodes[ix]
    }

    pub fn node_mut(&mut self, ix: NodeIx) -> &mut Node {
        &mut self.nodes[ix]
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    pub fn index_of(&self, id: &NodeId) -> Result<NodeIx> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.clone()))
    }

    pub fn contains(&self, id: &NodeId) -> bool {
        self.index.contains_key(id)
    }

    pub fn edge(&self, e: EdgeId) -> &DirectedEdge {
        &self.edges[e]
    }

    pub fn is_enabled(&self, e: EdgeId) -> bool {
        self.enabled[e]
    }

    /// Enabled edges leaving `v`.
    pub fn out_edges(&self, v: NodeIx) -> &[EdgeId] {
        &self.out_adj[v]
    }

    /// Enabled edges entering `v`.
    pub fn in_edges(&self, v: NodeIx) -> &[EdgeId] {
        &self.in_adj[v]
    }

    /// Enabled directed edges, in id order.
    pub fn enabled_edges(&self) -> impl Iterator<Item = (EdgeId, &DirectedEdge)> {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(e, _)| self.enabled[*e])
    }

    pub fn in_degree(&self, v: NodeIx) -> usize {
        self.in_adj[v].len()
    }

    /// In-degree of `v` once `removed` and its incident edges are deleted.
    pub fn in_degree_without(&self, v: NodeIx, removed: NodeIx) -> usize {
        self.in_adj[v]
            .iter()
            .filter(|&&e| self.edges[e].from != removed)
            .count()
    }

    /// Number of channels incident to `v`, regardless of edge state.
    pub fn channel_degree(&self, v: NodeIx) -> usize {
        self.edges
            .iter()
            .step_by(2)
            .filter(|e| e.from == v || e.to == v)
            .count()
    }

    /// Distinct neighbours over channels incident to `v`, sorted by index.
    pub fn neighbors(&self, v: NodeIx) -> Vec<NodeIx> {
        let mut out: Vec<NodeIx> = self
            .edges
            .iter()
            .step_by(2)
            .filter_map(|e| {
                if e.from == v {
                    Some(e.to)
                } else if e.to == v {
                    Some(e.from)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Channel that owns directed edge `e`.
    pub fn channel_of(e: EdgeId) -> usize {
        e / 2
    }

    /// The opposite direction of the same channel.
    pub fn reverse_of(e: EdgeId) -> EdgeId {
        e ^ 1
    }
}
