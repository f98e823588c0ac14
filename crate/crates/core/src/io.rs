//! JSON files: graphs and parameter sets.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Channel, Node, NodeId, PcnGraph};
use crate::units::Coins;
use crate::utility::GlobalParams;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeRecord {
    id: NodeId,
    #[serde(default = "one")]
    n_tx: f64,
    #[serde(default = "one")]
    zipf_s: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ChannelRecord {
    a: NodeId,
    b: NodeId,
    bal_a: f64,
    bal_b: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    nodes: Vec<NodeRecord>,
    #[serde(default)]
    channels: Vec<ChannelRecord>,
}

fn balance(field: String, v: f64) -> Result<Coins> {
    if v < 0.0 {
        return Err(Error::NegativeBalance { field, value: v });
    }
    Coins::from_f64(v).map_err(|reason| Error::field(field, reason))
}

/// Parses a graph; `origin` names the source in error messages.
pub fn graph_from_json(text: &str, origin: &str) -> Result<PcnGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    let mut g = PcnGraph::new();
    for (i, n) in file.nodes.into_iter().enumerate() {
        let field = |f: &str| format!("{origin}: nodes[{i}].{f}");
        for (name, v) in [("n_tx", n.n_tx), ("zipf_s", n.zipf_s)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::field(field(name), format!("{v} must be finite and >= 0")));
            }
        }
        if g.contains(&n.id) {
            return Err(Error::field(field("id"), format!("duplicate node `{}`", n.id)));
        }
        g.add_node(Node::new(n.id, n.n_tx, n.zipf_s))?;
    }
    for (i, c) in file.channels.into_iter().enumerate() {
        let field = |f: &str| format!("{origin}: channels[{i}].{f}");
        for (name, id) in [("a", &c.a), ("b", &c.b)] {
            if !g.contains(id) {
                return Err(Error::field(field(name), format!("unknown node `{id}`")));
            }
        }
        if c.a == c.b {
            return Err(Error::field(field("b"), format!("channel endpoints must differ (both `{}`)", c.a)));
        }
        let bal_a = balance(field("bal_a"), c.bal_a)?;
        let bal_b = balance(field("bal_b"), c.bal_b)?;
        g.insert_channel(Channel::new(c.a, c.b, bal_a, bal_b))?;
    }
    Ok(g)
}

pub fn load_graph(path: &Path) -> Result<PcnGraph> {
    let text = read(path)?;
    graph_from_json(&text, &path.display().to_string())
}

/// Serialises a graph in the format [`graph_from_json`] reads.
pub fn graph_to_json(g: &PcnGraph) -> Value {
    let file = GraphFile {
        nodes: g
            .nodes()
            .iter()
            .map(|n| NodeRecord {
                id: n.id.clone(),
                n_tx: n.n_tx,
                zipf_s: n.zipf_s,
            })
            .collect(),
        channels: g
            .channels()
            .iter()
            .map(|c| ChannelRecord {
                a: c.endpoint_a.clone(),
                b: c.endpoint_b.clone(),
                bal_a: c.balance_a.as_f64(),
                bal_b: c.balance_b.as_f64(),
            })
            .collect(),
    };
    serde_json::to_value(file).expect("graph records serialise")
}

pub fn params_from_json(text: &str, origin: &str) -> Result<GlobalParams> {
    let params: GlobalParams = serde_json::from_str(text).map_err(|source| Error::Json {
        path: origin.to_string(),
        source,
    })?;
    params.validate().map_err(|e| match e {
        Error::InvalidField { field, reason } => Error::InvalidField {
            field: format!("{origin}: {field}"),
            reason,
        },
        other => other,
    })?;
    Ok(params)
}

pub fn load_params(path: &Path) -> Result<GlobalParams> {
    let text = read(path)?;
    params_from_json(&text, &path.display().to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}
