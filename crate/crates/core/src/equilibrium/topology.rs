use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Channel, Node, PcnGraph};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Topology {
    /// `n` leaves around centre `v0`; `n + 1` nodes.
    Star,
    /// `n` nodes in a line.
    Path,
    /// A cycle on `n + 1` nodes.
    Circle,
    /// `n` nodes, all pairs joined.
    Complete,
    /// `n` nodes, each pair joined independently with probability `edge_prob`.
    Random { seed: u64, edge_prob: f64 },
}

/// Builds a labelled topology with unit balances in both directions.
///
/// Nodes are named `v0`, `v1`, ... zero-padded to a common width so that
/// name order matches index order.
pub fn make_topology(kind: Topology, n: usize) -> Result<PcnGraph> {
    if n < 2 {
        return Err(Error::BadSize(format!("n = {n}, need at least 2")));
    }
    let nodes = match kind {
        Topology::Star | Topology::Circle => n + 1,
        _ => n,
    };
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    match kind {
        Topology::Star => pairs.extend((1..nodes).map(|i| (0, i))),
        Topology::Path => pairs.extend((1..nodes).map(|i| (i - 1, i))),
        Topology::Circle => pairs.extend((0..nodes).map(|i| (i, (i + 1) % nodes))),
        Topology::Complete => {
            for i in 0..nodes {
                pairs.extend((i + 1..nodes).map(|j| (i, j)));
            }
        }
        Topology::Random { seed, edge_prob } => {
            if !(0.0..=1.0).contains(&edge_prob) {
                return Err(Error::field("edge_prob", format!("{edge_prob} is not in [0, 1]")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for i in 0..nodes {
                for j in i + 1..nodes {
                    if rng.gen_bool(edge_prob) {
                        pairs.push((i, j));
                    }
                }
            }
        }
    }
    let width = (nodes - 1).to_string().len();
    let name = |i: usize| format!("v{i:0width$}");
    let mut g = PcnGraph::new();
    for i in 0..nodes {
        g.add_node(Node::new(name(i), 1.0, 1.0))?;
    }
    for (i, j) in pairs {
        g.insert_channel(Channel::new(name(i), name(j), 1, 1))?;
    }
    Ok(g)
}
