use rayon::prelude::*;
use serde::Serialize;

use super::GameParams;
use crate::error::{Error, Result};
use crate::graph::{Channel, NodeId, NodeIx, PcnGraph};
use crate::paths::hop_distances;
use crate::txmodel::{edge_rates, TransProbMatrix};
use crate::units::ExtReal;

/// Largest graph [`best_response`] enumerates by default.
pub const DEFAULT_MAX_N: usize = 10;

/// `b * (forwarded share) - a * sum_v d(u, v) p(u, v) - l * deg(u)`.
///
/// `-inf` when `u` has no channel or cannot reach a node it pays.
pub fn game_utility(g: &PcnGraph, u: &NodeId, gp: &GameParams) -> Result<ExtReal> {
    let ui = g.index_of(u)?;
    Ok(utility_at(g, ui, gp))
}

pub(crate) fn utility_at(g: &PcnGraph, u: NodeIx, gp: &GameParams) -> ExtReal {
    let degree = g.channel_degree(u);
    if degree == 0 {
        return ExtReal::NegInf;
    }
    let probs = TransProbMatrix::zipf_uniform(g, gp.s);
    let dist = hop_distances(g, u);
    let mut fees = 0.0;
    for (v, &p) in probs.row(u).iter().enumerate() {
        if v == u || p == 0.0 {
            continue;
        }
        match dist[v] {
            Some(d) => fees += d as f64 * p,
            None => return ExtReal::NegInf,
        }
    }
    let revenue = if gp.b == 0.0 {
        0.0
    } else {
        edge_rates(g, &probs, Some(1.0)).transit[u]
    };
    ExtReal::Finite(gp.b * revenue - gp.a * fees - gp.l * degree as f64)
}

/// `g` with `u`'s channels replaced by one unit channel to each of `neighbors`.
pub(crate) fn rewired(g: &PcnGraph, u: NodeIx, neighbors: &[NodeIx]) -> PcnGraph {
    let mut h = g.without_channels_of(u);
    let uid = g.node(u).id.clone();
    for &v in neighbors {
        h.insert_channel(Channel::new(uid.clone(), g.node(v).id.clone(), 1, 1))
            .expect("rewiring between existing distinct nodes");
    }
    h
}

/// Change in `u`'s utility if it replaced its channels by `neighbors`.
pub fn deviation_gain(g: &PcnGraph, u: &NodeId, neighbors: &[NodeId], gp: &GameParams) -> Result<ExtReal> {
    let ui = g.index_of(u)?;
    let mut set = Vec::with_capacity(neighbors.len());
    for v in neighbors {
        let vi = g.index_of(v)?;
        if vi == ui {
            return Err(Error::SelfLoop(v.clone()));
        }
        set.push(vi);
    }
    set.sort_unstable();
    set.dedup();
    Ok(utility_at(&rewired(g, ui, &set), ui, gp) - utility_at(g, ui, gp))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationReport {
    pub node: NodeId,
    /// Utility under the current graph.
    pub current: ExtReal,
    /// Best utility over all neighbour sets.
    pub best: ExtReal,
    /// `best - current`.
    pub gain: ExtReal,
    /// A maximising neighbour set, or the current one when nothing is strictly better.
    pub best_response: Vec<NodeId>,
    pub is_profitable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NashReport {
    pub is_ne: bool,
    /// One report per node, in node order.
    pub reports: Vec<DeviationReport>,
}

impl NashReport {
    pub fn profitable(&self) -> impl Iterator<Item = &DeviationReport> {
        self.reports.iter().filter(|r| r.is_profitable)
    }
}

/// Exhaustive best response of `u` over all `2^(n-1)` neighbour sets.
pub fn best_response(g: &PcnGraph, u: &NodeId, gp: &GameParams) -> Result<DeviationReport> {
    best_response_with_limit(g, u, gp, DEFAULT_MAX_N)
}

pub fn best_response_with_limit(g: &PcnGraph, u: &NodeId, gp: &GameParams, max_n: usize) -> Result<DeviationReport> {
    gp.validate()?;
    let n = g.node_count();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let ui = g.index_of(u)?;
    Ok(best_response_at(g, ui, gp))
}

fn best_response_at(g: &PcnGraph, u: NodeIx, gp: &GameParams) -> DeviationReport {
    let others: Vec<NodeIx> = (0..g.node_count()).filter(|&v| v != u).collect();
    let subset = |mask: u64| -> Vec<NodeIx> {
        others
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &v)| v)
            .collect()
    };
    let current = utility_at(g, u, gp);
    let scores: Vec<ExtReal> = (0..1u64 << others.len())
        .into_par_iter()
        .map(|mask| utility_at(&rewired(g, u, &subset(mask)), u, gp))
        .collect();
    let (mut best_mask, mut best) = (0u64, ExtReal::NegInf);
    for (mask, &v) in scores.iter().enumerate() {
        if v > best {
            best = v;
            best_mask = mask as u64;
        }
    }
    let is_profitable = best > current;
    let chosen = if is_profitable {
        subset(best_mask)
    } else {
        g.neighbors(u)
    };
    DeviationReport {
        node: g.node(u).id.clone(),
        current,
        best,
        gain: best - current,
        best_response: chosen.into_iter().map(|v| g.node(v).id.clone()).collect(),
        is_profitable,
    }
}

/// Runs [`best_response`] for every node; a Nash equilibrium has no
/// strictly profitable deviation.
pub fn is_nash_equilibrium(g: &PcnGraph, gp: &GameParams, max_n: usize) -> Result<NashReport> {
    gp.validate()?;
    let n = g.node_count();
    if n > max_n {
        return Err(Error::TooLarge { n, max: max_n });
    }
    let reports: Vec<DeviationReport> = (0..n).map(|u| best_response_at(g, u, gp)).collect();
    Ok(NashReport {
        is_ne: reports.iter().all(|r| !r.is_profitable),
        reports,
    })
}
