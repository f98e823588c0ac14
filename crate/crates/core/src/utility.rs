//! The joining node's utility: routing revenue, fees paid, and channel costs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Channel, EdgeId, Node, NodeId, NodeIx, PcnGraph};
use crate::paths::hop_distances;
use crate::txmodel::{edge_rates_weighted, EdgeRateTable, TransProbMatrix};
use crate::units::{serialize_maybe_inf, Coins, ExtReal};

/// How many fee-charging hops a payment over `d` edges pays for.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeeHops {
    /// `d` hops, the verbatim fee formula.
    #[default]
    Distance,
    /// `d - 1` hops, one per intermediary.
    Intermediaries,
}

impl FeeHops {
    pub fn hops(self, d: u32) -> f64 {
        match self {
            FeeHops::Distance => d as f64,
            FeeHops::Intermediaries => d.saturating_sub(1) as f64,
        }
    }
}

/// What the peer locks on its side of a channel opened by the joiner.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeerLockMode {
    #[default]
    Zero,
    /// The peer matches the joiner's lock.
    Symmetric,
}

/// Which directed edges may carry payments.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CapacityFilter {
    /// Every edge routes.
    #[default]
    None,
    /// Drop edges whose balance is below `T`.
    TxSize,
    /// Drop edges below `T`, then repeatedly drop the edge whose expected
    /// volume `lambda_e * T` most exceeds its balance, recomputing rates after
    /// each removal, until every remaining edge can carry its volume.
    Volume,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Demand {
    pub from: NodeId,
    pub to: NodeId,
    pub rate: f64,
}

/// Where transaction probabilities and sender rates come from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case", deny_unknown_fields)]
pub enum TrafficModel {
    /// Modified Zipf over in-degree ranks, sender rates from `n_tx`.
    #[default]
    Zipf,
    /// Fixed point-to-point demands; each sender's probabilities are its
    /// demand shares and its rate is their sum.
    Explicit { demands: Vec<Demand> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalParams {
    /// Fee earned per forwarded transaction.
    pub f_avg: f64,
    /// Fee paid per hop of one's own transaction.
    #[serde(rename = "f_avg_T")]
    pub f_avg_t: f64,
    /// On-chain cost borne by each party of a channel.
    #[serde(rename = "C")]
    pub c: Coins,
    /// Opportunity cost per locked coin.
    pub r: f64,
    /// Largest transaction size.
    #[serde(rename = "T", default)]
    pub t: Coins,
    /// Total network rate; when absent every node sends at its own `n_tx`.
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n_total: Option<f64>,
    #[serde(default)]
    pub fee_hops: FeeHops,
    #[serde(default)]
    pub peer_lock_mode: PeerLockMode,
    #[serde(default)]
    pub capacity_filter: CapacityFilter,
    #[serde(default)]
    pub traffic: TrafficModel,
}

impl Default for GlobalParams {
    fn default() -> Self {
        GlobalParams {
            f_avg: 1.0,
            f_avg_t: 1.0,
            c: Coins(1),
            r: 0.0,
            t: Coins::ZERO,
            n_total: None,
            fee_hops: FeeHops::Distance,
            peer_lock_mode: PeerLockMode::Zero,
            capacity_filter: CapacityFilter::None,
            traffic: TrafficModel::Zipf,
        }
    }
}

fn non_negative(field: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::field(field, format!("{v} must be finite and >= 0")))
    }
}

impl GlobalParams {
    pub fn validate(&self) -> Result<()> {
        non_negative("f_avg", self.f_avg)?;
        non_negative("f_avg_T", self.f_avg_t)?;
        non_negative("r", self.r)?;
        if let Some(n) = self.n_total {
            non_negative("N", n)?;
        }
        if let TrafficModel::Explicit { demands } = &self.traffic {
            for (i, d) in demands.iter().enumerate() {
                non_negative(&format!("traffic.demands[{i}].rate"), d.rate)?;
                if d.from == d.to {
                    return Err(Error::field(
                        format!("traffic.demands[{i}]"),
                        "sender and receiver must differ",
                    ));
                }
            }
        }
        Ok(())
    }
}

/// `L_u(v, l) = C + r * lock`.
pub fn channel_cost(params: &GlobalParams, lock: Coins) -> f64 {
    params.c.as_f64() + params.r * lock.as_f64()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Action {
    pub peer: NodeId,
    pub lock: Coins,
}

impl Action {
    pub fn new(peer: impl Into<NodeId>, lock: impl Into<Coins>) -> Self {
        Action {
            peer: peer.into(),
            lock: lock.into(),
        }
    }

    /// Coins this channel takes out of the budget.
    pub fn budget_cost(&self, params: &GlobalParams) -> Coins {
        params.c + self.lock
    }
}

/// A multiset of channel-opening actions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Strategy {
    pub actions: Vec<Action>,
}

impl Strategy {
    pub fn new(actions: Vec<Action>) -> Self {
        Strategy { actions }
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    /// `sum (C + lock)`.
    pub fn budget_cost(&self, params: &GlobalParams) -> Coins {
        self.actions.iter().map(|a| a.budget_cost(params)).sum()
    }

    pub fn check_budget(&self, params: &GlobalParams, budget: Coins) -> Result<()> {
        let spent = self.budget_cost(params);
        if spent > budget {
            return Err(Error::BudgetExceeded {
                spent: spent.0,
                budget: budget.0,
            });
        }
        Ok(())
    }

    pub fn channel_cost(&self, params: &GlobalParams) -> f64 {
        self.actions.iter().map(|a| channel_cost(params, a.lock)).sum()
    }

    /// Sorted copy, for order-independent comparison.
    pub fn canonical(&self) -> Strategy {
        let mut actions = self.actions.clone();
        actions.sort();
        Strategy { actions }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UtilityBreakdown {
    pub revenue: f64,
    #[serde(serialize_with = "serialize_maybe_inf")]
    pub fees: f64,
    pub channel_cost: f64,
    /// `C_u = N_u * C / 2`, the offset of the benefit function.
    pub onchain_baseline: f64,
    pub total: ExtReal,
}

impl UtilityBreakdown {
    /// Builds the breakdown; a disconnected node or an unreachable payee
    /// makes the total `-inf`.
    pub fn new(revenue: f64, fees: f64, channel_cost: f64, onchain_baseline: f64, connected: bool) -> Self {
        let total = if !connected || fees == f64::INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(revenue - fees - channel_cost)
        };
        UtilityBreakdown {
            revenue,
            fees,
            channel_cost,
            onchain_baseline,
            total,
        }
    }

    /// `U' = revenue - fees`.
    pub fn simplified(&self) -> ExtReal {
        match self.total {
            ExtReal::NegInf => ExtReal::NegInf,
            _ => ExtReal::Finite(self.revenue - self.fees),
        }
    }

    /// `U^b = C_u + U`.
    pub fn benefit(&self) -> ExtReal {
        self.total + self.onchain_baseline
    }

    pub fn objective(&self, kind: ObjectiveKind) -> ExtReal {
        match kind {
            ObjectiveKind::Utility => self.total,
            ObjectiveKind::Simplified => self.simplified(),
            ObjectiveKind::Benefit => self.benefit(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ObjectiveKind {
    #[serde(rename = "U")]
    Utility,
    #[serde(rename = "U'")]
    Simplified,
    #[serde(rename = "Ub")]
    Benefit,
}

impl std::fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ObjectiveKind::Utility => "U",
            ObjectiveKind::Simplified => "U'",
            ObjectiveKind::Benefit => "Ub",
        })
    }
}

/// Probabilities and rates of a network as payments actually see it.
#[derive(Clone, Debug)]
pub struct NetworkState {
    /// The graph restricted to edges that route under the capacity filter.
    pub routing: PcnGraph,
    pub probs: TransProbMatrix,
    /// Rate each node sends at, as used for edge rates.
    pub sender_rate: Vec<f64>,
    /// Rate each node's own payments are charged fees on (`N_u`).
    pub fee_rate: Vec<f64>,
    pub rates: EdgeRateTable,
}

fn traffic_of(g: &PcnGraph, params: &GlobalParams) -> Result<(TransProbMatrix, Vec<f64>, Vec<f64>)> {
    let n = g.node_count();
    match &params.traffic {
        TrafficModel::Zipf => {
            let probs = TransProbMatrix::zipf(g);
            let own: Vec<f64> = g.nodes().iter().map(|v| v.n_tx).collect();
            let senders = match params.n_total {
                Some(total) => vec![total; n],
                None => own.clone(),
            };
            Ok((probs, senders, own))
        }
        TrafficModel::Explicit { demands } => {
            let mut totals = vec![0.0; n];
            let mut pairs = Vec::with_capacity(demands.len());
            for d in demands {
                let s = g.index_of(&d.from)?;
                let t = g.index_of(&d.to)?;
                totals[s] += d.rate;
                pairs.push((s, t, d.rate));
            }
            let mut rows: Vec<(NodeIx, Vec<(NodeIx, f64)>)> = (0..n).map(|u| (u, Vec::new())).collect();
            for (s, t, rate) in pairs {
                if totals[s] > 0.0 {
                    rows[s].1.push((t, rate / totals[s]));
                }
            }
            let probs = TransProbMatrix::from_rows(n, &rows)?;
            Ok((probs, totals.clone(), totals))
        }
    }
}

/// Applies the capacity filter and computes probabilities and rates.
pub fn network_state(g: &PcnGraph, params: &GlobalParams) -> Result<NetworkState> {
    let mut routing = match params.capacity_filter {
        CapacityFilter::None => g.clone(),
        CapacityFilter::TxSize | CapacityFilter::Volume => g.reduced_subgraph(params.t),
    };
    loop {
        let (probs, sender_rate, fee_rate) = traffic_of(&routing, params)?;
        let rates = edge_rates_weighted(&routing, &probs, &sender_rate);
        if params.capacity_filter == CapacityFilter::Volume {
            let t = params.t.as_f64();
            let worst = routing
                .enabled_edges()
                .map(|(e, edge)| (e, rates.lambda[e] * t - edge.capacity.as_f64()))
                .filter(|&(_, excess)| excess > 1e-9)
                .fold(None::<(EdgeId, f64)>, |best, (e, x)| match best {
                    Some((_, bx)) if bx >= x => best,
                    _ => Some((e, x)),
                });
            if let Some((e, _)) = worst {
                routing = routing.without_edges(&[e]);
                continue;
            }
        }
        return Ok(NetworkState {
            routing,
            probs,
            sender_rate,
            fee_rate,
            rates,
        });
    }
}

/// `f_avg` times the rate of transactions `u` forwards as an intermediary.
///
/// Each forwarded payment enters over one of `u`'s channels and leaves over
/// another, so this equals half the forwarded traffic summed over both
/// directions of every incident channel.
pub fn expected_revenue(g: &PcnGraph, u: &NodeId, rates: &EdgeRateTable, params: &GlobalParams) -> Result<f64> {
    let ui = g.index_of(u)?;
    Ok(params.f_avg * rates.transit[ui])
}

/// `N_u * sum_v hops(d(u, v)) * f_avg_T * p(u, v)`, with `N_u` from the node.
pub fn expected_fees(g: &PcnGraph, u: &NodeId, probs: &TransProbMatrix, params: &GlobalParams) -> Result<f64> {
    let ui = g.index_of(u)?;
    Ok(fees_at(g, ui, probs, g.node(ui).n_tx, params))
}

pub(crate) fn fees_at(g: &PcnGraph, u: NodeIx, probs: &TransProbMatrix, n_u: f64, params: &GlobalParams) -> f64 {
    let dist = hop_distances(g, u);
    let mut per_payment = 0.0;
    for (v, &p) in probs.row(u).iter().enumerate() {
        if v == u || p == 0.0 {
            continue;
        }
        match dist[v] {
            Some(d) => per_payment += params.fee_hops.hops(d) * p,
            None => return f64::INFINITY,
        }
    }
    if n_u == 0.0 || params.f_avg_t == 0.0 {
        return 0.0;
    }
    n_u * params.f_avg_t * per_payment
}

/// The graph after `joiner` opens the strategy's channels, plus its index.
///
/// If the graph already holds a node with the joiner's id, that node is used
/// as is; otherwise the joiner is added.
pub fn materialize(g: &PcnGraph, joiner: &Node, strategy: &Strategy, params: &GlobalParams) -> Result<(PcnGraph, NodeIx)> {
    let mut h = g.clone();
    let u = match h.index_of(&joiner.id) {
        Ok(u) => u,
        Err(_) => h.add_node(joiner.clone())?,
    };
    for a in &strategy.actions {
        if a.peer == joiner.id {
            return Err(Error::SelfLoop(a.peer.clone()));
        }
        let peer_lock = match params.peer_lock_mode {
            PeerLockMode::Zero => Coins::ZERO,
            PeerLockMode::Symmetric => a.lock,
        };
        h.insert_channel(Channel::new(joiner.id.clone(), a.peer.clone(), a.lock, peer_lock))?;
    }
    Ok((h, u))
}

/// Utility of `node` in `g` as it stands, charging `channel_cost` for its channels.
pub fn evaluate_in_place(g: &PcnGraph, u: NodeIx, params: &GlobalParams, channel_cost: f64) -> Result<UtilityBreakdown> {
    let state = network_state(g, params)?;
    let revenue = params.f_avg * state.rates.transit[u];
    let fees = fees_at(&state.routing, u, &state.probs, state.fee_rate[u], params);
    let baseline = state.fee_rate[u] * params.c.as_f64() / 2.0;
    let connected = g.channel_degree(u) > 0;
    Ok(UtilityBreakdown::new(revenue, fees, channel_cost, baseline, connected))
}

/// Full utility of the joiner after opening `strategy`, recomputing every
/// probability and rate on the augmented graph.
pub fn utility(g: &PcnGraph, joiner: &Node, strategy: &Strategy, params: &GlobalParams) -> Result<UtilityBreakdown> {
    let (h, u) = materialize(g, joiner, strategy, params)?;
    evaluate_in_place(&h, u, params, strategy.channel_cost(params))
}

/// As [`utility`], rejecting strategies that exceed `budget`.
pub fn utility_within_budget(
    g: &PcnGraph,
    joiner: &Node,
    strategy: &Strategy,
    params: &GlobalParams,
    budget: Coins,
) -> Result<UtilityBreakdown> {
    strategy.check_budget(params, budget)?;
    utility(g, joiner, strategy, params)
}

/// `U' = revenue - fees`.
pub fn simplified_utility(g: &PcnGraph, joiner: &Node, strategy: &Strategy, params: &GlobalParams) -> Result<ExtReal> {
    Ok(utility(g, joiner, strategy, params)?.simplified())
}

/// `U^b = N_u * C / 2 + U`.
pub fn benefit(g: &PcnGraph, joiner: &Node, strategy: &Strategy, params: &GlobalParams) -> Result<ExtReal> {
    Ok(utility(g, joiner, strategy, params)?.benefit())
}
