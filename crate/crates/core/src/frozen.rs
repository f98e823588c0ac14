//! Fixed-rate evaluation of a joiner's strategies.
//!
//! Channel revenue is estimated once per lock level: the joiner is connected
//! to every candidate at that lock, rates are computed on that configuration,
//! and each channel is credited with half of the traffic it forwards over its
//! two directions. A strategy's revenue is then the sum of its channels'
//! credits. Fees are exact: the joiner's payment distribution does not depend
//! on its own channels, and its distance to `v` is `1 + min_x d(x, v)` over
//! the peers `x` it can pay through.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::Result;
use crate::graph::{Channel, Node, NodeId, NodeIx, PcnGraph};
use crate::paths::hop_distances;
use crate::txmodel::forwarded_rates;
use crate::utility::{network_state, Action, CapacityFilter, GlobalParams, PeerLockMode, UtilityBreakdown};
use crate::units::Coins;

pub struct FrozenModel {
    base: PcnGraph,
    joiner: NodeIx,
    candidates: Vec<NodeId>,
    params: GlobalParams,
    /// Joiner's payment distribution over base-graph nodes.
    payee_prob: Vec<f64>,
    fee_rate: f64,
    /// `dist[x][v]` in the base routing graph, per candidate index.
    dist: HashMap<NodeId, Vec<Option<u32>>>,
    revenue: RwLock<HashMap<Coins, Arc<HashMap<NodeId, f64>>>>,
}

impl FrozenModel {
    /// `graph` must not contain the joiner.
    pub fn new(graph: &PcnGraph, joiner: &Node, candidates: &[NodeId], params: &GlobalParams) -> Result<Self> {
        let mut base = graph.clone();
        let u = base.add_node(joiner.clone())?;
        let state = network_state(&base, params)?;
        let payee_prob = state.probs.row(u).to_vec();
        let fee_rate = state.fee_rate[u];
        let mut dist = HashMap::new();
        for x in candidates {
            let xi = state.routing.index_of(x)?;
            dist.insert(x.clone(), hop_distances(&state.routing, xi));
        }
        Ok(FrozenModel {
            base,
            joiner: u,
            candidates: candidates.to_vec(),
            params: params.clone(),
            payee_prob,
            fee_rate,
            dist,
            revenue: RwLock::new(HashMap::new()),
        })
    }

    pub fn onchain_baseline(&self) -> f64 {
        self.fee_rate * self.params.c.as_f64() / 2.0
    }

    /// Per-peer revenue credit of a channel with the given lock.
    pub fn revenue_at(&self, lock: Coins) -> Result<Arc<HashMap<NodeId, f64>>> {
        if let Some(table) = self.revenue.read().expect("revenue cache poisoned").get(&lock) {
            return Ok(Arc::clone(table));
        }
        let table = Arc::new(self.compute_revenue(lock)?);
        let mut cache = self.revenue.write().expect("revenue cache poisoned");
        Ok(Arc::clone(cache.entry(lock).or_insert(table)))
    }

    fn compute_revenue(&self, lock: Coins) -> Result<HashMap<NodeId, f64>> {
        let mut g = self.base.clone();
        let joiner = self.base.node(self.joiner).id.clone();
        let peer_lock = match self.params.peer_lock_mode {
            PeerLockMode::Zero => Coins::ZERO,
            PeerLockMode::Symmetric => lock,
        };
        let mut channel_of = Vec::with_capacity(self.candidates.len());
        for x in &self.candidates {
            let c = g.insert_channel(Channel::new(joiner.clone(), x.clone(), lock, peer_lock))?;
            channel_of.push((x.clone(), c));
        }
        let state = network_state(&g, &self.params)?;
        let fwd = forwarded_rates(&state.routing, &state.probs, &state.sender_rate, self.joiner);
        Ok(channel_of
            .into_iter()
            .map(|(x, c)| (x, self.params.f_avg * (fwd[2 * c] + fwd[2 * c + 1]) / 2.0))
            .collect())
    }

    fn can_pay_through(&self, lock: Coins) -> bool {
        match self.params.capacity_filter {
            CapacityFilter::None => true,
            CapacityFilter::TxSize | CapacityFilter::Volume => lock >= self.params.t,
        }
    }

    /// Expected fees once the joiner holds channels to `peers`.
    pub fn fees(&self, actions: &[Action]) -> f64 {
        let usable: Vec<&Vec<Option<u32>>> = actions
            .iter()
            .filter(|a| self.can_pay_through(a.lock))
            .filter_map(|a| self.dist.get(&a.peer))
            .collect();
        let mut per_payment = 0.0;
        for (v, &p) in self.payee_prob.iter().enumerate() {
            if v == self.joiner || p == 0.0 {
                continue;
            }
            let Some(d) = usable.iter().filter_map(|dist| dist[v]).min() else {
                return f64::INFINITY;
            };
            per_payment += self.params.fee_hops.hops(d + 1) * p;
        }
        if self.fee_rate == 0.0 || self.params.f_avg_t == 0.0 {
            return 0.0;
        }
        self.fee_rate * self.params.f_avg_t * per_payment
    }

    pub fn evaluate(&self, actions: &[Action]) -> Result<UtilityBreakdown> {
        let mut revenue = 0.0;
        for a in actions {
            revenue += self.revenue_at(a.lock)?.get(&a.peer).copied().unwrap_or(0.0);
        }
        let fees = self.fees(actions);
        let cost: f64 = actions.iter().map(|a| crate::utility::channel_cost(&self.params, a.lock)).sum();
        Ok(UtilityBreakdown::new(
            revenue,
            fees,
            cost,
            self.onchain_baseline(),
            !actions.is_empty(),
        ))
    }
}
