//! Choosing channels for a node joining the network.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frozen::FrozenModel;
use crate::graph::{Node, NodeId, PcnGraph};
use crate::units::{Coins, ExtReal};
use crate::utility::{utility, Action, GlobalParams, ObjectiveKind, Strategy, UtilityBreakdown};

mod brute;
mod discrete;
mod greedy;
mod local_search;

pub use brute::{brute_force_oracle, brute_force_with_cap, BRUTE_FORCE_CAP};
pub use discrete::{composition_count, exhaustive_discrete, exhaustive_discrete_with_cap, DIVISION_CAP};
pub use greedy::{greedy_fixed, greedy_with_locks, GreedyRun};
pub use local_search::{continuous_local_search, local_search, positive_actions, LocalOptimum};

/// How strategies are scored.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateModel {
    /// Channel revenues estimated once per lock level; fees exact.
    #[default]
    Frozen,
    /// Every strategy re-derives probabilities and rates on its own graph.
    Recompute,
}

#[derive(Clone, Debug)]
pub struct AttachProblem {
    pub graph: PcnGraph,
    pub joiner: Node,
    pub budget: Coins,
    pub params: GlobalParams,
    /// Sorted, without the joiner.
    pub candidates: Vec<NodeId>,
    pub rate_model: RateModel,
}

impl AttachProblem {
    /// A problem where every existing node is a candidate peer.
    pub fn new(graph: PcnGraph, joiner: Node, budget: Coins, params: GlobalParams) -> Result<Self> {
        let candidates = graph.nodes().iter().map(|n| n.id.clone()).collect();
        Self::with_candidates(graph, joiner, budget, params, candidates)
    }

    pub fn with_candidates(
        graph: PcnGraph,
        joiner: Node,
        budget: Coins,
        params: GlobalParams,
        mut candidates: Vec<NodeId>,
    ) -> Result<Self> {
        params.validate()?;
        if budget == Coins::ZERO {
            return Err(Error::field("budget", "must be > 0"));
        }
        if graph.contains(&joiner.id) {
            return Err(Error::DuplicateNode(joiner.id));
        }
        for c in &candidates {
            graph.index_of(c)?;
        }
        candidates.sort();
        candidates.dedup();
        Ok(AttachProblem {
            graph,
            joiner,
            budget,
            params,
            candidates,
            rate_model: RateModel::Frozen,
        })
    }

    pub fn rate_model(mut self, model: RateModel) -> Self {
        self.rate_model = model;
        self
    }

    pub fn is_feasible(&self, actions: &[Action]) -> bool {
        actions
            .iter()
            .try_fold(Coins::ZERO, |acc, a| acc.checked_add(a.budget_cost(&self.params)))
            .is_some_and(|spent| spent <= self.budget)
    }

    pub fn evaluator(&self) -> Result<Evaluator<'_>> {
        Evaluator::new(self)
    }
}

/// Scores strategies of one problem and counts how often it did so.
pub struct Evaluator<'a> {
    problem: &'a AttachProblem,
    frozen: Option<FrozenModel>,
    count: AtomicU64,
}

impl<'a> Evaluator<'a> {
    pub fn new(problem: &'a AttachProblem) -> Result<Self> {
        let frozen = match problem.rate_model {
            RateModel::Frozen => Some(FrozenModel::new(
                &problem.graph,
                &problem.joiner,
                &problem.candidates,
                &problem.params,
            )?),
            RateModel::Recompute => None,
        };
        Ok(Evaluator {
            problem,
            frozen,
            count: AtomicU64::new(0),
        })
    }

    pub fn problem(&self) -> &AttachProblem {
        self.problem
    }

    pub fn breakdown(&self, actions: &[Action]) -> Result<UtilityBreakdown> {
        self.count.fetch_add(1, Ordering::Relaxed);
        match &self.frozen {
            Some(model) => model.evaluate(actions),
            None => utility(
                &self.problem.graph,
                &self.problem.joiner,
                &Strategy::new(actions.to_vec()),
                &self.problem.params,
            ),
        }
    }

    pub fn objective(&self, actions: &[Action], kind: ObjectiveKind) -> Result<ExtReal> {
        Ok(self.breakdown(actions)?.objective(kind))
    }

    pub fn evaluations(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OptResult {
    pub algorithm: String,
    pub strategy: Strategy,
    pub objective_kind: ObjectiveKind,
    pub objective_value: ExtReal,
    pub evaluations: u64,
    /// Greedy steps, divisions, local-search moves or subsets, by algorithm.
    pub iterations: u64,
}

/// Index of the first maximum; `None` for an empty slice.
pub(crate) fn first_max<T>(items: &[T], key: impl Fn(&T) -> ExtReal) -> Option<usize> {
    let mut best: Option<(usize, ExtReal)> = None;
    for (i, item) in items.iter().enumerate() {
        let v = key(item);
        if best.is_none_or(|(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i)
}
