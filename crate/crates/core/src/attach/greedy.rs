use rayon::prelude::*;

use super::{first_max, AttachProblem, Evaluator, OptResult};
use crate::error::{Error, Result};
use crate::units::{Coins, ExtReal};
use crate::utility::{Action, ObjectiveKind, Strategy};

/// Trajectory of one greedy run.
#[derive(Clone, Debug, PartialEq)]
pub struct GreedyRun {
    /// Actions in the order they were picked.
    pub picks: Vec<Action>,
    /// `U'` of each prefix `picks[..=j]`.
    pub values: Vec<ExtReal>,
    /// Marginal gain of each pick; the first is `+inf` (out of disconnection).
    pub gains: Vec<ExtReal>,
    /// Length of the best prefix.
    pub best_len: usize,
}

impl GreedyRun {
    pub fn best_strategy(&self) -> Strategy {
        Strategy::new(self.picks[..self.best_len].to_vec())
    }

    pub fn best_value(&self) -> ExtReal {
        match self.best_len {
            0 => ExtReal::NegInf,
            k => self.values[k - 1],
        }
    }
}

/// Greedy maximisation of `U'` where step `j` must open a channel with lock `locks[j]`.
///
/// Each step adds the action with the largest `U'`, lowest peer id first on
/// ties; an action already taken cannot be taken again. The run stops early
/// when no action is left.
pub fn greedy_with_locks(ev: &Evaluator<'_>, locks: &[Coins]) -> Result<GreedyRun> {
    let candidates = &ev.problem().candidates;
    let mut picks: Vec<Action> = Vec::with_capacity(locks.len());
    let mut values = Vec::with_capacity(locks.len());
    let mut gains = Vec::with_capacity(locks.len());
    let mut current = ExtReal::NegInf;
    for &lock in locks {
        let options: Vec<Action> = candidates
            .iter()
            .map(|v| Action::new(v.clone(), lock))
            .filter(|a| !picks.contains(a))
            .collect();
        if options.is_empty() {
            break;
        }
        let scored: Vec<ExtReal> = options
            .par_iter()
            .map(|a| {
                let mut trial = picks.clone();
                trial.push(a.clone());
                ev.objective(&trial, ObjectiveKind::Simplified)
            })
            .collect::<Result<_>>()?;
        let i = first_max(&scored, |v| *v).expect("options are non-empty");
        gains.push(scored[i] - current);
        current = scored[i];
        values.push(current);
        picks.push(options[i].clone());
    }
    let best_len = first_max(&values, |v| *v).map_or(0, |i| i + 1);
    Ok(GreedyRun {
        picks,
        values,
        gains,
        best_len,
    })
}

/// Greedy over actions `(v, l1)` with at most `M = floor(B / (C + l1))` channels.
pub fn greedy_fixed(p: &AttachProblem, l1: Coins) -> Result<OptResult> {
    let unit = p.params.c + l1;
    if unit == Coins::ZERO {
        return Err(Error::InvalidParameter("C + l1 must be positive".into()));
    }
    let m = (p.budget.0 / unit.0) as usize;
    if m == 0 {
        return Err(Error::EmptyBudget);
    }
    let ev = p.evaluator()?;
    let steps = m.min(p.candidates.len());
    let run = greedy_with_locks(&ev, &vec![l1; steps])?;
    Ok(OptResult {
        algorithm: "greedy".into(),
        strategy: run.best_strategy(),
        objective_kind: ObjectiveKind::Simplified,
        objective_value: run.best_value(),
        evaluations: ev.evaluations(),
        iterations: run.picks.len() as u64,
    })
}
