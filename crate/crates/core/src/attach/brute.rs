use rayon::prelude::*;

use super::{first_max, AttachProblem, OptResult};
use crate::error::{Error, Result};
use crate::units::{Coins, ExtReal};
use crate::utility::{Action, ObjectiveKind, Strategy};

/// Default limit on the number of budget-feasible subsets enumerated.
pub const BRUTE_FORCE_CAP: u128 = 1 << 20;

/// Exact maximiser of `kind` over every budget-feasible subset of `actions`.
pub fn brute_force_oracle(p: &AttachProblem, actions: &[Action], kind: ObjectiveKind) -> Result<OptResult> {
    brute_force_with_cap(p, actions, kind, None, BRUTE_FORCE_CAP)
}

/// As [`brute_force_oracle`], optionally limited to at most `max_channels`
/// actions and with an explicit subset cap.
pub fn brute_force_with_cap(
    p: &AttachProblem,
    actions: &[Action],
    kind: ObjectiveKind,
    max_channels: Option<usize>,
    cap: u128,
) -> Result<OptResult> {
    let costs: Vec<Coins> = actions.iter().map(|a| a.budget_cost(&p.params)).collect();
    let limit = max_channels.unwrap_or(actions.len());
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut stack = Vec::new();
    collect(&costs, p.budget, limit, 0, Coins::ZERO, &mut stack, &mut subsets, cap)?;

    let ev = p.evaluator()?;
    let scored: Vec<ExtReal> = subsets
        .par_iter()
        .map(|idx| {
            let chosen: Vec<Action> = idx.iter().map(|&i| actions[i].clone()).collect();
            ev.objective(&chosen, kind)
        })
        .collect::<Result<_>>()?;
    let (strategy, value) = match first_max(&scored, |v| *v) {
        Some(i) if scored[i] > ExtReal::NegInf => (
            Strategy::new(subsets[i].iter().map(|&j| actions[j].clone()).collect()),
            scored[i],
        ),
        _ => (Strategy::default(), ExtReal::NegInf),
    };
    Ok(OptResult {
        algorithm: "brute".into(),
        strategy,
        objective_kind: kind,
        objective_value: value,
        evaluations: ev.evaluations(),
        iterations: subsets.len() as u64,
    })
}

/// Non-empty feasible subsets in lexicographic order of index lists.
#[allow(clippy::too_many_arguments)]
fn collect(
    costs: &[Coins],
    budget: Coins,
    limit: usize,
    from: usize,
    spent: Coins,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: u128,
) -> Result<()> {
    if stack.len() == limit {
        return Ok(());
    }
    for i in from..costs.len() {
        let Some(after) = spent.checked_add(costs[i]) else { continue };
        if after > budget {
            continue;
        }
        stack.push(i);
        out.push(stack.clone());
        if out.len() as u128 > cap {
            return Err(Error::SpaceTooLarge {
                size: out.len() as u128,
                cap,
            });
        }
        collect(costs, budget, limit, i + 1, after, stack, out, cap)?;
        stack.pop();
    }
    Ok(())
}
