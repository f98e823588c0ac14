use rayon::prelude::*;

use super::{first_max, AttachProblem, Evaluator, OptResult};
use crate::error::{Error, Result};
use crate::units::{Coins, ExtReal};
use crate::utility::{channel_cost, Action, ObjectiveKind, Strategy};

/// Grid refinement stops once the action space would grow past this size.
const MAX_GRID_ACTIONS: usize = 2048;

/// Actions `(v, l)` with `E^fees({(v, l)}) + (B / C) * L(v, l) < C_u`,
/// the condition under which the benefit stays positive and submodular.
pub fn positive_actions(ev: &Evaluator<'_>, actions: &[Action]) -> Result<Vec<Action>> {
    let p = ev.problem();
    if p.params.c == Coins::ZERO {
        return Ok(Vec::new());
    }
    let ratio = p.budget.as_f64() / p.params.c.as_f64();
    let keep: Vec<bool> = actions
        .par_iter()
        .map(|a| {
            let b = ev.breakdown(std::slice::from_ref(a))?;
            Ok(b.fees + ratio * channel_cost(&p.params, a.lock) < b.onchain_baseline)
        })
        .collect::<Result<_>>()?;
    Ok(actions
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(a, _)| a.clone())
        .collect())
}

/// Outcome of [`local_search`].
#[derive(Clone, Debug, PartialEq)]
pub struct LocalOptimum {
    pub actions: Vec<Action>,
    pub value: ExtReal,
    pub moves: u64,
}

fn improves(new: ExtReal, old: ExtReal, rel: f64) -> bool {
    match (new, old) {
        (ExtReal::Finite(n), ExtReal::Finite(o)) => n > o + rel * o.abs(),
        _ => new > old,
    }
}

/// Deterministic add / delete / swap local search for the benefit over
/// budget-feasible subsets of `omega`.
///
/// A move is taken only if it raises the benefit by more than a factor
/// `eps / |omega|^2` of its current magnitude. The search runs once from the
/// best singleton, once more on the actions the first optimum left unused,
/// and returns the better of the two.
pub fn local_search(ev: &Evaluator<'_>, omega: &[Action], eps: f64) -> Result<LocalOptimum> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::field("eps", "must be > 0"));
    }
    let first = search(ev, omega, eps)?;
    let rest: Vec<Action> = omega
        .iter()
        .filter(|a| !first.actions.contains(a))
        .cloned()
        .collect();
    let second = search(ev, &rest, eps)?;
    let moves = first.moves + second.moves;
    let mut best = if second.value > first.value { second } else { first };
    best.moves = moves;
    Ok(best)
}

fn search(ev: &Evaluator<'_>, omega: &[Action], eps: f64) -> Result<LocalOptimum> {
    let p = ev.problem();
    let kind = ObjectiveKind::Benefit;
    let score = |set: &[Action]| ev.objective(set, kind);
    let rel = eps / (omega.len().max(1) as f64).powi(2);

    let singles: Vec<usize> = (0..omega.len())
        .filter(|&i| p.is_feasible(std::slice::from_ref(&omega[i])))
        .collect();
    let values: Vec<ExtReal> = singles
        .par_iter()
        .map(|&i| score(std::slice::from_ref(&omega[i])))
        .collect::<Result<_>>()?;
    let Some(start) = first_max(&values, |v| *v) else {
        return Ok(LocalOptimum {
            actions: Vec::new(),
            value: ExtReal::NegInf,
            moves: 0,
        });
    };
    let mut inside = vec![false; omega.len()];
    inside[singles[start]] = true;
    let mut value = values[start];
    let mut moves = 0u64;

    loop {
        let current: Vec<usize> = (0..omega.len()).filter(|&i| inside[i]).collect();
        let outside: Vec<usize> = (0..omega.len()).filter(|&i| !inside[i]).collect();
        let mut trials: Vec<Vec<usize>> = Vec::new();
        for &a in &outside {
            let mut t = current.clone();
            t.push(a);
            trials.push(t);
        }
        for &b in &current {
            trials.push(current.iter().copied().filter(|&i| i != b).collect());
        }
        for &b in &current {
            for &a in &outside {
                let mut t: Vec<usize> = current.iter().copied().filter(|&i| i != b).collect();
                t.push(a);
                trials.push(t);
            }
        }
        let found = trials
            .par_iter()
            .map(|t| -> Result<Option<ExtReal>> {
                let set: Vec<Action> = t.iter().map(|&i| omega[i].clone()).collect();
                if t.is_empty() || !p.is_feasible(&set) {
                    return Ok(None);
                }
                let v = score(&set)?;
                Ok(improves(v, value, rel).then_some(v))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .enumerate()
            .find_map(|(i, v)| v.map(|v| (i, v)));
        match found {
            Some((i, v)) => {
                inside.iter_mut().for_each(|x| *x = false);
                for &j in &trials[i] {
                    inside[j] = true;
                }
                value = v;
                moves += 1;
            }
            None => break,
        }
    }
    Ok(LocalOptimum {
        actions: (0..omega.len()).filter(|&i| inside[i]).map(|i| omega[i].clone()).collect(),
        value,
        moves,
    })
}

/// Benefit maximisation with freely chosen locks.
///
/// Locks are drawn from the grid `step, 2 * step, ...` up to `B - C`,
/// starting with `step = B / 8` and halving while the best benefit still
/// improves by a relative `eps` or more. Actions failing the positivity
/// condition are dropped at every level.
pub fn continuous_local_search(p: &AttachProblem, eps: f64) -> Result<OptResult> {
    if !(eps.is_finite() && eps > 0.0) {
        return Err(Error::field("eps", "must be > 0"));
    }
    let ev = p.evaluator()?;
    let spare = p.budget.0.saturating_sub(p.params.c.0);
    let mut step = (p.budget.0 / 8).max(1);
    let mut best: Option<LocalOptimum> = None;
    let mut moves = 0;
    loop {
        let locks: Vec<Coins> = (1..).map(|k| Coins(k * step)).take_while(|l| l.0 <= spare).collect();
        let grid: Vec<Action> = p
            .candidates
            .iter()
            .flat_map(|v| locks.iter().map(move |&l| Action::new(v.clone(), l)))
            .collect();
        let omega = positive_actions(&ev, &grid)?;
        if omega.is_empty() && best.is_none() {
            return Err(Error::NoFeasibleCandidate);
        }
        let found = local_search(&ev, &omega, eps)?;
        moves += found.moves;
        let done = match &best {
            None => false,
            Some(prev) => match (prev.value, found.value) {
                (ExtReal::Finite(old), ExtReal::Finite(new)) => new - old < eps * old.abs(),
                (old, new) => new <= old,
            },
        };
        if best.as_ref().is_none_or(|b| found.value > b.value) {
            best = Some(found);
        }
        let next_len = grid.len() * 2;
        if done || step == 1 || next_len > MAX_GRID_ACTIONS {
            break;
        }
        step /= 2;
    }
    let best = best.expect("at least one grid level ran");
    Ok(OptResult {
        algorithm: "continuous".into(),
        strategy: Strategy::new(best.actions),
        objective_kind: ObjectiveKind::Benefit,
        objective_value: best.value,
        evaluations: ev.evaluations(),
        iterations: moves,
    })
}
