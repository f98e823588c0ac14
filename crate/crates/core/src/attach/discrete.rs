use rayon::prelude::*;

use super::{first_max, AttachProblem, Evaluator, OptResult};
use crate::error::{Error, Result};
use crate::units::{Coins, ExtReal};
use crate::utility::{Action, ObjectiveKind, Strategy};

/// Default limit on the number of budget divisions.
pub const DIVISION_CAP: u128 = 10_000_000;

/// Ordered compositions of `units` into `parts` non-negative parts,
/// `binom(units + parts - 1, parts - 1)`, saturating at `u128::MAX`.
pub fn composition_count(units: u64, parts: u64) -> u128 {
    if parts == 0 {
        return u128::from(units == 0);
    }
    let (n, k) = (units as u128 + parts as u128 - 1, parts as u128 - 1);
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let Some(next) = acc.checked_mul(n - i) else {
            return u128::MAX;
        };
        acc = next / (i + 1);
    }
    acc
}

/// Exhaustive search over budget divisions with unit `m`.
///
/// The `floor(B / m)` budget units are split into `k + 1` ordered parts,
/// `k = floor(B / C)`, the last part being left unspent. For each division a
/// greedy run picks, at step `j`, the best channel locking `parts[j] * m`,
/// stopping before the first step that would break the budget. The best
/// prefix over all divisions is returned.
///
/// Divisions that share their first `j` parts also share the first `j` greedy
/// steps, so the runs are evaluated as one depth-first walk over lock
/// sequences, visited in lexicographic order. Among strategies of equal `U'`
/// the one with fewer channels wins, then the first one visited.
pub fn exhaustive_discrete(p: &AttachProblem, m: Coins) -> Result<OptResult> {
    exhaustive_discrete_with_cap(p, m, DIVISION_CAP)
}

pub fn exhaustive_discrete_with_cap(p: &AttachProblem, m: Coins, cap: u128) -> Result<OptResult> {
    if m == Coins::ZERO {
        return Err(Error::field("unit", "must be > 0"));
    }
    if p.params.c == Coins::ZERO {
        return Err(Error::InvalidParameter(
            "the channel count bound floor(B / C) needs C > 0".into(),
        ));
    }
    let k = p.budget.0 / p.params.c.0;
    if k == 0 {
        return Err(Error::EmptyBudget);
    }
    let units = p.budget.0 / m.0;
    let count = composition_count(units, k + 1);
    if count > cap {
        return Err(Error::DivisionSpaceTooLarge { count, cap });
    }
    let ev = p.evaluator()?;
    let mut walk = Walk {
        ev: &ev,
        unit: m,
        units,
        max_depth: k as usize,
        best: (ExtReal::NegInf, Vec::new()),
    };
    walk.visit(&mut Vec::new(), 0, Coins::ZERO)?;
    let (value, actions) = walk.best;
    Ok(OptResult {
        algorithm: "discrete".into(),
        strategy: Strategy::new(actions),
        objective_kind: ObjectiveKind::Simplified,
        objective_value: value,
        evaluations: ev.evaluations(),
        iterations: count.min(u64::MAX as u128) as u64,
    })
}

struct Walk<'e, 'p> {
    ev: &'e Evaluator<'p>,
    unit: Coins,
    units: u64,
    max_depth: usize,
    best: (ExtReal, Vec<Action>),
}

impl Walk<'_, '_> {
    fn visit(&mut self, picks: &mut Vec<Action>, used: u64, spent: Coins) -> Result<()> {
        if picks.len() == self.max_depth {
            return Ok(());
        }
        let problem = self.ev.problem();
        for part in 0..=self.units - used {
            let lock = Coins(part * self.unit.0);
            let after = spent + problem.params.c + lock;
            if after > problem.budget {
                break;
            }
            let options: Vec<Action> = problem
                .candidates
                .iter()
                .map(|v| Action::new(v.clone(), lock))
                .filter(|a| !picks.contains(a))
                .collect();
            if options.is_empty() {
                continue;
            }
            let scored: Vec<ExtReal> = options
                .par_iter()
                .map(|a| {
                    let mut trial = picks.clone();
                    trial.push(a.clone());
                    self.ev.objective(&trial, ObjectiveKind::Simplified)
                })
                .collect::<Result<_>>()?;
            let i = first_max(&scored, |v| *v).expect("options are non-empty");
            picks.push(options[i].clone());
            let shorter = scored[i] == self.best.0 && picks.len() < self.best.1.len();
            if scored[i] > self.best.0 || shorter {
                self.best = (scored[i], picks.clone());
            }
            self.visit(picks, used + part, after)?;
            picks.pop();
        }
        Ok(())
    }
}
