//! Free lock sizes: local search over a refining lock grid, compared with
//! fixed-lock greedy runs scored the same way.

use pcn_attach::attach::{continuous_local_search, greedy_fixed, AttachProblem};
use pcn_attach::equilibrium::{make_topology, Topology};
use pcn_attach::utility::ObjectiveKind;
use pcn_attach::{Coins, GlobalParams, Node};

fn main() -> pcn_attach::Result<()> {
    let g = make_topology(Topology::Random { seed: 7, edge_prob: 0.4 }, 8)?;
    let params = GlobalParams {
        f_avg: 1.0,
        f_avg_t: 0.05,
        c: Coins(2),
        r: 0.01,
        ..GlobalParams::default()
    };
    let problem = AttachProblem::new(g, Node::new("new", 60.0, 1.0), Coins(40), params)?;

    let found = continuous_local_search(&problem, 0.01)?;
    println!(
        "local search: {:?}\n  Ub = {:.4} after {} evaluations",
        found.strategy.actions,
        found.objective_value.to_f64(),
        found.evaluations
    );
    let ev = problem.evaluator()?;
    for lock in [0, 4, 8] {
        let r = greedy_fixed(&problem, Coins(lock))?;
        let ub = ev.objective(&r.strategy.actions, ObjectiveKind::Benefit)?;
        println!("greedy, lock {lock}: {} channels, Ub = {:.4}", r.strategy.len(), ub.to_f64());
    }
    Ok(())
}
