//! A newcomer E joins the line A - B - C - D.
//!
//! D pays A nine times per period and E pays B once. With room for two
//! channels and 19 spare coins, E does best by bridging the two ends of the
//! line, locking 10 towards A (its own payment to B goes that way too) and 9
//! towards D.

use pcn_attach::attach::{brute_force_oracle, exhaustive_discrete, greedy_fixed, AttachProblem, RateModel};
use pcn_attach::utility::{CapacityFilter, Demand, ObjectiveKind, PeerLockMode, TrafficModel};
use pcn_attach::{Action, Channel, Coins, GlobalParams, Node, PcnGraph};

fn main() -> pcn_attach::Result<()> {
    let mut g = PcnGraph::new();
    for id in ["A", "B", "C", "D"] {
        g.add_node(Node::new(id, 0.0, 1.0))?;
    }
    for (a, b) in [("A", "B"), ("B", "C"), ("C", "D")] {
        g.insert_channel(Channel::new(a, b, 100, 100))?;
    }
    let params = GlobalParams {
        f_avg: 1.0,
        f_avg_t: 1.0,
        c: Coins(1),
        r: 0.01,
        t: Coins(1),
        peer_lock_mode: PeerLockMode::Symmetric,
        capacity_filter: CapacityFilter::Volume,
        traffic: TrafficModel::Explicit {
            demands: vec![
                Demand { from: "D".into(), to: "A".into(), rate: 9.0 },
                Demand { from: "E".into(), to: "B".into(), rate: 1.0 },
            ],
        },
        ..GlobalParams::default()
    };
    let budget = Coins(2 * params.c.0 + 19);
    let joiner = Node::new("E", 1.0, 1.0);
    let problem = AttachProblem::new(g, joiner, budget, params)?;

    let exact = problem.clone().rate_model(RateModel::Recompute);
    let actions: Vec<Action> = exact
        .candidates
        .iter()
        .flat_map(|v| (0..=19).map(move |l| Action::new(v.clone(), l)))
        .collect();
    let best = brute_force_oracle(&exact, &actions, ObjectiveKind::Utility)?;
    println!(
        "brute force over {} subsets: {:?} with U = {}",
        best.iterations, best.strategy.actions, best.objective_value
    );

    let greedy = greedy_fixed(&problem, Coins(9))?;
    println!("greedy (lock 9): {:?}, U' = {}", greedy.strategy.actions, greedy.objective_value);
    let discrete = exhaustive_discrete(&problem, Coins(3))?;
    println!(
        "exhaustive (unit 3): {:?}, U' = {}",
        discrete.strategy.actions, discrete.objective_value
    );
    Ok(())
}
