//! Scoring a few channel choices for a newcomer to a small ring.

use pcn_attach::equilibrium::{make_topology, Topology};
use pcn_attach::utility::{benefit, simplified_utility, utility};
use pcn_attach::{Action, Coins, GlobalParams, Node, Strategy};

fn main() -> pcn_attach::Result<()> {
    let g = make_topology(Topology::Circle, 5)?;
    let params = GlobalParams {
        f_avg: 0.5,
        f_avg_t: 0.2,
        c: Coins(2),
        r: 0.02,
        ..GlobalParams::default()
    };
    let joiner = Node::new("new", 3.0, 1.0);
    let options = [
        vec![Action::new("v0", 5u64)],
        vec![Action::new("v0", 5u64), Action::new("v3", 5u64)],
        vec![Action::new("v0", 2u64), Action::new("v2", 2u64), Action::new("v4", 2u64)],
    ];
    for actions in options {
        let s = Strategy::new(actions);
        let b = utility(&g, &joiner, &s, &params)?;
        println!(
            "{:?}\n  revenue {:.4}  fees {:.4}  cost {:.4}  U {:.4}  U' {:.4}  Ub {:.4}",
            s.actions,
            b.revenue,
            b.fees,
            b.channel_cost,
            b.total.to_f64(),
            simplified_utility(&g, &joiner, &s, &params)?.to_f64(),
            benefit(&g, &joiner, &s, &params)?.to_f64()
        );
    }
    Ok(())
}
