//! When is a star stable? The closed-form conditions next to an exhaustive
//! best-response check, over a few fee levels.

use pcn_attach::equilibrium::{is_nash_equilibrium, make_topology, star_ne_conditions, GameParams, Topology, DEFAULT_MAX_N};

fn main() -> pcn_attach::Result<()> {
    let leaves = 6;
    let g = make_topology(Topology::Star, leaves)?;
    println!("  a     conditions  enumeration");
    for a in [0.1, 0.5, 1.0, 2.0, 4.0] {
        let gp = GameParams::new(a, 1.0, 0.5, 1.0, leaves);
        let cond = star_ne_conditions(&gp)?;
        let ne = is_nash_equilibrium(&g, &gp, DEFAULT_MAX_N)?;
        println!("{a:>4}   {:<10}  {}", cond.holds, ne.is_ne);
        if let Some(d) = ne.profitable().next() {
            println!("       {} would rewire to {:?} (gain {})", d.node, d.best_response, d.gain);
        };
    }
    Ok(())
}
