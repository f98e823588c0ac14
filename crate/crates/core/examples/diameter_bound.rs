//! Stable networks with a hub stay short: compare the diameter of a few
//! stable graphs with the bound.

use pcn_attach::equilibrium::{hub_path_check, is_nash_equilibrium, make_topology, GameParams, Topology, DEFAULT_MAX_N};

fn main() -> pcn_attach::Result<()> {
    let mut graphs = Vec::new();
    for seed in 0..60 {
        let kind = Topology::Random { seed, edge_prob: 0.5 };
        graphs.push((format!("random, seed {seed}"), make_topology(kind, 5)?));
    }
    for leaves in 2..=6 {
        graphs.push((format!("star, {leaves} leaves"), make_topology(Topology::Star, leaves)?));
    }
    for (a, l, s) in [(1.0, 1.0, 1.0), (0.5, 0.3, 0.5), (2.0, 3.0, 2.0)] {
        let gp = GameParams::new(a, a, l, s, 0);
        println!("a = b = {a}, l = {l}, s = {s}");
        let mut shown = 0;
        for (name, g) in &graphs {
            let Some(check) = hub_path_check(g, &gp)? else { continue };
            if shown == 3 || !is_nash_equilibrium(g, &gp, DEFAULT_MAX_N)?.is_ne {
                continue;
            }
            shown += 1;
            println!(
                "  {name}: hub {}, d = {}, bound {:.3}, lambda_e {:.3}, p_min {:.3}",
                check.hub, check.d, check.bound, check.lambda_e, check.p_min
            );
        }
    }
    Ok(())
}
