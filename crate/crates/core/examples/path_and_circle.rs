//! Paths and circles stop being stable once they get long.

use pcn_attach::equilibrium::{is_nash_equilibrium, make_topology, GameParams, Topology, DEFAULT_MAX_N};

fn main() -> pcn_attach::Result<()> {
    let gp = GameParams::new(1.0, 1.0, 1.0, 1.0, 0);
    for (name, kind) in [("path", Topology::Path), ("circle", Topology::Circle)] {
        for n in 3..=9 {
            let g = make_topology(kind, n)?;
            let report = is_nash_equilibrium(&g, &gp, DEFAULT_MAX_N)?;
            let best = report
                .profitable()
                .max_by(|x, y| x.gain.partial_cmp(&y.gain).expect("gains are ordered"));
            match best {
                None => println!("{name} on {} nodes: stable", g.node_count()),
                Some(d) => println!(
                    "{name} on {} nodes: {} gains {} by linking {:?}",
                    g.node_count(),
                    d.node,
                    d.gain,
                    d.best_response
                ),
            }
        }
    }
    Ok(())
}
