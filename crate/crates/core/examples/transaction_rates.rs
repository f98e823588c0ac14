//! Payment probabilities and per-edge rates on a star whose leaves send at
//! different rates.

use pcn_attach::equilibrium::{make_topology, Topology};
use pcn_attach::txmodel::{edge_rates, node_flow_rate, TransProbMatrix};

fn main() -> pcn_attach::Result<()> {
    let mut g = make_topology(Topology::Star, 4)?;
    for (v, rate) in [(1, 1.0), (2, 2.0), (3, 4.0), (4, 8.0)] {
        g.node_mut(v).n_tx = rate;
    }
    let probs = TransProbMatrix::zipf(&g);
    println!("leaf v1 pays: {:?}", probs.row(1));

    let rates = edge_rates(&g, &probs, None);
    for e in 0..g.edge_slots() {
        let edge = g.edge(e);
        println!(
            "{} -> {}: p_e = {:.4}, lambda_e = {:.4}",
            g.node(edge.from).id,
            g.node(edge.to).id,
            rates.p_e[e],
            rates.lambda[e]
        );
    }
    println!("traffic through the centre: {:.4}", node_flow_rate(&g, &rates, &"v0".into())?);
    Ok(())
}
