//! Shortest paths and how many of them cross each edge, on a small ring with
//! one chord.

use pcn_attach::paths::all_pairs_path_stats;
use pcn_attach::{Channel, Node, PcnGraph};

fn main() -> pcn_attach::Result<()> {
    let mut g = PcnGraph::new();
    for id in ["a", "b", "c", "d", "e"] {
        g.add_node(Node::new(id, 1.0, 1.0))?;
    }
    for (x, y, bal) in [("a", "b", 5), ("b", "c", 5), ("c", "d", 10), ("d", "e", 10), ("e", "a", 10), ("b", "d", 10)] {
        g.insert_channel(Channel::new(x, y, bal, bal))?;
    }
    let stats = all_pairs_path_stats(&g);
    let (s, r) = (g.index_of(&"a".into())?, g.index_of(&"c".into())?);
    println!(
        "a -> c: distance {:?}, {} shortest paths",
        stats.distance(s, r),
        stats.path_count(s, r)
    );
    for (e, m) in stats.get(s, r).per_edge_counts {
        let edge = g.edge(e);
        println!("  {} -> {} lies on {m}", g.node(edge.from).id, g.node(edge.to).id);
    }

    // A payment of 6 cannot use a side holding 5, so it goes the long way round.
    let thin = g.reduced_subgraph(pcn_attach::Coins(6));
    let stats = all_pairs_path_stats(&thin);
    println!(
        "with T = 6: distance {:?}, {} shortest paths",
        stats.distance(s, r),
        stats.path_count(s, r)
    );
    Ok(())
}
