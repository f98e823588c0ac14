use serde::Serialize;

use super::GameParams;
use crate::error::{Error, Result};
use crate::graph::{Channel, NodeId, NodeIx, PcnGraph};
use crate::paths::hop_distances;
use crate::txmodel::{edge_rates, forwarded_rates, TransProbMatrix};

/// Upper bound on the length of a longest shortest path through a hub in a
/// stable network: `2 ((C + eps) / 2 - lambda_e f) / (p_min N f) + 1`.
pub fn diameter_bound(c: f64, eps: f64, lambda_e: f64, f: f64, p_min: f64, n_rate: f64) -> Result<f64> {
    for (name, v) in [("f", f), ("p_min", p_min), ("N", n_rate)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::field(name, format!("{v} must be > 0")));
        }
    }
    for (name, v) in [("C", c), ("eps", eps), ("lambda_e", lambda_e)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(Error::field(name, format!("{v} must be finite and >= 0")));
        }
    }
    Ok(2.0 * ((c + eps) / 2.0 - lambda_e * f) / (p_min * n_rate * f) + 1.0)
}

/// The bound measured on one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HubPathCheck {
    pub hub: NodeId,
    /// `v_0, ..., v_d`.
    pub path: Vec<NodeId>,
    pub d: u32,
    /// Forwarding revenue rate of the shortcut `v_{k-1} v_{k+1}`,
    /// `k = floor(d / 2)`, for whichever endpoint earns less from it.
    pub lambda_e: f64,
    /// Smaller of the shortcut's two directed rates, own payments included.
    pub lambda_e_total: f64,
    pub p_min: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Picks a maximum-degree hub lying on a diametral path and checks the bound there.
///
/// Game parameters are read with `f = 1`: each party of the shortcut pays
/// `l = (C + eps) / 2`, every node sends at rate `N = b`, and rates are
/// measured on the graph with the shortcut added. `lambda_e f` stands for the
/// revenue an endpoint gains from the shortcut, so `lambda_e` counts, for each
/// endpoint, the traffic on the shortcut that the endpoint forwards (payments
/// it sends or receives earn it nothing), and takes the smaller of the two.
/// `p_min` is the smallest
/// payment probability between a node before the midpoint and one after it,
/// in either direction. Returns `None` when no hub lies on a diametral path
/// of length at least 2.
pub fn hub_path_check(g: &PcnGraph, gp: &GameParams) -> Result<Option<HubPathCheck>> {
    gp.validate()?;
    let n = g.node_count();
    let dist: Vec<Vec<Option<u32>>> = (0..n).map(|s| hop_distances(g, s)).collect();
    let Some(diameter) = dist.iter().flatten().copied().max().flatten() else {
        return Ok(None);
    };
    if diameter < 2 || dist.iter().flatten().any(Option::is_none) {
        return Ok(None);
    }
    let max_degree = (0..n).map(|v| g.channel_degree(v)).max().unwrap_or(0);
    let mut chosen = None;
    'search: for h in (0..n).filter(|&v| g.channel_degree(v) == max_degree) {
        for x in 0..n {
            for y in 0..n {
                if dist[x][y] == Some(diameter)
                    && dist[x][h].zip(dist[h][y]).is_some_and(|(a, b)| a + b == diameter)
                {
                    chosen = Some((h, x, y));
                    break 'search;
                }
            }
        }
    }
    let Some((h, x, y)) = chosen else {
        return Ok(None);
    };
    let mut path = vec![x];
    while *path.last().unwrap() != y {
        let cur = *path.last().unwrap();
        let here = dist[x][cur].unwrap();
        // Stay on a shortest x-y path that passes through h.
        let next = g
            .neighbors(cur)
            .into_iter()
            .find(|&w| {
                dist[x][w] == Some(here + 1)
                    && dist[w][y] == Some(diameter - here - 1)
                    && on_route(&dist, x, w, y, h, diameter)
            })
            .expect("a shortest path through the hub exists");
        path.push(next);
    }

    let d = diameter;
    let k = (d / 2) as usize;
    let (left, right) = (path[k - 1], path[k + 1]);
    let probs = TransProbMatrix::zipf_uniform(g, gp.s);
    let mut p_min = f64::INFINITY;
    for &i in &path[..k] {
        for &j in &path[k + 1..] {
            p_min = p_min.min(probs.get(i, j)).min(probs.get(j, i));
        }
    }
    let mut with_e = g.clone();
    let e = with_e.insert_channel(Channel::new(g.node(left).id.clone(), g.node(right).id.clone(), 1, 1))?;
    let probs_e = TransProbMatrix::zipf_uniform(&with_e, gp.s);
    let rates = edge_rates(&with_e, &probs_e, Some(gp.b));
    let lambda_e_total = rates.lambda[2 * e].min(rates.lambda[2 * e + 1]);
    let senders = vec![gp.b; n];
    let earned = |x: NodeIx| {
        let fwd = forwarded_rates(&with_e, &probs_e, &senders, x);
        fwd[2 * e] + fwd[2 * e + 1]
    };
    let lambda_e = earned(left).min(earned(right));
    let bound = diameter_bound(2.0 * gp.l, 0.0, lambda_e, 1.0, p_min, gp.b)?;
    Ok(Some(HubPathCheck {
        hub: g.node(h).id.clone(),
        path: path.iter().map(|&v| g.node(v).id.clone()).collect(),
        d,
        lambda_e,
        lambda_e_total,
        p_min,
        bound,
        holds: d as f64 <= bound + 1e-9,
    }))
}

/// Whether `w`, at distance `dist[x][w]` from `x`, can continue to `y` through `h`.
fn on_route(dist: &[Vec<Option<u32>>], x: NodeIx, w: NodeIx, y: NodeIx, h: NodeIx, d: u32) -> bool {
    let (dxw, dxh, dhy) = (dist[x][w].unwrap(), dist[x][h].unwrap(), dist[h][y].unwrap());
    if dxw <= dxh {
        dist[w][h] == Some(dxh - dxw)
    } else {
        dist[h][w] == Some(dxw - dxh) && dist[w][y] == Some(d - dxw) && dhy >= dxw - dxh
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{make_topology, Topology};

    #[test]
    fn bound_examples() {
        assert_eq!(diameter_bound(2.0, 0.0, 0.0, 1.0, 0.1, 10.0).unwrap(), 3.0);
        assert_eq!(diameter_bound(2.0, 0.0, 1.0, 1.0, 0.5, 3.0).unwrap(), 1.0);
        assert!(diameter_bound(2.0, 0.0, 0.0, 1.0, 0.0, 10.0).is_err());
    }

    #[test]
    fn star_path_runs_through_the_centre() {
        let g = make_topology(Topology::Star, 4).unwrap();
        let gp = GameParams::new(1.0, 1.0, 1.0, 1.0, 4);
        let c = hub_path_check(&g, &gp).unwrap().unwrap();
        assert_eq!(c.d, 2);
        assert_eq!(c.hub.as_str(), "v0");
        assert_eq!(c.path.len(), 3);
        assert_eq!(c.path[1].as_str(), "v0");
    }

    #[test]
    fn complete_graphs_have_no_long_path() {
        let g = make_topology(Topology::Complete, 4).unwrap();
        let gp = GameParams::new(1.0, 1.0, 1.0, 1.0, 4);
        assert!(hub_path_check(&g, &gp).unwrap().is_none());
    }
}
