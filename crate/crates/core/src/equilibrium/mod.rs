//! Topology stability in the channel-creation game.
//!
//! Every node uses the same Zipf exponent `s`, earns `b` per unit of
//! forwarded transaction share, pays `a` per unit of distance-weighted
//! payment share, and pays `l` for each incident channel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

mod diameter;
mod game;
mod star;
mod topology;

pub use diameter::{diameter_bound, hub_path_check, HubPathCheck};
pub use game::{
    best_response, best_response_with_limit, deviation_gain, game_utility, is_nash_equilibrium,
    DeviationReport, NashReport, DEFAULT_MAX_N,
};
pub use star::{star_ne_conditions, ConditionReport, StarConditions};
pub use topology::{make_topology, Topology};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    /// Fee weight, `N_u * f_avg_T`.
    pub a: f64,
    /// Revenue weight, `N_v * f_avg`.
    pub b: f64,
    /// Cost of one incident channel.
    pub l: f64,
    /// Zipf exponent shared by all nodes.
    pub s: f64,
    /// Size parameter; the leaf count for the star conditions.
    pub n: usize,
}

impl GameParams {
    pub fn new(a: f64, b: f64, l: f64, s: f64, n: usize) -> Self {
        GameParams { a, b, l, s, n }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("b", self.b), ("l", self.l), ("s", self.s)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::field(name, format!("{v} must be finite and >= 0")));
            }
        }
        Ok(())
    }
}

/// Generalised harmonic number `H_n^s = sum_{k=1..n} k^-s`.
pub fn harmonic(n: usize, s: f64) -> f64 {
    (1..=n).map(|k| (k as f64).powf(-s)).sum()
}
