//! Channel-creation strategies and topology equilibria for payment channel
//! networks.
//!
//! A node joining the network picks peers and channel locks to maximise
//! routing revenue minus the fees it pays and the cost of its channels,
//! under a degree-biased (modified Zipf) model of who pays whom. The crate
//! evaluates that utility, optimises it with greedy, exhaustive and local
//! search algorithms, and checks which simple topologies are stable when
//! every node plays the same game.

pub mod attach;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod frozen;
pub mod graph;
pub mod io;
pub mod paths;
pub mod txmodel;
pub mod units;
pub mod utility;

pub use error::{Error, Result};
pub use graph::{Channel, Node, NodeId, PcnGraph};
pub use units::{Coins, ExtReal};
pub use utility::{Action, GlobalParams, Strategy, UtilityBreakdown};
