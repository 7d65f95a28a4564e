//! Multi-scale Beta-Binomial analysis of distributional variation (ANDOVA).
//!
//! Given `k` groups of replicated samples on a common interval, this crate
//! detects and localizes cross-group differences among the group-level
//! distributions while adjusting for in-group (replicate-to-replicate)
//! variation. The sample space is recursively bisected into a tree of
//! windows; each window hosts a Beta-Binomial test of whether the groups
//! split probability mass identically between the window's children. A
//! Markov-tree prior couples the window-level tests so that evidence is
//! shared across locations and scales, and exact message passing recovers
//! the posterior alternative probabilities window by window.
//!
//! The main entry points are:
//!
//! - [`partition`]: build the window tree and bin observations into counts.
//! - [`fit`]: run the full graphical fit end to end.
//! - [`ms_bb`]: the window-autonomous (independence) variant.
//! - [`sampler`]: draw from the joint posterior of states and parameters.
//! - [`decision`]: Bayesian FDR thresholding of the per-window probabilities.
//! - [`simulation`]: scenario generators and the ROC harness.

pub mod beta_binomial;
pub mod decision;
mod error;
pub mod fit;
pub mod io;
pub mod markov_tree;
pub mod ms_bb;
pub mod partition;
pub mod report;
pub mod sampler;
pub mod simulation;
pub mod special;
pub mod svg;

pub use error::{Error, Result};
