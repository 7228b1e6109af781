//! Simulation toolkit comparing the Optimum Routing Approach (ORA, recompute
//! at every topology snapshot) with the Least Overhead Routing Approach
//! (LORA, reuse until broken) for minimum-hop routes and connected
//! dominating sets in mobile ad hoc networks.
//!
//! The pipeline is:
//!
//! 1. [`mobility`] generates seeded node traces (Random Waypoint, City
//!    Section, Manhattan);
//! 2. [`graph`] turns each sampled snapshot into a unit-disk graph;
//! 3. [`routing`] and [`cds`] compute per-snapshot structures under both
//!    strategies;
//! 4. [`metrics`] reduces timelines to connectivity, hop count, lifetime and
//!    CDS size;
//! 5. [`experiment`] runs the seeded model x density x velocity grid;
//! 6. [`report`] and [`cli`] write the results.

pub mod cds;
pub mod cli;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod metrics;
pub mod mobility;
pub mod report;
pub mod routing;

pub use error::{Error, Result};
