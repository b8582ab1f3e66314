//! Stochastic-geometry models of cognitive radio networks: node placement,
//! path-loss interference, closed-form bounds at a primary receiver,
//! exclusive-region design and throughput scaling experiments.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod channel;
pub mod config;
pub mod error;
pub mod geometry;
pub mod interference;
pub mod per_design;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod stats;
pub mod throughput;

pub use config::{LogBase, NetworkConfig, PowerMode, Radius, ValidationReport};
pub use error::{Error, Result};
pub use geometry::{NodeCount, NodePlacement, Point};
pub use report::Table;
