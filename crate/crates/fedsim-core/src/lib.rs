//! Deterministic single-process simulator of federated optimization.
//!
//! The crate simulates communication rounds of a federated training loop
//! on synthetic heterogeneous tasks: a server broadcasts state, sampled
//! clients run K local optimizer steps on their data shards, and the
//! server aggregates the returned offsets. Nine methods share this loop,
//! differing in the local optimizer (SGD, proximal SGD, control-variate
//! corrected SGD, adaptive with running-max second-order momenta) and in
//! the global update (averaged descent or server-side Adam/AMSGrad). The
//! locally amended adaptive method additionally rescales each round's
//! global movement into an offset-momentum term that pulls local updates
//! toward the global trajectory.
//!
//! Everything is seeded: a run is a pure function of its config, bit
//! identical across repetitions and thread counts.

pub mod checks;
pub mod client;
pub mod config;
pub mod datagen;
pub mod error;
pub mod metrics;
pub mod numerics;
pub mod objective;
pub mod orchestrator;
pub mod server;

pub use error::{CoreError, Result};
