//! Dense vector arithmetic and seeded pseudo-randomness used by every
//! other module.

mod rng;
mod vector;

pub use rng::{RngStream, StreamId};
pub use vector::ParamVector;
