//! Sequential nonlocality sharing in star-shaped quantum networks:
//! closed-form Bell values and measurement-probability constructions, a
//! density-matrix simulation that independently certifies every closed form,
//! and experiment drivers for sweeps, protocol comparison, and trade-off
//! tables.

pub mod bell;
pub mod config;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod oracle;
pub mod sequence;
pub mod tradeoff;
pub mod unsharp;

pub use config::{NoiseModel, ProtocolConfig};
pub use error::{Error, Result};
pub use sequence::AlphaSequence;
