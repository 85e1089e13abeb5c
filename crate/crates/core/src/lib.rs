//! Partial optimality for cubic correlation clustering on general graphs.

pub mod conditions;
pub mod engine;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graphalg;
pub mod instance;
pub mod maps;
pub mod oracle;
pub mod reductions;

pub use error::{Error, Result};
pub use instance::{EdgeLabeling, Instance, Partition};
