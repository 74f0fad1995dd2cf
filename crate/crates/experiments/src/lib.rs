//! Parameter sweeps, audits and CSV output for damped two-qubit states.

pub mod audits;
pub mod config;
pub mod error;
pub mod output;
pub mod sweep;

pub use config::{Bipartition, ConfigFile, FamilySpec, Scenario, SweepConfig};
pub use error::{ExperimentError, Result};
pub use sweep::{run_sweep, SweepRow};
