//! Command-line plumbing for `sumfree-core`: sweep configuration, seeded
//! subset sampling, verification sweeps, report files and row replay.

pub mod commands;
pub mod config;
pub mod output;
pub mod replay;
pub mod rng;
pub mod sweep;

pub use sumfree_core::report;

pub use config::{Emit, Format, SweepConfig};
pub use output::Row;
pub use sweep::{run_sweep, Summary, SweepResult};
