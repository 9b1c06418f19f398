//! Seeded reproduction of the zero-shift experiments: draw random shifts of
//! the smallest zeros of `P_n`, measure inner products and zero distances,
//! and report them as text tables, CSV or JSON.

pub mod config;
pub mod error;
pub mod experiment;
pub mod format;
pub mod rng;

pub use config::{ExperimentConfig, Mode, OutputFormat};
pub use error::HarnessError;
pub use experiment::{run_experiment, Trial, TrialReport};
