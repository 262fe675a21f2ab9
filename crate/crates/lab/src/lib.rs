//! Monte Carlo experiments, file formats and the `dlpp-lab` command line on
//! top of [`dlpp_core`].

pub mod cli;
pub mod config;
mod error;
pub mod experiments;
pub mod exponent;
pub mod io;
pub mod svg;

pub use config::{ExperimentConfig, Mode};
pub use error::{LabError, Result};
