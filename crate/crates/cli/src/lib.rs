//! Command-line front end for `photon-add-core`: point evaluation of the
//! witnesses, CSV grid sweeps and the closed-form versus oracle
//! verification suites.

pub mod config;
pub mod error;
pub mod params;
pub mod report;
pub mod sweep;
pub mod verify;

pub use error::CliError;
