//! Command-line harness for conditional (k, r)-coloring: instance
//! generation, solver drivers, and sweeps that compare the solver with
//! closed-form predictions.

pub mod input;
pub mod report;
pub mod sweep;

pub use report::{ChiValue, CsvRow, Format, Report};
pub use sweep::{Summary, SweepConfig};
