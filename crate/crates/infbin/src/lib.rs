//! Command line, file formats and parallel execution for `infbin-core`.

pub mod cli;
pub mod csv_out;
pub mod parallel;
pub mod records;
