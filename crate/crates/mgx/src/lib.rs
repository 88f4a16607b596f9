//! Command-line front end for `mgx-core`: JSON file format, a parallel
//! driver for the exact search, and the verification harness.

pub mod driver;
pub mod io;
pub mod oracle;
pub mod verify;
pub mod output;
pub mod cli;
