//! Library side of the command-line front end, exposed so integration
//! tests can drive the commands without spawning the binary.

pub mod commands;
pub mod report;
