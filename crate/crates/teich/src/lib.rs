//! Verification suites, reports and the command-line front end for `teich-core`.

pub mod cli;
pub mod config;
pub mod parallel;
pub mod tables;
pub mod verify;
