//! Named verification tasks over the `g2degen` library, with seeded runs and JSON reports.

pub mod config;
pub mod report;
pub mod runner;
pub mod tasks;
