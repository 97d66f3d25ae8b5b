//! Command-line experiments over the geowb toolkit.

pub mod config;
pub mod plot;
pub mod run;
