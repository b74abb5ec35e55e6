//! Batch driver: enumeration caches, verification sweeps and reports.

pub mod cache;
pub mod checks;
pub mod config;
pub mod record;
pub mod report;
