//! Std-side companion to `sparse-thue-core`: file formats, stripe-parallel
//! enumeration, the bundled corpus, verification summaries, sweeps and the
//! command-line configuration.

pub mod analyze;
pub mod config;
pub mod corpus;
pub mod format;
pub mod parallel;
pub mod sweep;
pub mod verify;
