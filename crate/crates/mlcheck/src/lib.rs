//! File formats, corpus harness, counterexample hunter and report
//! rendering on top of `mlcheck-core`.

pub mod hunt;
pub mod manifest;
pub mod mlat;
pub mod registry;
pub mod report;
pub mod runner;
