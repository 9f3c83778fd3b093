//! Experiment harness for the vacuum-distillation simulator: reproducible
//! seeded runs, CSV emission, and the statistics used to compare sampled
//! estimates against statevector references.

pub mod config;
pub mod experiments;
pub mod stats;
