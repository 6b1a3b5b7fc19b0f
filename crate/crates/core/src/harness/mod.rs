//! Configuration, JSON documents, suite runners and reports.

mod config;
mod report;
mod serial;
mod suites;

pub use config::{AlgebraSource, ClosureGenerators, OutputFormat, Suite, SuiteConfig};
pub use report::{Check, Evidence, Report, Totals};
pub use serial::*;
pub use suites::{
    closure_generators, diagonal_candidate, division_trial, expected_order, formal_norm_one,
    norm_one_transvection, replay, run_suite, table_mismatches, POINTS_PER_MAP,
};
