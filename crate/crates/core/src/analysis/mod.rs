//! Verification suites and classification engines.

pub mod annihilator;
pub mod axiom;
pub mod catalogue;
pub mod chains;
pub mod classify;
pub mod grid;
pub mod intertwiner;
pub mod jacobi;
pub mod linsolve;
pub mod reach;
pub mod report;

pub use report::{all_passed, sort_reports, CheckReport, Status};
