//! Command-line surface for the Mestre family pipeline: reproduction of the
//! two printed determinants, family sweeps written as curve tables, and the
//! symbolic verification suites.

pub mod acceptance;
pub mod commands;
pub mod record;
pub mod report;

pub use commands::Options;
pub use record::{CurveRecord, Format};
pub use report::{ReportDoc, Status};
