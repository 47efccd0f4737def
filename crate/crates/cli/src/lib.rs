//! Sweep engine behind the `qcorr` binary: parameter-grid CSV emission,
//! the inequality/divergence audit report, and single-point JSON records.
//!
//! Everything here is a thin, deterministic shell over the `qcorr` library;
//! rows are emitted in a fixed order (axis1 outer, temperature inner) with
//! 15 significant digits, UTF-8, LF line endings, and no locale dependence.

pub mod config;
pub mod engine;
pub mod spec;

pub use engine::{run_audit, run_point, run_sweep, AuditReport, AuditRow, PointReport};
pub use spec::{Axis, CliError, Model, OutputColumn, SweepSpec};

/// Format with 15 significant digits (scientific, deterministic).
pub fn fmt15(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x }; // collapse -0.0
    format!("{:.14e}", x)
}
