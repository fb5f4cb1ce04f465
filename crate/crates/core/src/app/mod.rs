//! Command implementations behind the `abslocal` binary. Each command
//! returns a value and an exit code; rendering is separate so the library
//! can be driven from tests.

mod analyze;
mod config;
mod ensemble;
pub mod exit;
pub mod format;
mod oracle;
mod sweep;

pub use analyze::{analyze_file, analyze_state, render_analysis, AnalysisReport, BellDiagCheck};
pub use config::{OutputFormat, RunConfig};
pub use ensemble::{render_ensemble, run_ensemble, EnsembleSummary};
pub use oracle::{render_oracle, run_oracle, OracleRecord, OracleSummary, ORACLE_SLACK};
pub use sweep::{
    render_sweep_csv, run_sweep, SweepFamily, SweepRow, SweepRowKind, SweepTable,
    BISECTION_ITERATIONS,
};
