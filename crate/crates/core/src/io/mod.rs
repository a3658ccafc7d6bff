//! Configuration, tabular and JSON output, plots and the sweep runner.

mod config;
mod summary;
mod svg;
mod sweep;
mod tables;

pub use config::{
    ChartStart, InitialSpec, OutputSpec, ProfileSpec, Range1, RunConfig, SweepSpec, Thresholds,
};
pub use summary::{Drifts, RunSummary};
pub use svg::{drift_svg, orbit_svg};
pub use sweep::{run_node, run_sweep, sweep_nodes};
pub use tables::{
    fmt_f64, fmt_opt, mesh_csv, read_table, summary_csv, summary_row, trajectory_csv,
    MESH_COLUMNS, SUMMARY_COLUMNS, TRAJECTORY_COLUMNS,
};

use serde::Serialize;

/// Pretty JSON with fields in declaration order.
pub fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}
