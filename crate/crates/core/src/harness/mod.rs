//! Parameter sweeps, golden-table comparison and output writers behind the
//! `obstacle-verify` binary.

mod emit;
mod grid;
mod reference;
mod sweep;

pub use emit::{emit, format_csv, format_text, sci_fixed, CSV_HEADER};
pub use grid::{emit_grid, GRID_FILES_CLASSICAL};
pub use reference::{
    compare_reference, CellVerdict, Column, ComparisonReport, ReferenceCell, ReferenceRow, ReferenceTable, Tolerance,
};
pub use sweep::{run_sweep, OutputFormat, ProblemKind, ProblemSpec, RowKey, SweepConfig, SweepRow};
