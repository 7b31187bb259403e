//! Experiment runner: a sequence of groups in, one report row per group out.

mod report;
mod run;
mod spec;

pub use report::{emit_report, read_report_json, write_report, ExperimentReport, Format, Method, ReportRow, REPORT_SCHEMA_VERSION};
pub use run::{run_experiment, run_experiment_with, RunOptions};
pub use spec::{parse_spec, Mode, SequenceSpec, SpecFile, DEFAULT_SAMPLES};
