//! Batch front end for the lattice-sampling decisions: problem specs in,
//! text or JSON reports out.

pub mod report;
pub mod run;
pub mod spec;

pub use report::{exit_code, Report, Verdict};
pub use run::{input_error_report, revalidate_witness, run, Flags};
pub use spec::{parse_spec, parse_str, ProblemSpec, SpecError};
