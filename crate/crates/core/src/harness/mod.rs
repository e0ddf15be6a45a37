//! Case loading, verification pipelines and reports.

pub mod case;
pub mod pipelines;
pub mod reference;
pub mod report;

pub use case::{load_case, CaseSpec};
pub use pipelines::{run_pipeline, Pipeline};
pub use report::{emit_report, Format, VerificationReport};
