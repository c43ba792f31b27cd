pub mod cache;
pub mod cli;
pub mod record;
pub mod report;

pub use cache::Cache;
pub use record::{load_form, FormRecord};
pub use report::{congruence_transfer_check, emit_report, invariant_report, Format, InvariantReport, Report, Settings, TransferReport, Verdict};
