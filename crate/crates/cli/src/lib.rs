//! Input language, job execution, reports and the corpus runner.

pub mod corpus;
pub mod elaborate;
pub mod jobs;
pub mod report;
pub mod syntax;

pub use corpus::{corpus_run, load, run_document, CorpusReport};
pub use elaborate::{elaborate, parse_source, Object, Workspace};
pub use jobs::{execute_job, JobOutcome, Settings};
pub use syntax::{Diagnostic, SourceDocument};
