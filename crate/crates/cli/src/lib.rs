//! Library half of the `trustrec` command: catalog ingestion, the report
//! document, batch solving, and the `verify` self-check.

pub mod ingest;
pub mod report;
pub mod run;
pub mod verify;

pub use ingest::{emit, ingest, parse, CatalogRecord, Format, IngestError, Location};
pub use report::{render, Report, SCHEMA_VERSION};
pub use run::{run, solve_files, RunConfig, RunError};
pub use verify::{render_table, verify, CheckResult, Fault, VerifyConfig};
