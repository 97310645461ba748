//! Corpus-driven verification of every reduction against the exact solvers.

pub mod canon;
pub mod corpus;
pub mod harness;
pub mod report;

pub use canon::{canonical_code, from_graph6, to_graph6};
pub use corpus::{builtin, enumerate_corpus, CorpusMode, CorpusSpec, Filter, NamedGraph, NAMED_DEFAULT};
pub use harness::{
    default_plan, minimum_covers, run_plan, run_verification, structure_ok, verify_row, RowStatus, Summary,
    VerifyConfig, VerifyReport, VerifyRow,
};
pub use report::{parse_report, ReportLine};
