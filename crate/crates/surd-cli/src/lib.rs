//! Std companion to [`surd`]: the JSON problem-file format, inline
//! expression parsers, and the report types emitted by the `surd` binary.

pub mod format;
pub mod parse;
pub mod report;
