//! Command-line front end: single reports, surveys, verification suites and
//! the report cache.

pub mod app;
pub mod cache;
pub mod error;
pub mod output;
pub mod survey;
pub mod verify;
