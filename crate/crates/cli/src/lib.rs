//! Command-line front end for `dynheight-core`: map and point parsing,
//! built-in examples, and report rendering.

pub mod fixtures;
pub mod job;
pub mod parse;
pub mod report;

pub use job::{run, Format, JobError, JobSpec, MapSource, Outcome};
