//! Command-line front end: expression parsing, presentation files, and the check suites
//! with deterministic JSON or text reports.

pub mod driver;
pub mod parse;
pub mod presfile;
pub mod suites;

pub use driver::run;
