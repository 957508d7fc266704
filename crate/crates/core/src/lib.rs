pub mod cli;
pub mod curve;
pub mod exact;
pub mod fixtures;
pub mod metric;
pub mod mhs;
pub mod report;
pub mod topology;

pub use cli::run;
