pub mod error;
pub mod field;
pub mod geometry;
pub mod incidence;
pub mod rank;
pub mod types;
pub mod dims;
pub mod lab;

pub use error::{Error, Result};

/// Library version, embedded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
