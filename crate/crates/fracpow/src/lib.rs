//! File formats, operator specs, concurrent application and CSV reports on top
//! of `fracpow-core`.

pub mod error;
pub mod io;
pub mod opspec;
pub mod parallel;
pub mod report;

pub use error::{Error, Result};
pub use opspec::{BuiltOperator, OperatorSpec};
