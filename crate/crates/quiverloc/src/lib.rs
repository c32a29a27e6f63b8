//! Fixed-point localization sums for chainsaw and handsaw quiver varieties, and
//! coefficientwise checks of the identities they satisfy.

pub mod chainsaw;
pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod handsaw;
pub mod nekrasov;
pub mod outcome;
pub mod report;
pub mod scalars;
pub mod series;
pub mod wallcross;

pub use error::{Error, Result};
