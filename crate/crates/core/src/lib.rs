pub mod cli;
pub mod clopen;
pub mod error;
pub mod machines;
pub mod markov;
pub mod metric;
pub mod miller;
pub mod oracle;
pub mod properties;
pub mod verdict;
pub mod words;

pub use error::{Error, Result};
pub use oracle::MarkedGroup;
pub use verdict::{Fuel, Status, Verdict, Witness};
pub use words::{Letter, Word};
