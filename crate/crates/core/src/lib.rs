//! Exact enumeration and asymptotic analysis of k-noncrossing RNA
//! structures with minimum arc-length 3.

pub mod asymptotics;
pub mod cli;
pub mod count;
pub mod counting;
mod error;
pub mod oracle;
pub mod powerseries;
pub mod structures;

pub use count::Count;
pub use error::{Error, Result};
