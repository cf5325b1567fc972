//! Planar random-walk densities and the Bessel-moment machinery behind them.

pub mod cli;
pub mod error;
pub mod lseries;
pub mod moments;
pub mod quad;
pub mod ramble;
pub mod report;
pub mod verify;
pub mod specfun;
pub mod walks;
pub mod wick;

pub use error::{Error, Result};
